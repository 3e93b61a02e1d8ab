//! Integer polynomials in degree-one variables and graded ideals, handled one
//! homogeneous slice at a time with sparse integer row echelon forms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::lattice::{left_kernel, smith_normal_form, Int, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn times_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    /// All monomials of degree `d` in `nvars` variables.
    pub fn all_of_degree(nvars: usize, d: usize) -> Vec<Monomial> {
        fn rec(i: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left as u16;
                out.push(Monomial(cur.clone()));
                cur[i] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as u16;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            return if d == 0 { vec![Monomial(Vec::new())] } else { Vec::new() };
        }
        let mut out = Vec::new();
        rec(0, d, &mut vec![0; nvars], &mut out);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Int>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Int) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Int::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, Monomial::var(nvars, i), Int::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Int) -> Self {
        assert_eq!(m.0.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Int)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Int)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Int {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: Int) {
        assert_eq!(m.0.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Highest total degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn homogeneous_parts(&self) -> BTreeMap<usize, Poly> {
        let mut parts: BTreeMap<usize, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts.entry(m.degree()).or_insert_with(|| Poly::zero(self.nvars)).add_term(m.clone(), c.clone());
        }
        parts
    }

    pub fn scale(&self, k: &Int) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(self.nvars), |acc, _| &acc * self)
    }

    /// Reinterprets the polynomial in a ring with `extra` more variables,
    /// appended after the existing ones.
    pub fn extend_vars(&self, extra: usize) -> Poly {
        let n = self.nvars + extra;
        Poly {
            nvars: n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(n, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Replaces variable `i` by the polynomial `value`.
    pub fn substitute(&self, i: usize, value: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        let mut powers: Vec<Poly> = vec![Poly::one(self.nvars)];
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[i] = 0;
            let part = &Poly::monomial(self.nvars, rest, c.clone()) * &powers[e];
            out = &out + &part;
        }
        out
    }

    /// Applies a map to every variable (a ring homomorphism sending each
    /// variable to a polynomial in a possibly different ring).
    pub fn map_vars(&self, target_nvars: usize, image: &dyn Fn(usize) -> Poly) -> Poly {
        let images: Vec<Poly> = (0..self.nvars).map(image).collect();
        let mut out = Poly::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = &term * &images[i];
                }
            }
            out = &out + &term;
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Int::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&render_poly(self, &names, &(0..self.nvars).collect::<Vec<_>>()))
    }
}

/// Renders with the given variable names; terms and factors follow
/// `display_order` (earlier variables first, higher powers first).
pub fn render_poly(p: &Poly, names: &[String], display_order: &[usize]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let key = |m: &Monomial| -> (std::cmp::Reverse<usize>, Vec<std::cmp::Reverse<u16>>) {
        (std::cmp::Reverse(m.degree()), display_order.iter().map(|&i| std::cmp::Reverse(m.0[i])).collect())
    };
    let mut terms: Vec<(&Monomial, &Int)> = p.terms().collect();
    terms.sort_by_key(|(m, _)| key(m));
    let mut out = String::new();
    for (k, (m, c)) in terms.iter().enumerate() {
        let mut factors = Vec::new();
        for &i in display_order {
            match m.0[i] {
                0 => {}
                1 => factors.push(names[i].clone()),
                e => factors.push(format!("{}^{e}", names[i])),
            }
        }
        let abs = c.abs();
        let body = if factors.is_empty() {
            abs.to_string()
        } else if abs.is_one() {
            factors.join("*")
        } else {
            format!("{abs}*{}", factors.join("*"))
        };
        if k == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

type SparseRow = Vec<(u32, Int)>;

/// `x·a + y·b` on sparse rows.
fn combine(a: &SparseRow, x: &Int, b: &SparseRow, y: &Int) -> SparseRow {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0).unwrap_or(u32::MAX);
        let cb = b.get(j).map(|e| e.0).unwrap_or(u32::MAX);
        let (col, v) = if ca < cb {
            i += 1;
            (ca, &a[i - 1].1 * x)
        } else if cb < ca {
            j += 1;
            (cb, &b[j - 1].1 * y)
        } else {
            i += 1;
            j += 1;
            (ca, &a[i - 1].1 * x + &b[j - 1].1 * y)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

/// Integer row echelon basis of a lattice of sparse vectors, keyed by pivot.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<u32, SparseRow>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = (u32, &Int)> {
        self.rows.iter().map(|(&c, r)| (c, &r[0].1))
    }

    /// Adds a vector to the lattice; returns true when the rank grew.
    pub fn insert(&mut self, mut v: SparseRow) -> bool {
        let one = Int::one();
        loop {
            let Some((p, b)) = v.first().cloned() else { return false };
            let Some(r) = self.rows.get_mut(&p) else {
                if b.is_negative() {
                    for e in v.iter_mut() {
                        e.1 = -&e.1;
                    }
                }
                self.rows.insert(p, v);
                return true;
            };
            let a = r[0].1.clone();
            if b.is_multiple_of(&a) {
                v = combine(&v, &one, r, &-(&b / &a));
            } else {
                let eg = a.extended_gcd(&b);
                let (g, s, t) = (eg.gcd, eg.x, eg.y);
                let new_r = combine(r, &s, &v, &t);
                let new_v = combine(&v, &(&a / &g), r, &-(&b / &g));
                *r = new_r;
                v = new_v;
            }
        }
    }

    /// Canonical remainder: pivot entries reduced into `[0, pivot)`.
    pub fn reduce(&self, v: &SparseRow) -> SparseRow {
        let mut cur: BTreeMap<u32, Int> = v.iter().cloned().collect();
        let mut cursor = 0u32;
        loop {
            let Some((&c, val)) = cur.range(cursor..).next() else { break };
            if let Some(r) = self.rows.get(&c) {
                let q = val.div_floor(&r[0].1);
                if !q.is_zero() {
                    for (col, x) in r {
                        let e = cur.entry(*col).or_default();
                        *e -= &q * x;
                        if e.is_zero() {
                            cur.remove(col);
                        }
                    }
                }
            }
            if c == u32::MAX {
                break;
            }
            cursor = c + 1;
        }
        cur.into_iter().collect()
    }

    pub fn all_pivots_unit(&self) -> bool {
        self.rows.values().all(|r| r[0].1.is_one())
    }

    pub fn dense(&self, cols: usize) -> IntMatrix {
        let rows = self
            .rows
            .values()
            .map(|r| {
                let mut d = vec![Int::zero(); cols];
                for (c, x) in r {
                    d[*c as usize] = x.clone();
                }
                d
            })
            .collect();
        IntMatrix::from_rows(cols, rows)
    }
}

/// One homogeneous slice `I_d` of a graded ideal.
#[derive(Debug)]
pub struct Slice {
    pub degree: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
    echelon: Echelon,
}

impl Slice {
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn ideal_rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn quotient_rank(&self) -> usize {
        self.monomials.len() - self.echelon.rank()
    }

    /// Elementary divisors different from 1 of the slice, i.e. the torsion
    /// of the quotient in this degree.
    pub fn torsion(&self) -> Vec<Int> {
        if self.echelon.all_pivots_unit() {
            return Vec::new();
        }
        smith_normal_form(&self.echelon.dense(self.monomials.len()))
            .divisors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect()
    }

    fn to_row(&self, p: &Poly) -> SparseRow {
        let mut row: Vec<(u32, Int)> = p
            .terms()
            .map(|(m, c)| {
                let col = *self.index.get(m).unwrap_or_else(|| panic!("monomial of degree {} in slice {}", m.degree(), self.degree));
                (col, c.clone())
            })
            .collect();
        row.sort_by_key(|e| e.0);
        row
    }

    fn to_poly(&self, nvars: usize, row: &SparseRow) -> Poly {
        Poly::from_terms(nvars, row.iter().map(|(c, x)| (self.monomials[*c as usize].clone(), x.clone())))
    }

    /// Normal form of a homogeneous polynomial of this degree.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        self.to_poly(p.nvars(), &self.echelon.reduce(&self.to_row(p)))
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.echelon.reduce(&self.to_row(p)).is_empty()
    }

    /// The echelon basis as polynomials.
    pub fn basis(&self, nvars: usize) -> Vec<Poly> {
        self.echelon.rows.values().map(|r| self.to_poly(nvars, r)).collect()
    }

    /// Monomials not at a pivot: when all pivots are units their classes
    /// form a basis of the quotient.
    pub fn standard_monomials(&self) -> Vec<Monomial> {
        (0..self.monomials.len() as u32)
            .filter(|c| !self.echelon.rows.contains_key(c))
            .map(|c| self.monomials[c as usize].clone())
            .collect()
    }

    /// Coordinates of the class of `p` in the quotient; only meaningful when
    /// all pivots are units.
    fn quotient_coordinates(&self, p: &Poly) -> Vec<Int> {
        let free: Vec<u32> = (0..self.monomials.len() as u32).filter(|c| !self.echelon.rows.contains_key(c)).collect();
        let reduced: BTreeMap<u32, Int> = self.echelon.reduce(&self.to_row(p)).into_iter().collect();
        free.iter().map(|c| reduced.get(c).cloned().unwrap_or_default()).collect()
    }
}

/// A homogeneous ideal in `Z[x_0..x_{n-1}]`, all variables of degree one.
/// Slices are computed on demand and cached.
#[derive(Debug)]
pub struct GradedIdeal {
    nvars: usize,
    priority: Vec<usize>,
    gens: Vec<Poly>,
    cache: RwLock<Vec<Arc<Slice>>>,
}

impl Clone for GradedIdeal {
    fn clone(&self) -> Self {
        GradedIdeal {
            nvars: self.nvars,
            priority: self.priority.clone(),
            gens: self.gens.clone(),
            cache: RwLock::new(self.cache.read().expect("cache lock").clone()),
        }
    }
}

impl GradedIdeal {
    /// `priority` lists variables from most to least eliminated; every
    /// variable must appear once. Generators are split into homogeneous parts.
    pub fn new(nvars: usize, priority: Vec<usize>, gens: impl IntoIterator<Item = Poly>) -> Self {
        let mut seen = vec![false; nvars];
        for &v in &priority {
            assert!(!seen[v], "variable {v} listed twice");
            seen[v] = true;
        }
        assert!(seen.iter().all(|&s| s), "priority must list every variable");
        let mut hom = Vec::new();
        for g in gens {
            assert_eq!(g.nvars(), nvars);
            hom.extend(g.homogeneous_parts().into_values());
        }
        GradedIdeal { nvars, priority, gens: hom, cache: RwLock::new(Vec::new()) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Poly>) -> GradedIdeal {
        GradedIdeal::new(self.nvars, self.priority.clone(), self.gens.iter().cloned().chain(extra))
    }

    fn ordered_monomials(&self, d: usize) -> Vec<Monomial> {
        let mut ms = Monomial::all_of_degree(self.nvars, d);
        ms.sort_by(|a, b| {
            let ka = self.priority.iter().map(|&i| a.0[i]);
            let kb = self.priority.iter().map(|&i| b.0[i]);
            kb.cmp(ka)
        });
        ms
    }

    pub fn slice(&self, d: usize) -> Arc<Slice> {
        if let Some(s) = self.cache.read().expect("cache lock").get(d) {
            return s.clone();
        }
        let mut cache = self.cache.write().expect("cache lock");
        while cache.len() <= d {
            let next = self.build_slice(cache.len(), cache.last().map(|s| s.as_ref()));
            cache.push(Arc::new(next));
        }
        cache[d].clone()
    }

    fn build_slice(&self, d: usize, prev: Option<&Slice>) -> Slice {
        let monomials = self.ordered_monomials(d);
        let index: HashMap<Monomial, u32> = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        let mut slice = Slice { degree: d, monomials, index, echelon: Echelon::default() };
        let full = slice.monomials.len();
        for g in self.gens.iter().filter(|g| g.degree() == Some(d)) {
            let row = slice.to_row(g);
            slice.echelon.insert(row);
        }
        if let Some(prev) = prev {
            'outer: for basis_row in prev.echelon.rows.values() {
                for v in 0..self.nvars {
                    if slice.echelon.rank() == full && slice.echelon.all_pivots_unit() {
                        break 'outer;
                    }
                    let mut row: SparseRow = basis_row
                        .iter()
                        .map(|(c, x)| (slice.index[&prev.monomials[*c as usize].times_var(v)], x.clone()))
                        .collect();
                    row.sort_by_key(|e| e.0);
                    slice.echelon.insert(row);
                }
            }
        }
        slice
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (d, part) in p.homogeneous_parts() {
            out = &out + &self.slice(d).normal_form(&part);
        }
        out
    }

    pub fn contains(&self, p: &Poly) -> bool {
        p.homogeneous_parts().iter().all(|(&d, part)| self.slice(d).contains(part))
    }

    /// Ranks of the quotient in degrees `0..=max_degree`.
    pub fn hilbert(&self, max_degree: usize) -> Vec<usize> {
        (0..=max_degree).map(|d| self.slice(d).quotient_rank()).collect()
    }

    /// Degrees with torsion in the quotient and the offending divisors.
    pub fn torsion_audit(&self, max_degree: usize) -> Vec<(usize, Vec<Int>)> {
        (0..=max_degree)
            .filter_map(|d| {
                let t = self.slice(d).torsion();
                (!t.is_empty()).then_some((d, t))
            })
            .collect()
    }

    /// The candidates (of degree `d`) that enlarge the slice, each tested
    /// against the slice plus the ones already kept.
    pub fn independent_in_slice(&self, d: usize, candidates: Vec<Poly>) -> Vec<Poly> {
        let slice = self.slice(d);
        let mut echelon = slice.echelon.clone();
        let mut kept = Vec::new();
        for p in candidates {
            let row = slice.to_row(&p);
            if !echelon.reduce(&row).is_empty() {
                echelon.insert(row);
                kept.push(p);
            }
        }
        kept
    }

    /// A basis of `{x of degree d : x·y ∈ I}` for homogeneous `y`.
    pub fn annihilator(&self, y: &Poly, d: usize) -> Vec<Poly> {
        let Some(e) = y.degree() else {
            return Monomial::all_of_degree(self.nvars, d).into_iter().map(|m| Poly::monomial(self.nvars, m, Int::one())).collect();
        };
        assert!(y.is_homogeneous());
        let source = self.ordered_monomials(d);
        let target = self.slice(d + e);
        let images: Vec<Poly> = source.iter().map(|m| &Poly::monomial(self.nvars, m.clone(), Int::one()) * y).collect();
        let kernel = if target.echelon.all_pivots_unit() {
            let free = target.quotient_rank();
            let rows: Vec<Vec<Int>> = images.iter().map(|p| target.quotient_coordinates(p)).collect();
            if free == 0 {
                IntMatrix::identity(source.len())
            } else {
                left_kernel(&IntMatrix::from_rows(free, rows))
            }
        } else {
            let cols = target.monomials.len();
            let mut rows: Vec<Vec<Int>> = images
                .iter()
                .map(|p| {
                    let mut v = vec![Int::zero(); cols];
                    for (c, x) in target.to_row(p) {
                        v[c as usize] = x;
                    }
                    v
                })
                .collect();
            rows.extend(target.echelon.dense(cols).into_rows());
            let k = left_kernel(&IntMatrix::from_rows(cols, rows));
            let head: Vec<Vec<Int>> = k.row_vecs().iter().map(|r| r[..source.len()].to_vec()).collect();
            // project and re-basis: the projection of a lattice is a lattice
            crate::lattice::Sublattice::new(source.len(), head).basis().clone()
        };
        kernel
            .row_vecs()
            .iter()
            .map(|r| Poly::from_terms(self.nvars, source.iter().cloned().zip(r.iter().cloned())))
            .filter(|p| !p.is_zero())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn arithmetic() {
        let a = &x(2, 0) + &x(2, 1);
        let sq = &a * &a;
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coefficient(&Monomial(vec![1, 1])), int(2));
        assert!((&a - &a).is_zero());
        assert_eq!(a.pow(3).degree(), Some(3));
        let s = sq.substitute(1, &Poly::zero(2));
        assert_eq!(s, &x(2, 0) * &x(2, 0));
        assert_eq!(format!("{}", &(&x(2, 0) - &x(2, 1).scale(&int(3))) * &x(2, 1)), "x0*x1 - 3*x1^2");
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(4, 0).len(), 1);
        assert_eq!(Monomial::all_of_degree(0, 0).len(), 1);
        assert!(Monomial::all_of_degree(0, 1).is_empty());
    }

    #[test]
    fn projective_line_ideal() {
        // x0·x1 and x0 − x1
        let i = GradedIdeal::new(2, vec![0, 1], [&x(2, 0) * &x(2, 1), &x(2, 0) - &x(2, 1)]);
        assert_eq!(i.hilbert(3), vec![1, 1, 0, 0]);
        assert_eq!(i.normal_form(&x(2, 0)), x(2, 1));
        assert!(i.normal_form(&(&x(2, 0) * &x(2, 0))).is_zero());
        assert!(i.torsion_audit(3).is_empty());
    }

    #[test]
    fn torsion_is_detected() {
        let i = GradedIdeal::new(1, vec![0], [x(1, 0).scale(&int(2))]);
        assert_eq!(i.hilbert(1), vec![1, 0]);
        assert_eq!(i.torsion_audit(1), vec![(1, vec![int(2)])]);
        // 3·x ∈ I only after reducing modulo gcd
        let j = GradedIdeal::new(1, vec![0], [x(1, 0).scale(&int(4)), x(1, 0).scale(&int(6))]);
        assert_eq!(j.torsion_audit(1), vec![(1, vec![int(2)])]);
        assert!(j.contains(&x(1, 0).scale(&int(2))));
        assert!(!j.contains(&x(1, 0)));
    }

    #[test]
    fn annihilators() {
        // Z[a,b]/(a², b²): ann(ab) in degree 1 is (a, b)
        let n = 2;
        let i = GradedIdeal::new(n, vec![0, 1], [x(n, 0).pow(2), x(n, 1).pow(2)]);
        let ann = i.annihilator(&(&x(n, 0) * &x(n, 1)), 1);
        assert_eq!(ann.len(), 2);
        let ann_a = i.annihilator(&x(n, 0), 1);
        assert_eq!(ann_a.len(), 1);
        assert!(ann_a.iter().all(|p| i.contains(&(p * &x(n, 0)))));
        // non-unit pivot path
        let j = GradedIdeal::new(1, vec![0], [x(1, 0).scale(&int(2))]);
        let ann = j.annihilator(&x(1, 0), 0);
        assert_eq!(ann, vec![Poly::constant(1, int(2))]);
    }
}
