//! Exact integer linear algebra over `Z`.
//!
//! Everything here works with arbitrary precision integers: Smith and Hermite
//! normal forms with their unimodular transforms, saturated sublattices of
//! `Z^n`, adapted bases for a pair of nested split summands, and the torsion
//! congruence solver that enumerates the extensions of a finite-order
//! character to the saturation of its domain.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Int = BigInt;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Int>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![Int::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Int::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed to describe the 0-row case.
    pub fn from_rows(cols: usize, data: Vec<Vec<Int>>) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: data.len(), cols, data }
    }

    pub fn from_i64(cols: usize, data: &[&[i64]]) -> Self {
        Self::from_rows(cols, data.iter().map(|r| int_vec(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[Vec<Int>] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<Vec<Int>> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i][j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += a * &other.data[k][j];
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Int::zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                out[j] += a * &self.data[k][j];
            }
        }
        out
    }

    /// Determinant by fraction-free elimination (Bareiss).
    pub fn determinant(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.data.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn rank(&self) -> usize {
        let (h, _) = hermite_normal_form(self);
        h.data.iter().filter(|r| r.iter().any(|x| !x.is_zero())).count()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let parts: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", parts.join(","))?;
        }
        write!(f, "]")
    }
}

fn row_axpy(target: &mut [Int], q: &Int, src: &[Int]) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | ...`.
/// `v_inv` is the inverse of `V`, tracked alongside so callers never invert.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Smith {
    /// The nonzero diagonal entries, in order.
    pub fn divisors(&self) -> Vec<Int> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.data[i][i].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

/// Smith normal form. Pivot is the entry of smallest absolute value in the
/// remaining block, ties broken by row-major position.
pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.data.clone();
    let mut u = IntMatrix::identity(m).data;
    let mut v = IntMatrix::identity(n).data;
    let mut vi = IntMatrix::identity(n).data;

    // column operations act on v as columns and on vi as inverse rows
    let swap_cols = |d: &mut Vec<Vec<Int>>, v: &mut Vec<Vec<Int>>, vi: &mut Vec<Vec<Int>>, i: usize, j: usize| {
        for r in d.iter_mut() {
            r.swap(i, j);
        }
        for r in v.iter_mut() {
            r.swap(i, j);
        }
        vi.swap(i, j);
    };
    // col_j -= q * col_i
    let sub_col = |d: &mut Vec<Vec<Int>>, v: &mut Vec<Vec<Int>>, vi: &mut Vec<Vec<Int>>, j: usize, q: &Int, i: usize| {
        for r in d.iter_mut() {
            let t = &r[i] * q;
            r[j] -= t;
        }
        for r in v.iter_mut() {
            let t = &r[i] * q;
            r[j] -= t;
        }
        // inverse: row_i += q * row_j
        let rj = vi[j].clone();
        for (x, y) in vi[i].iter_mut().zip(&rj) {
            *x += q * y;
        }
    };

    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[i][j].is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if d[bi][bj].abs() <= d[i][j].abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            if pi != t {
                d.swap(pi, t);
                u.swap(pi, t);
            }
            if pj != t {
                swap_cols(&mut d, &mut v, &mut vi, pj, t);
            }
            let mut clean = true;
            for i in t + 1..m {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                let (dt, ut) = (d[t].clone(), u[t].clone());
                row_axpy(&mut d[i], &q, &dt);
                row_axpy(&mut u[i], &q, &ut);
                if !d[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                sub_col(&mut d, &mut v, &mut vi, j, &q, t);
                if !d[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let p = d[t][t].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let (di, ui) = (d[i].clone(), u[i].clone());
                    let minus_one = -Int::one();
                    row_axpy(&mut d[t], &minus_one, &di);
                    row_axpy(&mut u[t], &minus_one, &ui);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    Smith {
        u: IntMatrix::from_rows(m, u),
        d: IntMatrix::from_rows(n, d),
        v: IntMatrix::from_rows(n, v),
        v_inv: IntMatrix::from_rows(n, vi),
    }
}

/// Row Hermite normal form: returns `(H, T)` with `T·A = H`, `T` unimodular,
/// `H` in reduced row echelon form with positive pivots, entries above each
/// pivot in `[0, pivot)`, zero rows last.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (m, n) = (a.rows, a.cols);
    let mut h = a.data.clone();
    let mut t = IntMatrix::identity(m).data;
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                if h[i][c].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if h[b][c].abs() <= h[i][c].abs() => {}
                    _ => best = Some(i),
                }
            }
            let Some(p) = best else { break };
            h.swap(p, r);
            t.swap(p, r);
            let mut done = true;
            for i in r + 1..m {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                let (hr, tr) = (h[r].clone(), t[r].clone());
                row_axpy(&mut h[i], &q, &hr);
                row_axpy(&mut t[i], &q, &tr);
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut() {
                *x = -&*x;
            }
            for x in t[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            let (hr, tr) = (h[r].clone(), t[r].clone());
            row_axpy(&mut h[i], &q, &hr);
            row_axpy(&mut t[i], &q, &tr);
        }
        r += 1;
    }
    (IntMatrix::from_rows(n, h), IntMatrix::from_rows(m, t))
}

/// Basis of the integer left kernel `{y : y·A = 0}` (a saturated lattice).
pub fn left_kernel(a: &IntMatrix) -> IntMatrix {
    let (h, t) = hermite_normal_form(a);
    let rows = (0..a.rows)
        .filter(|&i| h.data[i].iter().all(Zero::is_zero))
        .map(|i| t.data[i].clone())
        .collect();
    IntMatrix::from_rows(a.rows, rows)
}

/// A subgroup of `Z^n` stored by its canonical Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: IntMatrix,
    saturated: bool,
}

impl Sublattice {
    /// Lattice spanned by `rows`; dependent rows are allowed and dropped.
    pub fn new(ambient_rank: usize, rows: Vec<Vec<Int>>) -> Self {
        let m = IntMatrix::from_rows(ambient_rank, rows);
        let (h, _) = hermite_normal_form(&m);
        let basis: Vec<Vec<Int>> =
            h.data.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        let basis = IntMatrix::from_rows(ambient_rank, basis);
        let saturated = smith_normal_form(&basis).divisors().iter().all(One::is_one);
        Sublattice { ambient_rank, basis, saturated }
    }

    pub fn from_i64(ambient_rank: usize, rows: &[&[i64]]) -> Self {
        Self::new(ambient_rank, rows.iter().map(|r| int_vec(r)).collect())
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Self::new(ambient_rank, Vec::new())
    }

    pub fn full(ambient_rank: usize) -> Self {
        Self::new(ambient_rank, IntMatrix::identity(ambient_rank).data)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn elementary_divisors(&self) -> Vec<Int> {
        smith_normal_form(&self.basis).divisors()
    }

    /// Saturation and the index of `self` inside it.
    pub fn saturate(&self) -> (Sublattice, Int) {
        if self.saturated {
            return (self.clone(), Int::one());
        }
        let snf = smith_normal_form(&self.basis);
        let index: Int = snf.divisors().iter().product();
        let rows = snf.v_inv.data[..self.rank()].to_vec();
        (Sublattice::new(self.ambient_rank, rows), index)
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(v.len(), self.ambient_rank);
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for row in &self.basis.data {
            let p = row.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
            let (q, r) = rest[p].div_rem(&row[p]);
            if !r.is_zero() {
                return None;
            }
            row_axpy(&mut rest, &q, row);
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains_vector(&self, v: &[Int]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains(&self, other: &Sublattice) -> bool {
        other.basis.data.iter().all(|r| self.contains_vector(r))
    }

    /// `self + other` (not saturated in general).
    pub fn sum(&self, other: &Sublattice) -> Sublattice {
        let mut rows = self.basis.data.clone();
        rows.extend(other.basis.data.iter().cloned());
        Sublattice::new(self.ambient_rank, rows)
    }

    /// Pairings of the basis with a cocharacter `v`.
    pub fn pairings(&self, v: &[Int]) -> Vec<Int> {
        self.basis.data.iter().map(|r| dot(r, v)).collect()
    }

    /// True iff `v` lies in `V_Γ`, the common kernel of all characters in Γ.
    pub fn annihilates(&self, v: &[Int]) -> bool {
        self.basis.data.iter().all(|r| dot(r, v).is_zero())
    }
}

impl fmt::Display for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.basis)
    }
}

pub fn saturate(l: &Sublattice) -> Sublattice {
    l.saturate().0
}

pub fn is_split_summand(l: &Sublattice) -> bool {
    l.is_saturated()
}

/// Basis `β_1..β_s` of a lattice whose first `split_index` vectors span a
/// saturated sublattice of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub vectors: Vec<Vec<Int>>,
    pub split_index: usize,
}

impl AdaptedBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn head(&self) -> &[Vec<Int>] {
        &self.vectors[..self.split_index]
    }

    pub fn tail(&self) -> &[Vec<Int>] {
        &self.vectors[self.split_index..]
    }
}

/// Completes the canonical basis of `inner` to a basis of `outer`.
pub fn adapted_basis(outer: &Sublattice, inner: &Sublattice) -> Result<AdaptedBasis> {
    if !outer.is_saturated() || !inner.is_saturated() {
        return Err(Error::NotSaturated);
    }
    if !outer.contains(inner) {
        return Err(Error::NotContained(format!("{inner} not in {outer}")));
    }
    let k = inner.rank();
    let coords: Vec<Vec<Int>> = inner
        .basis
        .data
        .iter()
        .map(|r| outer.coordinates(r).expect("contained"))
        .collect();
    let c = IntMatrix::from_rows(outer.rank(), coords);
    let snf = smith_normal_form(&c);
    let mut vectors = inner.basis.data.clone();
    for row in &snf.v_inv.data[k..] {
        vectors.push(outer.basis.apply_row(row));
    }
    Ok(AdaptedBasis { vectors, split_index: k })
}

/// An element of `Q/Z`, kept reduced with representative in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Qz(BigRational);

impl Qz {
    pub fn new(num: Int, den: Int) -> Self {
        let r = BigRational::new(num, den);
        Qz(&r - r.floor())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(int(num), int(den))
    }

    pub fn zero() -> Self {
        Qz(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numer(&self) -> &Int {
        self.0.numer()
    }

    pub fn denom(&self) -> &Int {
        self.0.denom()
    }

    pub fn add(&self, other: &Qz) -> Qz {
        let r = &self.0 + &other.0;
        Qz(&r - r.floor())
    }

    pub fn scale(&self, k: &Int) -> Qz {
        let r = &self.0 * BigRational::from_integer(k.clone());
        Qz(&r - r.floor())
    }

    /// The `d` solutions `x` of `d·x = self`.
    pub fn roots(&self, d: &Int) -> Vec<Qz> {
        assert!(d.is_positive());
        let mut out = Vec::new();
        let mut k = Int::zero();
        while &k < d {
            let r = (&self.0 + BigRational::from_integer(k.clone())) / BigRational::from_integer(d.clone());
            out.push(Qz(r));
            k += 1;
        }
        out
    }
}

impl fmt::Display for Qz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Qz {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Schema(format!("invalid Q/Z value {s:?}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: Int = n.parse().map_err(|_| bad())?;
        let d: Int = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Qz::new(n, d))
    }
}

impl Serialize for Qz {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Qz {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Outcome of extending a character from `span(gens)` to its saturation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Congruence {
    Empty,
    Solutions {
        /// The saturation of `span(gens)`.
        lattice: Sublattice,
        /// Values on the canonical basis of `lattice`, one vector per extension.
        characters: Vec<Vec<Qz>>,
    },
}

impl Congruence {
    pub fn count(&self) -> usize {
        match self {
            Congruence::Empty => 0,
            Congruence::Solutions { characters, .. } => characters.len(),
        }
    }
}

/// All characters on the saturation of `span(gens)` taking `values[i]` on row `i`.
pub fn solve_torsion_congruences(gens: &IntMatrix, values: &[Qz]) -> Congruence {
    assert_eq!(gens.rows, values.len(), "one value per generator");
    let n = gens.cols;
    let snf = smith_normal_form(gens);
    let divisors = snf.divisors();
    let s = divisors.len();
    // U·v = D·ψ
    let uv: Vec<Qz> = snf
        .u
        .data
        .iter()
        .map(|row| row.iter().zip(values).fold(Qz::zero(), |acc, (a, v)| acc.add(&v.scale(a))))
        .collect();
    if uv[s..].iter().any(|x| !x.is_zero()) {
        return Congruence::Empty;
    }
    let w_rows = snf.v_inv.data[..s].to_vec();
    let lattice = Sublattice::new(n, w_rows.clone());
    // canonical basis = T·W
    let w = IntMatrix::from_rows(n, w_rows);
    let (h, t) = hermite_normal_form(&w.transpose());
    let t_rows: Vec<Vec<Int>> = lattice
        .basis
        .data
        .iter()
        .map(|r| solve_row_combination(&h, &t, r).expect("basis row lies in span"))
        .collect();

    let mut psis: Vec<Vec<Qz>> = vec![Vec::new()];
    for (j, d) in divisors.iter().enumerate() {
        let roots = uv[j].roots(d);
        psis = psis
            .into_iter()
            .flat_map(|p| {
                roots.iter().map(move |r| {
                    let mut q = p.clone();
                    q.push(r.clone());
                    q
                })
            })
            .collect();
    }
    let mut characters: Vec<Vec<Qz>> = psis
        .into_iter()
        .map(|psi| {
            t_rows
                .iter()
                .map(|coef| coef.iter().zip(&psi).fold(Qz::zero(), |acc, (c, p)| acc.add(&p.scale(c))))
                .collect()
        })
        .collect();
    characters.sort();
    characters.dedup();
    Congruence::Solutions { lattice, characters }
}

/// Given `(H, T)` with `T·Wᵗ = H`, finds `c` with `c·W = r`.
fn solve_row_combination(h: &IntMatrix, t: &IntMatrix, r: &[Int]) -> Option<Vec<Int>> {
    // Wᵗ·cᵗ = rᵗ; with T·Wᵗ = H we need H·cᵗ = T·rᵗ.
    let rhs: Vec<Int> = t.data.iter().map(|row| dot(row, r)).collect();
    let ncols = h.cols;
    let mut c = vec![Int::zero(); ncols];
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for (i, row) in h.data.iter().enumerate() {
        if let Some(p) = row.iter().position(|x| !x.is_zero()) {
            pivots.push((i, p));
        } else if !rhs[i].is_zero() {
            return None;
        }
    }
    for &(i, p) in pivots.iter().rev() {
        let mut acc = rhs[i].clone();
        for j in p + 1..ncols {
            acc -= &h.data[i][j] * &c[j];
        }
        let (q, rem) = acc.div_rem(&h.data[i][p]);
        if !rem.is_zero() {
            return None;
        }
        c[p] = q;
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(cols, rows)
    }

    fn check_smith(a: &IntMatrix) -> Smith {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(a.cols()));
        let divs = s.divisors();
        for w in divs.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn smith_examples() {
        assert_eq!(check_smith(&IntMatrix::identity(2)).d, IntMatrix::identity(2));
        assert_eq!(check_smith(&m(2, &[&[2, 4], &[6, 8]])).divisors(), int_vec(&[2, 4]));
        assert_eq!(check_smith(&m(1, &[&[0]])).d, m(1, &[&[0]]));
        assert_eq!(check_smith(&m(3, &[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])).divisors(), int_vec(&[2, 6, 12]));
    }

    #[test]
    fn hermite_is_canonical() {
        let a = m(2, &[&[1, 1], &[1, -1]]);
        let (h, t) = hermite_normal_form(&a);
        assert_eq!(t.mul(&a), h);
        assert_eq!(h, m(2, &[&[1, 1], &[0, 2]]));
        let b = m(2, &[&[2, 0], &[3, 1]]);
        let (hb, _) = hermite_normal_form(&b);
        assert_eq!(hb, m(2, &[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn saturation_examples() {
        let (s, idx) = Sublattice::from_i64(2, &[&[2, 0]]).saturate();
        assert_eq!(s, Sublattice::from_i64(2, &[&[1, 0]]));
        assert_eq!(idx, int(2));
        let l = Sublattice::from_i64(2, &[&[1, 1]]);
        assert_eq!(l.saturate(), (l.clone(), int(1)));
        let (s, idx) = Sublattice::from_i64(2, &[&[1, 1], &[1, -1]]).saturate();
        assert_eq!(s, Sublattice::full(2));
        assert_eq!(idx, int(2));
    }

    #[test]
    fn split_summand_examples() {
        assert!(is_split_summand(&Sublattice::from_i64(2, &[&[1, 0]])));
        assert!(!is_split_summand(&Sublattice::from_i64(2, &[&[2, 0]])));
        assert!(is_split_summand(&Sublattice::full(2)));
        assert!(is_split_summand(&Sublattice::zero(3)));
    }

    #[test]
    fn adapted_basis_examples() {
        let b = adapted_basis(&Sublattice::full(2), &Sublattice::from_i64(2, &[&[1, 0]])).unwrap();
        assert_eq!(b.split_index, 1);
        assert_eq!(b.vectors[0], int_vec(&[1, 0]));
        let det = IntMatrix::from_rows(2, b.vectors.clone()).determinant();
        assert!(det.abs().is_one());

        let g = Sublattice::from_i64(2, &[&[1, 1], &[0, 2]]);
        assert_eq!(adapted_basis(&g, &Sublattice::from_i64(2, &[&[1, 1]])), Err(Error::NotSaturated));

        let g = saturate(&Sublattice::from_i64(2, &[&[1, 1], &[1, -1]]));
        let b = adapted_basis(&g, &Sublattice::from_i64(2, &[&[1, 1]])).unwrap();
        assert_eq!(b.split_index, 1);
        assert_eq!(b.vectors[0], int_vec(&[1, 1]));
        assert!(IntMatrix::from_rows(2, b.vectors.clone()).determinant().abs().is_one());

        let err = adapted_basis(&Sublattice::from_i64(2, &[&[1, 0]]), &Sublattice::from_i64(2, &[&[0, 1]]));
        assert!(matches!(err, Err(Error::NotContained(_))));
    }

    #[test]
    fn congruence_examples() {
        let sol = solve_torsion_congruences(&m(2, &[&[1, 1], &[1, -1]]), &[Qz::zero(), Qz::zero()]);
        match &sol {
            Congruence::Solutions { lattice, characters } => {
                assert_eq!(lattice, &Sublattice::full(2));
                let half = Qz::from_ratio(1, 2);
                assert_eq!(characters, &vec![vec![Qz::zero(), Qz::zero()], vec![half.clone(), half]]);
            }
            Congruence::Empty => panic!("expected solutions"),
        }
        assert_eq!(solve_torsion_congruences(&m(2, &[&[1, 0]]), &[Qz::zero()]).count(), 1);
        let e = solve_torsion_congruences(&m(2, &[&[1, 0], &[2, 0]]), &[Qz::zero(), Qz::from_ratio(1, 2)]);
        assert_eq!(e, Congruence::Empty);
    }

    #[test]
    fn qz_parsing() {
        assert_eq!("3/2".parse::<Qz>().unwrap(), Qz::from_ratio(1, 2));
        assert_eq!("-1/3".parse::<Qz>().unwrap().to_string(), "2/3");
        assert_eq!("0".parse::<Qz>().unwrap(), Qz::zero());
        assert!("1/0".parse::<Qz>().is_err());
    }

    #[test]
    fn left_kernel_is_annihilating() {
        let a = m(2, &[&[1, 2], &[2, 4], &[0, 1]]);
        let k = left_kernel(&a);
        assert_eq!(k.rows(), 1);
        assert!(k.mul(&a).is_zero());
    }
}
