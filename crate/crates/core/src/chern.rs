//! Divisor classes of characters and the liftings `P_G^X`, `P_G^M` of Chern
//! polynomials of normal bundles built from equal-sign adapted bases.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::{sign_coherent, Fan};
use crate::lattice::{adapted_basis, dot, AdaptedBasis, Int, Sublattice};
use crate::layers::{layer_inclusion, Layer};
use crate::poly::{Monomial, Poly};
use crate::toric::DanilovRing;

/// Default bound on coefficients when searching for an equal-sign basis.
pub const DEFAULT_BASIS_BOUND: i64 = 2;

/// `−Σ_r min(0, ⟨β, r⟩) c_r`, in normal form.
pub fn divisor_class(beta: &[Int], ring: &DanilovRing) -> Poly {
    let nv = ring.nvars();
    let p = Poly::from_terms(
        nv,
        ring.fan().rays.iter().enumerate().filter_map(|(r, ray)| {
            let v = dot(beta, ray);
            v.is_negative().then(|| (Monomial::var(nv, r), -v))
        }),
    );
    ring.normal_form(&p)
}

/// Basis of `outer` whose first vectors span `inner`, with every vector
/// sign-coherent on every cone. Tries the Hermite completion first, then a
/// bounded search over small integer combinations.
pub fn equal_sign_adapted_basis(outer: &Sublattice, inner: &Sublattice, fan: &Fan, bound: i64) -> Result<AdaptedBasis> {
    let first = adapted_basis(outer, inner)?;
    if first.vectors.iter().all(|v| sign_coherent(fan, v)) {
        return Ok(first);
    }
    let candidates = |lattice: &Sublattice| -> Vec<Vec<Int>> {
        let s = lattice.rank();
        let mut coeffs: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..s {
            coeffs = coeffs.into_iter().flat_map(|c| (-bound..=bound).map(move |x| [c.clone(), vec![x]].concat())).collect();
        }
        coeffs.sort_by_key(|c| (c.iter().map(|x| x.abs()).max().unwrap_or(0), c.iter().map(|x| x.abs()).sum::<i64>(), c.clone()));
        let mut out: Vec<Vec<Int>> = Vec::new();
        for c in coeffs {
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            // one of ±v suffices
            if c.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                continue;
            }
            let mut v = vec![Int::zero(); lattice.ambient_rank()];
            for (x, row) in c.iter().zip(lattice.basis().row_vecs()) {
                for (o, y) in v.iter_mut().zip(row) {
                    *o += y * Int::from(*x);
                }
            }
            if sign_coherent(fan, &v) && !out.contains(&v) {
                out.push(v);
            }
        }
        out
    };
    fn extend(target: &Sublattice, cands: &[Vec<Int>], chosen: &mut Vec<Vec<Int>>, goal: usize) -> bool {
        if chosen.len() == goal {
            return Sublattice::new(target.ambient_rank(), chosen.clone()) == *target;
        }
        for v in cands {
            chosen.push(v.clone());
            let span = Sublattice::new(target.ambient_rank(), chosen.clone());
            if span.rank() == chosen.len() && span.is_saturated() && extend(target, cands, chosen, goal) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut head = Vec::new();
    if !extend(inner, &candidates(inner), &mut head, inner.rank()) {
        return Err(Error::NoBasis(format!("no equal-sign basis of {inner} with coefficients up to {bound}")));
    }
    let k = head.len();
    let mut all = head;
    if !extend(outer, &candidates(outer), &mut all, outer.rank()) {
        return Err(Error::NoBasis(format!("no equal-sign completion to {outer} with coefficients up to {bound}")));
    }
    Ok(AdaptedBasis { vectors: all, split_index: k })
}

/// A polynomial in one variable `t` with coefficients in the Danilov ring,
/// constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedChernPoly {
    pub coeffs: Vec<Poly>,
}

impl LiftedChernPoly {
    pub fn one(nvars: usize) -> Self {
        LiftedChernPoly { coeffs: vec![Poly::one(nvars)] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn constant_term(&self) -> &Poly {
        &self.coeffs[0]
    }

    pub fn mul(&self, other: &LiftedChernPoly) -> LiftedChernPoly {
        let nv = self.coeffs[0].nvars();
        let mut coeffs = vec![Poly::zero(nv); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        LiftedChernPoly { coeffs }
    }

    /// `t + d`.
    pub fn linear(d: Poly) -> Self {
        let nv = d.nvars();
        LiftedChernPoly { coeffs: vec![d, Poly::one(nv)] }
    }

    pub fn normalized(&self, ring: &DanilovRing) -> Self {
        LiftedChernPoly { coeffs: self.coeffs.iter().map(|c| ring.normal_form(c)).collect() }
    }

    /// `P(value)` where the coefficients are embedded in the ring of `value`
    /// by appending variables after those of the Danilov ring.
    pub fn evaluate(&self, value: &Poly) -> Poly {
        let extra = value.nvars() - self.coeffs[0].nvars();
        let mut acc = Poly::zero(value.nvars());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * value) + &c.extend_vars(extra);
        }
        acc
    }

    /// Renders as a polynomial in `t` with the given coefficient names.
    pub fn render(&self, names: &[String]) -> String {
        let order: Vec<usize> = (0..names.len()).collect();
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coef = crate::poly::render_poly(c, names, &order);
            let tpow = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            parts.push(match (k, coef.as_str()) {
                (0, _) => coef,
                (_, "1") => tpow,
                _ if c.len() == 1 => format!("{coef}*{tpow}"),
                _ => format!("({coef})*{tpow}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn product_over(vectors: &[Vec<Int>], ring: &DanilovRing) -> LiftedChernPoly {
    vectors
        .iter()
        .fold(LiftedChernPoly::one(ring.nvars()), |acc, b| acc.mul(&LiftedChernPoly::linear(divisor_class(b, ring))))
        .normalized(ring)
}

/// `P_G^X = Π_j (t − Σ_r min(0, ⟨β_j, r⟩) c_r)`.
pub fn lift_chern_absolute(g: &Layer, ring: &DanilovRing, bound: i64) -> Result<LiftedChernPoly> {
    let n = g.ambient_rank();
    let basis = equal_sign_adapted_basis(g.gamma(), &Sublattice::zero(n), ring.fan(), bound)?;
    Ok(product_over(&basis.vectors, ring))
}

/// `P_G^M`: the same product over the basis vectors not in `Γ_M`.
pub fn lift_chern_relative(g: &Layer, m: &Layer, ring: &DanilovRing, bound: i64) -> Result<LiftedChernPoly> {
    if !layer_inclusion(g, m) {
        return Err(Error::NotContained(format!("{g} is not contained in {m}")));
    }
    let basis = equal_sign_adapted_basis(g.gamma(), m.gamma(), ring.fan(), bound)?;
    Ok(product_over(basis.tail(), ring))
}

/// Relative lifting with `M` possibly the whole variety (`None`).
pub fn lift_chern(g: &Layer, m: Option<&Layer>, ring: &DanilovRing, bound: i64) -> Result<LiftedChernPoly> {
    match m {
        None => lift_chern_absolute(g, ring, bound),
        Some(m) => lift_chern_relative(g, m, ring, bound),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::tests::{p1, p1xp1, p2};
    use crate::lattice::int_vec;
    use crate::layers::intersect_layers;
    use crate::layers::tests::{x_eq_1, y_eq_1};
    use crate::toric::danilov_ring;

    #[test]
    fn divisor_classes() {
        let r = danilov_ring(&p1()).unwrap();
        assert_eq!(divisor_class(&int_vec(&[1]), &r), r.c(1));
        let q = danilov_ring(&p1xp1()).unwrap();
        assert_eq!(divisor_class(&int_vec(&[1, 0]), &q), q.c(1));
        assert!(divisor_class(&int_vec(&[0, 0]), &q).is_zero());
    }

    #[test]
    fn absolute_liftings() {
        let r = danilov_ring(&p1()).unwrap();
        let pt = Layer::from_i64(1, &[&[1]], &[(0, 1)]).unwrap();
        let p = lift_chern_absolute(&pt, &r, 2).unwrap();
        assert_eq!(p, LiftedChernPoly::linear(r.c(1)));
        assert_eq!(p.render(&r.var_names()), "t + c(-1)");

        let q = danilov_ring(&p1xp1()).unwrap();
        assert_eq!(lift_chern_absolute(&x_eq_1(), &q, 2).unwrap(), LiftedChernPoly::linear(q.c(1)));
        let point = intersect_layers(&[&x_eq_1(), &y_eq_1()]).remove(0);
        let p = lift_chern_absolute(&point, &q, 2).unwrap();
        let expected = LiftedChernPoly::linear(q.c(1)).mul(&LiftedChernPoly::linear(q.c(3))).normalized(&q);
        assert_eq!(p, expected);
        assert_eq!(p.degree(), 2);
        assert!(!q.normal_form(p.constant_term()).is_zero());
    }

    #[test]
    fn relative_liftings() {
        let q = danilov_ring(&p1xp1()).unwrap();
        let point = intersect_layers(&[&x_eq_1(), &y_eq_1()]).remove(0);
        let p = lift_chern_relative(&point, &x_eq_1(), &q, 2).unwrap();
        assert_eq!(p, LiftedChernPoly::linear(q.c(3)));
        assert_eq!(lift_chern_relative(&point, &point, &q, 2).unwrap(), LiftedChernPoly::one(4));
        assert!(matches!(lift_chern_relative(&x_eq_1(), &point, &q, 2), Err(Error::NotContained(_))));
        // P_G^X = P_M^X · P_G^M
        let whole = lift_chern_absolute(&point, &q, 2).unwrap();
        let m = lift_chern_absolute(&x_eq_1(), &q, 2).unwrap();
        assert_eq!(m.mul(&p).normalized(&q), whole);
    }

    #[test]
    fn basis_search() {
        let blown = crate::fan::stellar_subdivide(&p2(), &crate::fan::Cone::new(vec![0, 1]), &int_vec(&[1, 1])).unwrap();
        let diag = Sublattice::from_i64(2, &[&[1, -1]]);
        let b = equal_sign_adapted_basis(&diag, &Sublattice::zero(2), &blown, 2).unwrap();
        assert_eq!(b.len(), 1);
        assert!(matches!(equal_sign_adapted_basis(&diag, &Sublattice::zero(2), &p2(), 2), Err(Error::NoBasis(_))));
        // sheared P¹×P¹: the standard basis of Z² is not equal-sign, (1,−1),(0,1) is
        let sheared = Fan::from_i64(2, &[&[1, 0], &[-1, 0], &[1, 1], &[-1, -1]], &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]]).unwrap();
        assert!(!sign_coherent(&sheared, &int_vec(&[1, 0])));
        let full = Sublattice::full(2);
        let b = equal_sign_adapted_basis(&full, &Sublattice::zero(2), &sheared, 2).unwrap();
        assert_eq!(b.split_index, 0);
        assert!(b.vectors.iter().all(|v| sign_coherent(&sheared, v)));
        assert_eq!(Sublattice::new(2, b.vectors.clone()), full);
    }
}
