//! Integer cohomology of smooth complete toric varieties: the
//! Stanley–Reisner presentation, graded ranks, and restriction to the
//! closure of a layer.

use std::sync::Arc;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::fan::{induced_fan, validate_complete, validate_smooth, Cone, Fan, InducedFan};
use crate::lattice::{int, left_kernel, Int, IntMatrix, Sublattice};
use crate::poly::{GradedIdeal, Monomial, Poly};

/// `Z[c_r] / (SR + linear)` for a validated smooth complete fan.
#[derive(Clone, Debug)]
pub struct DanilovRing {
    fan: Fan,
    reference: Cone,
    nonfaces: Vec<Vec<usize>>,
    linear: Vec<Poly>,
    ideal: Arc<GradedIdeal>,
}

/// Name of the class of the divisor of a ray, e.g. `c(+1,-1)`.
pub fn ray_name(ray: &[Int]) -> String {
    let parts: Vec<String> = ray.iter().map(|x| if x.is_negative() { x.to_string() } else { format!("+{x}") }).collect();
    format!("c({})", parts.join(","))
}

/// Minimal sets of rays spanning no cone.
pub fn minimal_nonfaces(fan: &Fan) -> Vec<Vec<usize>> {
    let r = fan.rays.len();
    let mut out = Vec::new();
    let mut level: Vec<Vec<usize>> = (0..r).map(|i| vec![i]).collect();
    for _ in 2..=fan.rank + 1 {
        let mut next = Vec::new();
        for s in &level {
            for j in s.last().copied().unwrap_or(0) + 1..r {
                let mut t = s.clone();
                t.push(j);
                let faces_below = (0..t.len()).all(|k| {
                    let mut sub = t.clone();
                    sub.remove(k);
                    fan.spans_cone(&sub)
                });
                if !faces_below {
                    continue;
                }
                if fan.spans_cone(&t) {
                    next.push(t);
                } else {
                    out.push(t);
                }
            }
        }
        level = next;
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

pub fn danilov_ring(fan: &Fan) -> Result<DanilovRing> {
    let smooth = validate_smooth(fan)?;
    if !smooth.passed() {
        return Err(Error::NotValidated(format!("cones {:?} are not smooth", smooth.offending_cones)));
    }
    let complete = validate_complete(fan);
    if !complete.passed() {
        return Err(Error::NotValidated(format!("fan is not complete: {complete:?}")));
    }
    let nv = fan.rays.len();
    let nonfaces = minimal_nonfaces(fan);
    let linear: Vec<Poly> = (0..fan.rank)
        .map(|k| Poly::from_terms(nv, (0..nv).map(|r| (Monomial::var(nv, r), fan.rays[r][k].clone()))))
        .collect();
    let reference = fan.reference_cone();
    let mut priority: Vec<usize> = reference.rays().to_vec();
    priority.extend((0..nv).filter(|r| !reference.rays().contains(r)));
    let sr = nonfaces.iter().map(|s| {
        let mut m = Monomial::one(nv);
        for &r in s {
            m.0[r] = 1;
        }
        Poly::monomial(nv, m, Int::one())
    });
    let ideal = GradedIdeal::new(nv, priority, sr.chain(linear.iter().cloned()));
    Ok(DanilovRing { fan: fan.clone(), reference, nonfaces, linear, ideal: Arc::new(ideal) })
}

impl DanilovRing {
    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn nvars(&self) -> usize {
        self.fan.rays.len()
    }

    pub fn dim(&self) -> usize {
        self.fan.rank
    }

    /// The max cone whose variables the linear relations eliminate.
    pub fn reference_cone(&self) -> &Cone {
        &self.reference
    }

    pub fn nonfaces(&self) -> &[Vec<usize>] {
        &self.nonfaces
    }

    pub fn sr_relations(&self) -> Vec<Poly> {
        let nv = self.nvars();
        self.nonfaces
            .iter()
            .map(|s| {
                let mut m = Monomial::one(nv);
                for &r in s {
                    m.0[r] = 1;
                }
                Poly::monomial(nv, m, Int::one())
            })
            .collect()
    }

    pub fn linear_relations(&self) -> &[Poly] {
        &self.linear
    }

    pub fn ideal(&self) -> &GradedIdeal {
        &self.ideal
    }

    pub fn var_names(&self) -> Vec<String> {
        self.fan.rays.iter().map(|r| ray_name(r)).collect()
    }

    pub fn c(&self, r: usize) -> Poly {
        Poly::var(self.nvars(), r)
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        self.ideal.normal_form(p)
    }

    pub fn graded_rank(&self, d: usize) -> usize {
        self.ideal.slice(d).quotient_rank()
    }

    pub fn hilbert(&self) -> Vec<usize> {
        self.ideal.hilbert(self.dim())
    }

    pub fn torsion_audit(&self, max_degree: usize) -> Vec<(usize, Vec<Int>)> {
        self.ideal.torsion_audit(max_degree)
    }
}

/// `h_k = Σ_i (−1)^{k−i} C(n−i, k−i) f_{i−1}`, with `f_{i−1}` the number of
/// cones spanned by `i` rays.
pub fn h_vector_oracle(fan: &Fan) -> Vec<i64> {
    let n = fan.rank;
    let f = fan.face_counts();
    (0..=n)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(n - i, k - i) * f[i] as i64
                })
                .sum()
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Pullback from the toric variety to the closure of a layer lattice.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub target: DanilovRing,
    pub induced: InducedFan,
    source_vars: usize,
}

impl Restriction {
    /// `c_r ↦ c_r` for rays in `V_Γ`, otherwise `0`.
    pub fn apply(&self, p: &Poly) -> Poly {
        assert_eq!(p.nvars(), self.source_vars);
        let nv = self.target.nvars();
        p.map_vars(nv, &|r| match self.induced.ray_map[r] {
            Some(j) => Poly::var(nv, j),
            None => Poly::zero(nv),
        })
    }

    /// Rays whose classes generate the kernel.
    pub fn kernel_rays(&self) -> Vec<usize> {
        (0..self.source_vars).filter(|&r| self.induced.ray_map[r].is_none()).collect()
    }

    /// Compares, in degree `d`, the kernel of the map on graded pieces
    /// with the slice of the ideal generated by the Danilov relations and
    /// the kernel classes.
    pub fn kernel_matches(&self, source: &DanilovRing, d: usize) -> bool {
        let nv = source.nvars();
        let expected = source.ideal().with_generators(self.kernel_rays().into_iter().map(|r| Poly::var(nv, r)));
        let expected_slice = expected.slice(d);
        let monomials = Monomial::all_of_degree(nv, d);
        let target_slice = self.target.ideal().slice(d);
        let standard = target_slice.standard_monomials();
        assert!(target_slice.torsion().is_empty());
        // coordinates of images in the basis of standard monomials
        let rows: Vec<Vec<Int>> = monomials
            .iter()
            .map(|m| {
                let img = target_slice.normal_form(&self.apply(&Poly::monomial(nv, m.clone(), Int::one())));
                standard.iter().map(|s| img.coefficient(s)).collect()
            })
            .collect();
        let kernel = if standard.is_empty() {
            IntMatrix::identity(monomials.len())
        } else {
            left_kernel(&IntMatrix::from_rows(standard.len(), rows))
        };
        let kernel_polys: Vec<Poly> = kernel
            .row_vecs()
            .iter()
            .map(|r| Poly::from_terms(nv, monomials.iter().cloned().zip(r.iter().cloned())))
            .collect();
        let kernel_in_ideal = kernel_polys.iter().all(|p| expected_slice.contains(p));
        let ideal_in_kernel =
            expected_slice.basis(nv).iter().all(|p| target_slice.normal_form(&self.apply(p)).is_zero());
        kernel_in_ideal && ideal_in_kernel
    }
}

pub fn restriction_map(ring: &DanilovRing, gamma: &Sublattice) -> Result<Restriction> {
    let induced = induced_fan(ring.fan(), gamma)?;
    let target = danilov_ring(&induced.fan)?;
    Ok(Restriction { target, induced, source_vars: ring.nvars() })
}

/// Product of the classes of the rays of a max cone, in normal form.
pub fn cone_class(ring: &DanilovRing, cone: &Cone) -> Poly {
    let nv = ring.nvars();
    let p = cone.rays().iter().fold(Poly::one(nv), |acc, &r| &acc * &ring.c(r));
    ring.normal_form(&p)
}

/// True iff every max cone gives `±` the same top class.
pub fn top_classes_agree(ring: &DanilovRing) -> bool {
    let classes: Vec<Poly> = ring.fan().max_cone_list().iter().map(|c| cone_class(ring, c)).collect();
    let first = &classes[0];
    !first.is_zero() && classes.iter().all(|c| c == first || *c == first.scale(&int(-1)))
}
