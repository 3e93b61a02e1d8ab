//! Simplicial fans: smoothness and completeness validation, compatibility
//! with the character lattice of a layer, induced fans on the closure of a
//! layer, and stellar subdivision.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{adapted_basis, dot, hermite_normal_form, int, left_kernel, smith_normal_form, Int, IntMatrix, Sublattice};
use crate::serde_int;

/// A cone of a fan, by sorted indices into `Fan::rays`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone(pub Vec<usize>);

impl Cone {
    pub fn new(mut rays: Vec<usize>) -> Self {
        rays.sort_unstable();
        rays.dedup();
        Cone(rays)
    }

    pub fn zero() -> Self {
        Cone(Vec::new())
    }

    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.0.iter().all(|r| other.0.binary_search(r).is_ok())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fan {
    pub rank: usize,
    #[serde(with = "serde_int::matrix")]
    pub rays: Vec<Vec<Int>>,
    pub max_cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Checks the structural invariants: rays primitive, distinct, of the right
    /// length; cones index valid rays without repeats; every ray used.
    pub fn new(rank: usize, rays: Vec<Vec<Int>>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        let fan = Fan { rank, rays, max_cones };
        fan.check_structure()?;
        Ok(fan)
    }

    pub fn from_i64(rank: usize, rays: &[&[i64]], max_cones: &[&[usize]]) -> Result<Self> {
        Self::new(
            rank,
            rays.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(),
            max_cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    /// The fan of a point: rank 0 with only the zero cone.
    pub fn point() -> Self {
        Fan { rank: 0, rays: Vec::new(), max_cones: vec![Vec::new()] }
    }

    pub fn check_structure(&self) -> Result<()> {
        let bad = |m: String| Err(Error::MalformedFan(m));
        for (i, r) in self.rays.iter().enumerate() {
            if r.len() != self.rank {
                return bad(format!("ray {i} has length {} instead of {}", r.len(), self.rank));
            }
            let g = r.iter().fold(Int::zero(), |g, x| g.gcd(x));
            if !g.is_one() {
                return bad(format!("ray {i} is not primitive"));
            }
        }
        let distinct: BTreeSet<&Vec<Int>> = self.rays.iter().collect();
        if distinct.len() != self.rays.len() {
            return bad("rays are not pairwise distinct".into());
        }
        if self.max_cones.is_empty() {
            return bad("fan has no cones".into());
        }
        let mut used = vec![false; self.rays.len()];
        for (c, cone) in self.max_cones.iter().enumerate() {
            let set: BTreeSet<usize> = cone.iter().copied().collect();
            if set.len() != cone.len() {
                return bad(format!("max cone {c} repeats a ray"));
            }
            for &r in cone {
                if r >= self.rays.len() {
                    return bad(format!("max cone {c} references missing ray {r}"));
                }
                used[r] = true;
            }
            let m = IntMatrix::from_rows(self.rank, cone.iter().map(|&r| self.rays[r].clone()).collect());
            if m.rank() != cone.len() {
                return bad(format!("max cone {c} is not simplicial"));
            }
        }
        if let Some(r) = used.iter().position(|u| !u) {
            return bad(format!("ray {r} lies in no max cone"));
        }
        Ok(())
    }

    pub fn ray(&self, i: usize) -> &[Int] {
        &self.rays[i]
    }

    pub fn max_cone_list(&self) -> Vec<Cone> {
        self.max_cones.iter().map(|c| Cone::new(c.clone())).collect()
    }

    /// Every cone of the fan (all faces of max cones), sorted by dimension
    /// and then lexicographically; the zero cone comes first.
    pub fn all_cones(&self) -> Vec<Cone> {
        let mut set = BTreeSet::new();
        for c in self.max_cone_list() {
            let k = c.dim();
            for mask in 0u64..(1u64 << k) {
                let face: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| c.0[i]).collect();
                set.insert(Cone(face));
            }
        }
        let mut v: Vec<Cone> = set.into_iter().collect();
        v.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        v
    }

    /// True iff the rays (as indices) are the rays of some cone of the fan.
    pub fn spans_cone(&self, rays: &[usize]) -> bool {
        let c = Cone::new(rays.to_vec());
        self.max_cone_list().iter().any(|m| c.is_face_of(m))
    }

    /// Lexicographically first max cone, used as elimination reference.
    pub fn reference_cone(&self) -> Cone {
        self.max_cone_list().into_iter().min().expect("fan has cones")
    }

    pub fn cone_matrix(&self, cone: &Cone) -> IntMatrix {
        IntMatrix::from_rows(self.rank, cone.0.iter().map(|&r| self.rays[r].clone()).collect())
    }

    /// Count of cones by number of rays: `f[i]` = cones with `i` rays.
    pub fn face_counts(&self) -> Vec<usize> {
        let mut f = vec![0; self.rank + 1];
        for c in self.all_cones() {
            f[c.dim()] += 1;
        }
        f
    }

    /// Rays sorted lexicographically, cones re-indexed and sorted.
    pub fn canonical(&self) -> Fan {
        let mut order: Vec<usize> = (0..self.rays.len()).collect();
        order.sort_by(|&a, &b| self.rays[a].cmp(&self.rays[b]));
        let mut new_index = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let rays = order.iter().map(|&i| self.rays[i].clone()).collect();
        let mut max_cones: Vec<Vec<usize>> = self
            .max_cones
            .iter()
            .map(|c| {
                let mut v: Vec<usize> = c.iter().map(|&r| new_index[r]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        max_cones.sort();
        Fan { rank: self.rank, rays, max_cones }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SmoothReport {
    /// Max cones whose rays do not extend to a basis of the lattice.
    pub offending_cones: Vec<usize>,
}

impl SmoothReport {
    pub fn passed(&self) -> bool {
        self.offending_cones.is_empty()
    }
}

pub fn validate_smooth(fan: &Fan) -> Result<SmoothReport> {
    let mut offending_cones = Vec::new();
    for (i, cone) in fan.max_cones.iter().enumerate() {
        let set: BTreeSet<_> = cone.iter().collect();
        if set.len() != cone.len() {
            return Err(Error::MalformedFan(format!("max cone {i} repeats a ray")));
        }
        let m = fan.cone_matrix(&Cone::new(cone.clone()));
        let divisors = smith_normal_form(&m).divisors();
        if divisors.len() != cone.len() || !divisors.iter().all(One::is_one) {
            offending_cones.push(i);
        }
    }
    Ok(SmoothReport { offending_cones })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CompleteReport {
    pub lower_dimensional_cones: Vec<usize>,
    /// Walls (codimension-one faces) not shared by exactly two max cones,
    /// or shared by two cones lying on the same side.
    pub bad_walls: Vec<Vec<usize>>,
    pub connected: bool,
}

impl CompleteReport {
    pub fn passed(&self) -> bool {
        self.lower_dimensional_cones.is_empty() && self.bad_walls.is_empty() && self.connected
    }
}

pub fn validate_complete(fan: &Fan) -> CompleteReport {
    let n = fan.rank;
    let lower_dimensional_cones: Vec<usize> =
        (0..fan.max_cones.len()).filter(|&i| fan.max_cones[i].len() != n).collect();
    if !lower_dimensional_cones.is_empty() || n == 0 {
        return CompleteReport { lower_dimensional_cones, bad_walls: Vec::new(), connected: fan.max_cones.len() == 1 };
    }
    let cones = fan.max_cone_list();
    let mut walls: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, c) in cones.iter().enumerate() {
        for (skip, &opposite) in c.0.iter().enumerate() {
            let wall: Vec<usize> = c.0.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &r)| r).collect();
            walls.entry(wall).or_default().push((ci, opposite));
        }
    }
    let mut bad_walls = Vec::new();
    let mut adjacency = vec![Vec::new(); cones.len()];
    for (wall, owners) in &walls {
        if owners.len() != 2 {
            bad_walls.push(wall.clone());
            continue;
        }
        // the two opposite rays must lie strictly on different sides of the wall
        let normal = wall_normal(fan, wall);
        let s0 = dot(&normal, fan.ray(owners[0].1)).signum();
        let s1 = dot(&normal, fan.ray(owners[1].1)).signum();
        if s0 == s1 || s0.is_zero() {
            bad_walls.push(wall.clone());
            continue;
        }
        adjacency[owners[0].0].push(owners[1].0);
        adjacency[owners[1].0].push(owners[0].0);
    }
    let mut seen = vec![false; cones.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(c) = queue.pop_front() {
        for &d in &adjacency[c] {
            if !seen[d] {
                seen[d] = true;
                queue.push_back(d);
            }
        }
    }
    CompleteReport { lower_dimensional_cones, bad_walls, connected: seen.iter().all(|&s| s) }
}

/// Integer normal vector of the hyperplane spanned by `n - 1` rays.
fn wall_normal(fan: &Fan, wall: &[usize]) -> Vec<Int> {
    let m = IntMatrix::from_rows(fan.rank, wall.iter().map(|&r| fan.rays[r].clone()).collect());
    let k = left_kernel(&m.transpose());
    k.row(0).to_vec()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CompatReport {
    /// Max cones whose intersection with `V_Γ` is not a face.
    pub offending_cones: Vec<usize>,
}

impl CompatReport {
    pub fn passed(&self) -> bool {
        self.offending_cones.is_empty()
    }
}

/// Checks that every cone meets `V_Γ` in a face: the rays of the cone lying in
/// `V_Γ` must span the whole intersection.
pub fn cone_face_compat(fan: &Fan, gamma: &Sublattice) -> CompatReport {
    let mut offending_cones = Vec::new();
    for (i, cone) in fan.max_cones.iter().enumerate() {
        let images: Vec<Vec<Int>> = cone
            .iter()
            .map(|&r| gamma.pairings(fan.ray(r)))
            .filter(|p| p.iter().any(|x| !x.is_zero()))
            .collect();
        if positively_dependent(&images) {
            offending_cones.push(i);
        }
    }
    CompatReport { offending_cones }
}

/// True iff some nontrivial nonnegative combination of the (nonzero) vectors
/// vanishes. A minimal such family is a circuit whose one-dimensional kernel
/// has all entries of one strict sign, so subsets are enumerated.
fn positively_dependent(vectors: &[Vec<Int>]) -> bool {
    let k = vectors.len();
    if k < 2 {
        return false;
    }
    let dim = vectors[0].len();
    for mask in 1u64..(1u64 << k) {
        if mask.count_ones() < 2 {
            continue;
        }
        let subset: Vec<Vec<Int>> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| vectors[i].clone()).collect();
        let kernel = left_kernel(&IntMatrix::from_rows(dim, subset));
        if kernel.rows() != 1 {
            continue;
        }
        let row = kernel.row(0);
        if row.iter().all(Signed::is_positive) || row.iter().all(Signed::is_negative) {
            return true;
        }
    }
    false
}

/// Sign of a character on every ray of a cone: true iff never mixed.
pub fn sign_coherent_on(fan: &Fan, chi: &[Int], cone: &[usize]) -> bool {
    let mut pos = false;
    let mut neg = false;
    for &r in cone {
        let p = dot(chi, fan.ray(r));
        pos |= p.is_positive();
        neg |= p.is_negative();
    }
    !(pos && neg)
}

/// True iff `chi` has equal sign on the rays of every cone of the fan.
pub fn sign_coherent(fan: &Fan, chi: &[Int]) -> bool {
    fan.max_cones.iter().all(|c| sign_coherent_on(fan, chi, c))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EqualSignReport {
    /// `(max cone index, basis vector index)` pairs with mixed signs.
    pub violations: Vec<(usize, usize)>,
}

impl EqualSignReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn equal_sign_check(fan: &Fan, basis: &[Vec<Int>]) -> EqualSignReport {
    let mut violations = Vec::new();
    for (ci, cone) in fan.max_cones.iter().enumerate() {
        for (bi, chi) in basis.iter().enumerate() {
            if !sign_coherent_on(fan, chi, cone) {
                violations.push((ci, bi));
            }
        }
    }
    EqualSignReport { violations }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeGoodness {
    pub lattice: String,
    pub basis: Option<Vec<Vec<String>>>,
    pub equal_sign: EqualSignReport,
    pub compat: CompatReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodReport {
    pub smooth: SmoothReport,
    pub complete: CompleteReport,
    pub lattices: Vec<LatticeGoodness>,
}

impl GoodReport {
    pub fn passed(&self) -> bool {
        self.smooth.passed()
            && self.complete.passed()
            && self.lattices.iter().all(|l| l.basis.is_some() && l.equal_sign.passed() && l.compat.passed())
    }
}

/// Goodness of a fan for a family of lattices, each with a candidate basis
/// (`None` meaning no equal-sign basis could be supplied; its Hermite basis is
/// then reported against).
pub fn validate_good(fan: &Fan, lattices: &[Sublattice], bases: &[Option<Vec<Vec<Int>>>]) -> Result<GoodReport> {
    assert_eq!(lattices.len(), bases.len());
    let smooth = validate_smooth(fan)?;
    let complete = validate_complete(fan);
    let lattices = lattices
        .iter()
        .zip(bases)
        .map(|(l, b)| {
            let probe = b.clone().unwrap_or_else(|| l.basis().row_vecs().to_vec());
            let equal_sign = equal_sign_check(fan, &probe);
            let compat = cone_face_compat(fan, l);
            debug_assert!(!(b.is_some() && equal_sign.passed()) || compat.passed());
            LatticeGoodness {
                lattice: l.to_string(),
                basis: b.as_ref().map(|b| b.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect()),
                equal_sign,
                compat,
            }
        })
        .collect();
    Ok(GoodReport { smooth, complete, lattices })
}

/// The fan of the closure of a layer with lattice Γ: cones of Δ inside `V_Γ`,
/// expressed in coordinates `v ↦ (⟨c_j, v⟩)_j` for a complement `c` of Γ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedFan {
    pub fan: Fan,
    /// Characters completing the basis of Γ to a basis of `Z^n`.
    pub complement: Vec<Vec<Int>>,
    /// Cocharacters in `V_Γ` dual to `complement`: a basis of `V_Γ ∩ Z^n`.
    pub dual: Vec<Vec<Int>>,
    /// Index in `fan.rays` of each original ray lying in `V_Γ`.
    pub ray_map: Vec<Option<usize>>,
}

impl InducedFan {
    /// Coordinates of a cocharacter of `V_Γ`.
    pub fn project_ray(&self, v: &[Int]) -> Vec<Int> {
        self.complement.iter().map(|c| dot(c, v)).collect()
    }

    /// Restriction of a character to the torus of the closure.
    pub fn project_character(&self, chi: &[Int]) -> Vec<Int> {
        self.dual.iter().map(|e| dot(chi, e)).collect()
    }

    /// The character `Σ w_j c_j` of the ambient torus lifting `w`.
    pub fn lift_character(&self, w: &[Int]) -> Vec<Int> {
        let n = self.complement.first().map_or(0, Vec::len);
        let mut out = vec![Int::zero(); n];
        for (c, x) in self.complement.iter().zip(w) {
            for (o, y) in out.iter_mut().zip(c) {
                *o += x * y;
            }
        }
        out
    }
}

pub fn induced_fan(fan: &Fan, gamma: &Sublattice) -> Result<InducedFan> {
    let compat = cone_face_compat(fan, gamma);
    if !compat.passed() {
        return Err(Error::NotCompatible(format!("cones {:?} meet V_Γ outside a face", compat.offending_cones)));
    }
    let n = fan.rank;
    let ab = adapted_basis(&Sublattice::full(n), gamma)?;
    let complement: Vec<Vec<Int>> = ab.tail().to_vec();
    // the inverse of the unimodular matrix [Γ; C] has the dual basis as its last columns
    let (_, inverse) = hermite_normal_form(&IntMatrix::from_rows(n, ab.vectors.clone()));
    let inverse_t = inverse.transpose();
    let dual: Vec<Vec<Int>> = inverse_t.row_vecs()[gamma.rank()..].to_vec();
    let in_v: Vec<bool> = fan.rays.iter().map(|r| gamma.annihilates(r)).collect();

    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for cone in &fan.max_cones {
        let face: Vec<usize> = cone.iter().copied().filter(|&r| in_v[r]).collect();
        faces.insert(Cone::new(face).0);
    }
    let faces: Vec<Vec<usize>> = faces.iter().filter(|f| !faces.iter().any(|g| g != *f && Cone(f.to_vec()).is_face_of(&Cone(g.clone())))).cloned().collect();

    let old_rays: Vec<usize> = (0..fan.rays.len()).filter(|&r| in_v[r]).collect();
    let projected: Vec<Vec<Int>> = old_rays.iter().map(|&r| complement.iter().map(|c| dot(c, fan.ray(r))).collect()).collect();
    let raw = Fan {
        rank: n - gamma.rank(),
        rays: projected,
        max_cones: faces
            .iter()
            .map(|f| f.iter().map(|r| old_rays.binary_search(r).expect("ray in V")).collect())
            .collect(),
    };
    let canon = raw.canonical();
    let mut ray_map = vec![None; fan.rays.len()];
    for (k, &r) in old_rays.iter().enumerate() {
        ray_map[r] = canon.rays.iter().position(|x| *x == raw.rays[k]);
    }
    Ok(InducedFan { fan: canon, complement, dual, ray_map })
}

/// Stellar subdivision of `cone` at `new_ray`, which must lie in its relative
/// interior and not already be a ray. The result is in canonical order.
pub fn stellar_subdivide(fan: &Fan, cone: &Cone, new_ray: &[Int]) -> Result<Fan> {
    if fan.rays.iter().any(|r| r.as_slice() == new_ray) || cone.dim() == 0 {
        return Err(Error::RayNotInterior);
    }
    if !fan.spans_cone(cone.rays()) {
        return Err(Error::MalformedFan(format!("{:?} is not a cone of the fan", cone.0)));
    }
    // new_ray = Σ λ_i r_i with all λ_i > 0, solved through the integer kernel
    let mut rows: Vec<Vec<Int>> = cone.0.iter().map(|&r| fan.rays[r].clone()).collect();
    rows.push(new_ray.to_vec());
    let k = left_kernel(&IntMatrix::from_rows(fan.rank, rows));
    if k.rows() != 1 {
        return Err(Error::RayNotInterior);
    }
    let mut lambda = k.row(0).to_vec();
    let last = lambda.pop().expect("nonempty");
    if last.is_zero() {
        return Err(Error::RayNotInterior);
    }
    // Σ λ_i r_i + last·new = 0  ⇒  new = Σ (−λ_i/last) r_i
    if !lambda.iter().all(|l| (-l * last.signum()).is_positive()) {
        return Err(Error::RayNotInterior);
    }
    let g = new_ray.iter().fold(Int::zero(), |g, x| g.gcd(x));
    if !g.is_one() {
        return Err(Error::MalformedFan("new ray is not primitive".into()));
    }
    let new_index = fan.rays.len();
    let mut rays = fan.rays.clone();
    rays.push(new_ray.to_vec());
    let mut max_cones = Vec::new();
    for m in fan.max_cone_list() {
        if !cone.is_face_of(&m) {
            max_cones.push(m.0);
            continue;
        }
        for &drop in cone.rays() {
            let mut c: Vec<usize> = m.0.iter().copied().filter(|&r| r != drop).collect();
            c.push(new_index);
            max_cones.push(c);
        }
    }
    Fan::new(fan.rank, rays, max_cones).map(|f| f.canonical())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::lattice::int_vec;

    pub fn p1() -> Fan {
        Fan::from_i64(1, &[&[1], &[-1]], &[&[0], &[1]]).unwrap()
    }

    pub fn p1xp1() -> Fan {
        Fan::from_i64(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]]).unwrap()
    }

    pub fn p2() -> Fan {
        Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]]).unwrap()
    }

    #[test]
    fn smoothness() {
        assert!(validate_smooth(&p1()).unwrap().passed());
        assert!(validate_smooth(&p1xp1()).unwrap().passed());
        let f = Fan::from_i64(2, &[&[1, 0], &[1, 2]], &[&[0, 1]]).unwrap();
        assert_eq!(validate_smooth(&f).unwrap().offending_cones, vec![0]);
        let mut bad = p1xp1();
        bad.max_cones[0] = vec![0, 0];
        assert!(matches!(validate_smooth(&bad), Err(Error::MalformedFan(_))));
    }

    #[test]
    fn completeness() {
        assert!(validate_complete(&p1()).passed());
        assert!(validate_complete(&p2()).passed());
        let mut f = p1xp1();
        f.max_cones.pop();
        let r = validate_complete(&f);
        assert!(!r.passed());
        assert_eq!(r.bad_walls.len(), 2);
    }

    #[test]
    fn compatibility() {
        let e1 = Sublattice::from_i64(2, &[&[1, 0]]);
        assert!(cone_face_compat(&p1xp1(), &e1).passed());
        let diag = Sublattice::from_i64(2, &[&[1, -1]]);
        let r = cone_face_compat(&p2(), &diag);
        assert_eq!(r.offending_cones, vec![0]);
        assert!(cone_face_compat(&p2(), &Sublattice::zero(2)).passed());
    }

    #[test]
    fn equal_sign() {
        assert!(equal_sign_check(&p1xp1(), &[int_vec(&[1, 0])]).passed());
        assert_eq!(equal_sign_check(&p2(), &[int_vec(&[1, -1])]).violations, vec![(0, 0)]);
        assert!(equal_sign_check(&p2(), &[]).passed());
    }

    #[test]
    fn induced_fans() {
        let ind = induced_fan(&p1xp1(), &Sublattice::from_i64(2, &[&[1, 0]])).unwrap();
        assert_eq!(ind.fan.rank, 1);
        assert_eq!(ind.fan.rays.len(), 2);
        assert!(validate_smooth(&ind.fan).unwrap().passed() && validate_complete(&ind.fan).passed());
        assert_eq!(ind.ray_map[0], None);
        assert!(ind.ray_map[2].is_some() && ind.ray_map[3].is_some());

        let same = induced_fan(&p1xp1(), &Sublattice::zero(2)).unwrap();
        assert_eq!(same.fan.rays.len(), 4);
        assert_eq!(same.fan.max_cones.len(), 4);

        for (j, e) in ind.dual.iter().enumerate() {
            assert!(Sublattice::from_i64(2, &[&[1, 0]]).annihilates(e));
            assert_eq!(ind.project_character(&ind.complement[j]), (0..1).map(|i| int((i == j) as i64)).collect::<Vec<_>>());
        }

        let pt = induced_fan(&p1xp1(), &Sublattice::full(2)).unwrap();
        assert_eq!(pt.fan, Fan::point());

        let diag = Sublattice::from_i64(2, &[&[1, -1]]);
        assert!(matches!(induced_fan(&p2(), &diag), Err(Error::NotCompatible(_))));
    }

    #[test]
    fn stellar() {
        let f = stellar_subdivide(&p2(), &Cone::new(vec![0, 1]), &int_vec(&[1, 1])).unwrap();
        assert_eq!(f.rays.len(), 4);
        assert!(validate_smooth(&f).unwrap().passed());
        assert!(validate_complete(&f).passed());

        assert_eq!(stellar_subdivide(&p2(), &Cone::new(vec![0]), &int_vec(&[1, 0])), Err(Error::RayNotInterior));
        assert_eq!(stellar_subdivide(&p2(), &Cone::new(vec![0, 1]), &int_vec(&[1, -1])), Err(Error::RayNotInterior));

        let g = stellar_subdivide(&p1xp1(), &Cone::new(vec![0, 2]), &int_vec(&[1, 1])).unwrap();
        assert_eq!(g.rays.len(), 5);
        assert!(validate_smooth(&g).unwrap().passed());
        assert!(validate_complete(&g).passed());
    }

    #[test]
    fn face_counts() {
        assert_eq!(p1xp1().face_counts(), vec![1, 4, 4]);
        assert_eq!(p2().face_counts(), vec![1, 3, 3]);
        assert_eq!(Fan::point().face_counts(), vec![1]);
    }
}
