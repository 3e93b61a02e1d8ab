//! Greedy search for a good fan by stellar subdivision of 2-faces on which
//! a lattice character changes sign.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chern::equal_sign_adapted_basis;
use crate::error::{Error, Result};
use crate::fan::{stellar_subdivide, validate_good, Cone, Fan, GoodReport};
use crate::lattice::{dot, Int, Sublattice};

pub const DEFAULT_BUDGET: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subdivision {
    pub face: Vec<Vec<String>>,
    pub new_ray: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub seed: u64,
    pub steps: Vec<Subdivision>,
    pub fan: Fan,
    pub report: GoodReport,
}

/// Goodness of `fan` for each lattice, with equal-sign bases searched up to
/// `bound`.
pub fn goodness_for(fan: &Fan, lattices: &[Sublattice], bound: i64) -> Result<GoodReport> {
    let zero = Sublattice::zero(fan.rank);
    let bases: Vec<Option<Vec<Vec<Int>>>> =
        lattices.iter().map(|l| equal_sign_adapted_basis(l, &zero, fan, bound).ok().map(|b| b.vectors)).collect();
    validate_good(fan, lattices, &bases)
}

/// 2-faces `{a, b}` of max cones with `⟨χ,a⟩ > 0 > ⟨χ,b⟩` for some basis
/// character of a failing lattice.
fn sign_changing_faces(fan: &Fan, lattices: &[Sublattice], report: &GoodReport) -> Vec<[usize; 2]> {
    let mut out = Vec::new();
    for (l, g) in lattices.iter().zip(&report.lattices) {
        if g.basis.is_some() && g.equal_sign.passed() && g.compat.passed() {
            continue;
        }
        for chi in l.basis().row_vecs() {
            for cone in &fan.max_cones {
                for &a in cone {
                    for &b in cone {
                        if dot(chi, fan.ray(a)).sign() == num_bigint::Sign::Plus
                            && dot(chi, fan.ray(b)).sign() == num_bigint::Sign::Minus
                        {
                            out.push(if a < b { [a, b] } else { [b, a] });
                        }
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Subdivides sign-changing 2-faces at the sum of their rays until the fan is
/// good for every lattice. Ties are broken by a ChaCha stream from `seed`.
pub fn search_good_fan(fan: &Fan, lattices: &[Sublattice], bound: i64, budget: usize, seed: u64) -> Result<SearchOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = fan.clone();
    let mut steps = Vec::new();
    loop {
        let report = goodness_for(&current, lattices, bound)?;
        if report.passed() {
            return Ok(SearchOutcome { seed, steps, fan: current, report });
        }
        if !report.smooth.passed() || !report.complete.passed() {
            return Err(Error::MalformedFan("search needs a smooth complete starting fan".into()));
        }
        if steps.len() == budget {
            return Err(Error::BudgetExhausted(budget));
        }
        let faces = sign_changing_faces(&current, lattices, &report);
        let &[a, b] = faces.choose(&mut rng).ok_or_else(|| Error::NotGood("no sign-changing face to subdivide".into()))?;
        let new_ray: Vec<Int> = current.ray(a).iter().zip(current.ray(b)).map(|(x, y)| x + y).collect();
        steps.push(Subdivision {
            face: [a, b].iter().map(|&r| current.ray(r).iter().map(Int::to_string).collect()).collect(),
            new_ray: new_ray.iter().map(Int::to_string).collect(),
        });
        current = stellar_subdivide(&current, &Cone::new(vec![a, b]), &new_ray)?;
    }
}
