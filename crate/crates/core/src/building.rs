//! Building sets of the layer poset, well-connectedness, inclusion-refining
//! orders, induced building sets and nested sets.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::layers::{component_containing, intersect_layers, Layer, LayerPoset};
use crate::lattice::Sublattice;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BuildingReport {
    /// Poset elements that are not the transversal intersection of their
    /// minimal containing candidates, with the reason.
    pub failures: Vec<(usize, String)>,
}

impl BuildingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Minimal elements of `{g ∈ candidate : element ⊆ g}`.
pub fn factors(poset: &LayerPoset, candidate: &[usize], element: usize) -> Vec<usize> {
    let above: Vec<usize> = candidate.iter().copied().filter(|&g| poset.leq(element, g)).collect();
    let mut out: Vec<usize> = above.iter().copied().filter(|&g| !above.iter().any(|&h| poset.lt(h, g))).collect();
    out.sort_unstable();
    out
}

pub fn validate_building(candidate: &[usize], poset: &LayerPoset) -> BuildingReport {
    let mut failures = Vec::new();
    for e in 0..poset.len() {
        if candidate.contains(&e) {
            continue;
        }
        let f = factors(poset, candidate, e);
        if f.is_empty() {
            failures.push((e, "contained in no candidate".into()));
            continue;
        }
        let layers: Vec<&Layer> = f.iter().map(|&g| poset.get(g)).collect();
        let comp = component_containing(&layers, poset.get(e));
        if comp.as_ref() != Some(poset.get(e)) {
            failures.push((e, format!("not a component of the intersection of {f:?}")));
            continue;
        }
        let sum: usize = f.iter().map(|&g| poset.codim(g)).sum();
        if sum != poset.codim(e) {
            failures.push((e, format!("codimension {} but factors {f:?} add up to {sum}", poset.codim(e))));
        }
    }
    BuildingReport { failures }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WellConnectedReport {
    /// Antichains whose intersection has a component outside the candidate.
    pub failures: Vec<Vec<usize>>,
}

impl WellConnectedReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Calls `visit` on every antichain of size at least two whose
/// intersection is nonempty, passing the components of the intersection.
fn for_each_antichain(poset: &LayerPoset, members: &[usize], visit: &mut dyn FnMut(&[usize], &[Layer])) {
    fn rec(
        poset: &LayerPoset,
        members: &[usize],
        start: usize,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize], &[Layer]),
    ) {
        for k in start..members.len() {
            let g = members[k];
            if chosen.iter().any(|&h| poset.leq(h, g) || poset.leq(g, h)) {
                continue;
            }
            chosen.push(g);
            let comps = if chosen.len() >= 2 {
                let layers: Vec<&Layer> = chosen.iter().map(|&h| poset.get(h)).collect();
                intersect_layers(&layers)
            } else {
                vec![poset.get(g).clone()]
            };
            if !comps.is_empty() {
                if chosen.len() >= 2 {
                    visit(chosen, &comps);
                }
                rec(poset, members, k + 1, chosen, visit);
            }
            chosen.pop();
        }
    }
    rec(poset, members, 0, &mut Vec::new(), visit);
}

pub fn validate_well_connected(candidate: &[usize], poset: &LayerPoset) -> WellConnectedReport {
    let mut failures = Vec::new();
    let mut sorted = candidate.to_vec();
    sorted.sort_unstable();
    for_each_antichain(poset, &sorted, &mut |chain, comps| {
        if comps.len() > 1 && !comps.iter().all(|c| poset.id_of(c).is_some_and(|id| candidate.contains(&id))) {
            failures.push(chain.to_vec());
        }
    });
    WellConnectedReport { failures }
}

/// Topological order by inclusion, smaller elements first, ties by id.
pub fn order_refining_inclusion(members: &[usize], poset: &LayerPoset) -> Result<Vec<usize>> {
    let mut left: Vec<usize> = members.to_vec();
    left.sort_unstable();
    left.dedup();
    let mut out = Vec::with_capacity(left.len());
    while !left.is_empty() {
        let pos = left
            .iter()
            .position(|&g| !left.iter().any(|&h| h != g && poset.leq(h, g)))
            .ok_or(Error::CycleDetected)?;
        out.push(left.remove(pos));
    }
    Ok(out)
}

/// An ordered, validated, well-connected building set `G_1..G_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildingSet {
    poset: LayerPoset,
    members: Vec<usize>,
}

impl BuildingSet {
    /// Validates and keeps the given order, which must refine inclusion.
    pub fn new(poset: LayerPoset, members: Vec<usize>) -> Result<Self> {
        for (k, &g) in members.iter().enumerate() {
            if g >= poset.len() {
                return Err(Error::NotBuilding(format!("element {g} is not in the poset")));
            }
            if members[..k].contains(&g) {
                return Err(Error::NotBuilding(format!("element {g} listed twice")));
            }
        }
        let b = validate_building(&members, &poset);
        if !b.passed() {
            return Err(Error::NotBuilding(format!("{:?}", b.failures)));
        }
        let w = validate_well_connected(&members, &poset);
        if !w.passed() {
            return Err(Error::NotBuilding(format!("not well connected at {:?}", w.failures)));
        }
        for i in 0..members.len() {
            for j in 0..i {
                if poset.lt(members[i], members[j]) {
                    return Err(Error::BadOrder(format!("element {} precedes its subset {}", members[j], members[i])));
                }
            }
        }
        Ok(BuildingSet { poset, members })
    }

    /// The building set in its canonical inclusion-refining order.
    pub fn ordered(poset: LayerPoset, members: &[usize]) -> Result<Self> {
        let order = order_refining_inclusion(members, &poset)?;
        Self::new(poset, order)
    }

    /// All of `L′`.
    pub fn maximal(poset: LayerPoset) -> Result<Self> {
        let all: Vec<usize> = (0..poset.len()).collect();
        Self::ordered(poset, &all)
    }

    pub fn poset(&self) -> &LayerPoset {
        &self.poset
    }

    /// Poset ids of `G_1..G_m` (0-based here).
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn layer(&self, i: usize) -> &Layer {
        self.poset.get(self.members[i])
    }

    pub fn ambient_rank(&self) -> usize {
        self.poset.ambient_rank()
    }

    /// `G_i ⊆ G_j` for member positions.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.poset.leq(self.members[i], self.members[j])
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// Components of `∩_{j ∈ set} G_j`; `None` for the empty set (whole space).
    pub fn intersection(&self, set: &[usize]) -> Option<Vec<Layer>> {
        if set.is_empty() {
            return None;
        }
        let layers: Vec<&Layer> = set.iter().map(|&j| self.layer(j)).collect();
        Some(intersect_layers(&layers))
    }

    /// The first `k` members, which again form a well-connected building set
    /// of the poset they generate.
    pub fn prefix(&self, k: usize) -> Result<BuildingSet> {
        let layers: Vec<Layer> = (0..k).map(|i| self.layer(i).clone()).collect();
        let poset = crate::layers::build_layer_poset(&layers)?;
        let ids = layers.iter().map(|l| poset.id_of(l).expect("generator in poset")).collect();
        BuildingSet::new(poset, ids)
    }
}

/// The induced building set on `Z = G_m`: each connected intersection
/// `G_i ∩ Z` (i < m) paired with the least `i` producing it, in that order.
pub fn induced_building_on(z: usize, building: &BuildingSet) -> Result<Vec<(Layer, usize)>> {
    let m = building.len();
    if m == 0 || z != m - 1 {
        return Err(Error::NotLast(z));
    }
    let zl = building.layer(z);
    let mut found: BTreeMap<Layer, usize> = BTreeMap::new();
    for i in 0..z {
        let comps = intersect_layers(&[building.layer(i), zl]);
        if comps.len() == 1 {
            found.entry(comps.into_iter().next().expect("one component")).or_insert(i);
        }
    }
    let mut out: Vec<(Layer, usize)> = found.into_iter().collect();
    out.sort_by_key(|(_, s)| *s);
    Ok(out)
}

pub fn is_nested(t: &[usize], building: &BuildingSet) -> bool {
    let poset = building.poset();
    let ids: Vec<usize> = t.iter().map(|&i| building.members()[i]).collect();
    let mut ok = true;
    let mut subsets = 0usize;
    for_each_antichain(poset, &ids, &mut |chain, comps| {
        subsets += 1;
        if !ok {
            return;
        }
        let mut sorted = chain.to_vec();
        sorted.sort_unstable();
        let sum: usize = chain.iter().map(|&g| poset.codim(g)).sum();
        ok = comps.iter().any(|c| {
            poset.id_of(c).is_some_and(|e| factors(poset, building.members(), e) == sorted && poset.codim(e) == sum)
        });
    });
    // antichains whose intersection is empty are skipped by the walk
    ok && antichains_meet(t, building)
}

/// Every antichain of `t` has nonempty intersection.
fn antichains_meet(t: &[usize], building: &BuildingSet) -> bool {
    let minimal: Vec<usize> = t.iter().copied().filter(|&i| !t.iter().any(|&j| building.lt(j, i))).collect();
    minimal.len() < 2 || building.intersection(&minimal).is_some_and(|c| !c.is_empty())
}

/// A subset of `G⁺ = G ∪ {D_r}`: member positions and ray indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NestedSpec {
    pub members: Vec<usize>,
    pub rays: Vec<usize>,
}

impl NestedSpec {
    pub fn new(mut members: Vec<usize>, mut rays: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        rays.sort_unstable();
        rays.dedup();
        NestedSpec { members, rays }
    }

    pub fn len(&self) -> usize {
        self.members.len() + self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Parses `g1,r2` style lists: `g<k>` is member `k` (1-based), `r<k>` ray `k` (0-based).
    pub fn parse(s: &str) -> Result<Self> {
        let mut members = Vec::new();
        let mut rays = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let bad = || Error::Schema(format!("bad nested-set token {tok:?}"));
            let (kind, num) = tok.split_at(1);
            let k: usize = num.parse().map_err(|_| bad())?;
            match kind {
                "g" if k >= 1 => members.push(k - 1),
                "r" => rays.push(k),
                _ => return Err(bad()),
            }
        }
        Ok(NestedSpec::new(members, rays))
    }
}

impl std::fmt::Display for NestedSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .members
            .iter()
            .map(|i| format!("g{}", i + 1))
            .chain(self.rays.iter().map(|r| format!("r{r}")))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The lattice of `∩_{G ∈ T} G` (zero for empty `T`).
pub fn members_lattice(members: &[usize], building: &BuildingSet) -> Sublattice {
    let n = building.ambient_rank();
    let rows = members.iter().flat_map(|&i| building.layer(i).gamma().basis().row_vecs().to_vec()).collect();
    crate::lattice::saturate(&Sublattice::new(n, rows))
}

pub fn is_nested_plus(s: &NestedSpec, building: &BuildingSet, fan: &Fan) -> bool {
    if s.members.iter().any(|&i| i >= building.len()) || s.rays.iter().any(|&r| r >= fan.rays.len()) {
        return false;
    }
    if !is_nested(&s.members, building) || !fan.spans_cone(&s.rays) {
        return false;
    }
    let lattice = members_lattice(&s.members, building);
    s.rays.iter().all(|&r| lattice.annihilates(fan.ray(r)))
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    assert!(n < 63, "too many elements to enumerate subsets");
    (0u64..(1u64 << n)).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

/// All nested subsets of `G`, by size then lexicographically.
pub fn nested_sets(building: &BuildingSet) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = subsets(building.len()).filter(|t| is_nested(t, building)).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// All nested subsets of `G⁺`.
pub fn nested_plus_sets(building: &BuildingSet, fan: &Fan) -> Vec<NestedSpec> {
    let m = building.len();
    let mut out: Vec<NestedSpec> = subsets(m + fan.rays.len())
        .map(|s| {
            let (g, r): (Vec<usize>, Vec<usize>) = s.into_iter().partition(|&x| x < m);
            NestedSpec::new(g, r.into_iter().map(|x| x - m).collect())
        })
        .filter(|s| is_nested_plus(s, building, fan))
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}
