//! Relation ideals of wonderful models and of their boundary strata, with
//! Hilbert functions and ideal comparison.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::building::{is_nested_plus, members_lattice, BuildingSet, NestedSpec};
use crate::chern::{lift_chern, LiftedChernPoly};
use crate::error::{Error, Result};
use crate::fan::{Fan, GoodReport};
use crate::lattice::{Int, Sublattice};
use crate::layers::{component_containing, Layer};
use crate::poly::{render_poly, GradedIdeal, Poly};
use crate::toric::{danilov_ring, DanilovRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Group {
    #[serde(rename = "linear")]
    Linear,
    #[serde(rename = "SR")]
    StanleyReisner,
    #[serde(rename = "stratum_c")]
    StratumC,
    #[serde(rename = "tc")]
    TC,
    #[serde(rename = "F")]
    F,
    #[serde(rename = "F0")]
    F0,
    #[serde(rename = "stratum_ann")]
    StratumAnn,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::Linear => "linear",
            Group::StanleyReisner => "SR",
            Group::StratumC => "stratum_c",
            Group::TC => "tc",
            Group::F => "F",
            Group::F0 => "F0",
            Group::StratumAnn => "stratum_ann",
        }
    }

    pub fn all() -> [Group; 7] {
        [Group::Linear, Group::StanleyReisner, Group::StratumC, Group::TC, Group::F, Group::F0, Group::StratumAnn]
    }
}

/// Where a relation came from. Members are 1-based, rays 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Provenance {
    #[serde(rename = "linear")]
    Linear { coordinate: usize },
    #[serde(rename = "SR")]
    StanleyReisner { rays: Vec<usize> },
    #[serde(rename = "stratum_c")]
    StratumC { ray: usize },
    #[serde(rename = "tc")]
    TC { member: usize, ray: usize },
    /// `F(i, A)`; `m` is the member-free description of the component `M`
    /// (`None` for the whole variety), `s` the extra members folded in for strata.
    #[serde(rename = "F")]
    F { i: usize, a: Vec<usize>, m: Option<String>, s: Vec<usize> },
    #[serde(rename = "F0")]
    F0 { a: Vec<usize> },
    #[serde(rename = "stratum_ann")]
    StratumAnn { degree: usize },
}

impl Provenance {
    pub fn tag(&self) -> String {
        let set = |v: &[usize]| format!("{{{}}}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        match self {
            Provenance::Linear { coordinate } => format!("linear[{}]", coordinate + 1),
            Provenance::StanleyReisner { rays } => format!("SR{}", set(rays)),
            Provenance::StratumC { ray } => format!("stratum_c[r{ray}]"),
            Provenance::TC { member, ray } => format!("tc[t{member},r{ray}]"),
            Provenance::F { i, a, .. } => format!("F({i},{})", set(a)),
            Provenance::F0 { a } => format!("F(0,{})", set(a)),
            Provenance::StratumAnn { degree } => format!("ann[{degree}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub group: Group,
    pub provenance: Provenance,
    pub poly: Poly,
}

/// `B[t_1..t_m]` modulo a relation ideal; `t_i` is variable `rays + i − 1`.
#[derive(Clone, Debug)]
pub struct Presentation {
    base: DanilovRing,
    building: BuildingSet,
    nested: Option<NestedSpec>,
    relations: Vec<Relation>,
    ideal: Arc<OnceLock<GradedIdeal>>,
}

impl Presentation {
    pub fn base(&self) -> &DanilovRing {
        &self.base
    }

    pub fn building(&self) -> &BuildingSet {
        &self.building
    }

    pub fn nested(&self) -> Option<&NestedSpec> {
        self.nested.as_ref()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn group(&self, g: Group) -> impl Iterator<Item = &Relation> {
        self.relations.iter().filter(move |r| r.group == g)
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars() + self.building.len()
    }

    /// Complex dimension of the model or stratum.
    pub fn dim(&self) -> usize {
        self.base.dim() - self.nested.as_ref().map_or(0, NestedSpec::len)
    }

    pub fn t(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), self.base.nvars() + i)
    }

    pub fn c(&self, r: usize) -> Poly {
        Poly::var(self.nvars(), r)
    }

    pub fn var_names(&self) -> Vec<String> {
        let mut names = self.base.var_names();
        names.extend((1..=self.building.len()).map(|i| format!("t{i}")));
        names
    }

    /// JSON keys of the variables: `c:<ray>` and `t:<member>`.
    pub fn var_keys(&self) -> Vec<String> {
        let mut keys: Vec<String> = (0..self.base.nvars()).map(|r| format!("c:{r}")).collect();
        keys.extend((1..=self.building.len()).map(|i| format!("t:{i}")));
        keys
    }

    /// Variables in display order: `t` first, then `c`.
    pub fn display_order(&self) -> Vec<usize> {
        let r = self.base.nvars();
        (r..self.nvars()).chain(0..r).collect()
    }

    pub fn render(&self, p: &Poly) -> String {
        render_poly(p, &self.var_names(), &self.display_order())
    }

    pub fn ideal(&self) -> &GradedIdeal {
        self.ideal.get_or_init(|| {
            // eliminate the reference cone first, then the other c, then t
            let r = self.base.nvars();
            let mut priority = self.base.ideal().priority().to_vec();
            priority.extend(r..self.nvars());
            GradedIdeal::new(self.nvars(), priority, self.relations.iter().map(|x| x.poly.clone()))
        })
    }

    pub fn default_max_degree(&self) -> usize {
        self.base.dim() + 1
    }

    pub fn hilbert_function(&self, max_degree: usize) -> Vec<usize> {
        self.ideal().hilbert(max_degree)
    }

    /// Hilbert vector up to the dimension, trailing degrees checked to vanish.
    pub fn hilbert(&self) -> Vec<usize> {
        let mut h = self.hilbert_function(self.dim());
        while h.len() > 1 && h.last() == Some(&0) {
            h.pop();
        }
        h
    }

    pub fn torsion_audit(&self, max_degree: usize) -> Vec<(usize, Vec<Int>)> {
        self.ideal().torsion_audit(max_degree)
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        self.ideal().normal_form(p)
    }

    /// Embeds a Danilov-ring polynomial.
    pub fn lift_base(&self, p: &Poly) -> Poly {
        p.extend_vars(self.building.len())
    }

    /// `Π_{i ∈ T} t_i · Π_{r ∈ R} c_r`: the class of the stratum of `s`.
    pub fn stratum_class(&self, s: &NestedSpec) -> Poly {
        let mut p = Poly::one(self.nvars());
        for &i in &s.members {
            p = &p * &self.t(i);
        }
        for &r in &s.rays {
            p = &p * &self.c(r);
        }
        p
    }
}

/// Hook replacing the production lifting `P_{G_i}^M`; receives the member
/// position, the component `M` (`None` for the whole variety) and the
/// production polynomial.
pub type LiftingHook<'a> = &'a (dyn Fn(usize, Option<&Layer>, LiftedChernPoly) -> LiftedChernPoly + Sync);

/// Goodness of the fan for every element of the poset, with the bases found.
pub fn goodness(fan: &Fan, building: &BuildingSet, bound: i64) -> Result<GoodReport> {
    let lattices: Vec<Sublattice> = building.poset().elements().iter().map(|l| l.gamma().clone()).collect();
    crate::goodfan::goodness_for(fan, &lattices, bound)
}

fn require_good(fan: &Fan, building: &BuildingSet, bound: i64) -> Result<()> {
    if fan.rank != building.ambient_rank() {
        return Err(Error::Schema(format!("fan has rank {} but layers live in rank {}", fan.rank, building.ambient_rank())));
    }
    let report = goodness(fan, building, bound)?;
    if report.passed() {
        return Ok(());
    }
    let mut why = Vec::new();
    if !report.smooth.passed() {
        why.push(format!("non-smooth cones {:?}", report.smooth.offending_cones));
    }
    if !report.complete.passed() {
        why.push("fan is not complete".to_string());
    }
    for l in &report.lattices {
        if l.basis.is_none() || !l.equal_sign.passed() {
            why.push(format!("no equal-sign basis for {} (violations {:?})", l.lattice, l.equal_sign.violations));
        }
    }
    Err(Error::NotGood(why.join("; ")))
}

fn subsets_of(items: &[usize]) -> Vec<Vec<usize>> {
    let k = items.len();
    assert!(k < 30, "too many members above one element");
    (0u64..(1u64 << k)).map(|mask| (0..k).filter(|i| mask >> i & 1 == 1).map(|i| items[i]).collect()).collect()
}

struct Context<'a> {
    base: &'a DanilovRing,
    building: &'a BuildingSet,
    nvars: usize,
    bound: i64,
}

impl Context<'_> {
    fn t(&self, i: usize) -> Poly {
        Poly::var(self.nvars, self.base.nvars() + i)
    }

    fn c(&self, r: usize) -> Poly {
        Poly::var(self.nvars, r)
    }

    fn base_relations(&self) -> Vec<Relation> {
        let extra = self.building.len();
        let mut out: Vec<Relation> = self
            .base
            .linear_relations()
            .iter()
            .enumerate()
            .map(|(k, p)| Relation { group: Group::Linear, provenance: Provenance::Linear { coordinate: k }, poly: p.extend_vars(extra) })
            .collect();
        out.extend(self.base.nonfaces().iter().zip(self.base.sr_relations()).map(|(s, p)| Relation {
            group: Group::StanleyReisner,
            provenance: Provenance::StanleyReisner { rays: s.clone() },
            poly: p.extend_vars(extra),
        }));
        out
    }

    fn tc_relations(&self) -> Vec<Relation> {
        let mut out = Vec::new();
        for i in 0..self.building.len() {
            let gamma = self.building.layer(i).gamma();
            for (r, ray) in self.base.fan().rays.iter().enumerate() {
                if !gamma.annihilates(ray) {
                    out.push(Relation {
                        group: Group::TC,
                        provenance: Provenance::TC { member: i + 1, ray: r },
                        poly: &self.t(i) * &self.c(r),
                    });
                }
            }
        }
        out
    }

    /// `F(i, A)` with `extra` members folded into the component of `M`.
    fn f_relations(&self, extra: &(dyn Fn(usize) -> Vec<usize> + Sync), hook: LiftingHook<'_>) -> Result<Vec<Relation>> {
        let b = self.building;
        let per_member: Vec<Result<Vec<Relation>>> = (0..b.len())
            .into_par_iter()
            .map(|i| {
                let gi = b.layer(i);
                let above: Vec<usize> = (0..b.len()).filter(|&j| b.lt(i, j)).collect();
                let s_i = extra(i);
                let below: Vec<usize> = (0..b.len()).filter(|&h| b.leq(h, i)).collect();
                let value = below.iter().fold(Poly::zero(self.nvars), |acc, &h| &acc - &self.t(h));
                let mut cache: BTreeMap<Option<Layer>, LiftedChernPoly> = BTreeMap::new();
                let mut out = Vec::new();
                for a in subsets_of(&above) {
                    let mut folded: Vec<usize> = a.iter().chain(&s_i).copied().collect();
                    folded.sort_unstable();
                    folded.dedup();
                    let m = if folded.is_empty() {
                        None
                    } else {
                        let layers: Vec<&Layer> = folded.iter().map(|&j| b.layer(j)).collect();
                        Some(component_containing(&layers, gi).expect("G_i lies in the intersection"))
                    };
                    let p = match cache.get(&m) {
                        Some(p) => p.clone(),
                        None => {
                            let p = hook(i, m.as_ref(), lift_chern(gi, m.as_ref(), self.base, self.bound)?);
                            cache.insert(m.clone(), p.clone());
                            p
                        }
                    };
                    let poly = a.iter().fold(p.evaluate(&value), |acc, &j| &acc * &self.t(j));
                    out.push(Relation {
                        group: Group::F,
                        provenance: Provenance::F {
                            i: i + 1,
                            a: a.iter().map(|j| j + 1).collect(),
                            m: m.as_ref().map(|l| l.to_string()),
                            s: s_i.iter().map(|j| j + 1).collect(),
                        },
                        poly,
                    });
                }
                Ok(out)
            })
            .collect();
        let mut out = Vec::new();
        for r in per_member {
            out.extend(r?);
        }
        Ok(out)
    }

    /// `Π_{j∈A} t_j` for inclusion-minimal `A` with `empty(A)`.
    fn f0_relations(&self, empty: &dyn Fn(&[usize]) -> bool) -> Vec<Relation> {
        let m = self.building.len();
        let mut found: Vec<Vec<usize>> = Vec::new();
        // breadth-first by size; sets containing a found set are skipped
        let mut level: Vec<Vec<usize>> = vec![Vec::new()];
        if empty(&[]) {
            found.push(Vec::new());
            level.clear();
        }
        while !level.is_empty() {
            let mut next = Vec::new();
            for s in &level {
                for j in s.last().map_or(0, |&x| x + 1)..m {
                    let mut t = s.clone();
                    t.push(j);
                    if found.iter().any(|f| f.iter().all(|x| t.contains(x))) {
                        continue;
                    }
                    if empty(&t) {
                        found.push(t);
                    } else {
                        next.push(t);
                    }
                }
            }
            level = next;
        }
        found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        found
            .into_iter()
            .map(|a| Relation {
                group: Group::F0,
                poly: a.iter().fold(Poly::one(self.nvars), |acc, &j| &acc * &self.t(j)),
                provenance: Provenance::F0 { a: a.iter().map(|j| j + 1).collect() },
            })
            .collect()
    }
}

pub fn assemble_model_ideal(fan: &Fan, building: &BuildingSet, bound: i64) -> Result<Presentation> {
    assemble_model_ideal_with_lifting(fan, building, bound, &|_, _, p| p)
}

pub fn assemble_model_ideal_with_lifting(fan: &Fan, building: &BuildingSet, bound: i64, hook: LiftingHook<'_>) -> Result<Presentation> {
    require_good(fan, building, bound)?;
    let base = danilov_ring(fan)?;
    let cx = Context { base: &base, building, nvars: base.nvars() + building.len(), bound };
    let mut relations = cx.base_relations();
    relations.extend(cx.tc_relations());
    relations.extend(cx.f_relations(&|_| Vec::new(), hook)?);
    relations.extend(cx.f0_relations(&|a| building.intersection(a).is_some_and(|c| c.is_empty())));
    Ok(Presentation { base, building: building.clone(), nested: None, relations, ideal: Arc::new(OnceLock::new()) })
}

/// Stratum generators in their literal form, without the
/// annihilator completion.
pub fn assemble_stratum_literal(fan: &Fan, building: &BuildingSet, s: &NestedSpec, bound: i64) -> Result<Presentation> {
    if !is_nested_plus(s, building, fan) {
        return Err(Error::NotNested(s.to_string()));
    }
    require_good(fan, building, bound)?;
    let base = danilov_ring(fan)?;
    let cx = Context { base: &base, building, nvars: base.nvars() + building.len(), bound };
    let mut relations = cx.base_relations();
    for r in 0..fan.rays.len() {
        let mut with_r = s.rays.clone();
        with_r.push(r);
        if !fan.spans_cone(&with_r) {
            relations.push(Relation { group: Group::StratumC, provenance: Provenance::StratumC { ray: r }, poly: cx.c(r) });
        }
    }
    relations.extend(cx.tc_relations());
    let s_members = s.members.clone();
    let extra = move |i: usize| -> Vec<usize> { s_members.iter().copied().filter(|&h| building.lt(i, h)).collect() };
    relations.extend(cx.f_relations(&extra, &|_, _, p| p)?);
    let empty_with_s = |a: &[usize]| -> bool {
        let mut all: Vec<usize> = a.iter().chain(&s.members).copied().collect();
        all.sort_unstable();
        all.dedup();
        match building.intersection(&all) {
            None => false,
            Some(c) if c.is_empty() => true,
            Some(_) => {
                let lattice = members_lattice(&all, building);
                s.rays.iter().any(|&r| !lattice.annihilates(fan.ray(r)))
            }
        }
    };
    relations.extend(cx.f0_relations(&empty_with_s));
    Ok(Presentation { base, building: building.clone(), nested: Some(s.clone()), relations, ideal: Arc::new(OnceLock::new()) })
}

/// Stratum presentation: the literal generators completed by the
/// annihilator of the stratum class in the model ring.
pub fn assemble_stratum_ideal(fan: &Fan, building: &BuildingSet, s: &NestedSpec, bound: i64) -> Result<Presentation> {
    let literal = assemble_stratum_literal(fan, building, s, bound)?;
    if s.is_empty() {
        return Ok(literal);
    }
    let model = assemble_model_ideal(fan, building, bound)?;
    let class = model.stratum_class(s);
    let mut relations = literal.relations.clone();
    let mut ideal = literal.ideal().clone();
    for d in 1..=literal.dim() + 1 {
        let kernel = model.ideal().annihilator(&class, d);
        let fresh = ideal.independent_in_slice(d, kernel);
        if fresh.is_empty() {
            continue;
        }
        ideal = ideal.with_generators(fresh.iter().cloned());
        relations.extend(fresh.into_iter().map(|p| Relation { group: Group::StratumAnn, provenance: Provenance::StratumAnn { degree: d }, poly: p }));
    }
    let out = Presentation { relations, ideal: Arc::new(OnceLock::new()), ..literal };
    let _ = out.ideal.set(ideal);
    Ok(out)
}

/// Mutual containment of the two ideals in degrees `0..=max_degree`.
pub fn ideal_equal_up_to(a: &Presentation, b: &Presentation, max_degree: usize) -> Result<bool> {
    if a.nvars() != b.nvars() || a.base.fan() != b.base.fan() || a.building.len() != b.building.len() {
        return Err(Error::DegreeMismatch);
    }
    let nv = a.nvars();
    for d in 0..=max_degree {
        let sa = a.ideal().slice(d);
        let sb = b.ideal().slice(d);
        if sa.ideal_rank() != sb.ideal_rank() {
            return Ok(false);
        }
        if !sa.basis(nv).iter().all(|p| sb.contains(p)) || !sb.basis(nv).iter().all(|p| sa.contains(p)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the stratum class `Π t_i Π c_r` is nonzero in the model ring.
pub fn stratum_class_nonzero(model: &Presentation, s: &NestedSpec) -> bool {
    let class = model.stratum_class(s);
    !model.normal_form(&class).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::tests::{p1, p1xp1};
    use crate::layers::build_layer_poset;
    use crate::layers::tests::{x_eq_1, y_eq_1};

    fn p1_points(k: usize) -> BuildingSet {
        let layers: Vec<Layer> = (0..k).map(|j| Layer::from_i64(1, &[&[1]], &[(j as i64, k as i64)]).unwrap()).collect();
        BuildingSet::maximal(build_layer_poset(&layers).unwrap()).unwrap()
    }

    #[test]
    fn projective_line_one_point() {
        let p = assemble_model_ideal(&p1(), &p1_points(1), 2).unwrap();
        let rendered: Vec<String> = p.relations().iter().map(|r| p.render(&r.poly)).collect();
        for want in ["t1*c(+1)", "t1*c(-1)", "-t1 + c(-1)"] {
            assert!(rendered.iter().any(|r| r == want), "{want} missing from {rendered:?}");
        }
        assert_eq!(p.hilbert(), vec![1, 1]);
        assert_eq!(p.hilbert_function(3), vec![1, 1, 0, 0]);
        assert!(p.torsion_audit(3).is_empty());
    }

    #[test]
    fn projective_line_two_points() {
        let p = assemble_model_ideal(&p1(), &p1_points(2), 2).unwrap();
        let f0: Vec<String> = p.group(Group::F0).map(|r| p.render(&r.poly)).collect();
        assert_eq!(f0, vec!["t1*t2"]);
        assert_eq!(p.hilbert(), vec![1, 1]);
    }

    #[test]
    fn coordinate_model() {
        let b = BuildingSet::maximal(build_layer_poset(&[x_eq_1(), y_eq_1()]).unwrap()).unwrap();
        let p = assemble_model_ideal(&p1xp1(), &b, 2).unwrap();
        assert_eq!(p.hilbert(), vec![1, 3, 1]);
        assert_eq!(p.hilbert_function(3)[3], 0);
        // t2·t3 is generated: the transforms of the two curves are disjoint
        assert!(p.ideal().contains(&(&p.t(1) * &p.t(2))));
        assert!(ideal_equal_up_to(&p, &p, 3).unwrap());
    }

    #[test]
    fn strata() {
        let b = BuildingSet::maximal(build_layer_poset(&[x_eq_1(), y_eq_1()]).unwrap()).unwrap();
        let f = p1xp1();
        let model = assemble_model_ideal(&f, &b, 2).unwrap();
        let empty = assemble_stratum_ideal(&f, &b, &NestedSpec::default(), 2).unwrap();
        assert!(ideal_equal_up_to(&model, &empty, 3).unwrap());

        let pt = NestedSpec::new(vec![0], vec![]);
        let literal = assemble_stratum_literal(&f, &b, &pt, 2).unwrap();
        for r in literal.relations() {
            assert!(model.ideal().contains(&(&r.poly * &model.stratum_class(&pt))), "{}", literal.render(&r.poly));
        }
        let s = assemble_stratum_ideal(&f, &b, &pt, 2).unwrap();
        assert_eq!(s.hilbert(), vec![1, 1]);
        assert_eq!(s.hilbert_function(3), vec![1, 1, 0, 0]);
        assert!(!ideal_equal_up_to(&model, &s, 3).unwrap());

        let bad = NestedSpec::new(vec![], vec![0, 1]);
        assert!(matches!(assemble_stratum_ideal(&f, &b, &bad, 2), Err(Error::NotNested(_))));
    }

    #[test]
    fn not_good() {
        let diag = Layer::from_i64(2, &[&[1, 1]], &[(0, 1)]).unwrap();
        let b = BuildingSet::maximal(build_layer_poset(&[diag]).unwrap()).unwrap();
        assert!(matches!(assemble_model_ideal(&p1xp1(), &b, 2), Err(Error::NotGood(_))));
    }
}
