//! Job files and the workflows run on them. Each workflow returns a JSON
//! document, a text listing and whether every check passed.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::building::{nested_plus_sets, nested_sets, validate_building, validate_well_connected, BuildingSet, NestedSpec};
use crate::chern::DEFAULT_BASIS_BOUND;
use crate::error::{Error, Result};
use crate::fan::{validate_complete, validate_smooth, Fan, GoodReport};
use crate::goodfan::{search_good_fan, DEFAULT_BUDGET};
use crate::lattice::Sublattice;
use crate::layers::{build_layer_poset, display_ints, Layer, LayerPoset, LayerSpec};
use crate::oracle::{model_betti, verify};
use crate::presentation::{assemble_model_ideal, assemble_stratum_ideal, Presentation};
use crate::render::{presentation_doc, render_text, PresentationDoc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Keyword {
    All,
}

/// A building-set member: an index into `layers` or an explicit element of
/// the intersection poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Selector {
    Index(usize),
    Layer(LayerSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BuildingSelector {
    Keyword(Keyword),
    Members(Vec<Selector>),
}

impl Default for BuildingSelector {
    fn default() -> Self {
        BuildingSelector::Keyword(Keyword::All)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_bound: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub rank: usize,
    pub fan: Fan,
    #[serde(default)]
    pub layers: Vec<LayerSpec>,
    #[serde(default)]
    pub building: BuildingSelector,
    #[serde(default)]
    pub options: JobOptions,
}

/// A parsed job: fan and layers checked structurally, poset built.
#[derive(Clone, Debug)]
pub struct Job {
    pub spec: JobSpec,
    pub fan: Fan,
    pub layers: Vec<Layer>,
    pub poset: LayerPoset,
    pub members: Vec<usize>,
}

impl Job {
    pub fn from_spec(spec: JobSpec) -> Result<Job> {
        let n = spec.rank;
        if spec.fan.rank != n {
            return Err(Error::Schema(format!("fan has rank {} but the job has rank {n}", spec.fan.rank)));
        }
        let fan = Fan::new(n, spec.fan.rays.clone(), spec.fan.max_cones.clone())?;
        let layers: Vec<Layer> = spec.layers.iter().map(|l| Layer::from_spec(n, l)).collect::<Result<_>>()?;
        let poset = if layers.is_empty() { LayerPoset::empty(n) } else { build_layer_poset(&layers)? };
        let members = match &spec.building {
            BuildingSelector::Keyword(Keyword::All) => crate::building::order_refining_inclusion(&(0..poset.len()).collect::<Vec<_>>(), &poset)?,
            BuildingSelector::Members(sel) => sel
                .iter()
                .map(|s| {
                    let layer = match s {
                        Selector::Index(i) => layers.get(*i).cloned().ok_or_else(|| Error::Schema(format!("no layer with index {i}")))?,
                        Selector::Layer(spec) => Layer::from_spec(n, spec)?,
                    };
                    poset.id_of(&layer).ok_or_else(|| Error::Schema(format!("{layer} is not an element of the intersection poset")))
                })
                .collect::<Result<_>>()?,
        };
        Ok(Job { spec, fan, layers, poset, members })
    }

    pub fn parse(text: &str) -> Result<Job> {
        let spec: JobSpec = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Job::from_spec(spec)
    }

    pub fn load(path: &Path) -> Result<Job> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
        Job::parse(&text)
    }

    pub fn building(&self) -> Result<BuildingSet> {
        BuildingSet::new(self.poset.clone(), self.members.clone())
    }
}

/// Overrides from the command line; unset fields fall back to the job file.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub max_degree: Option<usize>,
    pub budget: Option<usize>,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub ok: bool,
    pub json: Value,
    pub text: String,
}

fn bound(job: &Job) -> i64 {
    job.spec.options.basis_bound.unwrap_or(DEFAULT_BASIS_BOUND)
}

pub fn model_presentation(job: &Job) -> Result<Presentation> {
    assemble_model_ideal(&job.fan, &job.building()?, bound(job))
}

/// Presentation of the stratum named by `nested`, e.g. `"g1,r0"`.
pub fn stratum_presentation(job: &Job, nested: &str) -> Result<Presentation> {
    let s = NestedSpec::parse(nested)?;
    let b = job.building()?;
    if let Some(&i) = s.members.iter().find(|&&i| i >= b.len()) {
        return Err(Error::Schema(format!("the building set has no member g{}", i + 1)));
    }
    if let Some(&r) = s.rays.iter().find(|&&r| r >= job.fan.rays.len()) {
        return Err(Error::Schema(format!("the fan has no ray r{r}")));
    }
    assemble_stratum_ideal(&job.fan, &b, &s, bound(job))
}

fn cone_text(fan: &Fan, cone: &[usize]) -> String {
    let rays: Vec<String> = cone.iter().map(|&r| display_ints(fan.ray(r))).collect();
    format!("cone({})", rays.join(","))
}

fn goodness_text(out: &mut String, fan: &Fan, report: &GoodReport) {
    let _ = writeln!(out, "smooth: {}", if report.smooth.passed() { "yes" } else { "no" });
    for &c in &report.smooth.offending_cones {
        let _ = writeln!(out, "  singular {}", cone_text(fan, &fan.max_cones[c]));
    }
    let _ = writeln!(out, "complete: {}", if report.complete.passed() { "yes" } else { "no" });
    for l in &report.lattices {
        let ok = l.basis.is_some() && l.equal_sign.passed() && l.compat.passed();
        let _ = writeln!(out, "lattice {}: {}", l.lattice, if ok { "good" } else { "not good" });
        if let Some(b) = &l.basis {
            let _ = writeln!(out, "  equal-sign basis {}", b.iter().map(|v| format!("({})", v.join(","))).collect::<Vec<_>>().join(" "));
        }
        for &(c, b) in &l.equal_sign.violations {
            let _ = writeln!(out, "  equal-sign violation: character {} on {}", b + 1, cone_text(fan, &fan.max_cones[c]));
        }
        for &c in &l.compat.offending_cones {
            let _ = writeln!(out, "  meets V_Γ outside a face: {}", cone_text(fan, &fan.max_cones[c]));
        }
    }
}

pub fn validate(job: &Job) -> Result<Outcome> {
    let mut text = String::new();
    let smooth = validate_smooth(&job.fan)?;
    let complete = validate_complete(&job.fan);
    let lattices: Vec<Sublattice> = job.poset.elements().iter().map(|l| l.gamma().clone()).collect();
    let good = crate::goodfan::goodness_for(&job.fan, &lattices, bound(job))?;
    goodness_text(&mut text, &job.fan, &good);
    let b = validate_building(&job.members, &job.poset);
    let w = validate_well_connected(&job.members, &job.poset);
    let order = job.building().err().map(|e| e.to_string());
    let building_ok = order.is_none();
    let _ = writeln!(text, "building set: {}", if building_ok { "valid" } else { "invalid" });
    if let Some(e) = &order {
        let _ = writeln!(text, "  {e}");
    }
    let ok = smooth.passed() && complete.passed() && good.passed() && building_ok;
    let _ = writeln!(text, "{}", if ok { "PASS" } else { "FAIL" });
    let json = json!({
        "passed": ok,
        "smooth": smooth,
        "complete": complete,
        "good": good,
        "building": {"factors": b, "well_connected": w, "error": order},
    });
    Ok(Outcome { ok, json, text })
}

pub fn poset(job: &Job) -> Result<Outcome> {
    let p = &job.poset;
    let mut text = String::new();
    let elements: Vec<Value> = (0..p.len())
        .map(|i| {
            let above: Vec<usize> = (0..p.len()).filter(|&j| p.lt(i, j)).collect();
            let _ = writeln!(text, "{i}: codim {} {} above {:?}", p.codim(i), p.get(i), above);
            json!({"id": i, "codim": p.codim(i), "layer": p.get(i).spec(), "contained_in": above})
        })
        .collect();
    Ok(Outcome { ok: true, json: json!({"rank": p.ambient_rank(), "elements": elements}), text })
}

pub fn nested(job: &Job) -> Result<Outcome> {
    let b = job.building()?;
    let plain: Vec<String> = nested_sets(&b).iter().map(|t| NestedSpec::new(t.clone(), Vec::new()).to_string()).collect();
    let plus: Vec<String> = nested_plus_sets(&b, &job.fan).iter().map(ToString::to_string).collect();
    let mut text = String::new();
    let _ = writeln!(text, "nested sets of G ({}):", plain.len());
    for s in &plain {
        let _ = writeln!(text, "  {s}");
    }
    let _ = writeln!(text, "nested sets of G+ ({}):", plus.len());
    for s in &plus {
        let _ = writeln!(text, "  {s}");
    }
    Ok(Outcome { ok: true, json: json!({"nested": plain, "nested_plus": plus}), text })
}

/// Hilbert vector through `max_degree`, plus the checks run on every
/// presentation: no torsion, vanishing above the dimension, rank 1 at the
/// top, and palindromic for the full model.
pub struct PresentationChecks {
    pub hilbert: Vec<usize>,
    pub torsion: Vec<(usize, Vec<String>)>,
    pub failures: Vec<String>,
}

pub fn check_presentation(pres: &Presentation, max_degree: Option<usize>) -> PresentationChecks {
    let dim = pres.dim();
    let max_degree = max_degree.unwrap_or_else(|| pres.default_max_degree()).max(dim);
    let full = pres.hilbert_function(max_degree);
    let torsion: Vec<(usize, Vec<String>)> =
        pres.torsion_audit(max_degree).into_iter().map(|(d, t)| (d, t.iter().map(ToString::to_string).collect())).collect();
    let mut failures = Vec::new();
    if !torsion.is_empty() {
        failures.push(format!("torsion in degrees {:?}", torsion.iter().map(|t| t.0).collect::<Vec<_>>()));
    }
    if full[dim + 1..].iter().any(|&x| x != 0) {
        failures.push(format!("nonzero ranks above degree {dim}: {:?}", &full[dim + 1..]));
    }
    let hilbert = full[..=dim].to_vec();
    if hilbert[dim] != 1 || hilbert[0] != 1 {
        failures.push(format!("ranks in degrees 0 and {dim} must be 1, found {hilbert:?}"));
    }
    if pres.nested().is_none_or(NestedSpec::is_empty) && !hilbert.iter().eq(hilbert.iter().rev()) {
        failures.push(format!("{hilbert:?} is not palindromic"));
    }
    PresentationChecks { hilbert, torsion, failures }
}

pub fn presentation_outcome(pres: &Presentation, run: &RunOptions) -> Outcome {
    let checks = check_presentation(pres, run.max_degree);
    let mut doc: PresentationDoc = presentation_doc(pres, checks.hilbert.clone());
    doc.torsion = checks.torsion.clone();
    let mut text = render_text(pres, &checks.hilbert);
    for f in &checks.failures {
        let _ = writeln!(text, "check failed: {f}");
    }
    Outcome { ok: checks.failures.is_empty(), json: serde_json::to_value(&doc).expect("document serializes"), text }
}

pub fn present(job: &Job, run: &RunOptions) -> Result<Outcome> {
    Ok(presentation_outcome(&model_presentation(job)?, run))
}

pub fn stratum(job: &Job, nested: &str, run: &RunOptions) -> Result<Outcome> {
    Ok(presentation_outcome(&stratum_presentation(job, nested)?, run))
}

pub fn betti(job: &Job) -> Result<Outcome> {
    let b = model_betti(&job.fan, &job.building()?)?;
    let text = format!("betti: ({})\n", b.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
    Ok(Outcome { ok: true, json: json!({ "betti": b }), text })
}

pub fn check(job: &Job, run: &RunOptions) -> Result<Outcome> {
    let b = job.building()?;
    let pres = assemble_model_ideal(&job.fan, &b, bound(job))?;
    let checks = check_presentation(&pres, run.max_degree);
    let oracle = model_betti(&job.fan, &b)?;
    let hilbert: Vec<i64> = checks.hilbert.iter().map(|&x| x as i64).collect();
    let report = verify(&hilbert, &oracle, checks.torsion.is_empty());
    let ok = report.passed && checks.failures.is_empty();
    let fmt = |v: &[i64]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let mut text = format!("hilbert ({}) vs oracle ({})\n", fmt(&hilbert), fmt(&oracle));
    for m in &report.mismatches {
        let _ = writeln!(text, "  degree {}: presentation {:?}, oracle {:?}", m.degree, m.presentation, m.oracle);
    }
    for f in &checks.failures {
        let _ = writeln!(text, "check failed: {f}");
    }
    let _ = writeln!(text, "{}", if ok { "PASS" } else { "FAIL" });
    Ok(Outcome { ok, json: json!({"passed": ok, "report": report, "failures": checks.failures}), text })
}

pub fn goodfan(job: &Job, search: bool, run: &RunOptions) -> Result<Outcome> {
    let lattices: Vec<Sublattice> = job.poset.elements().iter().map(|l| l.gamma().clone()).collect();
    if !search {
        let report = crate::goodfan::goodness_for(&job.fan, &lattices, bound(job))?;
        let mut text = String::new();
        goodness_text(&mut text, &job.fan, &report);
        return Ok(Outcome { ok: report.passed(), json: serde_json::to_value(&report).expect("report serializes"), text });
    }
    let budget = run.budget.or(job.spec.options.budget).unwrap_or(DEFAULT_BUDGET);
    let out = search_good_fan(&job.fan, &lattices, bound(job), budget, run.seed)?;
    let mut text = format!("seed {}; {} subdivision(s)\n", out.seed, out.steps.len());
    for s in &out.steps {
        let _ = writeln!(text, "  subdivide cone({}) at ({})", s.face.iter().map(|r| format!("({})", r.join(","))).collect::<Vec<_>>().join(","), s.new_ray.join(","));
    }
    let _ = writeln!(text, "fan: {}", serde_json::to_string(&out.fan).expect("fan serializes"));
    let json = json!({"passed": true, "seed": out.seed, "steps": out.steps, "fan": out.fan, "report": out.report});
    Ok(Outcome { ok: true, json, text })
}
