//! JSON documents and text listings of presentations.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::fan::Fan;
use crate::layers::LayerSpec;
use crate::poly::{Monomial, Poly};
use crate::presentation::{Group, Presentation};

/// A polynomial as `[coefficient, {variable key: exponent}]` pairs.
pub type PolyDoc = Vec<(String, BTreeMap<String, u16>)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseRingDoc {
    pub fan: Fan,
    pub variables: Vec<String>,
    pub names: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TVarDoc {
    pub key: String,
    pub name: String,
    pub layer: LayerSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDoc {
    pub group: String,
    pub provenance: serde_json::Value,
    pub poly: PolyDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub base_ring: BaseRingDoc,
    pub t_vars: Vec<TVarDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nested: Option<String>,
    pub relations: Vec<RelationDoc>,
    pub hilbert: Vec<usize>,
    /// Degrees with nontrivial elementary divisors.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub torsion: Vec<(usize, Vec<String>)>,
}

pub fn poly_doc(p: &Poly, keys: &[String]) -> PolyDoc {
    p.terms()
        .map(|(m, c)| {
            let vars = m.exponents().iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (keys[i].clone(), e)).collect();
            (c.to_string(), vars)
        })
        .collect()
}

pub fn poly_from_doc(doc: &PolyDoc, keys: &[String]) -> Result<Poly, String> {
    let n = keys.len();
    let mut terms = Vec::new();
    for (c, vars) in doc {
        let mut e = vec![0u16; n];
        for (k, &x) in vars {
            let i = keys.iter().position(|y| y == k).ok_or_else(|| format!("unknown variable {k:?}"))?;
            e[i] = x;
        }
        terms.push((Monomial(e), c.parse().map_err(|_| format!("bad coefficient {c:?}"))?));
    }
    Ok(Poly::from_terms(n, terms))
}

pub fn presentation_doc(pres: &Presentation, hilbert: Vec<usize>) -> PresentationDoc {
    let keys = pres.var_keys();
    let base = pres.base();
    let nc = base.nvars();
    let building = pres.building();
    PresentationDoc {
        base_ring: BaseRingDoc { fan: base.fan().clone(), variables: keys[..nc].to_vec(), names: base.var_names() },
        t_vars: (0..building.len())
            .map(|i| TVarDoc { key: keys[nc + i].clone(), name: format!("t{}", i + 1), layer: building.layer(i).spec() })
            .collect(),
        nested: pres.nested().map(ToString::to_string),
        relations: pres
            .relations()
            .iter()
            .map(|r| RelationDoc {
                group: r.group.name().to_string(),
                provenance: serde_json::to_value(&r.provenance).expect("provenance serializes"),
                poly: poly_doc(&r.poly, &keys),
            })
            .collect(),
        hilbert,
        torsion: Vec::new(),
    }
}

fn heading(g: Group) -> &'static str {
    match g {
        Group::Linear => "linear relations",
        Group::StanleyReisner => "Stanley-Reisner relations",
        Group::StratumC => "stratum boundary divisors c_r",
        Group::TC => "annihilators t_i*c_r",
        Group::F => "relations F(i,A)",
        Group::F0 => "relations F(0,A)",
        Group::StratumAnn => "stratum annihilator completion",
    }
}

pub fn render_text(pres: &Presentation, hilbert: &[usize]) -> String {
    let mut out = String::new();
    let names = pres.var_names();
    let base = pres.base();
    let nc = base.nvars();
    let _ = writeln!(out, "base ring: Z[{}] (fan of rank {}, {} rays)", names[..nc].join(", "), base.fan().rank, nc);
    if pres.building().is_empty() {
        let _ = writeln!(out, "exceptional variables: none");
    } else {
        let _ = writeln!(out, "exceptional variables:");
        for i in 0..pres.building().len() {
            let _ = writeln!(out, "  {} <- {}", names[nc + i], pres.building().layer(i));
        }
    }
    if let Some(s) = pres.nested() {
        let _ = writeln!(out, "stratum: {s}");
    }
    for g in Group::all() {
        let rels: Vec<_> = pres.group(g).collect();
        if rels.is_empty() {
            continue;
        }
        let _ = writeln!(out, "[{}] {}", g.name(), heading(g));
        for r in rels {
            let _ = writeln!(out, "  {:<16} {}", r.provenance.tag(), pres.render(&r.poly));
        }
    }
    let h: Vec<String> = hilbert.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "hilbert: ({})", h.join(","));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::BuildingSet;
    use crate::fan::tests::{p1, p1xp1};
    use crate::layers::tests::{x_eq_1, y_eq_1};
    use crate::layers::{build_layer_poset, Layer, LayerPoset};
    use crate::presentation::{assemble_model_ideal, assemble_stratum_ideal};

    #[test]
    fn line_listing() {
        let pt = Layer::from_i64(1, &[&[1]], &[(0, 1)]).unwrap();
        let b = BuildingSet::maximal(build_layer_poset(&[pt]).unwrap()).unwrap();
        let pres = assemble_model_ideal(&p1(), &b, 2).unwrap();
        let text = render_text(&pres, &pres.hilbert());
        for needle in ["t1*c(+1)", "t1*c(-1)", "-t1 + c(-1)", "hilbert: (1,1)"] {
            assert!(text.contains(needle), "{needle} missing from\n{text}");
        }
    }

    #[test]
    fn empty_arrangement_is_the_base_ring() {
        let b = BuildingSet::maximal(LayerPoset::empty(2)).unwrap();
        let pres = assemble_model_ideal(&p1xp1(), &b, 2).unwrap();
        let text = render_text(&pres, &pres.hilbert());
        assert!(text.contains("exceptional variables: none"));
        assert!(!text.contains("[tc]") && !text.contains("[F]"));
        assert!(text.contains("hilbert: (1,2,1)"));
    }

    #[test]
    fn stratum_header_and_round_trip() {
        let b = BuildingSet::maximal(build_layer_poset(&[x_eq_1(), y_eq_1()]).unwrap()).unwrap();
        let s = crate::building::NestedSpec::parse("g1").unwrap();
        let pres = assemble_stratum_ideal(&p1xp1(), &b, &s, 2).unwrap();
        let text = render_text(&pres, &pres.hilbert());
        assert!(text.contains("[stratum_ann]"), "{text}");
        let ray = crate::building::NestedSpec::parse("r0").unwrap();
        let boundary = assemble_stratum_ideal(&p1xp1(), &b, &ray, 2).unwrap();
        assert!(render_text(&boundary, &boundary.hilbert()).contains("[stratum_c] stratum boundary divisors c_r"));
        let doc = presentation_doc(&pres, pres.hilbert());
        let json = serde_json::to_string(&doc).unwrap();
        let back: PresentationDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
        let keys = pres.var_keys();
        for (r, d) in pres.relations().iter().zip(&back.relations) {
            assert_eq!(poly_from_doc(&d.poly, &keys).unwrap(), r.poly);
        }
    }
}
