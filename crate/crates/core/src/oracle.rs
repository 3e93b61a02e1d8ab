//! Betti numbers of wonderful models by iterated blowup, independent of
//! the ring presentation.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::building::{induced_building_on, BuildingSet};
use crate::error::Result;
use crate::fan::{induced_fan, Fan, InducedFan};
use crate::layers::{build_layer_poset, Layer};
use crate::toric::h_vector_oracle;

pub type BettiVector = Vec<i64>;

/// Ranks of `Bl_Z Y` from those of `Y` and a center `Z` of codimension `d`.
pub fn keel_step(by: &[i64], bz: &[i64], d: usize) -> BettiVector {
    assert!(d >= 1, "center codimension must be positive");
    let mut out = by.to_vec();
    if d == 1 {
        return out;
    }
    for j in 1..d {
        for (k, b) in bz.iter().enumerate() {
            let idx = k + j;
            if idx >= out.len() {
                out.resize(idx + 1, 0);
            }
            out[idx] += b;
        }
    }
    debug_assert_eq!(out.iter().sum::<i64>(), by.iter().sum::<i64>() + (d as i64 - 1) * bz.iter().sum::<i64>());
    out
}

/// Translates a layer inside the closure of `z` to the torus of `z`,
/// using the base point where the complement characters equal 1.
fn restrict_layer(layer: &Layer, z: &Layer, induced: &InducedFan) -> Result<Layer> {
    debug_assert!(crate::layers::layer_inclusion(layer, z));
    let rank = induced.fan.rank;
    let mut gamma = Vec::new();
    let mut phi = Vec::new();
    for row in layer.gamma().basis().row_vecs() {
        let w = induced.project_character(row);
        let lifted = induced.lift_character(&w);
        phi.push(layer.value(&lifted).expect("lift lies in the layer lattice"));
        gamma.push(w);
    }
    Layer::new(rank, gamma, phi)
}

type MemoKey = (Fan, Vec<Layer>);

/// Recursive Betti oracle with a memo table keyed by the canonical fan and
/// the ordered building layers.
#[derive(Default)]
pub struct Oracle {
    memo: Mutex<HashMap<MemoKey, BettiVector>>,
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn model_betti(&self, fan: &Fan, building: &BuildingSet) -> Result<BettiVector> {
        let key: MemoKey = (fan.canonical(), (0..building.len()).map(|i| building.layer(i).clone()).collect());
        if let Some(b) = self.memo.lock().expect("memo lock").get(&key) {
            return Ok(b.clone());
        }
        let mut b = h_vector_oracle(fan);
        for h in 0..building.len() {
            let g = building.layer(h);
            let d = g.codim();
            if d == 1 {
                continue;
            }
            let bz = self.center_betti(fan, building, h)?;
            b = keel_step(&b, &bz, d);
        }
        self.memo.lock().expect("memo lock").insert(key, b.clone());
        Ok(b)
    }

    /// Betti numbers of the dominant transform of `G_h` after the first
    /// `h` blowups: the model of the closure of `G_h` for the induced
    /// building set.
    fn center_betti(&self, fan: &Fan, building: &BuildingSet, h: usize) -> Result<BettiVector> {
        let z = building.layer(h);
        let induced = induced_fan(fan, z.gamma())?;
        let prefix = building.prefix(h + 1)?;
        let pieces = induced_building_on(h, &prefix)?;
        let layers: Vec<Layer> = pieces.iter().map(|(l, _)| restrict_layer(l, z, &induced)).collect::<Result<_>>()?;
        let sub = if layers.is_empty() {
            BuildingSet::maximal(crate::layers::LayerPoset::empty(induced.fan.rank))?
        } else {
            let poset = build_layer_poset(&layers)?;
            let ids: Vec<usize> = layers.iter().map(|l| poset.id_of(l).expect("generator in poset")).collect();
            BuildingSet::ordered(poset, &ids)?
        };
        self.model_betti(&induced.fan, &sub)
    }
}

pub fn model_betti(fan: &Fan, building: &BuildingSet) -> Result<BettiVector> {
    Oracle::new().model_betti(fan, building)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeComparison {
    /// Cohomological degree, always even.
    pub degree: usize,
    pub presentation: Option<i64>,
    pub oracle: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub presentation: Vec<i64>,
    pub oracle: Vec<i64>,
    pub mismatches: Vec<DegreeComparison>,
    pub palindromic: bool,
    pub unit_bottom: bool,
    pub unit_top: bool,
    pub torsion_free: bool,
}

pub fn verify(pres_hilbert: &[i64], oracle: &[i64], torsion_free: bool) -> VerifyReport {
    let len = pres_hilbert.len().max(oracle.len());
    let mismatches: Vec<DegreeComparison> = (0..len)
        .filter_map(|k| {
            let (p, o) = (pres_hilbert.get(k).copied(), oracle.get(k).copied());
            (p != o).then_some(DegreeComparison { degree: 2 * k, presentation: p, oracle: o })
        })
        .collect();
    let palindromic = pres_hilbert.iter().eq(pres_hilbert.iter().rev());
    let unit_bottom = pres_hilbert.first() == Some(&1);
    let unit_top = pres_hilbert.last() == Some(&1);
    VerifyReport {
        passed: mismatches.is_empty() && palindromic && unit_bottom && unit_top && torsion_free,
        presentation: pres_hilbert.to_vec(),
        oracle: oracle.to_vec(),
        mismatches,
        palindromic,
        unit_bottom,
        unit_top,
        torsion_free,
    }
}
