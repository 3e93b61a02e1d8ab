//! Layers `K_{Γ,φ}` of a toric arrangement, their intersections, and the
//! poset of connected components of all intersections.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{Cone, Fan};
use crate::lattice::{solve_torsion_congruences, Congruence, Int, IntMatrix, Qz, Sublattice};
use crate::serde_int;

/// `{t : χ(t) = φ(χ) for χ ∈ Γ}` with Γ saturated; φ is stored on the
/// canonical (Hermite) basis of Γ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Layer {
    gamma: Sublattice,
    phi: Vec<Qz>,
}

/// Layer as written in job files: any generating set of Γ with the values
/// of φ on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerSpec {
    #[serde(with = "serde_int::matrix")]
    pub gamma: Vec<Vec<Int>>,
    pub phi: Vec<Qz>,
}

impl Layer {
    pub fn new(ambient_rank: usize, gamma: Vec<Vec<Int>>, phi: Vec<Qz>) -> Result<Layer> {
        if gamma.len() != phi.len() {
            return Err(Error::Schema(format!("{} generators but {} values of phi", gamma.len(), phi.len())));
        }
        if let Some(r) = gamma.iter().find(|r| r.len() != ambient_rank) {
            return Err(Error::Schema(format!("character {r:?} does not have length {ambient_rank}")));
        }
        if gamma.is_empty() || gamma.iter().all(|r| r.iter().all(Zero::is_zero)) {
            return Err(Error::Schema("a layer needs a nonzero character".into()));
        }
        let span = Sublattice::new(ambient_rank, gamma.clone());
        if !span.is_saturated() {
            return Err(Error::NotSplit(format!("{span} has elementary divisors {:?}", display_ints(&span.elementary_divisors()))));
        }
        match solve_torsion_congruences(&IntMatrix::from_rows(ambient_rank, gamma), &phi) {
            Congruence::Empty => Err(Error::Schema("phi is inconsistent with the relations among the characters".into())),
            Congruence::Solutions { lattice, mut characters } => {
                debug_assert_eq!(characters.len(), 1);
                Ok(Layer { gamma: lattice, phi: characters.remove(0) })
            }
        }
    }

    pub fn from_spec(ambient_rank: usize, spec: &LayerSpec) -> Result<Layer> {
        Layer::new(ambient_rank, spec.gamma.clone(), spec.phi.clone())
    }

    pub fn from_i64(ambient_rank: usize, gamma: &[&[i64]], phi: &[(i64, i64)]) -> Result<Layer> {
        Layer::new(
            ambient_rank,
            gamma.iter().map(|r| crate::lattice::int_vec(r)).collect(),
            phi.iter().map(|&(a, b)| Qz::from_ratio(a, b)).collect(),
        )
    }

    /// Builds a layer from a saturated lattice and values on its canonical basis.
    pub fn from_canonical(gamma: Sublattice, phi: Vec<Qz>) -> Layer {
        assert!(gamma.is_saturated());
        assert_eq!(gamma.rank(), phi.len());
        Layer { gamma, phi }
    }

    pub fn spec(&self) -> LayerSpec {
        LayerSpec { gamma: self.gamma.basis().row_vecs().to_vec(), phi: self.phi.clone() }
    }

    pub fn gamma(&self) -> &Sublattice {
        &self.gamma
    }

    pub fn phi(&self) -> &[Qz] {
        &self.phi
    }

    pub fn codim(&self) -> usize {
        self.gamma.rank()
    }

    pub fn ambient_rank(&self) -> usize {
        self.gamma.ambient_rank()
    }

    /// Value of φ on a character of Γ.
    pub fn value(&self, chi: &[Int]) -> Option<Qz> {
        let c = self.gamma.coordinates(chi)?;
        Some(c.iter().zip(&self.phi).fold(Qz::zero(), |acc, (a, v)| acc.add(&v.scale(a))))
    }

    fn sort_key(&self) -> (usize, &[Vec<Int>], &[Qz]) {
        (self.codim(), self.gamma.basis().row_vecs(), &self.phi)
    }
}

impl PartialOrd for Layer {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Layer {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eqs: Vec<String> = self
            .gamma
            .basis()
            .row_vecs()
            .iter()
            .zip(&self.phi)
            .map(|(chi, v)| format!("χ{} = {}", display_ints(chi), v))
            .collect();
        write!(f, "{{{}}}", eqs.join(", "))
    }
}

pub(crate) fn display_ints(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// True iff `a ⊆ b` as subvarieties of the torus.
pub fn layer_inclusion(a: &Layer, b: &Layer) -> bool {
    if !a.gamma.contains(&b.gamma) {
        return false;
    }
    b.gamma.basis().row_vecs().iter().zip(&b.phi).all(|(chi, v)| a.value(chi).as_ref() == Some(v))
}

/// Connected components of `∩ layers` inside the torus; all share the
/// lattice `saturation(Σ Γ_i)`.
pub fn intersect_layers(layers: &[&Layer]) -> Vec<Layer> {
    assert!(!layers.is_empty(), "intersection of no layers is the whole torus");
    let n = layers[0].ambient_rank();
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for l in layers {
        assert_eq!(l.ambient_rank(), n);
        rows.extend(l.gamma.basis().row_vecs().iter().cloned());
        values.extend(l.phi.iter().cloned());
    }
    match solve_torsion_congruences(&IntMatrix::from_rows(n, rows), &values) {
        Congruence::Empty => Vec::new(),
        Congruence::Solutions { lattice, characters } => {
            characters.into_iter().map(|phi| Layer { gamma: lattice.clone(), phi }).collect()
        }
    }
}

/// The component of `∩ layers` containing `inner`, if any.
pub fn component_containing(layers: &[&Layer], inner: &Layer) -> Option<Layer> {
    let mut found = intersect_layers(layers).into_iter().filter(|c| layer_inclusion(inner, c));
    let first = found.next();
    assert!(found.next().is_none(), "components of an intersection are disjoint");
    first
}

/// The elements of `L′` with their inclusion relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerPoset {
    ambient_rank: usize,
    elements: Vec<Layer>,
    /// `leq[a][b]` iff element a ⊆ element b.
    leq: Vec<Vec<bool>>,
}

impl LayerPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The poset of an empty arrangement in rank `n`.
    pub fn empty(ambient_rank: usize) -> Self {
        LayerPoset { ambient_rank, elements: Vec::new(), leq: Vec::new() }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn elements(&self) -> &[Layer] {
        &self.elements
    }

    pub fn get(&self, id: usize) -> &Layer {
        &self.elements[id]
    }

    pub fn id_of(&self, layer: &Layer) -> Option<usize> {
        self.elements.binary_search(layer).ok()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn codim(&self, id: usize) -> usize {
        self.elements[id].codim()
    }
}

/// Closure of the arrangement under taking components of intersections.
pub fn build_layer_poset(arrangement: &[Layer]) -> Result<LayerPoset> {
    for l in arrangement {
        if !l.gamma.is_saturated() {
            return Err(Error::NotSplit(l.to_string()));
        }
    }
    let mut set: BTreeSet<Layer> = arrangement.iter().cloned().collect();
    let mut frontier: Vec<Layer> = set.iter().cloned().collect();
    while !frontier.is_empty() {
        let current: Vec<Layer> = set.iter().cloned().collect();
        let mut next = Vec::new();
        for a in &frontier {
            for b in &current {
                if a == b {
                    continue;
                }
                for c in intersect_layers(&[a, b]) {
                    if !set.contains(&c) {
                        set.insert(c.clone());
                        next.push(c);
                    }
                }
            }
        }
        frontier = next;
    }
    let elements: Vec<Layer> = set.into_iter().collect();
    let leq = elements.iter().map(|a| elements.iter().map(|b| layer_inclusion(a, b)).collect()).collect();
    let ambient_rank = arrangement.first().map_or(0, Layer::ambient_rank);
    Ok(LayerPoset { ambient_rank, elements, leq })
}

/// Whether the closure of the layer meets the orbit of `cone`: exactly when
/// every ray of the cone lies in `V_Γ`.
pub fn closure_nonempty_with_orbit(layer: &Layer, cone: &Cone, fan: &Fan) -> bool {
    cone.rays().iter().all(|&r| layer.gamma.annihilates(fan.ray(r)))
}
