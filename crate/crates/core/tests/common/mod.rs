#![allow(dead_code)]

use wonder_core::building::BuildingSet;
use wonder_core::fan::Fan;
use wonder_core::layers::{build_layer_poset, Layer};

pub fn p1() -> Fan {
    Fan::from_i64(1, &[&[1], &[-1]], &[&[0], &[1]]).unwrap()
}

pub fn p2() -> Fan {
    Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]]).unwrap()
}

pub fn p1xp1() -> Fan {
    Fan::from_i64(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]]).unwrap()
}

pub fn blpt_p2() -> Fan {
    Fan::from_i64(2, &[&[1, 0], &[1, 1], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]).unwrap()
}

/// `P¹×P¹` subdivided at `±(1,1)` and `±(1,-1)`.
pub fn octagon() -> Fan {
    Fan::from_i64(
        2,
        &[&[1, 0], &[1, 1], &[0, 1], &[-1, 1], &[-1, 0], &[-1, -1], &[0, -1], &[1, -1]],
        &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 6], &[6, 7], &[7, 0]],
    )
    .unwrap()
}

/// The layer `χ = exp(2πi·num/den)` for a single character `χ`.
pub fn layer(chi: &[i64], num: i64, den: i64) -> Layer {
    Layer::from_i64(chi.len(), &[chi], &[(num, den)]).unwrap()
}

pub fn maximal(layers: &[Layer]) -> BuildingSet {
    BuildingSet::maximal(build_layer_poset(layers).unwrap()).unwrap()
}

pub fn coordinate() -> BuildingSet {
    maximal(&[layer(&[1, 0], 0, 1), layer(&[0, 1], 0, 1)])
}

pub fn diagonals() -> BuildingSet {
    maximal(&[layer(&[1, 1], 0, 1), layer(&[1, -1], 0, 1)])
}

pub fn line_points(m: i64) -> BuildingSet {
    let pts: Vec<Layer> = (0..m).map(|k| layer(&[1], k, m)).collect();
    maximal(&pts)
}
