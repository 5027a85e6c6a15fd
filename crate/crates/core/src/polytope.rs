//! The simplex `P = conv(v_0, ..., v_n)` cut out of the hyperplane
//! `q.x = delta`, with `v_i = (delta / q_i) * unit_i`.
//!
//! Its normalized volume is the ratio of two parallel integer vectors: the
//! cross product of the edges at `v_0` and the cross product of a lattice
//! basis. The Euclidean lengths of both carry the same square-root factor and
//! the same `1/n!`, so the ratio is exact.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::BigRat;
use crate::error::{Error, Result};
use crate::lattice::{construct_basis, cross_product, IntVector, Weights};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeData {
    pub weights: Weights,
    pub vertices: Vec<IntVector>,
    /// `w_i = v_i - v_0` for `i = 1..=n`.
    pub edges: Vec<IntVector>,
}

pub fn build_polytope(w: &Weights) -> Result<PolytopeData> {
    let dim = w.q().len();
    let vertices = w
        .q()
        .iter()
        .enumerate()
        .map(|(i, qi)| {
            let mut coords = vec![BigInt::zero(); dim];
            coords[i] = w.delta() / qi;
            IntVector::affine(coords, w)
        })
        .collect::<Result<Vec<_>>>()?;
    let edges = vertices[1..]
        .iter()
        .map(|v| {
            let coords = v
                .coords()
                .iter()
                .zip(vertices[0].coords())
                .map(|(a, b)| a - b)
                .collect();
            IntVector::difference(coords, w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PolytopeData {
        weights: w.clone(),
        vertices,
        edges,
    })
}

/// Scalar `l` with `a = l * b`, checked coordinatewise.
fn proportionality(a: &IntVector, b: &IntVector) -> Result<BigRat> {
    let pivot = b
        .coords()
        .iter()
        .position(|v| !v.is_zero())
        .ok_or(Error::ProportionalityFailure { coordinate: 0 })?;
    let ratio = BigRat::new(a.coords()[pivot].clone(), b.coords()[pivot].clone());
    for (coordinate, (x, y)) in a.coords().iter().zip(b.coords()).enumerate() {
        // x / y == numer / denom  <=>  x * denom == y * numer
        if x * ratio.denom() != y * ratio.numer() {
            return Err(Error::ProportionalityFailure { coordinate });
        }
    }
    Ok(ratio)
}

/// Normalized lattice volume of `P`, as `cross(edges) / cross(basis)`.
pub fn normalized_volume(w: &Weights) -> Result<BigRat> {
    let poly = build_polytope(w)?;
    let edge_cross = cross_product(&poly.edges)?;
    let basis_cross = construct_basis(w)?.cross;
    proportionality(&edge_cross, &basis_cross)
}

/// `D_0^n = Vol(P) * q_0^n / delta^n`.
pub fn d0_power_from_volume(w: &Weights) -> Result<BigRat> {
    let volume = normalized_volume(w)?;
    let n = w.n();
    let scale = BigRat::new(
        num_traits::pow(w.q()[0].clone(), n),
        num_traits::pow(w.delta().clone(), n),
    );
    Ok(volume * scale)
}

/// `delta^n / (q_0 ... q_n)`.
pub fn normalized_volume_closed_form(w: &Weights) -> BigRat {
    BigRat::new(num_traits::pow(w.delta().clone(), w.n()), w.product())
}

/// `|cross(edges)|^2`, the squared `n!`-scaled Euclidean volume of `P`.
pub fn squared_edge_volume(w: &Weights) -> Result<BigInt> {
    let poly = build_polytope(w)?;
    Ok(cross_product(&poly.edges)?.squared_norm())
}
