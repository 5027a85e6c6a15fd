//! Geometry of the hyperplane lattice `{x in Z^{n+1} : q.x = delta}` and its
//! difference lattice `{x : q.x = 0}`.
//!
//! [`construct_basis`] builds the triangular basis `e_1, ..., e_n` from the
//! gcd chain of the weights. Basis membership can be checked two ways:
//! [`is_basis_cross`] compares the generalized cross product with `q`, while
//! [`fundamental_domain_test`] searches the half-open parallelotope for a
//! nonzero lattice point and serves as the slow ground truth.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{determinant, dot, gcd_chain, lcm_all, solve_weighted_sum, GcdChain};
use crate::error::{Error, Result};

/// Weight vector `(q_0, ..., q_n)` with `gcd = 1` and `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weights {
    q: Vec<BigInt>,
    delta: BigInt,
    chain: GcdChain,
    well_formed: bool,
}

impl Weights {
    pub fn new(q: Vec<BigInt>) -> Result<Self> {
        if q.len() < 2 {
            return Err(Error::InvalidWeights(format!(
                "need at least two weights, got {}",
                q.len()
            )));
        }
        let chain = gcd_chain(&q).map_err(|e| Error::InvalidWeights(e.to_string()))?;
        if !chain.last().is_one() {
            return Err(Error::InvalidWeights(format!(
                "gcd of all weights is {}, expected 1",
                chain.last()
            )));
        }
        let delta = lcm_all(&q).map_err(|e| Error::InvalidWeights(e.to_string()))?;
        let well_formed = leave_one_out_gcds(&q).iter().all(One::is_one);
        Ok(Weights {
            q,
            delta,
            chain,
            well_formed,
        })
    }

    pub fn from_u64s(q: &[u64]) -> Result<Self> {
        Self::new(q.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn q(&self) -> &[BigInt] {
        &self.q
    }

    /// Number of divisors in a top intersection product.
    pub fn n(&self) -> usize {
        self.q.len() - 1
    }

    /// `lcm(q_0, ..., q_n)`.
    pub fn delta(&self) -> &BigInt {
        &self.delta
    }

    pub fn chain(&self) -> &GcdChain {
        &self.chain
    }

    /// Every n-element subset of the weights has gcd 1.
    pub fn well_formed(&self) -> bool {
        self.well_formed
    }

    pub fn product(&self) -> BigInt {
        self.q.iter().product()
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.q.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn leave_one_out_gcds(q: &[BigInt]) -> Vec<BigInt> {
    let len = q.len();
    let mut prefix = vec![BigInt::zero(); len + 1];
    let mut suffix = vec![BigInt::zero(); len + 1];
    for i in 0..len {
        prefix[i + 1] = prefix[i].gcd(&q[i]);
        suffix[len - 1 - i] = suffix[len - i].gcd(&q[len - 1 - i]);
    }
    (0..len).map(|i| prefix[i].gcd(&suffix[i + 1])).collect()
}

/// Which linear condition against the weights a vector is known to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    None,
    /// `q.x = 0`
    Difference,
    /// `q.x = delta`
    Affine,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntVector {
    coords: Vec<BigInt>,
    constraint: Constraint,
}

impl IntVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        IntVector {
            coords,
            constraint: Constraint::None,
        }
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// Tags `coords` as a point of the difference lattice, checking `q.x = 0`.
    pub fn difference(coords: Vec<BigInt>, w: &Weights) -> Result<Self> {
        Self::tagged(coords, w, Constraint::Difference)
    }

    /// Tags `coords` as a point of the hyperplane, checking `q.x = delta`.
    pub fn affine(coords: Vec<BigInt>, w: &Weights) -> Result<Self> {
        Self::tagged(coords, w, Constraint::Affine)
    }

    fn tagged(coords: Vec<BigInt>, w: &Weights, constraint: Constraint) -> Result<Self> {
        if coords.len() != w.q().len() {
            return Err(Error::DimensionMismatch {
                expected: w.q().len(),
                got: coords.len(),
            });
        }
        let value = dot(&coords, w.q());
        let ok = match constraint {
            Constraint::None => true,
            Constraint::Difference => value.is_zero(),
            Constraint::Affine => &value == w.delta(),
        };
        if !ok {
            return Err(Error::ConstraintViolated { index: 0 });
        }
        Ok(IntVector { coords, constraint })
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn constraint(&self) -> Constraint {
        self.constraint
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn squared_norm(&self) -> BigInt {
        dot(&self.coords, &self.coords)
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The constructed basis together with its cross product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisCertificate {
    pub basis: Vec<IntVector>,
    pub cross: IntVector,
    /// `cross == q` exactly.
    pub matches_weights: bool,
}

fn check_shape(vs: &[IntVector]) -> Result<usize> {
    let n = vs.len();
    if n == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: 0,
        });
    }
    for v in vs {
        if v.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                got: v.len(),
            });
        }
    }
    Ok(n)
}

/// Generalized cross product of `n` vectors in `(n+1)`-space.
///
/// Coordinate `k` is `(-1)^k` times the maximal minor with column `k` removed.
pub fn cross_product(vs: &[IntVector]) -> Result<IntVector> {
    let n = check_shape(vs)?;
    let coords = (0..=n)
        .map(|k| {
            let minor: Vec<Vec<BigInt>> = vs
                .iter()
                .map(|v| {
                    v.coords()
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != k)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let d = determinant(&minor);
            if k % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect();
    Ok(IntVector::new(coords))
}

/// Builds `e_1, ..., e_n`, a basis of the difference lattice `q.x = 0`.
///
/// `e_s` is nonzero only in coordinates `0..=s`, with coordinate `s` equal to
/// `g_{s-1} / g_s`. For `s >= 2` the leading coordinates come from a lattice
/// point of the hyperplane `q.x = delta` shifted by `-v_0`.
pub fn construct_basis(w: &Weights) -> Result<BasisCertificate> {
    let q = w.q();
    let n = w.n();
    let chain = w.chain();
    let v0 = w.delta() / &q[0];

    let mut basis = Vec::with_capacity(n);
    let g1 = chain.get(1);
    let mut e1 = vec![BigInt::zero(); n + 1];
    e1[0] = -(&q[1] / g1);
    e1[1] = &q[0] / g1;
    basis.push(IntVector::difference(e1, w)?);

    for s in 2..=n {
        let step = chain.get(s - 1) / chain.get(s);
        let target = w.delta() - &q[s] * &step;
        let head = solve_weighted_sum(&q[..s], &target)?;
        let mut e = vec![BigInt::zero(); n + 1];
        for (slot, x) in e.iter_mut().zip(head) {
            *slot = x;
        }
        e[0] -= &v0;
        e[s] = step;
        basis.push(IntVector::difference(e, w)?);
    }

    let cross = cross_product(&basis)?;
    let matches_weights = cross.coords() == q;
    Ok(BasisCertificate {
        basis,
        cross,
        matches_weights,
    })
}

fn check_difference(bs: &[IntVector], w: &Weights) -> Result<()> {
    let n = check_shape(bs)?;
    if n != w.n() {
        return Err(Error::DimensionMismatch {
            expected: w.n(),
            got: n,
        });
    }
    for (index, b) in bs.iter().enumerate() {
        if b.len() != w.q().len() {
            return Err(Error::DimensionMismatch {
                expected: w.q().len(),
                got: b.len(),
            });
        }
        if !dot(b.coords(), w.q()).is_zero() {
            return Err(Error::ConstraintViolated { index });
        }
    }
    Ok(())
}

/// Fast basis criterion: `cross(bs) = +-q`.
pub fn is_basis_cross(bs: &[IntVector], w: &Weights) -> Result<bool> {
    check_difference(bs, w)?;
    let cross = cross_product(bs)?;
    let q = w.q();
    let pos = cross.coords() == q;
    let neg = cross.coords().iter().zip(q).all(|(c, v)| *c == -v);
    Ok(pos || neg)
}

/// Searches `T(b_1, ..., b_n) = { sum c_i b_i : 0 <= c_i < 1 }` for a nonzero
/// integer point and returns the first one found.
///
/// Any such point `x = sum c_i b_i` is integral in the `n` coordinates of a
/// nonsingular maximal minor `S`, so `c = adj(S^T) y / det(S)` and each `c_i`
/// is a multiple of `1/|det S|`. The search therefore walks the grid
/// `{0, 1/D, ..., (D-1)/D}^n` with `D` the smallest nonzero `|det S|`, which
/// has `D^n` points; `limit` caps that count.
pub fn fundamental_domain_witness(
    bs: &[IntVector],
    w: &Weights,
    limit: u64,
) -> Result<Option<IntVector>> {
    check_difference(bs, w)?;
    let n = bs.len();

    let mut square: Vec<Vec<BigInt>> = bs.iter().map(|b| b.coords().to_vec()).collect();
    square.push(w.q().to_vec());
    if determinant(&square).is_zero() {
        return Err(Error::DependentVectors);
    }

    let minors = cross_product(bs)?;
    let denom = minors
        .coords()
        .iter()
        .filter(|m| !m.is_zero())
        .map(|m| m.abs())
        .min()
        .ok_or(Error::DependentVectors)?;

    let size = num_traits::pow(denom.clone(), n);
    if size > BigInt::from(limit) {
        return Err(Error::BruteForceTooLarge { size, limit });
    }
    // size <= limit, so the denominator fits in a u64
    let steps = denom.to_u64().expect("bounded by limit");

    let mut digits = vec![0u64; n];
    loop {
        // odometer, last digit fastest; starting from zero means the origin is skipped
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < steps {
                break;
            }
            digits[i] = 0;
        }

        let mut point = vec![BigInt::zero(); n + 1];
        for (d, b) in digits.iter().zip(bs) {
            if *d == 0 {
                continue;
            }
            let d = BigInt::from(*d);
            for (p, x) in point.iter_mut().zip(b.coords()) {
                *p += &d * x;
            }
        }
        if point.iter().all(|p| p.is_multiple_of(&denom)) {
            let coords = point.into_iter().map(|p| p / &denom).collect();
            return Ok(Some(IntVector::difference(coords, w)?));
        }
    }
}

/// Lattice-basis test by the fundamental-domain criterion: `bs` is a basis
/// exactly when `T(bs)` contains no lattice point but the origin.
pub fn fundamental_domain_test(bs: &[IntVector], w: &Weights, limit: u64) -> Result<bool> {
    fundamental_domain_witness(bs, w, limit).map(|witness| witness.is_none())
}
