//! Exact integer kernel: gcd chains, lcm, a deterministic extended gcd fold
//! and a fraction-free determinant.
//!
//! Everything is arbitrary precision. Rationals are `num_rational::BigRational`,
//! which keeps itself normalized (positive denominator, lowest terms).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type BigRat = BigRational;

/// Prefix gcds `[g_0, ..., g_n]` with `g_s = gcd(q_0, ..., q_s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdChain {
    values: Vec<BigInt>,
}

impl GcdChain {
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn get(&self, s: usize) -> &BigInt {
        &self.values[s]
    }

    /// gcd of the whole sequence.
    pub fn last(&self) -> &BigInt {
        self.values.last().expect("chain is never empty")
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn check_positive(q: &[BigInt]) -> Result<()> {
    if q.is_empty() {
        return Err(Error::EmptyInput);
    }
    match q.iter().position(|v| !v.is_positive()) {
        Some(index) => Err(Error::NonPositiveEntry {
            index,
            value: q[index].clone(),
        }),
        None => Ok(()),
    }
}

pub fn gcd_chain(q: &[BigInt]) -> Result<GcdChain> {
    check_positive(q)?;
    let mut values = Vec::with_capacity(q.len());
    let mut acc = q[0].clone();
    values.push(acc.clone());
    for v in &q[1..] {
        acc = acc.gcd(v);
        values.push(acc.clone());
    }
    Ok(GcdChain { values })
}

pub fn lcm_all(q: &[BigInt]) -> Result<BigInt> {
    check_positive(q)?;
    Ok(q[1..].iter().fold(q[0].clone(), |acc, v| acc.lcm(v)))
}

/// Two-term extended Euclid, `ext_gcd(x, 0) = (x, 1, 0)`.
///
/// Returns `(g, s, t)` with `s*a + t*b = g`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if b.is_zero() {
        return (a.clone(), BigInt::one(), BigInt::zero());
    }
    let (quot, rem) = a.div_mod_floor(b);
    let (g, s, t) = ext_gcd(b, &rem);
    let next = &s - &quot * &t;
    (g, t, next)
}

/// Left-to-right fold of [`ext_gcd`] over a sequence of positive integers.
///
/// Returns `(g, coeffs)` with `sum(coeffs[i] * a[i]) = g = gcd(a)`.
pub fn ext_gcd_fold(a: &[BigInt]) -> Result<(BigInt, Vec<BigInt>)> {
    check_positive(a)?;
    let mut g = a[0].clone();
    let mut coeffs = vec![BigInt::one()];
    for v in &a[1..] {
        let (next, s, t) = ext_gcd(&g, v);
        for c in coeffs.iter_mut() {
            *c *= &s;
        }
        coeffs.push(t);
        g = next;
    }
    Ok((g, coeffs))
}

/// Finds integers `x` with `sum(x[i] * a[i]) = target`.
///
/// The answer is the Bezout fold scaled by `target / gcd(a)`.
pub fn solve_weighted_sum(a: &[BigInt], target: &BigInt) -> Result<Vec<BigInt>> {
    let (g, coeffs) = ext_gcd_fold(a)?;
    let (scale, rem) = target.div_rem(&g);
    if !rem.is_zero() {
        return Err(Error::NotDivisible {
            gcd: g,
            target: target.clone(),
        });
    }
    Ok(coeffs.into_iter().map(|c| c * &scale).collect())
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Determinant of a square integer matrix by Bareiss elimination.
///
/// Every intermediate value is a minor of the input, so all divisions are exact.
pub fn determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(rows.iter().all(|r| r.len() == n));
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}
