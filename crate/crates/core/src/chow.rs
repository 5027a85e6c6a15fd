//! Algebraic side: the fan of `P(q_0, ..., q_n)`, its ideal presentation,
//! the rational Chow ring `Q[x_0] / (x_0^{n+1})` and top intersection numbers.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{dot, BigRat};
use crate::error::{Error, Result};
use crate::lattice::{construct_basis, fundamental_domain_witness, IntVector, Weights};
use crate::polytope::{d0_power_from_volume, normalized_volume, normalized_volume_closed_form};

/// Rays `u_i` of the fan, as standard-basis representatives of classes in
/// `N = Z^{n+1} / Z q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WpsFan {
    pub weights: Weights,
    pub rays: Vec<IntVector>,
}

impl WpsFan {
    /// Representative of `sum q_i u_i`; equals `q` itself, hence zero in `N`.
    pub fn relation(&self) -> IntVector {
        let dim = self.weights.q().len();
        let mut sum = vec![BigInt::zero(); dim];
        for (qi, ray) in self.weights.q().iter().zip(&self.rays) {
            for (s, x) in sum.iter_mut().zip(ray.coords()) {
                *s += qi * x;
            }
        }
        IntVector::new(sum)
    }

    /// Cones are generated by proper subsets of the rays.
    pub fn is_cone(&self, rays: &[usize]) -> bool {
        let mut seen = vec![false; self.rays.len()];
        for &r in rays {
            if r >= seen.len() {
                return false;
            }
            seen[r] = true;
        }
        !seen.iter().all(|&b| b)
    }
}

pub fn build_fan(w: &Weights) -> WpsFan {
    let dim = w.q().len();
    let rays = (0..dim)
        .map(|i| {
            let mut coords = vec![BigInt::zero(); dim];
            coords[i] = BigInt::one();
            IntVector::new(coords)
        })
        .collect();
    WpsFan {
        weights: w.clone(),
        rays,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPresentation {
    /// Stanley-Reisner monomials, each a sorted list of variable indices.
    pub sr_generators: Vec<Vec<usize>>,
    /// Row `i - 1` holds the coefficients of `q_i x_0 - q_0 x_i`.
    pub linear_generators: Vec<Vec<BigInt>>,
}

pub fn ideal_presentation(w: &Weights) -> IdealPresentation {
    let q = w.q();
    let dim = q.len();
    let linear_generators = (1..dim)
        .map(|i| {
            let mut row = vec![BigInt::zero(); dim];
            row[0] = q[i].clone();
            row[i] = -&q[0];
            row
        })
        .collect();
    IdealPresentation {
        sr_generators: vec![(0..dim).collect()],
        linear_generators,
    }
}

/// `D = sum a_i D_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusInvariantDivisor {
    pub a: Vec<BigInt>,
}

impl TorusInvariantDivisor {
    pub fn new(a: Vec<BigInt>) -> Self {
        TorusInvariantDivisor { a }
    }

    pub fn from_i64s(a: &[i64]) -> Self {
        Self::new(a.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// The prime divisor `D_i` on a space with `len` rays.
    pub fn prime(i: usize, len: usize) -> Self {
        let mut a = vec![BigInt::zero(); len];
        a[i] = BigInt::one();
        Self::new(a)
    }
}

impl fmt::Display for TorusInvariantDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.a.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `coeff * x_0^power` in `Q[x_0] / (x_0^{n+1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowClass {
    coeff: BigRat,
    power: usize,
    n: usize,
}

impl ChowClass {
    pub fn new(coeff: BigRat, power: usize, n: usize) -> Self {
        if coeff.is_zero() || power > n {
            return Self::zero(n);
        }
        ChowClass { coeff, power, n }
    }

    pub fn zero(n: usize) -> Self {
        ChowClass {
            coeff: BigRat::zero(),
            power: 0,
            n,
        }
    }

    pub fn one(n: usize) -> Self {
        ChowClass {
            coeff: BigRat::one(),
            power: 0,
            n,
        }
    }

    pub fn coeff(&self) -> &BigRat {
        &self.coeff
    }

    pub fn power(&self) -> usize {
        self.power
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.power {
            _ if self.is_zero() => write!(f, "0"),
            0 => write!(f, "{}", self.coeff),
            1 => write!(f, "{}*x0", self.coeff),
            p => write!(f, "{}*x0^{}", self.coeff, p),
        }
    }
}

/// Product in the truncated ring. Both factors must live in the same ring.
pub fn multiply_classes(a: &ChowClass, b: &ChowClass) -> ChowClass {
    assert_eq!(a.n, b.n, "classes from different Chow rings");
    if a.is_zero() || b.is_zero() {
        return ChowClass::zero(a.n);
    }
    ChowClass::new(&a.coeff * &b.coeff, a.power + b.power, a.n)
}

fn check_len(d: &TorusInvariantDivisor, w: &Weights) -> Result<()> {
    if d.a.len() != w.q().len() {
        return Err(Error::DimensionMismatch {
            expected: w.q().len(),
            got: d.a.len(),
        });
    }
    Ok(())
}

/// `deg D = sum a_i q_i`.
pub fn divisor_degree(d: &TorusInvariantDivisor, w: &Weights) -> Result<BigInt> {
    check_len(d, w)?;
    Ok(dot(&d.a, w.q()))
}

/// `D -> (deg D / q_0) x_0`.
pub fn to_chow_class(d: &TorusInvariantDivisor, w: &Weights) -> Result<ChowClass> {
    let deg = divisor_degree(d, w)?;
    Ok(ChowClass::new(BigRat::new(deg, w.q()[0].clone()), 1, w.n()))
}

/// Image of the monomial `prod x_i` under `x_i -> (q_i / q_0) x_0`.
pub fn reduce_monomial(vars: &[usize], w: &Weights) -> ChowClass {
    let q = w.q();
    vars.iter().fold(ChowClass::one(w.n()), |acc, &i| {
        let factor = ChowClass::new(BigRat::new(q[i].clone(), q[0].clone()), 1, w.n());
        multiply_classes(&acc, &factor)
    })
}

/// `D_0^n = q_0^n / (q_0 ... q_n)`.
pub fn d0_power_closed_form(w: &Weights) -> BigRat {
    BigRat::new(num_traits::pow(w.q()[0].clone(), w.n()), w.product())
}

/// `E_1 ... E_n`, computed in the Chow ring and evaluated against `D_0^n`.
pub fn intersection_number(w: &Weights, divisors: &[TorusInvariantDivisor]) -> Result<BigRat> {
    if divisors.len() != w.n() {
        return Err(Error::WrongDivisorCount {
            expected: w.n(),
            got: divisors.len(),
        });
    }
    let mut product = ChowClass::one(w.n());
    for d in divisors {
        product = multiply_classes(&product, &to_chow_class(d, w)?);
    }
    if product.is_zero() {
        return Ok(BigRat::zero());
    }
    debug_assert_eq!(product.power(), w.n());
    Ok(product.coeff * d0_power_closed_form(w))
}

/// `prod deg E_j / (q_0 ... q_n)` straight from the degrees.
pub fn bezout_closed_form(w: &Weights, degrees: &[BigInt]) -> Result<BigRat> {
    if degrees.len() != w.n() {
        return Err(Error::WrongDivisorCount {
            expected: w.n(),
            got: degrees.len(),
        });
    }
    Ok(BigRat::new(degrees.iter().product(), w.product()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Not run, e.g. enumeration above the brute-force limit.
    Skip,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skip => "skip",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    /// Key/value pairs; values are exact integers, rationals or vectors.
    pub witness: Vec<(String, String)>,
}

impl Check {
    fn new(name: &'static str, ok: bool, witness: Vec<(String, String)>) -> Self {
        let status = if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Check {
            name,
            status,
            witness,
        }
    }

    fn error(name: &'static str, err: Error) -> Self {
        Check::new(name, false, vec![kv("error", err)])
    }
}

fn kv(key: &str, value: impl fmt::Display) -> (String, String) {
    (key.to_string(), value.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub weights: Weights,
    pub checks: Vec<Check>,
    pub well_formed: bool,
}

impl VerificationReport {
    /// No check failed; skipped checks do not count against it.
    pub fn overall(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }
}

fn check_basis(w: &Weights) -> Check {
    match construct_basis(w) {
        Ok(cert) => Check::new(
            "basis_cross",
            cert.matches_weights,
            vec![
                kv("cross", &cert.cross),
                kv("q", IntVector::new(w.q().to_vec())),
            ],
        ),
        Err(e) => Check::error("basis_cross", e),
    }
}

fn check_volume(w: &Weights) -> Check {
    let expected = normalized_volume_closed_form(w);
    match normalized_volume(w) {
        Ok(vol) => Check::new(
            "normalized_volume",
            vol == expected,
            vec![kv("volume", &vol), kv("expected", &expected)],
        ),
        Err(e) => Check::error("normalized_volume", e),
    }
}

fn check_d0_paths(w: &Weights) -> Check {
    let closed = d0_power_closed_form(w);
    match d0_power_from_volume(w) {
        Ok(geo) => Check::new(
            "d0_power_paths",
            geo == closed,
            vec![kv("from_volume", &geo), kv("closed_form", &closed)],
        ),
        Err(e) => Check::error("d0_power_paths", e),
    }
}

fn check_bezout(w: &Weights, trials: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = w.q().len();
    for _ in 0..trials {
        let divisors: Vec<TorusInvariantDivisor> = (0..w.n())
            .map(|_| {
                let a: Vec<i64> = (0..dim).map(|_| rng.gen_range(-5..=5)).collect();
                TorusInvariantDivisor::from_i64s(&a)
            })
            .collect();
        let degrees: Result<Vec<BigInt>> = divisors.iter().map(|d| divisor_degree(d, w)).collect();
        let outcome = degrees.and_then(|degs| {
            let chow = intersection_number(w, &divisors)?;
            let closed = bezout_closed_form(w, &degs)?;
            Ok((chow, closed))
        });
        match outcome {
            Ok((chow, closed)) if chow == closed => {}
            Ok((chow, closed)) => {
                let shown: Vec<String> = divisors.iter().map(ToString::to_string).collect();
                return Check::new(
                    "bezout_trials",
                    false,
                    vec![
                        kv("divisors", shown.join(" ")),
                        kv("chow", chow),
                        kv("closed_form", closed),
                    ],
                );
            }
            Err(e) => return Check::error("bezout_trials", e),
        }
    }
    Check::new("bezout_trials", true, vec![kv("trials", trials)])
}

fn check_fundamental_domain(w: &Weights, limit: u64) -> Check {
    const NAME: &str = "fundamental_domain";
    let cert = match construct_basis(w) {
        Ok(c) => c,
        Err(e) => return Check::error(NAME, e),
    };
    match fundamental_domain_witness(&cert.basis, w, limit) {
        Ok(None) => Check::new(NAME, true, vec![kv("interior_points", 0)]),
        Ok(Some(p)) => Check::new(NAME, false, vec![kv("interior_point", p)]),
        Err(Error::BruteForceTooLarge { size, limit }) => Check {
            name: NAME,
            status: CheckStatus::Skip,
            witness: vec![kv("enumeration_size", size), kv("limit", limit)],
        },
        Err(e) => Check::error(NAME, e),
    }
}

fn check_fan_ideal(w: &Weights) -> Check {
    let fan = build_fan(w);
    let ideal = ideal_presentation(w);
    let dim = w.q().len();
    let q = w.q();

    let relation = fan.relation();
    let relation_ok = relation.coords() == q;
    let all: Vec<usize> = (0..dim).collect();
    let sr_ok = ideal.sr_generators == vec![all.clone()] && !fan.is_cone(&all);
    let proper_ok = (0..dim).all(|skip| {
        let face: Vec<usize> = all.iter().copied().filter(|&i| i != skip).collect();
        fan.is_cone(&face)
    });
    let linear_ok = ideal.linear_generators.len() == w.n()
        && ideal.linear_generators.iter().enumerate().all(|(k, row)| {
            let i = k + 1;
            let nonzero = row.iter().filter(|v| !v.is_zero()).count();
            // x_j -> q_j / q_0 turns the generator into (q_i q_0 - q_0 q_i) / q_0
            nonzero == 2 && row[0] == q[i] && row[i] == -&q[0] && dot(row, q).is_zero()
        });
    let sr_reduces = reduce_monomial(&all, w).is_zero();

    Check::new(
        "fan_ideal",
        relation_ok && sr_ok && proper_ok && linear_ok && sr_reduces,
        vec![
            kv("relation", relation),
            kv(
                "stanley_reisner",
                if sr_ok { "x0*...*xn" } else { "unexpected" },
            ),
            kv("linear_generators", ideal.linear_generators.len()),
            kv("sr_reduces_to_zero", sr_reduces),
        ],
    )
}

/// Runs every consistency check on `w`. Failures are recorded, never raised.
pub fn verify_all(
    w: &Weights,
    trials: usize,
    bruteforce_limit: u64,
    seed: u64,
) -> VerificationReport {
    let checks = vec![
        check_basis(w),
        check_volume(w),
        check_d0_paths(w),
        check_bezout(w, trials, seed),
        check_fundamental_domain(w, bruteforce_limit),
        check_fan_ideal(w),
    ];
    VerificationReport {
        weights: w.clone(),
        checks,
        well_formed: w.well_formed(),
    }
}
