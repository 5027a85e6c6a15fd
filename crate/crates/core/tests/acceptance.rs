//! Acceptance gate. Every criterion is an exact identity; the harness prints
//! one PASS/FAIL line per criterion and exits nonzero if any fails.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wps_bezout::chow::{
    bezout_closed_form, d0_power_closed_form, divisor_degree, intersection_number,
    TorusInvariantDivisor,
};
use wps_bezout::cli::{run_command, weight_sweep};
use wps_bezout::lattice::{
    construct_basis, cross_product, fundamental_domain_test, is_basis_cross, IntVector, Weights,
};
use wps_bezout::polytope::{build_polytope, d0_power_from_volume, normalized_volume};
use wps_bezout::BigRat;

const SWEEP_SEED: u64 = 0x5EED_B020;
const SWEEP_SIZE: usize = 240;
const BRUTE_FORCE_LIMIT: u64 = 1_000_000;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

/// Distinct valid weight vectors with `2 <= n <= 5` and `q_i <= 10`.
fn sampled_sweep() -> Vec<Weights> {
    let mut rng = ChaCha8Rng::seed_from_u64(SWEEP_SEED);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < SWEEP_SIZE {
        let n = rng.gen_range(2..=5usize);
        let q: Vec<u64> = (0..=n).map(|_| rng.gen_range(1..=10)).collect();
        if seen.contains(&q) {
            continue;
        }
        if let Ok(w) = Weights::from_u64s(&q) {
            seen.insert(q);
            out.push(w);
        }
    }
    out
}

fn random_divisors(rng: &mut ChaCha8Rng, w: &Weights) -> Vec<TorusInvariantDivisor> {
    let dim = w.q().len();
    (0..w.n())
        .map(|_| {
            let a: Vec<i64> = (0..dim).map(|_| rng.gen_range(-10..=10)).collect();
            TorusInvariantDivisor::from_i64s(&a)
        })
        .collect()
}

fn within(start: Instant, budget_secs: u64) -> Result<Duration, String> {
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(budget_secs) {
        return Err(format!("took {elapsed:?}, budget {budget_secs}s"));
    }
    Ok(elapsed)
}

fn rat(p: i64, q: i64) -> BigRat {
    BigRat::new(BigInt::from(p), BigInt::from(q))
}

fn theorem_agreement(sweep: &[Weights]) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SWEEP_SEED ^ 1);
    let mut tuples = 0;
    for w in sweep {
        let via_volume = d0_power_from_volume(w).map_err(|e| format!("q=({w}): {e}"))?;
        for _ in 0..3 {
            let divisors = random_divisors(&mut rng, w);
            let degrees: Vec<BigInt> = divisors
                .iter()
                .map(|d| divisor_degree(d, w).unwrap())
                .collect();
            let chow = intersection_number(w, &divisors).map_err(|e| e.to_string())?;
            let closed = bezout_closed_form(w, &degrees).map_err(|e| e.to_string())?;
            let degree_product: BigInt = degrees.iter().product();
            let geometric =
                BigRat::new(degree_product, num_traits::pow(w.q()[0].clone(), w.n())) * &via_volume;
            if chow != closed || chow != geometric {
                return Err(format!(
                    "q=({w}) degrees={degrees:?}: chow={chow} closed={closed} volume={geometric}"
                ));
            }
            tuples += 1;
        }
    }
    let elapsed = within(start, 60)?;
    Ok(format!(
        "{} weight vectors, {tuples} tuples, {elapsed:.2?}",
        sweep.len()
    ))
}

fn cross_equals_weights(sweep: &[Weights]) -> Outcome {
    let start = Instant::now();
    let mut cases: Vec<Weights> = sweep.to_vec();
    cases.extend(weight_sweep(1, 20));
    for w in &cases {
        let cert = construct_basis(w).map_err(|e| format!("q=({w}): {e}"))?;
        if cert.cross.coords() != w.q() {
            return Err(format!("q=({w}): cross = {}", cert.cross));
        }
    }
    let elapsed = within(start, 30)?;
    Ok(format!("{} weight vectors, {elapsed:.2?}", cases.len()))
}

fn normalized_volume_closed_form(sweep: &[Weights]) -> Outcome {
    let start = Instant::now();
    for w in sweep {
        // normalized_volume itself fails unless the two cross products are parallel
        let vol = normalized_volume(w).map_err(|e| format!("q=({w}): {e}"))?;
        let expected = BigRat::new(num_traits::pow(w.delta().clone(), w.n()), w.product());
        if vol != expected {
            return Err(format!("q=({w}): volume {vol}, expected {expected}"));
        }
        let edges = cross_product(&build_polytope(w).unwrap().edges).unwrap();
        let scaled: Vec<BigRat> = w
            .q()
            .iter()
            .map(|qi| BigRat::from_integer(qi.clone()) * &vol)
            .collect();
        let edge_rats: Vec<BigRat> = edges
            .coords()
            .iter()
            .cloned()
            .map(BigRat::from_integer)
            .collect();
        if scaled != edge_rats {
            return Err(format!("q=({w}): cross(edges) = {edges}"));
        }
    }
    let elapsed = within(start, 30)?;
    Ok(format!("{} weight vectors, {elapsed:.2?}", sweep.len()))
}

fn scaled(v: &IntVector, k: i64, w: &Weights) -> IntVector {
    let coords = v.coords().iter().map(|x| x * k).collect();
    IntVector::difference(coords, w).unwrap()
}

fn summed(a: &IntVector, b: &IntVector, k: i64, w: &Weights) -> IntVector {
    let coords = a
        .coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| (x + y) * k)
        .collect();
    IntVector::difference(coords, w).unwrap()
}

fn lemma_oracle_agreement() -> Outcome {
    let start = Instant::now();
    let mut compared = 0;
    let sweep = weight_sweep(3, 6);
    for w in &sweep {
        let basis = construct_basis(w).unwrap().basis;
        let n = basis.len();
        // (candidate, expected verdict)
        let mut candidates = vec![(basis.clone(), true)];
        for i in 0..n {
            let mut doubled = basis.clone();
            doubled[i] = scaled(&basis[i], 2, w);
            candidates.push((doubled, false));
        }
        if n >= 2 {
            let mut mutated = basis.clone();
            mutated[0] = summed(&basis[0], &basis[1], 2, w);
            candidates.push((mutated, false));
            let mut swapped = basis.clone();
            swapped.swap(0, n - 1);
            candidates.push((swapped, true));
            let mut row_sum = basis.clone();
            row_sum[n - 1] = summed(&basis[n - 1], &basis[0], 1, w);
            candidates.push((row_sum, true));
        }
        for (bs, expected) in candidates {
            let oracle = fundamental_domain_test(&bs, w, BRUTE_FORCE_LIMIT)
                .map_err(|e| format!("q=({w}): {e}"))?;
            let fast = is_basis_cross(&bs, w).map_err(|e| format!("q=({w}): {e}"))?;
            if oracle != expected || fast != oracle {
                let shown: Vec<String> = bs.iter().map(ToString::to_string).collect();
                return Err(format!(
                    "q=({w}) {}: lemma={oracle} cross={fast} expected={expected}",
                    shown.join(" ")
                ));
            }
            compared += 1;
        }
    }
    let elapsed = within(start, 120)?;
    Ok(format!(
        "{} weight vectors, {compared} candidate sets, {elapsed:.2?}",
        sweep.len()
    ))
}

fn classical_limit() -> Outcome {
    let mut checked = 0;
    for n in 2..=4usize {
        let w = Weights::from_u64s(&vec![1; n + 1]).unwrap();
        let mut degs = vec![1i64; n];
        loop {
            let divisors: Vec<TorusInvariantDivisor> = degs
                .iter()
                .enumerate()
                .map(|(j, &d)| {
                    // spread the degree over a changing coordinate
                    let mut a = vec![0i64; n + 1];
                    a[j % (n + 1)] = d;
                    TorusInvariantDivisor::from_i64s(&a)
                })
                .collect();
            let expected: i64 = degs.iter().product();
            let value = intersection_number(&w, &divisors).map_err(|e| e.to_string())?;
            if value != rat(expected, 1) {
                return Err(format!("n={n} degrees={degs:?}: got {value}"));
            }
            checked += 1;

            let mut i = 0;
            while i < n {
                degs[i] += 1;
                if degs[i] <= 5 {
                    break;
                }
                degs[i] = 1;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    Ok(format!("{checked} degree tuples"))
}

fn spot_values() -> Outcome {
    let w123 = Weights::from_u64s(&[1, 2, 3]).unwrap();
    let w112 = Weights::from_u64s(&[1, 1, 2]).unwrap();
    let w345 = Weights::from_u64s(&[3, 4, 5]).unwrap();
    let d = TorusInvariantDivisor::from_i64s;
    let checks: Vec<(&str, BigRat, BigRat)> = vec![
        (
            "(1,2,3) D_0^2 closed",
            d0_power_closed_form(&w123),
            rat(1, 6),
        ),
        (
            "(1,2,3) D_0^2 volume",
            d0_power_from_volume(&w123).unwrap(),
            rat(1, 6),
        ),
        (
            "(1,2,3) D_1.D_2",
            intersection_number(&w123, &[d(&[0, 1, 0]), d(&[0, 0, 1])]).unwrap(),
            BigRat::one(),
        ),
        (
            "(1,1,2) two degree-4",
            intersection_number(&w112, &[d(&[0, 0, 2]), d(&[1, 1, 1])]).unwrap(),
            rat(8, 1),
        ),
        (
            "(3,4,5) D_0^2 closed",
            d0_power_closed_form(&w345),
            rat(3, 20),
        ),
        (
            "(3,4,5) D_0^2 volume",
            d0_power_from_volume(&w345).unwrap(),
            rat(3, 20),
        ),
    ];
    for (name, got, want) in &checks {
        if got != want {
            return Err(format!("{name}: got {got}, expected {want}"));
        }
    }
    Ok(format!("{} values", checks.len()))
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name]
        .iter()
        .collect();
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn cli_golden_files() -> Outcome {
    let cases: [(&str, i32, &str); 4] = [
        (
            "intersect --weights 1,1,1,1,1 --degrees 1,2,3,4",
            0,
            "intersect_classical.txt",
        ),
        (
            "intersect --weights 1,2,3 --divisor 0,1,0 --divisor 0,0,1",
            0,
            "intersect_divisors.txt",
        ),
        (
            "intersect --weights 1,2,3 --divisor 0,1,0",
            1,
            "intersect_arity.txt",
        ),
        ("verify --weights 1,2,2", 0, "verify_not_well_formed.txt"),
    ];
    for (args, code, file) in cases {
        let argv: Vec<&str> = args.split_whitespace().collect();
        let (got_code, got) = run_command(&argv);
        let want = golden(file);
        if got_code != code || got != want {
            return Err(format!(
                "`{args}`: exit {got_code}, output {got:?}; expected exit {code}, {want:?}"
            ));
        }
    }
    Ok(format!("{} invocations byte-identical", cases.len()))
}

fn main() {
    let sweep = sampled_sweep();
    let criteria: Vec<Criterion> = vec![
        (
            "1 theorem exact agreement",
            Box::new(|| theorem_agreement(&sweep)),
        ),
        (
            "2 basis cross product equals q",
            Box::new(|| cross_equals_weights(&sweep)),
        ),
        (
            "3 normalized volume closed form",
            Box::new(|| normalized_volume_closed_form(&sweep)),
        ),
        (
            "4 fundamental-domain oracle agreement",
            Box::new(lemma_oracle_agreement),
        ),
        ("5 classical limit", Box::new(classical_limit)),
        ("6 spot values", Box::new(spot_values)),
        ("7 CLI golden files", Box::new(cli_golden_files)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
