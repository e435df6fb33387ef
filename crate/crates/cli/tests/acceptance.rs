//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run alone with `cargo test -p pseudoquotient-cli --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use pseudoquotient::instances::{
    AffineLattice, AffineLatticeMap, DyadicStepMap, DyadicSteps, LatticePoint, PowerAffine,
    PowerAffineMap, StepFunction, Tower, TowerConfig, TowerMap, TowerPoint,
};
use pseudoquotient::laws::{self, LawReport};
use pseudoquotient::verifier::{presets, CancellationResult, InjectivityResult, OreSearch};
use pseudoquotient::{Calculus, OreAction, Pseudoquotient, RandomSample};

type Outcome = Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

// ---- law suites over every instance ------------------------------------------------

#[derive(Clone, Copy)]
enum Suite {
    Equivalence,
    Lemmas,
    Extension,
    Group,
    Ore,
}

fn suite<A: RandomSample>(name: &str, a: &A, seed: u64, which: Suite) -> Vec<(String, LawReport)> {
    let mut r = rng(seed);
    let reports = match which {
        Suite::Equivalence => laws::equivalence_relation(a, &mut r, 1000),
        Suite::Lemmas => laws::lemmas(a, &mut r, 500),
        Suite::Extension => laws::extension(a, &mut r, 500),
        Suite::Group => laws::group(a, &mut r, 200, 100),
        Suite::Ore => vec![laws::ore_witnesses(a, &mut r, 1000)],
    };
    reports.into_iter().map(|rep| (name.to_string(), rep)).collect()
}

fn every_instance(which: Suite, seed: u64) -> Vec<(String, LawReport)> {
    let mut out = suite("power-affine", &PowerAffine, seed, which);
    for dim in 1..=3 {
        let a = AffineLattice::new(dim).unwrap();
        out.extend(suite(&format!("affine-lattice/{dim}"), &a, seed + dim as u64, which));
    }
    out.extend(suite("dyadic-steps", &DyadicSteps, seed + 7, which));
    out.extend(suite("tower", &Tower::default(), seed + 11, which));
    out
}

fn summarize(reports: &[(String, LawReport)]) -> Outcome {
    let laws: std::collections::BTreeSet<&str> = reports.iter().map(|(_, r)| r.law).collect();
    let trials: usize = reports.iter().map(|(_, r)| r.trials).sum();
    match reports.iter().find(|(_, r)| !r.passed()) {
        None => Ok(format!(
            "{} laws on {} instances, {trials} trials, 0 failures",
            laws.len(),
            reports.len() / laws.len()
        )),
        Some((inst, r)) => Err(format!(
            "{inst}: {} failed {}/{}: {}",
            r.law,
            r.failures,
            r.trials,
            r.first_failure.clone().unwrap_or_default()
        )),
    }
}

fn criterion_1() -> Outcome {
    summarize(&every_instance(Suite::Equivalence, 100))
}

fn criterion_2() -> Outcome {
    summarize(&every_instance(Suite::Lemmas, 200))
}

fn criterion_3() -> Outcome {
    summarize(&every_instance(Suite::Extension, 300))
}

fn criterion_4() -> Outcome {
    summarize(&every_instance(Suite::Group, 400))
}

// ---- affine oracles ----------------------------------------------------------------

type RMatrix = Vec<Vec<BigRational>>;

fn rational(m: &[Vec<BigInt>]) -> RMatrix {
    m.iter()
        .map(|row| row.iter().cloned().map(BigRational::from_integer).collect())
        .collect()
}

/// Gauss-Jordan elimination returning `(M⁻¹, det M)`.
fn invert(m: &RMatrix) -> (RMatrix, BigRational) {
    let n = m.len();
    let mut a: RMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| q(i64::from(i == j))));
            r
        })
        .collect();
    let mut det = q(1);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("invertible");
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for v in a[col].iter_mut() {
            *v = &*v / &p;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &factor * pv;
                }
            }
        }
    }
    (a.into_iter().map(|row| row[n..].to_vec()).collect(), det)
}

fn mat_vec(m: &RMatrix, v: &[BigRational]) -> Vec<BigRational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn affine_solve(f: &AffineLatticeMap, x: &LatticePoint) -> Vec<BigRational> {
    let (inv, _) = invert(&rational(f.matrix()));
    let rhs: Vec<BigRational> = x
        .0
        .iter()
        .zip(f.offset())
        .map(|(a, b)| BigRational::from_integer(a - b))
        .collect();
    mat_vec(&inv, &rhs)
}

/// Integer entries equal to `(m₁m₂M₂⁻¹, m₁m₂M₁⁻¹b₁)` and `(m₁m₂M₁⁻¹, m₁m₂M₂⁻¹b₂)`.
fn affine_witness_matches(a: &AffineLattice, f: &AffineLatticeMap, g: &AffineLatticeMap) -> bool {
    let (inv1, m1) = invert(&rational(f.matrix()));
    let (inv2, m2) = invert(&rational(g.matrix()));
    let k = &m1 * &m2;
    let scale = |m: &RMatrix| -> RMatrix {
        m.iter().map(|row| row.iter().map(|v| v * &k).collect()).collect()
    };
    let b1: Vec<BigRational> = f.offset().iter().cloned().map(BigRational::from_integer).collect();
    let b2: Vec<BigRational> = g.offset().iter().cloned().map(BigRational::from_integer).collect();
    let expected_f = (scale(&inv2), mat_vec(&scale(&inv1), &b1));
    let expected_g = (scale(&inv1), mat_vec(&scale(&inv2), &b2));
    let integral = |m: &RMatrix, v: &[BigRational]| {
        m.iter().flatten().chain(v).all(BigRational::is_integer)
    };
    let w = a.ore_complete(f, g);
    let as_rat = |v: &[BigInt]| v.iter().cloned().map(BigRational::from_integer).collect::<Vec<_>>();
    integral(&expected_f.0, &expected_f.1)
        && integral(&expected_g.0, &expected_g.1)
        && rational(w.f_prime.matrix()) == expected_f.0
        && as_rat(w.f_prime.offset()) == expected_f.1
        && rational(w.g_prime.matrix()) == expected_g.0
        && as_rat(w.g_prime.offset()) == expected_g.1
        && w.validates(a, f, g)
}

fn criterion_5() -> Outcome {
    let reports = every_instance(Suite::Ore, 500);
    let base = summarize(&reports)?;
    let mut checked = 0;
    for dim in 1..=3 {
        let a = AffineLattice::new(dim).unwrap();
        let mut r = rng(550 + dim as u64);
        for _ in 0..1000 {
            let f = a.random_element(&mut r);
            let g = a.random_element(&mut r);
            let bounded = f
                .matrix()
                .iter()
                .chain(g.matrix())
                .flatten()
                .all(|v| v.abs() <= BigInt::from(5));
            if !bounded {
                return Err(format!("sampled entries outside [-5,5]: {f} {g}"));
            }
            if !affine_witness_matches(&a, &f, &g) {
                return Err(format!("affine witness differs from the inverse formulas for {f}, {g}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{base}; {checked} affine witnesses integral and equal to the inverse formulas"))
}

// ---- canonical identification -------------------------------------------------------

fn rpow(x: &BigRational, n: u32) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, _| acc * x)
}

fn power_eval(f: &PowerAffineMap, x: &BigUint) -> BigUint {
    (0..f.exponent()).fold(f.multiplier().clone(), |acc, _| acc * x)
}

fn cross_power(p: &Pseudoquotient<BigUint, PowerAffineMap>, o: &Pseudoquotient<BigUint, PowerAffineMap>) -> bool {
    let rad = |p: &Pseudoquotient<BigUint, PowerAffineMap>| {
        BigRational::new(p.numerator.clone().into(), p.denominator.multiplier().clone().into())
    };
    rpow(&rad(p), o.denominator.exponent()) == rpow(&rad(o), p.denominator.exponent())
}

fn criterion_6() -> Outcome {
    let mut r = rng(600);
    let mut equal = 0;
    let a = PowerAffine;
    let denoting = |r: &mut ChaCha8Rng| {
        let f = a.random_element(r);
        let k = BigUint::from(r.gen_range(1u32..=4));
        Pseudoquotient::new(power_eval(&f, &k), f)
    };
    for _ in 0..1000 {
        let p = if r.gen_bool(0.5) { denoting(&mut r) } else { laws::random_pq(&a, &mut r) };
        let o = match r.gen_range(0..3) {
            0 => laws::related(&a, &mut r, &p),
            1 => denoting(&mut r),
            _ => laws::random_pq(&a, &mut r),
        };
        let oracle = cross_power(&p, &o);
        equal += usize::from(oracle);
        if (a.canonical(&p) == a.canonical(&o)) != oracle || a.pq_equivalent(&p, &o) != oracle {
            return Err(format!("power-affine: {p:?} vs {o:?}, cross-power says {oracle}"));
        }
    }
    let power_equal = equal;
    equal = 0;
    let mut pairs = 0;
    for dim in 1..=3 {
        let a = AffineLattice::new(dim).unwrap();
        let mut r = rng(600 + dim as u64);
        let denoting = |r: &mut ChaCha8Rng, xi: &[BigInt]| {
            let f = a.random_element(r);
            Pseudoquotient::new(LatticePoint(f.eval(xi)), f)
        };
        for _ in 0..1000 {
            let xi: Vec<BigInt> = (0..dim).map(|_| BigInt::from(r.gen_range(-4..=4))).collect();
            let p = if r.gen_bool(0.5) { denoting(&mut r, &xi) } else { laws::random_pq(&a, &mut r) };
            let o = match r.gen_range(0..3) {
                0 => laws::related(&a, &mut r, &p),
                1 => denoting(&mut r, &xi),
                _ => laws::random_pq(&a, &mut r),
            };
            let oracle = affine_solve(&p.denominator, &p.numerator) == affine_solve(&o.denominator, &o.numerator);
            equal += usize::from(oracle);
            pairs += 1;
            if (a.canonical(&p) == a.canonical(&o)) != oracle || a.pq_equivalent(&p, &o) != oracle {
                return Err(format!("affine-lattice/{dim}: {p:?} vs {o:?}, solve says {oracle}"));
            }
            if a.canonical(&p).0 != affine_solve(&p.denominator, &p.numerator) {
                return Err(format!("affine-lattice/{dim}: canonical value of {p:?} is not the solution"));
            }
        }
    }
    Ok(format!(
        "power-affine 1000 pairs ({power_equal} equivalent), affine-lattice {pairs} pairs ({equal} equivalent), canonical equality matches equivalence and both oracles"
    ))
}

// ---- dyadic rewriting --------------------------------------------------------------

/// `τ` prepends a zero cell; `δ` splits each cell in two with half the height.
fn oracle_word(word: &[bool], v: &[BigRational]) -> Vec<BigRational> {
    let mut out = v.to_vec();
    for &is_tau in word.iter().rev() {
        out = if is_tau {
            std::iter::once(q(0)).chain(out).collect()
        } else {
            out.iter()
                .flat_map(|c| {
                    let h = c / q(2);
                    [h.clone(), h]
                })
                .collect()
        };
    }
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn criterion_7() -> Outcome {
    let a = DyadicSteps;
    let mut r = rng(700);
    let letter = |is_tau: bool| if is_tau { DyadicStepMap::TAU } else { DyadicStepMap::DELTA };
    let nf = |w: &[bool]| w.iter().fold(DyadicStepMap::IDENTITY, |acc, &l| a.compose(&acc, &letter(l)));
    if a.compose(&DyadicStepMap::DELTA, &DyadicStepMap::TAU) != nf(&[true, true, false]) {
        return Err("δτ ≠ τ²δ".into());
    }
    let mut applications = 0;
    for _ in 0..500 {
        let mut word = || -> Vec<bool> { (0..r.gen_range(0..=6)).map(|_| r.gen_bool(0.5)).collect() };
        let (w1, w2) = (word(), word());
        let composed = a.compose(&nf(&w1), &nf(&w2));
        let joined: Vec<bool> = w1.iter().chain(&w2).copied().collect();
        for _ in 0..100 {
            let x = a.random_point(&mut r);
            let expected = oracle_word(&joined, x.coefficients());
            if a.apply(&composed, &x).coefficients() != expected.as_slice() {
                return Err(format!("word {joined:?} on {x}: normal form {composed} disagrees"));
            }
            let integral: BigRational = x.coefficients().iter().sum();
            let norm: BigRational = x.coefficients().iter().map(Signed::abs).sum();
            let p = Pseudoquotient::new(x.clone(), composed);
            let image = StepFunction::new(expected);
            let image_integral: BigRational = image.coefficients().iter().sum();
            if a.integral(&p) != integral || a.l1_norm(&p) != norm {
                return Err(format!("integral or norm of {x}/{composed} not invariant"));
            }
            if image_integral != integral {
                return Err(format!("{composed} does not preserve the integral of {x}"));
            }
            applications += 1;
        }
    }
    Ok(format!("500 word pairs x 100 step functions = {applications} applications agree; integral and L1 norm invariant"))
}

// ---- verifier ----------------------------------------------------------------------

fn criterion_8() -> Outcome {
    let preset = presets::dyadic(3).map_err(|e| e.to_string())?;
    let d = preset.word_from_names(&["d"]).map_err(|e| e.to_string())?;
    let t = preset.word_from_names(&["t"]).map_err(|e| e.to_string())?;
    let witness = match preset.search_ore_witness(&d, &t).map_err(|e| e.to_string())? {
        OreSearch::Found { w1, w2, depth, validated: true } if depth <= 3 && w1 == ["d"] && w2 == ["t", "t"] => {
            format!("d.t = t t.d at depth {depth}")
        }
        other => return Err(format!("Ore search for (d, t): {other:?}")),
    };
    let report = presets::dyadic(4)
        .and_then(|p| p.verify())
        .map_err(|e| e.to_string())?;
    if report.injectivity != (InjectivityResult::Pass { depth: 4 })
        || report.cancellation != (CancellationResult::Pass { depth: 4 })
    {
        return Err(format!("dyadic preset at depth 4: {:?} / {:?}", report.injectivity, report.cancellation));
    }
    let fixture = format!("{}/fixtures/cancellation-failure.json", env!("CARGO_MANIFEST_DIR"));
    let out = Command::new(env!("CARGO_BIN_EXE_pq"))
        .args(["verify", "--config", &fixture])
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code();
    let json: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let cancel = &json["cancellation"];
    if code != Some(3) || cancel["status"] != "fail" || cancel["validated"] != true {
        return Err(format!("fixture: exit {code:?}, cancellation {cancel}"));
    }
    Ok(format!(
        "{witness}; injectivity and cancellation pass at depth 4; fixture exits 3 with validated counterexample {} . {} = {} . {}",
        cancel["f1"], cancel["g"], cancel["f2"], cancel["g"]
    ))
}

// ---- tower -------------------------------------------------------------------------

fn criterion_9() -> Outcome {
    let config = TowerConfig::default();
    config.validate().map_err(|e| e.to_string())?;
    let t = Tower::new(config.clone()).map_err(|e| e.to_string())?;
    let mut r = rng(900);
    // ψₙ(x) = 2x − n, φₙ(x) = x + 1
    let psi = |n: u32, x: &BigInt| BigInt::from(2) * x - n;
    let phi = |x: &BigInt| x + 1;
    for level in 1..=6u32 {
        let payloads: Vec<BigInt> = (0..50).map(|_| BigInt::from(r.gen_range(-1000i64..=1000))).collect();
        config
            .check_commuting_squares([level], &payloads)
            .map_err(|(l, x)| format!("square fails at level {l}, payload {x}"))?;
        for x in &payloads {
            if phi(&psi(level, x)) != psi(level + 1, &phi(x)) {
                return Err(format!("oracle square fails at level {level}, payload {x}"));
            }
            let point = TowerPoint::new(x.clone(), level).unwrap();
            if t.phi(&t.psi(level, &point)) != t.psi(level + 1, &t.phi(&point)) {
                return Err(format!("instance square fails at level {level}, payload {x}"));
            }
        }
    }
    let eval = |f: &TowerMap, x: &TowerPoint| -> TowerPoint {
        let (mut payload, mut level) = (x.payload.clone(), x.level);
        for _ in 0..f.phi_exponent() {
            payload = phi(&payload);
            level += 1;
        }
        for _ in 0..f.psi_exponents().get(&level).copied().unwrap_or(0) {
            payload = psi(level, &payload);
        }
        TowerPoint::new(payload, level).unwrap()
    };
    for _ in 0..500 {
        let f = t.random_element(&mut r);
        let g = t.random_element(&mut r);
        let x = t.random_point(&mut r);
        let fg = t.compose(&f, &g);
        let pointwise = eval(&f, &eval(&g, &x));
        if t.apply(&fg, &x) != pointwise || eval(&fg, &x) != pointwise {
            return Err(format!("({f})∘({g}) = {fg} disagrees at {x}"));
        }
    }
    Ok("squares commute at levels 1..6 on 50 points each; 500 normal-form compositions match pointwise".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("equivalence relation", criterion_1),
        ("lemmas", criterion_2),
        ("extension and bijectivity", criterion_3),
        ("group of fractions", criterion_4),
        ("Ore witnesses", criterion_5),
        ("canonical identification", criterion_6),
        ("dyadic rewriting", criterion_7),
        ("verifier", criterion_8),
        ("tower", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = run();
        let secs = t0.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of 9 criteria passed in {:.1}s",
        9 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
