//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the test
//! harness so the lines land in the build log; exits nonzero on any failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{affine_map, biv_poly, rational_point, small_rational, uni_poly};
use hesslab::calculus::{
    asymptotic_directions, classify_point, hessian_poly, AsymptoticDirections, GraphFunction,
    PointClass,
};
use hesslab::certify::{
    verify_affine_invariance, verify_theorem1, verify_theorem2, verify_theorem3, TheoremReport,
    VerifyOptions,
};
use hesslab::families::{
    build_outer_oval, check_good_position, radial_even, radial_odd, EvenCircleParams, FamilySpec,
    GoodPosition, Line, OddCircleParams, OuterOvalParams,
};
use hesslab::polycore::{int, parse_poly, ratio, Rational, UniPoly};
use hesslab::realroots::{isolate_roots, sturm_count, Bound};
use hesslab::topology::{auto_bbox, nesting_forest, trace_curve, NestingForest};
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use serde_json::Value;

const T1_LIMIT: Duration = Duration::from_secs(30);
const T2_LIMIT: Duration = Duration::from_secs(10);
const T3_LIMIT: Duration = Duration::from_secs(20);
const AFFINE_LIMIT: Duration = Duration::from_secs(5);
const PROPERTY_LIMIT: Duration = Duration::from_secs(60);
const AFFINE_PAIRS: u32 = 100;
const BASE_RESOLUTION: usize = 128;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn observed(r: &TheoremReport, id: &str) -> Value {
    r.claim(id)
        .map(|c| c.observed.clone())
        .unwrap_or(Value::Null)
}

/// Component count and nesting of the Hessian curve traced at `res`.
fn topology_at(spec: &FamilySpec, res: usize) -> Result<(usize, Option<NestingForest>), String> {
    let hess = spec.function().hessian_numerator();
    let bbox = auto_bbox(spec).map_err(|e| e.to_string())?;
    let t = trace_curve(&hess, &bbox, res, 6).map_err(|e| e.to_string())?;
    Ok((t.components.len(), nesting_forest(&t.components).ok()))
}

fn resolution_stable(spec: &FamilySpec) -> Result<(), String> {
    let lo = topology_at(spec, BASE_RESOLUTION)?;
    let hi = topology_at(spec, 2 * BASE_RESOLUTION)?;
    ensure(lo == hi, || {
        format!(
            "resolution {BASE_RESOLUTION} gives {} components, {} gives {}",
            lo.0,
            2 * BASE_RESOLUTION,
            hi.0
        )
    })
}

fn within(limit: Duration, elapsed: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("{what} took {elapsed:.2?}, limit {limit:?}")
    })
}

fn outer(al: &[i64], bl: &[i64]) -> OuterOvalParams {
    OuterOvalParams::new(
        int(1),
        int(-1),
        al.iter().map(|&v| int(v)).collect(),
        bl.iter().map(|&v| int(v)).collect(),
    )
    .expect("ordered parameters")
}

fn theorem1_instances() -> Vec<OuterOvalParams> {
    vec![
        outer(&[], &[]),
        // g' has rational roots on both slanted lines
        outer(&[-3], &[5]),
        outer(&[-1, -2], &[1]),
        outer(&[-1, -2], &[1, 2]),
        outer(&[-1, -2, -3], &[1, 2, 3]),
    ]
}

fn criterion_1() -> Check {
    let mut lines = Vec::new();
    for p in theorem1_instances() {
        let k = (p.m() + p.n()) as u64;
        let start = Instant::now();
        let r = verify_theorem1(&p, &VerifyOptions::default()).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        let tag = format!("(m,n)=({},{})", p.m(), p.n());
        ensure(r.overall, || {
            format!("{tag}: report failed\n{}", r.summary())
        })?;
        let comps = observed(&r, "outer_ovals")["components"].as_u64();
        let alpha = observed(&r, "alpha_simple_roots").as_u64();
        let special = observed(&r, "special_point_total").as_u64();
        ensure(comps == Some(k), || {
            format!("{tag}: {comps:?} ovals, expected {k}")
        })?;
        ensure(alpha == Some(2 * k), || {
            format!("{tag}: {alpha:?} alpha roots, expected {}", 2 * k)
        })?;
        ensure(special == Some(3 * k), || {
            format!("{tag}: {special:?} special points, expected {}", 3 * k)
        })?;
        resolution_stable(&FamilySpec::Outer(p.clone())).map_err(|e| format!("{tag}: {e}"))?;
        within(T1_LIMIT, elapsed, &tag)?;
        lines.push(format!("{tag} {k} ovals {elapsed:.1?}"));
    }
    Ok(lines.join("; "))
}

fn criterion_2() -> Check {
    let mut lines = Vec::new();
    for n in 1..=5i64 {
        let p = EvenCircleParams::new((1..=n).map(int).collect()).expect("increasing radii");
        let expected = 2 * (n as usize - 1);
        let start = Instant::now();
        let r = verify_theorem2(&p, &VerifyOptions::default()).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure(r.overall, || {
            format!("n={n}: report failed\n{}", r.summary())
        })?;
        // exact count from Sturm sequences, independent of the report
        let pair = radial_even(&p).map_err(|e| e.to_string())?;
        let sturm: usize = [&pair.s_tilde, &pair.t_tilde]
            .iter()
            .map(|q| {
                if q.is_constant() {
                    0
                } else {
                    sturm_count(q, Bound::At(int(0)), Bound::PosInf).unwrap()
                }
            })
            .sum();
        ensure(sturm == expected, || {
            format!("n={n}: Sturm count {sturm}, expected {expected}")
        })?;
        let spec = FamilySpec::Even(p.clone());
        let (c128, _) = topology_at(&spec, BASE_RESOLUTION)?;
        ensure(c128 == expected, || {
            format!("n={n}: traced {c128}, expected {expected}")
        })?;
        resolution_stable(&spec).map_err(|e| format!("n={n}: {e}"))?;
        ensure(observed(&r, "factorization") == "holds", || {
            format!("n={n}: identity")
        })?;
        let far = classify_point(&spec.function(), &(int(2 * n + 5), int(0)))
            .map_err(|e| e.to_string())?;
        ensure(far == PointClass::Elliptic, || {
            format!("n={n}: ({}, 0) is {far}", 2 * n + 5)
        })?;
        within(T2_LIMIT, elapsed, &format!("n={n}"))?;
        lines.push(format!("n={n} {expected} circles {elapsed:.1?}"));
    }
    Ok(lines.join("; "))
}

fn criterion_3() -> Check {
    let mut lines = Vec::new();
    for n in 1..=4u32 {
        let p = OddCircleParams::new(n).expect("n >= 1");
        let nn = n as usize;
        let start = Instant::now();
        let r = verify_theorem3(&p, &VerifyOptions::default()).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure(r.overall, || {
            format!("n={n}: report failed\n{}", r.summary())
        })?;
        let pair = radial_odd(&p).map_err(|e| e.to_string())?;
        let positive = |q: &UniPoly| {
            if q.is_constant() {
                0
            } else {
                sturm_count(q, Bound::At(int(0)), Bound::PosInf).unwrap()
            }
        };
        let (s, t) = (positive(&pair.s_tilde), positive(&pair.t_tilde));
        ensure(s == nn - 1 && t == nn, || {
            format!("n={n}: positive roots s={s} t={t}")
        })?;
        let square_free = |q: &UniPoly| q.is_constant() || q.gcd(&q.derivative()).is_constant();
        ensure(
            square_free(&pair.s_tilde) && square_free(&pair.t_tilde),
            || format!("n={n}: repeated root"),
        )?;
        let at = pair.t_tilde.eval(&int(i64::from(n * n)));
        ensure(at < int(0), || format!("n={n}: t~(n^2) = {at}"))?;
        let spec = FamilySpec::Odd(p);
        let (count, forest) = topology_at(&spec, BASE_RESOLUTION)?;
        ensure(count == 2 * nn - 1, || format!("n={n}: traced {count}"))?;
        ensure(forest.is_some_and(|f| f.is_chain()), || {
            format!("n={n}: not a chain")
        })?;
        resolution_stable(&spec).map_err(|e| format!("n={n}: {e}"))?;
        let far = classify_point(&spec.function(), &(int(2 * i64::from(n) + 5), int(0)))
            .map_err(|e| e.to_string())?;
        ensure(far == PointClass::Hyperbolic, || {
            format!("n={n}: far field is {far}")
        })?;
        within(T3_LIMIT, elapsed, &format!("n={n}"))?;
        lines.push(format!("n={n} {} circles {elapsed:.1?}", 2 * nn - 1));
    }
    Ok(lines.join("; "))
}

fn runner(seed: u8, cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]),
    )
}

fn property<S: Strategy>(
    name: &str,
    seed: u8,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(seed, cases)
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn criterion_4() -> Check {
    let start = Instant::now();
    property(
        "affine invariance",
        4,
        AFFINE_PAIRS,
        (biv_poly(6, 8), affine_map()),
        |(f, t)| {
            if verify_affine_invariance(&f, &t) {
                Ok(())
            } else {
                Err(TestCaseError::fail(format!("fails for {f}")))
            }
        },
    )?;
    let elapsed = start.elapsed();
    within(AFFINE_LIMIT, elapsed, "affine pairs")?;
    Ok(format!("{AFFINE_PAIRS} pairs, exact, {elapsed:.2?}"))
}

/// `lo^2 < r2 <= hi^2` for a nonnegative interval, and exactly one root inside.
fn interval_holds_sqrt(p: &UniPoly, r2: &Rational) -> Result<(), String> {
    let ivs = isolate_roots(p).map_err(|e| e.to_string())?;
    let iv = ivs
        .iter()
        .find(|iv| iv.lo >= int(0) && &(&iv.lo * &iv.lo) < r2 && r2 <= &(&iv.hi * &iv.hi))
        .ok_or_else(|| format!("no interval of {p} contains sqrt({r2})"))?;
    let count =
        sturm_count(p, iv.lo.clone().into(), iv.hi.clone().into()).map_err(|e| e.to_string())?;
    ensure(count == 1, || {
        format!("interval of {p} holds {count} roots")
    })?;
    // r2 is a root of p in the variable x^2
    let in_u = UniPoly::from_coeffs(p.coeffs().iter().step_by(2).cloned().collect());
    ensure(in_u.eval(r2) == int(0), || {
        format!("{r2} is not a squared root of {p}")
    })
}

fn criterion_5() -> Check {
    let even = radial_even(&EvenCircleParams::new(vec![int(1), int(2)]).unwrap())
        .map_err(|e| e.to_string())?;
    interval_holds_sqrt(&even.s_tilde, &ratio(5, 2))?;
    interval_holds_sqrt(&even.t_tilde, &ratio(5, 6))?;
    let odd = radial_odd(&OddCircleParams::new(1).unwrap()).map_err(|e| e.to_string())?;
    interval_holds_sqrt(&odd.t_tilde, &ratio(1, 3))?;
    ensure(odd.s_tilde.is_constant(), || {
        "odd n=1: s~ is not constant".into()
    })?;
    Ok("radii^2 5/2, 5/6 (even 1,2); 1/3 (odd n=1)".into())
}

fn criterion_6() -> Check {
    let p = OuterOvalParams::new(int(1), int(-1), vec![int(-2), int(-3)], vec![])
        .map_err(|e| e.to_string())?;
    let GoodPosition::Bad(w) = check_good_position(&p) else {
        return Err("reported good position".into());
    };
    let point = w.point.clone().ok_or("witness point is irrational")?;
    ensure(point == (int(-2), int(0)), || format!("witness {point:?}"))?;
    ensure(w.line == Line::Vertical { at: int(-2) }, || {
        format!("witness line {}", w.line)
    })?;
    // product of the other lines, y^2 - x^2 times x + 3
    let others = parse_poly("(y - x)*(y + x)*(x + 3)").unwrap();
    let f = build_outer_oval(&p);
    ensure(f == &others * &parse_poly("x + 2").unwrap(), || {
        "unexpected arrangement".into()
    })?;
    let (gx, gy) = (
        others.dx().evaluate(&point.0, &point.1),
        others.dy().evaluate(&point.0, &point.1),
    );
    ensure(gx == int(0) && gy == int(0), || {
        format!("gradient ({gx}, {gy})")
    })?;
    Ok("witness (-2, 0) on x = -2, gradient of the other lines vanishes exactly".into())
}

fn criterion_7() -> Check {
    let start = Instant::now();
    // polycore: at least 20 cases each
    property("display round trip", 71, 32, biv_poly(6, 8), |p| {
        let back = parse_poly(&p.to_string()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        if back == p {
            Ok(())
        } else {
            Err(TestCaseError::fail(p.to_string()))
        }
    })?;
    property(
        "evaluation homomorphism",
        72,
        32,
        (biv_poly(4, 6), biv_poly(4, 6), rational_point()),
        |(p, q, (x, y))| {
            let sum = (&p + &q).evaluate(&x, &y) == p.evaluate(&x, &y) + q.evaluate(&x, &y);
            let prod = (&p * &q).evaluate(&x, &y) == p.evaluate(&x, &y) * q.evaluate(&x, &y);
            if sum && prod {
                Ok(())
            } else {
                Err(TestCaseError::fail("homomorphism"))
            }
        },
    )?;
    // realroots: 50 random polynomials
    property("isolate vs sturm", 73, 50, uni_poly(8), |p| {
        if p.is_constant() {
            return Ok(());
        }
        let ivs = isolate_roots(&p).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let total = sturm_count(&p, Bound::NegInf, Bound::PosInf).unwrap();
        let each = ivs
            .iter()
            .all(|iv| sturm_count(&p, iv.lo.clone().into(), iv.hi.clone().into()).unwrap() == 1);
        if ivs.len() == total && each {
            Ok(())
        } else {
            Err(TestCaseError::fail(p.to_string()))
        }
    })?;
    // calculus: 100 random points
    property(
        "classification vs directions",
        74,
        100,
        (biv_poly(5, 7), small_rational(), small_rational()),
        |(f, x, y)| {
            let h = hessian_poly(&f).evaluate(&x, &y);
            let g: GraphFunction = f.into();
            let p = (x, y);
            let class = classify_point(&g, &p).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let dirs =
                asymptotic_directions(&g, &p).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let ok = match class {
                PointClass::Elliptic => h > int(0) && matches!(dirs, AsymptoticDirections::None),
                PointClass::Hyperbolic => {
                    h < int(0) && matches!(dirs, AsymptoticDirections::Two(..))
                }
                PointClass::Parabolic => {
                    h == int(0)
                        && matches!(
                            dirs,
                            AsymptoticDirections::One(_) | AsymptoticDirections::All
                        )
                }
            };
            if ok {
                Ok(())
            } else {
                Err(TestCaseError::fail(format!("{class} with Hess {h}")))
            }
        },
    )?;
    let elapsed = start.elapsed();
    within(PROPERTY_LIMIT, elapsed, "property suites")?;
    Ok(format!(
        "polycore 2x32, realroots 50, calculus 100 cases, {elapsed:.2?}"
    ))
}

fn criterion_8() -> Check {
    // the instances above are the stated desk-scale ranges, run unscaled
    let t1 = theorem1_instances();
    ensure(t1.iter().all(|p| p.m() + p.n() <= 6), || {
        "Theorem 1 instance out of range".into()
    })?;
    let sizes: Vec<(usize, usize)> = t1.iter().map(|p| (p.m(), p.n())).collect();
    ensure(sizes == [(0, 0), (1, 1), (2, 1), (2, 2), (3, 3)], || {
        format!("instances {sizes:?}")
    })?;
    let r = verify_theorem1(&t1[4], &VerifyOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.notes.iter().any(|n| n.contains("rational")), || {
        "rational restriction not declared".into()
    })?;
    let r = verify_theorem2(
        &EvenCircleParams::new((1..=5).map(int).collect()).unwrap(),
        &VerifyOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    ensure(r.notes.iter().any(|n| n.contains("rational")), || {
        "rational restriction not declared".into()
    })?;
    // every construction is an explicit low-degree polynomial or quotient
    let degrees: Vec<u32> = [
        FamilySpec::Outer(t1[4].clone()).function(),
        FamilySpec::Even(EvenCircleParams::new((1..=5).map(int).collect()).unwrap()).function(),
        FamilySpec::Odd(OddCircleParams::new(4).unwrap()).function(),
    ]
    .iter()
    .map(|f| f.degree())
    .collect();
    ensure(degrees.iter().all(|&d| d <= 10), || {
        format!("degrees {degrees:?}")
    })?;
    Ok(format!(
        "full-scale instances, rational parameters declared, degrees {degrees:?}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("Theorem 1 outer ovals", criterion_1),
        ("Theorem 2 even circles", criterion_2),
        ("Theorem 3 odd circles", criterion_3),
        ("affine invariance", criterion_4),
        ("derived spot values", criterion_5),
        ("good-position counterexample", criterion_6),
        ("property suites", criterion_7),
        ("desk-scale reproducibility", criterion_8),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!(
                "PASS  criterion {} {title} ({elapsed:.1?}): {detail}",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {} {title} ({elapsed:.1?}): {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
