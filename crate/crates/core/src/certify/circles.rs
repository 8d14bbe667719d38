use serde_json::{json, Value};

use super::{
    intervals_json, positive_simple_roots, trace_evidence, trace_with_retry, CertifyError, Claim,
    Method, TheoremReport, VerifyOptions,
};
use crate::calculus::{classify_point, hessian_poly, hessian_rational, GraphFunction, PointClass};
use crate::families::{
    build_even_circles, build_odd_circles, radial_even, radial_odd, EvenCircleParams, FamilyError,
    FamilySpec, OddCircleParams, RadialPair,
};
use crate::polycore::{int, Rational, UniPoly};
use crate::realroots::try_rational_roots;
use crate::topology::{auto_bbox, classify_regions_with, nesting_forest, TraceResult};

/// Even circles: the Hessian curve is `2(n - 1)` concentric circles and the
/// unbounded complement region is elliptic.
pub fn verify_theorem2(
    params: &EvenCircleParams,
    opts: &VerifyOptions,
) -> Result<TheoremReport, CertifyError> {
    let spec = FamilySpec::Even(params.clone());
    let mut report = TheoremReport::new("theorem2", spec.clone());
    let n = params.n();
    let expected = 2 * (n - 1);
    report.notes.push("radii are exact rationals".into());
    if n == 1 {
        report
            .notes
            .push("n = 1: s and t are both the constant 1 and the Hessian never vanishes".into());
    }

    let f_poly = build_even_circles(params);
    let f: GraphFunction = f_poly.clone().into();
    let hess = report.time("hessian", || hessian_poly(&f_poly));
    let pair = report.time("identity", || radial_even(params));
    let Some(pair) = identity_claim(&mut report, pair, "Hess f = 4 s t")? else {
        return Ok(report);
    };

    let (sc, ss) = positive_simple_roots(&pair.s_tilde);
    let (tc, ts) = positive_simple_roots(&pair.t_tilde);
    report.push(Claim {
        id: "positive_roots".into(),
        description: "s~ and t~ each have n-1 simple positive roots (the circle radii)".into(),
        expected: json!({"s": n - 1, "t": n - 1}),
        observed: json!({"s": sc, "t": tc}),
        method: Method::Exact,
        pass: sc == n - 1 && tc == n - 1 && ss && ts,
        evidence: profile_evidence(&pair),
    });
    report.push(nonsingular_claim(&pair));

    let bbox = auto_bbox(&spec)?;
    let (trace, tried) = report.time("trace", || {
        trace_with_retry(&hess, &bbox, opts, |t| chain_of(t, expected))
    })?;
    report.push(traced_claim(&trace, &tried, expected, sc + tc));

    let radius = params.radii().last().expect("non-empty radii").clone();
    let far_x = (radius * int(2) + int(5)).ceil();
    let far = report.time("far_field", || {
        far_field_claim(&f, &trace, opts, &far_x, PointClass::Elliptic)
    })?;
    report.push(far);
    Ok(report)
}

/// Odd circles: the Hessian curve is `2n - 1` concentric circles and the
/// unbounded complement region is hyperbolic.
pub fn verify_theorem3(
    params: &OddCircleParams,
    opts: &VerifyOptions,
) -> Result<TheoremReport, CertifyError> {
    let spec = FamilySpec::Odd(*params);
    let mut report = TheoremReport::new("theorem3", spec.clone());
    let n = params.n() as usize;
    let expected = 2 * n - 1;

    let f_rat = build_odd_circles(params);
    let f: GraphFunction = f_rat.clone().into();
    let hess = report.time("hessian", || hessian_rational(&f_rat))?;
    let pair = report.time("identity", || radial_odd(params));
    let Some(pair) = identity_claim(
        &mut report,
        pair,
        &format!("Hess f = 4 s t / (x^2 + y^2 + 1)^{}", 2 * n + 3),
    )?
    else {
        return Ok(report);
    };

    let (sc, ss) = positive_simple_roots(&pair.s_tilde);
    let (tc, ts) = positive_simple_roots(&pair.t_tilde);
    report.push(Claim {
        id: "positive_roots".into(),
        description: "s~ has n-1 and t~ has n simple positive roots (the circle radii)".into(),
        expected: json!({"s": n - 1, "t": n}),
        observed: json!({"s": sc, "t": tc}),
        method: Method::Exact,
        pass: sc == n - 1 && tc == n && ss && ts,
        evidence: profile_evidence(&pair),
    });

    let nn = int((n * n) as i64);
    let t_at = pair.t_tilde.eval(&nn);
    report.push(Claim {
        id: "t_negative_at_n_squared".into(),
        description: "t~(n^2) < 0".into(),
        expected: json!("negative"),
        observed: json!(t_at.to_string()),
        method: Method::Exact,
        pass: t_at < int(0),
        evidence: json!({"t_tilde": pair.t_tilde.to_string(), "at": nn.to_string()}),
    });
    report.push(nonsingular_claim(&pair));

    let bbox = auto_bbox(&spec)?;
    let num = hess.num().clone();
    let (trace, tried) = report.time("trace", || {
        trace_with_retry(&num, &bbox, opts, |t| chain_of(t, expected))
    })?;
    report.push(traced_claim(&trace, &tried, expected, sc + tc));

    let far_x = int(2 * n as i64 + 5);
    let far = report.time("far_field", || {
        far_field_claim(&f, &trace, opts, &far_x, PointClass::Hyperbolic)
    })?;
    report.push(far);
    Ok(report)
}

/// Records the factorization identity; a failed identity ends the report.
fn identity_claim(
    report: &mut TheoremReport,
    pair: Result<RadialPair, FamilyError>,
    statement: &str,
) -> Result<Option<RadialPair>, CertifyError> {
    let (pass, observed, pair) = match pair {
        Ok(p) => (true, json!("holds"), Some(p)),
        Err(FamilyError::IdentityFailed(msg)) => (false, json!(msg), None),
        Err(e) => return Err(e.into()),
    };
    report.push(Claim {
        id: "factorization".into(),
        description: format!("{statement}, compared exactly after clearing denominators"),
        expected: json!("holds"),
        observed,
        method: Method::Exact,
        pass,
        evidence: match &pair {
            Some(p) => json!({"s_tilde": p.s_tilde.to_string(), "t_tilde": p.t_tilde.to_string()}),
            None => Value::Null,
        },
    });
    Ok(pair)
}

fn nonsingular_claim(pair: &RadialPair) -> Claim {
    let g = pair.s_tilde.gcd(&pair.t_tilde);
    let s_sf =
        pair.s_tilde.is_constant() || pair.s_tilde.gcd(&pair.s_tilde.derivative()).is_constant();
    let t_sf =
        pair.t_tilde.is_constant() || pair.t_tilde.gcd(&pair.t_tilde.derivative()).is_constant();
    Claim {
        id: "non_singular".into(),
        description: "gcd(s~, t~) is constant and neither shares a root with its derivative".into(),
        expected: json!({"gcd_constant": true, "s_square_free": true, "t_square_free": true}),
        observed: json!({"gcd_constant": g.is_constant(), "s_square_free": s_sf, "t_square_free": t_sf}),
        method: Method::Exact,
        pass: g.is_constant() && s_sf && t_sf,
        evidence: json!({"gcd": g.to_string()}),
    }
}

fn chain_of(t: &TraceResult, expected: usize) -> bool {
    t.open_components() == 0
        && t.components.len() == expected
        && nesting_forest(&t.components).is_ok_and(|f| f.is_chain())
}

fn traced_claim(trace: &TraceResult, tried: &[usize], expected: usize, sturm: usize) -> Claim {
    let forest = nesting_forest(&trace.components).ok();
    let chain = forest.as_ref().is_some_and(|f| f.is_chain());
    let mut ev = trace_evidence(trace, tried);
    ev["nesting"] = json!(forest);
    ev["sturm_total"] = json!(sturm);
    Claim {
        id: "circles".into(),
        description: "traced Hessian curve has the expected number of closed components, nested as a chain, matching the exact root count".into(),
        expected: json!(expected),
        observed: json!(trace.components.len()),
        method: Method::Traced,
        pass: trace.open_components() == 0
            && trace.components.len() == expected
            && chain
            && sturm == expected,
        evidence: ev,
    }
}

fn far_field_claim(
    f: &GraphFunction,
    trace: &TraceResult,
    opts: &VerifyOptions,
    far_x: &Rational,
    want: PointClass,
) -> Result<Claim, CertifyError> {
    let regions = classify_regions_with(f, trace, opts.samples_per_region, opts.seed, opts.exec)?;
    let far_class = classify_point(f, &(far_x.clone(), int(0)))?;
    let unbounded = regions.unbounded().verdict;
    Ok(Claim {
        id: "far_field".into(),
        description: format!(
            "the unbounded complement region is {}",
            want.to_string().to_lowercase()
        ),
        expected: json!(want),
        observed: json!({"unbounded_region": unbounded, "far_point": far_class}),
        method: Method::Sampled,
        pass: unbounded == Some(want) && far_class == want,
        evidence: json!({
            "far_point": [far_x.to_string(), "0"],
            "regions": regions,
        }),
    })
}

/// Root intervals of `s~`, `t~` in the radius and exact squared radii where
/// they are rational.
fn profile_evidence(pair: &RadialPair) -> Value {
    json!({
        "s_tilde": pair.s_tilde.to_string(),
        "t_tilde": pair.t_tilde.to_string(),
        "s_roots": intervals_json(&pair.s_tilde),
        "t_roots": intervals_json(&pair.t_tilde),
        "s_radius_squared": radius_squares(&pair.s_tilde),
        "t_radius_squared": radius_squares(&pair.t_tilde),
    })
}

fn radius_squares(p: &UniPoly) -> Value {
    let in_u = UniPoly::from_coeffs(p.coeffs().iter().step_by(2).cloned().collect());
    if in_u.is_constant() {
        return json!([]);
    }
    let roots = try_rational_roots(&in_u).expect("nonzero profile");
    json!(roots
        .into_iter()
        .filter(|(iv, _)| iv.hi > int(0))
        .map(|(iv, r)| match r {
            Some(r) => json!(r.to_string()),
            None => json!(iv),
        })
        .collect::<Vec<_>>())
}
