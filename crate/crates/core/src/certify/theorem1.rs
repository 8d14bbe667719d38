use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{
    trace_evidence, trace_with_retry, CertifyError, Claim, Method, TheoremReport, VerifyOptions,
};
use crate::calculus::hessian_poly;
use crate::calculus::{
    asymptotic_directions, certify_special_at_root, certify_special_parabolic, classify_point,
    contact_order, AsymptoticDirections, ContactOrder, Direction, GraphFunction, PointClass,
    SpecialPointCertificate,
};
use crate::families::{
    build_outer_oval, check_good_position, shifted_alpha_beta, FamilySpec, GoodPosition, Line,
    OuterOvalParams,
};
use crate::polycore::{int, ratio, BivPoly, Rational};
use crate::realroots::{exact_root, isolate_roots};
use crate::topology::{auto_bbox, classify_regions_with, nesting_forest, Rect};

/// Outer ovals: the Hessian curve consists of `m + n` outer ovals and the
/// graph has `3(m + n)` special parabolic points.
pub fn verify_theorem1(
    params: &OuterOvalParams,
    opts: &VerifyOptions,
) -> Result<TheoremReport, CertifyError> {
    if let GoodPosition::Bad(w) = check_good_position(params) {
        return Err(CertifyError::NotGoodPosition(w));
    }
    let spec = FamilySpec::Outer(params.clone());
    let mut report = TheoremReport::new("theorem1", spec.clone());
    let k = params.m() + params.n();
    report.notes.push(format!(
        "arrangement of m + n + 2 = {} lines; parameters are exact rationals",
        k + 2
    ));
    if params.m() == 0 || params.n() == 0 {
        report
            .notes
            .push("m = 0 or n = 0: products over an empty index set are taken as 1".into());
    }
    if k == 0 {
        report.notes.push(
            "m = n = 0: f is a quadratic saddle whose graph is ruled, so asymptotic lines have infinite contact everywhere".into(),
        );
    }

    let f_poly = build_outer_oval(params);
    let f: GraphFunction = f_poly.clone().into();
    let hess = report.time("hessian", || hessian_poly(&f_poly));

    // (1) alpha has 2(m + n) simple real roots
    let ab = report.time("alpha_beta", || shifted_alpha_beta(params))?;
    let alpha_roots = if ab.alpha.is_constant() {
        Vec::new()
    } else {
        isolate_roots(&ab.alpha).expect("alpha is nonzero")
    };
    let simple = alpha_roots.iter().all(|iv| iv.multiplicity_one);
    report.push(Claim {
        id: "alpha_simple_roots".into(),
        description: "Hess f(x, u + (a+b)x/2) = beta(x) u^2 + alpha(x), alpha has 2(m+n) simple real roots (vertical tangencies)".into(),
        expected: json!(2 * k),
        observed: json!(alpha_roots.len()),
        method: Method::Exact,
        pass: alpha_roots.len() == 2 * k && simple,
        evidence: json!({
            "alpha": ab.alpha.to_string(),
            "beta": ab.beta.to_string(),
            "roots": alpha_roots,
            "all_simple": simple,
        }),
    });

    // (2) traced topology
    let bbox = auto_bbox(&spec)?;
    let (trace, tried) = report.time("trace", || {
        trace_with_retry(&hess, &bbox, opts, |t| {
            t.open_components() == 0
                && t.components.len() == k
                && nesting_forest(&t.components).is_ok_and(|f| f.is_edgeless())
        })
    })?;
    let forest = nesting_forest(&trace.components).ok();
    let edgeless = forest.as_ref().is_some_and(|f| f.is_edgeless());
    let tangents: usize = trace
        .components
        .iter()
        .map(|c| c.vertical_tangent_count)
        .sum();
    let mut ev = trace_evidence(&trace, &tried);
    ev["nesting"] = json!(forest);
    ev["vertical_tangents_total"] = json!(tangents);
    ev["vertical_tangents_match_alpha"] = json!(tangents == alpha_roots.len());
    report.push(Claim {
        id: "outer_ovals".into(),
        description: "traced Hessian curve has m+n closed components, none inside another".into(),
        expected: json!({"components": k, "nesting_edges": 0}),
        observed: json!({
            "components": trace.components.len(),
            "nesting_edges": forest.as_ref().map(|f| f.edge_count()),
        }),
        method: Method::Traced,
        pass: trace.open_components() == 0 && trace.components.len() == k && edgeless,
        evidence: ev,
    });

    // (3) special points on the vertical lines
    let c = params.mid_slope();
    let mut vertical_ok = 0usize;
    let mut vertical_ev = Vec::new();
    let mut all_vertical = true;
    report.time("vertical_points", || -> Result<(), CertifyError> {
        for v in params.verticals() {
            let line = Line::Vertical { at: v.clone() };
            let (r, cert) = vertical_point(&f, &hess, &line, &(&c * &v))?;
            let ok = r.is_ok() && cert.as_ref().is_some_and(|c| c.verdict);
            vertical_ok += usize::from(ok);
            all_vertical &= ok;
            vertical_ev.push(json!({
                "line": line,
                "restriction": r.as_ref().map_or_else(|e| e.clone(), |s| s.clone()),
                "certificate": cert,
            }));
        }
        Ok(())
    })?;
    report.push(Claim {
        id: "vertical_line_points".into(),
        description:
            "on each vertical line Hess f vanishes only at (v, (a+b)v/2), a special parabolic point"
                .into(),
        expected: json!(k),
        observed: json!(vertical_ok),
        method: Method::Exact,
        pass: all_vertical && vertical_ok == k,
        evidence: json!(vertical_ev),
    });

    // (4) special points on y = a x and y = b x
    let mut slanted_ev = Vec::new();
    let mut slanted_pass = true;
    let mut slanted_points: Vec<(Line, Option<Rational>, bool)> = Vec::new();
    let mut counts = Vec::new();
    report.time("slanted_points", || -> Result<(), CertifyError> {
        for slope in [params.a(), params.b()] {
            let line = Line::Through0 {
                slope: slope.clone(),
            };
            let ((bx, by), (dx, dy)) = line.parametrization();
            let r = hess.restrict_to_line((&bx, &by), (&dx, &dy))?;
            // the restriction is a constant times the square of g', g = f / (y - a x) on the line
            let (q, square_form) = if r.is_constant() {
                (r.clone(), true)
            } else {
                let q = r.square_free();
                let (quot, rem) = r.div_rem(&(&q * &q));
                (q, rem.is_zero() && quot.is_constant())
            };
            let roots = if q.is_constant() {
                Vec::new()
            } else {
                isolate_roots(&q).expect("nonzero restriction")
            };
            let simple = roots.iter().all(|iv| iv.multiplicity_one);
            let mut certs = Vec::new();
            for iv in &roots {
                let exact = exact_root(&q, iv, 6);
                let cert = match &exact {
                    Some(t) => certify_special_parabolic(&f, &line.point_at(t)),
                    None => certify_special_at_root(
                        &f,
                        &(bx.clone(), by.clone()),
                        &(dx.clone(), dy.clone()),
                        &q,
                        iv,
                    ),
                };
                let ok = cert.as_ref().is_ok_and(|c| c.verdict);
                slanted_pass &= ok;
                slanted_points.push((line.clone(), exact.clone(), ok));
                certs.push(match cert {
                    Ok(c) => json!(c),
                    Err(e) => json!({"error": e.to_string()}),
                });
            }
            slanted_pass &= square_form && simple && roots.len() == k;
            counts.push(roots.len());
            slanted_ev.push(json!({
                "line": line,
                "restriction": r.to_string(),
                "square_root_factor": q.to_string(),
                "restriction_is_constant_times_square": square_form,
                "roots": roots,
                "certificates": certs,
            }));
        }
        Ok(())
    })?;
    report.push(Claim {
        id: "slanted_line_points".into(),
        description: "Hess f restricted to y = ax and to y = bx is c (g')^2 with g' having m+n simple real roots, all special parabolic points".into(),
        expected: json!([k, k]),
        observed: json!(counts),
        method: Method::Exact,
        pass: slanted_pass,
        evidence: json!(slanted_ev),
    });

    // (5) total, with the origin counted once if both slanted lines hit it
    let origin_hits = slanted_points
        .iter()
        .filter(|(_, t, ok)| *ok && t.as_ref().is_some_and(|t| *t == int(0)))
        .count();
    let slanted_ok = slanted_points.iter().filter(|p| p.2).count();
    let total = vertical_ok + slanted_ok - origin_hits.saturating_sub(1);
    report.push(Claim {
        id: "special_point_total".into(),
        description: "the graph has 3(m+n) special parabolic points".into(),
        expected: json!(3 * k),
        observed: json!(total),
        method: Method::Exact,
        pass: total == 3 * k,
        evidence: json!({"vertical": vertical_ok, "slanted": slanted_ok, "shared_origin": origin_hits > 1}),
    });

    // (6) the inflexion curve is {f = 0}
    let inflexion = report.time("inflexion", || {
        inflexion_spot_check(params, &f, &bbox, opts.seed)
    })?;
    report.push(inflexion);

    // (7) far field in W is hyperbolic
    let far = report.time("far_field", || -> Result<Claim, CertifyError> {
        let regions = classify_regions_with(&f, &trace, opts.samples_per_region, opts.seed, opts.exec)?;
        let w_points = w_samples(params, &bbox, opts.seed, 20);
        let mut classes = Vec::new();
        for p in &w_points {
            classes.push(classify_point(&f, p)?);
        }
        let w_ok = classes.iter().all(|c| *c == PointClass::Hyperbolic);
        let unbounded = regions.unbounded().verdict;
        Ok(Claim {
            id: "far_field_hyperbolic".into(),
            description: "points of W (outside the compact polygons) and the unbounded complement region are hyperbolic".into(),
            expected: json!("Hyperbolic"),
            observed: json!({"w_samples_all_hyperbolic": w_ok, "unbounded_region": unbounded}),
            method: Method::Sampled,
            pass: w_ok && unbounded == Some(PointClass::Hyperbolic),
            evidence: json!({
                "w_samples": w_points.iter().zip(&classes).map(|((x, y), c)| json!({"x": x.to_string(), "y": y.to_string(), "class": c})).collect::<Vec<_>>(),
                "regions": regions,
            }),
        })
    })?;
    report.push(far);
    Ok(report)
}

/// Restriction of the Hessian to a vertical line must have the single root
/// `(a+b)v/2`; returns the restriction (or why it fails) and the certificate.
#[allow(clippy::type_complexity)]
fn vertical_point(
    f: &GraphFunction,
    hess: &BivPoly,
    line: &Line,
    expected_y: &Rational,
) -> Result<(Result<String, String>, Option<SpecialPointCertificate>), CertifyError> {
    let ((bx, by), (dx, dy)) = line.parametrization();
    let r = hess.restrict_to_line((&bx, &by), (&dx, &dy))?;
    if r.is_zero() {
        return Ok((Err("Hess f vanishes on the whole line".into()), None));
    }
    let roots = if r.is_constant() {
        Vec::new()
    } else {
        isolate_roots(&r).expect("nonzero restriction")
    };
    let single = roots.len() == 1 && roots[0].contains(expected_y) && r.eval(expected_y) == int(0);
    let desc = format!("{r}; distinct real roots: {}", roots.len());
    let point = line.point_at(expected_y);
    let cert = certify_special_parabolic(f, &point).ok();
    Ok((if single { Ok(desc) } else { Err(desc) }, cert))
}

fn random_rational(rng: &mut ChaCha8Rng, lo: &Rational, hi: &Rational, steps: i64) -> Rational {
    let k = rng.gen_range(1..steps);
    lo + (hi - lo) * ratio(k, steps)
}

/// Seeded rational points of `W`: outside every compact polygon of the
/// arrangement, inside the box scaled by 3.
fn w_samples(
    params: &OuterOvalParams,
    bbox: &Rect,
    seed: u64,
    count: usize,
) -> Vec<(Rational, Rational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x57);
    let lo = params.a_list().last().cloned().unwrap_or_else(|| int(0));
    let hi = params.b_list().last().cloned().unwrap_or_else(|| int(0));
    let (a, b) = (params.a(), params.b());
    let big = Rect {
        x0: &bbox.x0 * int(3),
        y0: &bbox.y0 * int(3),
        x1: &bbox.x1 * int(3),
        y1: &bbox.y1 * int(3),
    };
    let mut out = Vec::new();
    let arrangement = build_outer_oval(params);
    while out.len() < count {
        let x = random_rational(&mut rng, &big.x0, &big.x1, 1 << 10);
        let y = random_rational(&mut rng, &big.y0, &big.y1, 1 << 10);
        let (ya, yb) = (a * &x, b * &x);
        let between = (ya.clone().min(yb.clone()) <= y) && (y <= ya.max(yb));
        let in_polygon = lo < x && x < hi && between;
        if in_polygon || arrangement.evaluate(&x, &y) == int(0) {
            continue;
        }
        out.push((x, y));
    }
    out
}

fn inflexion_spot_check(
    params: &OuterOvalParams,
    f: &GraphFunction,
    bbox: &Rect,
    seed: u64,
) -> Result<Claim, CertifyError> {
    let GraphFunction::Poly(fp) = f else {
        unreachable!("outer-oval functions are polynomials")
    };
    // a quadratic graph is ruled; otherwise asymptotic contact is exactly 3 off {f = 0}
    let generic = if fp.degree().unwrap_or(0) <= 2 {
        ContactOrder::Infinite
    } else {
        ContactOrder::Finite(3)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1f);
    let mut off_line = Vec::new();
    let mut off_ok = true;
    let mut attempts = 0;
    while off_line.len() < 20 && attempts < 5000 {
        attempts += 1;
        let x = random_rational(&mut rng, &bbox.x0, &bbox.x1, 64);
        let y = random_rational(&mut rng, &bbox.y0, &bbox.y1, 64);
        let p = (x, y);
        if fp.evaluate(&p.0, &p.1) == int(0) || classify_point(f, &p)? != PointClass::Hyperbolic {
            continue;
        }
        let dirs = asymptotic_directions(f, &p)?;
        let orders: Vec<ContactOrder> = dirs
            .directions()
            .iter()
            .map(|d| contact_order(f, &p, d, None))
            .collect::<Result<_, _>>()?;
        let ok = orders.len() == 2 && orders.iter().all(|o| *o == generic);
        off_ok &= ok;
        off_line
            .push(json!({"x": p.0.to_string(), "y": p.1.to_string(), "contact_orders": orders}));
    }
    off_ok &= off_line.len() == 20;

    let mut on_line = Vec::new();
    let mut on_ok = true;
    for line in params.lines() {
        for _ in 0..2 {
            let t = random_rational(&mut rng, &int(-3), &int(3), 97);
            let p = line.point_at(&t);
            let (_, (dx, dy)) = line.parametrization();
            let dir = Direction::rational(dx, dy)?;
            let dirs = asymptotic_directions(f, &p)?;
            let asymptotic =
                matches!(dirs, AsymptoticDirections::All) || dirs.directions().contains(&dir);
            let order = contact_order(f, &p, &dir, None)?;
            let ok = asymptotic && order == ContactOrder::Infinite;
            on_ok &= ok;
            on_line.push(json!({
                "line": line,
                "x": p.0.to_string(),
                "y": p.1.to_string(),
                "line_direction_asymptotic": asymptotic,
                "contact_order": order,
            }));
        }
    }
    Ok(Claim {
        id: "inflexion_curve".into(),
        description: "off {f = 0} hyperbolic points have both asymptotic contact orders exactly 3; on the lines the line direction has infinite contact".into(),
        expected: json!({"off_zero_set": 20, "off_zero_set_contact": generic, "on_lines": on_line.len()}),
        observed: json!({
            "off_zero_set_ok": off_ok,
            "off_zero_set_samples": off_line.len(),
            "on_lines_ok": on_ok,
        }),
        method: Method::Sampled,
        pass: off_ok && on_ok,
        evidence: json!({"off_zero_set": off_line, "on_lines": on_line}),
    })
}
