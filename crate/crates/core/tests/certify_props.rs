mod common;

use common::{affine_map, biv_poly};
use hesslab::calculus::hessian_poly;
use hesslab::certify::{
    verify_affine_invariance, verify_theorem1, verify_theorem2, verify_theorem3, TheoremReport,
    VerifyOptions,
};
use hesslab::families::{
    build_outer_oval, check_good_position, EvenCircleParams, FamilySpec, OddCircleParams,
    OuterOvalParams,
};
use hesslab::polycore::{int, ratio, AffineMap2, Rational};
use hesslab::topology::{auto_bbox, nesting_forest, trace_curve, Rect};
use proptest::prelude::*;
use serde_json::Value;

fn without_timings(r: &TheoremReport) -> String {
    let mut v = r.to_json();
    v.as_object_mut().unwrap().remove("timings_ms");
    serde_json::to_string(&v).unwrap()
}

fn outer(a: Rational, b: Rational, al: &[i64], bl: &[i64]) -> OuterOvalParams {
    OuterOvalParams::new(
        a,
        b,
        al.iter().map(|&v| int(v)).collect(),
        bl.iter().map(|&v| int(v)).collect(),
    )
    .unwrap()
}

fn outer_instances() -> impl Strategy<Value = OuterOvalParams> {
    (
        1i64..=3,
        1i64..=3,
        prop::collection::btree_set(1i64..=4, 0..=2),
        prop::collection::btree_set(1i64..=4, 0..=2),
    )
        .prop_filter_map("not in good position", |(a, b, al, bl)| {
            let al: Vec<i64> = al.into_iter().map(|v| -v).collect();
            let bl: Vec<i64> = bl.into_iter().collect();
            let p = outer(int(a), ratio(-b, 2), &al, &bl);
            check_good_position(&p).is_good().then_some(p)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn affine_invariance_of_the_hessian(f in biv_poly(6, 8), t in affine_map()) {
        prop_assert!(verify_affine_invariance(&f, &t));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn two_vertical_tangents_per_oval(p in outer_instances()) {
        let r = verify_theorem1(&p, &VerifyOptions::default()).unwrap();
        if r.overall {
            let roots = r.claim("alpha_simple_roots").unwrap().observed.as_u64().unwrap();
            let comps = r.claim("outer_ovals").unwrap().observed["components"].as_u64().unwrap();
            prop_assert_eq!(roots, 2 * comps);
        }
    }

    #[test]
    fn scaled_hessian_curves_keep_their_topology(
        p in outer_instances(),
        (kx, ky) in (1i64..=3, 1i64..=3),
        (tx, ty) in (-2i64..=2, -2i64..=2),
    ) {
        // C' = T^{-1}(C) is the Hessian curve of (f o T) / J
        let (kx, ky, tx, ty) = (ratio(kx, 2), ratio(ky, 2), int(tx), int(ty));
        let t = AffineMap2::new([[kx.clone(), int(0)], [int(0), ky.clone()]], [tx.clone(), ty.clone()]).unwrap();
        let f = build_outer_oval(&p);
        prop_assert!(verify_affine_invariance(&f, &t));
        let bbox = auto_bbox(&FamilySpec::Outer(p.clone())).unwrap();
        let pulled = Rect::new(
            (&bbox.x0 - &tx) / &kx,
            (&bbox.y0 - &ty) / &ky,
            (&bbox.x1 - &tx) / &kx,
            (&bbox.y1 - &ty) / &ky,
        )
        .unwrap();
        let h = hessian_poly(&f);
        let before = trace_curve(&h, &bbox, 128, 6).unwrap();
        let after = trace_curve(&h.compose_affine(&t), &pulled, 128, 6).unwrap();
        prop_assert_eq!(before.components.len(), after.components.len());
        prop_assert_eq!(
            nesting_forest(&before.components).ok(),
            nesting_forest(&after.components).ok()
        );
    }
}

#[test]
fn reports_are_deterministic() {
    let opts = VerifyOptions::default();
    let p1 = outer(int(1), int(-1), &[-1, -2], &[1]);
    assert_eq!(
        without_timings(&verify_theorem1(&p1, &opts).unwrap()),
        without_timings(&verify_theorem1(&p1, &opts).unwrap())
    );
    let p2 = EvenCircleParams::new(vec![int(1), int(2), int(3)]).unwrap();
    assert_eq!(
        without_timings(&verify_theorem2(&p2, &opts).unwrap()),
        without_timings(&verify_theorem2(&p2, &opts).unwrap())
    );
    let p3 = OddCircleParams::new(2).unwrap();
    assert_eq!(
        without_timings(&verify_theorem3(&p3, &opts).unwrap()),
        without_timings(&verify_theorem3(&p3, &opts).unwrap())
    );
}

#[test]
fn seed_changes_only_sampled_evidence() {
    let p = outer(int(1), int(-1), &[-1], &[1]);
    let a = verify_theorem1(&p, &VerifyOptions::default()).unwrap();
    let b = verify_theorem1(
        &p,
        &VerifyOptions {
            seed: 99,
            ..VerifyOptions::default()
        },
    )
    .unwrap();
    assert!(a.overall && b.overall);
    for (x, y) in a.claims.iter().zip(&b.claims) {
        if x.method != hesslab::certify::Method::Sampled {
            assert_eq!(x, y);
        }
    }
}

#[test]
fn report_shapes() {
    let opts = VerifyOptions::default();
    let r = verify_theorem1(&outer(int(1), int(-1), &[-1], &[1]), &opts).unwrap();
    assert_eq!(r.claims.len(), 7);
    assert!(r.overall);
    let json = r.to_json();
    for key in [
        "family",
        "claims",
        "overall",
        "timings_ms",
        "theorem",
        "notes",
    ] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
    let r = verify_theorem2(&EvenCircleParams::new(vec![int(1)]).unwrap(), &opts).unwrap();
    let c = r.claim("circles").unwrap();
    assert_eq!(
        (c.expected.clone(), c.observed.clone()),
        (Value::from(0), Value::from(0))
    );
}
