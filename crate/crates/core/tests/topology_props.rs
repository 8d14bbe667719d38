use hesslab::par::Exec;
use hesslab::polycore::{int, parse_poly, ratio, BivPoly, Rational};
use hesslab::topology::{nesting_forest, trace_curve, trace_curve_with, Rect, TraceOptions};
use proptest::prelude::*;

/// `(x - cx)^2 + (y - cy)^2 - r^2`
fn circle(cx: &Rational, cy: &Rational, r: &Rational) -> BivPoly {
    let dx = BivPoly::linear(int(1), int(0), -cx);
    let dy = BivPoly::linear(int(0), int(1), -cy);
    &(&(&dx * &dx) + &(&dy * &dy)) - &BivPoly::constant(r * r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn single_circle(cx in -4i64..=4, cy in -4i64..=4, rp in 3i64..=12) {
        let (cx, cy, r) = (ratio(cx, 4), ratio(cy, 4), ratio(rp, 8));
        let bbox = Rect::centered_square(int(3)).unwrap();
        let t = trace_curve(&circle(&cx, &cy, &r), &bbox, 64, 4).unwrap();
        prop_assert_eq!(t.components.len(), 1);
        prop_assert!(t.components[0].closed);
        let rf = rp as f64 / 8.0;
        let area = std::f64::consts::PI * rf * rf;
        prop_assert!((t.components[0].area - area).abs() / area < 0.03);
        prop_assert_eq!(t.components[0].vertical_tangent_count, 2);
    }

    #[test]
    fn concentric_rings_form_a_chain(radii in prop::collection::btree_set(1i64..=10, 1..=4)) {
        let radii: Vec<Rational> = radii.into_iter().map(|r| ratio(r, 4)).collect();
        let zero = int(0);
        let p = radii.iter().fold(BivPoly::one(), |acc, r| &acc * &circle(&zero, &zero, r));
        let bbox = Rect::centered_square(int(3)).unwrap();
        for res in [64, 128] {
            let t = trace_curve(&p, &bbox, res, 5).unwrap();
            prop_assert_eq!(t.components.len(), radii.len());
            let forest = nesting_forest(&t.components).unwrap();
            prop_assert!(forest.is_chain());
        }
    }

    #[test]
    fn separate_circles_are_not_nested(a in 1i64..=3, b in 1i64..=3) {
        let p = &circle(&int(-1), &int(0), &ratio(a, 5)) * &circle(&int(1), &int(0), &ratio(b, 5));
        let t = trace_curve(&p, &Rect::centered_square(int(2)).unwrap(), 64, 4).unwrap();
        prop_assert_eq!(t.components.len(), 2);
        prop_assert!(nesting_forest(&t.components).unwrap().is_edgeless());
    }
}

#[test]
fn sequential_and_parallel_traces_agree() {
    let p = parse_poly("(x^2 + y^2 - 1)*((x - 1/3)^2 + 4*y^2 - 1/9) - 1/50").unwrap();
    let bbox = Rect::centered_square(int(2)).unwrap();
    let run = |exec| {
        trace_curve_with(
            &p,
            &bbox,
            &TraceOptions {
                base_resolution: 96,
                max_depth: 5,
                exec,
            },
        )
        .unwrap()
    };
    assert_eq!(run(Exec::Sequential), run(Exec::Parallel));
}
