use std::f64::consts::TAU;

use proptest::prelude::*;
use surfkit::planegeom::{
    hausdorff_distance, ifs_iterate, preset, preset_seed, winding_number, ClosedCurve, Point,
    Scene, PRESETS,
};

fn arb_points(max: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec(
        (-10.0f64..10.0, -10.0f64..10.0).prop_map(|(x, y)| Point::new(x, y)),
        1..max,
    )
}

fn brute_hausdorff(a: &[Point], b: &[Point]) -> f64 {
    let dir = |a: &[Point], b: &[Point]| {
        a.iter()
            .map(|p| b.iter().map(|q| p.dist(*q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    dir(a, b).max(dir(b, a))
}

/// Star-shaped polygon around the origin, wound `turns` times.
fn arb_star() -> impl Strategy<Value = (Vec<Point>, i64)> {
    (
        prop::collection::vec(0.5f64..3.0, 5..40),
        prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2), Just(3)],
    )
        .prop_map(|(radii, turns)| {
            let n = radii.len();
            let k = n * turns.unsigned_abs() as usize;
            let pts = (0..k)
                .map(|i| {
                    let t = turns.signum() as f64 * TAU * i as f64 / n as f64;
                    let r = radii[i % n];
                    Point::new(r * t.cos(), r * t.sin())
                })
                .collect();
            (pts, turns)
        })
}

proptest! {
    #[test]
    fn hausdorff_matches_brute_force(a in arb_points(40), b in arb_points(40)) {
        let d = hausdorff_distance(&a, &b).unwrap();
        prop_assert!((d - brute_hausdorff(&a, &b)).abs() <= 1e-12 * d.max(1.0));
    }

    #[test]
    fn hausdorff_is_a_metric(a in arb_points(30), b in arb_points(30), c in arb_points(30)) {
        let ab = hausdorff_distance(&a, &b).unwrap();
        let ba = hausdorff_distance(&b, &a).unwrap();
        let bc = hausdorff_distance(&b, &c).unwrap();
        let ac = hausdorff_distance(&a, &c).unwrap();
        prop_assert_eq!(ab, ba);
        prop_assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
        prop_assert!(ac <= (ab + bc) * (1.0 + 1e-12));
        let mut sa = a.clone();
        sa.reverse();
        prop_assert_eq!(hausdorff_distance(&a, &sa).unwrap(), 0.0);
    }

    #[test]
    fn distinct_sets_have_positive_distance(a in arb_points(20), extra in (-10.0f64..10.0, -10.0f64..10.0)) {
        let p = Point::new(extra.0, extra.1);
        prop_assume!(!a.contains(&p));
        let mut b = a.clone();
        b.push(p);
        prop_assert!(hausdorff_distance(&a, &b).unwrap() > 0.0);
    }

    #[test]
    fn ifs_contracts_hausdorff_distance(idx in 0usize..PRESETS.len(), a in arb_points(25), b in arb_points(25)) {
        let sys = preset(PRESETS[idx]).unwrap();
        let before = hausdorff_distance(&a, &b).unwrap();
        let after = hausdorff_distance(&sys.apply_points(&a), &sys.apply_points(&b)).unwrap();
        prop_assert!(after <= sys.lambda() * before + 1e-9);
    }

    #[test]
    fn star_polygons_wind_as_built((pts, turns) in arb_star()) {
        let w = winding_number(&ClosedCurve::new(pts).unwrap(), Point::new(0.0, 0.0)).unwrap();
        prop_assert_eq!(w.number, turns);
        prop_assert!(w.residual < 1e-6);
    }

    #[test]
    fn winding_ignores_start_and_flips_with_direction((pts, _) in arb_star(), shift in 0usize..40, z in (-0.2f64..0.2, -0.2f64..0.2)) {
        let z0 = Point::new(z.0, z.1);
        let base = winding_number(&ClosedCurve::new(pts.clone()).unwrap(), z0).unwrap().number;
        let mut rotated = pts.clone();
        rotated.rotate_left(shift % pts.len());
        prop_assert_eq!(winding_number(&ClosedCurve::new(rotated).unwrap(), z0).unwrap().number, base);
        let mut reversed = pts;
        reversed.reverse();
        prop_assert_eq!(winding_number(&ClosedCurve::new(reversed).unwrap(), z0).unwrap().number, -base);
    }

    #[test]
    fn winding_is_constant_near_a_point((pts, turns) in arb_star(), angle in 0.0f64..TAU, r in 0.0f64..1.0) {
        // every radius is at least 0.5, so the disc of radius 0.2 misses the curve
        let z0 = Point::new(0.2 * r * angle.cos(), 0.2 * r * angle.sin());
        let w = winding_number(&ClosedCurve::new(pts).unwrap(), z0).unwrap();
        prop_assert_eq!(w.number, turns);
    }
}

#[test]
fn iteration_multiplies_primitive_counts() {
    for name in PRESETS {
        let sys = preset(name).unwrap();
        let seed = preset_seed(name).unwrap();
        for k in 0..5u32 {
            let s: Scene = ifs_iterate(&sys, &seed, k as usize);
            assert_eq!(s.len(), seed.len() * sys.maps().len().pow(k), "{name} {k}");
        }
    }
}
