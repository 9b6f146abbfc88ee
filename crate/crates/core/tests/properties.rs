use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use nonobtuse::generators::{generate, Family, GenConfig};
use nonobtuse::geom::{self, exact, Orientation, TriangleClass};
use nonobtuse::model::{format_rational, load_instance, load_solution, parse_rational, save_instance, save_solution};
use nonobtuse::scoring::{score_feasible, score_infeasible};
use nonobtuse::solver::solve_delaunay_baseline;
use nonobtuse::{build_cdt, verify, Instance, Point, Solution};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn coord() -> impl Strategy<Value = BigRational> {
    prop_oneof![
        (-1000i64..1000).prop_map(|n| q(n, 1)),
        (-1000i64..1000, 1i64..50).prop_map(|(n, d)| q(n, d)),
        // huge magnitudes push the float filter out of its comfort zone
        (-1000i64..1000).prop_map(|n| q(n, 1) * q(1 << 40, 1) + q(1, 3)),
    ]
}

fn point() -> impl Strategy<Value = Point> {
    (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
}

/// A point on the line through `a` and `b`, so exact ties get exercised.
fn collinear_with(a: &Point, b: &Point, t: BigRational) -> Point {
    geom::lerp(a, b, &t)
}

fn scale(p: &Point, s: &BigRational) -> Point {
    p.map(|x, y| (x * s, y * s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn orientation_antisymmetric_and_cyclic(a in point(), b in point(), c in point()) {
        let o = geom::orientation(&a, &b, &c);
        prop_assert_eq!(geom::orientation(&b, &a, &c), o.reversed());
        prop_assert_eq!(geom::orientation(&b, &c, &a), o);
        prop_assert_eq!(geom::orientation(&c, &a, &b), o);
        prop_assert_eq!(o, exact::orientation(&a, &b, &c));
    }

    #[test]
    fn filtered_matches_exact_on_degenerate_inputs(a in point(), b in point(), n in -20i64..20, d in 1i64..20) {
        let c = collinear_with(&a, &b, q(n, d));
        prop_assert_eq!(geom::orientation(&a, &b, &c), Orientation::Collinear);
        prop_assert_eq!(exact::orientation(&a, &b, &c), Orientation::Collinear);
        prop_assert_eq!(geom::angle_is_obtuse_at(&c, &a, &b), exact::dot_sign(&c, &a, &b).is_lt());
    }

    #[test]
    fn in_circle_symmetries(a in point(), b in point(), c in point(), d in point()) {
        if let Ok(s) = geom::in_circle(&a, &b, &c, &d) {
            prop_assert_eq!(s, exact::in_circle(&a, &b, &c, &d));
            prop_assert_eq!(geom::in_circle(&b, &c, &a, &d).unwrap(), s);
            prop_assert_eq!(geom::in_circle(&a, &c, &b, &d).unwrap(), -s);
            prop_assert_eq!(geom::in_circle(&a, &b, &c, &a).unwrap(), 0);
        } else {
            prop_assert_eq!(geom::orientation(&a, &b, &c), Orientation::Collinear);
        }
    }

    #[test]
    fn signs_survive_scaling(a in point(), b in point(), c in point(), d in point(), n in 1i64..1000, den in 1i64..1000) {
        for s in [q(n, den), q(-n, den)] {
            let (sa, sb, sc, sd) = (scale(&a, &s), scale(&b, &s), scale(&c, &s), scale(&d, &s));
            // a point reflection is a rotation, so orientation is kept for either sign
            prop_assert_eq!(geom::orientation(&sa, &sb, &sc), geom::orientation(&a, &b, &c));
            prop_assert_eq!(geom::classify_triangle(&sa, &sb, &sc), geom::classify_triangle(&a, &b, &c));
            prop_assert_eq!(geom::in_circle(&sa, &sb, &sc, &sd).ok(), geom::in_circle(&a, &b, &c, &d).ok());
        }
    }

    #[test]
    fn at_most_one_obtuse_angle(a in point(), b in point(), c in point()) {
        let obtuse = [
            geom::angle_is_obtuse_at(&a, &b, &c),
            geom::angle_is_obtuse_at(&b, &c, &a),
            geom::angle_is_obtuse_at(&c, &a, &b),
        ];
        let count = obtuse.iter().filter(|&&o| o).count();
        if geom::orientation(&a, &b, &c) != Orientation::Collinear {
            prop_assert!(count <= 1);
            prop_assert_eq!(count == 1, geom::classify_triangle(&a, &b, &c) == TriangleClass::Obtuse);
            prop_assert_eq!(geom::obtuse_apex([&a, &b, &c]).is_some(), count == 1);
        }
        // permuting the corners never changes the class
        let k = geom::classify_triangle(&a, &b, &c);
        prop_assert_eq!(geom::classify_triangle(&b, &a, &c), k);
        prop_assert_eq!(geom::classify_triangle(&c, &b, &a), k);
    }

    #[test]
    fn rational_text_round_trip(n in any::<i64>(), d in 1i64..i64::MAX) {
        let v = q(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&v)).unwrap(), v);
    }

    #[test]
    fn score_bounds_and_monotonicity(kb in 0usize..500, extra in 0usize..500, v in 1usize..500) {
        let ky = kb + extra;
        let s = score_feasible(kb, ky).unwrap();
        prop_assert!((0.5..=1.0).contains(&s));
        prop_assert!(score_feasible(kb, ky + 1).unwrap() <= s);
        let i = score_infeasible(v).unwrap();
        prop_assert!(i > 0.0 && i < 0.5);
        prop_assert!(score_infeasible(v + 1).unwrap() < i);
        // any feasible score beats any infeasible one
        prop_assert!(s > i);
    }
}

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

fn transformed(inst: &Instance, sol: &Solution, f: impl Fn(&Point) -> Point + Copy) -> (Instance, Solution) {
    let points = inst.points().iter().map(f).collect();
    let inst2 = Instance::new(
        inst.uid(),
        points,
        inst.region_boundary().to_vec(),
        inst.constraints().to_vec(),
    )
    .unwrap();
    let steiner = sol.steiner_points().iter().map(f).collect();
    let sol2 = Solution::new(sol.instance_uid(), steiner, sol.edges().to_vec()).unwrap();
    (inst2, sol2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn instance_and_solution_round_trip(fam in family(), n in 10usize..40, seed in any::<u64>()) {
        let n = if fam == Family::Ortho { n & !1 } else { n };
        let inst = generate(&GenConfig::new(fam, n, seed)).unwrap();
        let back = load_instance(&save_instance(&inst)).unwrap();
        prop_assert_eq!(&back, &inst);
        let sol = solve_delaunay_baseline(&inst);
        prop_assert_eq!(load_solution(&save_solution(&sol)).unwrap(), sol);
    }

    #[test]
    fn verify_invariant_under_rigid_motions(fam in family(), seed in any::<u64>(), dx in -500i64..500, dy in -500i64..500) {
        let n = 12;
        let inst = generate(&GenConfig::new(fam, n, seed)).unwrap();
        let mut steiner = vec![geom::centroid(
            &inst.points()[inst.region_boundary()[0]],
            &inst.points()[inst.region_boundary()[1]],
            &inst.points()[inst.region_boundary()[2]],
        )];
        // the centroid of three boundary corners may fall outside a non-convex region
        if build_cdt(&inst, &steiner).is_err() {
            steiner.clear();
        }
        let tri = build_cdt(&inst, &steiner).unwrap();
        let sol = Solution::new(inst.uid(), steiner, tri.edges()).unwrap();
        let base = verify(&inst, &sol);
        prop_assert!(base.valid);
        let motions: [&dyn Fn(&Point) -> Point; 3] = [
            &|p: &Point| p.map(|x, y| (x + q(dx, 1), y + q(dy, 1))),
            &|p: &Point| p.map(|x, y| (-y, x.clone())),
            &|p: &Point| p.map(|x, y| (-x, -y)),
        ];
        for m in motions {
            let (i2, s2) = transformed(&inst, &sol, m);
            let r = verify(&i2, &s2);
            prop_assert!(r.valid);
            prop_assert_eq!(r.objective(), base.objective());
            prop_assert_eq!(r.triangle_count, base.triangle_count);
        }
    }
}
