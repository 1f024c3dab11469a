use blockade_core::cover::{max_independent_set, min_set_cover};
use blockade_core::geom::{circle_intersections, orient_value};
use blockade_core::hull::in_convex_position;
use blockade_core::perturb::{det, TauPoint};
use blockade_core::poly::Poly;
use blockade_core::rational::{self, int, pow2, rat};
use blockade_core::*;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1i64..12).prop_map(|(n, d)| rat(n, d))
}

fn point() -> impl Strategy<Value = ExactPoint> {
    (small_rat(), small_rat()).prop_map(|(x, y)| ExactPoint::new(x, y))
}

fn lattice_point() -> impl Strategy<Value = ExactPoint> {
    (-6i64..7, -6i64..7).prop_map(|(x, y)| ExactPoint::from_ints(x, y))
}

fn distinct_points(max: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::btree_set((-6i64..7, -6i64..7), 2..=max)
        .prop_map(|s| PointSet::new(s.into_iter().map(|(x, y)| ExactPoint::from_ints(x, y)).collect()))
}

proptest! {
    #[test]
    fn orient_is_alternating(p in point(), q in point(), r in point()) {
        let s = orient(&p, &q, &r);
        prop_assert_eq!(orient(&q, &p, &r), -s);
        prop_assert_eq!(orient(&q, &r, &p), s);
        prop_assert_eq!(orient(&p, &r, &q), -s);
    }

    #[test]
    fn diameter_circle_contains_its_segment(a in point(), b in point()) {
        prop_assume!(a != b);
        let c = circle_from_diameter(&a, &b).unwrap();
        prop_assert_eq!(in_circle_sign(&c, &a), Sign::Zero);
        prop_assert_eq!(in_circle_sign(&c, &b), Sign::Zero);
        prop_assert_eq!(in_circle_sign(&c, &a.midpoint(&b)), Sign::Negative);
    }

    #[test]
    fn tangent_circle_touches_its_line(p in point(), q in point(), dx in small_rat(), dy in small_rat()) {
        prop_assume!(p != q && !(dx.is_zero() && dy.is_zero()));
        let dir = (dx.clone(), dy.clone());
        match circle_through_tangent_at(&p, &q, &dir) {
            Ok(c) => {
                prop_assert_eq!(in_circle_sign(&c, &p), Sign::Zero);
                prop_assert_eq!(in_circle_sign(&c, &q), Sign::Zero);
                // radius at p is perpendicular to the tangent direction
                let (rx, ry) = c.center.sub(&p);
                prop_assert!((rx * dx + ry * dy).is_zero());
                // the tangent line meets the circle only at p: discriminant zero
                let e = p.offset(&dir, &int(1));
                prop_assert_ne!(in_circle_sign(&c, &e), Sign::Negative);
            }
            Err(Error::NoSolution(_)) => {
                prop_assert_eq!(orient(&p, &p.offset(&dir, &int(1)), &q), Sign::Zero);
            }
            Err(e) => prop_assert!(false, "unexpected {e:?}"),
        }
    }

    #[test]
    fn hull_encloses_everything(set in distinct_points(10)) {
        let h = convex_hull(&set.points);
        for p in &set.points {
            prop_assert!(!h.strictly_outside(p));
        }
        for v in &h.vertices {
            prop_assert!(set.points.contains(v));
        }
        if h.vertices.len() >= 3 {
            prop_assert!(in_convex_position(&h.vertices));
        }
    }

    #[test]
    fn witness_interval_symmetric_under_reversal(set in distinct_points(8), i in 0usize..8, j in 0usize..8) {
        let (i, j) = (i % set.len(), j % set.len());
        prop_assume!(i != j);
        let a = witness_interval(&set, i, j).unwrap();
        let b = witness_interval(&set, j, i).unwrap();
        prop_assert_eq!(a.is_empty(), b.is_empty());
    }

    #[test]
    fn adding_points_never_adds_edges(set in distinct_points(9), x in lattice_point()) {
        prop_assume!(!set.points.contains(&x));
        let before = delaunay_edges(&set).unwrap();
        let mut more = set.clone();
        more.push(x, None);
        let after = delaunay_edges(&more).unwrap();
        let n = set.len();
        for e in after.iter().filter(|(_, j)| *j < n) {
            prop_assert!(before.contains(e), "edge {:?} appeared", e);
        }
    }

    #[test]
    fn blocking_is_monotone_in_q(set in distinct_points(5), q in prop::collection::vec(lattice_point(), 0..6), x in lattice_point()) {
        let mut qs = PointSet::default();
        for p in q {
            if !set.points.contains(&p) && !qs.points.contains(&p) {
                qs.push(p, None);
            }
        }
        prop_assume!(!set.points.contains(&x) && !qs.points.contains(&x));
        let before = blocks(&BlockingInstance::new(set.clone(), qs.clone(), false)).unwrap();
        let mut grown = qs.clone();
        grown.push(x, None);
        let after = blocks(&BlockingInstance::new(set, grown, false)).unwrap();
        if before.is_blocked() {
            prop_assert!(after.is_blocked());
        }
        if let (Verdict::Unblocked { edges: b }, Verdict::Unblocked { edges: a }) = (&before, &after) {
            prop_assert!(a.iter().all(|e| b.contains(e)));
        }
    }

    #[test]
    fn point_set_json_round_trip(set in prop::collection::vec(point(), 0..8)) {
        let ps = PointSet::new(set);
        let s = serde_json::to_string(&ps).unwrap();
        let back: PointSet = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, ps);
    }

    #[test]
    fn rational_string_round_trip(n in any::<i64>(), d in 1i64..i64::MAX) {
        let r = rat(n, d);
        let s = rational::format(&r);
        prop_assert_eq!(rational::parse(&s).unwrap(), r.clone());
        let (num, den) = s.split_once('/').unwrap();
        prop_assert!(!den.starts_with('-'));
        prop_assert!(num.parse::<i128>().is_ok());
    }

    #[test]
    fn collinearity_poly_matches_direct_orientation(
        xs in prop::collection::vec(1i64..40, 3), ys in prop::collection::vec(-5i64..6, 3),
        sig in prop::collection::vec(prop::bool::ANY, 3), tau in 1i64..1000,
    ) {
        let pts: Vec<TauPoint> = (0..3).map(|i| TauPoint {
            index: i,
            point: ExactPoint::new(rat(xs[i], 4), int(ys[i])),
            sigma: if sig[i] { 1 } else { -1 },
        }).collect();
        let tau = rat(1, tau);
        let poly = collinearity_poly(&pts[0], &pts[1], &pts[2]);
        let moved: Vec<ExactPoint> = pts.iter().map(|p| p.at(&tau)).collect();
        prop_assert_eq!(poly.eval(&tau), orient_value(&moved[0], &moved[1], &moved[2]));
    }

    #[test]
    fn cocircularity_poly_matches_direct_determinant(
        xs in prop::collection::vec(1i64..40, 4), ys in prop::collection::vec(-5i64..6, 4),
        sig in prop::collection::vec(prop::bool::ANY, 4), tau in 1i64..1000,
    ) {
        let pts: Vec<TauPoint> = (0..4).map(|i| TauPoint {
            index: i,
            point: ExactPoint::new(rat(xs[i], 4), int(ys[i])),
            sigma: if sig[i] { 1 } else { -1 },
        }).collect();
        let tau = rat(1, tau);
        let poly = cocircularity_poly(&pts[0], &pts[1], &pts[2], &pts[3]);
        let m: Vec<ExactPoint> = pts.iter().map(|p| p.at(&tau)).collect();
        let direct = det(vec![
            vec![int(1); 4],
            m.iter().map(|p| p.x.clone()).collect(),
            m.iter().map(|p| p.y.clone()).collect(),
            m.iter().map(|p| &p.x * &p.x + &p.y * &p.y).collect(),
        ]);
        prop_assert_eq!(poly.eval(&tau), direct);
    }

    #[test]
    fn root_gap_is_below_every_positive_root(
        roots in prop::collection::vec((1i64..50, 1i64..50), 1..4), lead in prop::sample::select(vec![-3i64, -1, 1, 2]),
    ) {
        let mut p = Poly::new(vec![int(lead)]);
        for &(n, d) in &roots {
            p = &p * &Poly::new(vec![-rat(n, d), int(1)]);
        }
        let gap = p.positive_root_gap(&int(1)).unwrap();
        prop_assert!(gap.is_positive() && gap <= int(1));
        for &(n, d) in &roots {
            prop_assert!(gap < rat(n, d));
        }
    }

    #[test]
    fn set_cover_never_beats_independent_lower_bound(sets in prop::collection::vec(1u128..64, 1..8)) {
        let n = 6;
        let full = (1u128 << n) - 1;
        let union = sets.iter().fold(0, |a, s| a | s);
        prop_assume!(union & full == full);
        let (k, pick) = min_set_cover(n, &sets).unwrap();
        prop_assert_eq!(pick.iter().fold(0, |a, &i| a | sets[i]) & full, full);
        // elements pairwise not sharing a set need distinct sets
        let adj: Vec<u128> = (0..n).map(|e| {
            (0..n).filter(|&f| f != e && sets.iter().any(|s| s >> e & 1 == 1 && s >> f & 1 == 1)).fold(0, |m, f| m | 1 << f)
        }).collect();
        let mis = max_independent_set(n, &adj);
        prop_assert!(mis.len() <= k);
    }

    #[test]
    fn circle_intersections_lie_on_both(a in point(), b in point(), ra in 1i64..40, rb in 1i64..40) {
        prop_assume!(a != b);
        let c1 = ExactCircle::new(a, int(ra)).unwrap();
        let c2 = ExactCircle::new(b, int(rb)).unwrap();
        for x in circle_intersections(&c1, &c2) {
            prop_assert_eq!(x.power(&c1).sign(), Sign::Zero);
            prop_assert_eq!(x.power(&c2).sign(), Sign::Zero);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn sqrt_comparison_matches_200_bit_evaluation(a in small_rat(), b in small_rat(), c in (0i64..400, 1i64..9), d in small_rat()) {
        let c = rat(c.0, c.1);
        let s = rational::sqrt_floor(&c, 200);
        let eps = pow2(-200);
        let lo = if b.is_negative() { &a - &d + &b * (&s + &eps) } else { &a - &d + &b * &s };
        let hi = if b.is_negative() { &a - &d + &b * &s } else { &a - &d + &b * (&s + &eps) };
        let expect = if lo.is_positive() {
            Sign::Positive
        } else if hi.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        };
        prop_assert_eq!(compare_sqrt_expr(&a, &b, &c, &d), expect);
    }
}

#[test]
fn areas_disjoint_is_symmetric_on_the_construction() {
    let (ps, gs) = build_p0(2).unwrap();
    let hull = convex_hull(&ps.points);
    let fam = build_c0(&gs).unwrap();
    let areas: Vec<BlockingArea> =
        fam.circles.iter().map(|c| BlockingArea::new(c.circle.clone(), hull.clone())).collect();
    for a in &areas {
        assert!(!areas_disjoint(a, a));
        for b in &areas {
            assert_eq!(areas_disjoint(a, b), areas_disjoint(b, a));
        }
    }
}

#[test]
fn hitting_bound_dominates_disjointness() {
    for k in 1..=3 {
        for kind in [Construction::Collinear, Construction::Alt3k] {
            let (ps, fam, _) = construction_instance(kind, k, None).unwrap();
            let h = hitting_set_bound(&ps, &fam).unwrap();
            let d = disjointness_bound(&ps, &fam).unwrap();
            assert!(h.bound >= d.bound, "{kind} k={k}");
        }
    }
}
