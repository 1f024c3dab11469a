use blockade_core::rational::{int, rat};
use blockade_core::*;

fn reverify(p: &PointSet, r: &SolveResult, exterior: bool) {
    assert!(r.verified);
    assert_eq!(r.size, r.q.len());
    let fresh = BlockingInstance::new(p.clone(), r.q.clone(), exterior);
    assert_eq!(blocks(&fresh).unwrap(), Verdict::Blocked);
    assert!(meets_size_bound(p, &r.q), "{} blockers for {} points", r.size, p.len());
}

#[test]
fn triangle_midpoints() {
    let p = PointSet::new(vec![ExactPoint::from_ints(0, 0), ExactPoint::from_ints(4, 0), ExactPoint::from_ints(1, 3)]);
    let q = midpoint_heuristic(&p, &rat(1, 100)).unwrap();
    assert_eq!(q.len(), 3);
    let hull = convex_hull(&p.points);
    assert!(q.points.iter().all(|x| hull.strictly_outside(x)));
    // three sides, three blockers right next to them
    assert!(blocks(&BlockingInstance::new(p, q, true)).unwrap().is_blocked());
}

#[test]
fn square_midpoints_kill_both_diagonals() {
    let p = regular_ngon(4);
    let q = midpoint_heuristic(&p, &rat(1, 100)).unwrap();
    assert_eq!(blocks(&BlockingInstance::new(p, q, true)).unwrap(), Verdict::Blocked);
}

#[test]
fn exterior_solver_on_collinear_pair_of_gadgets() {
    let (p, gs) = build_p0(2).unwrap();
    let cfg = SolverConfig { exterior_only: true, ..SolverConfig::default() };
    let r = greedy_cover_solve(&p, &cfg).unwrap();
    reverify(&p, &r, true);
    let cert = hitting_set_bound(&p, &build_c0(&gs).unwrap()).unwrap();
    assert_eq!(cert.bound, 7);
    assert!(r.size >= cert.bound);
    let hull = convex_hull(&p.points);
    assert!(r.q.points.iter().all(|x| !hull.strictly_inside(x)));
}

#[test]
fn hexagon_needs_six() {
    let p = regular_ngon(6);
    let r = greedy_cover_solve(&p, &SolverConfig::default()).unwrap();
    reverify(&p, &r, false);
    assert!(r.size >= 6);
    assert_eq!(r.unblocked_history.last(), Some(&0));
}

#[test]
fn two_points_two_blockers() {
    let p = PointSet::new(vec![ExactPoint::from_ints(0, 0), ExactPoint::from_ints(1, 0)]);
    let r = greedy_cover_solve(&p, &SolverConfig { seed: 3, ..SolverConfig::default() }).unwrap();
    reverify(&p, &r, false);
    assert_eq!(r.size, 2);
}

#[test]
fn solver_rejects_bad_config() {
    let p = regular_ngon(5);
    let cfg = SolverConfig { candidate_density: 0, ..SolverConfig::default() };
    assert!(matches!(greedy_cover_solve(&p, &cfg), Err(Error::InvalidInput(_))));
    let one = PointSet::new(vec![ExactPoint::from_ints(0, 0)]);
    assert!(greedy_cover_solve(&one, &SolverConfig::default()).is_err());
}

#[test]
fn rounds_exhausted_keeps_partial_result() {
    let p = regular_ngon(7);
    let r = greedy_cover_solve(&p, &SolverConfig { max_rounds: 2, ..SolverConfig::default() }).unwrap();
    assert!(!r.verified);
    assert_eq!(r.size, 2);
    assert_eq!(r.unblocked_history.len(), 2);
}

#[test]
fn same_seed_same_answer() {
    let (p, _) = build_p0(1).unwrap();
    let cfg = SolverConfig { exterior_only: true, seed: 11, candidate_density: 2, max_rounds: 50 };
    assert_eq!(greedy_cover_solve(&p, &cfg).unwrap(), greedy_cover_solve(&p, &cfg).unwrap());
}

#[test]
fn boundary_blockers_count_as_exterior() {
    // two points on the hull segment itself: allowed in exterior mode
    let p = PointSet::new(vec![
        ExactPoint::from_ints(0, 0),
        ExactPoint::from_ints(4, 0),
        ExactPoint::from_ints(4, 4),
        ExactPoint::from_ints(0, 4),
    ]);
    let q = PointSet::new(vec![ExactPoint::from_ints(2, 0), ExactPoint::from_ints(2, 4)]);
    let v = blocks(&BlockingInstance::new(p.clone(), q, true)).unwrap();
    assert!(!matches!(v, Verdict::ExteriorViolation { .. }));
    let inner = PointSet::new(vec![ExactPoint::from_ints(2, 2)]);
    assert_eq!(blocks(&BlockingInstance::new(p, inner, true)).unwrap(), Verdict::ExteriorViolation { points: vec![0] });
}

#[test]
fn probe_matches_on_small_ngons() {
    for n in 5..=9 {
        let p = regular_ngon(n);
        let rep = conjecture_probe(&p, 6).unwrap();
        assert_eq!(rep.status, "matched", "n = {n}");
        assert_eq!(rep.best_size, Some(n));
        let q = rep.best.unwrap();
        assert!(blocks(&BlockingInstance::new(p.clone(), q.clone(), false)).unwrap().is_blocked());
        assert!(meets_size_bound(&p, &q));
    }
}

#[test]
fn probe_two_points() {
    let p = PointSet::new(vec![ExactPoint::from_ints(0, 0), ExactPoint::from_ints(3, 1)]);
    let rep = conjecture_probe(&p, 4).unwrap();
    assert_eq!(rep.best_size, Some(2));
    assert_eq!(rep.status, "matched");
}

#[test]
fn probe_on_perturbed_pair_of_gadgets() {
    let cert = certify_construction(Construction::General, 2, None).unwrap();
    assert_eq!(cert.bound, 5);
    let rep = conjecture_probe(&cert.points, 4).unwrap();
    if let Some(size) = rep.best_size {
        assert!(size >= 8);
        assert!(size >= cert.bound);
    }
    assert!(rep.status == "matched" || rep.status == "inconclusive-exceeds");
}

#[test]
fn probe_requires_convex_position() {
    let mut p = regular_ngon(5);
    p.push(ExactPoint::new(int(0), int(0)), None);
    assert_eq!(conjecture_probe(&p, 2).unwrap_err(), Error::NotConvexPosition);
}

#[test]
fn cell_search_matches_certificates_on_small_sets() {
    for (kind, k) in [(Construction::Collinear, 1), (Construction::Alt3k, 1), (Construction::Alt3k, 2)] {
        let cert = certify_construction(kind, k, None).unwrap();
        assert!(cert.points.len() <= 6);
        let found = exhaustive_cell_search(&cert).unwrap();
        assert_eq!(found.min_points, cert.bound, "{kind} k={k}");
    }
}

#[test]
fn solver_never_undercuts_certificates() {
    for (kind, k) in [(Construction::Collinear, 1), (Construction::Alt3k, 1), (Construction::Alt3k, 2)] {
        let cert = certify_construction(kind, k, None).unwrap();
        let cfg = SolverConfig { exterior_only: true, ..SolverConfig::default() };
        let r = greedy_cover_solve(&cert.points, &cfg).unwrap();
        if r.verified {
            assert!(r.size >= cert.bound, "{kind} k={k}");
            assert!(meets_size_bound(&cert.points, &r.q));
        }
    }
}
