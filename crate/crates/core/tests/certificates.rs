use blockade_core::construct::CircleFamily;
use blockade_core::hull::in_convex_position;
use blockade_core::perturb::{all_polys, audit_tau};
use blockade_core::rational::int;
use blockade_core::*;

#[test]
fn collinear_counts() {
    for k in 1..=4 {
        let c = certify_construction(Construction::Collinear, k, None).unwrap();
        assert_eq!(c.bound, (5 * k - 3) as usize, "k = {k}");
        assert_eq!(c.method, Method::HittingSet);
        assert_eq!(c.circles.len(), (5 * k - 1) as usize);
    }
    let (ps, fam, _) = construction_instance(Construction::Collinear, 3, None).unwrap();
    assert_eq!(disjointness_bound(&ps, &fam).unwrap().bound, 12);
}

#[test]
fn alt3k_first_and_last_gadgets_lose_one_each() {
    let c = certify_construction(Construction::Alt3k, 1, None).unwrap();
    assert_eq!(c.bound, 2);
    for k in 2..=4 {
        let c = certify_construction(Construction::Alt3k, k, None).unwrap();
        assert_eq!(c.circles.len(), (4 * k - 1) as usize);
        assert_eq!(c.bound, (4 * k - 3) as usize, "k = {k}");
        let names: Vec<(String, String)> =
            vec![("F1^(1)".into(), "I2^(1)".into()), (format!("G1^({k})"), format!("I2^({k})"))];
        assert_eq!(c.overlaps, names);
    }
}

#[test]
fn epsilon_certificate_for_two_gadgets() {
    let cert = certify_epsilon(2).unwrap();
    assert!(cert.audits.iter().all(|a| a.passed), "{:?}", cert.audits);
    assert!(cert.tau_star < cert.positive_root_bound);
    // C(8,3) + C(8,4) tuples
    assert_eq!(cert.polynomial_count, 56 + 70);
    let (_, gs) = build_p0(2).unwrap();
    assert_eq!(all_polys(&gs).len(), cert.polynomial_count);
    let set = perturb(&gs, &cert.tau_star).unwrap().points;
    assert_eq!(general_position_violations(&set), (0, 0));
    assert!(in_convex_position(&set.points));
    assert!(cert.five_cases.iter().all(|e| e.nonzero && e.case.is_some()));
    let again = certify_epsilon(2).unwrap();
    assert_eq!(again.tau_star, cert.tau_star);
}

#[test]
fn huge_tau_is_rejected() {
    let audits = audit_tau(2, &int(1)).unwrap();
    assert!(audits.iter().any(|a| !a.passed));
    assert!(matches!(certify_epsilon(1), Err(Error::InvalidK(1))));
}

#[test]
fn three_perturbed_gadgets() {
    let c = certify_construction(Construction::General, 3, None).unwrap();
    assert!(c.bound >= 10);
    assert!(c.hypergraph.is_some());
    let tau = c.tau.clone().unwrap();

    // one middle gadget's F triple on its own needs two points
    let (_, gs) = build_p0(3).unwrap();
    let fam = build_c0_prime(&gs, &tau).unwrap();
    let triple = CircleFamily {
        circles: [Role::F1, Role::F2, Role::F3].iter().map(|&r| fam.find(r, 2).unwrap().clone()).collect(),
    };
    let single = hitting_set_bound(&c.points, &triple).unwrap();
    assert_eq!(single.bound, 2);
}

#[test]
fn certificate_json_shape() {
    let c = certify_construction(Construction::Collinear, 1, None).unwrap();
    let v = serde_json::to_value(&c).unwrap();
    assert_eq!(v["bound"], 2);
    assert_eq!(v["method"], "hitting_set");
    assert_eq!(v["P"]["points"][0]["x"], "9/1");
    assert_eq!(v["P"]["points"][0]["label"], "ell_1");
    assert!(v.get("tau").is_none());
    let g = certify_construction(Construction::General, 2, None).unwrap();
    let v = serde_json::to_value(&g).unwrap();
    assert!(v["tau"].as_str().unwrap().contains('/'));
}

#[test]
fn cell_samples_match_signatures() {
    let (ps, fam, _) = construction_instance(Construction::Collinear, 2, None).unwrap();
    let c = hitting_set_bound(&ps, &fam).unwrap();
    let g = c.hypergraph.unwrap();
    let hull = convex_hull(&ps.points);
    g.audit(&fam, &hull).unwrap();
    for (i, cells) in g.circle_to_cells.iter().enumerate() {
        assert!(!cells.is_empty(), "circle {i} uncovered");
    }
}

#[test]
fn emptiness_violation_is_reported() {
    let (mut ps, gs) = build_p0(1).unwrap();
    let fam = build_c0(&gs).unwrap();
    // inside F2 = diameter circle on ell–m
    ps.push(ExactPoint::new(int(19) / int(2), int(1) / int(10)), None);
    assert!(matches!(hitting_set_bound(&ps, &fam), Err(Error::EmptinessViolated(_))));
}
