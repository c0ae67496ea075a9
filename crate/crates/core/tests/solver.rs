use arcscatter::geometry::Arc;
use arcscatter::solver::{
    boundary_data, discretize, evaluate_field, far_field, solve, solve_direct, solve_with, BoundaryCondition,
    Formulation, Incident, Method, ScatteringProblem,
};
use arcscatter::Error;
use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

fn perturbed() -> Arc {
    Arc::perturbed(0.2, 2).unwrap()
}

fn dir(a: f64) -> [f64; 2] {
    [a.cos(), a.sin()]
}

fn problem(arc: Arc, k: f64, bc: BoundaryCondition, d: [f64; 2], n: usize) -> ScatteringProblem {
    ScatteringProblem::plane_wave(arc, k, bc, d, n).unwrap()
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn laplace_constant_data_inverts_the_diagonal() {
    let c = 1.5;
    let p = ScatteringProblem {
        arc: Arc::unit_flat(),
        k: 0.0,
        bc: BoundaryCondition::Dirichlet,
        incident: Incident::PlaneWave {
            direction: [1.0, 0.0],
            amplitude: c,
        },
        n: 32,
    };
    // The Laplace limit sits outside `validated` (k > 0), so the problem is built directly.
    assert!(p.validated().is_err());
    // u_inc = c, so the data is -c e_0.
    let r = solve(&p, Formulation::FirstKindS, 1e-12, 50).unwrap();
    let e = r.density.e_coefficients();
    assert!((e[0] - Complex64::from(-2.0 * c / LN_2)).norm() < 1e-12);
    assert!(e[1..].iter().all(|v| v.norm() < 1e-12));
}

#[test]
fn second_kind_dirichlet_satisfies_the_first_kind_equation() {
    let tol = 1e-10;
    for arc in [Arc::unit_flat(), perturbed(), Arc::circular(1.0, 2.0).unwrap()] {
        let p = problem(arc, 7.0, BoundaryCondition::Dirichlet, dir(0.4), 128);
        let r = solve(&p, Formulation::SecondKindNS, tol, 500).unwrap();
        assert!(r.boundary_residual.unwrap() < 10.0 * tol, "{arc:?}: {:?}", r.boundary_residual);
    }
}

#[test]
fn formulations_agree_on_the_far_field() {
    let angles: Vec<f64> = (0..12).map(|i| 0.5 * i as f64).collect();
    for (bc, first) in [
        (BoundaryCondition::Dirichlet, Formulation::FirstKindS),
        (BoundaryCondition::Neumann, Formulation::FirstKindN),
    ] {
        let p = problem(perturbed(), 4.0, bc, dir(1.1), 128);
        let a = far_field(&solve(&p, Formulation::SecondKindNS, 1e-12, 500).unwrap(), &p, &angles);
        let b = far_field(&solve_direct(&p, first).unwrap(), &p, &angles);
        let diff: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        assert!(max_norm(&diff) < 1e-8 * max_norm(&a), "{bc:?}");
    }
}

#[test]
fn far_field_reciprocity() {
    // u_inf(x, d) = u_inf(-d, -x) for any arc.
    for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
        for arc in [Arc::unit_flat(), perturbed()] {
            let (a, b) = (0.7, 2.3);
            let p1 = problem(arc, 5.0, bc, dir(a), 160);
            let p2 = problem(arc, 5.0, bc, dir(b + PI), 160);
            let u1 = far_field(&solve(&p1, Formulation::SecondKindNS, 1e-12, 500).unwrap(), &p1, &[b]);
            let u2 = far_field(&solve(&p2, Formulation::SecondKindNS, 1e-12, 500).unwrap(), &p2, &[a + PI]);
            assert!((u1[0] - u2[0]).norm() < 1e-6 * u1[0].norm().max(1e-3), "{bc:?} {arc:?}: {} {}", u1[0], u2[0]);
        }
    }
}

#[test]
fn far_field_is_the_limit_of_the_near_field() {
    for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
        let k = 5.0;
        let p = problem(perturbed(), k, bc, dir(0.9), 128);
        let r = solve(&p, Formulation::SecondKindNS, 1e-12, 500).unwrap();
        let angles = [0.2, 1.3, 2.9, 4.4];
        let far = far_field(&r, &p, &angles);
        let radius = 1e6 / k;
        let pts: Vec<[f64; 2]> = angles.iter().map(|a| [radius * a.cos(), radius * a.sin()]).collect();
        let near = evaluate_field(&r, &p, &pts).unwrap();
        let scale = max_norm(&far);
        for (u, f) in near.iter().zip(&far) {
            let limit = u * radius.sqrt() * Complex64::from_polar(1.0, -k * radius);
            assert!((limit - f).norm() < 1e-4 * scale, "{bc:?}: {limit} vs {f}");
        }
    }
}

#[test]
fn near_field_converges_under_refinement() {
    let x = [[0.3, 0.8], [-1.4, -0.2], [1.2, 0.0]];
    let field = |n: usize| {
        let p = problem(perturbed(), 5.0, BoundaryCondition::Dirichlet, dir(0.3), n);
        let r = solve(&p, Formulation::SecondKindNS, 1e-13, 500).unwrap();
        evaluate_field(&r, &p, &x).unwrap()
    };
    let (a, b) = (field(256), field(512));
    for (u, v) in a.iter().zip(&b) {
        assert!((u - v).norm() < 1e-8 * v.norm(), "{u} vs {v}");
    }
}

#[test]
fn total_field_vanishes_on_a_dirichlet_arc() {
    // Approach the arc from off the curve: u_scat + u_inc -> 0.
    let p = problem(perturbed(), 3.0, BoundaryCondition::Dirichlet, dir(0.5), 128);
    let r = solve(&p, Formulation::SecondKindNS, 1e-12, 500).unwrap();
    let t: f64 = 0.37;
    let y = p.arc.point(t);
    let nrm = p.arc.normal(t);
    let h = 2.0 * p.margin();
    let x = [y[0] + h * nrm[0], y[1] + h * nrm[1]];
    let u = evaluate_field(&r, &p, &[x]).unwrap()[0] + p.incident_field(x);
    // Away from the edges the total field is Lipschitz up to the arc, so it is O(h) here.
    assert!(u.norm() < 50.0 * h, "{u}");
}

#[test]
fn neumann_grazing_incidence_on_flat_arc_scatters_nothing() {
    let p = problem(Arc::unit_flat(), 4.0, BoundaryCondition::Neumann, [1.0, 0.0], 64);
    assert!(max_norm(&boundary_data(&p).e_coefficients()) < 1e-14);
    let r = solve(&p, Formulation::SecondKindNS, 1e-10, 50).unwrap();
    assert!(r.iterations <= 1);
    assert!(max_norm(&far_field(&r, &p, &[0.0, 1.0, 2.0])) < 1e-14);
}

#[test]
fn iteration_cap_reports_history() {
    let p = problem(perturbed(), 20.0, BoundaryCondition::Dirichlet, dir(0.3), 224);
    let disc = discretize(&p, p.n).unwrap();
    match solve_with(&disc, &p, Formulation::FirstKindS, Method::Gmres, 1e-10, 3) {
        Err(Error::NonConvergence { iterations, history, .. }) => {
            assert_eq!(iterations, 3);
            assert_eq!(history.len(), 4);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn mismatched_formulations_are_rejected() {
    let p = problem(perturbed(), 2.0, BoundaryCondition::Neumann, dir(0.3), 32);
    assert!(solve(&p, Formulation::FirstKindS, 1e-8, 50).is_err());
    let p = problem(perturbed(), 2.0, BoundaryCondition::Dirichlet, dir(0.3), 32);
    assert!(solve(&p, Formulation::FirstKindN, 1e-8, 50).is_err());
    assert!(solve(&p, Formulation::SecondKindNS, 1.0, 50).is_err());
}
