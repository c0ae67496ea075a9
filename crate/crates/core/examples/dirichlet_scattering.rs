//! Sound-soft scattering by a curved arc: second-kind solve, near field and far field.

use arcscatter::geometry::Arc;
use arcscatter::solver::{evaluate_field, far_field, solve, BoundaryCondition, Formulation, ScatteringProblem};

fn main() -> arcscatter::Result<()> {
    let k = 10.0;
    let d = [0.6, 0.8];
    let problem = ScatteringProblem::plane_wave(Arc::perturbed(0.2, 2)?, k, BoundaryCondition::Dirichlet, d, 160)?;
    let result = solve(&problem, Formulation::SecondKindNS, 1e-10, 500)?;
    println!(
        "k = {k}, N = {}: {} GMRES iterations, boundary residual {:.1e}",
        problem.n,
        result.iterations,
        result.boundary_residual.unwrap()
    );

    let points = [[0.0, 1.0], [0.0, -1.0], [2.0, 0.5], [-1.5, 1.5]];
    for (x, u) in points.iter().zip(evaluate_field(&result, &problem, &points)?) {
        let total = u + problem.incident_field(*x);
        println!("  u_scat({:+.1}, {:+.1}) = {u:.6}   |u_total| = {:.4}", x[0], x[1], total.norm());
    }

    println!("far field:");
    let angles: Vec<f64> = (0..8).map(|i| i as f64 * std::f64::consts::PI / 4.0).collect();
    for (a, u) in angles.iter().zip(far_field(&result, &problem, &angles)) {
        println!("  {a:.3}  |u_inf| = {:.6}", u.norm());
    }
    Ok(())
}
