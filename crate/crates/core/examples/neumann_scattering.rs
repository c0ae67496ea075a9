//! Sound-hard scattering: the second-kind system against the hypersingular first-kind one.

use arcscatter::geometry::Arc;
use arcscatter::solver::{far_field, solve, BoundaryCondition, Formulation, ScatteringProblem};

fn main() -> arcscatter::Result<()> {
    let arc = Arc::circular(1.0, 2.5)?;
    let angles = [0.0, 0.8, 1.6, 2.4, 3.2];
    for k in [5.0, 20.0] {
        let n = (8.0 * k) as usize + 64;
        let problem = ScatteringProblem::plane_wave(arc, k, BoundaryCondition::Neumann, [1.0, 0.0], n)?;
        let ns = solve(&problem, Formulation::SecondKindNS, 1e-10, 1000)?;
        let first = solve(&problem, Formulation::FirstKindN, 1e-10, 1000)?;
        let a = far_field(&ns, &problem, &angles);
        let b = far_field(&first, &problem, &angles);
        let gap = a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        println!(
            "k = {k:>4}, N = {n}: iterations {} (N S) vs {} (N alone), far-field gap {gap:.1e}",
            ns.iterations, first.iterations
        );
    }
    Ok(())
}
