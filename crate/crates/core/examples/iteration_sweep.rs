//! GMRES iteration counts of the second-kind and first-kind systems across k.

use arcscatter::geometry::Arc;
use arcscatter::solver::{discretize, solve_with, BoundaryCondition, Formulation, Method, ScatteringProblem};

fn main() -> arcscatter::Result<()> {
    let arc = Arc::perturbed(0.2, 2)?;
    println!("{:>5} {:>5} {:>10} {:>10}", "k", "N", "N S", "S");
    for k in [1.0, 5.0, 10.0, 20.0, 40.0] {
        let n = (8.0 * k) as usize + 64;
        let p = ScatteringProblem::plane_wave(arc, k, BoundaryCondition::Dirichlet, [0.6, 0.8], n)?;
        let disc = discretize(&p, n)?;
        let second = solve_with(&disc, &p, Formulation::SecondKindNS, Method::Gmres, 1e-8, 2000)?;
        let first = solve_with(&disc, &p, Formulation::FirstKindS, Method::Gmres, 1e-8, 2000)?;
        println!("{k:>5} {n:>5} {:>10} {:>10}", second.iterations, first.iterations);
    }
    Ok(())
}
