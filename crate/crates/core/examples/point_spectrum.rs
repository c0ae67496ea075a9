//! The point spectrum of J0: the discrete values, the open regions, and an
//! eigenvector built from the two-step recurrence.

use arcscatter::canonical::{eigenfunction_coefficients, j0_closed_form, lambda_infinity, SpectrumPoint};
use arcscatter::cosine::CosineSeries;
use num_complex::Complex64;

fn main() -> arcscatter::Result<()> {
    let discrete: Vec<String> = (0..10).map(|n| format!("{:.4}", lambda_infinity(n))).collect();
    println!("lambda_n, n = 0..9: {}", discrete.join(", "));

    for (re, im) in [(-0.3, 0.0), (-0.31, 0.0), (-0.25, 0.05), (-0.4, 0.2), (0.1, 0.0)] {
        let p = SpectrumPoint::classify(Complex64::new(re, im), 1.0);
        println!("  {:>14} in H^1: {:?}", format!("{}", p.lambda), p.membership);
    }

    let lambda = Complex64::from(-0.3);
    let f = eigenfunction_coefficients(lambda, 0.0.into(), 1.0.into(), 512)?;
    let out = j0_closed_form(513)?.apply_e(&f.coefficients);
    let res: Vec<Complex64> = (0..256).map(|i| out[i] - lambda * f.coefficients[i]).collect();
    let rel = CosineSeries::new(res).sobolev_norm(0.0) / CosineSeries::new(f.coefficients.clone()).sobolev_norm(0.0);
    println!("\neigenvector for lambda = -0.3: relative residual {rel:.2e} on 256 modes");
    for m in [8, 32, 128, 256] {
        println!("  |f_{}| = {:.3e}", 2 * m, f.coefficients[2 * m].norm());
    }
    Ok(())
}
