//! Unweighted flat-arc closed forms: S0[1], N0[1], the non-square-integrable
//! N0 S0[1], and the slow Fourier decay of S0[1].

use arcscatter::flat_reference::{fourier_envelope, n0_of_one, ns_of_one, s0_of_one};
use arcscatter::kernel::{flat_unweighted, FlatKind};

fn main() -> arcscatter::Result<()> {
    println!("{:>7} {:>14} {:>14} {:>14}", "x", "S0[1]", "N0[1]", "N0 S0[1]");
    for x in [0.0, 0.5, 0.9, 0.99, 0.999, 0.9999] {
        println!(
            "{x:>7} {:>14.8} {:>14.6} {:>14.6}",
            s0_of_one(x)?,
            n0_of_one(x)?,
            ns_of_one(x)?.value
        );
    }
    let q = flat_unweighted(FlatKind::N0Param, |s| s0_of_one(s).unwrap_or(f64::NAN), 0.5)?;
    println!("\nN0 S0[1](0.5) by quadrature {q:.10}, by closed form {:.10}", ns_of_one(0.5)?.value);

    let fit = fourier_envelope(100.0, 1e4, 8)?;
    println!("\nenvelope of |F S0[1]|^2:");
    for (c, e) in fit.centers.iter().zip(&fit.envelope) {
        println!("  xi = {c:>8.1}  {e:.3e}");
    }
    println!("fitted exponent {:.3}", fit.slope);
    Ok(())
}
