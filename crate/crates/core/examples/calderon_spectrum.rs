//! Spectrum of the weighted Calderon product N S and its compact remainder.

use arcscatter::geometry::Arc;
use arcscatter::spectral::{calderon_remainder, QUANTILE_LEVELS};

fn main() -> arcscatter::Result<()> {
    let n = 128;
    for (arc, k) in [(Arc::unit_flat(), 0.0), (Arc::unit_flat(), 10.0), (Arc::perturbed(0.2, 2)?, 5.0)] {
        let r = calderon_remainder(&arc, k, n)?;
        println!("{arc:?}, k = {k}, N = {n}");
        println!("  |eig| in [{:.4}, {:.4}], centre {:.4}", r.min_abs, r.max_abs, r.cluster_center);
        for (q, d) in QUANTILE_LEVELS.iter().zip(&r.cluster_radius_quantiles) {
            println!("  {:>4.0}% of eigenvalues within {d:.4} of -1/4", 100.0 * q);
        }
        let s = &r.singular_value_decay;
        println!(
            "  remainder: max entry {:.2e}, sigma_j/sigma_0 at j = 8, 32, 64: {:.1e} {:.1e} {:.1e}",
            r.remainder_max_entry.unwrap_or(0.0),
            s[8],
            s[32],
            s[64]
        );
    }
    Ok(())
}
