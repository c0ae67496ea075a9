//! Arc frames, chord ratios and the log/smooth split of the Helmholtz kernel.

use arcscatter::geometry::Arc;
use arcscatter::special::{bessel01, kernel_split};

fn main() -> arcscatter::Result<()> {
    let arcs = [
        Arc::unit_flat(),
        Arc::circular(1.0, 2.0)?,
        Arc::perturbed(0.2, 2)?,
    ];
    for arc in &arcs {
        println!("{arc:?}");
        for t in [-1.0, -0.5, 0.0, 0.5, 1.0] {
            let p = arc.evaluate(t)?;
            println!(
                "  t={t:+.1}  r=({:+.4}, {:+.4})  tau={:.4}  n=({:+.4}, {:+.4})",
                p.point[0], p.point[1], p.speed, p.normal[0], p.normal[1]
            );
        }
        println!("  chord ratio at (0.3, -0.2): {:.6}", arc.chord_ratio(0.3, -0.2)?);
    }

    let [j0, j1, y0, y1] = bessel01(2.5);
    println!("\nJ0 J1 Y0 Y1 at 2.5: {j0:.12} {j1:.12} {y0:.12} {y1:.12}");

    let arc = Arc::perturbed(0.2, 2)?;
    let k = 5.0;
    println!("\nkernel split on {arc:?}, k = {k}, t = 0.1");
    for t2 in [0.6, 0.2, 0.11, 0.1001] {
        let v = kernel_split(&arc, k, 0.1, t2)?;
        let back = v.log_coefficient * (0.1f64 - t2).abs().ln() + v.smooth_part;
        println!(
            "  t2={t2:<7} G={:.10}  smooth={:.8}  reassembly error {:.1e}",
            v.value,
            v.smooth_part,
            (back - v.value).norm()
        );
    }
    Ok(())
}
