//! The flat-arc operators in the cosine basis: Symm's diagonal, the closed-form
//! Calderon operator J0 and its inverse.

use arcscatter::canonical::{j0_closed_form, j0_inverse, j0_product, n0_matrix, symm_eigenvalue, w0_matrix, OperatorMatrix};
use arcscatter::linalg::max_abs_diff_block;

fn main() -> arcscatter::Result<()> {
    println!("Symm eigenvalues: {:?}", (0..6).map(symm_eigenvalue).collect::<Vec<_>>());

    let n = 8;
    let j = j0_closed_form(n)?;
    println!("\nJ0 ({n} x {n}, upper triangular):");
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|c| format!("{:+.4}", j.entries[(i, c)].re)).collect();
        println!("  {}", row.join(" "));
    }

    let n = 128;
    let closed = j0_closed_form(n)?;
    let cols = n - 2;
    println!("\nN = {n}, first N-2 columns:");
    println!(
        "  |D0 S0 T0 S0 - J0| = {:.2e}",
        max_abs_diff_block(&j0_product(n)?.entries, &closed.entries, n, cols)
    );
    println!(
        "  |W0 - J0|          = {:.2e}",
        max_abs_diff_block(&w0_matrix(n)?.entries, &closed.entries, n, cols)
    );
    let id = OperatorMatrix::identity(n);
    let inv = j0_inverse(n)?;
    println!(
        "  |I0 J0 - I|        = {:.2e}",
        max_abs_diff_block(&inv.compose(&closed).entries, &id.entries, cols, cols)
    );
    let n0 = n0_matrix(n)?;
    println!("  N0 e1 = {:+.3} e1, N0 e2 = {:+.3} e0 {:+.3} e2", n0.entries[(1, 1)].re, n0.entries[(0, 2)].re, n0.entries[(2, 2)].re);
    Ok(())
}
