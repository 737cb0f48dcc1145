//! Exact integer linear algebra behind the character set: determinant,
//! Smith normal form and the solution group of `M x = 0 (mod n)`.

use delsarte::linalg::{adjugate, determinant, kernel_mod, smith_normal_form, IntMatrix};

fn main() -> delsarte::Result<()> {
    let a = IntMatrix::from_rows(&[
        [83i64, 1, 0, 0, 0],
        [0, 84, 0, 0, 0],
        [0, 0, 7, 0, 0],
        [0, 0, 0, 3, 0],
        [0, 0, 0, 0, 2],
    ])?;
    let det = determinant(&a)?;
    println!("det = {det}");

    let snf = smith_normal_form(&a);
    println!("invariant factors: {:?}", snf.diag);
    let check = snf.left.mul(&a)?.mul(&snf.right)?;
    assert_eq!(check, snf.diagonal_matrix());

    let adj = adjugate(&a)?;
    let scaled = a.mul(&adj)?;
    println!(
        "A adj(A) = det * I: {}",
        scaled == IntMatrix::identity(5).scale(&det)
    );

    // characters: transpose of A with the zero-sum row, modulo |det A|
    let ones = IntMatrix::from_rows(&[[1i64; 5]])?;
    let system = a.transpose().stack(&ones)?;
    let d: u64 = det.to_string().parse().expect("det fits u64");
    let group = kernel_mod(&system, d)?;
    println!("solution group mod {d} has order {}", group.order());
    for g in &group.generators {
        println!("  generator {:?} of order {}", g.vector, g.order);
    }
    let nonzero = group.iter().filter(|v| !v.contains(&0)).count();
    println!("{nonzero} solutions have no zero entry");
    Ok(())
}
