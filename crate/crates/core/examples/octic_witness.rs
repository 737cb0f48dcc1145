//! The octic in P(1,1,1,1,4): the class 5 mod 8 has infinite height even
//! though its orbit never reaches -1. The witness shows where the walk fails.

use delsarte::arith::pow_mod;
use delsarte::height::{height_class, height_class_fast, Witness};
use delsarte::{find_alpha0, reduce_alpha0, DelsarteThreefold, WeightSystem};

fn main() -> delsarte::Result<()> {
    let x = DelsarteThreefold::from_fermat(WeightSystem::calabi_yau([1, 1, 1, 1, 4]))?;
    let a0 = find_alpha0(&x)?;
    let rc = reduce_alpha0(&a0)?;
    println!("alpha_0 = {:?} mod {}", a0.entries(), a0.modulus());
    println!("e = {}, d_A = {}, alpha_A = {:?}", rc.e, rc.d_a, rc.alpha_a);

    for t in [1, 3, 5, 7] {
        let r = height_class(t, &rc)?;
        assert_eq!(r, height_class_fast(t, &rc)?);
        let reaches_minus_one = (0..4).any(|i| pow_mod(t, i, rc.d_a) == rc.d_a - 1);
        match r.witness {
            Witness::Norms(n) => println!("t = {t}: height {} (norms {n:?})", r.outcome),
            Witness::Failure { index, norm } => println!(
                "t = {t}: infinite, ||t^{index} alpha_A|| = {norm}, orbit reaches -1: {reaches_minus_one}"
            ),
        }
    }
    Ok(())
}
