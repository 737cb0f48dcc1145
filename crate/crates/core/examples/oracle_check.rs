//! Compares the orbit test against direct summation over the character set.
//!
//! For each prime the brute-force side sums `||t alpha||` over the subgroup
//! generated by `p` modulo `d` for every character and counts those below the
//! subgroup order. That count must equal the height when it is finite and be
//! zero otherwise.

use delsarte::character::DEFAULT_CAP;
use delsarte::threefold::validate;
use delsarte::{height, newton_low_slope_count, DelsarteThreefold, Prime, WeightSystem};

fn main() -> delsarte::Result<()> {
    let cases = [
        [1, 1, 1, 1, 1],
        [1, 1, 1, 1, 4],
        [1, 1, 1, 1, 2],
        [1, 1, 2, 2, 2],
    ];
    for w in cases {
        let x = DelsarteThreefold::from_fermat(WeightSystem::calabi_yau(w))?;
        let mut agree = 0;
        for p in (2..200).filter_map(|p| Prime::new(p).ok()) {
            if !validate(&x, Some(p)).is_ok() {
                continue;
            }
            let h = height(&x, p)?.outcome.finite().unwrap_or(0);
            let count = newton_low_slope_count(&x, p, DEFAULT_CAP)?;
            assert_eq!(h, count, "{} at p = {p}", x.weights());
            agree += 1;
        }
        println!("{}: {agree} primes agree", x.weights());
    }
    Ok(())
}
