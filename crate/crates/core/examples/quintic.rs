//! Heights of the Fermat quintic across small primes, next to the brute-force
//! slope count over the whole character set.
//!
//! ```text
//! cargo run --example quintic
//! ```

use delsarte::character::DEFAULT_CAP;
use delsarte::{
    enumerate_aset, height, newton_low_slope_count, DelsarteThreefold, Prime, WeightSystem,
};

fn main() -> delsarte::Result<()> {
    let x = DelsarteThreefold::from_fermat(WeightSystem::calabi_yau([1; 5]))?;
    let summary = enumerate_aset(&x, DEFAULT_CAP)?.summary();
    println!(
        "character set: {} members, by norm {:?}",
        summary.count, summary.graded_counts
    );

    println!("{:>4}  {:>6}  {:>5}", "p", "height", "slope");
    for p in (2..120)
        .filter_map(|p| Prime::new(p).ok())
        .filter(|p| p.get() != 5)
    {
        let h = height(&x, p)?.outcome;
        let low = newton_low_slope_count(&x, p, DEFAULT_CAP)?;
        println!("{:>4}  {:>6}  {:>5}", p, h.to_string(), low);
    }
    Ok(())
}
