//! The Fermat threefold of largest degree, weights (1,42,258,602,903).
//!
//! Prints the grouped height spectrum over the 504 unit classes mod 1806 and
//! the JSON form stored in atlases.

use delsarte::height::Height;
use delsarte::{find_alpha0, reduce_alpha0, spectrum, DelsarteThreefold, WeightSystem};

fn main() -> delsarte::Result<()> {
    let x = DelsarteThreefold::from_fermat(WeightSystem::calabi_yau([1, 42, 258, 602, 903]))?;
    let rc = reduce_alpha0(&find_alpha0(&x)?)?;
    let s = spectrum(&rc);

    println!("d_A = {}, {} unit classes", s.d_a, s.phi());
    for (h, g) in &s.grouped {
        println!(
            "{:>4}: {:>3} classes, first {:?}",
            h.to_string(),
            g.count,
            g.representatives
        );
    }
    let longest = s.classes_with_height(Height::Finite(42));
    println!("all classes of height 42: {longest:?}");
    println!(
        "{}",
        serde_json::to_string(&s.summary()).expect("summary serializes")
    );
    Ok(())
}
