//! x0^83 x1 + x1^84 + x2^7 + x3^3 + x4^2 in P(1,1,12,28,42).
//!
//! Height 82 occurs here, far above min(h11, h12) + 1 = 12, so this threefold
//! has no mirror obtained as a quotient by a symplectic group.

use delsarte::height::Height;
use delsarte::threefold::validate;
use delsarte::{
    find_alpha0, height, mirror_obstruction_flag, reduce_alpha0, spectrum, DelsarteThreefold,
    Prime, WeightSystem,
};

fn main() -> delsarte::Result<()> {
    let q = WeightSystem::calabi_yau([1, 1, 12, 28, 42]);
    let x = DelsarteThreefold::from_quasidiagonal(q, [83, 84, 7, 3, 2])?;
    validate(&x, None).into_result()?;
    println!("{} with det A = {}", x.weights(), x.det());

    let rc = reduce_alpha0(&find_alpha0(&x)?)?;
    println!("e = {}, d_A = {}, alpha_A = {:?}", rc.e, rc.d_a, rc.alpha_a);

    let s = spectrum(&rc);
    for (h, g) in &s.grouped {
        println!(
            "  height {:>3}: {:>3} classes, e.g. {:?}",
            h.to_string(),
            g.count,
            g.representatives
        );
    }

    let p = Prime::new(43)?;
    let r = height(&x, p)?;
    println!("p = {p}: height {}", r.outcome);
    let (h11, h12) = (11, 491);
    if mirror_obstruction_flag(r.outcome, h11, h12) {
        println!("height exceeds min({h11}, {h12}) + 1: no symplectic quotient mirror");
    }
    assert_eq!(r.outcome, Height::Finite(82));
    Ok(())
}
