//! Chain and loop polynomials through the general path.
//!
//! For each shape this searches small weight vectors whose rows all reach the
//! Calabi-Yau degree with exponents at least 2, then reports the finite
//! heights found over all unit classes.

use std::collections::BTreeSet;

use delsarte::threefold::validate;
use delsarte::{find_alpha0, reduce_alpha0, spectrum, ChainShape, DelsarteThreefold, WeightSystem};

const MAX_WEIGHT: u64 = 10;
const PER_SHAPE: usize = 4;

fn exponents_for(shape: ChainShape, q: &WeightSystem) -> Option<[u64; 5]> {
    let mut e = [0u64; 5];
    for (i, ei) in e.iter_mut().enumerate() {
        let linear: u64 = shape
            .couplings()
            .iter()
            .filter(|&&(r, _)| r == i)
            .map(|&(_, c)| q.weights[c])
            .sum();
        let rest = q.degree.checked_sub(linear)?;
        if rest % q.weights[i] != 0 || rest / q.weights[i] < 2 {
            return None;
        }
        *ei = rest / q.weights[i];
    }
    Some(e)
}

/// Weight vectors up to `MAX_WEIGHT`; the last two positions are never
/// coupled, so they are taken nondecreasing.
fn weight_vectors() -> Vec<[u64; 5]> {
    let mut out = Vec::new();
    for a in 1..=MAX_WEIGHT {
        for b in 1..=MAX_WEIGHT {
            for c in 1..=MAX_WEIGHT {
                for d in 1..=MAX_WEIGHT {
                    for e in d..=MAX_WEIGHT {
                        out.push([a, b, c, d, e]);
                    }
                }
            }
        }
    }
    out.sort_by_key(|w| (w.iter().sum::<u64>(), *w));
    out
}

fn main() -> delsarte::Result<()> {
    for shape in ChainShape::ALL {
        let mut found = 0;
        let mut heights = BTreeSet::new();
        println!("{}", shape.tag());
        for w in weight_vectors() {
            let q = WeightSystem::calabi_yau(w);
            if !q.is_well_formed() {
                continue;
            }
            let Some(e) = exponents_for(shape, &q) else {
                continue;
            };
            let x = DelsarteThreefold::from_chain(q, shape, e)?;
            if !validate(&x, None).is_ok() {
                continue;
            }
            let rc = reduce_alpha0(&find_alpha0(&x)?)?;
            let finite = spectrum(&rc).finite_heights();
            println!(
                "  {q} exponents {e:?}: d_A = {}, finite heights {finite:?}",
                rc.d_a
            );
            heights.extend(finite);
            found += 1;
            if found == PER_SHAPE {
                break;
            }
        }
        println!("  union: {heights:?}");
    }
    Ok(())
}
