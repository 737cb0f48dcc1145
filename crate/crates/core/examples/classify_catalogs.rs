//! Enumerates both weight catalogs and collects every finite height that
//! occurs in some characteristic.
//!
//! For the quasi-diagonal family each collapsing rule is reported separately,
//! together with the catalog size it produces.

use delsarte::catalog::fermat_catalog;
use delsarte::{classify_finite_heights, enumerate_quasidiagonal_weights, QuasiDiagonalRule};

fn main() -> delsarte::Result<()> {
    let fermat = fermat_catalog();
    let heights = classify_finite_heights(&fermat)?;
    println!(
        "fermat: {} weight systems, max degree {}",
        fermat.len(),
        fermat.iter().map(|r| r.m).max().unwrap_or(0)
    );
    println!("  finite heights {heights:?}");

    for rule in QuasiDiagonalRule::ALL {
        let records = enumerate_quasidiagonal_weights(rule);
        let heights = classify_finite_heights(&records)?;
        println!("quasidiagonal ({rule}): {} entries", records.len());
        println!("  finite heights {heights:?}");
    }

    // which entries are responsible for each height under the default rule
    let records = enumerate_quasidiagonal_weights(QuasiDiagonalRule::default());
    for h in [36, 46, 82] {
        let carriers: Vec<String> = records
            .iter()
            .filter(|r| {
                classify_finite_heights(std::slice::from_ref(*r)).is_ok_and(|s| s.contains(&h))
            })
            .map(|r| r.key())
            .collect();
        println!("height {h}: {carriers:?}");
    }
    Ok(())
}
