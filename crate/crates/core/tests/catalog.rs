use std::collections::BTreeSet;

use delsarte::arith::lcm;
use delsarte::catalog::{build_atlas, fermat_catalog, AtlasOptions, HeightAtlas};
use delsarte::threefold::validate;
use delsarte::*;

#[test]
fn enumeration_is_deterministic() {
    let a = serde_json::to_string(&enumerate_quasidiagonal_weights(
        QuasiDiagonalRule::default(),
    ))
    .unwrap();
    let b = serde_json::to_string(&enumerate_quasidiagonal_weights(
        QuasiDiagonalRule::default(),
    ))
    .unwrap();
    assert_eq!(a, b);
    let a = serde_json::to_string(&fermat_catalog()).unwrap();
    let b = serde_json::to_string(&fermat_catalog()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn fermat_records_reduce_to_their_weights() {
    for r in fermat_catalog() {
        assert_eq!((r.d_a, r.alpha_a), (r.m, r.weights));
        r.cross_check(1 << 25).unwrap();
    }
}

#[test]
fn quasidiagonal_closed_forms_hold() {
    for r in enumerate_quasidiagonal_weights(QuasiDiagonalRule::default()) {
        let [m0, _, m2, m3, m4] = r.exponents.unwrap();
        let big = [m0, m2, m3, m4].into_iter().fold(1, lcm);
        assert_eq!(r.d_a, big);
        assert_eq!(r.alpha_a[0], big / m0);
        assert_eq!(r.alpha_a.iter().sum::<u64>(), big);
        let x = r.threefold().unwrap();
        assert!(validate(&x, None).is_ok(), "{}", r.key());
        r.cross_check(1 << 25).unwrap();
    }
}

#[test]
fn every_weight_system_is_calabi_yau_and_well_formed() {
    for rule in QuasiDiagonalRule::ALL {
        for r in enumerate_quasidiagonal_weights(rule) {
            let q = r.weight_system();
            assert!(q.is_calabi_yau() && q.is_well_formed(), "{}", r.key());
            let [q0, q1, ..] = r.weights;
            let [m0, m1, m2, m3, m4] = r.exponents.unwrap();
            assert_eq!(q0 * m0 + q1, r.m);
            assert_eq!(
                [
                    q1 * m1,
                    r.weights[2] * m2,
                    r.weights[3] * m3,
                    r.weights[4] * m4
                ],
                [r.m; 4]
            );
            assert!(r.exponents.unwrap().iter().all(|&m| m >= 2));
        }
    }
}

#[test]
fn classification_is_monotone_under_union() {
    let recs = enumerate_quasidiagonal_weights(QuasiDiagonalRule::default());
    let (left, right) = recs.split_at(recs.len() / 3);
    let a = classify_finite_heights(left).unwrap();
    let b = classify_finite_heights(right).unwrap();
    let all = classify_finite_heights(&recs).unwrap();
    let union: BTreeSet<u64> = a.union(&b).copied().collect();
    assert_eq!(all, union);
}

#[test]
fn atlas_round_trip_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let records = enumerate_quasidiagonal_weights(QuasiDiagonalRule::FermatRealizable);
    let atlas = build_atlas(
        "quasidiagonal",
        Some(QuasiDiagonalRule::FermatRealizable),
        records,
        AtlasOptions::default(),
    )
    .unwrap();
    let path = dir.path().join("qd.json");
    catalog::save_atlas(&atlas, &path).unwrap();
    let loaded = catalog::load_atlas(&path).unwrap();
    assert_eq!(loaded, atlas);
    assert!(catalog::atlas_diff(&loaded, &atlas).is_empty());

    let mut tampered = atlas.clone();
    tampered.finite_heights.push(1000);
    assert!(matches!(
        HeightAtlas::from_json(&tampered.to_json()),
        Err(Error::Integrity(_))
    ));

    let mut changed = atlas.clone();
    changed.records.pop();
    let diff = catalog::atlas_diff(&atlas, &changed);
    assert_eq!(diff.only_left.len(), 1);
}
