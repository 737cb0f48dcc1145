use std::collections::BTreeSet;

use delsarte::arith::{gcd, mul_mod, multiplicative_order};
use delsarte::character::{ah_bruteforce, cyclic_subgroup, CharacterVector, DEFAULT_CAP};
use delsarte::height::{height_class, height_class_fast, Height, Witness};
use delsarte::linalg::{adjugate, determinant, kernel_mod, smith_normal_form, IntMatrix};
use delsarte::threefold::validate;
use delsarte::*;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn laplace(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 1 {
        return m[0][0] as i128;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] as i128 * laplace(&minor)
        })
        .sum()
}

fn matrix(rows: usize, cols: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(lo..=hi, cols), rows)
}

fn fermat(w: [u64; 5]) -> DelsarteThreefold {
    DelsarteThreefold::from_fermat(WeightSystem::calabi_yau(w)).unwrap()
}

proptest! {
    #[test]
    fn determinant_matches_cofactor_expansion(m in matrix(4, 4, -9, 9)) {
        let a = IntMatrix::from_rows(&m).unwrap();
        prop_assert_eq!(determinant(&a).unwrap(), BigInt::from(laplace(&m)));
        let adj = adjugate(&a).unwrap();
        let det = determinant(&a).unwrap();
        prop_assert_eq!(a.mul(&adj).unwrap(), IntMatrix::identity(4).scale(&det));
    }

    #[test]
    fn smith_form_invariants(rows in 1usize..5, cols in 1usize..5, seed in matrix(4, 4, -12, 12)) {
        let m: Vec<Vec<i64>> = seed[..rows].iter().map(|r| r[..cols].to_vec()).collect();
        let a = IntMatrix::from_rows(&m).unwrap();
        let snf = smith_normal_form(&a);
        prop_assert_eq!(snf.left.mul(&a).unwrap().mul(&snf.right).unwrap(), snf.diagonal_matrix());
        prop_assert!(determinant(&snf.left).unwrap().abs().is_one());
        prop_assert!(determinant(&snf.right).unwrap().abs().is_one());
        for w in snf.diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        if rows == cols {
            let prod: BigInt = snf.diag.iter().product();
            prop_assert_eq!(prod, determinant(&a).unwrap().abs());
        }
    }

    #[test]
    fn kernel_matches_brute_force(rows in 1usize..4, cols in 1usize..4, n in 2u64..31, seed in matrix(3, 3, -10, 10)) {
        let m: Vec<Vec<i64>> = seed[..rows].iter().map(|r| r[..cols].to_vec()).collect();
        let a = IntMatrix::from_rows(&m).unwrap();
        let group = kernel_mod(&a, n).unwrap();
        let listed: BTreeSet<Vec<u64>> = group.iter().collect();
        prop_assert_eq!(listed.len() as u128, group.order());

        let mut brute = BTreeSet::new();
        let total = n.pow(cols as u32);
        for code in 0..total {
            let mut x = vec![0u64; cols];
            let mut c = code;
            for xi in x.iter_mut() {
                *xi = c % n;
                c /= n;
            }
            let ok = m.iter().all(|row| {
                let s: i64 = row.iter().zip(&x).map(|(&a, &v)| a * v as i64).sum();
                s.rem_euclid(n as i64) == 0
            });
            if ok {
                brute.insert(x);
            }
        }
        prop_assert_eq!(listed, brute);
    }

    #[test]
    fn norm_symmetry(d in 2u64..500, raw in proptest::collection::vec(1u64..10_000, 4)) {
        let mut e = [0u64; 5];
        for (ei, r) in e.iter_mut().zip(&raw) {
            *ei = 1 + r % (d - 1).max(1);
        }
        let s: u64 = e[..4].iter().sum();
        e[4] = (d - s % d) % d;
        prop_assume!(e.iter().all(|&v| v % d != 0));
        let a = CharacterVector::new(e, d).unwrap();
        prop_assert!(a.norm() <= 3);
        prop_assert_eq!(a.neg().norm(), 3 - a.norm());
    }

    #[test]
    fn fast_path_matches_walk(d in 5u64..5000, cuts in proptest::collection::btree_set(1u64..5000, 4), t in 1u64..5000) {
        let c: Vec<u64> = cuts.into_iter().map(|x| x % d).collect::<BTreeSet<_>>().into_iter().filter(|&x| x > 0).collect();
        prop_assume!(c.len() == 4 && gcd(t % d, d) == 1);
        let a = [c[0], c[1] - c[0], c[2] - c[1], c[3] - c[2], d - c[3]];
        let Ok(rc) = ReducedCharacter::from_parts(1, d, a) else { return Ok(()) };
        let walk = height_class(t, &rc).unwrap();
        prop_assert_eq!(&walk, &height_class_fast(t, &rc).unwrap());
        if t % d == 1 {
            prop_assert_eq!(walk.outcome, Height::Finite(1));
        }
        if cyclic_subgroup(t % d, d).unwrap().contains(&(d - 1)) {
            prop_assert_eq!(walk.outcome, Height::Infinite);
        }
        match walk.witness {
            Witness::Norms(n) => {
                prop_assert_eq!(n[0], 0);
                prop_assert!(n[1..].iter().all(|&v| v == 1));
                prop_assert_eq!(Height::Finite(n.len() as u64), walk.outcome);
            }
            Witness::Failure { norm, .. } => prop_assert!(norm >= 2),
        }
    }
}

#[test]
fn unit_closure_on_small_fermat_sets() {
    for w in [
        [1, 1, 1, 1, 1],
        [1, 1, 1, 1, 4],
        [1, 1, 1, 1, 2],
        [1, 1, 2, 2, 2],
        [1, 1, 1, 3, 3],
    ] {
        let x = fermat(w);
        let set = enumerate_aset(&x, DEFAULT_CAP).unwrap();
        let members: BTreeSet<CharacterVector> = set.members().collect();
        let d = set.modulus();
        for t in [2u64, 3, 7, 11, 13, 97, d - 1] {
            if gcd(t, d) != 1 {
                continue;
            }
            for a in &members {
                assert!(members.contains(&a.scale(t)), "{w:?} t={t}");
            }
        }
    }
}

#[test]
fn low_slope_set_is_the_orbit_of_alpha0() {
    for w in [[1, 1, 1, 1, 1], [1, 1, 1, 1, 4]] {
        let x = fermat(w);
        let set = enumerate_aset(&x, DEFAULT_CAP).unwrap();
        let a0 = find_alpha0(&x).unwrap();
        let d = set.modulus();
        for p in (2..100).filter_map(|p| Prime::new(p).ok()) {
            if !validate(&x, Some(p)).is_ok() {
                continue;
            }
            let h = cyclic_subgroup(p.get(), d).unwrap();
            let f = h.len() as u64;
            let low: BTreeSet<CharacterVector> = set
                .members()
                .filter(|a| ah_bruteforce(a, p.get()).unwrap() < f)
                .collect();
            let orbit: BTreeSet<CharacterVector> = h.iter().map(|&t| a0.scale(t)).collect();
            assert!(low.is_empty() || low == orbit, "{w:?} p={p}");
            assert_eq!(
                low.is_empty(),
                height(&x, p).unwrap().outcome == Height::Infinite
            );
        }
    }
}

#[test]
fn full_and_reduced_norms_agree() {
    let qd = DelsarteThreefold::from_quasidiagonal(
        WeightSystem::calabi_yau([1, 1, 12, 28, 42]),
        [83, 84, 7, 3, 2],
    )
    .unwrap();
    let family = [
        fermat([1; 5]),
        fermat([1, 1, 1, 1, 4]),
        fermat([2, 21, 138, 322, 483]),
        qd,
    ];
    for x in &family {
        let a0 = find_alpha0(x).unwrap();
        let rc = reduce_alpha0(&a0).unwrap();
        for p in [7u64, 11, 13, 17, 43, 101, 211] {
            if gcd(p, a0.modulus()) != 1 {
                continue;
            }
            let fa = multiplicative_order(p, rc.d_a).unwrap();
            let mut s = 1u64;
            for _ in 0..fa {
                assert_eq!(a0.scale(s).norm(), rc.norm_at(s));
                s = mul_mod(s, p, a0.modulus());
            }
        }
    }
}

#[test]
fn height_depends_only_on_residue_class() {
    let x = fermat([1, 1, 1, 1, 4]);
    let rc = reduce_alpha0(&find_alpha0(&x).unwrap()).unwrap();
    for p in (3..2000).filter_map(|p| Prime::new(p).ok()) {
        let r = height(&x, p).unwrap();
        assert_eq!(r, height_class(p.get() % rc.d_a, &rc).unwrap());
    }
}

#[test]
fn spectrum_partitions_the_units() {
    for r in catalog::fermat_catalog() {
        let s = spectrum(&r.reduced().unwrap());
        let total: u64 = s.grouped.values().map(|g| g.count).sum();
        assert_eq!(total, arith::euler_phi(r.d_a));
        assert_eq!(s.phi(), total);
    }
}
