//! The character set of a Delsarte threefold, the norm grading, the
//! distinguished norm-zero character, and a brute-force count of the
//! slope-below-one part of the Newton polygon.
//!
//! The characters are the `alpha in (Z/d)^5` with no zero entry, zero sum, and
//! `sum_i a_ij alpha_i = 0` for every column `j` of the exponent matrix. Each
//! indexes one summand of the middle cohomology of the Fermat quotient; counts
//! reported here assume every such summand is one-dimensional.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, mul_mod};
use crate::error::{Error, Result};
use crate::linalg::{adjugate, kernel_mod, IntMatrix, KernelGroup};
use crate::threefold::{validate, DelsarteThreefold, Prime};

/// Default limit on the size of an enumerated solution group.
pub const DEFAULT_CAP: u128 = 1 << 25;

/// A character modulo `d`, entries in `[1, d-1]`, entry sum divisible by `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacterVector {
    entries: [u64; 5],
    modulus: u64,
}

impl CharacterVector {
    pub fn new(entries: [u64; 5], modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::Domain(format!(
                "modulus {modulus} must be at least 2"
            )));
        }
        let entries = entries.map(|e| e % modulus);
        if entries.contains(&0) {
            return Err(Error::Domain(format!(
                "{entries:?} has an entry divisible by {modulus}"
            )));
        }
        let sum: u64 = entries.iter().sum();
        if !sum.is_multiple_of(modulus) {
            return Err(Error::Domain(format!(
                "entries of {entries:?} do not sum to 0 mod {modulus}"
            )));
        }
        Ok(CharacterVector { entries, modulus })
    }

    pub fn entries(&self) -> [u64; 5] {
        self.entries
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `sum <alpha_i / d> - 1`, one of 0, 1, 2, 3.
    pub fn norm(&self) -> u32 {
        norm_of(&self.entries, self.modulus)
    }

    /// `t * alpha` for a unit `t`.
    pub fn scale(&self, t: u64) -> CharacterVector {
        debug_assert_eq!(gcd(t % self.modulus, self.modulus), 1);
        CharacterVector {
            entries: self.entries.map(|e| mul_mod(e, t, self.modulus)),
            modulus: self.modulus,
        }
    }

    pub fn neg(&self) -> CharacterVector {
        CharacterVector {
            entries: self.entries.map(|e| self.modulus - e),
            modulus: self.modulus,
        }
    }
}

/// Norm of a residue vector whose entries are all nonzero mod `d` and sum to 0 mod `d`.
pub(crate) fn norm_of(entries: &[u64; 5], d: u64) -> u32 {
    let s: u64 = entries.iter().map(|e| e % d).sum();
    debug_assert_eq!(s % d, 0);
    (s / d - 1) as u32
}

/// Membership counts of a character set by norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharSetSummary {
    pub modulus: u64,
    pub count: u64,
    pub graded_counts: [u64; 4],
}

/// The character set of a threefold, held as its ambient solution group and
/// streamed on demand.
#[derive(Clone, Debug)]
pub struct CharSet {
    group: KernelGroup,
}

impl CharSet {
    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    /// Order of the solution group the members are filtered from.
    pub fn lattice_order(&self) -> u128 {
        self.group.order()
    }

    pub fn members(&self) -> impl Iterator<Item = CharacterVector> + '_ {
        let d = self.group.modulus;
        self.group.iter().filter_map(move |v| member(&v, d))
    }

    /// Counts by norm, splitting the walk over threads.
    pub fn summary(&self) -> CharSetSummary {
        let d = self.group.modulus;
        let top = self.group.generators.last().map_or(1, |g| g.order);
        let parts = (rayon::current_num_threads() as u64 * 4).clamp(1, top);
        let graded = (0..parts)
            .into_par_iter()
            .map(|s| {
                let mut g = [0u64; 4];
                for v in self.group.iter_slice(s, parts) {
                    if let Some(a) = member(&v, d) {
                        g[a.norm() as usize] += 1;
                    }
                }
                g
            })
            .reduce(
                || [0; 4],
                |a, b| [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]],
            );
        CharSetSummary {
            modulus: d,
            count: graded.iter().sum(),
            graded_counts: graded,
        }
    }

    /// All members with norm zero.
    pub fn norm_zero_members(&self) -> Vec<CharacterVector> {
        let d = self.group.modulus;
        let top = self.group.generators.last().map_or(1, |g| g.order);
        let parts = (rayon::current_num_threads() as u64 * 4).clamp(1, top);
        let mut found: Vec<CharacterVector> = (0..parts)
            .into_par_iter()
            .flat_map_iter(|s| {
                self.group.iter_slice(s, parts).filter_map(move |v| {
                    let sum: u64 = v.iter().sum();
                    (sum == d && !v.contains(&0))
                        .then(|| member(&v, d))
                        .flatten()
                })
            })
            .collect();
        found.sort_unstable();
        found
    }
}

fn member(v: &[u64], d: u64) -> Option<CharacterVector> {
    if v.contains(&0) {
        return None;
    }
    let entries: [u64; 5] = v.try_into().ok()?;
    let sum: u64 = entries.iter().sum();
    sum.is_multiple_of(d).then_some(CharacterVector {
        entries,
        modulus: d,
    })
}

/// Congruence system cutting out the character set: the transpose of the
/// exponent matrix with an all-ones row for the zero-sum condition.
fn character_system(x: &DelsarteThreefold) -> Result<IntMatrix> {
    let ones = IntMatrix::from_rows(&[[1i64; 5]])?;
    x.matrix().transpose().stack(&ones)
}

/// Solution group of the character congruences, checked against `cap`.
pub fn enumerate_aset(x: &DelsarteThreefold, cap: u128) -> Result<CharSet> {
    let d = x.d()?;
    let group = kernel_mod(&character_system(x)?, d)?;
    let predicted = group.order();
    if predicted > cap {
        return Err(Error::Resource { predicted, cap });
    }
    Ok(CharSet { group })
}

/// The unique norm-zero character.
///
/// When the solution group fits under `cap` every member is scanned and
/// uniqueness is checked. Past the cap the character is read off from
/// `A^T w = (1,..,1)`, `alpha = d w`, and only its membership is checked.
pub fn find_alpha0_with_cap(x: &DelsarteThreefold, cap: u128) -> Result<CharacterVector> {
    if !x.weights().is_calabi_yau() {
        return Err(not_cy(format!(
            "weights {} do not sum to the degree",
            x.weights()
        )));
    }
    let d = x.d()?;
    let set = match enumerate_aset(x, cap) {
        Ok(set) => set,
        Err(Error::Resource { .. }) => return alpha0_from_inverse(x, d),
        Err(e) => return Err(e),
    };
    let zeros = set.norm_zero_members();
    match zeros.as_slice() {
        [a] => Ok(*a),
        [] => Err(not_cy("no character of norm 0".into())),
        many => Err(not_cy(format!("{} characters of norm 0", many.len()))),
    }
}

pub fn find_alpha0(x: &DelsarteThreefold) -> Result<CharacterVector> {
    find_alpha0_with_cap(x, DEFAULT_CAP)
}

fn not_cy(detail: String) -> Error {
    Error::Integrity(format!(
        "input is not a Calabi-Yau Delsarte threefold: {detail}"
    ))
}

fn alpha0_from_inverse(x: &DelsarteThreefold, d: u64) -> Result<CharacterVector> {
    let at = x.matrix().transpose();
    let adj = adjugate(&at)?;
    let det = x.det();
    let dd = BigInt::from(d);
    let mut entries = [0u64; 5];
    for (i, e) in entries.iter_mut().enumerate() {
        // d * (adj(A^T) * 1)_i / det
        let row_sum: BigInt = adj.row(i).iter().sum();
        let scaled = row_sum * &dd;
        if !(&scaled % det).is_zero() {
            return Err(not_cy("inverse-transpose solution is not integral".into()));
        }
        let v = (scaled / det).mod_floor(&dd);
        *e = v.to_u64().expect("reduced below d");
    }
    let a = CharacterVector::new(entries, d).map_err(|e| not_cy(e.to_string()))?;
    let check = x.matrix().transpose();
    for j in 0..5 {
        let s: BigInt = check.row(j).iter().zip(&entries).map(|(c, &v)| c * v).sum();
        if !(s.abs() % &dd).is_zero() {
            return Err(not_cy(format!("column {j} congruence fails")));
        }
    }
    if a.norm() != 0 {
        return Err(not_cy("inverse-transpose solution has nonzero norm".into()));
    }
    Ok(a)
}

/// Cyclic subgroup generated by `t` in the units mod `n`, built by repeated
/// multiplication.
pub fn cyclic_subgroup(t: u64, n: u64) -> Result<Vec<u64>> {
    if n < 2 || gcd(t % n, n) != 1 {
        return Err(Error::Domain(format!("{t} is not a unit modulo {n}")));
    }
    let mut h = vec![1 % n];
    let mut x = t % n;
    while x != 1 % n {
        h.push(x);
        x = mul_mod(x, t, n);
    }
    Ok(h)
}

/// `A_H(alpha) = sum over t in <p> of ||t alpha||`.
pub fn ah_bruteforce(a: &CharacterVector, p_class: u64) -> Result<u64> {
    let h = cyclic_subgroup(p_class, a.modulus)?;
    Ok(h.iter().map(|&t| a.scale(t).norm() as u64).sum())
}

/// Number of characters with `A_H(alpha) < f`, `f` the order of `p` mod `d`:
/// the length of the slope-below-one part of the Newton polygon.
pub fn newton_low_slope_count(x: &DelsarteThreefold, p: Prime, cap: u128) -> Result<u64> {
    validate(x, Some(p)).into_result()?;
    let set = enumerate_aset(x, cap)?;
    let d = set.modulus();
    let h = cyclic_subgroup(p.get(), d)?;
    let f = h.len() as u64;
    // A_H is constant on H-orbits; each orbit is summed once.
    let mut seen: HashSet<CharacterVector> = HashSet::new();
    let mut count = 0u64;
    for a in set.members() {
        if seen.contains(&a) {
            continue;
        }
        let orbit: Vec<CharacterVector> = h.iter().map(|&t| a.scale(t)).collect();
        let total: u64 = orbit.iter().map(|b| b.norm() as u64).sum();
        let distinct: HashSet<CharacterVector> = orbit.into_iter().collect();
        if total < f {
            count += distinct.len() as u64;
        }
        seen.extend(distinct);
    }
    Ok(count)
}
