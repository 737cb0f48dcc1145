//! Height of the formal group: reduce the norm-zero character to its primitive
//! form modulo `d_A`, then walk the orbit of `p` on it.
//!
//! The height is `f_A = ord(p mod d_A)` when every orbit element past the
//! first has norm exactly 1, and infinite otherwise.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

pub use crate::arith::multiplicative_order;
use crate::arith::{gcd, mul_mod, pow_mod};
use crate::character::{find_alpha0, norm_of, CharacterVector};
use crate::error::{Error, Result};
use crate::threefold::{validate, DelsarteThreefold, Prime};

/// `alpha_0 / e` modulo `d / e`, with `e` the gcd of the entries of `alpha_0` and `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedCharacter {
    pub e: u64,
    #[serde(rename = "d_A")]
    pub d_a: u64,
    #[serde(rename = "alpha_A")]
    pub alpha_a: [u64; 5],
}

impl ReducedCharacter {
    /// Builds a reduced character directly, checking primitivity and norm zero.
    pub fn from_parts(e: u64, d_a: u64, alpha_a: [u64; 5]) -> Result<Self> {
        if d_a < 3 {
            return Err(Error::Domain(format!("d_A = {d_a} must be at least 3")));
        }
        if alpha_a.iter().any(|&a| a == 0 || a >= d_a) {
            return Err(Error::Domain(format!(
                "{alpha_a:?} has entries outside [1, {}]",
                d_a - 1
            )));
        }
        if alpha_a.iter().sum::<u64>() != d_a {
            return Err(Error::Domain(format!("{alpha_a:?} does not sum to {d_a}")));
        }
        if alpha_a.iter().fold(d_a, |g, &a| gcd(g, a)) != 1 {
            return Err(Error::Domain(format!(
                "{alpha_a:?} is not primitive modulo {d_a}"
            )));
        }
        Ok(ReducedCharacter { e, d_a, alpha_a })
    }

    /// Norm of `t * alpha_A` modulo `d_A`.
    pub fn norm_at(&self, t: u64) -> u32 {
        let v = self.alpha_a.map(|a| mul_mod(a, t, self.d_a));
        norm_of(&v, self.d_a)
    }
}

pub fn reduce_alpha0(a0: &CharacterVector) -> Result<ReducedCharacter> {
    if a0.norm() != 0 {
        return Err(Error::Domain(format!(
            "{:?} has norm {}, expected 0",
            a0.entries(),
            a0.norm()
        )));
    }
    let d = a0.modulus();
    let e = a0.entries().iter().fold(d, |g, &a| gcd(g, a));
    ReducedCharacter::from_parts(e, d / e, a0.entries().map(|a| a / e))
}

/// A height value; finite heights order below the infinite one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Height {
    Finite(u64),
    Infinite,
}

impl Height {
    pub fn finite(self) -> Option<u64> {
        match self {
            Height::Finite(h) => Some(h),
            Height::Infinite => None,
        }
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(h) => write!(f, "{h}"),
            Height::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Height {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Height::Finite(h) => s.serialize_u64(*h),
            Height::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Height {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(h) if h > 0 => Ok(Height::Finite(h)),
            Raw::Int(h) => Err(de::Error::custom(format!("height {h} must be positive"))),
            Raw::Str(s) if s == "inf" => Ok(Height::Infinite),
            Raw::Str(s) => Err(de::Error::custom(format!("unknown height {s:?}"))),
        }
    }
}

/// Evidence behind a height verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Norms of `p^i alpha_A` for `0 <= i < f_A`.
    Norms(Vec<u32>),
    /// First orbit index whose norm exceeds 1.
    Failure { index: u64, norm: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightResult {
    pub outcome: Height,
    pub witness: Witness,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WitnessDoc {
    Norms { norms: Vec<u32> },
    Failure { index: u64, norm: u32 },
}

#[derive(Serialize, Deserialize)]
struct HeightResultDoc {
    outcome: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    h: Option<u64>,
    witness: WitnessDoc,
}

impl Serialize for HeightResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let witness = match &self.witness {
            Witness::Norms(n) => WitnessDoc::Norms { norms: n.clone() },
            Witness::Failure { index, norm } => WitnessDoc::Failure {
                index: *index,
                norm: *norm,
            },
        };
        let doc = HeightResultDoc {
            outcome: match self.outcome {
                Height::Finite(_) => "finite".into(),
                Height::Infinite => "infinite".into(),
            },
            h: self.outcome.finite(),
            witness,
        };
        doc.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HeightResult {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = HeightResultDoc::deserialize(d)?;
        let outcome = match (doc.outcome.as_str(), doc.h) {
            ("finite", Some(h)) => Height::Finite(h),
            ("infinite", None) => Height::Infinite,
            (o, h) => {
                return Err(de::Error::custom(format!(
                    "inconsistent outcome {o:?} with h {h:?}"
                )))
            }
        };
        let witness = match doc.witness {
            WitnessDoc::Norms { norms } => Witness::Norms(norms),
            WitnessDoc::Failure { index, norm } => Witness::Failure { index, norm },
        };
        Ok(HeightResult { outcome, witness })
    }
}

fn check_unit(t: u64, rc: &ReducedCharacter) -> Result<u64> {
    let t = t % rc.d_a;
    if gcd(t, rc.d_a) != 1 {
        return Err(Error::Domain(format!(
            "{t} is not a unit modulo {}",
            rc.d_a
        )));
    }
    Ok(t)
}

/// Walks `t^i alpha_A` for `i < ord(t)`, stopping at the first norm above 1.
pub fn height_class(t: u64, rc: &ReducedCharacter) -> Result<HeightResult> {
    let t = check_unit(t, rc)?;
    let f = multiplicative_order(t, rc.d_a)?;
    Ok(orbit_walk(t, f, rc))
}

fn orbit_walk(t: u64, f: u64, rc: &ReducedCharacter) -> HeightResult {
    let mut norms = Vec::with_capacity(f as usize);
    let mut s = 1u64;
    for i in 0..f {
        let n = rc.norm_at(s);
        if n > 1 {
            return HeightResult {
                outcome: Height::Infinite,
                witness: Witness::Failure { index: i, norm: n },
            };
        }
        norms.push(n);
        s = mul_mod(s, t, rc.d_a);
    }
    HeightResult {
        outcome: Height::Finite(f),
        witness: Witness::Norms(norms),
    }
}

/// Same verdict as [`height_class`], deciding `t = 1` and orbits through `-1`
/// without the full walk.
pub fn height_class_fast(t: u64, rc: &ReducedCharacter) -> Result<HeightResult> {
    let t = check_unit(t, rc)?;
    if t == 1 {
        return Ok(HeightResult {
            outcome: Height::Finite(1),
            witness: Witness::Norms(vec![0]),
        });
    }
    let f = multiplicative_order(t, rc.d_a)?;
    // -1 lies in <t> exactly when f is even and t^(f/2) = -1; then norm 3 occurs
    if f % 2 == 0 && pow_mod(t, f / 2, rc.d_a) == rc.d_a - 1 {
        let r = orbit_walk(t, f, rc);
        debug_assert_eq!(r.outcome, Height::Infinite);
        return Ok(r);
    }
    Ok(orbit_walk(t, f, rc))
}

/// Height of the formal group of `x` in characteristic `p`.
pub fn height(x: &DelsarteThreefold, p: Prime) -> Result<HeightResult> {
    validate(x, Some(p)).into_result()?;
    let rc = reduce_alpha0(&find_alpha0(x)?)?;
    height_class_fast(p.get() % rc.d_a, &rc)
}

/// Height of every unit class modulo `d_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueSpectrum {
    pub d_a: u64,
    pub classes: BTreeMap<u64, HeightResult>,
    pub grouped: BTreeMap<Height, HeightGroup>,
}

/// Count of unit classes with one height, and the smallest few of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightGroup {
    pub count: u64,
    pub representatives: Vec<u64>,
}

/// Number of representatives kept per height.
pub const REPRESENTATIVES: usize = 3;

pub fn spectrum(rc: &ReducedCharacter) -> ResidueSpectrum {
    let d = rc.d_a;
    let classes: BTreeMap<u64, HeightResult> = (1..d)
        .into_par_iter()
        .filter(|&t| gcd(t, d) == 1)
        .map(|t| (t, height_class_fast(t, rc).expect("unit residue")))
        .collect();
    let mut grouped: BTreeMap<Height, HeightGroup> = BTreeMap::new();
    for (&t, r) in &classes {
        let g = grouped.entry(r.outcome).or_insert(HeightGroup {
            count: 0,
            representatives: Vec::new(),
        });
        g.count += 1;
        if g.representatives.len() < REPRESENTATIVES {
            g.representatives.push(t);
        }
    }
    ResidueSpectrum {
        d_a: d,
        classes,
        grouped,
    }
}

impl ResidueSpectrum {
    pub fn phi(&self) -> u64 {
        self.classes.len() as u64
    }

    /// Every unit class with height `h`, in increasing order.
    pub fn classes_with_height(&self, h: Height) -> Vec<u64> {
        self.classes
            .iter()
            .filter(|(_, r)| r.outcome == h)
            .map(|(&t, _)| t)
            .collect()
    }

    pub fn finite_heights(&self) -> Vec<u64> {
        self.grouped.keys().filter_map(|h| h.finite()).collect()
    }

    pub fn summary(&self) -> SpectrumSummary {
        SpectrumSummary {
            d_a: self.d_a,
            phi: self.phi(),
            groups: self
                .grouped
                .iter()
                .map(|(&height, g)| GroupEntry {
                    height,
                    count: g.count,
                    representatives: g.representatives.clone(),
                })
                .collect(),
        }
    }
}

/// Serialized form of a spectrum: grouped counts without per-class witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    #[serde(rename = "d_A")]
    pub d_a: u64,
    pub phi: u64,
    pub groups: Vec<GroupEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupEntry {
    pub height: Height,
    pub count: u64,
    pub representatives: Vec<u64>,
}

impl SpectrumSummary {
    pub fn count(&self, h: Height) -> u64 {
        self.groups
            .iter()
            .find(|g| g.height == h)
            .map_or(0, |g| g.count)
    }

    pub fn finite_heights(&self) -> Vec<u64> {
        self.groups
            .iter()
            .filter_map(|g| g.height.finite())
            .collect()
    }
}
