//! Weight catalogs for the Fermat and quasi-diagonal families, batch height
//! classification over them, and the persisted height atlas.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Write;
use std::path::Path;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::lcm;
use crate::character::{find_alpha0_with_cap, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::height::{reduce_alpha0, spectrum, Height, ReducedCharacter, SpectrumSummary};
use crate::threefold::{DelsarteThreefold, Family, HodgePair, WeightSystem};

type Q = Ratio<i128>;

pub const ATLAS_VERSION: u32 = 1;

/// Hodge numbers of a few well-known members, keyed by sorted weights.
const REFERENCE_HODGE: [([u64; 5], HodgePair); 5] = [
    ([1, 1, 1, 1, 1], HodgePair(1, 101)),
    ([1, 1, 1, 1, 4], HodgePair(1, 149)),
    ([1, 1, 12, 28, 42], HodgePair(11, 491)),
    ([1, 42, 258, 602, 903], HodgePair(251, 251)),
    ([2, 21, 138, 322, 483], HodgePair(143, 143)),
];

pub fn reference_hodge(weights: [u64; 5]) -> Option<HodgePair> {
    let mut sorted = weights;
    sorted.sort_unstable();
    REFERENCE_HODGE
        .iter()
        .find(|(w, _)| *w == sorted)
        .map(|&(_, h)| h)
}

/// One catalog entry together with its reduced norm-zero character.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightRecord {
    pub weights: [u64; 5],
    pub m: u64,
    pub family: Family,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exponents: Option<[u64; 5]>,
    #[serde(rename = "d_A")]
    pub d_a: u64,
    #[serde(rename = "alpha_A")]
    pub alpha_a: [u64; 5],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reference_hodge: Option<HodgePair>,
}

impl WeightRecord {
    /// A Fermat record; `d_A = m` and `alpha_A` is the weight vector.
    pub fn fermat(q: WeightSystem) -> WeightRecord {
        WeightRecord {
            weights: q.weights,
            m: q.degree,
            family: Family::Fermat,
            exponents: None,
            d_a: q.degree,
            alpha_a: q.weights,
            reference_hodge: reference_hodge(q.weights),
        }
    }

    /// A quasi-diagonal record `x0^a x1 + x1^b + x2^c + x3^d + x4^e`.
    ///
    /// `d_A = lcm(a, c, d, e)`, and `alpha_A` has entries `d_A / a`, `d_A / c`,
    /// `d_A / d`, `d_A / e` in positions 0, 2, 3, 4 with position 1 making the
    /// sum `d_A`.
    pub fn quasidiagonal(q: WeightSystem, exponents: [u64; 5]) -> WeightRecord {
        let [m0, _, m2, m3, m4] = exponents;
        let big = [m0, m2, m3, m4].into_iter().fold(1, lcm);
        let mut alpha = [big / m0, 0, big / m2, big / m3, big / m4];
        alpha[1] = big - alpha.iter().sum::<u64>();
        WeightRecord {
            weights: q.weights,
            m: q.degree,
            family: Family::QuasiDiagonal(crate::threefold::ChainShape::X0X1),
            exponents: Some(exponents),
            d_a: big,
            alpha_a: alpha,
            reference_hodge: reference_hodge(q.weights),
        }
    }

    pub fn weight_system(&self) -> WeightSystem {
        WeightSystem::new(self.weights, self.m)
    }

    pub fn threefold(&self) -> Result<DelsarteThreefold> {
        let q = self.weight_system();
        let x = match (self.family, self.exponents) {
            (Family::Fermat, _) => DelsarteThreefold::from_fermat(q)?,
            (Family::QuasiDiagonal(shape), Some(e)) => DelsarteThreefold::from_chain(q, shape, e)?,
            (family, _) => {
                return Err(Error::Construction(format!(
                    "no catalog construction for family {family}"
                )))
            }
        };
        Ok(x.with_reference_hodge(self.reference_hodge))
    }

    pub fn reduced(&self) -> Result<ReducedCharacter> {
        ReducedCharacter::from_parts(1, self.d_a, self.alpha_a)
    }

    /// Recomputes `(d_A, alpha_A)` from the exponent matrix and compares.
    pub fn cross_check(&self, cap: u128) -> Result<()> {
        let x = self.threefold()?;
        let rc = reduce_alpha0(&find_alpha0_with_cap(&x, cap)?)?;
        if (rc.d_a, rc.alpha_a) != (self.d_a, self.alpha_a) {
            return Err(Error::Integrity(format!(
                "{}: matrix gives d_A={} alpha_A={:?}, closed form gives d_A={} alpha_A={:?}",
                self.key(),
                rc.d_a,
                rc.alpha_a,
                self.d_a,
                self.alpha_a
            )));
        }
        Ok(())
    }

    /// Identifier used in diffs and reports.
    pub fn key(&self) -> String {
        let w = join(&self.weights);
        match self.exponents {
            Some(e) => format!("{} {}[{}] exp {}", self.family, w, self.m, join(&e)),
            None => format!("{} {}[{}]", self.family, w, self.m),
        }
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// Nondecreasing `n_1 <= .. <= n_k`, all `>= lo`, with `sum 1/n_i = r`.
fn unit_fraction_sums(r: Q, k: u32, lo: i128, prefix: &mut Vec<i128>, out: &mut Vec<Vec<i128>>) {
    let zero = Q::from_integer(0);
    if k == 0 {
        if r == zero {
            out.push(prefix.clone());
        }
        return;
    }
    if r <= zero {
        return;
    }
    if k == 1 {
        if *r.numer() == 1 && *r.denom() >= lo {
            prefix.push(*r.denom());
            out.push(prefix.clone());
            prefix.pop();
        }
        return;
    }
    // the largest remaining term 1/n is at least r/k
    let mut n = lo.max(ceil_div(*r.denom(), *r.numer()));
    while Q::new(k as i128, n) >= r {
        prefix.push(n);
        unit_fraction_sums(r - Q::new(1, n), k - 1, n, prefix, out);
        prefix.pop();
        n += 1;
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    (a + b - 1) / b
}

/// All well-formed Calabi-Yau weights `q_0 <= .. <= q_4` with every `q_i`
/// dividing `m = sum q_i`, sorted by degree then weights.
pub fn enumerate_fermat_weights() -> Vec<WeightSystem> {
    let mut sums = Vec::new();
    unit_fraction_sums(Q::from_integer(1), 5, 2, &mut Vec::new(), &mut sums);
    let set: BTreeSet<(u64, [u64; 5])> = sums
        .into_iter()
        .map(|ds| {
            let ds: Vec<u64> = ds.into_iter().map(|d| d as u64).collect();
            let m = ds.iter().copied().fold(1, lcm);
            let mut q = [0u64; 5];
            for (qi, d) in q.iter_mut().zip(&ds) {
                *qi = m / d;
            }
            q.sort_unstable();
            (m, q)
        })
        .collect();
    set.into_iter()
        .map(|(m, q)| WeightSystem::new(q, m))
        .filter(WeightSystem::is_well_formed)
        .collect()
}

pub fn fermat_catalog() -> Vec<WeightRecord> {
    enumerate_fermat_weights()
        .into_iter()
        .map(WeightRecord::fermat)
        .collect()
}

/// How quasi-diagonal realizations are collapsed into catalog entries.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(rename_all = "kebab-case")]
pub enum QuasiDiagonalRule {
    /// One entry per weight vector with positions 0 and 1 fixed by the chain
    /// and positions 2, 3, 4 sorted by weight.
    #[default]
    ChainRoles,
    /// One entry per unordered weight system.
    SortedWeights,
    /// Chain-role entries whose weights also carry a Fermat polynomial,
    /// i.e. `q_0` divides `q_1`.
    FermatRealizable,
}

impl QuasiDiagonalRule {
    pub const ALL: [QuasiDiagonalRule; 3] = [
        QuasiDiagonalRule::ChainRoles,
        QuasiDiagonalRule::SortedWeights,
        QuasiDiagonalRule::FermatRealizable,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            QuasiDiagonalRule::ChainRoles => "chain-roles",
            QuasiDiagonalRule::SortedWeights => "sorted-weights",
            QuasiDiagonalRule::FermatRealizable => "fermat-realizable",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|r| r.tag() == s)
            .ok_or_else(|| Error::Construction(format!("unknown quasi-diagonal rule {s:?}")))
    }
}

impl fmt::Display for QuasiDiagonalRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Exponent tuples `(m_0, .., m_4)`, `m_2 >= m_3 >= m_4`, solving
/// `1/m_2 + 1/m_3 + 1/m_4 = (1 - 1/m_0)(1 - 1/m_1)`.
///
/// Three unit fractions stay below 1 by at least 1/42, so the smaller of
/// `m_0, m_1` is at most 84.
fn quasidiagonal_exponents() -> BTreeSet<[u64; 5]> {
    let partial: Vec<Vec<[u64; 5]>> = (2..=84i128)
        .into_par_iter()
        .map(|x| {
            let c = Q::new(x - 1, x);
            let mut found = Vec::new();
            let mut units = Vec::new();
            let mut ys = Vec::new();
            mixed_terms(
                c,
                x,
                c,
                4,
                Q::from_integer(2),
                &mut units,
                &mut ys,
                &mut found,
            );
            let mut out = Vec::new();
            for (units, y) in found {
                let mut u = [units[0] as u64, units[1] as u64, units[2] as u64];
                u.sort_unstable_by(|a, b| b.cmp(a));
                let (x, y) = (x as u64, y as u64);
                out.push([x, y, u[0], u[1], u[2]]);
                out.push([y, x, u[0], u[1], u[2]]);
            }
            out
        })
        .collect();
    partial.into_iter().flatten().collect()
}

/// Writes `r` as three unit fractions plus one term `c/y`, `y >= x`, listing
/// terms in nonincreasing order of size.
#[allow(clippy::too_many_arguments)]
fn mixed_terms(
    c: Q,
    x: i128,
    r: Q,
    k: i128,
    prev: Q,
    units: &mut Vec<i128>,
    ys: &mut Vec<i128>,
    out: &mut Vec<(Vec<i128>, i128)>,
) {
    let zero = Q::from_integer(0);
    if k == 0 {
        if r == zero {
            out.push((units.clone(), ys[0]));
        }
        return;
    }
    if r <= zero {
        return;
    }
    let hi = if prev < r { prev } else { r };
    let floor = r / Q::from_integer(k);
    if units.len() < 3 {
        let mut n = 2.max(ceil_div(*r.denom(), *r.numer()));
        while Q::new(1, n) >= floor {
            let v = Q::new(1, n);
            if v <= hi {
                units.push(n);
                mixed_terms(c, x, r - v, k - 1, v, units, ys, out);
                units.pop();
            }
            n += 1;
        }
    }
    if ys.is_empty() {
        let cr = c / r;
        let mut y = x.max(ceil_div(*cr.numer(), *cr.denom()));
        while c / Q::from_integer(y) >= floor {
            let v = c / Q::from_integer(y);
            if v <= hi {
                ys.push(y);
                mixed_terms(c, x, r - v, k - 1, v, units, ys, out);
                ys.pop();
            }
            y += 1;
        }
    }
}

/// Weights realized by `x0^{m_0} x1 + x1^{m_1} + x2^{m_2} + x3^{m_3} + x4^{m_4}`.
fn quasidiagonal_weights_of(e: [u64; 5]) -> Option<WeightSystem> {
    let [m0, m1, m2, m3, m4] = e;
    let m = [m1, m2, m3, m4].into_iter().fold(1, lcm);
    let tail = [m / m1, m / m2, m / m3, m / m4];
    let q0 = m.checked_sub(tail.iter().sum())?;
    if q0 == 0 || q0 * m0 + tail[0] != m {
        return None;
    }
    let q = WeightSystem::new([q0, tail[0], tail[1], tail[2], tail[3]], m);
    q.is_well_formed().then_some(q)
}

/// Quasi-diagonal catalog under `rule`, sorted by degree, weights, exponents.
///
/// Every exponent is at least 2. When several exponent tuples realize one
/// entry, the lexicographically smallest is kept.
pub fn enumerate_quasidiagonal_weights(rule: QuasiDiagonalRule) -> Vec<WeightRecord> {
    let mut by_weights: BTreeMap<[u64; 5], (WeightSystem, [u64; 5])> = BTreeMap::new();
    for e in quasidiagonal_exponents() {
        let Some(q) = quasidiagonal_weights_of(e) else {
            continue;
        };
        by_weights
            .entry(q.weights)
            .and_modify(|cur| cur.1 = cur.1.min(e))
            .or_insert((q, e));
    }
    let chain: Vec<(WeightSystem, [u64; 5])> = by_weights.into_values().collect();
    let kept: Vec<(WeightSystem, [u64; 5])> = match rule {
        QuasiDiagonalRule::ChainRoles => chain,
        QuasiDiagonalRule::FermatRealizable => chain
            .into_iter()
            .filter(|(q, _)| q.weights[1] % q.weights[0] == 0)
            .collect(),
        QuasiDiagonalRule::SortedWeights => {
            let mut best: BTreeMap<[u64; 5], (WeightSystem, [u64; 5])> = BTreeMap::new();
            for (q, e) in chain {
                let mut s = q.weights;
                s.sort_unstable();
                best.entry(s)
                    .and_modify(|cur| {
                        if (q.weights, e) < (cur.0.weights, cur.1) {
                            *cur = (q, e);
                        }
                    })
                    .or_insert((q, e));
            }
            best.into_values().collect()
        }
    };
    let mut records: Vec<WeightRecord> = kept
        .into_iter()
        .map(|(q, e)| WeightRecord::quasidiagonal(q, e))
        .collect();
    records.sort_by_key(|a| (a.m, a.weights, a.exponents));
    records
}

/// Union of the finite heights over the spectra of `records`.
pub fn classify_finite_heights(records: &[WeightRecord]) -> Result<BTreeSet<u64>> {
    let sets: Vec<Vec<u64>> = records
        .par_iter()
        .map(|r| Ok(spectrum(&r.reduced()?).finite_heights()))
        .collect::<Result<_>>()?;
    Ok(sets.into_iter().flatten().collect())
}

/// Whether a finite height exceeds `min(h11, h12) + 1`. When it does, no
/// quotient by a symplectic group gives a mirror partner.
pub fn mirror_obstruction_flag(h: Height, h11: u64, h12: u64) -> bool {
    match h {
        Height::Finite(h) => h > h11.min(h12) + 1,
        Height::Infinite => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasEntry {
    #[serde(flatten)]
    pub record: WeightRecord,
    pub spectrum: SpectrumSummary,
}

/// Spectra of a whole catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightAtlas {
    pub version: u32,
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rule: Option<QuasiDiagonalRule>,
    pub records: Vec<AtlasEntry>,
    pub finite_heights: Vec<u64>,
}

#[derive(Clone, Copy, Debug)]
pub struct AtlasOptions {
    /// Recompute each `(d_A, alpha_A)` from its exponent matrix.
    pub cross_check: bool,
    pub cap: u128,
}

impl Default for AtlasOptions {
    fn default() -> Self {
        AtlasOptions {
            cross_check: true,
            cap: DEFAULT_CAP,
        }
    }
}

pub fn build_atlas(
    family: &str,
    rule: Option<QuasiDiagonalRule>,
    records: Vec<WeightRecord>,
    options: AtlasOptions,
) -> Result<HeightAtlas> {
    let entries: Vec<AtlasEntry> = records
        .into_par_iter()
        .map(|record| {
            if options.cross_check {
                record.cross_check(options.cap)?;
            }
            let spectrum = spectrum(&record.reduced()?).summary();
            Ok(AtlasEntry { record, spectrum })
        })
        .collect::<Result<_>>()?;
    let finite_heights = union_of_finite(&entries);
    Ok(HeightAtlas {
        version: ATLAS_VERSION,
        family: family.to_string(),
        rule,
        records: entries,
        finite_heights,
    })
}

fn union_of_finite(entries: &[AtlasEntry]) -> Vec<u64> {
    let set: BTreeSet<u64> = entries
        .iter()
        .flat_map(|e| e.spectrum.finite_heights())
        .collect();
    set.into_iter().collect()
}

impl HeightAtlas {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("atlas serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let atlas: HeightAtlas = serde_json::from_str(s)?;
        if atlas.version != ATLAS_VERSION {
            return Err(Error::Integrity(format!(
                "unsupported atlas version {}",
                atlas.version
            )));
        }
        let union = union_of_finite(&atlas.records);
        if union != atlas.finite_heights {
            return Err(Error::Integrity(format!(
                "finite_heights {:?} disagree with the record spectra {:?}",
                atlas.finite_heights, union
            )));
        }
        Ok(atlas)
    }
}

pub fn save_atlas(atlas: &HeightAtlas, path: &Path) -> Result<()> {
    std::fs::write(path, atlas.to_json())?;
    Ok(())
}

pub fn load_atlas(path: &Path) -> Result<HeightAtlas> {
    HeightAtlas::from_json(&std::fs::read_to_string(path)?)
}

/// Record-level differences between two atlases.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AtlasDiff {
    pub only_left: Vec<String>,
    pub only_right: Vec<String>,
    pub changed: Vec<String>,
    pub finite_heights: Option<(Vec<u64>, Vec<u64>)>,
}

impl AtlasDiff {
    pub fn is_empty(&self) -> bool {
        self.only_left.is_empty()
            && self.only_right.is_empty()
            && self.changed.is_empty()
            && self.finite_heights.is_none()
    }
}

impl fmt::Display for AtlasDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in &self.only_left {
            writeln!(f, "- {k}")?;
        }
        for k in &self.only_right {
            writeln!(f, "+ {k}")?;
        }
        for k in &self.changed {
            writeln!(f, "~ {k}")?;
        }
        if let Some((l, r)) = &self.finite_heights {
            writeln!(f, "finite heights: {l:?} -> {r:?}")?;
        }
        Ok(())
    }
}

pub fn atlas_diff(left: &HeightAtlas, right: &HeightAtlas) -> AtlasDiff {
    let index = |a: &HeightAtlas| -> BTreeMap<String, AtlasEntry> {
        a.records
            .iter()
            .map(|e| (e.record.key(), e.clone()))
            .collect()
    };
    let (l, r) = (index(left), index(right));
    let mut diff = AtlasDiff::default();
    for (k, e) in &l {
        match r.get(k) {
            None => diff.only_left.push(k.clone()),
            Some(o) if o != e => diff.changed.push(k.clone()),
            Some(_) => {}
        }
    }
    diff.only_right = r.keys().filter(|k| !l.contains_key(*k)).cloned().collect();
    if left.finite_heights != right.finite_heights {
        diff.finite_heights = Some((left.finite_heights.clone(), right.finite_heights.clone()));
    }
    diff
}

/// One row per unit class: `family, weights, m, d_A, residue, height`.
pub fn write_spectra_csv<W: Write>(records: &[WeightRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["family", "weights", "m", "d_A", "residue", "height"])?;
    for r in records {
        let s = spectrum(&r.reduced()?);
        let weights = join(&r.weights);
        for (t, res) in &s.classes {
            w.write_record([
                r.family.tag(),
                weights.clone(),
                r.m.to_string(),
                r.d_a.to_string(),
                t.to_string(),
                res.outcome.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}
