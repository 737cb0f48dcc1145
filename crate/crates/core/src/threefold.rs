//! Weight systems, Delsarte exponent matrices and their validity conditions.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_prime};
use crate::error::{Error, Result};
use crate::linalg::{determinant, IntMatrix};

/// Weights `(q_0, .., q_4)` of a weighted projective 4-space and a degree `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightSystem {
    pub weights: [u64; 5],
    pub degree: u64,
}

impl WeightSystem {
    pub fn new(weights: [u64; 5], degree: u64) -> Self {
        WeightSystem { weights, degree }
    }

    /// The Calabi-Yau choice `m = q_0 + .. + q_4`.
    pub fn calabi_yau(weights: [u64; 5]) -> Self {
        WeightSystem {
            weights,
            degree: weights.iter().sum(),
        }
    }

    pub fn is_calabi_yau(&self) -> bool {
        self.weights.iter().sum::<u64>() == self.degree
    }

    /// Every four of the five weights are coprime.
    pub fn is_well_formed(&self) -> bool {
        (0..5).all(|skip| {
            self.weights
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .fold(0, |g, (_, &q)| gcd(g, q))
                == 1
        })
    }

    pub fn is_positive(&self) -> bool {
        self.weights.iter().all(|&q| q >= 1) && self.degree >= 1
    }

    /// Every violated weight condition, by name.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (i, &q) in self.weights.iter().enumerate() {
            if q == 0 {
                out.push(Violation::NonPositiveWeight { index: i });
            }
        }
        if self.degree == 0 {
            out.push(Violation::NonPositiveDegree);
        }
        if self.is_positive() && !self.is_well_formed() {
            out.push(Violation::NotWellFormed);
        }
        out
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.weights;
        write!(
            f,
            "({},{},{},{},{})[{}]",
            w[0], w[1], w[2], w[3], w[4], self.degree
        )
    }
}

/// Which monomial is coupled to which in a chain-type polynomial. The
/// remaining variables carry pure powers `x_i^{m_i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainShape {
    /// `x0^m0 x1 + x1^m1 + x2^m2 + x3^m3 + x4^m4`
    X0X1,
    /// `x0^m0 x2 + x1^m1 + x2^m2 + x3^m3 + x4^m4`
    X0X2,
    /// `x0^m0 + x1^m1 x2 + x2^m2 + x3^m3 + x4^m4`
    X1X2,
    /// `x0^m0 + x1^m1 + x2^m2 + x3^m3 + x3 x4^m4`
    X4X3,
    /// `x0^m0 x1 + x0 x1^m1 + x2^m2 + x3^m3 + x4^m4`
    Loop01,
    /// `x0^m0 x2 + x1^m1 + x0 x2^m2 + x3^m3 + x4^m4`
    Loop02,
    /// `x0^m0 x1 + x1^m1 x2 + x0 x2^m2 + x3^m3 + x4^m4`
    Loop012,
}

impl ChainShape {
    pub const ALL: [ChainShape; 7] = [
        ChainShape::X0X1,
        ChainShape::X0X2,
        ChainShape::X1X2,
        ChainShape::X4X3,
        ChainShape::Loop01,
        ChainShape::Loop02,
        ChainShape::Loop012,
    ];

    /// `(row, column)` positions holding a linear factor, in addition to the
    /// diagonal exponents.
    pub fn couplings(self) -> &'static [(usize, usize)] {
        match self {
            ChainShape::X0X1 => &[(0, 1)],
            ChainShape::X0X2 => &[(0, 2)],
            ChainShape::X1X2 => &[(1, 2)],
            ChainShape::X4X3 => &[(4, 3)],
            ChainShape::Loop01 => &[(0, 1), (1, 0)],
            ChainShape::Loop02 => &[(0, 2), (2, 0)],
            ChainShape::Loop012 => &[(0, 1), (1, 2), (2, 0)],
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            ChainShape::X0X1 => "x0x1",
            ChainShape::X0X2 => "x0x2",
            ChainShape::X1X2 => "x1x2",
            ChainShape::X4X3 => "x4x3",
            ChainShape::Loop01 => "loop01",
            ChainShape::Loop02 => "loop02",
            ChainShape::Loop012 => "loop012",
        }
    }

    fn from_tag(s: &str) -> Option<Self> {
        ChainShape::ALL.into_iter().find(|c| c.tag() == s)
    }
}

/// Polynomial family of a threefold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Fermat,
    QuasiDiagonal(ChainShape),
    General,
}

impl Family {
    pub fn tag(&self) -> String {
        match self {
            Family::Fermat => "fermat".into(),
            Family::QuasiDiagonal(ChainShape::X0X1) => "quasidiagonal".into(),
            Family::QuasiDiagonal(shape) => format!("quasidiagonal:{}", shape.tag()),
            Family::General => "general".into(),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "fermat" => Ok(Family::Fermat),
            "general" => Ok(Family::General),
            "quasidiagonal" => Ok(Family::QuasiDiagonal(ChainShape::X0X1)),
            _ => s
                .strip_prefix("quasidiagonal:")
                .and_then(ChainShape::from_tag)
                .map(Family::QuasiDiagonal)
                .ok_or_else(|| Error::Construction(format!("unknown family tag {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.tag())
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Family::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Hodge numbers `(h^{1,1}, h^{1,2})` of a crepant resolution, carried as
/// reference data only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HodgePair(pub u64, pub u64);

/// A characteristic `p`, checked prime on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::Domain(format!("{p} is not prime")))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A violated condition on a weight system, matrix or characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NonPositiveWeight { index: usize },
    NonPositiveDegree,
    NotWellFormed,
    NegativeExponent { row: usize, col: usize },
    SingularMatrix,
    RowDegree { row: usize, sum: BigInt },
    ColumnWithoutZero { col: usize },
    PDividesExponent { row: usize, col: usize },
    PDividesDet,
    PDividesDegree,
    PDividesWeight { index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonPositiveWeight { index } => write!(f, "weight q_{index} is not positive"),
            Violation::NonPositiveDegree => write!(f, "degree m is not positive"),
            Violation::NotWellFormed => {
                write!(f, "weights are not well-formed (some four share a factor)")
            }
            Violation::NegativeExponent { row, col } => {
                write!(f, "condition (i): exponent a_{row}{col} is negative")
            }
            Violation::SingularMatrix => write!(f, "condition (ii): det A = 0"),
            Violation::RowDegree { row, sum } => {
                write!(
                    f,
                    "condition (iii): row {row} has weighted degree {sum}, not m"
                )
            }
            Violation::ColumnWithoutZero { col } => {
                write!(f, "condition (iv): column {col} has no zero entry")
            }
            Violation::PDividesExponent { row, col } => {
                write!(f, "condition (i): p divides a_{row}{col}")
            }
            Violation::PDividesDet => write!(f, "condition (ii): p divides det A"),
            Violation::PDividesDegree => write!(f, "p divides the degree m"),
            Violation::PDividesWeight { index } => write!(f, "p divides the weight q_{index}"),
        }
    }
}

/// Outcome of [`validate`]: empty means every condition holds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(|v| v.to_string()).collect()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(Error::Validation(self.messages()))
        }
    }
}

/// A weighted Delsarte threefold: five monomials in five variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelsarteThreefold {
    weights: WeightSystem,
    matrix: IntMatrix,
    det: BigInt,
    family: Family,
    reference_hodge: Option<HodgePair>,
}

impl DelsarteThreefold {
    /// Any 5x5 exponent matrix; conditions are checked by [`validate`], not here.
    pub fn new(weights: WeightSystem, matrix: IntMatrix, family: Family) -> Result<Self> {
        if matrix.rows() != 5 || matrix.cols() != 5 {
            return Err(Error::Dimension(format!(
                "exponent matrix must be 5x5, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let det = determinant(&matrix)?;
        Ok(DelsarteThreefold {
            weights,
            matrix,
            det,
            family,
            reference_hodge: None,
        })
    }

    pub fn with_reference_hodge(mut self, hodge: Option<HodgePair>) -> Self {
        self.reference_hodge = hodge;
        self
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.weights
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn reference_hodge(&self) -> Option<HodgePair> {
        self.reference_hodge
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    /// `d = |det A|`, if it fits a machine word and is nonzero.
    pub fn d(&self) -> Result<u64> {
        let d = self.det.abs();
        if d.is_zero() {
            return Err(Error::Validation(vec![
                Violation::SingularMatrix.to_string()
            ]));
        }
        d.to_u64()
            .ok_or_else(|| Error::Domain(format!("|det A| = {d} exceeds 64 bits")))
    }

    /// Exponent matrix as `u64` rows (entries are small and nonnegative after validation).
    pub fn exponent_rows(&self) -> Vec<[u64; 5]> {
        (0..5)
            .map(|i| {
                let mut r = [0u64; 5];
                for (j, v) in self.matrix.row(i).iter().enumerate() {
                    r[j] = v.to_u64().unwrap_or(0);
                }
                r
            })
            .collect()
    }

    /// Pure powers: `a_ii = m / q_i`.
    pub fn from_fermat(q: WeightSystem) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::Construction(format!("weights {q} must be positive")));
        }
        let mut diag = [0u64; 5];
        for (i, &w) in q.weights.iter().enumerate() {
            if !q.degree.is_multiple_of(w) {
                return Err(Error::Construction(format!(
                    "not Fermat-realizable: q_{i} = {w} does not divide m = {}",
                    q.degree
                )));
            }
            diag[i] = q.degree / w;
        }
        Self::new(q, IntMatrix::from_diagonal(&diag), Family::Fermat)
    }

    /// `x0^m0 x1 + x1^m1 + x2^m2 + x3^m3 + x4^m4`.
    pub fn from_quasidiagonal(q: WeightSystem, exponents: [u64; 5]) -> Result<Self> {
        Self::from_chain(q, ChainShape::X0X1, exponents)
    }

    /// Diagonal exponents `m_i` plus the linear factors of `shape`; each row
    /// must have weighted degree `m`.
    pub fn from_chain(q: WeightSystem, shape: ChainShape, exponents: [u64; 5]) -> Result<Self> {
        let mut rows = [[0i64; 5]; 5];
        for i in 0..5 {
            rows[i][i] = exponents[i] as i64;
        }
        for &(r, c) in shape.couplings() {
            rows[r][c] = 1;
        }
        for (i, row) in rows.iter().enumerate() {
            let s: i128 = row
                .iter()
                .zip(&q.weights)
                .map(|(&a, &w)| a as i128 * w as i128)
                .sum();
            if s != q.degree as i128 {
                return Err(Error::Construction(format!(
                    "row {i} of the {} shape has weighted degree {s}, expected m = {}",
                    shape.tag(),
                    q.degree
                )));
            }
        }
        let matrix = IntMatrix::from_rows(&rows)?;
        Self::new(q, matrix, Family::QuasiDiagonal(shape))
    }

    /// Weighted degree of every row.
    pub fn row_degrees(&self) -> Vec<BigInt> {
        (0..5)
            .map(|i| {
                self.matrix
                    .row(i)
                    .iter()
                    .zip(&self.weights.weights)
                    .map(|(a, &w)| a * w)
                    .sum()
            })
            .collect()
    }
}

/// Checks the weight system and matrix conditions, plus compatibility with `p`
/// when one is given. Violations are reported, never raised.
pub fn validate(x: &DelsarteThreefold, p: Option<Prime>) -> ValidationReport {
    let mut v = x.weights.violations();
    let m = &x.matrix;
    for i in 0..5 {
        for j in 0..5 {
            if m[(i, j)].is_negative() {
                v.push(Violation::NegativeExponent { row: i, col: j });
            }
        }
    }
    if x.det.is_zero() {
        v.push(Violation::SingularMatrix);
    }
    let degree = BigInt::from(x.weights.degree);
    for (row, sum) in x.row_degrees().into_iter().enumerate() {
        if sum != degree {
            v.push(Violation::RowDegree { row, sum });
        }
    }
    for col in 0..5 {
        if (0..5).all(|i| !m[(i, col)].is_zero()) {
            v.push(Violation::ColumnWithoutZero { col });
        }
    }
    if let Some(p) = p {
        let pb = BigInt::from(p.get());
        for i in 0..5 {
            for j in 0..5 {
                let a = &m[(i, j)];
                if !a.is_zero() && (a % &pb).is_zero() {
                    v.push(Violation::PDividesExponent { row: i, col: j });
                }
            }
        }
        if !x.det.is_zero() && (&x.det % &pb).is_zero() {
            v.push(Violation::PDividesDet);
        }
        if x.weights.degree.is_multiple_of(p.get()) {
            v.push(Violation::PDividesDegree);
        }
        for (index, &q) in x.weights.weights.iter().enumerate() {
            if q % p.get() == 0 {
                v.push(Violation::PDividesWeight { index });
            }
        }
    }
    ValidationReport { violations: v }
}

/// On-disk shape of a threefold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreefoldDocument {
    pub weights: [u64; 5],
    pub degree: u64,
    pub matrix: [[i64; 5]; 5],
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_hodge: Option<[u64; 2]>,
}

impl From<&DelsarteThreefold> for ThreefoldDocument {
    fn from(x: &DelsarteThreefold) -> Self {
        let mut matrix = [[0i64; 5]; 5];
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = x.matrix[(i, j)].to_i64().expect("exponent fits i64");
            }
        }
        ThreefoldDocument {
            weights: x.weights.weights,
            degree: x.weights.degree,
            matrix,
            family: x.family,
            reference_hodge: x.reference_hodge.map(|h| [h.0, h.1]),
        }
    }
}

impl TryFrom<ThreefoldDocument> for DelsarteThreefold {
    type Error = Error;
    fn try_from(doc: ThreefoldDocument) -> Result<Self> {
        let matrix = IntMatrix::from_rows(&doc.matrix)?;
        let x = DelsarteThreefold::new(
            WeightSystem::new(doc.weights, doc.degree),
            matrix,
            doc.family,
        )?;
        Ok(x.with_reference_hodge(doc.reference_hodge.map(|[a, b]| HodgePair(a, b))))
    }
}

impl DelsarteThreefold {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ThreefoldDocument::from(self)).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: ThreefoldDocument = serde_json::from_str(s)?;
        doc.try_into()
    }
}
