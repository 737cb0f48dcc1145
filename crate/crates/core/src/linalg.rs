//! Exact integer matrices: fraction-free determinants, adjugates, Smith
//! normal form and solution groups of linear congruences.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix must be at least 1x1");
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_diagonal<T: Into<BigInt> + Copy>(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = v.into();
        }
        m
    }

    /// Builds a matrix from rows of equal, nonzero length.
    pub fn from_rows<T: Into<BigInt> + Copy, R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        if r == 0 || c == 0 {
            return Err(Error::Dimension("matrix must be at least 1x1".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != c {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {c}",
                    row.len()
                )));
            }
            data.extend(row.iter().map(|&v| v.into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * k).collect(),
        }
    }

    /// Appends the rows of `other` below `self`.
    pub fn stack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension(
                "stacked matrices need equal column counts".into(),
            ));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_i64()).collect())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> IntMatrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            for j in (0..self.cols).filter(|&j| j != skip_col) {
                data.push(self[(i, j)].clone());
            }
        }
        IntMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Determinant by Bareiss fraction-free elimination.
///
/// Every intermediate division is exact, so no rationals appear.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(i, k);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = v / &prev;
            }
        }
        prev = a[(k, k)].clone();
    }
    Ok(sign * &a[(n - 1, n - 1)])
}

/// Classical adjugate (transpose of the cofactor matrix), so that
/// `m * adjugate(m) = det(m) * I` also for singular `m`.
pub fn adjugate(m: &IntMatrix) -> Result<IntMatrix> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "adjugate of non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    if n == 1 {
        return Ok(IntMatrix::identity(1));
    }
    let mut adj = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let c = determinant(&m.minor(i, j))?;
            adj[(j, i)] = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    Ok(adj)
}

/// `left * original * right = diag(diag)` with unimodular `left`, `right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    /// Length `min(rows, cols)`; nonnegative, each nonzero entry divides the next.
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SnfDecomposition {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// The diagonal matrix with the shape of the original input.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows, self.right.rows);
        for (i, v) in self.diag.iter().enumerate() {
            d[(i, i)] = v.clone();
        }
        d
    }
}

/// Smith normal form with transforms.
///
/// Pivot rule: the nonzero entry of least absolute value in the remaining
/// block (first in row-major order on ties) is moved to the pivot position.
pub fn smith_normal_form(m: &IntMatrix) -> SnfDecomposition {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let steps = rows.min(cols);

    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let v = &a[(i, j)];
                    if v.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| v.abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let pivot = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&pivot);
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&pivot);
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the whole remaining block
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            if let Some(i) = offender {
                let one = BigInt::one();
                a.add_row_multiple(t, i, &one);
                left.add_row_multiple(t, i, &one);
                continue;
            }
            if pivot.is_negative() {
                a.negate_row(t);
                left.negate_row(t);
            }
            break;
        }
    }

    let diag = (0..steps).map(|i| a[(i, i)].clone()).collect();
    SnfDecomposition { diag, left, right }
}

/// One cyclic factor of a solution group: `vector` has additive order `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub vector: Vec<u64>,
    pub order: u64,
}

/// The group `{x in (Z/n)^cols : M x = 0 (mod n)}` as a direct sum of cyclic
/// factors. Every element has a unique coefficient vector
/// `(c_1, .., c_k)` with `0 <= c_i < order_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelGroup {
    pub modulus: u64,
    pub dim: usize,
    pub generators: Vec<Generator>,
}

impl KernelGroup {
    pub fn order(&self) -> u128 {
        self.generators.iter().map(|g| g.order as u128).product()
    }

    pub fn iter(&self) -> KernelIter<'_> {
        KernelIter::new(self, 0, 1)
    }

    /// Elements whose coefficient on the last generator lies in
    /// `first_top..` stepping by `stride`. Disjoint strides partition the group.
    pub fn iter_slice(&self, first_top: u64, stride: u64) -> KernelIter<'_> {
        KernelIter::new(self, first_top, stride)
    }

    /// Sum of `coeffs[i] * generator_i` reduced mod `modulus`.
    pub fn combine(&self, coeffs: &[u64]) -> Vec<u64> {
        let n = self.modulus;
        let mut v = vec![0u64; self.dim];
        for (g, &c) in self.generators.iter().zip(coeffs) {
            for (x, &gv) in v.iter_mut().zip(&g.vector) {
                *x = ((*x as u128 + c as u128 * gv as u128) % n as u128) as u64;
            }
        }
        v
    }
}

/// Mixed-radix walk over a [`KernelGroup`], updating one running vector.
pub struct KernelIter<'a> {
    group: &'a KernelGroup,
    digits: Vec<u64>,
    current: Vec<u64>,
    // step applied when digit i increments and digits below it wrap to 0
    carry_step: Vec<Vec<u64>>,
    stride: u64,
    done: bool,
}

impl<'a> KernelIter<'a> {
    fn new(group: &'a KernelGroup, first_top: u64, stride: u64) -> Self {
        let n = group.modulus;
        let k = group.generators.len();
        let mut carry_step = Vec::with_capacity(k);
        let mut wrap = vec![0u64; group.dim];
        for (i, g) in group.generators.iter().enumerate() {
            let mult = if i + 1 == k { stride } else { 1 };
            let step: Vec<u64> = g
                .vector
                .iter()
                .zip(&wrap)
                .map(|(&gv, &w)| ((gv as u128 * mult as u128 + (n - w) as u128) % n as u128) as u64)
                .collect();
            carry_step.push(step);
            for (w, &gv) in wrap.iter_mut().zip(&g.vector) {
                *w = ((*w as u128 + (g.order - 1) as u128 * gv as u128) % n as u128) as u64;
            }
        }
        let mut digits = vec![0u64; k];
        let done = match k {
            0 => first_top > 0,
            _ => first_top >= group.generators[k - 1].order,
        };
        if k > 0 {
            digits[k - 1] = first_top;
        }
        let current = group.combine(&digits);
        KernelIter {
            group,
            digits,
            current,
            carry_step,
            stride: stride.max(1),
            done,
        }
    }
}

impl Iterator for KernelIter<'_> {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let n = self.group.modulus;
        let k = self.digits.len();
        let mut i = 0;
        loop {
            if i == k {
                self.done = true;
                break;
            }
            let inc = if i + 1 == k { self.stride } else { 1 };
            if self.digits[i] + inc < self.group.generators[i].order {
                self.digits[i] += inc;
                for j in 0..i {
                    self.digits[j] = 0;
                }
                for (x, &s) in self.current.iter_mut().zip(&self.carry_step[i]) {
                    let y = *x + s;
                    *x = if y >= n { y - n } else { y };
                }
                break;
            }
            i += 1;
        }
        Some(out)
    }
}

/// Generators (with orders) of the solutions of `m x = 0 (mod modulus)`.
///
/// With `U m V = D`, the substitution `x = V y` turns the system into
/// `s_i y_i = 0`, so `y_i` ranges over multiples of `modulus / gcd(s_i, modulus)`
/// and columns beyond the rank are free.
pub fn kernel_mod(m: &IntMatrix, modulus: u64) -> Result<KernelGroup> {
    if modulus < 2 {
        return Err(Error::Domain(format!(
            "modulus {modulus} must be at least 2"
        )));
    }
    let snf = smith_normal_form(m);
    let n_big = BigInt::from(modulus);
    let cols = m.cols;
    let mut generators = Vec::new();
    for j in 0..cols {
        let s = snf.diag.get(j).cloned().unwrap_or_else(BigInt::zero);
        let order = s.gcd(&n_big).to_u64().expect("gcd bounded by modulus");
        if order == 1 {
            continue;
        }
        let step = modulus / order;
        let vector = (0..cols)
            .map(|i| {
                let v = (&snf.right[(i, j)] * step).mod_floor(&n_big);
                v.to_u64().expect("reduced below modulus")
            })
            .collect();
        generators.push(Generator { vector, order });
    }
    Ok(KernelGroup {
        modulus,
        dim: cols,
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplace(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|j| {
                let sub: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * laplace(&sub)
            })
            .sum()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn determinant_examples() {
        let five = IntMatrix::from_diagonal(&[5, 5, 5, 5, 5]);
        assert_eq!(determinant(&five).unwrap(), big(3125));
        let single = IntMatrix::from_rows(&[[-7]]).unwrap();
        assert_eq!(determinant(&single).unwrap(), big(-7));
        let rect = IntMatrix::zeros(2, 3);
        assert!(matches!(determinant(&rect), Err(Error::Dimension(_))));
    }

    #[test]
    fn quasi_diagonal_determinant_matches_laplace() {
        let rows = vec![
            vec![83, 1, 0, 0, 0],
            vec![0, 84, 0, 0, 0],
            vec![0, 0, 7, 0, 0],
            vec![0, 0, 0, 3, 0],
            vec![0, 0, 0, 0, 2],
        ];
        let expected = laplace(&rows);
        assert_eq!(expected, 292_824);
        let m = IntMatrix::from_rows(&rows).unwrap();
        assert_eq!(determinant(&m).unwrap(), big(expected));
    }

    #[test]
    fn zero_pivot_needs_row_swap() {
        let rows = vec![vec![0, 2, 1], vec![3, 0, 4], vec![5, 6, 0]];
        let m = IntMatrix::from_rows(&rows).unwrap();
        assert_eq!(determinant(&m).unwrap(), big(laplace(&rows)));
    }

    #[test]
    fn adjugate_examples() {
        let m = IntMatrix::from_rows(&[[3, 4], [-2, 9]]).unwrap();
        let adj = adjugate(&m).unwrap();
        assert_eq!(adj, IntMatrix::from_rows(&[[9, -4], [2, 3]]).unwrap());
        assert_eq!(
            adjugate(&IntMatrix::identity(4)).unwrap(),
            IntMatrix::identity(4)
        );

        let five = IntMatrix::from_diagonal(&[5, 5, 5, 5, 5]);
        let adj = adjugate(&five).unwrap();
        assert_eq!(adj, IntMatrix::identity(5).scale(&big(625)));
        let det = determinant(&five).unwrap();
        assert_eq!(five.mul(&adj).unwrap(), IntMatrix::identity(5).scale(&det));
        assert!(adjugate(&IntMatrix::zeros(2, 1)).is_err());
    }

    fn check_snf(m: &IntMatrix, snf: &SnfDecomposition) {
        let d = snf.left.mul(m).unwrap().mul(&snf.right).unwrap();
        assert_eq!(d, snf.diagonal_matrix());
        assert_eq!(determinant(&snf.left).unwrap().abs(), BigInt::one());
        assert_eq!(determinant(&snf.right).unwrap().abs(), BigInt::one());
        let nonzero: Vec<_> = snf.diag.iter().filter(|v| !v.is_zero()).collect();
        for w in nonzero.windows(2) {
            assert!(w[1].is_multiple_of(w[0]));
        }
        assert!(snf.diag.iter().all(|v| !v.is_negative()));
    }

    #[test]
    fn snf_examples() {
        let m = IntMatrix::from_diagonal(&[8, 8, 8, 8, 2]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diag, [2, 8, 8, 8, 8].map(big).to_vec());
        check_snf(&m, &snf);

        let z = IntMatrix::zeros(3, 4);
        let snf = smith_normal_form(&z);
        assert!(snf.diag.iter().all(Zero::is_zero));
        check_snf(&z, &snf);

        let m = IntMatrix::from_rows(&[[2, 1], [0, 3]]).unwrap();
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diag, vec![big(1), big(6)]);
        check_snf(&m, &snf);

        // diag(2,3) is not in normal form: invariant factors are 1, 6
        let m = IntMatrix::from_diagonal(&[2, 3]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diag, vec![big(1), big(6)]);
        check_snf(&m, &snf);
    }

    #[test]
    fn snf_is_deterministic() {
        let m = IntMatrix::from_rows(&[[6, 4, 10], [-3, 9, 12], [1, 1, 1], [0, 2, 8]]).unwrap();
        let a = smith_normal_form(&m);
        let b = smith_normal_form(&m);
        assert_eq!(a, b);
        check_snf(&m, &a);
    }

    fn brute_kernel(rows: &[Vec<i64>], n: u64) -> std::collections::BTreeSet<Vec<u64>> {
        let cols = rows[0].len();
        let mut out = std::collections::BTreeSet::new();
        let total = (n as usize).pow(cols as u32);
        for idx in 0..total {
            let mut x = Vec::with_capacity(cols);
            let mut r = idx;
            for _ in 0..cols {
                x.push((r % n as usize) as u64);
                r /= n as usize;
            }
            let ok = rows.iter().all(|row| {
                let s: i128 = row
                    .iter()
                    .zip(&x)
                    .map(|(&a, &v)| a as i128 * v as i128)
                    .sum();
                s.rem_euclid(n as i128) == 0
            });
            if ok {
                out.insert(x);
            }
        }
        out
    }

    #[test]
    fn kernel_examples() {
        let five = IntMatrix::from_diagonal(&[5, 5, 5, 5, 5]);
        let k = kernel_mod(&five, 3125).unwrap();
        assert_eq!(k.order(), 3125);
        assert!(k.iter().all(|v| v.iter().all(|x| x % 625 == 0)));
        assert_eq!(k.iter().count(), 3125);

        let id = IntMatrix::identity(5);
        let k = kernel_mod(&id, 12).unwrap();
        assert_eq!(k.order(), 1);
        assert_eq!(k.iter().collect::<Vec<_>>(), vec![vec![0; 5]]);

        let rows = vec![vec![2, 1], vec![0, 3]];
        let m = IntMatrix::from_rows(&rows).unwrap();
        let k = kernel_mod(&m, 6).unwrap();
        let got: std::collections::BTreeSet<_> = k.iter().collect();
        assert_eq!(got, brute_kernel(&rows, 6));
        assert_eq!(got.len() as u128, k.order());

        assert!(matches!(kernel_mod(&m, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn one_variable_analogue() {
        // 5x = 0 (mod 3125) has exactly 5 solutions
        let rows = vec![vec![5]];
        let m = IntMatrix::from_rows(&rows).unwrap();
        let k = kernel_mod(&m, 3125).unwrap();
        assert_eq!(k.order(), 5);
        let sols: Vec<u64> = (0..3125u64).filter(|x| (5 * x) % 3125 == 0).collect();
        let mut got: Vec<u64> = k.iter().map(|v| v[0]).collect();
        got.sort_unstable();
        assert_eq!(got, sols);
    }

    #[test]
    fn wide_matrix_has_free_columns() {
        let rows = vec![vec![1, 2, 3]];
        let m = IntMatrix::from_rows(&rows).unwrap();
        let k = kernel_mod(&m, 4).unwrap();
        assert_eq!(k.order(), 16);
        let got: std::collections::BTreeSet<_> = k.iter().collect();
        assert_eq!(got, brute_kernel(&rows, 4));
    }

    #[test]
    fn sliced_iteration_partitions() {
        let m = IntMatrix::from_diagonal(&[8, 8, 8, 8, 2]);
        let k = kernel_mod(&m, 8192).unwrap();
        let whole: std::collections::BTreeSet<_> = k.iter().collect();
        let mut parts = std::collections::BTreeSet::new();
        let mut total = 0;
        for s in 0..3 {
            for v in k.iter_slice(s, 3) {
                total += 1;
                parts.insert(v);
            }
        }
        assert_eq!(total, whole.len());
        assert_eq!(parts, whole);
    }
}
