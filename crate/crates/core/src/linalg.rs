//! Dense complex linear algebra kernels.
//!
//! Everything here works on small matrices (Gram matrices are at most
//! `l × l` and reshapes at most `2^(N-1) × 2^(N/2)`), so a plain row-major
//! `Vec` is all the storage we need.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Antisymmetry tolerance accepted by [`pfaffian`].
pub const ANTISYMMETRY_TOL: f64 = 1e-12;

/// Largest dimension [`pfaffian`] will expand.
pub const PFAFFIAN_MAX_DIM: usize = 8;

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|z| !z.is_finite()) {
            return Err(Error::Argument(format!("non-finite entry at flat index {pos}")));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from equally long rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    /// Builds a matrix from real rows.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Result<Self> {
        let rows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Shape("columns of unequal length".into()));
        }
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, col) in columns.iter().enumerate() {
            for (i, &z) in col.iter().enumerate() {
                m[(i, j)] = z;
            }
        }
        if let Some(pos) = m.entries.iter().position(|z| !z.is_finite()) {
            return Err(Error::Argument(format!("non-finite entry at flat index {pos}")));
        }
        Ok(m)
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

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut t = self.transpose();
        t.entries.iter_mut().for_each(|z| *z = z.conj());
        t
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&z| z * c).collect(),
        }
    }

    /// Submatrix made of the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out[(i, j)] = self[(r, c)];
            }
        }
        out
    }

    /// Largest entry modulus; zero for an empty matrix.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(m: &ComplexMatrix) -> Result<Complex64> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    let mut a = m.entries.clone();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&p, &q| a[p * n + k].norm().total_cmp(&a[q * n + k].norm()))
            .expect("non-empty pivot range");
        if a[pivot * n + k].norm() == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if pivot != k {
            for j in 0..n {
                a.swap(k * n + j, pivot * n + j);
            }
            det = -det;
        }
        let diag = a[k * n + k];
        det *= diag;
        for i in (k + 1)..n {
            let factor = a[i * n + k] / diag;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in (k + 1)..n {
                let upper = a[k * n + j];
                a[i * n + j] -= factor * upper;
            }
        }
    }
    Ok(det)
}

/// Pfaffian of an even-dimensional antisymmetric matrix.
///
/// The input is symmetrized to `(A - Aᵀ)/2` and expanded along its first
/// row. Inputs whose symmetric part exceeds [`ANTISYMMETRY_TOL`] are
/// rejected, as are dimensions beyond [`PFAFFIAN_MAX_DIM`].
pub fn pfaffian(a: &ComplexMatrix) -> Result<Complex64> {
    if !a.is_square() {
        return Err(Error::Shape(format!("pfaffian of non-square {}x{} matrix", a.rows, a.cols)));
    }
    let n = a.rows;
    if n % 2 == 1 {
        return Err(Error::Shape(format!("pfaffian of odd dimension {n}")));
    }
    if n > PFAFFIAN_MAX_DIM {
        return Err(Error::Shape(format!(
            "pfaffian expansion limited to dimension {PFAFFIAN_MAX_DIM}, got {n}"
        )));
    }
    let mut skew = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let sym = (a[(i, j)] + a[(j, i)]).norm();
            if sym > ANTISYMMETRY_TOL {
                return Err(Error::Shape(format!(
                    "matrix not antisymmetric: |A + Aᵀ| = {sym:e} at ({i}, {j})"
                )));
            }
            skew[(i, j)] = (a[(i, j)] - a[(j, i)]) * 0.5;
        }
    }
    let indices: Vec<usize> = (0..n).collect();
    Ok(pfaffian_expand(&skew, &indices))
}

fn pfaffian_expand(a: &ComplexMatrix, idx: &[usize]) -> Complex64 {
    match idx.len() {
        0 => Complex64::new(1.0, 0.0),
        2 => a[(idx[0], idx[1])],
        _ => {
            let first = idx[0];
            let mut total = Complex64::new(0.0, 0.0);
            for (pos, &j) in idx.iter().enumerate().skip(1) {
                let entry = a[(first, j)];
                if entry == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let rest: Vec<usize> = idx[1..].iter().copied().filter(|&k| k != j).collect();
                let term = entry * pfaffian_expand(a, &rest);
                if pos % 2 == 1 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}

/// Binomial coefficient `C(n, k)`, saturating on overflow.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    usize::try_from(acc).unwrap_or(usize::MAX)
}

/// A strictly increasing `l`-subset of `[0, L)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Combination {
    universe: usize,
    members: Vec<usize>,
}

impl Combination {
    pub fn new(universe: usize, members: Vec<usize>) -> Result<Self> {
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Argument(format!("members {members:?} not strictly increasing")));
        }
        if let Some(&last) = members.last() {
            if last >= universe {
                return Err(Error::Range(format!("member {last} outside [0, {universe})")));
            }
        }
        Ok(Self { universe, members })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Lexicographic rank among all subsets of the same size.
    pub fn rank(&self) -> usize {
        rank_combination(self.universe, &self.members)
            .expect("members validated at construction")
    }
}

/// Lexicographic rank of a strictly increasing subset of `[0, universe)`.
pub fn rank_combination(universe: usize, members: &[usize]) -> Result<usize> {
    let size = members.len();
    let mut rank = 0;
    let mut next = 0;
    for (i, &c) in members.iter().enumerate() {
        if c < next || c >= universe {
            return Err(Error::Range(format!(
                "member {c} invalid at position {i} of a {size}-subset of [0, {universe})"
            )));
        }
        for skipped in next..c {
            rank += binomial(universe - 1 - skipped, size - 1 - i);
        }
        next = c + 1;
    }
    Ok(rank)
}

/// Inverse of [`rank_combination`].
pub fn unrank_combination(index: usize, universe: usize, size: usize) -> Result<Vec<usize>> {
    let total = binomial(universe, size);
    if index >= total {
        return Err(Error::Range(format!(
            "index {index} outside [0, C({universe}, {size}) = {total})"
        )));
    }
    let mut rest = index;
    let mut members = Vec::with_capacity(size);
    let mut candidate = 0;
    for i in 0..size {
        loop {
            let block = binomial(universe - 1 - candidate, size - 1 - i);
            if rest < block {
                break;
            }
            rest -= block;
            candidate += 1;
        }
        members.push(candidate);
        candidate += 1;
    }
    Ok(members)
}

/// Iterator over all `size`-subsets of `[0, universe)` in lexicographic order.
pub fn combinations(universe: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = (size <= universe).then(|| (0..size).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = size;
        current = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            if next[i] < universe - size + i {
                next[i] += 1;
                for j in (i + 1)..size {
                    next[j] = next[j - 1] + 1;
                }
                break Some(next);
            }
        };
        Some(out)
    })
}

/// All maximal minors of a tall matrix, one per row combination in rank order.
pub fn maximal_minors(z: &ComplexMatrix) -> Result<Vec<(Combination, Complex64)>> {
    if z.rows < z.cols {
        return Err(Error::Shape(format!(
            "maximal minors need rows >= cols, got {}x{}",
            z.rows, z.cols
        )));
    }
    let cols: Vec<usize> = (0..z.cols).collect();
    combinations(z.rows, z.cols)
        .map(|rows| {
            let minor = determinant(&z.select(&rows, &cols))?;
            Ok((Combination { universe: z.rows, members: rows }, minor))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_and_epsilon_determinants() {
        assert_eq!(determinant(&ComplexMatrix::identity(2)).unwrap(), c(1.0, 0.0));
        let eps = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
        assert_eq!(determinant(&eps).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn non_square_determinant_is_dimension_error() {
        let m = ComplexMatrix::zeros(2, 3);
        assert!(matches!(determinant(&m), Err(Error::Dimension(_))));
    }

    #[test]
    fn row_swap_flips_sign() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(1.0, 2.0), c(0.5, -1.0), c(3.0, 0.0)],
            vec![c(-2.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(2.0, 0.0), c(1.0, -3.0)],
        ])
        .unwrap();
        let swapped = m.select(&[1, 0, 2], &[0, 1, 2]);
        let d = determinant(&m).unwrap();
        let ds = determinant(&swapped).unwrap();
        assert!((d + ds).norm() < 1e-12 * d.norm());
    }

    #[test]
    fn pfaffian_two_by_two() {
        let a = c(0.3, -1.7);
        let m = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), a], vec![-a, c(0.0, 0.0)]]).unwrap();
        assert_eq!(pfaffian(&m).unwrap(), a);
    }

    #[test]
    fn pfaffian_four_by_four_three_terms() {
        let vals = [c(1.0, 0.5), c(-2.0, 1.0), c(0.25, 0.0), c(3.0, -1.0), c(0.0, 2.0), c(-1.5, -0.5)];
        let (a01, a02, a03, a12, a13, a23) = (vals[0], vals[1], vals[2], vals[3], vals[4], vals[5]);
        let mut m = ComplexMatrix::zeros(4, 4);
        for (&(i, j), &v) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)].iter().zip(vals.iter()) {
            m[(i, j)] = v;
            m[(j, i)] = -v;
        }
        let expected = a01 * a23 - a02 * a13 + a03 * a12;
        assert!((pfaffian(&m).unwrap() - expected).norm() < 1e-14);
    }

    #[test]
    fn pfaffian_rejects_bad_shapes() {
        assert!(matches!(pfaffian(&ComplexMatrix::zeros(3, 3)), Err(Error::Shape(_))));
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = c(1.0, 0.0);
        m[(1, 0)] = c(1.0, 0.0);
        assert!(matches!(pfaffian(&m), Err(Error::Shape(_))));
        assert!(matches!(pfaffian(&ComplexMatrix::zeros(10, 10)), Err(Error::Shape(_))));
    }

    #[test]
    fn pfaffian_tolerates_roundoff_asymmetry() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = c(1.0, 0.0);
        m[(1, 0)] = c(-1.0 + 1e-13, 0.0);
        assert!((pfaffian(&m).unwrap() - c(1.0 - 0.5e-13, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn square_matrix_has_one_minor() {
        let z = ComplexMatrix::from_rows(&[vec![c(1.0, 1.0), c(2.0, 0.0)], vec![c(0.0, 3.0), c(-1.0, 0.5)]])
            .unwrap();
        let minors = maximal_minors(&z).unwrap();
        assert_eq!(minors.len(), 1);
        assert_eq!(minors[0].0.members(), &[0, 1]);
        assert!((minors[0].1 - determinant(&z).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn four_by_two_minors_match_bivector_formula() {
        let z = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 1.0)],
            vec![c(2.0, -1.0), c(1.0, 1.0)],
            vec![c(0.5, 0.5), c(-3.0, 0.0)],
            vec![c(0.0, -2.0), c(1.5, 0.0)],
        ])
        .unwrap();
        let minors = maximal_minors(&z).unwrap();
        assert_eq!(minors.len(), 6);
        for (combo, value) in minors {
            let (a, b) = (combo.members()[0], combo.members()[1]);
            let expected = z[(a, 0)] * z[(b, 1)] - z[(b, 0)] * z[(a, 1)];
            assert!((value - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn wide_matrix_minors_are_shape_error() {
        assert!(matches!(maximal_minors(&ComplexMatrix::zeros(2, 3)), Err(Error::Shape(_))));
    }

    #[test]
    fn first_and_last_ranks() {
        assert_eq!(rank_combination(4, &[0, 1]).unwrap(), 0);
        assert_eq!(rank_combination(4, &[2, 3]).unwrap(), 5);
        assert_eq!(unrank_combination(5, 4, 2).unwrap(), vec![2, 3]);
        assert!(matches!(unrank_combination(6, 4, 2), Err(Error::Range(_))));
        assert!(matches!(rank_combination(4, &[1, 4]), Err(Error::Range(_))));
    }

    #[test]
    fn rank_round_trip_over_eight_choose_four() {
        let all: Vec<Vec<usize>> = combinations(8, 4).collect();
        assert_eq!(all.len(), 70);
        for (i, members) in all.iter().enumerate() {
            assert_eq!(rank_combination(8, members).unwrap(), i);
            assert_eq!(&unrank_combination(i, 8, 4).unwrap(), members);
        }
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(8, 2), 28);
        assert_eq!(binomial(16, 4), 1820);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(5, 0), 1);
    }

    #[test]
    fn combination_rejects_unsorted() {
        assert!(Combination::new(4, vec![2, 1]).is_err());
        assert!(Combination::new(4, vec![1, 4]).is_err());
        assert_eq!(Combination::new(4, vec![1, 3]).unwrap().rank(), 4);
    }
}
