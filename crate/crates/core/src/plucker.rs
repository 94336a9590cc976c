//! Plücker coordinates of a reshaped state and its two Gram matrices.
//!
//! The monotones never enumerate minors: by Cauchy–Binet the Gram
//! determinants `det(Z†Z)` and `det(Zᵀ g Z)` already equal the sums over
//! minors. The enumeration here exists for inspection and as the second
//! route in the equivalence checks.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, binomial, rank_combination, ComplexMatrix};
use crate::partition::EpsilonForm;

/// All `C(L, l)` maximal minors of an `L × l` matrix, in rank order.
#[derive(Debug, Clone, PartialEq)]
pub struct PluckerVector {
    rows: usize,
    cols: usize,
    coords: Vec<Complex64>,
}

impl PluckerVector {
    /// Wraps raw coordinates, e.g. hand-set values.
    pub fn from_coords(rows: usize, cols: usize, coords: Vec<Complex64>) -> Result<Self> {
        let expected = binomial(rows, cols);
        if coords.len() != expected {
            return Err(Error::Shape(format!(
                "Gr({rows},{cols}) has {expected} coordinates, got {}",
                coords.len()
            )));
        }
        Ok(Self { rows, cols, coords })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    /// Coordinate for an increasing row tuple.
    pub fn get(&self, members: &[usize]) -> Result<Complex64> {
        if members.len() != self.cols {
            return Err(Error::Shape(format!(
                "{} indices for a coordinate with {} indices",
                members.len(),
                self.cols
            )));
        }
        Ok(self.coords[rank_combination(self.rows, members)?])
    }

    /// `Σ |P_c|²` over increasing tuples.
    pub fn norm_sqr(&self) -> f64 {
        self.coords.iter().map(Complex64::norm_sqr).sum()
    }

    /// `Σ P_c Q_c` over increasing tuples.
    pub fn contract(&self, other: &Self) -> Result<Complex64> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("contracting coordinates of different Grassmannians".into()));
        }
        Ok(self.coords.iter().zip(&other.coords).map(|(p, q)| p * q).sum())
    }
}

pub fn plucker_coordinates(z: &ComplexMatrix) -> Result<PluckerVector> {
    let minors = linalg::maximal_minors(z)?;
    Ok(PluckerVector {
        rows: z.rows(),
        cols: z.cols(),
        coords: minors.into_iter().map(|(_, v)| v).collect(),
    })
}

/// `|P01 P23 - P02 P13 + P03 P12|` for a point of `Gr(4,2)`.
pub fn plucker_relation_residual(p: &PluckerVector) -> Result<f64> {
    if (p.rows, p.cols) != (4, 2) {
        return Err(Error::Shape(format!(
            "relation residual defined for Gr(4,2), got Gr({},{})",
            p.rows, p.cols
        )));
    }
    let c = |a: usize, b: usize| p.get(&[a, b]).expect("valid pair");
    Ok((c(0, 1) * c(2, 3) - c(0, 2) * c(1, 3) + c(0, 3) * c(1, 2)).norm())
}

/// Column mixing `Z ↦ Z S`.
pub fn gauge_transform(z: &ComplexMatrix, s: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !s.is_square() || s.rows() != z.cols() {
        return Err(Error::Shape(format!(
            "gauge matrix must be {0}x{0}, got {1}x{2}",
            z.cols(),
            s.rows(),
            s.cols()
        )));
    }
    if linalg::determinant(s)? == Complex64::new(0.0, 0.0) {
        return Err(Error::Argument("gauge matrix is singular".into()));
    }
    z.matmul(s)
}

/// `(Z†Z)_ab = Σ_α conj(Z_αa) Z_αb`.
pub fn gram_hermitian(z: &ComplexMatrix) -> ComplexMatrix {
    let cols: Vec<Vec<Complex64>> = (0..z.cols()).map(|j| z.column(j)).collect();
    let l = cols.len();
    let mut g = ComplexMatrix::zeros(l, l);
    for a in 0..l {
        for b in a..l {
            let v: Complex64 = cols[a].iter().zip(&cols[b]).map(|(x, y)| x.conj() * y).sum();
            g[(a, b)] = v;
            g[(b, a)] = v.conj();
        }
        g[(a, a)] = Complex64::new(g[(a, a)].re, 0.0);
    }
    g
}

/// `(Zᵀ g Z)_ab = Z_a · Z_b` with `g = ε^{⊗m}`.
pub fn gram_bilinear(z: &ComplexMatrix, m: usize) -> Result<ComplexMatrix> {
    let form = EpsilonForm::new(m);
    if z.rows() != form.dim() {
        return Err(Error::Shape(format!(
            "ε-form on 2^{m} = {} rows applied to a {}-row matrix",
            form.dim(),
            z.rows()
        )));
    }
    let cols: Vec<Vec<Complex64>> = (0..z.cols()).map(|j| z.column(j)).collect();
    let l = cols.len();
    let mut g = ComplexMatrix::zeros(l, l);
    for a in 0..l {
        for b in a..l {
            let v = form.bilinear(&cols[a], &cols[b])?;
            g[(a, b)] = v;
            g[(b, a)] = if form.is_symmetric() { v } else { -v };
        }
    }
    Ok(g)
}
