//! Complex matrix polynomial arithmetic.
//!
//! A polynomial `F(s) = sum_{k=0}^q C_k s^k` is stored as its ordered list of
//! `m x m` complex coefficient matrices `C_0 ..= C_q`. Construction trims
//! trailing zero blocks, so the degree reported by [`MatrixPolynomial::formal_degree`]
//! is meaningful: either `q = 0` or `C_q` has an entry above the trim
//! threshold.

use nalgebra::DMatrix;
use thiserror::Error;

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
/// Dense complex matrix used throughout the crate.
pub type CMatrix = DMatrix<C64>;

/// Relative threshold under which a trailing coefficient block counts as zero.
pub const TRIM_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("coefficient list is empty")]
    EmptyCoefficients,
    #[error("coefficient {index} is {rows}x{cols}, expected {m}x{m}")]
    CoefficientShape {
        index: usize,
        rows: usize,
        cols: usize,
        m: usize,
    },
    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },
}

/// An `m x m` complex matrix polynomial in one variable, coefficients by
/// ascending power. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPolynomial {
    m: usize,
    coeffs: Vec<CMatrix>,
}

impl MatrixPolynomial {
    /// Builds a polynomial from `C_0 ..= C_q`, validating shapes and trimming
    /// trailing blocks whose largest entry modulus is below
    /// `TRIM_TOL * max_k max_ij |(C_k)_ij|`. The constant block is never
    /// trimmed, so the zero polynomial is `q = 0` with a zero block.
    pub fn new(coeffs: Vec<CMatrix>) -> Result<Self, PolyError> {
        if coeffs.is_empty() {
            return Err(PolyError::EmptyCoefficients);
        }
        let m = coeffs[0].nrows();
        for (index, c) in coeffs.iter().enumerate() {
            if c.nrows() != m || c.ncols() != m {
                return Err(PolyError::CoefficientShape {
                    index,
                    rows: c.nrows(),
                    cols: c.ncols(),
                    m,
                });
            }
        }
        let mut coeffs = coeffs;
        let scale = coeffs
            .iter()
            .map(|c| block_max_modulus(c))
            .fold(0.0_f64, f64::max);
        let thr = TRIM_TOL * scale;
        while coeffs.len() > 1 && block_max_modulus(coeffs.last().unwrap()) <= thr {
            coeffs.pop();
        }
        Ok(Self { m, coeffs })
    }

    /// Zero polynomial of dimension `m`.
    pub fn zero(m: usize) -> Self {
        Self {
            m,
            coeffs: vec![CMatrix::zeros(m, m)],
        }
    }

    /// Degree-zero polynomial with the given constant value.
    pub fn constant(c: CMatrix) -> Self {
        Self {
            m: c.nrows(),
            coeffs: vec![c],
        }
    }

    /// Scalar (1x1) polynomial from complex coefficients `c_0 ..= c_q`.
    pub fn from_scalar_coeffs(coeffs: &[C64]) -> Result<Self, PolyError> {
        Self::new(
            coeffs
                .iter()
                .map(|&c| CMatrix::from_element(1, 1, c))
                .collect(),
        )
    }

    /// Scalar polynomial from real coefficients.
    pub fn from_real_coeffs(coeffs: &[f64]) -> Result<Self, PolyError> {
        Self::from_scalar_coeffs(
            &coeffs
                .iter()
                .map(|&c| C64::new(c, 0.0))
                .collect::<Vec<_>>(),
        )
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    /// Formal degree `q` (number of stored coefficients minus one).
    pub fn formal_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[CMatrix] {
        &self.coeffs
    }

    /// Coefficient of `s^k`; zero block past the formal degree.
    pub fn coeff(&self, k: usize) -> CMatrix {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| CMatrix::zeros(self.m, self.m))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && block_max_modulus(&self.coeffs[0]) == 0.0
    }

    /// Largest entry modulus over all coefficient blocks.
    pub fn max_coeff_modulus(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| block_max_modulus(c))
            .fold(0.0_f64, f64::max)
    }

    /// Evaluates `F(s)` by Horner recursion in the matrix coefficients.
    pub fn evaluate(&self, s: C64) -> CMatrix {
        let q = self.formal_degree();
        let mut acc = self.coeffs[q].clone();
        for k in (0..q).rev() {
            acc *= s;
            acc += &self.coeffs[k];
        }
        acc
    }

    /// The `#`-adjoint `F^#(s) := F^*(-s^*)`, i.e. `G_k = (-1)^k C_k^*`.
    /// An involution: applying it twice returns the original coefficients
    /// exactly.
    pub fn hash_adjoint(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let a = c.adjoint();
                if k % 2 == 1 {
                    -a
                } else {
                    a
                }
            })
            .collect();
        Self { m: self.m, coeffs }
    }

    /// McMillan degree: the numerical rank of the block upper-triangular,
    /// block-Toeplitz matrix with `C_q, C_{q-1}, ..., C_0` along the top block
    /// row and `C_q` on the block diagonal. Singular values above
    /// `rank_tol * sigma_max` count toward the rank. The all-zero polynomial
    /// has degree 0.
    pub fn mcmillan_degree(&self, rank_tol: f64) -> usize {
        let q = self.formal_degree();
        let m = self.m;
        let dim = (q + 1) * m;
        let mut t = CMatrix::zeros(dim, dim);
        for i in 0..=q {
            for j in i..=q {
                t.view_mut((i * m, j * m), (m, m))
                    .copy_from(&self.coeffs[q - (j - i)]);
            }
        }
        crate::linalg::numerical_rank(&t, rank_tol)
    }

    /// Reverse polynomial `s^q F(1/s)`: the coefficient list read backwards.
    /// The result is renormalized, so the reversal is an involution exactly
    /// when `C_0` is nonzero.
    pub fn reverse(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(coeffs).expect("reversing preserves shape")
    }

    /// Coefficientwise `self + scale * other`. The result is trimmed.
    pub fn add_scaled(&self, other: &Self, scale: C64) -> Result<Self, PolyError> {
        if self.m != other.m {
            return Err(PolyError::DimensionMismatch {
                left: self.m,
                right: other.m,
            });
        }
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for k in 0..len {
            let mut c = self.coeff(k);
            if k < other.coeffs.len() {
                c += &other.coeffs[k] * scale;
            }
            coeffs.push(c);
        }
        Self::new(coeffs)
    }
}

/// Largest entry modulus of a single block.
pub(crate) fn block_max_modulus(c: &CMatrix) -> f64 {
    c.iter().map(|z| z.norm()).fold(0.0_f64, f64::max)
}

/// Largest entry modulus of the difference of two equally sized blocks.
pub(crate) fn block_max_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0_f64, f64::max)
}
