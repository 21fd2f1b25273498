//! Minimal-degree neutral polynomials: structured polynomials vanishing at
//! every interpolation node.
//!
//! The family is `Psi(s) = prod_j (x_j - s) M (x_j^* + s)` over the reduced
//! nodes, with the parameter matrix `M` carrying the class structure
//! (Hermitian for even, skew-Hermitian for odd, `A M` Hermitian in general,
//! positive semidefinite for GPE, `R diag{-I_nu, I_{m-nu}} R^*` for nuGPE).
//! Each scalar factor `(x_j - s)(x_j^* + s)` commutes past `M`, so the
//! expansion is one scalar convolution applied to `M` at the end. On the
//! axis the family collapses to `Psi(i w) = M prod_j |x_j - i w|^2`.

use thiserror::Error;

use crate::interp::ReducedData;
use crate::linalg;
use crate::poly::{block_max_diff, block_max_modulus, C64, CMatrix, MatrixPolynomial};
use crate::symmetry::SymmetryClass;

/// Tolerance for the class constraint on `M`, relative to its scale.
pub const CONSTRAINT_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum NeutralError {
    #[error("M is {rows}x{cols}, expected {m}x{m}")]
    Shape { rows: usize, cols: usize, m: usize },
    #[error("M violates the {class} constraint (residual {residual:.3e})")]
    ConstraintViolated { class: &'static str, residual: f64 },
    #[error("cannot normalize a zero matrix")]
    ZeroMatrix,
    #[error("no nodes")]
    EmptyNodes,
}

/// A neutral polynomial: the reduced nodes, the parameter matrix and the
/// cached expansion of degree `2n` (degree 0 when `M = 0`).
#[derive(Debug, Clone)]
pub struct NeutralPolynomial {
    nodes: Vec<C64>,
    m_param: CMatrix,
    expansion: MatrixPolynomial,
}

impl NeutralPolynomial {
    pub fn nodes(&self) -> &[C64] {
        &self.nodes
    }

    pub fn m_param(&self) -> &CMatrix {
        &self.m_param
    }

    pub fn expansion(&self) -> &MatrixPolynomial {
        &self.expansion
    }

    pub fn dim(&self) -> usize {
        self.m_param.nrows()
    }

    /// Whether `M` carries unit spectral norm (the normalization the
    /// threshold formulas assume).
    pub fn is_normalized(&self) -> bool {
        (linalg::spectral_norm(&self.m_param) - 1.0).abs() <= CONSTRAINT_TOL
    }

    /// On-axis shortcut `Psi(i w) = M prod_j |x_j - i w|^2`, bypassing the
    /// expansion.
    pub fn on_axis(&self, omega: f64) -> CMatrix {
        &self.m_param * C64::new(axis_weight(&self.nodes, omega), 0.0)
    }
}

/// `prod_j |x_j - i w|^2`: the scalar weight of the neutral family on the
/// imaginary axis.
pub fn axis_weight(nodes: &[C64], omega: f64) -> f64 {
    nodes
        .iter()
        .map(|x| x.re * x.re + (x.im - omega) * (x.im - omega))
        .product()
}

/// Spectral-norm normalization `M / ||M||_2`.
pub fn normalize_spectral(m_param: &CMatrix) -> Result<CMatrix, NeutralError> {
    let norm = linalg::spectral_norm(m_param);
    if norm <= 0.0 {
        return Err(NeutralError::ZeroMatrix);
    }
    Ok(m_param / C64::new(norm, 0.0))
}

/// A default parameter matrix satisfying the class constraint with unit
/// spectral norm: `I` for even/GPE (and `J`-even, since `J I` is Hermitian),
/// `iI` for odd, `A^{-1}` normalized for a general `(A, B)` pair, and
/// `R diag{-I_nu, I_{m-nu}} R^*` normalized for nuGPE.
pub fn default_m_param(class: &SymmetryClass, m: usize) -> CMatrix {
    match class {
        SymmetryClass::Even | SymmetryClass::Gpe | SymmetryClass::JEven { .. } => {
            CMatrix::identity(m, m)
        }
        SymmetryClass::Odd => CMatrix::identity(m, m) * C64::new(0.0, 1.0),
        SymmetryClass::GeneralAB { a, .. } => {
            let inv = linalg::try_inverse(a).unwrap_or_else(|| CMatrix::identity(m, m));
            normalize_spectral(&inv).unwrap_or_else(|_| CMatrix::identity(m, m))
        }
        SymmetryClass::NuGpe { nu, r } => {
            let m_raw = r * signature(m, *nu) * r.adjoint();
            normalize_spectral(&m_raw).unwrap_or(m_raw)
        }
    }
}

/// `diag{-I_nu, I_{m-nu}}`.
pub fn signature(m: usize, nu: usize) -> CMatrix {
    CMatrix::from_fn(m, m, |i, j| {
        if i != j {
            C64::new(0.0, 0.0)
        } else if i < nu {
            C64::new(-1.0, 0.0)
        } else {
            C64::new(1.0, 0.0)
        }
    })
}

/// Builds the neutral polynomial over the reduced nodes, rejecting an `M`
/// that violates the class constraint. The expansion vanishes at every
/// original node: both `x` and `-x^*` kill the product.
pub fn build_neutral(
    reduced: &ReducedData,
    m_param: CMatrix,
    class: &SymmetryClass,
) -> Result<NeutralPolynomial, NeutralError> {
    build_neutral_at(&reduced.nodes, m_param, class)
}

/// As [`build_neutral`], from a bare node list.
pub fn build_neutral_at(
    nodes: &[C64],
    m_param: CMatrix,
    class: &SymmetryClass,
) -> Result<NeutralPolynomial, NeutralError> {
    if nodes.is_empty() {
        return Err(NeutralError::EmptyNodes);
    }
    let m = m_param.nrows();
    if m_param.ncols() != m {
        return Err(NeutralError::Shape {
            rows: m_param.nrows(),
            cols: m_param.ncols(),
            m,
        });
    }
    check_class_constraint(&m_param, class)?;

    // Scalar profile prod_j (x_j - s)(x_j^* + s); each factor expands to
    // |x_j|^2 + (x_j - x_j^*) s - s^2.
    let mut profile: Vec<C64> = vec![C64::new(1.0, 0.0)];
    for x in nodes {
        let factor = [
            C64::new(x.norm_sqr(), 0.0),
            x - x.conj(),
            C64::new(-1.0, 0.0),
        ];
        profile = convolve(&profile, &factor);
    }
    let coeffs: Vec<CMatrix> = profile.iter().map(|&c| &m_param * c).collect();
    let expansion = MatrixPolynomial::new(coeffs).expect("profile is nonempty");
    Ok(NeutralPolynomial {
        nodes: nodes.to_vec(),
        m_param,
        expansion,
    })
}

fn check_class_constraint(m_param: &CMatrix, class: &SymmetryClass) -> Result<(), NeutralError> {
    let scale = 1.0 + block_max_modulus(m_param);
    let fail = |class: &'static str, residual: f64| {
        if residual > CONSTRAINT_TOL * scale {
            Err(NeutralError::ConstraintViolated { class, residual })
        } else {
            Ok(())
        }
    };
    match class {
        SymmetryClass::Even => fail("even (M Hermitian)", linalg::asymmetry(m_param)),
        SymmetryClass::Odd => fail(
            "odd (M skew-Hermitian)",
            (m_param + m_param.adjoint()).norm(),
        ),
        SymmetryClass::JEven { j } => {
            let jm = j * m_param;
            fail("j_even (J M Hermitian)", linalg::asymmetry(&jm))
        }
        SymmetryClass::GeneralAB { a, .. } => {
            let am = a * m_param;
            fail("general_ab (A M Hermitian)", linalg::asymmetry(&am))
        }
        SymmetryClass::Gpe => {
            fail("gpe (M Hermitian)", linalg::asymmetry(m_param))?;
            let lambda_min = linalg::lambda_min(m_param);
            if lambda_min < -CONSTRAINT_TOL * scale {
                Err(NeutralError::ConstraintViolated {
                    class: "gpe (M positive semidefinite)",
                    residual: -lambda_min,
                })
            } else {
                Ok(())
            }
        }
        SymmetryClass::NuGpe { nu, r } => {
            let expected = r * signature(m_param.nrows(), *nu) * r.adjoint();
            fail(
                "nugpe (M = R diag{-I,I} R^*)",
                block_max_diff(m_param, &expected),
            )
        }
    }
}

fn convolve(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}
