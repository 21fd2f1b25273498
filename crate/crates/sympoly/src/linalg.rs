//! Dense complex linear-algebra helpers shared across the solver: Hermitian
//! eigenvalues, singular values, numerical rank, inertia and Cholesky-based
//! congruences.

use nalgebra::{Cholesky, Dyn, SymmetricEigen};

use crate::poly::{C64, CMatrix};

/// Hermitian part `(A + A^*)/2`.
pub fn hermitian_part(a: &CMatrix) -> CMatrix {
    let mut h = a.adjoint();
    h += a;
    h * C64::new(0.5, 0.0)
}

/// Frobenius norm of `A - A^*`.
pub fn asymmetry(a: &CMatrix) -> f64 {
    (a - a.adjoint()).norm()
}

/// Eigenvalues of a Hermitian matrix, ascending. The input is hermitized
/// first, so rounding-level asymmetry is tolerated.
pub fn eigvalsh(a: &CMatrix) -> Vec<f64> {
    let h = hermitian_part(a);
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn lambda_min(a: &CMatrix) -> f64 {
    eigvalsh(a)[0]
}

/// Singular values, descending.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    let mut sv: Vec<f64> = a
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// Spectral norm (largest singular value). Zero for an empty matrix.
pub fn spectral_norm(a: &CMatrix) -> f64 {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0.0;
    }
    singular_values(a)[0]
}

/// Two-norm condition number `sigma_max / sigma_min`; infinite when singular.
pub fn condition_number(a: &CMatrix) -> f64 {
    let sv = singular_values(a);
    match (sv.first(), sv.last()) {
        (Some(&smax), Some(&smin)) if smin > 0.0 => smax / smin,
        _ => f64::INFINITY,
    }
}

/// Number of singular values above `rel_tol * sigma_max`.
pub fn numerical_rank(a: &CMatrix, rel_tol: f64) -> usize {
    let sv = singular_values(a);
    match sv.first() {
        Some(&smax) if smax > 0.0 => sv.iter().filter(|&&s| s > rel_tol * smax).count(),
        _ => 0,
    }
}

/// Eigenvalue sign counts of a Hermitian matrix; `|lambda| <= tol` counts as
/// zero. Invariant under nonsingular congruence by Sylvester's law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub neg: usize,
    pub zero: usize,
    pub pos: usize,
}

pub fn inertia(a: &CMatrix, tol: f64) -> Inertia {
    let ev = eigvalsh(a);
    let neg = ev.iter().filter(|&&l| l < -tol).count();
    let pos = ev.iter().filter(|&&l| l > tol).count();
    Inertia {
        neg,
        zero: ev.len() - neg - pos,
        pos,
    }
}

/// Cholesky factor `L` of a Hermitian positive definite `M = L L^*`.
/// `None` when `M` is not positive definite.
pub fn cholesky_factor(m: &CMatrix) -> Option<CMatrix> {
    Cholesky::<C64, Dyn>::new(hermitian_part(m)).map(|c| c.l())
}

/// Congruence `L^{-1} H L^{-*}` by triangular solves. For Hermitian `H` and
/// `M = L L^*` the result shares its spectrum with `M^{-1} H`.
pub fn congruence_by_inverse_factor(l: &CMatrix, h: &CMatrix) -> Option<CMatrix> {
    let x = l.solve_lower_triangular(h)?;
    let y = l.solve_lower_triangular(&x.adjoint())?;
    Some(y.adjoint())
}

/// `A^{-1}` via LU; `None` when singular to working precision.
pub fn try_inverse(a: &CMatrix) -> Option<CMatrix> {
    a.clone().lu().try_inverse()
}
