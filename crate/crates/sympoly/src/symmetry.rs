//! Symmetry classes on the imaginary axis and sampled membership tests.
//!
//! Classes are algebraic where possible (coefficient parity for even/odd and
//! the general `C_k^* = (-1)^k A C_k B` relation) and sampled where not:
//! positivity and inertia along `i*R` are checked on a grid, and the
//! resulting [`SweepReport`] is a certificate of the sampling, not a proof.

use thiserror::Error;

use crate::grid::{Exclusions, GridSpec};
use crate::linalg;
use crate::poly::{block_max_diff, block_max_modulus, C64, CMatrix, MatrixPolynomial};

/// Tolerance for structural matrix identities (`J = J^* = J^{-1}` etc).
pub const STRUCTURE_TOL: f64 = 1e-10;
/// Condition-number guard for the structure matrices `A`, `B`, `J`, `R`.
pub const COND_LIMIT: f64 = 1e12;

#[derive(Debug, Error)]
pub enum SymmetryError {
    #[error("matrix {name} is {rows}x{cols}, expected {m}x{m}")]
    Shape {
        name: &'static str,
        rows: usize,
        cols: usize,
        m: usize,
    },
    #[error("matrix {name} is numerically singular (condition number {cond:.3e})")]
    IllConditioned { name: &'static str, cond: f64 },
    #[error("J is not a Hermitian involution (residual {residual:.3e})")]
    NotInvolution { residual: f64 },
    #[error("nu = {nu} outside [1, {max}]")]
    BadNu { nu: usize, max: usize },
    #[error("polynomial is not even (residual {residual:.3e})")]
    NotEven { residual: f64 },
    #[error("sweep grid is empty after exclusions")]
    EmptyGrid,
}

/// The symmetry a polynomial is required to carry on the imaginary axis.
#[derive(Debug, Clone)]
pub enum SymmetryClass {
    /// `F^#(s) = F(s)`: Hermitian-valued on `i*R`.
    Even,
    /// `F^#(s) = -F(s)`: skew-Hermitian-valued on `i*R`.
    Odd,
    /// `F^#(s) = J F(s) J` with `J = J^* = J^{-1}`.
    JEven { j: CMatrix },
    /// `F^#(s) = A F(s) B` with `A`, `B` nonsingular.
    GeneralAB { a: CMatrix, b: CMatrix },
    /// Even and positive semidefinite almost everywhere on `i*R`.
    Gpe,
    /// Even with constant inertia (`nu` negative, `m - nu` positive
    /// eigenvalues) almost everywhere on `i*R`; `R` parameterizes the neutral
    /// family `M = R diag{-I_nu, I_{m-nu}} R^*`.
    NuGpe { nu: usize, r: CMatrix },
}

impl SymmetryClass {
    pub fn name(&self) -> &'static str {
        match self {
            SymmetryClass::Even => "even",
            SymmetryClass::Odd => "odd",
            SymmetryClass::JEven { .. } => "j_even",
            SymmetryClass::GeneralAB { .. } => "general_ab",
            SymmetryClass::Gpe => "gpe",
            SymmetryClass::NuGpe { .. } => "nugpe",
        }
    }

    /// Validates the class payload against dimension `m`.
    pub fn validate(&self, m: usize) -> Result<(), SymmetryError> {
        let check_shape = |name, mat: &CMatrix| {
            if mat.nrows() != m || mat.ncols() != m {
                Err(SymmetryError::Shape {
                    name,
                    rows: mat.nrows(),
                    cols: mat.ncols(),
                    m,
                })
            } else {
                Ok(())
            }
        };
        let check_cond = |name, mat: &CMatrix| {
            let cond = linalg::condition_number(mat);
            if cond > COND_LIMIT {
                Err(SymmetryError::IllConditioned { name, cond })
            } else {
                Ok(())
            }
        };
        match self {
            SymmetryClass::Even | SymmetryClass::Odd | SymmetryClass::Gpe => Ok(()),
            SymmetryClass::JEven { j } => {
                check_shape("J", j)?;
                check_cond("J", j)?;
                let scale = 1.0 + block_max_modulus(j);
                let herm = block_max_diff(j, &j.adjoint());
                let invol = block_max_diff(&(j * j), &CMatrix::identity(m, m));
                let residual = herm.max(invol);
                if residual > STRUCTURE_TOL * scale {
                    return Err(SymmetryError::NotInvolution { residual });
                }
                Ok(())
            }
            SymmetryClass::GeneralAB { a, b } => {
                check_shape("A", a)?;
                check_shape("B", b)?;
                check_cond("A", a)?;
                check_cond("B", b)
            }
            SymmetryClass::NuGpe { nu, r } => {
                if m < 2 || *nu < 1 || *nu > m - 1 {
                    return Err(SymmetryError::BadNu {
                        nu: *nu,
                        max: m.saturating_sub(1),
                    });
                }
                check_shape("R", r)?;
                check_cond("R", r)
            }
        }
    }

    /// The pair `(A, B)` of the coefficient relation `C_k^* = (-1)^k A C_k B`
    /// realizing this class, with `B = (A^*)^{-1}` for every built-in case:
    /// even and the GPE/nuGPE classes use `A = I`, odd uses `A = iI`,
    /// `J`-even uses `A = J`.
    pub fn ab_pair(&self, m: usize) -> (CMatrix, CMatrix) {
        let id = CMatrix::identity(m, m);
        match self {
            SymmetryClass::Even | SymmetryClass::Gpe | SymmetryClass::NuGpe { .. } => {
                (id.clone(), id)
            }
            SymmetryClass::Odd => {
                let i_id = &id * C64::new(0.0, 1.0);
                (i_id.clone(), i_id)
            }
            SymmetryClass::JEven { j } => (j.clone(), j.clone()),
            SymmetryClass::GeneralAB { a, b } => (a.clone(), b.clone()),
        }
    }
}

/// Evidence gathered by a sampled membership sweep along `s = i*omega`.
#[derive(Debug, Clone)]
pub struct SweepReport {
    /// The omega samples that were inspected, ascending.
    pub grid: Vec<f64>,
    /// Most violating quantity seen: the smallest `lambda_min` for a GPE
    /// sweep, the largest inertia mismatch count for a nuGPE sweep.
    pub worst_value: f64,
    /// Grid point where `worst_value` occurred.
    pub worst_omega: f64,
    pub verdict: bool,
}

/// Largest entry deviation between `F` and its `#`-adjoint.
pub fn even_residual(f: &MatrixPolynomial) -> f64 {
    let g = f.hash_adjoint();
    f.coeffs()
        .iter()
        .zip(g.coeffs())
        .map(|(a, b)| block_max_diff(a, b))
        .fold(0.0_f64, f64::max)
}

/// Largest entry deviation between `F` and the negated `#`-adjoint.
pub fn odd_residual(f: &MatrixPolynomial) -> f64 {
    let g = f.hash_adjoint();
    f.coeffs()
        .iter()
        .zip(g.coeffs())
        .map(|(a, b)| block_max_diff(a, &(-b)))
        .fold(0.0_f64, f64::max)
}

/// `F^# = F` up to `tol` relative to the coefficient scale. Equivalently the
/// even-indexed coefficients are Hermitian and the odd-indexed ones
/// skew-Hermitian.
pub fn is_even(f: &MatrixPolynomial, tol: f64) -> bool {
    even_residual(f) <= tol * (1.0 + f.max_coeff_modulus())
}

/// `F^# = -F` up to `tol` relative to the coefficient scale.
pub fn is_odd(f: &MatrixPolynomial, tol: f64) -> bool {
    odd_residual(f) <= tol * (1.0 + f.max_coeff_modulus())
}

/// Checks the coefficient relation `C_k^* = (-1)^k A C_k B` for all `k`.
/// Rejects singular `A` or `B`.
pub fn satisfies_general_ab(
    f: &MatrixPolynomial,
    a: &CMatrix,
    b: &CMatrix,
    tol: f64,
) -> Result<bool, SymmetryError> {
    let m = f.dim();
    let class = SymmetryClass::GeneralAB {
        a: a.clone(),
        b: b.clone(),
    };
    class.validate(m)?;
    let scale = (1.0 + f.max_coeff_modulus())
        * (1.0 + linalg::spectral_norm(a) * linalg::spectral_norm(b));
    let residual = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let mut rhs = a * c * b;
            if k % 2 == 1 {
                rhs = -rhs;
            }
            block_max_diff(&c.adjoint(), &rhs)
        })
        .fold(0.0_f64, f64::max);
    Ok(residual <= tol * scale)
}

/// Sweeps `lambda_min` of the Hermitian part of `F(i*omega)` over the grid.
/// Verdict: the minimum stays above `-tol`. Requires an even `F`.
pub fn gpe_sweep(
    f: &MatrixPolynomial,
    spec: &GridSpec,
    tol: f64,
) -> Result<SweepReport, SymmetryError> {
    if !is_even(f, 1e-8) {
        return Err(SymmetryError::NotEven {
            residual: even_residual(f),
        });
    }
    let grid = spec.build();
    let mut worst_value = f64::INFINITY;
    let mut worst_omega = grid[0];
    for &w in &grid {
        let v = linalg::lambda_min(&f.evaluate(C64::new(0.0, w)));
        if v < worst_value {
            worst_value = v;
            worst_omega = w;
        }
    }
    Ok(SweepReport {
        verdict: worst_value >= -tol,
        grid,
        worst_value,
        worst_omega,
    })
}

/// Sweeps the inertia of `F(i*omega)`: at every non-excluded grid point the
/// Hermitian part must have exactly `nu` eigenvalues below `-tol` and
/// `m - nu` above `tol`. `worst_value` is the largest mismatch count.
pub fn nugpe_sweep(
    f: &MatrixPolynomial,
    nu: usize,
    spec: &GridSpec,
    tol: f64,
    exclusions: &Exclusions,
) -> Result<SweepReport, SymmetryError> {
    let m = f.dim();
    if m < 2 || nu < 1 || nu > m - 1 {
        return Err(SymmetryError::BadNu {
            nu,
            max: m.saturating_sub(1),
        });
    }
    if !is_even(f, 1e-8) {
        return Err(SymmetryError::NotEven {
            residual: even_residual(f),
        });
    }
    let grid = spec.build();
    let mut worst: Option<(usize, f64)> = None;
    for &w in &grid {
        if exclusions.contains(w) {
            continue;
        }
        let inertia = linalg::inertia(&f.evaluate(C64::new(0.0, w)), tol);
        let mismatch =
            inertia.neg.abs_diff(nu) + inertia.pos.abs_diff(m - nu);
        match worst {
            Some((worst_count, _)) if mismatch <= worst_count => {}
            _ => worst = Some((mismatch, w)),
        }
    }
    let (count, omega) = worst.ok_or(SymmetryError::EmptyGrid)?;
    Ok(SweepReport {
        grid,
        worst_value: count as f64,
        worst_omega: omega,
        verdict: count == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> GridSpec {
        GridSpec::new(40.0, 1024)
    }

    #[test]
    fn even_odd_classification() {
        let p4 = MatrixPolynomial::from_real_coeffs(&[-13.0, 0.0, 34.0, 0.0, -3.0]).unwrap();
        assert!(is_even(&p4, 1e-10));
        assert!(!is_odd(&p4, 1e-10));

        // A real s-term breaks evenness: C_1 = 180 is Hermitian, not skew.
        let f1 = MatrixPolynomial::from_real_coeffs(&[-121.0, 180.0, -45.0]).unwrap();
        assert!(!is_even(&f1, 1e-10));

        // i*I*s is even (skew-Hermitian odd coefficient) ...
        let i_s = MatrixPolynomial::new(vec![
            CMatrix::zeros(2, 2),
            CMatrix::identity(2, 2) * C64::new(0.0, 1.0),
        ])
        .unwrap();
        assert!(is_even(&i_s, 1e-10));

        // ... while s*I is odd and not even.
        let s_i =
            MatrixPolynomial::new(vec![CMatrix::zeros(2, 2), CMatrix::identity(2, 2)]).unwrap();
        assert!(is_odd(&s_i, 1e-10));
        assert!(!is_even(&s_i, 1e-10));
        assert!(!is_odd(&MatrixPolynomial::constant(CMatrix::identity(2, 2)), 1e-10));

        // s^3 - 4s.
        let cubic = MatrixPolynomial::from_real_coeffs(&[0.0, -4.0, 0.0, 1.0]).unwrap();
        assert!(is_odd(&cubic, 1e-10));
    }

    #[test]
    fn general_ab_relation() {
        // Even is the A = B = I case.
        let p4 = MatrixPolynomial::from_real_coeffs(&[-13.0, 0.0, 34.0, 0.0, -3.0]).unwrap();
        let id1 = CMatrix::identity(1, 1);
        assert!(satisfies_general_ab(&p4, &id1, &id1, 1e-10).unwrap());

        // Odd instance: A = iI, B = (A^*)^{-1} = iI, F = s I.
        let s_i = MatrixPolynomial::new(vec![CMatrix::zeros(2, 2), CMatrix::identity(2, 2)]).unwrap();
        let a = CMatrix::identity(2, 2) * C64::new(0.0, 1.0);
        assert!(satisfies_general_ab(&s_i, &a, &a, 1e-10).unwrap());

        // J = diag{1,-1}, F = diag{s^2, -s^2}.
        let j = CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(-1.0, 0.0),
            ],
        );
        let f = MatrixPolynomial::new(vec![CMatrix::zeros(2, 2), CMatrix::zeros(2, 2), j.clone()])
            .unwrap();
        assert!(satisfies_general_ab(&f, &j, &j, 1e-10).unwrap());

        // Singular A rejected.
        let sing = CMatrix::zeros(2, 2);
        assert!(satisfies_general_ab(&f, &sing, &j, 1e-10).is_err());
    }

    #[test]
    fn gpe_sweep_examples() {
        let p = MatrixPolynomial::from_real_coeffs(&[5.0, 0.0, -1.0]).unwrap();
        let rep = gpe_sweep(&p, &spec(), 1e-9).unwrap();
        assert!(rep.verdict);
        assert!((rep.worst_value - 5.0).abs() < 1e-12);
        assert_eq!(rep.worst_omega, 0.0);
        assert!(rep.grid.contains(&rep.worst_omega));

        let p4 = MatrixPolynomial::from_real_coeffs(&[-13.0, 0.0, 34.0, 0.0, -3.0]).unwrap();
        let rep = gpe_sweep(&p4, &spec(), 1e-9).unwrap();
        assert!(!rep.verdict);
        assert!((rep.worst_value + 13.0).abs() < 1e-12);
        assert_eq!(rep.worst_omega, 0.0);

        let zero = MatrixPolynomial::zero(1);
        let rep = gpe_sweep(&zero, &spec(), 1e-9).unwrap();
        assert!(rep.verdict);
        assert_eq!(rep.worst_value, 0.0);

        // Non-even input rejected.
        let f1 = MatrixPolynomial::from_real_coeffs(&[-121.0, 180.0, -45.0]).unwrap();
        assert!(gpe_sweep(&f1, &spec(), 1e-9).is_err());
    }

    #[test]
    fn nugpe_sweep_examples() {
        // F(s) = diag{s^2 - 1, 1 - s^2}: eigenvalues -(1 + w^2) and 1 + w^2.
        let d = |a: f64, b: f64| {
            CMatrix::from_row_slice(
                2,
                2,
                &[
                    C64::new(a, 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(b, 0.0),
                ],
            )
        };
        let f = MatrixPolynomial::new(vec![d(-1.0, 1.0), CMatrix::zeros(2, 2), d(1.0, -1.0)])
            .unwrap();
        let rep = nugpe_sweep(&f, 1, &spec(), 1e-9, &Exclusions::none()).unwrap();
        assert!(rep.verdict);

        // Identity has inertia (0, 2) everywhere: wrong for nu = 1.
        let id = MatrixPolynomial::constant(CMatrix::identity(2, 2));
        assert!(!nugpe_sweep(&id, 1, &spec(), 1e-9, &Exclusions::none())
            .unwrap()
            .verdict);

        // The non-convexity witness: 3*I_2 = diag{-1,4} + diag{4,-1} fails.
        let three_i = MatrixPolynomial::constant(CMatrix::identity(2, 2).scale(3.0));
        assert!(!nugpe_sweep(&three_i, 1, &spec(), 1e-9, &Exclusions::none())
            .unwrap()
            .verdict);
        let a = MatrixPolynomial::constant(d(-1.0, 4.0));
        let b = MatrixPolynomial::constant(d(4.0, -1.0));
        assert!(nugpe_sweep(&a, 1, &spec(), 1e-9, &Exclusions::none())
            .unwrap()
            .verdict);
        assert!(nugpe_sweep(&b, 1, &spec(), 1e-9, &Exclusions::none())
            .unwrap()
            .verdict);

        // nu out of range.
        assert!(nugpe_sweep(&id, 2, &spec(), 1e-9, &Exclusions::none()).is_err());
    }

    #[test]
    fn jeven_validation() {
        let j = CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
            ],
        );
        assert!(SymmetryClass::JEven { j }.validate(2).is_ok());
        let not_inv = CMatrix::identity(2, 2).scale(2.0);
        assert!(matches!(
            SymmetryClass::JEven { j: not_inv }.validate(2),
            Err(SymmetryError::NotInvolution { .. })
        ));
    }
}
