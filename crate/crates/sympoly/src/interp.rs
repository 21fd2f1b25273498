//! Feasibility checking, data reduction and the block-Vandermonde solve that
//! produces the minimal-degree structured interpolant `P(s)`.
//!
//! The structured system doubles each node `x_j` with its mirror `-x_j^*`
//! and each value `Y_j` with `(A Y_j B)^*`. Because the block-Vandermonde
//! matrix factors as `X_hat (x) I_m`, one scalar Vandermonde factorization
//! serves all `m^2` right-hand sides.

use std::fmt;

use thiserror::Error;

use crate::linalg;
use crate::poly::{block_max_diff, block_max_modulus, C64, CMatrix, MatrixPolynomial, PolyError};
use crate::symmetry::{SymmetryClass, SymmetryError, COND_LIMIT};

#[derive(Debug, Error)]
pub enum InterpError {
    #[error("no interpolation data")]
    EmptyData,
    #[error("{nodes} nodes but {values} values")]
    LengthMismatch { nodes: usize, values: usize },
    #[error("value {index} is {rows}x{cols}, expected {m}x{m}")]
    ValueShape {
        index: usize,
        rows: usize,
        cols: usize,
        m: usize,
    },
    #[error("node {index} is not finite")]
    NonFiniteNode { index: usize },
    #[error("infeasible data: {0:?}")]
    Infeasible(Vec<Violation>),
    #[error(
        "Vandermonde system is near-singular (condition {cond:.3e}); closest node pair {a} and {b} at distance {dist:.3e}"
    )]
    NearSingular { cond: f64, a: C64, b: C64, dist: f64 },
    #[error(
        "coincident interpolation conditions at {node} disagree (residual {residual:.3e})"
    )]
    InconsistentCluster { node: C64, residual: f64 },
    #[error("duplicate nodes {a} and {b} in an unstructured solve")]
    DuplicateNodes { a: C64, b: C64 },
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// One failed feasibility condition. Violations are data, not exceptions:
/// [`InterpolationProblem::check_feasible`] returns all of them.
#[derive(Debug, Clone)]
pub enum Violation {
    /// `x_j = x_k` but `Y_j != Y_k`.
    DuplicateNode { j: usize, k: usize, residual: f64 },
    /// `x_j + x_k^* = 0` but `Y_j != (A Y_k B)^*`. With `j = k` this is an
    /// on-axis node whose value lacks the required symmetry.
    MirrorPair { j: usize, k: usize, residual: f64 },
    /// GPE data: an on-axis value with a negative eigenvalue.
    OnAxisNotPsd { j: usize, lambda_min: f64 },
    /// nuGPE data: an on-axis value whose inertia is not `(nu, 0, m - nu)`.
    /// Singular values (nonzero `zero` count) are unsupported.
    OnAxisInertia {
        j: usize,
        nu: usize,
        found: linalg::Inertia,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateNode { j, k, residual } => write!(
                f,
                "nodes {j} and {k} coincide but their values differ (residual {residual:.3e})"
            ),
            Violation::MirrorPair { j, k, residual } if j == k => write!(
                f,
                "on-axis node {j}: value must equal (A Y B)^* (residual {residual:.3e})"
            ),
            Violation::MirrorPair { j, k, residual } => write!(
                f,
                "mirror pair ({j}, {k}): Y_{j} must equal (A Y_{k} B)^* (residual {residual:.3e})"
            ),
            Violation::OnAxisNotPsd { j, lambda_min } => write!(
                f,
                "on-axis node {j}: value must be positive semidefinite (lambda_min {lambda_min:.3e})"
            ),
            Violation::OnAxisInertia { j, nu, found } => write!(
                f,
                "on-axis node {j}: inertia must be ({nu} negative, 0 zero, rest positive); found ({}, {}, {})",
                found.neg, found.zero, found.pos
            ),
        }
    }
}

/// An interpolation problem: map each node `x_j` to the matrix `Y_j` with an
/// interpolant carrying the given symmetry class.
#[derive(Debug, Clone)]
pub struct InterpolationProblem {
    pub m: usize,
    pub nodes: Vec<C64>,
    pub values: Vec<CMatrix>,
    pub symmetry: SymmetryClass,
    /// Nodes closer than this are treated as coincident.
    pub match_tol: f64,
}

impl InterpolationProblem {
    /// Validates shapes and finiteness; `match_tol` defaults to
    /// `1e-9 * (1 + max_j |x_j|)`.
    pub fn new(
        nodes: Vec<C64>,
        values: Vec<CMatrix>,
        symmetry: SymmetryClass,
    ) -> Result<Self, InterpError> {
        if nodes.is_empty() {
            return Err(InterpError::EmptyData);
        }
        if nodes.len() != values.len() {
            return Err(InterpError::LengthMismatch {
                nodes: nodes.len(),
                values: values.len(),
            });
        }
        for (index, x) in nodes.iter().enumerate() {
            if !x.re.is_finite() || !x.im.is_finite() {
                return Err(InterpError::NonFiniteNode { index });
            }
        }
        let m = values[0].nrows();
        for (index, y) in values.iter().enumerate() {
            if y.nrows() != m || y.ncols() != m {
                return Err(InterpError::ValueShape {
                    index,
                    rows: y.nrows(),
                    cols: y.ncols(),
                    m,
                });
            }
        }
        symmetry.validate(m)?;
        let match_tol = default_match_tol(&nodes);
        Ok(Self {
            m,
            nodes,
            values,
            symmetry,
            match_tol,
        })
    }

    pub fn with_match_tol(mut self, match_tol: f64) -> Self {
        self.match_tol = match_tol;
        self
    }

    /// All feasibility violations; an empty list means the data admits an
    /// interpolant of the declared class. Duplicate nodes must share values,
    /// mirror pairs (`x_j + x_k^* = 0`, including an on-axis node paired with
    /// itself) must satisfy `Y_j = (A Y_k B)^*`, and on-axis values must be
    /// positive semidefinite (GPE) or carry inertia `(nu, m - nu)` (nuGPE).
    pub fn check_feasible(&self) -> Vec<Violation> {
        check_feasible(self)
    }
}

fn default_match_tol(nodes: &[C64]) -> f64 {
    let max_x = nodes.iter().map(|x| x.norm()).fold(0.0_f64, f64::max);
    1e-9 * (1.0 + max_x)
}

pub fn check_feasible(problem: &InterpolationProblem) -> Vec<Violation> {
    let mut violations = Vec::new();
    let (a, b) = problem.symmetry.ab_pair(problem.m);
    let tol = problem.match_tol;
    let p = problem.nodes.len();
    for j in 0..p {
        let yj = &problem.values[j];
        let value_scale = 1.0 + block_max_modulus(yj);
        for k in j..p {
            let xj = problem.nodes[j];
            let xk = problem.nodes[k];
            let yk = &problem.values[k];
            let pair_scale = value_scale.max(1.0 + block_max_modulus(yk));
            if k > j && (xj - xk).norm() <= tol {
                let residual = block_max_diff(yj, yk);
                if residual > tol * pair_scale {
                    violations.push(Violation::DuplicateNode { j, k, residual });
                }
            }
            if (xj + xk.conj()).norm() <= tol {
                let expected = (&a * yk * &b).adjoint();
                let residual = block_max_diff(yj, &expected);
                if residual > tol * pair_scale {
                    violations.push(Violation::MirrorPair { j, k, residual });
                }
            }
        }
        let on_axis = problem.nodes[j].re.abs() <= tol;
        if on_axis {
            match &problem.symmetry {
                SymmetryClass::Gpe => {
                    let lambda_min = linalg::lambda_min(yj);
                    if lambda_min < -tol * value_scale {
                        violations.push(Violation::OnAxisNotPsd { j, lambda_min });
                    }
                }
                SymmetryClass::NuGpe { nu, .. } => {
                    let found = linalg::inertia(yj, tol * value_scale);
                    if found.neg != *nu || found.pos != problem.m - *nu {
                        violations.push(Violation::OnAxisInertia { j, nu: *nu, found });
                    }
                }
                _ => {}
            }
        }
    }
    violations
}

/// A maximal subset of the nodes with no duplicates and no mirror pairs,
/// produced by a greedy scan in input order. The subset is not unique but its
/// size is.
#[derive(Debug, Clone)]
pub struct ReducedData {
    pub nodes: Vec<C64>,
    pub values: Vec<CMatrix>,
    /// Indices into the original problem, one per kept node.
    pub kept_indices: Vec<usize>,
    pub match_tol: f64,
}

impl ReducedData {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Extracts the reduced data set, keeping the earliest node of every
/// duplicate/mirror cluster. Rejects infeasible data.
pub fn reduce_data(problem: &InterpolationProblem) -> Result<ReducedData, InterpError> {
    let violations = check_feasible(problem);
    if !violations.is_empty() {
        return Err(InterpError::Infeasible(violations));
    }
    let tol = problem.match_tol;
    let mut kept: Vec<usize> = Vec::new();
    'candidates: for (idx, &x) in problem.nodes.iter().enumerate() {
        for &ki in &kept {
            let y = problem.nodes[ki];
            if (x - y).norm() <= tol || (x + y.conj()).norm() <= tol {
                continue 'candidates;
            }
        }
        kept.push(idx);
    }
    Ok(ReducedData {
        nodes: kept.iter().map(|&i| problem.nodes[i]).collect(),
        values: kept.iter().map(|&i| problem.values[i].clone()).collect(),
        kept_indices: kept,
        match_tol: tol,
    })
}

/// Solves the structured interpolation problem of the reduced data: finds the
/// minimal-degree `P` with `P(x_j) = Y_j`, `P(-x_j^*) = (A Y_j B)^*` and
/// formal degree at most `2n - 1`.
///
/// Nodes of the doubled set that coincide within `match_tol` (on-axis nodes
/// are their own mirrors) are merged after a consistency check, which lowers
/// the degree accordingly. When `B = (A^*)^{-1}` the output coefficients
/// satisfy `C_k^* = (-1)^k A C_k B`.
pub fn solve_structured(
    reduced: &ReducedData,
    a: &CMatrix,
    b: &CMatrix,
) -> Result<MatrixPolynomial, InterpError> {
    if reduced.is_empty() {
        return Err(InterpError::EmptyData);
    }
    let m = reduced.values[0].nrows();
    for (name, mat) in [("A", a), ("B", b)] {
        if mat.nrows() != m || mat.ncols() != m {
            return Err(SymmetryError::Shape {
                name,
                rows: mat.nrows(),
                cols: mat.ncols(),
                m,
            }
            .into());
        }
        let cond = linalg::condition_number(mat);
        if cond > COND_LIMIT {
            return Err(SymmetryError::IllConditioned { name, cond }.into());
        }
    }

    let mut doubled: Vec<(C64, CMatrix)> = Vec::with_capacity(2 * reduced.len());
    for (x, y) in reduced.nodes.iter().zip(&reduced.values) {
        doubled.push((*x, y.clone()));
    }
    for (x, y) in reduced.nodes.iter().zip(&reduced.values) {
        doubled.push((-x.conj(), (a * y * b).adjoint()));
    }

    // Merge coincident conditions (self-mirrored on-axis nodes).
    let mut nodes: Vec<C64> = Vec::new();
    let mut rhs: Vec<CMatrix> = Vec::new();
    'merge: for (x, y) in doubled {
        for (kept_x, kept_y) in nodes.iter().zip(&rhs) {
            if (x - kept_x).norm() <= reduced.match_tol {
                let scale = 1.0 + block_max_modulus(kept_y).max(block_max_modulus(&y));
                let residual = block_max_diff(kept_y, &y);
                if residual > 1e-8 * scale {
                    return Err(InterpError::InconsistentCluster { node: x, residual });
                }
                continue 'merge;
            }
        }
        nodes.push(x);
        rhs.push(y);
    }

    vandermonde_solve(&nodes, &rhs)
}

/// Classical unstructured interpolation: the unique polynomial of degree at
/// most `p - 1` through `p` distinct nodes.
pub fn solve_unstructured(
    nodes: &[C64],
    values: &[CMatrix],
) -> Result<MatrixPolynomial, InterpError> {
    if nodes.is_empty() {
        return Err(InterpError::EmptyData);
    }
    if nodes.len() != values.len() {
        return Err(InterpError::LengthMismatch {
            nodes: nodes.len(),
            values: values.len(),
        });
    }
    let tol = default_match_tol(nodes);
    for j in 0..nodes.len() {
        for k in (j + 1)..nodes.len() {
            if (nodes[j] - nodes[k]).norm() <= tol {
                return Err(InterpError::DuplicateNodes {
                    a: nodes[j],
                    b: nodes[k],
                });
            }
        }
    }
    vandermonde_solve(nodes, values)
}

/// Shared scalar-Vandermonde engine: one LU factorization, `m^2` right-hand
/// sides, one step of iterative refinement.
fn vandermonde_solve(nodes: &[C64], values: &[CMatrix]) -> Result<MatrixPolynomial, InterpError> {
    let k = nodes.len();
    let m = values[0].nrows();
    let mut v = CMatrix::zeros(k, k);
    for (i, &x) in nodes.iter().enumerate() {
        let mut power = C64::new(1.0, 0.0);
        for j in 0..k {
            v[(i, j)] = power;
            power *= x;
        }
    }

    let near_singular = |cond: f64| {
        let (a, b, dist) = closest_pair(nodes);
        InterpError::NearSingular { cond, a, b, dist }
    };
    let cond = linalg::condition_number(&v);
    if !cond.is_finite() || cond > COND_LIMIT {
        return Err(near_singular(cond));
    }
    let lu = v.clone().lu();

    // All m^2 entry systems share the factorization: right-hand side column
    // e holds entry e (column-major) of every value block.
    let mut rhs = CMatrix::zeros(k, m * m);
    for (i, y) in values.iter().enumerate() {
        for (e, val) in y.as_slice().iter().enumerate() {
            rhs[(i, e)] = *val;
        }
    }
    let mut sol = lu.solve(&rhs).ok_or_else(|| near_singular(cond))?;
    let residual = &rhs - &v * &sol;
    if let Some(delta) = lu.solve(&residual) {
        sol += delta;
    }

    let mut coeffs = Vec::with_capacity(k);
    for deg in 0..k {
        let mut c = CMatrix::zeros(m, m);
        for e in 0..m * m {
            c[(e % m, e / m)] = sol[(deg, e)];
        }
        coeffs.push(c);
    }
    Ok(MatrixPolynomial::new(coeffs)?)
}

fn closest_pair(nodes: &[C64]) -> (C64, C64, f64) {
    let mut best = (nodes[0], nodes[0], f64::INFINITY);
    for j in 0..nodes.len() {
        for k in (j + 1)..nodes.len() {
            let dist = (nodes[j] - nodes[k]).norm();
            if dist < best.2 {
                best = (nodes[j], nodes[k], dist);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn scalar(v: f64) -> CMatrix {
        CMatrix::from_element(1, 1, c(v))
    }

    fn real_nodes(xs: &[f64]) -> Vec<C64> {
        xs.iter().map(|&x| c(x)).collect()
    }

    fn even_problem(values: &[f64]) -> InterpolationProblem {
        InterpolationProblem::new(
            real_nodes(&[1.0, 2.0, 3.0]),
            values.iter().map(|&v| scalar(v)).collect(),
            SymmetryClass::Even,
        )
        .unwrap()
    }

    #[test]
    fn feasibility_examples() {
        assert!(even_problem(&[18.0, 75.0, 50.0]).check_feasible().is_empty());

        // On-axis nodes are their own mirrors: values must be Hermitian.
        let p = InterpolationProblem::new(
            vec![C64::new(0.0, 1.0), C64::new(0.0, -1.0)],
            vec![scalar(2.0), CMatrix::from_element(1, 1, C64::new(2.0, 1.0))],
            SymmetryClass::Even,
        )
        .unwrap();
        let violations = p.check_feasible();
        assert_eq!(violations.len(), 1);
        assert!(matches!(
            violations[0],
            Violation::MirrorPair { j: 1, k: 1, .. }
        ));

        // Mirror pair of real nodes.
        let p = InterpolationProblem::new(
            real_nodes(&[1.0, -1.0]),
            vec![
                CMatrix::from_element(1, 1, C64::new(1.0, 2.0)),
                CMatrix::from_element(1, 1, C64::new(1.0, 2.0)),
            ],
            SymmetryClass::Even,
        )
        .unwrap();
        // Y_2 must equal Y_1^* = 1 - 2i; it is 1 + 2i.
        let violations = p.check_feasible();
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::MirrorPair { j: 0, k: 1, .. })));

        // GPE: a negative on-axis value.
        let p = InterpolationProblem::new(
            vec![C64::new(0.0, 1.0)],
            vec![scalar(-1.0)],
            SymmetryClass::Gpe,
        )
        .unwrap();
        assert!(matches!(
            p.check_feasible()[0],
            Violation::OnAxisNotPsd { j: 0, .. }
        ));
    }

    #[test]
    fn reduction_examples() {
        let r = reduce_data(&even_problem(&[18.0, 75.0, 50.0])).unwrap();
        assert_eq!(r.len(), 3);

        // {1, -1} is a mirror pair: only the first survives.
        let p = InterpolationProblem::new(
            real_nodes(&[1.0, -1.0]),
            vec![scalar(3.0), scalar(3.0)],
            SymmetryClass::Even,
        )
        .unwrap();
        let r = reduce_data(&p).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.kept_indices, vec![0]);

        // Duplicate on-axis nodes with equal values.
        let p = InterpolationProblem::new(
            vec![C64::new(0.0, 1.0), C64::new(0.0, 1.0)],
            vec![scalar(2.0), scalar(2.0)],
            SymmetryClass::Even,
        )
        .unwrap();
        assert_eq!(reduce_data(&p).unwrap().len(), 1);
    }

    #[test]
    fn structured_solve_reproduces_even_examples() {
        let id = CMatrix::identity(1, 1);
        for (values, expect) in [
            (
                vec![18.0, 75.0, 50.0],
                vec![-13.0, 0.0, 34.0, 0.0, -3.0],
            ),
            (vec![4.0, 1.0, -4.0], vec![5.0, 0.0, -1.0]),
        ] {
            let r = reduce_data(&even_problem(&values)).unwrap();
            let p = solve_structured(&r, &id, &id).unwrap();
            assert_eq!(p.formal_degree(), expect.len() - 1);
            for (k, &e) in expect.iter().enumerate() {
                assert!(
                    (p.coeff(k)[(0, 0)] - c(e)).norm() < 1e-9,
                    "coefficient {k}: {} vs {e}",
                    p.coeff(k)[(0, 0)]
                );
            }
        }
    }

    #[test]
    fn structured_solve_matrix_example() {
        // diag value data of the two-dimensional refinement example.
        let d = |a: f64, b: f64| {
            CMatrix::from_row_slice(2, 2, &[c(a), c(0.0), c(0.0), c(b)])
        };
        let problem = InterpolationProblem::new(
            real_nodes(&[1.0, 2.0, 3.0]),
            vec![d(-35.0, 9.0), d(-20.0, 0.0), d(45.0, 25.0)],
            SymmetryClass::Even,
        )
        .unwrap();
        let r = reduce_data(&problem).unwrap();
        let id = CMatrix::identity(2, 2);
        let p = solve_structured(&r, &id, &id).unwrap();
        // P = diag{s^4 - 36, (4 - s^2)^2}.
        let expect = [
            d(-36.0, 16.0),
            d(0.0, 0.0),
            d(0.0, -8.0),
            d(0.0, 0.0),
            d(1.0, 1.0),
        ];
        assert_eq!(p.formal_degree(), 4);
        for (k, e) in expect.iter().enumerate() {
            assert!(block_max_diff(&p.coeff(k), e) < 1e-8, "coefficient {k}");
        }
    }

    #[test]
    fn structured_solve_merges_on_axis_nodes() {
        // One on-axis node (self-mirror) and one off-axis node: the doubled
        // set collapses from 4 points to 3, so the degree drops to 2.
        let problem = InterpolationProblem::new(
            vec![C64::new(0.0, 1.0), c(2.0)],
            vec![scalar(1.0), CMatrix::from_element(1, 1, C64::new(3.0, 4.0))],
            SymmetryClass::Even,
        )
        .unwrap();
        let r = reduce_data(&problem).unwrap();
        let id = CMatrix::identity(1, 1);
        let p = solve_structured(&r, &id, &id).unwrap();
        assert!(p.formal_degree() <= 2);
        assert!((p.evaluate(C64::new(0.0, 1.0))[(0, 0)] - c(1.0)).norm() < 1e-9);
        assert!((p.evaluate(c(2.0))[(0, 0)] - C64::new(3.0, 4.0)).norm() < 1e-9);
        assert!((p.evaluate(c(-2.0))[(0, 0)] - C64::new(3.0, -4.0)).norm() < 1e-9);
        assert!(crate::symmetry::is_even(&p, 1e-9));
    }

    #[test]
    fn unstructured_solve_examples() {
        // The motivating three-point problem: the interpolant through
        // {18, 75, 50} is -41 s^2 + 180 s - 121.
        let p = solve_unstructured(
            &real_nodes(&[1.0, 2.0, 3.0]),
            &[scalar(18.0), scalar(75.0), scalar(50.0)],
        )
        .unwrap();
        for (k, e) in [-121.0, 180.0, -41.0].iter().enumerate() {
            assert!((p.coeff(k)[(0, 0)] - c(*e)).norm() < 1e-9);
        }

        // Single node: constant.
        let p = solve_unstructured(&[C64::new(0.5, 0.5)], &[scalar(7.0)]).unwrap();
        assert_eq!(p.formal_degree(), 0);
        assert_eq!(p.coeff(0)[(0, 0)], c(7.0));

        // Already-even data reproduces the structured answer.
        let p = solve_unstructured(
            &real_nodes(&[1.0, 2.0, 3.0]),
            &[scalar(4.0), scalar(1.0), scalar(-4.0)],
        )
        .unwrap();
        for (k, e) in [5.0, 0.0, -1.0].iter().enumerate() {
            assert!((p.coeff(k)[(0, 0)] - c(*e)).norm() < 1e-9);
        }

        // Duplicate nodes rejected.
        assert!(matches!(
            solve_unstructured(&real_nodes(&[1.0, 1.0]), &[scalar(1.0), scalar(1.0)]),
            Err(InterpError::DuplicateNodes { .. })
        ));
    }

    #[test]
    fn near_singular_cluster_reported() {
        // Two distinct nodes closer than any reasonable conditioning allows.
        let problem = InterpolationProblem::new(
            vec![c(1.0), c(1.0 + 1e-13), c(3.0)],
            vec![scalar(1.0), scalar(1.0), scalar(2.0)],
            SymmetryClass::Even,
        )
        .unwrap()
        .with_match_tol(1e-15);
        let r = reduce_data(&problem).unwrap();
        let id = CMatrix::identity(1, 1);
        match solve_structured(&r, &id, &id) {
            Err(InterpError::NearSingular { dist, .. }) => {
                assert!(dist < 1e-12);
            }
            other => panic!("expected NearSingular, got {other:?}"),
        }
    }
}
