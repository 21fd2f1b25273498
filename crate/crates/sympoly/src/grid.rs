//! Frequency grids and exclusion zones for imaginary-axis sweeps.

use crate::poly::{C64, MatrixPolynomial};

/// Sampling plan for sweeps along `s = i*omega`.
#[derive(Debug, Clone)]
pub struct GridSpec {
    /// Half-width of the swept interval `|omega| <= omega_max`.
    pub omega_max: f64,
    /// Nominal number of samples (the built grid is symmetric and contains 0,
    /// so the realized count differs slightly).
    pub points: usize,
    /// Radius of the punctured neighborhoods around on-axis interpolation
    /// nodes.
    pub exclusion_radius: f64,
    /// Golden-section iterations per local extremum bracket.
    pub refine_iters: usize,
}

pub const DEFAULT_GRID_POINTS: usize = 4096;
pub const DEFAULT_REFINE_ITERS: usize = 64;

impl GridSpec {
    pub fn new(omega_max: f64, points: usize) -> Self {
        assert!(omega_max > 0.0, "omega_max must be positive");
        Self {
            omega_max,
            points: points.max(16),
            exclusion_radius: 1e-4 * (1.0 + omega_max),
            refine_iters: DEFAULT_REFINE_ITERS,
        }
    }

    /// Default plan for scanning the ratio of `P` against a neutral family on
    /// the given nodes: `omega_max` starts at `10 * (1 + max_j |x_j|)` and
    /// grows until a crude tail bound on the objective, estimated from the
    /// coefficient norms, has decayed well below the expected peak scale.
    pub fn auto(p: &MatrixPolynomial, nodes: &[C64]) -> Self {
        let max_x = nodes.iter().map(|x| x.norm()).fold(0.0_f64, f64::max);
        let mut omega = 10.0 * (1.0 + max_x);
        let deg = p.formal_degree() as i32;
        let den_deg = 2 * nodes.len() as i32;
        let s: f64 = p.coeffs().iter().map(|c| c.norm()).sum();
        if s > 0.0 && den_deg > deg && !nodes.is_empty() {
            // Scale proxy for the peak of the objective near the nodes.
            let peak = s / nodes.iter().map(|x| 1.0 + x.norm_sqr()).product::<f64>();
            for _ in 0..40 {
                let w = 10.0 * omega;
                let tail = s * w.powi(deg) / (w / 2.0).powi(den_deg);
                if tail <= 1e-4 * peak {
                    break;
                }
                omega *= 2.0;
            }
        }
        Self::new(omega, DEFAULT_GRID_POINTS)
    }

    /// Deterministic symmetric grid over `[-omega_max, omega_max]`: a linear
    /// ladder mixed with a logarithmic one (down to `omega_max * 1e-6`),
    /// mirrored about zero, always containing zero. Sorted ascending.
    pub fn build(&self) -> Vec<f64> {
        let half = (self.points / 2).max(8);
        let n_lin = half / 2;
        let n_log = half - n_lin;
        let mut pos = Vec::with_capacity(half);
        for k in 1..=n_lin {
            pos.push(self.omega_max * k as f64 / n_lin as f64);
        }
        for k in 0..n_log {
            let t = k as f64 / (n_log - 1) as f64;
            pos.push(self.omega_max * 10f64.powf(-6.0 * (1.0 - t)));
        }
        pos.sort_by(f64::total_cmp);
        pos.dedup();
        let mut grid = Vec::with_capacity(2 * pos.len() + 1);
        grid.extend(pos.iter().rev().map(|w| -w));
        grid.push(0.0);
        grid.extend(pos.iter());
        grid
    }

    /// Same plan with `10 x` the nominal points.
    pub fn densified(&self, factor: usize) -> Self {
        Self {
            points: self.points * factor.max(1),
            ..self.clone()
        }
    }
}

/// Punctured neighborhoods `|omega - omega_j| < radius` around the imaginary
/// parts of on-axis nodes.
#[derive(Debug, Clone, Default)]
pub struct Exclusions {
    zones: Vec<(f64, f64)>,
}

impl Exclusions {
    pub fn none() -> Self {
        Self::default()
    }

    /// Zones around every node lying on the imaginary axis (relative test
    /// `|Re x| <= 1e-9 * (1 + |x|)`).
    pub fn around_axis_nodes(nodes: &[C64], radius: f64) -> Self {
        let zones = nodes
            .iter()
            .filter(|x| x.re.abs() <= 1e-9 * (1.0 + x.norm()))
            .map(|x| (x.im, radius))
            .collect();
        Self { zones }
    }

    pub fn is_empty(&self) -> bool {
        self.zones.is_empty()
    }

    pub fn contains(&self, omega: f64) -> bool {
        self.zones.iter().any(|&(c, r)| (omega - c).abs() < r)
    }

    /// Whether `omega` sits within 5% of a zone boundary; used to flag
    /// extrema that were pinned by an exclusion rather than interior.
    pub fn near_boundary(&self, omega: f64) -> bool {
        self.zones
            .iter()
            .any(|&(c, r)| ((omega - c).abs() - r).abs() <= 0.05 * r + 1e-12)
    }
}
