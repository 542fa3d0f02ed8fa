//! Bernstein basis and the Bernstein-Stancu operator family.
//!
//! `B_n^{α,β}(f; x) = Σ_k b_{n,k}(x) f((k+α)/(n+β))`, with the classical
//! Bernstein operator as the special case `α = β = 0`. Both go through the
//! same code path so that the reduction is bit-exact.

use crate::error::{domain, invalid, Result};
use crate::function::FunctionSpec;

/// Degree `n` and shift parameters `0 ≤ α ≤ β` of a Bernstein-Stancu operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StancuParams {
    n: u32,
    alpha: f64,
    beta: f64,
}

impl StancuParams {
    pub fn new(n: u32, alpha: f64, beta: f64) -> Result<Self> {
        if n == 0 {
            return Err(domain("degree n must be at least 1"));
        }
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(domain(format!(
                "alpha and beta must be finite (alpha = {alpha}, beta = {beta})"
            )));
        }
        if alpha < 0.0 {
            return Err(domain(format!(
                "alpha must be non-negative (alpha = {alpha})"
            )));
        }
        if alpha > beta {
            return Err(domain(format!(
                "parameters must satisfy 0 <= alpha <= beta (alpha = {alpha}, beta = {beta})"
            )));
        }
        Ok(StancuParams { n, alpha, beta })
    }

    /// Plain Bernstein operator of degree `n` (`α = β = 0`).
    pub fn bernstein(n: u32) -> Result<Self> {
        StancuParams::new(n, 0.0, 0.0)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Same `(α, β)` at a different degree.
    pub fn with_degree(&self, n: u32) -> Result<Self> {
        StancuParams::new(n, self.alpha, self.beta)
    }

    pub fn is_bernstein(&self) -> bool {
        self.alpha == 0.0 && self.beta == 0.0
    }

    /// Sampling node `(k+α)/(n+β)`. Caller guarantees `k ≤ n`.
    #[inline]
    pub fn node(&self, k: u32) -> f64 {
        (f64::from(k) + self.alpha) / (f64::from(self.n) + self.beta)
    }

    /// Node spacing `1/(n+β)`.
    pub fn spacing(&self) -> f64 {
        1.0 / (f64::from(self.n) + self.beta)
    }

    /// Clustering point `α/β`; `None` when `β = 0`.
    pub fn ratio(&self) -> Option<f64> {
        (self.beta > 0.0).then(|| self.alpha / self.beta)
    }
}

fn check_unit(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(domain(format!("x = {x} is outside [0,1]")))
    }
}

/// All `n+1` basis values `b_{n,k}(x)`.
///
/// The row is built by the ratio recurrence
/// `b_{k+1}/b_k = (n−k)/(k+1) · x/(1−x)` started at the mode
/// `⌊(n+1)x⌋` and run outward, then normalised by its sum. Starting from
/// `(1−x)^n` would underflow to zero for `n` around 1000. At `x = 0` and
/// `x = 1` the row is a unit vector.
pub fn basis_row(n: u32, x: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(domain("degree n must be at least 1"));
    }
    check_unit(x)?;
    let mut row = vec![0.0; n as usize + 1];
    fill_basis_row(&mut row, x);
    Ok(row)
}

pub(crate) fn fill_basis_row(row: &mut [f64], x: f64) {
    let n = row.len() - 1;
    row.fill(0.0);
    if x == 0.0 {
        row[0] = 1.0;
        return;
    }
    if x == 1.0 {
        row[n] = 1.0;
        return;
    }

    let mode = (((n + 1) as f64 * x).floor() as usize).min(n);
    row[mode] = 1.0;
    let up = x / (1.0 - x);
    for k in mode..n {
        row[k + 1] = row[k] * ((n - k) as f64 / (k + 1) as f64) * up;
    }
    let down = (1.0 - x) / x;
    for k in (1..=mode).rev() {
        row[k - 1] = row[k] * (k as f64 / (n - k + 1) as f64) * down;
    }

    let total: f64 = row.iter().sum();
    for b in row.iter_mut() {
        *b /= total;
    }
}

/// Single basis function `b_{n,k}(x) = C(n,k) x^k (1−x)^{n−k}`.
pub fn bernstein_basis(n: u32, k: u32, x: f64) -> Result<f64> {
    if k > n {
        return Err(domain(format!("basis index k = {k} out of range 0..={n}")));
    }
    Ok(basis_row(n, x)?[k as usize])
}

/// A Bernstein-Stancu operator applied to a fixed function, with the
/// function already sampled at the `n+1` nodes.
#[derive(Debug, Clone)]
pub struct StancuOperator {
    params: StancuParams,
    samples: Vec<f64>,
}

impl StancuOperator {
    pub fn new(f: &FunctionSpec, params: StancuParams) -> Result<Self> {
        Self::from_fn(|t| f.eval(t), params)
    }

    /// Samples an arbitrary fallible function at the nodes.
    pub fn from_fn<F>(f: F, params: StancuParams) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64>,
    {
        let samples = (0..=params.n)
            .map(|k| f(params.node(k)))
            .collect::<Result<Vec<_>>>()?;
        Ok(StancuOperator { params, samples })
    }

    pub fn params(&self) -> StancuParams {
        self.params
    }

    /// `f` at each node, in node order.
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        check_unit(x)?;
        let mut row = vec![0.0; self.samples.len()];
        Ok(self.eval_with(&mut row, x))
    }

    /// Evaluation reusing a caller-provided row buffer of length `n+1`.
    pub(crate) fn eval_with(&self, row: &mut [f64], x: f64) -> f64 {
        fill_basis_row(row, x);
        row.iter().zip(&self.samples).map(|(b, v)| b * v).sum()
    }

    /// Values on the uniform grid of `grid_size` points.
    pub fn curve(&self, grid_size: usize) -> Result<SampledCurve> {
        let grid = uniform_grid(grid_size)?;
        let mut row = vec![0.0; self.samples.len()];
        let values = grid.iter().map(|&x| self.eval_with(&mut row, x)).collect();
        Ok(SampledCurve { grid, values })
    }
}

pub fn apply_operator(f: &FunctionSpec, p: StancuParams, x: f64) -> Result<f64> {
    check_unit(x)?;
    StancuOperator::new(f, p)?.eval(x)
}

pub fn apply_operator_curve(
    f: &FunctionSpec,
    p: StancuParams,
    grid_size: usize,
) -> Result<SampledCurve> {
    if grid_size < 2 {
        return Err(invalid("grid size must be at least 2"));
    }
    StancuOperator::new(f, p)?.curve(grid_size)
}

/// Closed-form image of the test function `e_i(t) = t^i`, `i ∈ {0,1,2}`.
pub fn moment_closed_form(i: u8, p: StancuParams, x: f64) -> Result<f64> {
    check_unit(x)?;
    let n = f64::from(p.n);
    let (a, b) = (p.alpha, p.beta);
    match i {
        0 => Ok(1.0),
        1 => Ok(x + (a - b * x) / (n + b)),
        2 => {
            let num = n * x * (1.0 - x) + (a - b * x) * (2.0 * n * x + b * x + a);
            Ok(x * x + num / ((n + b) * (n + b)))
        }
        _ => Err(domain(format!("moment index {i} not in 0..=2"))),
    }
}

/// `m` equally spaced points `i/(m−1)` on `[0,1]`; endpoints are exact.
pub fn uniform_grid(m: usize) -> Result<Vec<f64>> {
    if m < 2 {
        return Err(invalid("grid size must be at least 2"));
    }
    let last = (m - 1) as f64;
    Ok((0..m).map(|i| i as f64 / last).collect())
}

/// `(x, y)` samples over a uniform grid on `[0,1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    grid: Vec<f64>,
    values: Vec<f64>,
}

impl SampledCurve {
    pub fn new(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(invalid("grid and values must have equal length"));
        }
        if grid.len() < 2 {
            return Err(invalid("a curve needs at least 2 points"));
        }
        if grid[0] != 0.0 || grid[grid.len() - 1] != 1.0 {
            return Err(invalid("grid must start at 0 and end at 1"));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid("grid must be strictly increasing"));
        }
        Ok(SampledCurve { grid, values })
    }

    /// Samples `f` itself on a uniform grid.
    pub fn sample(f: &FunctionSpec, grid_size: usize) -> Result<Self> {
        let grid = uniform_grid(grid_size)?;
        let values = grid.iter().map(|&x| f.eval(x)).collect::<Result<_>>()?;
        Ok(SampledCurve { grid, values })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.grid.iter().copied().zip(self.values.iter().copied())
    }

    /// `max_i |self[i] − other[i]|`; both curves must share a grid.
    pub fn max_abs_diff(&self, other: &SampledCurve) -> Result<f64> {
        if self.grid != other.grid {
            return Err(invalid("curves are sampled on different grids"));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}
