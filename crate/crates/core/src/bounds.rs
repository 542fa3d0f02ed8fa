//! Modulus of continuity, error bounds and the convergence experiments.
//!
//! All suprema are taken over uniform grids. Grid maxima under-estimate the
//! true suprema; [`grid_slack`] gives the matching tolerance `ω(f; h)` for
//! the modulus grid step `h`.

use std::collections::VecDeque;

use crate::error::{domain, invalid, Error, Result};
use crate::function::FunctionSpec;
use crate::operators::{uniform_grid, SampledCurve, StancuOperator, StancuParams};

/// Absolute constant in `|B_n f − f| ≤ c1 · ω(f; n^{-1/2})`.
pub const DEFAULT_C1: f64 = 1.0898873;
pub const DEFAULT_MOD_GRID: usize = 10001;
pub const DEFAULT_SUP_GRID: usize = 1001;
pub const MIN_GRID: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConfig {
    c1: f64,
    mod_grid_size: usize,
    sup_grid_size: usize,
}

impl Default for BoundConfig {
    fn default() -> Self {
        BoundConfig {
            c1: DEFAULT_C1,
            mod_grid_size: DEFAULT_MOD_GRID,
            sup_grid_size: DEFAULT_SUP_GRID,
        }
    }
}

impl BoundConfig {
    pub fn new(c1: f64, mod_grid_size: usize, sup_grid_size: usize) -> Result<Self> {
        if !(c1.is_finite() && c1 > 0.0) {
            return Err(invalid(format!(
                "c1 must be positive and finite (got {c1})"
            )));
        }
        if mod_grid_size < MIN_GRID || sup_grid_size < MIN_GRID {
            return Err(invalid(format!(
                "grid sizes must be at least {MIN_GRID} (got {mod_grid_size}, {sup_grid_size})"
            )));
        }
        Ok(BoundConfig {
            c1,
            mod_grid_size,
            sup_grid_size,
        })
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn mod_grid_size(&self) -> usize {
        self.mod_grid_size
    }

    pub fn sup_grid_size(&self) -> usize {
        self.sup_grid_size
    }

    pub fn mod_grid_step(&self) -> f64 {
        1.0 / (self.mod_grid_size - 1) as f64
    }
}

/// `f` sampled once on the modulus grid, queried for any `δ`.
#[derive(Debug, Clone)]
pub struct ModulusTable {
    values: Vec<f64>,
}

impl ModulusTable {
    pub fn new(f: &FunctionSpec, cfg: &BoundConfig) -> Result<Self> {
        let values = uniform_grid(cfg.mod_grid_size)?
            .into_iter()
            .map(|x| f.eval(x))
            .collect::<Result<_>>()?;
        Ok(ModulusTable { values })
    }

    /// Grid estimate of `ω(f; δ)`; `δ = 0` gives 0.
    pub fn omega(&self, delta: f64) -> f64 {
        let steps = (self.values.len() - 1) as f64;
        // 1e-9 absorbs rounding in delta·steps so that e.g. δ = 0.01 spans 100 steps
        let span = (delta * steps + 1e-9).floor();
        let span = if span >= steps {
            self.values.len() - 1
        } else {
            span as usize
        };
        windowed_oscillation(&self.values, span)
    }
}

/// `max over i of (max − min)` of `values[i..=i+span]`, monotone-deque scan.
fn windowed_oscillation(values: &[f64], span: usize) -> f64 {
    if span == 0 || values.len() < 2 {
        return 0.0;
    }
    if span >= values.len() - 1 {
        let (lo, hi) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        return hi - lo;
    }
    let mut maxq: VecDeque<usize> = VecDeque::with_capacity(span + 1);
    let mut minq: VecDeque<usize> = VecDeque::with_capacity(span + 1);
    let mut best = 0.0_f64;
    for (i, &v) in values.iter().enumerate() {
        while maxq.back().is_some_and(|&j| values[j] <= v) {
            maxq.pop_back();
        }
        maxq.push_back(i);
        while minq.back().is_some_and(|&j| values[j] >= v) {
            minq.pop_back();
        }
        minq.push_back(i);
        if i >= span {
            let start = i - span;
            while maxq.front().is_some_and(|&j| j < start) {
                maxq.pop_front();
            }
            while minq.front().is_some_and(|&j| j < start) {
                minq.pop_front();
            }
            best = best.max(values[maxq[0]] - values[minq[0]]);
        }
    }
    best
}

/// `ω(f; δ) = max_{|x1−x2| ≤ δ} |f(x1) − f(x2)|` on the modulus grid.
pub fn modulus_of_continuity(f: &FunctionSpec, delta: f64, cfg: &BoundConfig) -> Result<f64> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(domain(format!("delta must be positive (got {delta})")));
    }
    Ok(ModulusTable::new(f, cfg)?.omega(delta))
}

/// `ω(f; h)` for the modulus grid step `h`.
pub fn grid_slack(f: &FunctionSpec, cfg: &BoundConfig) -> Result<f64> {
    Ok(ModulusTable::new(f, cfg)?.omega(cfg.mod_grid_step()))
}

/// `ω(f; (α+β)/(n+β)) + c1 · ω(f; n^{-1/2})`.
pub fn corollary2_bound(f: &FunctionSpec, p: StancuParams, cfg: &BoundConfig) -> Result<f64> {
    let table = ModulusTable::new(f, cfg)?;
    Ok(two_term_bound(&table, p, cfg.c1))
}

fn two_term_bound(table: &ModulusTable, p: StancuParams, c1: f64) -> f64 {
    let n = f64::from(p.n());
    let shift = (p.alpha() + p.beta()) / (n + p.beta());
    table.omega(shift) + c1 * table.omega(1.0 / n.sqrt())
}

/// Grid maximum of `|B_n^{α,β}(f; x) − f(x)|`.
pub fn sup_error(f: &FunctionSpec, p: StancuParams, cfg: &BoundConfig) -> Result<f64> {
    let approx = StancuOperator::new(f, p)?.curve(cfg.sup_grid_size)?;
    let exact = SampledCurve::sample(f, cfg.sup_grid_size)?;
    approx.max_abs_diff(&exact)
}

/// Grid maximum of `|B_n^{α,β}(f; x) − B_n(f; x)|`.
pub fn operator_distance(f: &FunctionSpec, p: StancuParams, cfg: &BoundConfig) -> Result<f64> {
    let stancu = StancuOperator::new(f, p)?.curve(cfg.sup_grid_size)?;
    let plain =
        StancuOperator::new(f, StancuParams::bernstein(p.n())?)?.curve(cfg.sup_grid_size)?;
    stancu.max_abs_diff(&plain)
}

/// Smallest `c` with `corollary2_bound ≤ c · ω(f; n^{-1/2})`; `0/0` is 0.
pub fn derive_c(f: &FunctionSpec, p: StancuParams, cfg: &BoundConfig) -> Result<f64> {
    let table = ModulusTable::new(f, cfg)?;
    let bound = two_term_bound(&table, p, cfg.c1);
    let base = table.omega(1.0 / f64::from(p.n()).sqrt());
    match (bound == 0.0, base == 0.0) {
        (true, _) => Ok(0.0),
        (false, true) => Err(Error::Unbounded(bound)),
        (false, false) => Ok(bound / base),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub n: u32,
    pub sup_error: f64,
    pub operator_distance: f64,
    pub corollary2_bound: f64,
    /// Node-gap bound `(α+β)/(n+β)`.
    pub t1_bound: f64,
}

impl ConvergenceRow {
    pub fn dominated(&self) -> bool {
        self.sup_error <= self.corollary2_bound + 1e-9
    }
}

/// Error quantities along an increasing degree sequence at fixed `(α, β)`.
pub fn convergence_scan(
    f: &FunctionSpec,
    alpha: f64,
    beta: f64,
    degrees: &[u32],
    cfg: &BoundConfig,
) -> Result<Vec<ConvergenceRow>> {
    if degrees.is_empty() {
        return Err(invalid("degree list must be non-empty"));
    }
    if degrees.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("degree list must be strictly increasing"));
    }
    let table = ModulusTable::new(f, cfg)?;
    degrees
        .iter()
        .map(|&n| {
            let p = StancuParams::new(n, alpha, beta)?;
            Ok(ConvergenceRow {
                n,
                sup_error: sup_error(f, p, cfg)?,
                operator_distance: operator_distance(f, p, cfg)?,
                corollary2_bound: two_term_bound(&table, p, cfg.c1),
                t1_bound: crate::nodes::gap_bound(p),
            })
        })
        .collect()
}

/// Parameter pairs `(s_j α0, s_j β0)` sharing the ratio `m = α0/β0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioFamily {
    alpha0: f64,
    beta0: f64,
    scale_factors: Vec<f64>,
}

impl RatioFamily {
    pub fn new(alpha0: f64, beta0: f64, scale_factors: Vec<f64>) -> Result<Self> {
        if !(alpha0 > 0.0 && alpha0 < beta0 && beta0.is_finite()) {
            return Err(domain(format!(
                "ratio family needs 0 < alpha < beta (got alpha = {alpha0}, beta = {beta0})"
            )));
        }
        if scale_factors.is_empty() {
            return Err(invalid("ratio family needs at least one scale factor"));
        }
        if scale_factors.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
            return Err(domain("scale factors must be positive and finite"));
        }
        if scale_factors.windows(2).any(|w| w[1] <= w[0]) {
            return Err(domain("scale factors must be strictly increasing"));
        }
        let fam = RatioFamily {
            alpha0,
            beta0,
            scale_factors,
        };
        let m = fam.ratio_m();
        for (a, b) in fam.levels() {
            if !(a > 0.0 && a < b) || ((a / b) - m).abs() > 1e-12 * m {
                return Err(domain(format!("level ({a}, {b}) breaks the ratio {m}")));
            }
        }
        Ok(fam)
    }

    pub fn ratio_m(&self) -> f64 {
        self.alpha0 / self.beta0
    }

    pub fn scale_factors(&self) -> &[f64] {
        &self.scale_factors
    }

    /// `(α_j, β_j)` for each scale factor.
    pub fn levels(&self) -> Vec<(f64, f64)> {
        self.scale_factors
            .iter()
            .map(|s| (s * self.alpha0, s * self.beta0))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioLevel {
    pub scale: f64,
    pub alpha: f64,
    pub beta: f64,
    /// `|B_n^{α_j,β_j}(f; m) − f(m)|`
    pub d_at_m: f64,
    /// Grid maximum over `x` of `|B_n^{α_j,β_j}(f; x) − f(m)|`.
    pub d_sup: f64,
    /// `max_k |(k+α_j)/(n+β_j) − m|`
    pub max_node_distance: f64,
    /// `2n/(n+β_j)`
    pub delta_bound: f64,
    /// `ω(f; 2n/(n+β_j))`
    pub omega_bound: f64,
}

impl RatioLevel {
    pub fn within_bound(&self, slack: f64) -> bool {
        let limit = self.omega_bound + slack + ROUNDING_FLOOR;
        self.d_at_m <= limit && self.d_sup <= limit
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    pub n: u32,
    pub ratio_m: f64,
    pub f_at_m: f64,
    pub slack: f64,
    pub levels: Vec<RatioLevel>,
}

/// Distances at or below this are rounding noise of a zero distance.
pub const ROUNDING_FLOOR: f64 = 1e-12;

fn decreasing_step(prev: f64, next: f64) -> bool {
    next < prev || next <= ROUNDING_FLOOR
}

fn decreasing(values: impl Iterator<Item = f64>) -> bool {
    let v: Vec<f64> = values.collect();
    v.windows(2).all(|w| decreasing_step(w[0], w[1]))
}

impl RatioReport {
    pub fn within_bound(&self) -> bool {
        self.levels.iter().all(|l| l.within_bound(self.slack))
    }

    /// `d_at_m` strictly decreasing across levels, once above [`ROUNDING_FLOOR`].
    pub fn d_at_m_decreasing(&self) -> bool {
        decreasing(self.levels.iter().map(|l| l.d_at_m))
    }

    pub fn d_sup_decreasing(&self) -> bool {
        decreasing(self.levels.iter().map(|l| l.d_sup))
    }

    pub fn holds(&self) -> bool {
        self.within_bound() && self.d_at_m_decreasing()
    }

    /// First level with `d_at_m < eps`.
    pub fn first_level_below(&self, eps: f64) -> Option<usize> {
        self.levels.iter().position(|l| l.d_at_m < eps)
    }

    pub fn first_violation(&self) -> Option<usize> {
        if let Some(j) = self.levels.iter().position(|l| !l.within_bound(self.slack)) {
            return Some(j);
        }
        self.levels
            .windows(2)
            .position(|w| !decreasing_step(w[0].d_at_m, w[1].d_at_m))
            .map(|j| j + 1)
    }
}

/// Distance of `B_n^{α_j,β_j} f` from `f(α/β)` along a ratio family at fixed `n`.
pub fn theorem4_experiment(
    f: &FunctionSpec,
    n: u32,
    fam: &RatioFamily,
    cfg: &BoundConfig,
) -> Result<RatioReport> {
    let m = fam.ratio_m();
    let f_at_m = f.eval(m)?;
    let table = ModulusTable::new(f, cfg)?;
    let slack = table.omega(cfg.mod_grid_step());
    let nf = f64::from(n);
    let levels = fam
        .levels()
        .into_iter()
        .zip(fam.scale_factors())
        .map(|((alpha, beta), &scale)| {
            let p = StancuParams::new(n, alpha, beta)?;
            let op = StancuOperator::new(f, p)?;
            let d_at_m = (op.eval(m)? - f_at_m).abs();
            let d_sup = op
                .curve(cfg.sup_grid_size)?
                .values()
                .iter()
                .map(|v| (v - f_at_m).abs())
                .fold(0.0, f64::max);
            let max_node_distance = (0..=n).map(|k| (p.node(k) - m).abs()).fold(0.0, f64::max);
            let delta_bound = 2.0 * nf / (nf + beta);
            Ok(RatioLevel {
                scale,
                alpha,
                beta,
                d_at_m,
                d_sup,
                max_node_distance,
                delta_bound,
                omega_bound: table.omega(delta_bound),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RatioReport {
        n,
        ratio_m: m,
        f_at_m,
        slack,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::Builtin;

    fn f(b: Builtin) -> FunctionSpec {
        FunctionSpec::builtin(b)
    }

    fn params(n: u32, a: f64, b: f64) -> StancuParams {
        StancuParams::new(n, a, b).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(BoundConfig::new(0.0, 1001, 1001).is_err());
        assert!(BoundConfig::new(1.0, 100, 1001).is_err());
        assert!(BoundConfig::new(1.0, 1001, 100).is_err());
        assert!(BoundConfig::new(1.0, 101, 101).is_ok());
    }

    #[test]
    fn windowed_oscillation_small() {
        let v = [0.0, 3.0, 1.0, 1.0, 5.0, 2.0];
        assert_eq!(windowed_oscillation(&v, 0), 0.0);
        assert_eq!(windowed_oscillation(&v, 1), 4.0);
        assert_eq!(windowed_oscillation(&v, 2), 4.0);
        assert_eq!(windowed_oscillation(&v, 5), 5.0);
        assert_eq!(windowed_oscillation(&v, 50), 5.0);
    }

    #[test]
    fn modulus_examples() {
        let cfg = BoundConfig::default();
        assert_eq!(
            modulus_of_continuity(&f(Builtin::E0), 0.3, &cfg).unwrap(),
            0.0
        );
        let w = modulus_of_continuity(&f(Builtin::E1), 0.1, &cfg).unwrap();
        assert!((w - 0.1).abs() <= cfg.mod_grid_step());
        assert!(modulus_of_continuity(&f(Builtin::E1), 0.0, &cfg).is_err());
        assert!(modulus_of_continuity(&f(Builtin::E1), -1.0, &cfg).is_err());
        // δ larger than the interval: global oscillation
        assert_eq!(
            modulus_of_continuity(&f(Builtin::E2), 5.0, &cfg).unwrap(),
            1.0
        );
    }

    #[test]
    fn corollary2_examples() {
        let cfg = BoundConfig::default();
        assert_eq!(
            corollary2_bound(&f(Builtin::E0), params(10, 1.0, 3.0), &cfg).unwrap(),
            0.0
        );
        let b = corollary2_bound(&f(Builtin::E1), params(100, 20.0, 30.0), &cfg).unwrap();
        assert!((b - (50.0 / 130.0 + 1.09 * 0.1)).abs() <= 2.0 * cfg.mod_grid_step());
    }

    #[test]
    fn derive_c_examples() {
        let cfg = BoundConfig::default();
        assert_eq!(
            derive_c(&f(Builtin::E0), params(10, 1.0, 3.0), &cfg).unwrap(),
            0.0
        );
        let c = derive_c(&f(Builtin::E1), params(100, 20.0, 30.0), &cfg).unwrap();
        assert!((c - (50.0 / 130.0 + 0.109) / 0.1).abs() < 2e-3);
    }

    #[test]
    fn derive_c_unbounded() {
        let cfg = BoundConfig::new(1.0, 101, 101).unwrap();
        let g = FunctionSpec::tabulated("kink", &[(0.0, 0.0), (0.999, 0.0), (1.0, 1.0)]).unwrap();
        // n^{-1/2} = 0.005 spans no step of the 101-point grid, the shift 500/40250 spans one
        let p = params(40000, 250.0, 250.0);
        assert!(matches!(derive_c(&g, p, &cfg), Err(Error::Unbounded(_))));
    }

    #[test]
    fn sup_error_examples() {
        let cfg = BoundConfig::default();
        assert!(sup_error(&f(Builtin::E0), params(30, 5.0, 9.0), &cfg).unwrap() <= 1e-12);
        let e = sup_error(&f(Builtin::E2), params(20, 0.0, 0.0), &cfg).unwrap();
        assert!((e - 0.0125).abs() < 1e-12);
    }

    #[test]
    fn operator_distance_examples() {
        let cfg = BoundConfig::default();
        assert_eq!(
            operator_distance(&f(Builtin::Sin15), params(40, 0.0, 0.0), &cfg).unwrap(),
            0.0
        );
        for (n, a, b) in [(10, 1.0, 2.0), (25, 17.0, 100.0), (100, 77.0, 100.0)] {
            let d = operator_distance(&f(Builtin::E1), params(n, a, b), &cfg).unwrap();
            let expected = f64::max(a, b - a) / (f64::from(n) + b);
            assert!(
                (d - expected).abs() < 1e-14,
                "{n} {a} {b}: {d} vs {expected}"
            );
        }
    }

    #[test]
    fn ratio_family_validation() {
        assert!(RatioFamily::new(4.7, 10.0, vec![1.0, 10.0]).is_ok());
        assert!(RatioFamily::new(0.0, 10.0, vec![1.0]).is_err());
        assert!(RatioFamily::new(10.0, 10.0, vec![1.0]).is_err());
        assert!(RatioFamily::new(4.7, 10.0, vec![]).is_err());
        assert!(RatioFamily::new(4.7, 10.0, vec![10.0, 1.0]).is_err());
        assert!(RatioFamily::new(4.7, 10.0, vec![-1.0, 1.0]).is_err());
    }

    #[test]
    fn theorem4_constant_function() {
        let fam = RatioFamily::new(4.7, 10.0, vec![1.0, 10.0, 100.0]).unwrap();
        let r = theorem4_experiment(&f(Builtin::E0), 100, &fam, &BoundConfig::default()).unwrap();
        assert!(r
            .levels
            .iter()
            .all(|l| l.d_at_m <= 1e-12 && l.d_sup <= 1e-12));
        assert!(r.holds());
    }

    #[test]
    fn theorem4_e1_endpoint_maximum() {
        // B(e1; x) − m is affine in x, so the sup sits at x = 0 or x = 1
        let fam = RatioFamily::new(47.0, 100.0, vec![10.0]).unwrap();
        let r = theorem4_experiment(&f(Builtin::E1), 100, &fam, &BoundConfig::default()).unwrap();
        let (a, b, n) = (470.0, 1000.0, 100.0);
        let at0 = (a / (n + b) - 0.47_f64).abs();
        let at1 = (1.0 + (a - b) / (n + b) - 0.47_f64).abs();
        assert!((r.levels[0].d_sup - at0.max(at1)).abs() < 1e-14);
        assert!(r.holds());
    }
}
