//! Node sets of the Bernstein and Bernstein-Stancu operators and executable
//! checks of their geometry: the node-gap bound, clustering around `α/β`,
//! and nested clustering for parameter pairs sharing the same ratio.

use crate::error::{domain, invalid, Result};
use crate::operators::StancuParams;

/// `|node_gap| ≤ CROSSING_TOL` marks a node where the two families coincide.
pub const CROSSING_TOL: f64 = 1e-12;
/// Relative tolerance for `α1/β1 = α2/β2`.
pub const RATIO_TOL: f64 = 1e-12;
/// Tolerance of the Stancu/Bernstein contraction identity.
pub const CONTRACTION_IDENTITY_TOL: f64 = 1e-14;
/// Rounding allowance on `max_gap ≤ (α+β)/(n+β)`, which is attained when `α = 0`.
pub const GAP_BOUND_TOL: f64 = 1e-15;
/// Tolerance of the two-family difference identity and the distance ratio.
pub const NESTING_IDENTITY_TOL: f64 = 1e-13;

/// The `n+1` equidistant nodes `(k+α)/(n+β)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet {
    pub params: StancuParams,
    pub nodes: Vec<f64>,
    pub spacing_h: f64,
}

impl NodeSet {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Largest deviation of consecutive differences from `spacing_h`.
    pub fn spacing_deviation(&self) -> f64 {
        self.nodes
            .windows(2)
            .map(|w| ((w[1] - w[0]) - self.spacing_h).abs())
            .fold(0.0, f64::max)
    }
}

pub fn stancu_nodes(p: StancuParams) -> NodeSet {
    NodeSet {
        params: p,
        nodes: (0..=p.n()).map(|k| p.node(k)).collect(),
        spacing_h: p.spacing(),
    }
}

pub fn bernstein_nodes(n: u32) -> Result<NodeSet> {
    Ok(stancu_nodes(StancuParams::bernstein(n)?))
}

fn check_index(k: u32, p: &StancuParams) -> Result<()> {
    if k > p.n() {
        return Err(domain(format!(
            "node index k = {k} out of range 0..={}",
            p.n()
        )));
    }
    Ok(())
}

/// Displacement `(k+α)/(n+β) − k/n` of the `k`-th Stancu node.
pub fn node_gap(k: u32, p: StancuParams) -> Result<f64> {
    check_index(k, &p)?;
    Ok(p.node(k) - f64::from(k) / f64::from(p.n()))
}

/// The same displacement written as `(nα − kβ)/(n(n+β))`.
pub fn node_gap_closed_form(k: u32, p: StancuParams) -> Result<f64> {
    check_index(k, &p)?;
    let (n, k) = (f64::from(p.n()), f64::from(k));
    Ok((n * p.alpha() - k * p.beta()) / (n * (n + p.beta())))
}

/// Bound `(α+β)/(n+β)` on every node gap.
pub fn gap_bound(p: StancuParams) -> f64 {
    (p.alpha() + p.beta()) / (f64::from(p.n()) + p.beta())
}

/// One row of the node table written by the `nodes` subcommand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeRow {
    pub k: u32,
    pub bernstein_node: f64,
    pub stancu_node: f64,
    pub gap: f64,
    /// `None` when `β = 0` (no clustering point).
    pub dist_bernstein_to_m: Option<f64>,
    pub dist_stancu_to_m: Option<f64>,
}

pub fn node_table(p: StancuParams) -> Vec<NodeRow> {
    let n = f64::from(p.n());
    let m = p.ratio();
    (0..=p.n())
        .map(|k| {
            let bernstein_node = f64::from(k) / n;
            let stancu_node = p.node(k);
            NodeRow {
                k,
                bernstein_node,
                stancu_node,
                gap: stancu_node - bernstein_node,
                dist_bernstein_to_m: m.map(|m| (bernstein_node - m).abs()),
                dist_stancu_to_m: m.map(|m| (stancu_node - m).abs()),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapRow {
    pub n: u32,
    pub max_gap: f64,
    pub argmax_k: u32,
    pub bound: f64,
    /// `max_gap` equals the bound (e.g. `α = 0` at `k = n`).
    pub attains_bound: bool,
}

/// Node-gap bound across a sequence of degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub alpha: f64,
    pub beta: f64,
    pub rows: Vec<GapRow>,
    pub within_bound: bool,
    /// Strictly decreasing, or identically zero when `α = β = 0`.
    pub bound_decreasing: bool,
}

impl GapReport {
    pub fn holds(&self) -> bool {
        self.within_bound && self.bound_decreasing
    }

    pub fn first_violation(&self) -> Option<u32> {
        self.rows
            .iter()
            .find(|r| r.max_gap > r.bound + GAP_BOUND_TOL)
            .map(|r| r.n)
    }
}

/// For each degree in `degrees`, compares `max_k |node_gap|` with `(α+β)/(n+β)`.
pub fn check_theorem1(alpha: f64, beta: f64, degrees: &[u32]) -> Result<GapReport> {
    if degrees.is_empty() {
        return Err(invalid("degree sequence must be non-empty"));
    }
    if degrees.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("degree sequence must be strictly increasing"));
    }
    let mut rows = Vec::with_capacity(degrees.len());
    for &n in degrees {
        let p = StancuParams::new(n, alpha, beta)?;
        let (argmax_k, max_gap) = (0..=n)
            .map(|k| (k, (p.node(k) - f64::from(k) / f64::from(n)).abs()))
            .fold((0, 0.0), |acc, (k, g)| if g > acc.1 { (k, g) } else { acc });
        let bound = gap_bound(p);
        rows.push(GapRow {
            n,
            max_gap,
            argmax_k,
            bound,
            attains_bound: (bound - max_gap).abs() <= GAP_BOUND_TOL,
        });
    }
    let within_bound = rows.iter().all(|r| r.max_gap <= r.bound + GAP_BOUND_TOL);
    let bound_decreasing = if alpha + beta == 0.0 {
        rows.iter().all(|r| r.bound == 0.0)
    } else {
        rows.windows(2).all(|w| w[1].bound < w[0].bound)
    };
    Ok(GapReport {
        alpha,
        beta,
        rows,
        within_bound,
        bound_decreasing,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterRow {
    pub k: u32,
    pub bernstein_node: f64,
    pub stancu_node: f64,
    pub gap: f64,
    pub dist_bernstein: f64,
    pub dist_stancu: f64,
    /// `|(stancu − m) − n/(n+β)·(k/n − m)|`
    pub identity_residual: f64,
    pub contraction_holds: bool,
    pub sign_pattern_holds: bool,
}

/// Clustering of the Stancu nodes around `m = α/β`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterReport {
    pub params: StancuParams,
    pub ratio_m: f64,
    /// `n/(n+β)`
    pub contraction_factor: f64,
    pub rows: Vec<ClusterRow>,
    pub max_gap: f64,
    pub crossing_indices: Vec<u32>,
    pub max_identity_residual: f64,
    pub contraction_holds: bool,
    pub sign_pattern_holds: bool,
    pub identity_holds: bool,
}

impl ClusterReport {
    pub fn holds(&self) -> bool {
        self.contraction_holds && self.sign_pattern_holds && self.identity_holds
    }

    pub fn first_violation(&self) -> Option<u32> {
        self.rows
            .iter()
            .find(|r| {
                !r.contraction_holds
                    || !r.sign_pattern_holds
                    || r.identity_residual > CONTRACTION_IDENTITY_TOL
            })
            .map(|r| r.k)
    }
}

pub fn check_theorem2(p: StancuParams) -> Result<ClusterReport> {
    let m = p
        .ratio()
        .ok_or_else(|| domain("clustering point alpha/beta needs beta > 0"))?;
    let n = f64::from(p.n());
    let factor = n / (n + p.beta());

    let rows: Vec<ClusterRow> = (0..=p.n())
        .map(|k| {
            let b = f64::from(k) / n;
            let s = p.node(k);
            let gap = s - b;
            let (db, ds) = ((b - m).abs(), (s - m).abs());
            let sign_pattern_holds = if gap.abs() <= CROSSING_TOL {
                true
            } else if b > m {
                m < s && s < b
            } else {
                b < s && s < m
            };
            ClusterRow {
                k,
                bernstein_node: b,
                stancu_node: s,
                gap,
                dist_bernstein: db,
                dist_stancu: ds,
                identity_residual: ((s - m) - factor * (b - m)).abs(),
                contraction_holds: ds <= db + f64::EPSILON,
                sign_pattern_holds,
            }
        })
        .collect();

    let max_gap = rows.iter().map(|r| r.gap.abs()).fold(0.0, f64::max);
    let crossing_indices = rows
        .iter()
        .filter(|r| r.gap.abs() <= CROSSING_TOL)
        .map(|r| r.k)
        .collect();
    let max_identity_residual = rows.iter().map(|r| r.identity_residual).fold(0.0, f64::max);
    Ok(ClusterReport {
        params: p,
        ratio_m: m,
        contraction_factor: factor,
        contraction_holds: rows.iter().all(|r| r.contraction_holds),
        sign_pattern_holds: rows.iter().all(|r| r.sign_pattern_holds),
        identity_holds: max_identity_residual <= CONTRACTION_IDENTITY_TOL,
        rows,
        max_gap,
        crossing_indices,
        max_identity_residual,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NestingRow {
    pub k: u32,
    pub node1: f64,
    pub node2: f64,
    pub dist1: f64,
    pub dist2: f64,
    /// `dist2/dist1`; `None` where `k/n = m`.
    pub distance_ratio: Option<f64>,
    /// Residual of `node1 − node2 = n(β2−β1)(k/n − m)/((n+β1)(n+β2))`.
    pub difference_residual: f64,
    pub chain_holds: bool,
}

/// Nested clustering of two Stancu families with the same ratio `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct NestingReport {
    pub first: StancuParams,
    pub second: StancuParams,
    pub ratio_m: f64,
    /// `(n+β1)/(n+β2)`
    pub expected_ratio: f64,
    pub rows: Vec<NestingRow>,
    pub crossing_indices: Vec<u32>,
    pub max_difference_residual: f64,
    pub max_ratio_residual: f64,
    pub chain_holds: bool,
    pub difference_identity_holds: bool,
    pub ratio_identity_holds: bool,
}

impl NestingReport {
    pub fn holds(&self) -> bool {
        self.chain_holds && self.difference_identity_holds && self.ratio_identity_holds
    }

    pub fn first_violation(&self) -> Option<u32> {
        self.rows
            .iter()
            .find(|r| {
                !r.chain_holds
                    || r.difference_residual > NESTING_IDENTITY_TOL
                    || r.distance_ratio.is_some_and(|q| {
                        (q - self.expected_ratio).abs() > ratio_tolerance(r.dist1, self.ratio_m)
                    })
            })
            .map(|r| r.k)
    }
}

/// Tolerance for a measured `dist2/dist1`; `s − m` cancels when `k/n` is near `m`.
fn ratio_tolerance(dist1: f64, m: f64) -> f64 {
    NESTING_IDENTITY_TOL.max(8.0 * f64::EPSILON * (1.0 + m.abs()) / dist1)
}

pub fn check_theorem3(first: StancuParams, second: StancuParams) -> Result<NestingReport> {
    if first.n() != second.n() {
        return Err(invalid("both parameter sets must share the degree n"));
    }
    let (a1, b1, a2, b2) = (first.alpha(), first.beta(), second.alpha(), second.beta());
    if b1 <= 0.0 {
        return Err(domain("beta1 must be positive"));
    }
    if a1 > a2 || b1 > b2 {
        return Err(domain(format!(
            "need alpha1 <= alpha2 and beta1 <= beta2 (got {a1}/{b1} and {a2}/{b2})"
        )));
    }
    let m = a1 / b1;
    let m2 = a2 / b2;
    if (m - m2).abs() > RATIO_TOL * m.abs().max(m2.abs()).max(f64::MIN_POSITIVE) {
        return Err(domain(format!(
            "ratios differ: alpha1/beta1 = {m}, alpha2/beta2 = {m2}"
        )));
    }

    let n = f64::from(first.n());
    let expected_ratio = (n + b1) / (n + b2);
    let rows: Vec<NestingRow> = (0..=first.n())
        .map(|k| {
            let b = f64::from(k) / n;
            let (s1, s2) = (first.node(k), second.node(k));
            let (d1, d2) = ((s1 - m).abs(), (s2 - m).abs());
            let crossing = (b - m).abs() <= CROSSING_TOL;
            let predicted = n * (b2 - b1) * (b - m) / ((n + b1) * (n + b2));
            let chain_holds = if crossing || b2 == b1 {
                d1 <= CROSSING_TOL && d2 <= CROSSING_TOL || s1 == s2
            } else if b < m {
                s1 < s2 && s2 < m
            } else {
                s1 > s2 && s2 > m
            };
            NestingRow {
                k,
                node1: s1,
                node2: s2,
                dist1: d1,
                dist2: d2,
                distance_ratio: (!crossing).then(|| d2 / d1),
                difference_residual: ((s1 - s2) - predicted).abs(),
                chain_holds,
            }
        })
        .collect();

    let crossing_indices = rows
        .iter()
        .filter(|r| r.distance_ratio.is_none())
        .map(|r| r.k)
        .collect();
    let max_difference_residual = rows
        .iter()
        .map(|r| r.difference_residual)
        .fold(0.0, f64::max);
    let max_ratio_residual = rows
        .iter()
        .filter_map(|r| r.distance_ratio)
        .map(|q| (q - expected_ratio).abs())
        .fold(0.0, f64::max);
    Ok(NestingReport {
        first,
        second,
        ratio_m: m,
        expected_ratio,
        chain_holds: rows.iter().all(|r| r.chain_holds),
        difference_identity_holds: max_difference_residual <= NESTING_IDENTITY_TOL,
        ratio_identity_holds: rows.iter().all(|r| {
            r.distance_ratio
                .is_none_or(|q| (q - expected_ratio).abs() <= ratio_tolerance(r.dist1, m))
        }),
        rows,
        crossing_indices,
        max_difference_residual,
        max_ratio_residual,
    })
}
