//! Real-valued target functions on the unit interval.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, invalid, Error, Result};

/// Analytic functions available by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// `t ↦ 1`
    E0,
    /// `t ↦ t`
    E1,
    /// `t ↦ t²`
    E2,
    /// `t ↦ sin(15 t)`
    Sin15,
    /// `t ↦ |t − 1/2|`
    AbsHalf,
}

impl Builtin {
    pub const ALL: [Builtin; 5] = [
        Builtin::E0,
        Builtin::E1,
        Builtin::E2,
        Builtin::Sin15,
        Builtin::AbsHalf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::E0 => "e0",
            Builtin::E1 => "e1",
            Builtin::E2 => "e2",
            Builtin::Sin15 => "sin15",
            Builtin::AbsHalf => "abshalf",
        }
    }

    #[inline]
    pub fn value(self, x: f64) -> f64 {
        match self {
            Builtin::E0 => 1.0,
            Builtin::E1 => x,
            Builtin::E2 => x * x,
            Builtin::Sin15 => (15.0 * x).sin(),
            Builtin::AbsHalf => (x - 0.5).abs(),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| {
                invalid(format!(
                    "unknown function `{s}` (expected one of e0, e1, e2, sin15, abshalf)"
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionKind {
    Builtin(Builtin),
    /// Piecewise-linear interpolant through `(xs[i], ys[i])`.
    Tabulated {
        xs: Vec<f64>,
        ys: Vec<f64>,
    },
}

/// A named function `f: [0,1] → ℝ`.
///
/// Evaluation outside `[0,1]` is a domain error. Tabulated functions must
/// cover the whole interval: the first sample sits at 0, the last at 1.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    name: String,
    kind: FunctionKind,
}

impl FunctionSpec {
    pub fn builtin(b: Builtin) -> Self {
        FunctionSpec {
            name: b.name().to_owned(),
            kind: FunctionKind::Builtin(b),
        }
    }

    pub fn tabulated(name: impl Into<String>, samples: &[(f64, f64)]) -> Result<Self> {
        if samples.len() < 2 {
            return Err(invalid("tabulated function needs at least 2 samples"));
        }
        if samples
            .iter()
            .any(|(x, y)| !x.is_finite() || !y.is_finite())
        {
            return Err(invalid("tabulated samples must be finite"));
        }
        if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(invalid("tabulated x values must be strictly increasing"));
        }
        if samples[0].0 != 0.0 || samples[samples.len() - 1].0 != 1.0 {
            return Err(invalid("tabulated x values must start at 0 and end at 1"));
        }
        let (xs, ys) = samples.iter().copied().unzip();
        Ok(FunctionSpec {
            name: name.into(),
            kind: FunctionKind::Tabulated { xs, ys },
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &FunctionKind {
        &self.kind
    }

    pub fn is_builtin(&self, b: Builtin) -> bool {
        self.kind == FunctionKind::Builtin(b)
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(domain(format!(
                "{} evaluated at x = {x}, outside [0,1]",
                self.name
            )));
        }
        Ok(match &self.kind {
            FunctionKind::Builtin(b) => b.value(x),
            FunctionKind::Tabulated { xs, ys } => interpolate(xs, ys, x),
        })
    }
}

impl From<Builtin> for FunctionSpec {
    fn from(b: Builtin) -> Self {
        FunctionSpec::builtin(b)
    }
}

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<Builtin>().map(FunctionSpec::builtin)
    }
}

fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    // first index with xs[i] > x, clamped so that [i-1, i] is a valid segment
    let i = xs.partition_point(|&t| t <= x).clamp(1, xs.len() - 1);
    let (x0, x1) = (xs[i - 1], xs[i]);
    let (y0, y1) = (ys[i - 1], ys[i]);
    if x == x1 {
        return y1;
    }
    let t = (x - x0) / (x1 - x0);
    y0 + t * (y1 - y0)
}
