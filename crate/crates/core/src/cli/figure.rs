//! Figure presets and their CSV/SVG rendering.

use std::fmt;
use std::str::FromStr;

use crate::function::{Builtin, FunctionSpec};
use crate::nodes::node_table;
use crate::operators::{uniform_grid, StancuOperator, StancuParams};

use super::svg::{curve_svg, node_lanes, node_svg, Series};
use super::table::Table;

pub const DEFAULT_CURVE_GRID: usize = 1001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct FigureId(u8);

impl FigureId {
    pub fn all() -> impl Iterator<Item = FigureId> {
        (1..=10).map(FigureId)
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0)
    }
}

impl FromStr for FigureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.strip_prefix('f')
            .and_then(|d| d.parse::<u8>().ok())
            .filter(|d| (1..=10).contains(d))
            .map(FigureId)
            .ok_or_else(|| format!("unknown figure `{s}` (expected f1..f10)"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FigureKind {
    /// `f`, its Bernstein polynomial and one Stancu polynomial per `(α, β)`.
    Curve {
        function: Builtin,
        n: u32,
        params: Vec<(f64, f64)>,
    },
    /// Bernstein nodes and one Stancu node family per `(α, β)`.
    Nodes { n: u32, sets: Vec<(f64, f64)> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureJob {
    pub id: FigureId,
    pub kind: FigureKind,
    pub grid: usize,
}

const FIG9_TRIPLES: [(f64, f64); 3] = [(4.7, 10.0), (47.0, 100.0), (470.0, 1000.0)];

impl FigureJob {
    /// Fixed parameters for each figure id.
    pub fn preset(id: FigureId) -> FigureJob {
        let curve = |n, params: &[(f64, f64)]| FigureKind::Curve {
            function: Builtin::Sin15,
            n,
            params: params.to_vec(),
        };
        let kind = match id.0 {
            1 => curve(50, &[(20.0, 30.0)]),
            2 => curve(250, &[(20.0, 30.0)]),
            3 => FigureKind::Nodes {
                n: 25,
                sets: vec![(17.0, 100.0)],
            },
            4 => FigureKind::Nodes {
                n: 25,
                sets: vec![(47.0, 100.0)],
            },
            5 => FigureKind::Nodes {
                n: 25,
                sets: vec![(77.0, 100.0)],
            },
            6 => curve(100, &[(17.0, 100.0)]),
            7 => curve(100, &[(47.0, 100.0)]),
            8 => curve(100, &[(77.0, 100.0)]),
            9 => FigureKind::Nodes {
                n: 100,
                sets: FIG9_TRIPLES.to_vec(),
            },
            10 => curve(100, &FIG9_TRIPLES),
            _ => unreachable!("FigureId is validated on construction"),
        };
        FigureJob {
            id,
            kind,
            grid: DEFAULT_CURVE_GRID,
        }
    }

    pub fn with_degree(mut self, n: u32) -> Self {
        match &mut self.kind {
            FigureKind::Curve { n: d, .. } | FigureKind::Nodes { n: d, .. } => *d = n,
        }
        self
    }

    pub fn with_grid(mut self, grid: usize) -> Self {
        self.grid = grid;
        self
    }

    pub fn degree(&self) -> u32 {
        match self.kind {
            FigureKind::Curve { n, .. } | FigureKind::Nodes { n, .. } => n,
        }
    }

    fn params(&self) -> &[(f64, f64)] {
        match &self.kind {
            FigureKind::Curve { params, .. } => params,
            FigureKind::Nodes { sets, .. } => sets,
        }
    }

    pub fn title(&self) -> String {
        let sets = self
            .params()
            .iter()
            .map(|(a, b)| format!("alpha={a}, beta={b}"))
            .collect::<Vec<_>>()
            .join("; ");
        match &self.kind {
            FigureKind::Curve { function, n, .. } => format!(
                "{}: f = {function}, Bernstein and Bernstein-Stancu ({sets}), n = {n}",
                self.id
            ),
            FigureKind::Nodes { n, .. } => {
                format!(
                    "{}: Bernstein and Bernstein-Stancu nodes ({sets}), n = {n}",
                    self.id
                )
            }
        }
    }

    pub fn table(&self) -> crate::Result<Table> {
        match &self.kind {
            FigureKind::Curve {
                function,
                n,
                params,
            } => curve_table(&FunctionSpec::builtin(*function), *n, params, self.grid),
            FigureKind::Nodes { n, sets } => {
                if sets.len() == 1 {
                    nodes_csv_table(StancuParams::new(*n, sets[0].0, sets[0].1)?)
                } else {
                    multi_nodes_table(*n, sets)
                }
            }
        }
    }

    /// CSV text and the SVG drawn from it.
    pub fn render(&self) -> crate::Result<(String, String)> {
        let csv = self.table()?.to_csv();
        let svg = match &self.kind {
            FigureKind::Curve { params, .. } => {
                let mut series = vec![
                    Series::new("f", "f", "red"),
                    Series::new("bernstein", "Bernstein", "blue"),
                ];
                let colors: &[(&'static str, bool)] = if params.len() == 1 {
                    &[("magenta", false)]
                } else {
                    &[("black", false), ("magenta", false), ("blue", true)]
                };
                for (i, ((a, b), (color, dashed))) in params.iter().zip(colors).enumerate() {
                    let s = Series::new(
                        &stancu_column(i),
                        format!("Stancu alpha={a}, beta={b}"),
                        color,
                    );
                    series.push(if *dashed { s.dashed() } else { s });
                }
                curve_svg(&csv, &self.title(), &series)
            }
            FigureKind::Nodes { sets, .. } => {
                let colors: &[&'static str] = if sets.len() == 1 {
                    &["red"]
                } else {
                    &["red", "magenta", "black"]
                };
                let styles: Vec<(String, &'static str)> = sets
                    .iter()
                    .zip(colors)
                    .map(|((a, b), c)| (format!("Stancu nodes alpha={a}, beta={b}"), *c))
                    .collect();
                let m = sets.first().filter(|(_, b)| *b > 0.0).map(|(a, b)| a / b);
                node_lanes(&csv, "blue", &styles).map(|lanes| node_svg(&self.title(), &lanes, m))
            }
        }
        .map_err(crate::Error::InvalidArgument)?;
        Ok((csv, svg))
    }
}

fn stancu_column(i: usize) -> String {
    if i == 0 {
        "stancu".to_owned()
    } else {
        format!("stancu{}", i + 1)
    }
}

/// `x,f,bernstein,stancu[,stancu2,...]` over a uniform grid.
pub fn curve_table(
    f: &FunctionSpec,
    n: u32,
    params: &[(f64, f64)],
    grid: usize,
) -> crate::Result<Table> {
    let mut header = vec!["x".to_owned(), "f".to_owned(), "bernstein".to_owned()];
    header.extend((0..params.len()).map(stancu_column));
    let mut ops = vec![StancuOperator::new(f, StancuParams::bernstein(n)?)?];
    for &(a, b) in params {
        ops.push(StancuOperator::new(f, StancuParams::new(n, a, b)?)?);
    }
    let curves = ops
        .iter()
        .map(|op| op.curve(grid))
        .collect::<crate::Result<Vec<_>>>()?;
    let xs = uniform_grid(grid)?;
    let mut table = Table::new(&header);
    for (i, &x) in xs.iter().enumerate() {
        let mut row = vec![x, f.eval(x)?];
        row.extend(curves.iter().map(|c| c.values()[i]));
        table.push_values(&row);
    }
    Ok(table)
}

pub const NODE_COLUMNS: [&str; 6] = [
    "k",
    "bernstein_node",
    "stancu_node",
    "gap",
    "dist_bern_to_m",
    "dist_stancu_to_m",
];

fn node_cells(p: StancuParams) -> Vec<Vec<Option<f64>>> {
    node_table(p)
        .into_iter()
        .map(|r| {
            vec![
                Some(f64::from(r.k)),
                Some(r.bernstein_node),
                Some(r.stancu_node),
                Some(r.gap),
                r.dist_bernstein_to_m,
                r.dist_stancu_to_m,
            ]
        })
        .collect()
}

pub fn nodes_csv_table(p: StancuParams) -> crate::Result<Table> {
    let mut table = Table::new(&NODE_COLUMNS);
    for row in node_cells(p) {
        table.push(row);
    }
    Ok(table)
}

/// Node schema prefixed with `alpha,beta`, one block per parameter set.
pub fn multi_nodes_table(n: u32, sets: &[(f64, f64)]) -> crate::Result<Table> {
    let mut header = vec!["alpha", "beta"];
    header.extend(NODE_COLUMNS);
    let mut table = Table::new(&header);
    for &(a, b) in sets {
        for cells in node_cells(StancuParams::new(n, a, b)?) {
            let mut row = vec![Some(a), Some(b)];
            row.extend(cells);
            table.push(row);
        }
    }
    Ok(table)
}
