//! Minimal CSV tables: header row, LF line endings, shortest round-trip
//! decimals. Numeric cells only, with empty cells allowed.

use std::fmt::Write as _;

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_num(v: f64) -> String {
    format!("{v}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        Table {
            header: header.iter().map(|s| s.as_ref().to_owned()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Option<f64>>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn push_values(&mut self, row: &[f64]) {
        self.push(row.iter().copied().map(Some).collect());
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                if let Some(v) = cell {
                    let _ = write!(out, "{}", fmt_num(*v));
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_csv(text: &str) -> Result<Table, String> {
        let mut lines = text.lines();
        let header: Vec<String> = lines
            .next()
            .ok_or("empty CSV")?
            .split(',')
            .map(str::to_owned)
            .collect();
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            let row = line
                .split(',')
                .map(|c| {
                    if c.is_empty() {
                        Ok(None)
                    } else {
                        c.parse::<f64>()
                            .map(Some)
                            .map_err(|e| format!("row {}: bad number `{c}`: {e}", i + 1))
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != header.len() {
                return Err(format!(
                    "row {} has {} cells, header has {}",
                    i + 1,
                    row.len(),
                    header.len()
                ));
            }
            rows.push(row);
        }
        Ok(Table { header, rows })
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Non-empty values of a column, in row order.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().filter_map(|r| r[i]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn formatting() {
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(0.1), "0.1");
        assert_eq!(fmt_num(50.0 / 280.0), "0.17857142857142858");
    }

    #[test]
    fn empty_cells() {
        let mut t = Table::new(&["k", "m"]);
        t.push(vec![Some(0.0), None]);
        let csv = t.to_csv();
        assert_eq!(csv, "k,m\n0,\n");
        assert_eq!(Table::parse_csv(&csv).unwrap(), t);
    }

    #[test]
    fn parse_errors() {
        assert!(Table::parse_csv("").is_err());
        assert!(Table::parse_csv("a,b\n1\n").is_err());
        assert!(Table::parse_csv("a\nx\n").is_err());
    }

    proptest! {
        #[test]
        fn csv_round_trip(values in proptest::collection::vec(-1e300f64..1e300, 1..20)) {
            let mut t = Table::new(&["v"]);
            for v in &values {
                t.push_values(&[*v]);
            }
            let back = Table::parse_csv(&t.to_csv()).unwrap();
            prop_assert_eq!(back.column("v").unwrap(), values);
        }
    }
}
