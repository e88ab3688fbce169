//! Number formatting and the per-value result table.

use egalitarian_core::values::Exact;
use egalitarian_core::ValueId;
use serde::Serialize;

/// Up to six fraction digits, trailing zeros dropped, never `-0`.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let mut s = format!("{x:.6}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

pub fn ratio(x: &Exact) -> String {
    if *x.denom() == 1 {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub value: ValueId,
    pub payoffs: Vec<String>,
    pub total: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResultTable {
    pub players: Vec<String>,
    pub rows: Vec<Row>,
}

impl ResultTable {
    pub fn new(players: Vec<String>) -> Self {
        ResultTable { players, rows: Vec::new() }
    }

    pub fn push_float(&mut self, value: ValueId, payoffs: &[f64]) {
        let total: f64 = payoffs.iter().sum();
        self.rows.push(Row { value, payoffs: payoffs.iter().map(|&x| num(x)).collect(), total: num(total) });
    }

    pub fn push_exact(&mut self, value: ValueId, payoffs: &[Exact]) {
        let total: Exact = payoffs.iter().sum();
        self.rows.push(Row { value, payoffs: payoffs.iter().map(ratio).collect(), total: ratio(&total) });
    }

    /// Value names left-aligned, numbers right-aligned, two spaces apart.
    pub fn to_text(&self) -> String {
        let mut cells: Vec<Vec<String>> = Vec::with_capacity(self.rows.len() + 1);
        let mut header = vec!["value".to_string()];
        header.extend(self.players.iter().cloned());
        header.push("total".into());
        cells.push(header);
        for r in &self.rows {
            let mut line = vec![r.value.name().to_string()];
            line.extend(r.payoffs.iter().cloned());
            line.push(r.total.clone());
            cells.push(line);
        }
        let widths: Vec<usize> =
            (0..cells[0].len()).map(|c| cells.iter().map(|l| l[c].chars().count()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for line in &cells {
            let parts: Vec<String> =
                line.iter()
                    .enumerate()
                    .map(|(c, cell)| {
                        if c == 0 {
                            format!("{cell:<w$}", w = widths[c])
                        } else {
                            format!("{cell:>w$}", w = widths[c])
                        }
                    })
                    .collect();
            out.push_str(parts.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers() {
        assert_eq!(num(43.2), "43.2");
        assert_eq!(num(54.0), "54");
        assert_eq!(num(28.25), "28.25");
        assert_eq!(num(-0.0), "0");
        assert_eq!(num(-1e-12), "0");
        assert_eq!(num(1.0 / 3.0), "0.333333");
        assert_eq!(num(-366.0), "-366");
    }

    #[test]
    fn ratios() {
        assert_eq!(ratio(&Exact::new(113, 4)), "113/4");
        assert_eq!(ratio(&Exact::new(-54, 1)), "-54");
    }

    #[test]
    fn text_layout() {
        let mut t = ResultTable::new(vec!["a".into(), "bb".into()]);
        t.push_float(ValueId::Ed, &[1.5, 1.5]);
        t.push_float(ValueId::Lesd3, &[10.0, -7.0]);
        let want = "value    a   bb  total\nED     1.5  1.5      3\nLESD3   10   -7      3\n";
        assert_eq!(t.to_text(), want);
    }
}
