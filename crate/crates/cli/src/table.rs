//! Plain tables and the number formats used in them.

use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderedTable {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub footnotes: Vec<String>,
}

impl RenderedTable {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        Self {
            title: title.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
            footnotes: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.headers.len(), "row width must match the header");
        self.rows.push(row);
    }

    /// First column left-aligned, the rest right-aligned, two spaces apart.
    pub fn to_text(&self) -> String {
        let ncol = self.headers.len();
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (j, (cell, w)) in cells.iter().zip(&widths).enumerate() {
                if j == 0 {
                    let _ = write!(s, "{cell:<w$}");
                } else {
                    let _ = write!(s, "  {cell:>w$}");
                }
            }
            s.trim_end().to_string()
        };
        let total: usize = widths.iter().sum::<usize>() + 2 * ncol.saturating_sub(1);
        let rule = "-".repeat(total);

        let mut out = String::new();
        out.push_str(&self.title);
        out.push('\n');
        out.push_str(&rule);
        out.push('\n');
        out.push_str(&line(&self.headers));
        out.push('\n');
        out.push_str(&rule);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&line(row));
            out.push('\n');
        }
        out.push_str(&rule);
        out.push('\n');
        for note in &self.footnotes {
            out.push_str(note);
            out.push('\n');
        }
        out
    }

    /// Header plus rows as displayed, cells trimmed; title and footnotes are dropped.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.headers).expect("write to memory");
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.trim())).expect("write to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("cells are UTF-8")
    }
}

/// Fixed-point rendering that never prints `-0.000`.
pub fn fixed(x: f64, places: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "Inf".into() } else { "-Inf".into() };
    }
    let s = format!("{x:.places$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

/// `d.ddde±XX`, exponent padded to two digits.
pub fn scientific(x: f64, places: usize) -> String {
    if !x.is_finite() {
        return fixed(x, places);
    }
    let s = format!("{x:.places$e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// Five decimals, switching to scientific notation below `1e-4`.
pub fn p_value(p: f64) -> String {
    if p.is_finite() && p < 1e-4 {
        scientific(p, 3)
    } else {
        fixed(p, 5)
    }
}
