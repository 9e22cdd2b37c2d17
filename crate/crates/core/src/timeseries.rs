//! Quarterly series and the deterministic transforms applied to them.
//!
//! A [`Series`] is a contiguous run of quarterly observations: observation `i`
//! belongs to `start` advanced by `i` quarters, so gaps cannot be represented.
//! Differenced and lagged series are re-dated so that `Δy_t` carries the
//! period `t`, which keeps `diff` and `lag` composable.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("quarter must be in 1..=4, got {0}")]
    InvalidQuarter(u8),
    #[error("cannot parse period {0:?}")]
    BadPeriodFormat(String),
    #[error("series {name:?} is empty")]
    Empty { name: String },
    #[error("series {name:?} has a non-finite value at index {index}")]
    NonFinite { name: String, index: usize },
    #[error("series {name:?} has {len} observations, needs more than {needed}")]
    SeriesTooShort { name: String, len: usize, needed: usize },
    #[error("non-positive value at index {0}")]
    NonPositiveValue(usize),
    #[error("no common period window across the supplied series")]
    NoOverlap,
    #[error("duplicate column name {0:?}")]
    DuplicateName(String),
    #[error("cannot build a frame from zero columns")]
    NoColumns,
    #[error("column {name:?} does not match the frame window")]
    NotRectangular { name: String },
}

/// A calendar quarter. Ordering is lexicographic on `(year, quarter)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Period {
    year: i32,
    quarter: u8,
}

impl Period {
    pub fn new(year: i32, quarter: u8) -> Result<Self, SeriesError> {
        if !(1..=4).contains(&quarter) {
            return Err(SeriesError::InvalidQuarter(quarter));
        }
        Ok(Self { year, quarter })
    }

    pub fn year(self) -> i32 {
        self.year
    }

    pub fn quarter(self) -> u8 {
        self.quarter
    }

    /// Quarters elapsed since year 0 Q1; a linear index for arithmetic.
    fn ordinal(self) -> i64 {
        i64::from(self.year) * 4 + i64::from(self.quarter - 1)
    }

    fn from_ordinal(ord: i64) -> Self {
        Self {
            year: ord.div_euclid(4) as i32,
            quarter: ord.rem_euclid(4) as u8 + 1,
        }
    }

    pub fn succ(self) -> Self {
        self.advance(1)
    }

    /// Moves `n` quarters forward (or backward when negative).
    pub fn advance(self, n: i64) -> Self {
        Self::from_ordinal(self.ordinal() + n)
    }

    /// Signed number of quarters from `self` to `other`.
    pub fn quarters_until(self, other: Period) -> i64 {
        other.ordinal() - self.ordinal()
    }
}

impl PartialOrd for Period {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Period {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.year, self.quarter).cmp(&(other.year, other.quarter))
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}Q{}", self.year, self.quarter)
    }
}

impl FromStr for Period {
    type Err = SeriesError;

    /// Accepts `2001Q4`, `2001.Q4`, `2001-Q4` (any case, surrounding whitespace ignored).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SeriesError::BadPeriodFormat(s.to_string());
        let t = s.trim();
        let q_pos = t.find(['Q', 'q']).ok_or_else(bad)?;
        let (year_part, rest) = t.split_at(q_pos);
        let year_part = year_part
            .strip_suffix(['.', '-'])
            .unwrap_or(year_part);
        if year_part.is_empty() || !year_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let quarter_part = &rest[1..];
        if quarter_part.len() != 1 {
            return Err(bad());
        }
        let year: i32 = year_part.parse().map_err(|_| bad())?;
        let quarter: u8 = quarter_part.parse().map_err(|_| bad())?;
        Period::new(year, quarter).map_err(|_| bad())
    }
}

/// One named quarterly series with finite values and no gaps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Series {
    name: String,
    start: Period,
    values: Vec<f64>,
}

impl Series {
    pub fn new(name: impl Into<String>, start: Period, values: Vec<f64>) -> Result<Self, SeriesError> {
        let name = name.into();
        if values.is_empty() {
            return Err(SeriesError::Empty { name });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(SeriesError::NonFinite { name, index });
        }
        Ok(Self { name, start, values })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn start(&self) -> Period {
        self.start
    }

    /// Period of the last observation.
    pub fn end(&self) -> Period {
        self.start.advance(self.values.len() as i64 - 1)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn period_at(&self, i: usize) -> Period {
        self.start.advance(i as i64)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    fn too_short(&self, needed: usize) -> SeriesError {
        SeriesError::SeriesTooShort {
            name: self.name.clone(),
            len: self.len(),
            needed,
        }
    }

    /// Copy restricted to the inclusive window `[from, to]`; caller guarantees containment.
    fn window(&self, from: Period, to: Period) -> Series {
        let lo = self.start.quarters_until(from) as usize;
        let hi = self.start.quarters_until(to) as usize;
        Series {
            name: self.name.clone(),
            start: from,
            values: self.values[lo..=hi].to_vec(),
        }
    }
}

/// Differences of the given order. `Δy_t` is dated `t`, so the result starts
/// `order` quarters after `s`.
pub fn diff(s: &Series, order: usize) -> Result<Series, SeriesError> {
    assert!(order >= 1, "difference order must be positive");
    if s.len() <= order {
        return Err(s.too_short(order));
    }
    let mut values = s.values.clone();
    for _ in 0..order {
        values = values.windows(2).map(|w| w[1] - w[0]).collect();
    }
    let name = if order == 1 {
        format!("{}_d1", s.name)
    } else {
        format!("{}_d{}", s.name, order)
    };
    Ok(Series {
        name,
        start: s.start.advance(order as i64),
        values,
    })
}

/// `y_{t-k}` dated at `t`: the first `len - k` values shifted forward `k` quarters.
pub fn lag(s: &Series, k: usize) -> Result<Series, SeriesError> {
    assert!(k >= 1, "lag must be positive");
    if s.len() <= k {
        return Err(s.too_short(k));
    }
    Ok(Series {
        name: format!("{}_l{}", s.name, k),
        start: s.start.advance(k as i64),
        values: s.values[..s.len() - k].to_vec(),
    })
}

/// Element-wise natural logarithm.
pub fn log_transform(s: &Series) -> Result<Series, SeriesError> {
    if let Some(i) = s.values.iter().position(|&v| v <= 0.0) {
        return Err(SeriesError::NonPositiveValue(i));
    }
    Ok(Series {
        name: format!("ln_{}", s.name),
        start: s.start,
        values: s.values.iter().map(|v| v.ln()).collect(),
    })
}

/// A rectangular, period-aligned set of series with unique names.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Frame {
    start: Period,
    columns: Vec<Series>,
}

impl Frame {
    /// Builds a frame from columns that already share start and length.
    pub fn new(columns: Vec<Series>) -> Result<Self, SeriesError> {
        let first = columns.first().ok_or(SeriesError::NoColumns)?;
        let (start, len) = (first.start, first.len());
        for (i, c) in columns.iter().enumerate() {
            if c.start != start || c.len() != len {
                return Err(SeriesError::NotRectangular { name: c.name.clone() });
            }
            if columns[..i].iter().any(|o| o.name == c.name) {
                return Err(SeriesError::DuplicateName(c.name.clone()));
            }
        }
        Ok(Self { start, columns })
    }

    pub fn start(&self) -> Period {
        self.start
    }

    pub fn end(&self) -> Period {
        self.columns[0].end()
    }

    /// Number of observations per column.
    pub fn len(&self) -> usize {
        self.columns[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn columns(&self) -> &[Series] {
        &self.columns
    }

    pub fn column(&self, name: &str) -> Option<&Series> {
        self.columns.iter().find(|c| c.name == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.columns.iter().map(|c| c.name.as_str())
    }

    pub fn into_columns(self) -> Vec<Series> {
        self.columns
    }

    /// First-differences every column, keeping the original column names.
    pub fn differenced(&self) -> Result<Frame, SeriesError> {
        let cols = self
            .columns
            .iter()
            .map(|c| diff(c, 1).map(|d| d.renamed(c.name.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Frame::new(cols)
    }
}

/// Truncates every series to the common overlapping window.
pub fn align(columns: Vec<Series>) -> Result<Frame, SeriesError> {
    if columns.is_empty() {
        return Err(SeriesError::NoColumns);
    }
    for (i, c) in columns.iter().enumerate() {
        if columns[..i].iter().any(|o| o.name == c.name) {
            return Err(SeriesError::DuplicateName(c.name.clone()));
        }
    }
    let from = columns.iter().map(Series::start).max().unwrap();
    let to = columns.iter().map(Series::end).min().unwrap();
    if from > to {
        return Err(SeriesError::NoOverlap);
    }
    let cols = columns.iter().map(|c| c.window(from, to)).collect();
    Frame::new(cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(y: i32, q: u8) -> Period {
        Period::new(y, q).unwrap()
    }

    fn series(name: &str, start: Period, values: &[f64]) -> Series {
        Series::new(name, start, values.to_vec()).unwrap()
    }

    #[test]
    fn period_rollover_and_order() {
        assert_eq!(p(2001, 4).succ(), p(2002, 1));
        assert_eq!(p(2002, 1).advance(-1), p(2001, 4));
        assert!(p(2001, 4) < p(2002, 1));
        assert!(p(2001, 2) < p(2001, 3));
        assert_eq!(p(2001, 4).quarters_until(p(2021, 3)), 79);
        assert_eq!(Period::new(2001, 5), Err(SeriesError::InvalidQuarter(5)));
        assert_eq!(Period::new(2001, 0), Err(SeriesError::InvalidQuarter(0)));
    }

    #[test]
    fn period_parsing() {
        for s in ["2001Q4", "2001q4", "2001.Q4", "2001-q4", " 2001Q4 "] {
            assert_eq!(s.parse::<Period>().unwrap(), p(2001, 4), "{s}");
        }
        for s in ["2001", "2001Q5", "Q4", "2001Q", "2001/Q4", "2001Q41", "20a1Q1"] {
            assert!(s.parse::<Period>().is_err(), "{s}");
        }
        assert_eq!(p(2021, 3).to_string(), "2021Q3");
    }

    #[test]
    fn series_rejects_non_finite_and_empty() {
        assert!(matches!(
            Series::new("x", p(2000, 1), vec![1.0, f64::NAN]),
            Err(SeriesError::NonFinite { index: 1, .. })
        ));
        assert!(matches!(Series::new("x", p(2000, 1), vec![]), Err(SeriesError::Empty { .. })));
    }

    #[test]
    fn diff_examples() {
        let s = series("y", p(2001, 4), &[1.0, 2.0, 4.0]);
        let d = diff(&s, 1).unwrap();
        assert_eq!(d.values(), &[1.0, 2.0]);
        assert_eq!(d.start(), p(2002, 1));
        assert_eq!(d.name(), "y_d1");

        let c = series("c", p(2001, 4), &[5.0; 4]);
        assert_eq!(diff(&c, 1).unwrap().values(), &[0.0, 0.0, 0.0]);

        let full = Series::new("r", p(2001, 4), (0..80).map(f64::from).collect()).unwrap();
        assert_eq!(full.end(), p(2021, 3));
        let d = diff(&full, 1).unwrap();
        assert_eq!(d.len(), 79);
        assert_eq!(d.start(), p(2002, 1));
        assert_eq!(d.end(), p(2021, 3));

        assert!(matches!(diff(&s, 3), Err(SeriesError::SeriesTooShort { .. })));
    }

    #[test]
    fn lag_examples() {
        let s = series("y", p(2001, 1), &[1.0, 2.0, 3.0, 4.0]);
        let l = lag(&s, 1).unwrap();
        assert_eq!(l.values(), &[1.0, 2.0, 3.0]);
        assert_eq!(l.start(), p(2001, 2));

        let one = series("y", p(2001, 1), &[7.0]);
        assert!(matches!(lag(&one, 1), Err(SeriesError::SeriesTooShort { .. })));

        let augment = lag(&diff(&s, 1).unwrap(), 1).unwrap();
        assert_eq!(augment.values(), &[1.0, 1.0]);
        assert_eq!(augment.start(), p(2001, 3));
    }

    #[test]
    fn log_examples() {
        let e = std::f64::consts::E;
        let s = series("m", p(2001, 1), &[1.0, e, e * e]);
        let l = log_transform(&s).unwrap();
        for (got, want) in l.values().iter().zip([0.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-15);
        }
        let bad = series("m", p(2001, 1), &[10.0, -1.0]);
        assert_eq!(log_transform(&bad), Err(SeriesError::NonPositiveValue(1)));
    }

    #[test]
    fn align_examples() {
        let a = Series::new("a", p(2001, 4), vec![1.0; 80]).unwrap();
        let b = Series::new("b", p(2001, 4), vec![2.0; 80]).unwrap();
        let f = align(vec![a.clone(), b]).unwrap();
        assert_eq!((f.start(), f.end(), f.len()), (p(2001, 4), p(2021, 3), 80));

        let b = Series::new("b", p(2002, 1), vec![2.0; 79]).unwrap();
        let f = align(vec![a, b]).unwrap();
        assert_eq!((f.start(), f.end(), f.len()), (p(2002, 1), p(2021, 3), 79));

        let x = series("x", p(2001, 1), &[1.0; 4]);
        let y = series("y", p(2010, 1), &[1.0; 4]);
        assert_eq!(align(vec![x.clone(), y]), Err(SeriesError::NoOverlap));

        let dup = series("x", p(2001, 1), &[2.0; 4]);
        assert_eq!(align(vec![x, dup]), Err(SeriesError::DuplicateName("x".into())));
    }

    #[test]
    fn frame_rejects_ragged_columns() {
        let a = series("a", p(2001, 1), &[1.0, 2.0]);
        let b = series("b", p(2001, 2), &[1.0, 2.0]);
        assert!(matches!(Frame::new(vec![a, b]), Err(SeriesError::NotRectangular { .. })));
        assert_eq!(Frame::new(vec![]), Err(SeriesError::NoColumns));
    }
}
