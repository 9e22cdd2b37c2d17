//! The four commands. Each produces a [`Document`] holding full-precision
//! results; rendering to text, CSV or JSON happens afterwards.

use serde::Serialize;
use tsecon::hac::{refit_with_hac, HacScaling};
use tsecon::ingest::{load_csv, summary_stats, validate};
use tsecon::linreg::{fit_ols, RegressionSpec};
use tsecon::normality::shapiro_wilk;
use tsecon::timeseries::{Frame, Period};
use tsecon::unitroot::{adf_test, schwert_max_lag, LagSelection};

use crate::config::{AdfLags, OutputFormat, ReportConfig, StarConvention};
use crate::error::CliError;
use crate::table::{fixed, p_value, RenderedTable};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryEntry {
    pub variable: String,
    pub label: String,
    pub source: String,
    pub log_transformed: bool,
    pub minimum: f64,
    pub mean: f64,
    pub maximum: f64,
    pub count: usize,
    #[serde(skip)]
    pub decimals: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryReport {
    pub sample: Sample,
    pub variables: Vec<SummaryEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    pub start: String,
    pub end: String,
    pub observations: usize,
}

impl Sample {
    fn of(frame: &Frame) -> Self {
        Self { start: frame.start().to_string(), end: frame.end().to_string(), observations: frame.len() }
    }

    /// `2001.Q4 - 2021.Q3`
    fn range(&self) -> String {
        format!("{} - {}", dotted(&self.start), dotted(&self.end))
    }
}

fn dotted(period: &str) -> String {
    match period.parse::<Period>() {
        Ok(p) => format!("{}.Q{}", p.year(), p.quarter()),
        Err(_) => period.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalValuesOut {
    pub one_pct: f64,
    pub five_pct: f64,
    pub ten_pct: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdfEntry {
    pub variable: String,
    pub differenced: bool,
    pub statistic: f64,
    pub lag_order: usize,
    pub nobs: usize,
    pub critical_values: Option<CriticalValuesOut>,
    pub stars: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdfReport {
    pub variant: &'static str,
    pub lag_selection: String,
    pub rows: Vec<AdfEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientEntry {
    pub name: String,
    pub estimate: f64,
    pub std_error: f64,
    pub t_value: f64,
    pub p_value: f64,
    pub stars: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HacOut {
    pub lag: usize,
    pub scaling: &'static str,
    pub small_sample_adjust: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionReport {
    pub dependent: String,
    pub differenced: bool,
    pub sample: Sample,
    pub nobs: usize,
    pub df_resid: usize,
    pub r_squared: Option<f64>,
    pub hac: HacOut,
    pub coefficients: Vec<CoefficientEntry>,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub stars: StarConvention,
    #[serde(skip)]
    pub residuals: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapiroOut {
    pub w: f64,
    pub p_value: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    pub shapiro_wilk: Option<ShapiroOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Document {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<SummaryReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adf: Option<AdfReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regression: Option<RegressionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<Diagnostics>,
}

/// Loads the dataset and returns it with data-quality warnings for stderr.
pub fn load(cfg: &ReportConfig) -> Result<(Frame, Vec<String>), CliError> {
    let frame = load_csv(&cfg.data_path, &cfg.schema)?;
    let warnings = validate(&frame).findings.iter().map(|f| format!("warning: {f}")).collect();
    Ok((frame, warnings))
}

pub fn summary(cfg: &ReportConfig, frame: &Frame) -> Result<SummaryReport, CliError> {
    let variables = summary_stats(frame)?
        .into_iter()
        .map(|row| SummaryEntry {
            label: cfg.label(&row.variable),
            source: cfg.source(&row.variable),
            log_transformed: cfg.schema.log_columns.contains(&row.variable),
            decimals: cfg.decimals(&row.variable),
            variable: row.variable,
            minimum: row.minimum,
            mean: row.mean,
            maximum: row.maximum,
            count: row.count,
        })
        .collect();
    Ok(SummaryReport { sample: Sample::of(frame), variables })
}

pub fn adf(cfg: &ReportConfig, frame: &Frame) -> Result<AdfReport, CliError> {
    let differenced = frame.differenced()?;
    let mut rows = Vec::new();
    for (series, is_diff) in frame
        .columns()
        .iter()
        .map(|s| (s, false))
        .chain(differenced.columns().iter().map(|s| (s, true)))
    {
        let selection = match cfg.adf_lags {
            AdfLags::Fixed(p) => LagSelection::Fixed(p),
            AdfLags::Aic(max) => LagSelection::Aic { max_lag: max.unwrap_or_else(|| schwert_max_lag(series.len())) },
        };
        let r = adf_test(series, cfg.adf_variant, selection)?;
        rows.push(AdfEntry {
            variable: series.name().to_string(),
            differenced: is_diff,
            statistic: r.statistic,
            lag_order: r.lag_order,
            nobs: r.nobs_used,
            critical_values: r.critical_values.map(|c| CriticalValuesOut {
                one_pct: c.one_pct,
                five_pct: c.five_pct,
                ten_pct: c.ten_pct,
            }),
            stars: r.significance.map(|s| s.stars()).unwrap_or_default().to_string(),
        });
    }
    let lag_selection = match cfg.adf_lags {
        AdfLags::Fixed(p) => format!("fixed {p}"),
        AdfLags::Aic(Some(m)) => format!("aic up to {m}"),
        AdfLags::Aic(None) => "aic up to Schwert bound".to_string(),
    };
    Ok(AdfReport { variant: cfg.adf_variant.label(), lag_selection, rows })
}

pub fn regression(cfg: &ReportConfig, frame: &Frame) -> Result<RegressionReport, CliError> {
    let data = if cfg.difference { frame.differenced()? } else { frame.clone() };
    let spec = RegressionSpec::new(cfg.dependent.clone(), cfg.regressors());
    let (ols, design) = fit_ols(&data, &spec)?;
    let hac_cfg = cfg.hac_config(ols.nobs);
    let fit = refit_with_hac(&ols, &design, &hac_cfg)?;

    let mut warnings = Vec::new();
    if !cfg.difference {
        warnings.push(
            "Warning: regression in levels; with unit-root series the results may be spurious.".to_string(),
        );
    }
    let y = data.column(&cfg.dependent).expect("dependent checked by fit").values();
    let scale: f64 = y.iter().map(|v| v * v).sum();
    if fit.rss <= 1e-24 * scale.max(f64::MIN_POSITIVE) {
        warnings.push(
            "Warning: residuals are numerically zero; standard errors and tests are degenerate.".to_string(),
        );
    }

    let coefficients = (0..fit.names.len())
        .map(|i| CoefficientEntry {
            name: fit.names[i].clone(),
            estimate: fit.coefficients[i],
            std_error: fit.std_errors[i],
            t_value: fit.t_values[i],
            p_value: fit.p_values[i],
            stars: cfg.stars.stars(fit.p_values[i]).to_string(),
        })
        .collect();
    Ok(RegressionReport {
        dependent: cfg.dependent.clone(),
        differenced: cfg.difference,
        sample: Sample::of(frame),
        nobs: fit.nobs,
        df_resid: fit.df_resid,
        r_squared: fit.r_squared,
        hac: HacOut {
            lag: hac_cfg.lag,
            scaling: match hac_cfg.scaling {
                HacScaling::PaperFormula => "paper",
                HacScaling::StandardSandwich => "standard",
            },
            small_sample_adjust: hac_cfg.small_sample_adjust,
        },
        coefficients,
        warnings,
        stars: cfg.stars,
        residuals: fit.residuals,
    })
}

pub fn diagnostics(reg: &RegressionReport) -> Diagnostics {
    match shapiro_wilk(&reg.residuals) {
        Ok(r) => Diagnostics {
            shapiro_wilk: Some(ShapiroOut { w: r.w_statistic, p_value: r.p_value, n: r.n }),
            note: None,
        },
        Err(e) => Diagnostics { shapiro_wilk: None, note: Some(format!("Shapiro-Wilk not computed: {e}")) },
    }
}

pub fn cmd_summary(cfg: &ReportConfig) -> Result<(Document, Vec<String>), CliError> {
    let (frame, warnings) = load(cfg)?;
    let doc = Document { summary: Some(summary(cfg, &frame)?), ..Document::default() };
    Ok((doc, warnings))
}

pub fn cmd_adf(cfg: &ReportConfig) -> Result<(Document, Vec<String>), CliError> {
    let (frame, warnings) = load(cfg)?;
    let doc = Document { adf: Some(adf(cfg, &frame)?), ..Document::default() };
    Ok((doc, warnings))
}

pub fn cmd_regress(cfg: &ReportConfig) -> Result<(Document, Vec<String>), CliError> {
    let (frame, warnings) = load(cfg)?;
    let doc = Document { regression: Some(regression(cfg, &frame)?), ..Document::default() };
    Ok((doc, warnings))
}

pub fn cmd_report(cfg: &ReportConfig) -> Result<(Document, Vec<String>), CliError> {
    let (frame, warnings) = load(cfg)?;
    let reg = regression(cfg, &frame)?;
    let doc = Document {
        summary: Some(summary(cfg, &frame)?),
        adf: Some(adf(cfg, &frame)?),
        diagnostics: Some(diagnostics(&reg)),
        regression: Some(reg),
    };
    Ok((doc, warnings))
}

impl SummaryReport {
    pub fn table(&self) -> RenderedTable {
        let mut t = RenderedTable::new("Summary of Dataset Variables", &["Variable", "Source", "Minimum", "Mean", "Maximum"]);
        for v in &self.variables {
            let d = v.decimals;
            t.push_row(vec![v.label.clone(), v.source.clone(), fixed(v.minimum, d), fixed(v.mean, d), fixed(v.maximum, d)]);
        }
        t.footnotes.push(format!("Sample: {} ({} observations)", self.sample.range(), self.sample.observations));
        let logged: Vec<&str> = self.variables.iter().filter(|v| v.log_transformed).map(|v| v.variable.as_str()).collect();
        if !logged.is_empty() {
            t.footnotes.push(format!("Natural logs: {}", logged.join(", ")));
        }
        t
    }
}

impl AdfEntry {
    pub fn label(&self) -> String {
        if self.differenced {
            format!("{} (First Difference)", self.variable)
        } else {
            self.variable.clone()
        }
    }
}

impl AdfReport {
    pub fn table(&self) -> RenderedTable {
        let mut t = RenderedTable::new(
            "Augmented Dickey-Fuller Test Results",
            &["Variable", "Test Statistic", "Critical Value (5%)", "Significant"],
        );
        for r in &self.rows {
            let cv = r.critical_values.as_ref().map(|c| fixed(c.five_pct, 2)).unwrap_or_else(|| "NA".into());
            t.push_row(vec![r.label(), fixed(r.statistic, 3), cv, r.stars.clone()]);
        }
        let deterministic = match self.variant {
            "none" => "no constant, no trend",
            "constant" => "constant",
            _ => "constant and trend",
        };
        t.footnotes.push(format!("Test regression: {deterministic}; lag order: {}", self.lag_selection));
        t.footnotes.push("Significance: *** below the 1% critical value, ** below 5%, * below 10%".into());
        if self.rows.iter().any(|r| r.critical_values.is_none()) {
            t.footnotes.push("NA: effective sample too small for tabulated critical values".into());
        }
        t
    }
}

impl RegressionReport {
    pub fn table(&self) -> RenderedTable {
        let mut t = RenderedTable::new(
            "Regression Results with Newey-West Standard Errors",
            &["Variable", "Estimate", "Std. Error", "t value", "Pr(>|t|)"],
        );
        for c in &self.coefficients {
            let p = format!("{} {:<3}", p_value(c.p_value), c.stars);
            t.push_row(vec![c.name.clone(), fixed(c.estimate, 5), fixed(c.std_error, 5), fixed(c.t_value, 4), p]);
        }
        let dependent = if self.differenced { format!("{} (Differenced)", self.dependent) } else { self.dependent.clone() };
        t.footnotes.push(format!("Dependent Variable: {dependent}"));
        t.footnotes.push("Method: Least Squares".into());
        t.footnotes.push(format!("Sample: {}", self.sample.range()));
        t.footnotes.push(format!("Included observations: {} after adjustments", self.nobs));
        t.footnotes.push(format!("Newey-West HAC Standard Errors & Covariance (lag truncation={})", self.hac.lag));
        if self.hac.scaling == "paper" {
            t.footnotes.push("Covariance carries an extra 1/T factor".into());
        }
        if self.hac.small_sample_adjust {
            t.footnotes.push("Covariance scaled by T/(T-k)".into());
        }
        let [a, b, c] = self.stars.thresholds();
        t.footnotes.push(format!("Significance: *** p<{a}, ** p<{b}, * p<{c}"));
        t.footnotes.extend(self.warnings.iter().cloned());
        t
    }
}

impl Diagnostics {
    pub fn line(&self) -> String {
        match (&self.shapiro_wilk, &self.note) {
            (Some(sw), _) => format!("Shapiro-Wilk W={}, p={}", fixed(sw.w, 5), fixed(sw.p_value, 4)),
            (None, Some(note)) => note.clone(),
            (None, None) => String::new(),
        }
    }

    fn table(&self) -> RenderedTable {
        let mut t = RenderedTable::new("Diagnostics", &["Test", "Statistic", "p-value", "n"]);
        if let Some(sw) = &self.shapiro_wilk {
            t.push_row(vec!["Shapiro-Wilk".into(), fixed(sw.w, 5), fixed(sw.p_value, 4), sw.n.to_string()]);
        }
        t
    }
}

impl Document {
    pub fn tables(&self) -> Vec<RenderedTable> {
        let mut out = Vec::new();
        if let Some(s) = &self.summary {
            out.push(s.table());
        }
        if let Some(a) = &self.adf {
            out.push(a.table());
        }
        if let Some(r) = &self.regression {
            out.push(r.table());
        }
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => {
                let mut parts: Vec<String> = self.tables().iter().map(RenderedTable::to_text).collect();
                if let Some(d) = &self.diagnostics {
                    parts.push(format!("{}\n", d.line()));
                }
                parts.join("\n")
            }
            OutputFormat::Csv => {
                let mut parts: Vec<String> = self.tables().iter().map(RenderedTable::to_csv).collect();
                if let Some(d) = &self.diagnostics {
                    parts.push(d.table().to_csv());
                }
                parts.join("\n")
            }
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
        }
    }
}
