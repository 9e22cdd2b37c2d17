//! Run configuration. Settings are gathered as `key = value` pairs, first
//! from an optional config file and then from command-line flags, so flags
//! win; a single parser turns the merged map into a [`ReportConfig`].

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use tsecon::hac::{HacConfig, HacScaling};
use tsecon::ingest::DatasetSchema;
use tsecon::unitroot::AdfVariant;

use crate::error::{usage, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HacLag {
    Fixed(usize),
    /// `⌊4(T/100)^{2/9}⌋` of the regression sample.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdfLags {
    Fixed(usize),
    /// AIC search; `None` means Schwert's bound for each series.
    Aic(Option<usize>),
}

/// p-value cut-offs for `***`, `**` and `*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarConvention {
    thresholds: [f64; 3],
}

impl Default for StarConvention {
    fn default() -> Self {
        Self { thresholds: [0.01, 0.05, 0.10] }
    }
}

impl StarConvention {
    pub fn new(thresholds: [f64; 3]) -> Result<Self, CliError> {
        let [a, b, c] = thresholds;
        if !(0.0 < a && a < b && b < c && c < 1.0) {
            return Err(usage(format!("star thresholds must be strictly increasing in (0, 1), got {a}, {b}, {c}")));
        }
        Ok(Self { thresholds })
    }

    pub fn thresholds(&self) -> [f64; 3] {
        self.thresholds
    }

    pub fn stars(&self, p: f64) -> &'static str {
        let [a, b, c] = self.thresholds;
        if p < a {
            "***"
        } else if p < b {
            "**"
        } else if p < c {
            "*"
        } else {
            ""
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportConfig {
    pub data_path: PathBuf,
    pub schema: DatasetSchema,
    pub dependent: String,
    pub difference: bool,
    pub hac_lag: HacLag,
    pub hac_scaling: HacScaling,
    pub hac_small_sample: bool,
    pub adf_variant: AdfVariant,
    pub adf_lags: AdfLags,
    pub output_format: OutputFormat,
    pub stars: StarConvention,
    pub labels: BTreeMap<String, String>,
    pub sources: BTreeMap<String, String>,
    pub decimals: BTreeMap<String, usize>,
}

const DEFAULT_META: [(&str, &str, &str, usize); 5] = [
    ("REER", "REER (Real Effective Exchange Rate)", "IMF", 2),
    ("USLR", "USLR (US Lending Rate)", "IMF", 3),
    ("M2", "M2 (log Money Supply)", "IMF", 2),
    ("CPI", "CPI (Inflation)", "IMF", 3),
    ("WIR", "WIR (World Interest Rate)", "Federal Reserve", 4),
];

pub const DEFAULT_DECIMALS: usize = 4;

impl ReportConfig {
    /// Defaults for the bundled five-variable layout.
    pub fn new(data_path: impl Into<PathBuf>) -> Self {
        let mut labels = BTreeMap::new();
        let mut sources = BTreeMap::new();
        let mut decimals = BTreeMap::new();
        for (name, label, source, places) in DEFAULT_META {
            labels.insert(name.to_string(), label.to_string());
            sources.insert(name.to_string(), source.to_string());
            decimals.insert(name.to_string(), places);
        }
        Self {
            data_path: data_path.into(),
            schema: DatasetSchema::default(),
            dependent: "REER".into(),
            difference: true,
            hac_lag: HacLag::Fixed(4),
            hac_scaling: HacScaling::StandardSandwich,
            hac_small_sample: false,
            adf_variant: AdfVariant::None,
            adf_lags: AdfLags::Fixed(0),
            output_format: OutputFormat::Text,
            stars: StarConvention::default(),
            labels,
            sources,
            decimals,
        }
    }

    /// Builds a configuration from merged settings; `data` is required.
    pub fn from_settings(settings: &Settings) -> Result<Self, CliError> {
        let data = settings
            .get("data")
            .ok_or_else(|| usage("no data file given; pass --data <csv> or set TSECON_DATA"))?;
        let mut cfg = Self::new(data);
        for (key, value) in &settings.entries {
            cfg.apply(key, value)?;
        }
        cfg.schema.validate().map_err(|e| usage(e.to_string()))?;
        if !cfg.schema.variable_columns.contains(&cfg.dependent) {
            return Err(usage(format!("dependent variable {:?} is not among the columns", cfg.dependent)));
        }
        Ok(cfg)
    }

    fn apply(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let bad = || usage(format!("invalid value {value:?} for {key}"));
        match key {
            "data" => self.data_path = PathBuf::from(value),
            "period_column" => self.schema.period_column = value.to_string(),
            "columns" => self.schema.variable_columns = split_list(value),
            "log_columns" => self.schema.log_columns = split_list(value),
            "dependent" => self.dependent = value.to_string(),
            "difference" => self.difference = parse_bool(value).ok_or_else(bad)?,
            "hac.lag" => {
                self.hac_lag = match value {
                    "auto" => HacLag::Auto,
                    n => HacLag::Fixed(n.parse().map_err(|_| bad())?),
                }
            }
            "hac.scaling" => {
                self.hac_scaling = match value {
                    "paper" => HacScaling::PaperFormula,
                    "standard" => HacScaling::StandardSandwich,
                    _ => return Err(bad()),
                }
            }
            "hac.small_sample" => self.hac_small_sample = parse_bool(value).ok_or_else(bad)?,
            "adf.variant" => {
                self.adf_variant = match value {
                    "none" => AdfVariant::None,
                    "constant" => AdfVariant::Constant,
                    "trend" => AdfVariant::ConstantTrend,
                    _ => return Err(bad()),
                }
            }
            "adf.lags" => self.adf_lags = parse_adf_lags(value).ok_or_else(bad)?,
            "format" => {
                self.output_format = match value {
                    "text" => OutputFormat::Text,
                    "json" => OutputFormat::Json,
                    "csv" => OutputFormat::Csv,
                    _ => return Err(bad()),
                }
            }
            "stars" => {
                let parts: Vec<f64> = value
                    .split(',')
                    .map(|p| p.trim().parse::<f64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| bad())?;
                let thresholds: [f64; 3] = parts.try_into().map_err(|_| bad())?;
                self.stars = StarConvention::new(thresholds)?;
            }
            _ => {
                if let Some(var) = key.strip_prefix("label.") {
                    self.labels.insert(var.to_string(), value.to_string());
                } else if let Some(var) = key.strip_prefix("source.") {
                    self.sources.insert(var.to_string(), value.to_string());
                } else if let Some(var) = key.strip_prefix("decimals.") {
                    let places: usize = value.parse().map_err(|_| bad())?;
                    if places > 12 {
                        return Err(bad());
                    }
                    self.decimals.insert(var.to_string(), places);
                } else {
                    return Err(usage(format!("unknown setting {key:?}")));
                }
            }
        }
        Ok(())
    }

    pub fn hac_config(&self, nobs: usize) -> HacConfig {
        let lag = match self.hac_lag {
            HacLag::Fixed(l) => l,
            HacLag::Auto => tsecon::hac::auto_lag(nobs),
        };
        HacConfig { lag, scaling: self.hac_scaling, small_sample_adjust: self.hac_small_sample }
    }

    pub fn regressors(&self) -> Vec<String> {
        self.schema
            .variable_columns
            .iter()
            .filter(|c| **c != self.dependent)
            .cloned()
            .collect()
    }

    pub fn label(&self, var: &str) -> String {
        self.labels.get(var).cloned().unwrap_or_else(|| var.to_string())
    }

    pub fn source(&self, var: &str) -> String {
        self.sources.get(var).cloned().unwrap_or_default()
    }

    pub fn decimals(&self, var: &str) -> usize {
        self.decimals.get(var).copied().unwrap_or(DEFAULT_DECIMALS)
    }
}

/// Ordered `key = value` settings; later entries override earlier ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    entries: Vec<(String, String)>,
}

impl Settings {
    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        let value = value.into();
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(entry) => entry.1 = value,
            None => self.entries.push((key.to_string(), value)),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Parses `key = value` lines; `#` starts a comment line. A relative
    /// `data` path is resolved against `base`.
    pub fn parse(text: &str, base: Option<&Path>) -> Result<Self, CliError> {
        let mut settings = Settings::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| usage(format!("config line {}: expected key = value", i + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            if key == "data" {
                let path = Path::new(value);
                let resolved = match base {
                    Some(dir) if path.is_relative() => dir.join(path),
                    _ => path.to_path_buf(),
                };
                settings.set(key, resolved.to_string_lossy());
            } else {
                settings.set(key, value);
            }
        }
        Ok(settings)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text, path.parent())
    }
}

fn split_list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

fn parse_bool(value: &str) -> Option<bool> {
    match value {
        "true" | "yes" | "1" => Some(true),
        "false" | "no" | "0" => Some(false),
        _ => None,
    }
}

fn parse_adf_lags(value: &str) -> Option<AdfLags> {
    if value == "aic" {
        return Some(AdfLags::Aic(None));
    }
    if let Some(max) = value.strip_prefix("aic:") {
        return max.parse().ok().map(|m| AdfLags::Aic(Some(m)));
    }
    value.parse().ok().map(AdfLags::Fixed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings(pairs: &[(&str, &str)]) -> Settings {
        let mut s = Settings::default();
        for (k, v) in pairs {
            s.set(k, *v);
        }
        s
    }

    #[test]
    fn defaults() {
        let cfg = ReportConfig::from_settings(&settings(&[("data", "x.csv")])).unwrap();
        assert!(cfg.difference);
        assert_eq!(cfg.hac_lag, HacLag::Fixed(4));
        assert_eq!(cfg.adf_variant, AdfVariant::None);
        assert_eq!(cfg.regressors(), ["USLR", "M2", "CPI", "WIR"]);
        assert_eq!(cfg.decimals("WIR"), 4);
        assert_eq!(cfg.decimals("OTHER"), DEFAULT_DECIMALS);
        assert_eq!(cfg.source("WIR"), "Federal Reserve");
    }

    #[test]
    fn later_values_override_earlier_ones() {
        let mut s = Settings::parse("data = a.csv\nhac.lag = 2\n# comment\n", None).unwrap();
        s.set("hac.lag", "auto");
        let cfg = ReportConfig::from_settings(&s).unwrap();
        assert_eq!(cfg.hac_lag, HacLag::Auto);
        assert_eq!(cfg.hac_config(79).lag, 3);
    }

    #[test]
    fn relative_data_path_follows_config_file() {
        let s = Settings::parse("data = d.csv", Some(Path::new("/etc/tsecon"))).unwrap();
        assert_eq!(s.get("data"), Some("/etc/tsecon/d.csv"));
    }

    #[test]
    fn adf_lag_forms() {
        assert_eq!(parse_adf_lags("3"), Some(AdfLags::Fixed(3)));
        assert_eq!(parse_adf_lags("aic"), Some(AdfLags::Aic(None)));
        assert_eq!(parse_adf_lags("aic:8"), Some(AdfLags::Aic(Some(8))));
        assert_eq!(parse_adf_lags("aic:x"), None);
    }

    #[test]
    fn rejects_bad_input() {
        for (k, v) in [("hac.lag", "-1"), ("format", "xml"), ("stars", "0.1,0.05,0.01"), ("bogus", "1")] {
            let err = ReportConfig::from_settings(&settings(&[("data", "x"), (k, v)])).unwrap_err();
            assert_eq!(err.exit_code(), 1, "{k}={v}");
        }
        assert!(ReportConfig::from_settings(&Settings::default()).is_err());
        assert!(Settings::parse("no equals sign", None).is_err());
        let err = ReportConfig::from_settings(&settings(&[("data", "x"), ("dependent", "GDP")])).unwrap_err();
        assert!(err.to_string().contains("GDP"));
    }

    #[test]
    fn star_convention() {
        let s = StarConvention::default();
        assert_eq!(s.stars(0.0099), "***");
        assert_eq!(s.stars(0.01), "**");
        assert_eq!(s.stars(0.04999), "**");
        assert_eq!(s.stars(0.05), "*");
        assert_eq!(s.stars(0.0999), "*");
        assert_eq!(s.stars(0.10), "");
        assert!(StarConvention::new([0.0, 0.05, 0.1]).is_err());
        assert!(StarConvention::new([0.01, 0.05, 1.0]).is_err());
    }
}
