//! Command-line front end for `tsecon`: loads a quarterly CSV and prints the
//! summary, unit-root, regression and diagnostics tables.
//!
//! ```text
//! tsecon report --data data.csv --format json
//! ```

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

pub mod config;
pub mod error;
pub mod report;
pub mod table;

pub use config::{OutputFormat, ReportConfig, Settings, StarConvention};
pub use error::CliError;
pub use report::{cmd_adf, cmd_regress, cmd_report, cmd_summary, Document};
pub use table::RenderedTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Minimum, mean and maximum of each variable
    Summary,
    /// Augmented Dickey-Fuller tests in levels and first differences
    Adf,
    /// OLS with Newey-West standard errors
    Regress,
    /// All of the above plus a Shapiro-Wilk test on the residuals
    Report,
}

#[derive(Debug, Parser)]
#[command(name = "tsecon", version, about = "Quarterly time-series econometrics reports")]
struct Cli {
    #[arg(value_enum)]
    command: Command,

    /// Input CSV
    #[arg(long, env = "TSECON_DATA")]
    data: Option<PathBuf>,

    /// Regress on levels instead of first differences
    #[arg(long)]
    no_diff: bool,

    /// Newey-West lag truncation, or `auto`
    #[arg(long, value_name = "N|auto")]
    hac_lag: Option<String>,

    #[arg(long, value_parser = ["paper", "standard"])]
    hac_scaling: Option<String>,

    /// Scale the HAC covariance by T/(T-k)
    #[arg(long)]
    hac_small_sample: bool,

    #[arg(long, value_parser = ["none", "constant", "trend"])]
    adf_variant: Option<String>,

    /// Fixed augmentation lags, or AIC selection up to N
    #[arg(long, value_name = "N|aic|aic:N")]
    adf_lags: Option<String>,

    #[arg(long, value_parser = ["text", "json", "csv"])]
    format: Option<String>,

    /// File of `key = value` settings; flags take precedence
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

impl Cli {
    fn settings(&self) -> Result<Settings, CliError> {
        let mut s = match &self.config {
            Some(path) => Settings::load(path)?,
            None => Settings::default(),
        };
        if let Some(d) = &self.data {
            s.set("data", d.to_string_lossy());
        }
        if self.no_diff {
            s.set("difference", "false");
        }
        if self.hac_small_sample {
            s.set("hac.small_sample", "true");
        }
        let flags = [
            ("hac.lag", &self.hac_lag),
            ("hac.scaling", &self.hac_scaling),
            ("adf.variant", &self.adf_variant),
            ("adf.lags", &self.adf_lags),
            ("format", &self.format),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                s.set(key, v.as_str());
            }
        }
        Ok(s)
    }
}

pub fn execute(command: Command, cfg: &ReportConfig) -> Result<(Document, Vec<String>), CliError> {
    match command {
        Command::Summary => cmd_summary(cfg),
        Command::Adf => cmd_adf(cfg),
        Command::Regress => cmd_regress(cfg),
        Command::Report => cmd_report(cfg),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                1
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    let result = cli
        .settings()
        .and_then(|s| ReportConfig::from_settings(&s))
        .and_then(|cfg| execute(cli.command, &cfg).map(|r| (r, cfg.output_format)));
    match result {
        Ok(((doc, warnings), format)) => {
            for w in warnings {
                let _ = writeln!(err, "{w}");
            }
            let _ = out.write_all(doc.render(format).as_bytes());
            let _ = out.flush();
            0
        }
        Err(e) => {
            let _ = writeln!(err, "tsecon: {e}");
            e.exit_code()
        }
    }
}
