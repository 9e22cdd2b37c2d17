use thiserror::Error;
use tsecon::hac::HacError;
use tsecon::ingest::IngestError;
use tsecon::linreg::LinregError;
use tsecon::normality::NormalityError;
use tsecon::timeseries::SeriesError;
use tsecon::unitroot::UnitRootError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Regression(#[from] LinregError),
    #[error(transparent)]
    Hac(#[from] HacError),
    #[error(transparent)]
    UnitRoot(#[from] UnitRootError),
    #[error(transparent)]
    Normality(#[from] NormalityError),
}

impl CliError {
    /// 1 usage, 2 data, 3 numerical/model.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Ingest(_) | CliError::Series(_) | CliError::UnitRoot(UnitRootError::Series(_)) => 2,
            CliError::Regression(_) | CliError::Hac(_) | CliError::UnitRoot(_) | CliError::Normality(_) => 3,
        }
    }
}

pub(crate) fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
