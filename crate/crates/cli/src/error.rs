use koblab_core::catalog::CatalogError;
use koblab_core::domains::DomainError;
use koblab_core::holo::HoloError;
use koblab_core::metrics::MetricError;
use koblab_core::schwarz::SchwarzError;
use koblab_core::stationarity::StationarityError;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::InvalidParameter(_) | CatalogError::UnknownName(_) | CatalogError::Infeasible(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<DomainError> for CliError {
    fn from(e: DomainError) -> Self {
        match e {
            DomainError::InvalidParameter(_) | DomainError::Dimension { .. } => CliError::Usage(e.to_string()),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<MetricError> for CliError {
    fn from(e: MetricError) -> Self {
        match e {
            MetricError::InvalidTarget(_) => CliError::Usage(e.to_string()),
            MetricError::Domain(d) => d.into(),
            MetricError::Catalog(c) => c.into(),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<SchwarzError> for CliError {
    fn from(e: SchwarzError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<StationarityError> for CliError {
    fn from(e: StationarityError) -> Self {
        match e {
            StationarityError::InvalidParameter(_) => CliError::Usage(e.to_string()),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<HoloError> for CliError {
    fn from(e: HoloError) -> Self {
        CliError::Numerical(e.to_string())
    }
}
