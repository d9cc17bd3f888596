use isoaxis_core::grp::GrpError;
use isoaxis_core::hypgeom::GeomError;
use isoaxis_core::spectra::SpectraError;
use isoaxis_core::twist::TwistError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("cap exceeded: {0} (pass --unsafe-depth to override)")]
    Cap(String),
    #[error("{0}")]
    NoCrossing(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("serialization error: {0}")]
    Serialize(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Cap(_) => 3,
            CliError::NoCrossing(_) => 4,
            CliError::Io { .. } | CliError::Serialize(_) => 1,
        }
    }

    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

impl From<GrpError> for CliError {
    fn from(e: GrpError) -> Self {
        match e {
            GrpError::DepthCap { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<SpectraError> for CliError {
    fn from(e: SpectraError) -> Self {
        match e {
            SpectraError::Grp(g) => g.into(),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<TwistError> for CliError {
    fn from(e: TwistError) -> Self {
        match e {
            TwistError::Grp(g) => g.into(),
            TwistError::NoCrossingAtBase | TwistError::NotSeparated => CliError::NoCrossing(e.to_string()),
            TwistError::DepthCap { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Serialize(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Serialize(e.to_string())
    }
}
