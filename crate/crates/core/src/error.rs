use thiserror::Error;

use crate::adele::AdeleError;
use crate::algebra::AlgebraError;
use crate::kronrep::KronError;
use crate::localize::LocalizeError;
use crate::quiver::QuiverError;
use crate::series::SeriesError;
use crate::strat::StratError;
use crate::tube::TubeError;

/// Any error raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Kron(#[from] KronError),
    #[error(transparent)]
    Tube(#[from] TubeError),
    #[error(transparent)]
    Localize(#[from] LocalizeError),
    #[error(transparent)]
    Adele(#[from] AdeleError),
    #[error(transparent)]
    Strat(#[from] StratError),
}

impl Error {
    /// Short machine-readable name of the variant, e.g. `PrecisionTooLow`.
    pub fn kind(&self) -> String {
        let dbg = match self {
            Error::Algebra(e) => format!("{e:?}"),
            Error::Series(e) => format!("{e:?}"),
            Error::Quiver(e) => format!("{e:?}"),
            Error::Kron(KronError::Algebra(e)) => format!("{e:?}"),
            Error::Kron(e) => format!("{e:?}"),
            Error::Tube(TubeError::Series(e)) => format!("{e:?}"),
            Error::Tube(e) => format!("{e:?}"),
            Error::Localize(LocalizeError::Algebra(e)) => format!("{e:?}"),
            Error::Localize(e) => format!("{e:?}"),
            Error::Adele(AdeleError::Series(e)) => format!("{e:?}"),
            Error::Adele(e) => format!("{e:?}"),
            Error::Strat(e) => format!("{e:?}"),
        };
        dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
