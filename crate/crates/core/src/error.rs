use chrono::NaiveDate;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("calendar dates must be strictly increasing: {0} does not follow {1}")]
    UnorderedCalendar(NaiveDate, NaiveDate),

    #[error("duplicate date {0}")]
    DuplicateDate(NaiveDate),

    #[error("non-positive price {price} on {date}")]
    NonPositivePrice { date: NaiveDate, price: f64 },

    #[error("return {value} on {date} is not greater than -1")]
    InvalidReturn { date: NaiveDate, value: f64 },

    #[error("length mismatch: {what} has {got} values, expected {expected}")]
    LengthMismatch { what: String, expected: usize, got: usize },

    #[error("empty intersection of calendars")]
    EmptyIntersection,

    #[error("calendar mismatch: {0}")]
    CalendarMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("insufficient data: need at least {needed} observations, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("empty input: {0}")]
    Empty(String),

    #[error("undefined {metric}: {reason}")]
    Undefined { metric: &'static str, reason: &'static str },

    #[error("no returns on {0} side")]
    EmptySide(&'static str),

    #[error("rank-deficient factor matrix; collinear columns: {}", .0.join(", "))]
    RankDeficient(Vec<String>),

    #[error("degenerate fit: residual variance is zero")]
    DegenerateFit,

    #[error("fees exhausted NAV on {0}")]
    FeesExhausted(NaiveDate),

    #[error("portfolio size {k} exceeds universe size {universe}")]
    PortfolioTooLarge { k: usize, universe: usize },

    #[error("no prior period for period {0}")]
    NoPriorPeriod(usize),

    #[error("period {0} contains no trading days")]
    EmptyPeriod(usize),

    #[error("holding period starting {0} contains no trading days")]
    EmptyHoldingPeriod(NaiveDate),
}

impl Error {
    /// True for failures caused by degenerate numbers rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Undefined { .. }
                | Error::EmptySide(_)
                | Error::RankDeficient(_)
                | Error::DegenerateFit
                | Error::FeesExhausted(_)
        )
    }
}
