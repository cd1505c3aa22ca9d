//! Resource guards for the exhaustive computations.

use thiserror::Error;

/// Environment variable overriding [`Limits::max_set_size`].
pub const MAX_SIZE_ENV: &str = "ASTLAB_MAX_SIZE";

pub const DEFAULT_MAX_SET_SIZE: usize = 7;

/// Column states are bitmasks, so a trapezoid may have at most this many columns.
pub const MAX_COLUMNS: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("resource guard: {what} {requested} exceeds the bound {bound}")]
pub struct LimitError {
    pub what: &'static str,
    pub requested: usize,
    pub bound: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest centred Catalan set size; trapezoids get one row fewer.
    pub max_set_size: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_set_size: DEFAULT_MAX_SET_SIZE }
    }
}

impl Limits {
    pub fn new(max_set_size: usize) -> Self {
        Limits { max_set_size }
    }

    pub fn unbounded() -> Self {
        Limits { max_set_size: usize::MAX }
    }

    /// Default bound, overridden by `ASTLAB_MAX_SIZE` when it parses.
    pub fn from_env() -> Self {
        std::env::var(MAX_SIZE_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Limits::new)
            .unwrap_or_default()
    }

    pub fn max_rows(&self) -> usize {
        self.max_set_size.saturating_sub(1)
    }

    pub fn check_set_size(&self, n: usize) -> Result<(), LimitError> {
        if n > self.max_set_size {
            return Err(LimitError { what: "set size", requested: n, bound: self.max_set_size });
        }
        Ok(())
    }

    pub fn check_path_length(&self, n: usize) -> Result<(), LimitError> {
        if n > self.max_rows() {
            return Err(LimitError { what: "path length", requested: n, bound: self.max_rows() });
        }
        Ok(())
    }

    pub fn check_rows(&self, n: usize) -> Result<(), LimitError> {
        if n > self.max_rows() {
            return Err(LimitError { what: "row count", requested: n, bound: self.max_rows() });
        }
        Ok(())
    }

    /// Row count plus the column-width restriction of the state encoding.
    pub fn check_trapezoid(&self, n: usize, l: usize) -> Result<(), LimitError> {
        self.check_rows(n)?;
        let cols = l + 2 * n - 1;
        if cols > MAX_COLUMNS {
            return Err(LimitError { what: "column count", requested: cols, bound: MAX_COLUMNS });
        }
        Ok(())
    }
}
