//! Process-wide resource bounds.
//!
//! Every enumeration whose size grows with the degree `n` checks against the
//! configured maximum before doing any work. The bound defaults to
//! [`DEFAULT_MAX_DEGREE`] and may be raised or lowered at runtime (the CLI
//! wires it to `--max-degree` and `BMKIT_MAX_DEGREE`).

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEGREE: usize = 30;

/// Environment variable consulted by [`max_degree_from_env`].
pub const MAX_DEGREE_ENV: &str = "BMKIT_MAX_DEGREE";

static MAX_DEGREE: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_DEGREE);

pub fn max_degree() -> usize {
    MAX_DEGREE.load(Ordering::Relaxed)
}

/// Sets the maximum degree. Zero is rejected.
pub fn set_max_degree(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::arg("maximum degree must be positive"));
    }
    MAX_DEGREE.store(n, Ordering::Relaxed);
    Ok(())
}

/// Reads [`MAX_DEGREE_ENV`], if set.
pub fn max_degree_from_env() -> Result<Option<usize>> {
    match std::env::var(MAX_DEGREE_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| {
                Error::arg(format!(
                    "{MAX_DEGREE_ENV} must be a positive integer, got {v:?}"
                ))
            }),
        Err(_) => Ok(None),
    }
}

pub(crate) fn check_degree(n: usize, what: &str) -> Result<()> {
    let max = max_degree();
    if n > max {
        Err(Error::bound(format!(
            "{what}: degree {n} exceeds the maximum {max}"
        )))
    } else {
        Ok(())
    }
}
