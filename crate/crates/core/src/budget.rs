//! Enumeration budgets.
//!
//! Every closed form here is a finite sum whose size grows like a factorial
//! in the requested order. The limits below bound those sums. They are
//! process-wide and may be replaced at startup, e.g. from the
//! `WISHART_MAX_BUDGET` environment variable.

use std::sync::RwLock;

use crate::error::{Error, Result};

/// Name of the environment variable that overrides the enumeration limits.
pub const BUDGET_ENV_VAR: &str = "WISHART_MAX_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest order of a univariate moment or cumulant.
    pub univariate_order: usize,
    /// Largest total degree |i| of a joint moment or cumulant.
    pub joint_order: usize,
    /// Largest k for which all k! permutations are enumerated.
    pub permutation_size: usize,
    /// Largest number of directions in a generalized product moment.
    pub product_moment_size: usize,
    /// Largest k for the 2^k assignment expansion of generalized moments.
    pub expansion_size: usize,
    /// Largest matrix dimension for brute-force permanents.
    pub permanent_size: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            univariate_order: 20,
            joint_order: 10,
            permutation_size: 10,
            product_moment_size: 8,
            expansion_size: 6,
            permanent_size: 10,
        }
    }
}

impl Budget {
    /// Default limits, with every enumeration limit replaced by the value of
    /// `WISHART_MAX_BUDGET` when that variable holds a positive integer.
    /// The univariate order limit is a precision limit and is left alone.
    pub fn from_env() -> Result<Self> {
        let mut budget = Budget::default();
        if let Ok(raw) = std::env::var(BUDGET_ENV_VAR) {
            let limit: usize = raw.trim().parse().map_err(|_| {
                Error::InvalidParameter(format!("{BUDGET_ENV_VAR} must be a positive integer, got {raw:?}"))
            })?;
            if limit == 0 {
                return Err(Error::InvalidParameter(format!("{BUDGET_ENV_VAR} must be positive")));
            }
            budget.joint_order = limit;
            budget.permutation_size = limit;
            budget.product_moment_size = limit;
            budget.expansion_size = limit;
            budget.permanent_size = limit;
        }
        Ok(budget)
    }

    pub(crate) fn check(what: &'static str, requested: usize, limit: usize) -> Result<()> {
        if requested > limit {
            Err(Error::BudgetExceeded { what, requested, limit })
        } else {
            Ok(())
        }
    }
}

static ACTIVE: RwLock<Option<Budget>> = RwLock::new(None);

/// The budget currently in force.
pub fn current() -> Budget {
    ACTIVE
        .read()
        .map(|guard| guard.unwrap_or_default())
        .unwrap_or_default()
}

/// Replace the process-wide budget.
pub fn set(budget: Budget) {
    if let Ok(mut guard) = ACTIVE.write() {
        *guard = Some(budget);
    }
}
