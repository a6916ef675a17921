use crate::error::{Error, Result};

/// Soft cap on the memory a single construction (direct power, clone, free
/// algebra, congruence lattice) is allowed to claim. The CLI reads it from
/// the `MALT_BUDGET_MB` environment variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    bytes: u128,
}

impl Budget {
    pub const DEFAULT_MB: usize = 2048;

    pub fn from_mb(mb: usize) -> Self {
        Budget {
            bytes: mb as u128 * 1024 * 1024,
        }
    }

    pub fn unlimited() -> Self {
        Budget { bytes: u128::MAX }
    }

    /// Budget from `MALT_BUDGET_MB`, falling back to the default.
    pub fn from_env() -> Self {
        match std::env::var("MALT_BUDGET_MB").ok().and_then(|v| v.parse().ok()) {
            Some(mb) => Budget::from_mb(mb),
            None => Budget::default(),
        }
    }

    pub fn check_bytes(&self, required: u128) -> Result<()> {
        if required > self.bytes {
            Err(Error::BudgetExceeded {
                required_mb: (required / (1024 * 1024)).min(usize::MAX as u128) as usize,
                budget_mb: (self.bytes / (1024 * 1024)).min(usize::MAX as u128) as usize,
            })
        } else {
            Ok(())
        }
    }

    /// `base^exp` as a table length, checked against the budget at
    /// `word_bytes` bytes per entry.
    pub fn checked_table_len(&self, base: usize, exp: u32, word_bytes: usize) -> Result<usize> {
        let len = (base as u128).checked_pow(exp).ok_or(Error::BudgetExceeded {
            required_mb: usize::MAX,
            budget_mb: (self.bytes / (1024 * 1024)).min(usize::MAX as u128) as usize,
        })?;
        self.check_bytes(len * word_bytes as u128)?;
        Ok(len as usize)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::from_mb(Self::DEFAULT_MB)
    }
}
