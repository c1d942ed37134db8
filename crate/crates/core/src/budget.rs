/// Iteration limit plus an optional cap on DP evaluations, shared by every
/// operator a solver calls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    pub max_iters: usize,
    pub max_evals: Option<u64>,
    evals_used: u64,
}

pub const DEFAULT_MAX_ITERS: usize = 100;

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_MAX_ITERS)
    }
}

impl Budget {
    pub fn new(max_iters: usize) -> Self {
        Budget {
            max_iters,
            max_evals: None,
            evals_used: 0,
        }
    }

    pub fn with_max_evals(mut self, max_evals: Option<u64>) -> Self {
        self.max_evals = max_evals;
        self
    }

    /// Reserves one evaluation. Returns `false`, without charging, once the
    /// cap has been reached.
    #[inline]
    pub fn charge(&mut self) -> bool {
        match self.max_evals {
            Some(cap) if self.evals_used >= cap => false,
            _ => {
                self.evals_used += 1;
                true
            }
        }
    }

    #[inline]
    pub fn exhausted(&self) -> bool {
        matches!(self.max_evals, Some(cap) if self.evals_used >= cap)
    }

    #[inline]
    pub fn evals_used(&self) -> u64 {
        self.evals_used
    }
}
