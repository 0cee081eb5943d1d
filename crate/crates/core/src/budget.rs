use std::time::{Duration, Instant};

/// Wall-clock limit for exact searches.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn seconds(secs: f64) -> Self {
        Budget {
            deadline: Some(Instant::now() + Duration::from_secs_f64(secs)),
        }
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}

/// Amortizes clock reads over many search nodes.
pub(crate) struct Ticker {
    budget: Budget,
    count: u64,
    pub(crate) exhausted: bool,
    pub(crate) nodes: u64,
}

impl Ticker {
    pub(crate) fn new(budget: Budget) -> Self {
        Ticker {
            budget,
            count: 0,
            exhausted: false,
            nodes: 0,
        }
    }

    /// Counts a node; returns true once the budget is gone.
    #[inline]
    pub(crate) fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.exhausted {
            return true;
        }
        self.count += 1;
        if self.count >= 1024 {
            self.count = 0;
            self.exhausted = self.budget.expired();
        }
        self.exhausted
    }
}
