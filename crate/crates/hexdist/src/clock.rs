use std::time::{Duration, Instant};

use hexdist_core::clique::Clock;

/// Wall clock started at construction, with an optional budget.
#[derive(Clone, Copy, Debug)]
pub struct WallClock {
    start: Instant,
    budget: Option<Duration>,
}

impl WallClock {
    pub fn start(budget: Option<Duration>) -> Self {
        WallClock {
            start: Instant::now(),
            budget,
        }
    }

    pub fn unlimited() -> Self {
        WallClock::start(None)
    }
}

impl Clock for WallClock {
    fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    fn expired(&self) -> bool {
        self.budget.is_some_and(|b| self.start.elapsed() >= b)
    }
}
