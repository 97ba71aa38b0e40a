//! Wall or virtual time. The virtual clock advances one millisecond per LP solve, so
//! timings and time limits become deterministic.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

#[derive(Debug)]
pub struct Clock {
    start: Instant,
    virtual_time: bool,
    lps: AtomicU64,
}

impl Default for Clock {
    fn default() -> Self {
        Clock::wall()
    }
}

impl Clock {
    pub fn wall() -> Self {
        Clock {
            start: Instant::now(),
            virtual_time: false,
            lps: AtomicU64::new(0),
        }
    }

    pub fn virtual_clock() -> Self {
        Clock {
            virtual_time: true,
            ..Clock::wall()
        }
    }

    pub fn is_virtual(&self) -> bool {
        self.virtual_time
    }

    /// Records `k` LP solves.
    pub fn charge_lps(&self, k: u64) {
        self.lps.fetch_add(k, Ordering::Relaxed);
    }

    pub fn lp_count(&self) -> u64 {
        self.lps.load(Ordering::Relaxed)
    }

    pub fn now(&self) -> Duration {
        if self.virtual_time {
            Duration::from_millis(self.lp_count())
        } else {
            self.start.elapsed()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn virtual_clock_counts_lps() {
        let c = Clock::virtual_clock();
        assert_eq!(c.now(), Duration::ZERO);
        c.charge_lps(3);
        assert_eq!(c.now(), Duration::from_millis(3));
    }
}
