//! Cache-aware driver for both construction methods.

use std::time::Duration;

use hexdist_core::search::{
    hexagon_construction, solve_smallest_menu_after, Comparison, Method, SearchReport,
};

use crate::cache::Cache;
use crate::clock::WallClock;
use crate::error::{Error, Result};
use crate::parallel::Threads;

#[derive(Debug)]
pub struct Searcher {
    cache: Option<Cache>,
    threads: usize,
    seed_lower_bounds: bool,
    budget: Option<Duration>,
    /// Cache entries that could not be used, in the order they were met.
    ignored: Vec<Error>,
}

impl Default for Searcher {
    fn default() -> Self {
        Searcher::new()
    }
}

impl Searcher {
    /// No cache, one thread, no budget.
    pub fn new() -> Self {
        Searcher {
            cache: None,
            threads: 1,
            seed_lower_bounds: false,
            budget: None,
            ignored: Vec::new(),
        }
    }

    pub fn with_cache(mut self, cache: Cache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn threads(mut self, n: usize) -> Self {
        self.threads = n.max(1);
        self
    }

    /// Seed the search for `m` with the cached clique for `m − 1` instead of
    /// recomputing the chain from `m = 1`.
    pub fn seed_lower_bounds(mut self, on: bool) -> Self {
        self.seed_lower_bounds = on;
        self
    }

    /// Wall-clock budget per value of `m`.
    pub fn budget(mut self, budget: Option<Duration>) -> Self {
        self.budget = budget;
        self
    }

    pub fn cache(&self) -> Option<&Cache> {
        self.cache.as_ref()
    }

    /// Cache entries skipped so far because they were unreadable or failed
    /// their checksum.
    pub fn ignored_entries(&self) -> &[Error] {
        &self.ignored
    }

    fn clock(&self) -> WallClock {
        WallClock::start(self.budget)
    }

    fn cached(&mut self, m: usize, method: Method) -> Option<SearchReport> {
        let cache = self.cache.as_ref()?;
        match cache.load(m, method) {
            Ok(Some(r)) if r.optimal => Some(r),
            Ok(_) => None,
            Err(e) => {
                self.ignored.push(e);
                None
            }
        }
    }

    fn store(&self, report: &SearchReport) -> Result<()> {
        if let Some(cache) = &self.cache {
            cache.store(report)?;
        }
        Ok(())
    }

    /// One chain step: a cached optimal report for `m`, or a fresh solve
    /// seeded by `previous`.
    fn clique_step(&mut self, m: usize, previous: Option<&SearchReport>) -> Result<SearchReport> {
        if let Some(r) = self.cached(m, Method::SmallestMenuClique) {
            return Ok(r);
        }
        self.fresh_clique(m, previous)
    }

    fn fresh_clique(&mut self, m: usize, previous: Option<&SearchReport>) -> Result<SearchReport> {
        let report = solve_smallest_menu_after(&Threads(self.threads), m, previous, &self.clock())?;
        self.store(&report)?;
        Ok(report)
    }

    /// Maximum clique for the `m` smallest distances.
    pub fn solve_clique(&mut self, m: usize) -> Result<SearchReport> {
        assert!(m >= 1, "m must be positive");
        if let Some(r) = self.cached(m, Method::SmallestMenuClique) {
            return Ok(r);
        }
        let previous = if m == 1 {
            None
        } else if self.seed_lower_bounds {
            match self.cached(m - 1, Method::SmallestMenuClique) {
                Some(r) => Some(r),
                None => Some(self.solve_clique(m - 1)?),
            }
        } else {
            let mut r = self.clique_step(1, None)?;
            for k in 2..m {
                r = self.clique_step(k, Some(&r))?;
            }
            Some(r)
        };
        self.fresh_clique(m, previous.as_ref())
    }

    pub fn solve_hexagon(&mut self, m: usize) -> Result<SearchReport> {
        if let Some(r) = self.cached(m, Method::Hexagon) {
            return Ok(r);
        }
        let report = hexagon_construction(m, &self.clock())?;
        self.store(&report)?;
        Ok(report)
    }

    pub fn solve(&mut self, m: usize, method: Method) -> Result<SearchReport> {
        match method {
            Method::SmallestMenuClique => self.solve_clique(m),
            Method::Hexagon => self.solve_hexagon(m),
        }
    }

    pub fn compare(&mut self, m: usize) -> Result<Comparison> {
        Ok(Comparison {
            clique: self.solve_clique(m)?,
            hexagon: self.solve_hexagon(m)?,
        })
    }

    /// Both methods for every `m` in `lo..=hi`.
    pub fn table(&mut self, lo: usize, hi: usize) -> Result<Vec<Comparison>> {
        assert!(3 <= lo && lo <= hi, "need 3 <= lo <= hi");
        let mut previous = self.solve_clique(lo - 1)?;
        let mut rows = Vec::with_capacity(hi - lo + 1);
        for m in lo..=hi {
            let clique = self.clique_step(m, Some(&previous))?;
            let hexagon = self.solve_hexagon(m)?;
            previous = clique.clone();
            rows.push(Comparison { clique, hexagon });
        }
        Ok(rows)
    }
}
