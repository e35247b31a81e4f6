//! Thread-parallel maximum clique over top-level branches.
//!
//! Branches are handed out in serial visiting order. The shared incumbent is
//! the pair (best size, earliest branch that reached it), packed in one atomic
//! word. A branch may tie the incumbent when it comes earlier than the branch
//! holding it, so the final answer is the clique a serial run would return.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use hexdist_core::clique::{
    max_clique, CliqueEngine, CliqueResult, CliqueSolver, Clock, Incumbent, TaskOutcome,
};
use hexdist_core::graph::CompatGraph;

/// Clique engine that spreads top-level branches over `n` threads. One
/// thread means the plain serial solver.
#[derive(Clone, Copy, Debug)]
pub struct Threads(pub usize);

impl CliqueEngine for Threads {
    fn max_clique<C: Clock>(&self, g: &CompatGraph, lower_bound: usize, clock: &C) -> CliqueResult {
        if self.0 <= 1 {
            return max_clique(g, lower_bound, clock);
        }
        let solver = CliqueSolver::new(g);
        let mut outcome = run(&solver, lower_bound.max(1), self.0, clock);
        let mut nodes = outcome.nodes;
        if outcome.completed && outcome.clique.is_empty() && lower_bound > 1 {
            outcome = run(&solver, 1, self.0, clock);
            nodes += outcome.nodes;
        }
        let clique = solver.points_of(&outcome.clique);
        CliqueResult {
            size: clique.len(),
            clique,
            optimal: outcome.completed,
            nodes_explored: nodes,
            elapsed: clock.elapsed(),
        }
    }
}

const NO_TASK: u64 = u32::MAX as u64;

fn pack(size: usize, task: u64) -> u64 {
    ((size as u64) << 32) | task
}

fn unpack(word: u64) -> (usize, u64) {
    ((word >> 32) as usize, word & 0xffff_ffff)
}

struct Shared {
    floor: usize,
    /// `(size << 32) | task`.
    best: AtomicU64,
}

struct Branch<'a> {
    shared: &'a Shared,
    task: u64,
}

impl Incumbent for Branch<'_> {
    fn need(&self, local_best: usize) -> usize {
        let (size, holder) = unpack(self.shared.best.load(Ordering::Relaxed));
        let global = if holder == NO_TASK {
            0
        } else if holder < self.task {
            size + 1
        } else {
            size
        };
        self.shared.floor.max(local_best + 1).max(global)
    }

    fn publish(&self, size: usize) {
        let mut current = self.shared.best.load(Ordering::Relaxed);
        loop {
            let (best, holder) = unpack(current);
            let better = holder == NO_TASK || size > best || (size == best && self.task < holder);
            if !better {
                return;
            }
            match self.shared.best.compare_exchange_weak(
                current,
                pack(size, self.task),
                Ordering::Relaxed,
                Ordering::Relaxed,
            ) {
                Ok(_) => return,
                Err(seen) => current = seen,
            }
        }
    }
}

fn run<C: Clock>(
    solver: &CliqueSolver<'_>,
    floor: usize,
    threads: usize,
    clock: &C,
) -> TaskOutcome {
    let tasks = solver.root_tasks();
    let shared = Shared {
        floor,
        best: AtomicU64::new(pack(0, NO_TASK)),
    };
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<TaskOutcome>>> = Mutex::new(vec![None; tasks.len()]);
    thread::scope(|scope| {
        for _ in 0..threads.min(tasks.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= tasks.len() {
                    break;
                }
                let branch = Branch {
                    shared: &shared,
                    task: i as u64,
                };
                let outcome = solver.solve_task(&tasks[i], &branch, clock);
                results.lock().expect("no panics while holding the lock")[i] = Some(outcome);
            });
        }
    });
    let results = results.into_inner().expect("threads joined");
    let nodes = results.iter().flatten().map(|o| o.nodes).sum();
    let completed = results
        .iter()
        .all(|o| o.as_ref().is_some_and(|o| o.completed));
    let (_, holder) = unpack(shared.best.load(Ordering::Relaxed));
    let clique = if holder == NO_TASK {
        Vec::new()
    } else {
        results[holder as usize]
            .as_ref()
            .map(|o| o.clique.clone())
            .unwrap_or_default()
    };
    TaskOutcome {
        clique,
        nodes,
        completed,
    }
}
