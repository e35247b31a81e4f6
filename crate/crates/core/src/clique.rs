//! Exact maximum clique by branch and bound.
//!
//! Vertices are renumbered by non-increasing degree (ties keep the graph's own
//! order, which for candidate graphs is increasing coordinates). The search is
//! the Carraghan–Pardalos scheme on bit sets: extend the current clique one
//! vertex at a time and discard a branch as soon as the current depth plus an
//! upper bound on what the remaining candidates can contribute cannot beat the
//! incumbent. The bound is the number of colors in a greedy sequential coloring
//! of the candidates, which is never weaker than the plain candidate count.
//!
//! The search order does not depend on the incumbent, so the first maximum
//! clique met in depth-first order is what gets returned, however the
//! incumbent evolved. The root-task interface relies on this to make split
//! (parallel) runs return the same clique as a serial run.

use alloc::vec;
use alloc::vec::Vec;
use core::time::Duration;

use crate::bitset::words_for;
use crate::error::Error;
use crate::graph::CompatGraph;
use crate::lattice::LatticePoint;

/// Wall-clock source and budget for anytime searches.
pub trait Clock: Sync {
    fn elapsed(&self) -> Duration;
    fn expired(&self) -> bool;
}

/// A clock that never expires and reports zero elapsed time.
#[derive(Clone, Copy, Debug, Default)]
pub struct Unbounded;

impl Clock for Unbounded {
    fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
    fn expired(&self) -> bool {
        false
    }
}

impl<C: Clock + ?Sized> Clock for &C {
    fn elapsed(&self) -> Duration {
        (**self).elapsed()
    }
    fn expired(&self) -> bool {
        (**self).expired()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueResult {
    /// Clique vertices, sorted by coordinates.
    pub clique: Vec<LatticePoint>,
    pub size: usize,
    /// Set only when the search ran to completion.
    pub optimal: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// A maximum-clique solver with the contract of [`max_clique`].
pub trait CliqueEngine {
    fn max_clique<C: Clock>(&self, g: &CompatGraph, lower_bound: usize, clock: &C) -> CliqueResult;
}

/// Single-threaded [`max_clique`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Serial;

impl CliqueEngine for Serial {
    fn max_clique<C: Clock>(&self, g: &CompatGraph, lower_bound: usize, clock: &C) -> CliqueResult {
        max_clique(g, lower_bound, clock)
    }
}

/// Pruning threshold shared between cooperating searches.
pub trait Incumbent {
    /// Smallest clique size still worth looking for, given the best size this
    /// search has recorded so far.
    fn need(&self, local_best: usize) -> usize;
    /// Called whenever this search records a larger clique.
    fn publish(&self, size: usize);
}

struct Solo {
    floor: usize,
}

impl Incumbent for Solo {
    fn need(&self, local_best: usize) -> usize {
        self.floor.max(local_best + 1)
    }
    fn publish(&self, _size: usize) {}
}

/// One top-level branch: the clique starts with `vertex`, and may only be
/// extended by `candidates`.
#[derive(Clone, Debug)]
pub struct RootTask {
    pub vertex: usize,
    /// Upper bound on the size of any clique in this branch.
    pub bound: usize,
    candidates: Vec<u64>,
}

#[derive(Clone, Debug, Default)]
pub struct TaskOutcome {
    /// Best clique recorded, as solver positions.
    pub clique: Vec<usize>,
    pub nodes: u64,
    pub completed: bool,
}

struct Frame {
    candidates: Vec<u64>,
    queue: Vec<u64>,
    class: Vec<u64>,
    verts: Vec<u32>,
    colors: Vec<u32>,
}

impl Frame {
    fn new(words: usize) -> Self {
        Frame {
            candidates: vec![0; words],
            queue: vec![0; words],
            class: vec![0; words],
            verts: Vec::new(),
            colors: Vec::new(),
        }
    }
}

/// A graph prepared for branch and bound.
pub struct CliqueSolver<'g> {
    graph: &'g CompatGraph,
    /// `order[pos]` is the graph index of the vertex at search position `pos`.
    order: Vec<usize>,
    words: usize,
    adjacency: Vec<u64>,
}

impl<'g> CliqueSolver<'g> {
    pub fn new(graph: &'g CompatGraph) -> Self {
        let n = graph.len();
        let mut order: Vec<usize> = (0..n).collect();
        let degree: Vec<usize> = (0..n).map(|i| graph.degree(i)).collect();
        order.sort_by(|&x, &y| degree[y].cmp(&degree[x]).then(x.cmp(&y)));
        let mut position = vec![0usize; n];
        for (pos, &v) in order.iter().enumerate() {
            position[v] = pos;
        }
        let words = words_for(n);
        let mut adjacency = vec![0u64; n * words];
        for (pos, &v) in order.iter().enumerate() {
            let row = &mut adjacency[pos * words..(pos + 1) * words];
            for u in graph.neighbors(v).iter() {
                let q = position[u];
                row[q / 64] |= 1 << (q % 64);
            }
        }
        CliqueSolver {
            graph,
            order,
            words,
            adjacency,
        }
    }

    pub fn graph(&self) -> &CompatGraph {
        self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.order.len()
    }

    /// Maps solver positions back to points, sorted by coordinates.
    pub fn points_of(&self, positions: &[usize]) -> Vec<LatticePoint> {
        let mut pts: Vec<LatticePoint> = positions
            .iter()
            .map(|&p| self.graph.vertices()[self.order[p]])
            .collect();
        pts.sort_unstable();
        pts
    }

    fn all_candidates(&self) -> Vec<u64> {
        let n = self.order.len();
        let mut p = vec![0u64; self.words];
        for i in 0..n {
            p[i / 64] |= 1 << (i % 64);
        }
        p
    }

    /// Top-level branches in the order a serial search visits them.
    pub fn root_tasks(&self) -> Vec<RootTask> {
        let mut frame = Frame::new(self.words);
        frame.candidates = self.all_candidates();
        self.color_sort(&mut frame, 1);
        let mut remaining = frame.candidates.clone();
        let mut tasks = Vec::with_capacity(frame.verts.len());
        for idx in (0..frame.verts.len()).rev() {
            let v = frame.verts[idx] as usize;
            let row = &self.adjacency[v * self.words..(v + 1) * self.words];
            let candidates: Vec<u64> = remaining.iter().zip(row).map(|(a, b)| a & b).collect();
            tasks.push(RootTask {
                vertex: v,
                bound: frame.colors[idx] as usize,
                candidates,
            });
            remaining[v / 64] &= !(1 << (v % 64));
        }
        tasks
    }

    /// Searches one top-level branch under a shared threshold.
    pub fn solve_task<I: Incumbent, C: Clock>(
        &self,
        task: &RootTask,
        incumbent: &I,
        clock: &C,
    ) -> TaskOutcome {
        let mut search = Search::new(self, incumbent, clock);
        search.current.push(task.vertex as u32);
        if task.bound >= incumbent.need(0) {
            if task.candidates.iter().all(|&w| w == 0) {
                search.nodes += 1;
                search.offer();
            } else {
                search.frames[1]
                    .candidates
                    .copy_from_slice(&task.candidates);
                search.expand(1);
            }
        }
        TaskOutcome {
            clique: search.best.iter().map(|&v| v as usize).collect(),
            nodes: search.nodes,
            completed: !search.aborted,
        }
    }

    /// Serial branch and bound. Only cliques of at least `floor` vertices are
    /// recorded; returns the best recorded clique as solver positions.
    fn run<C: Clock>(&self, floor: usize, clock: &C) -> TaskOutcome {
        let incumbent = Solo { floor };
        let mut search = Search::new(self, &incumbent, clock);
        if !self.order.is_empty() {
            search.frames[0].candidates = self.all_candidates();
            search.expand(0);
        }
        TaskOutcome {
            clique: search.best.iter().map(|&v| v as usize).collect(),
            nodes: search.nodes,
            completed: !search.aborted,
        }
    }

    /// Greedy sequential coloring of `frame.candidates`.
    ///
    /// Fills `frame.verts`/`frame.colors` with every vertex whose color is at
    /// least `min_color`, grouped by color class in increasing color order.
    fn color_sort(&self, frame: &mut Frame, min_color: usize) {
        let words = self.words;
        frame.verts.clear();
        frame.colors.clear();
        frame.queue.copy_from_slice(&frame.candidates);
        let mut color = 0u32;
        let mut first_word = 0usize;
        loop {
            while first_word < words && frame.queue[first_word] == 0 {
                first_word += 1;
            }
            if first_word == words {
                break;
            }
            color += 1;
            frame.class[first_word..].copy_from_slice(&frame.queue[first_word..]);
            let mut w = first_word;
            while w < words {
                let bits = frame.class[w];
                if bits == 0 {
                    w += 1;
                    continue;
                }
                let bit = bits.trailing_zeros() as usize;
                let v = w * 64 + bit;
                frame.class[w] &= !(1 << bit);
                frame.queue[w] &= !(1 << bit);
                let row = &self.adjacency[v * words..(v + 1) * words];
                for (c, r) in frame.class[w..].iter_mut().zip(&row[w..]) {
                    *c &= !r;
                }
                if color as usize >= min_color {
                    frame.verts.push(v as u32);
                    frame.colors.push(color);
                }
            }
        }
    }
}

struct Search<'s, 'g, I, C> {
    solver: &'s CliqueSolver<'g>,
    incumbent: &'s I,
    clock: &'s C,
    frames: Vec<Frame>,
    current: Vec<u32>,
    best: Vec<u32>,
    nodes: u64,
    aborted: bool,
}

impl<'s, 'g, I: Incumbent, C: Clock> Search<'s, 'g, I, C> {
    fn new(solver: &'s CliqueSolver<'g>, incumbent: &'s I, clock: &'s C) -> Self {
        let depth = solver.order.len() + 2;
        Search {
            solver,
            incumbent,
            clock,
            frames: (0..depth).map(|_| Frame::new(solver.words)).collect(),
            current: Vec::new(),
            best: Vec::new(),
            nodes: 0,
            aborted: false,
        }
    }

    fn need(&self) -> usize {
        self.incumbent.need(self.best.len())
    }

    fn offer(&mut self) {
        if self.current.len() >= self.need() {
            self.best.clone_from(&self.current);
            self.incumbent.publish(self.best.len());
        }
    }

    fn expand(&mut self, depth: usize) {
        self.nodes += 1;
        if self.nodes & 0x3ff == 1 && self.clock.expired() {
            self.aborted = true;
            return;
        }
        let words = self.solver.words;
        let min_color = self.need().saturating_sub(self.current.len()).max(1);
        self.solver.color_sort(&mut self.frames[depth], min_color);
        let mut idx = self.frames[depth].verts.len();
        while idx > 0 {
            idx -= 1;
            let color = self.frames[depth].colors[idx] as usize;
            if self.current.len() + color < self.need() {
                return;
            }
            let v = self.frames[depth].verts[idx] as usize;
            self.current.push(v as u32);
            let row = &self.solver.adjacency[v * words..(v + 1) * words];
            let (head, tail) = self.frames.split_at_mut(depth + 1);
            let parent = &head[depth].candidates;
            let child = &mut tail[0].candidates;
            let mut any = 0u64;
            for j in 0..words {
                child[j] = parent[j] & row[j];
                any |= child[j];
            }
            if any == 0 {
                self.nodes += 1;
                self.offer();
            } else {
                self.expand(depth + 1);
            }
            self.current.pop();
            if self.aborted {
                return;
            }
            self.frames[depth].candidates[v / 64] &= !(1 << (v % 64));
        }
    }
}

/// Exact maximum clique.
///
/// `lower_bound` is the size of a clique known to exist; the search only
/// records cliques at least that large. If it turns out to be too optimistic
/// the search is repeated without it, so the answer never depends on it. With
/// a clock that expires, the best clique found so far is returned with
/// `optimal = false`.
pub fn max_clique<C: Clock>(g: &CompatGraph, lower_bound: usize, clock: &C) -> CliqueResult {
    let solver = CliqueSolver::new(g);
    let mut outcome = solver.run(lower_bound.max(1), clock);
    let mut nodes = outcome.nodes;
    if outcome.completed && outcome.clique.is_empty() && lower_bound > 1 {
        outcome = solver.run(1, clock);
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

/// Largest vertex count [`brute_force_clique`] accepts.
pub const ORACLE_LIMIT: usize = 30;

/// Maximum clique by enumerating every clique of the graph.
///
/// No bounding of any kind; meant as an independent check on [`max_clique`].
pub fn brute_force_clique(g: &CompatGraph) -> Result<CliqueResult, Error> {
    let n = g.len();
    if n > ORACLE_LIMIT {
        return Err(Error::OracleTooLarge {
            vertices: n,
            limit: ORACLE_LIMIT,
        });
    }
    let masks: Vec<u32> = (0..n)
        .map(|i| g.neighbors(i).iter().fold(0u32, |m, j| m | 1 << j))
        .collect();

    fn grow(masks: &[u32], chosen: u32, open: u32, best: &mut u32, nodes: &mut u64) {
        *nodes += 1;
        if chosen.count_ones() > best.count_ones() {
            *best = chosen;
        }
        let mut rest = open;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            // only later vertices, so each clique is generated once
            grow(
                masks,
                chosen | 1 << v,
                rest & masks[v as usize],
                best,
                nodes,
            );
        }
    }

    let mut best = 0u32;
    let mut nodes = 0u64;
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    grow(&masks, 0, all, &mut best, &mut nodes);
    let mut clique: Vec<LatticePoint> = (0..n)
        .filter(|&i| best & (1 << i) != 0)
        .map(|i| g.vertices()[i])
        .collect();
    clique.sort_unstable();
    Ok(CliqueResult {
        size: clique.len(),
        clique,
        optimal: true,
        nodes_explored: nodes,
        elapsed: Duration::ZERO,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, candidate_vertices, verify_clique};
    use crate::lattice::loeschian_sequence;

    fn complete(n: usize) -> CompatGraph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        CompatGraph::from_edges(n, e)
    }

    fn cycle(n: usize) -> CompatGraph {
        CompatGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    #[test]
    fn small_graphs() {
        assert_eq!(max_clique(&complete(5), 0, &Unbounded).size, 5);
        assert_eq!(max_clique(&cycle(5), 0, &Unbounded).size, 2);
        let empty = CompatGraph::from_edges(4, []);
        assert_eq!(max_clique(&empty, 0, &Unbounded).size, 1);
        assert_eq!(brute_force_clique(&empty).unwrap().size, 1);
        assert_eq!(brute_force_clique(&cycle(5)).unwrap().size, 2);
        let none = CompatGraph::from_edges(0, []);
        let r = max_clique(&none, 0, &Unbounded);
        assert_eq!((r.size, r.optimal), (0, true));
    }

    #[test]
    fn oracle_refuses_large_graphs() {
        assert_eq!(
            brute_force_clique(&complete(31)),
            Err(Error::OracleTooLarge {
                vertices: 31,
                limit: ORACLE_LIMIT
            })
        );
    }

    #[test]
    fn optimistic_lower_bound_is_recovered() {
        let r = max_clique(&cycle(6), 5, &Unbounded);
        assert_eq!(r.size, 2);
        assert!(r.optimal);
    }

    #[test]
    fn seven_smallest_distances() {
        let menu = loeschian_sequence(7);
        let g = build_graph(&candidate_vertices(&menu).unwrap(), &menu);
        let r = max_clique(&g, 0, &Unbounded);
        assert_eq!(r.size, 14);
        assert!(r.optimal);
        assert_eq!(verify_clique(&g, &r.clique), Ok(true));
    }

    struct Expired;
    impl Clock for Expired {
        fn elapsed(&self) -> Duration {
            Duration::from_secs(1)
        }
        fn expired(&self) -> bool {
            true
        }
    }

    #[test]
    fn expired_budget_is_flagged() {
        let menu = loeschian_sequence(12);
        let g = build_graph(&candidate_vertices(&menu).unwrap(), &menu);
        let r = max_clique(&g, 0, &Expired);
        assert!(!r.optimal);
        assert_eq!(verify_clique(&g, &r.clique), Ok(true));
    }
}
