//! End-to-end constructions: maximum clique over the smallest `m` distances,
//! and trimmed hexagons.

use alloc::vec::Vec;
use core::fmt;
use core::time::Duration;

use crate::clique::{CliqueEngine, Clock, Serial};
use crate::error::Error;
use crate::graph::{build_graph, candidate_vertices, prune_by_degree, ANCHOR_A, ANCHOR_B};
use crate::hexagon::{hexagon_menu, hexagon_points, trim_to_m, HexagonSpec};
use crate::lattice::{
    canonicalize, distance_set, loeschian_sequence, multiplicity_array, DistanceMenu, LatticePoint,
    MultiplicityArray, PointConfig,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    SmallestMenuClique,
    Hexagon,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::SmallestMenuClique => "clique",
            Method::Hexagon => "hexagon",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        match s {
            "clique" => Some(Method::SmallestMenuClique),
            "hexagon" => Some(Method::Hexagon),
            _ => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where a hexagon-method construction came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HexagonOrigin {
    pub spec: HexagonSpec,
    pub removed: usize,
    /// Trimming jumped below the requested distance count.
    pub overshoot: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub m: usize,
    pub method: Method,
    /// Smallest-`m` menu for the clique method; the construction's own
    /// distance set for the hexagon method.
    pub menu: DistanceMenu,
    /// Canonical form of the constructed set.
    pub construction: PointConfig,
    pub size: usize,
    pub multiplicities: MultiplicityArray,
    pub optimal: bool,
    pub elapsed: Duration,
    /// Clique part `W` in the anchored frame (empty for hexagons).
    pub clique: Vec<LatticePoint>,
    pub hexagon: Option<HexagonOrigin>,
}

impl SearchReport {
    /// The anchored set `W ∪ {A, B}` before canonicalization.
    pub fn anchored(&self) -> PointConfig {
        self.clique
            .iter()
            .copied()
            .chain([ANCHOR_A, ANCHOR_B])
            .collect()
    }
}

/// Maximum clique over the candidate graph of `menu`.
///
/// `lower_bound` is the size of a clique known to exist in the graph (not
/// counting the anchors); it drives degree pruning and seeds the incumbent.
pub fn solve_menu<C: Clock>(
    menu: &DistanceMenu,
    lower_bound: usize,
    clock: &C,
) -> Result<SearchReport, Error> {
    solve_menu_using(&Serial, menu, lower_bound, clock)
}

/// [`solve_menu`] with a caller-chosen clique engine.
pub fn solve_menu_using<E: CliqueEngine, C: Clock>(
    engine: &E,
    menu: &DistanceMenu,
    lower_bound: usize,
    clock: &C,
) -> Result<SearchReport, Error> {
    let vertices = candidate_vertices(menu)?;
    let graph = build_graph(&vertices, menu);
    let pruned = prune_by_degree(&graph, lower_bound);
    let mut result = engine.max_clique(&pruned, lower_bound, clock);
    if result.optimal && result.size < lower_bound {
        // the seed overshot the true optimum, so the pruning may have cut it
        let nodes = result.nodes_explored;
        result = engine.max_clique(&graph, 0, clock);
        result.nodes_explored += nodes;
    }
    let anchored: PointConfig = result
        .clique
        .iter()
        .copied()
        .chain([ANCHOR_A, ANCHOR_B])
        .collect();
    let construction = canonicalize(&anchored);
    let multiplicities = multiplicity_array(&construction, menu)?;
    Ok(SearchReport {
        m: menu.len(),
        method: Method::SmallestMenuClique,
        menu: menu.clone(),
        size: construction.len(),
        construction,
        multiplicities,
        optimal: result.optimal,
        elapsed: clock.elapsed(),
        clique: result.clique,
        hexagon: None,
    })
}

/// One link of the smallest-menu chain.
///
/// Solves the `m` smallest distances with the clique found for `m − 1` as the
/// lower bound. When the optimum does not grow, the previous construction is
/// kept: it is still valid because the menus are nested.
pub fn solve_smallest_menu_after<E: CliqueEngine, C: Clock>(
    engine: &E,
    m: usize,
    previous: Option<&SearchReport>,
    clock: &C,
) -> Result<SearchReport, Error> {
    let menu = loeschian_sequence(m);
    let previous = previous.filter(|p| p.method == Method::SmallestMenuClique && p.m + 1 == m);
    let lower_bound = previous.map_or(0, |p| p.clique.len());
    let mut report = solve_menu_using(engine, &menu, lower_bound, clock)?;
    if let Some(prev) = previous {
        if prev.size == report.size {
            report.construction = prev.construction.clone();
            report.clique = prev.clique.clone();
            report.multiplicities = multiplicity_array(&report.construction, &menu)?;
        }
    }
    Ok(report)
}

/// Clique construction for the `m` smallest distances, computed by running the
/// chain up from `m = 1`.
pub fn solve_smallest_menu<C: Clock>(m: usize, clock: &C) -> Result<SearchReport, Error> {
    solve_smallest_menu_using(&Serial, m, clock)
}

pub fn solve_smallest_menu_using<E: CliqueEngine, C: Clock>(
    engine: &E,
    m: usize,
    clock: &C,
) -> Result<SearchReport, Error> {
    assert!(m >= 1, "m must be positive");
    let mut report = solve_smallest_menu_after(engine, 1, None, clock)?;
    for k in 2..=m {
        report = solve_smallest_menu_after(engine, k, Some(&report), clock)?;
    }
    Ok(report)
}

fn hexagon_report(
    m: usize,
    config: PointConfig,
    origin: HexagonOrigin,
    elapsed: Duration,
) -> Result<SearchReport, Error> {
    let construction = canonicalize(&config);
    let menu = distance_set(&construction)?;
    let multiplicities = multiplicity_array(&construction, &menu)?;
    Ok(SearchReport {
        m,
        method: Method::Hexagon,
        menu,
        size: construction.len(),
        construction,
        multiplicities,
        optimal: true,
        elapsed,
        clique: Vec::new(),
        hexagon: Some(origin),
    })
}

/// Best hexagon-derived set with at most `m` distances.
///
/// Takes the first hexagon on the ladder with at least `m` distances and trims
/// diameter endpoints down to `m`; the hexagon just below it, untouched, is the
/// alternative. The larger wins, the untrimmed one on ties.
pub fn hexagon_construction<C: Clock>(m: usize, clock: &C) -> Result<SearchReport, Error> {
    assert!(m >= 3, "hexagon construction needs m >= 3");
    let mut smaller: Option<HexagonSpec> = None;
    let mut larger = None;
    for spec in HexagonSpec::ladder() {
        if hexagon_menu(spec)?.len() >= m {
            larger = Some(spec);
            break;
        }
        smaller = Some(spec);
    }
    let larger = larger.expect("ladder is unbounded");
    let trimmed = trim_to_m(&hexagon_points(larger)?, m);
    let mut pick = (
        trimmed.config,
        HexagonOrigin {
            spec: larger,
            removed: trimmed.removed.len(),
            overshoot: trimmed.overshoot,
        },
    );
    if let Some(spec) = smaller {
        let whole = hexagon_points(spec)?;
        if whole.len() >= pick.0.len() {
            pick = (
                whole,
                HexagonOrigin {
                    spec,
                    removed: 0,
                    overshoot: false,
                },
            );
        }
    }
    hexagon_report(m, pick.0, pick.1, clock.elapsed())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub clique: SearchReport,
    pub hexagon: SearchReport,
}

impl Comparison {
    /// Larger construction wins; ties go to the clique method, whose distances
    /// are the smallest possible.
    pub fn winner(&self) -> Method {
        if self.hexagon.size > self.clique.size {
            Method::Hexagon
        } else {
            Method::SmallestMenuClique
        }
    }

    pub fn best(&self) -> &SearchReport {
        match self.winner() {
            Method::Hexagon => &self.hexagon,
            Method::SmallestMenuClique => &self.clique,
        }
    }

    pub fn m(&self) -> usize {
        self.clique.m
    }

    /// The hexagon construction is strictly larger.
    pub fn star(&self) -> bool {
        self.winner() == Method::Hexagon
    }

    pub fn optimal(&self) -> bool {
        self.clique.optimal && self.hexagon.optimal
    }
}

pub fn compare_methods<C: Clock>(m: usize, clock: &C) -> Result<Comparison, Error> {
    Ok(Comparison {
        clique: solve_smallest_menu(m, clock)?,
        hexagon: hexagon_construction(m, clock)?,
    })
}

/// Both methods for every `m` in `lo..=hi`, chaining clique lower bounds.
///
/// `clock_for(m)` supplies the budget for each `m`; the chain below `lo` is
/// solved with the clock of `lo`.
pub fn table_range<C, F>(lo: usize, hi: usize, clock_for: F) -> Result<Vec<Comparison>, Error>
where
    C: Clock,
    F: FnMut(usize) -> C,
{
    table_range_using(&Serial, lo, hi, clock_for)
}

pub fn table_range_using<E, C, F>(
    engine: &E,
    lo: usize,
    hi: usize,
    mut clock_for: F,
) -> Result<Vec<Comparison>, Error>
where
    E: CliqueEngine,
    C: Clock,
    F: FnMut(usize) -> C,
{
    assert!(3 <= lo && lo <= hi, "need 3 <= lo <= hi");
    let warmup = clock_for(lo);
    let mut previous = if lo > 1 {
        Some(solve_smallest_menu_using(engine, lo - 1, &warmup)?)
    } else {
        None
    };
    let mut rows = Vec::with_capacity(hi - lo + 1);
    for m in lo..=hi {
        let clock = clock_for(m);
        let clique = solve_smallest_menu_after(engine, m, previous.as_ref(), &clock)?;
        let hexagon = hexagon_construction(m, &clock)?;
        previous = Some(clique.clone());
        rows.push(Comparison { clique, hexagon });
    }
    Ok(rows)
}
