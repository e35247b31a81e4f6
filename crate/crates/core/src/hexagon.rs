//! Lattice fillings of regular and `(k, k+1)`-equiangular hexagons, and the
//! diameter-trimming procedure used to turn them into `m`-distance sets.

use alloc::vec::Vec;
use core::fmt;

use crate::clique::{max_clique, Unbounded};
use crate::error::Error;
use crate::graph::build_graph;
use crate::lattice::{
    delta_norm, distance_count, distance_set, loeschian_sequence, DistanceMenu, LatticePoint,
    PointConfig, SquaredDistance, Symmetry,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HexagonKind {
    Regular,
    /// Sides alternate between `k` and `k + 1`.
    Equiangular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HexagonSpec {
    pub kind: HexagonKind,
    pub k: i64,
}

impl HexagonSpec {
    pub const fn regular(k: i64) -> Self {
        HexagonSpec {
            kind: HexagonKind::Regular,
            k,
        }
    }

    pub const fn equiangular(k: i64) -> Self {
        HexagonSpec {
            kind: HexagonKind::Equiangular,
            k,
        }
    }

    /// Closed-form lattice point count.
    pub fn point_count(self) -> usize {
        let k = self.k.max(0) as usize;
        match self.kind {
            HexagonKind::Regular => 3 * k * k + 3 * k + 1,
            HexagonKind::Equiangular => 3 * (k + 1) * (k + 1),
        }
    }

    /// Length of the longest diagonal.
    pub fn diameter(self) -> i64 {
        match self.kind {
            HexagonKind::Regular => 2 * self.k,
            HexagonKind::Equiangular => 2 * self.k + 1,
        }
    }

    /// Every hexagon family member in increasing diameter order:
    /// `Regular(1), Equiangular(1), Regular(2), Equiangular(2), …`.
    pub fn ladder() -> impl Iterator<Item = HexagonSpec> {
        (1..).flat_map(|k| [HexagonSpec::regular(k), HexagonSpec::equiangular(k)])
    }

    fn validate(self) -> Result<(), Error> {
        if self.k <= 0 {
            Err(Error::InvalidSpec { k: self.k })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for HexagonSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            HexagonKind::Regular => write!(f, "regular hexagon, side {}", self.k),
            HexagonKind::Equiangular => {
                write!(f, "({}, {})-equiangular hexagon", self.k, self.k + 1)
            }
        }
    }
}

/// Regular(k): `|a|, |b|, |a+b| ≤ k`.
/// Equiangular(k): `a`, `b` and `a+b` all in `[−k, k+1]`.
pub fn hexagon_points(spec: HexagonSpec) -> Result<PointConfig, Error> {
    spec.validate()?;
    let k = spec.k;
    let (lo, hi) = match spec.kind {
        HexagonKind::Regular => (-k, k),
        HexagonKind::Equiangular => (-k, k + 1),
    };
    let mut points = Vec::with_capacity(spec.point_count());
    for a in lo..=hi {
        for b in lo..=hi {
            if (lo..=hi).contains(&(a + b)) {
                points.push(LatticePoint::new(a, b));
            }
        }
    }
    Ok(PointConfig::new(points))
}

/// Corner points in counter-clockwise order.
pub fn hexagon_corners(spec: HexagonSpec) -> Result<[LatticePoint; 6], Error> {
    spec.validate()?;
    let k = spec.k;
    let p = LatticePoint::new;
    Ok(match spec.kind {
        HexagonKind::Regular => [p(k, -k), p(k, 0), p(0, k), p(-k, k), p(-k, 0), p(0, -k)],
        HexagonKind::Equiangular => [
            p(k + 1, -k),
            p(k + 1, 0),
            p(0, k + 1),
            p(-k, k + 1),
            p(-k, 0),
            p(0, -k),
        ],
    })
}

/// A lattice isometry `p ↦ g(p) + shift` carrying `container` onto a superset
/// of `c`, if there is one. Symmetries are tried in [`Symmetry::all`] order and
/// shifts in increasing order.
pub fn locate_within(c: &PointConfig, container: &PointConfig) -> Option<(Symmetry, LatticePoint)> {
    let anchor = *c.points().first()?;
    for g in Symmetry::all() {
        let image = container.transformed(g);
        for &q in image.points() {
            let shift = anchor - q;
            if c.points().iter().all(|&p| image.contains(p - shift)) {
                return Some((g, shift));
            }
        }
    }
    None
}

pub fn hexagon_menu(spec: HexagonSpec) -> Result<DistanceMenu, Error> {
    distance_set(&hexagon_points(spec)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MenuMismatch {
    /// The hexagon's distances are exactly the smallest `|menu|` lattice distances.
    pub matches_smallest: bool,
    /// Smallest lattice distance the hexagon skips, if any.
    pub first_skipped: Option<SquaredDistance>,
}

pub fn menu_mismatch(spec: HexagonSpec) -> Result<MenuMismatch, Error> {
    let menu = hexagon_menu(spec)?;
    let smallest = loeschian_sequence(menu.len());
    let first_skipped = smallest
        .values()
        .iter()
        .zip(menu.values())
        .find(|(want, got)| want != got)
        .map(|(want, _)| *want);
    Ok(MenuMismatch {
        matches_smallest: first_skipped.is_none(),
        first_skipped,
    })
}

/// Unordered pairs at the maximum squared distance, each as `(p, q)` with
/// `p < q`, in increasing order.
pub fn diameter_pairs(c: &PointConfig) -> Vec<(LatticePoint, LatticePoint)> {
    let pts = c.points();
    let mut best = SquaredDistance(0);
    let mut pairs = Vec::new();
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i + 1..] {
            let d = delta_norm(p, q);
            if d > best {
                best = d;
                pairs.clear();
            }
            if d == best {
                pairs.push((p, q));
            }
        }
    }
    pairs
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trimmed {
    pub config: PointConfig,
    pub distance_count: usize,
    /// The last removal dropped the distance count strictly below the target.
    pub overshoot: bool,
    pub removed: Vec<LatticePoint>,
}

/// Removes diameter endpoints until at most `m` distances remain, keeping as
/// many points as possible.
///
/// The survivors are a largest subset whose distances are all among the `m`
/// smallest distances of `c`; that is a maximum clique of the graph joining
/// pairs at those distances. The removals are then replayed one diameter
/// endpoint at a time: while extra points remain the current diameter exceeds
/// the `m`-th distance, so some diameter pair has an endpoint to drop. Among
/// those endpoints the one on the most diameter pairs goes first, ties to the
/// smallest coordinates.
pub fn trim_to_m(c: &PointConfig, m: usize) -> Trimmed {
    assert!(m >= 1, "trim target must be positive");
    let menu = match distance_set(c) {
        Ok(menu) if menu.len() > m => menu,
        _ => {
            return Trimmed {
                distance_count: distance_count(c),
                config: c.clone(),
                overshoot: false,
                removed: Vec::new(),
            }
        }
    };
    let allowed =
        DistanceMenu::new(menu.to_vec()[..m].iter().copied()).expect("prefix of a valid menu");
    let graph = build_graph(c.points(), &allowed);
    let keep = PointConfig::new(max_clique(&graph, 0, &Unbounded).clique);

    let mut config = c.clone();
    let mut removed = Vec::new();
    while config.len() > keep.len() {
        let mut ends: Vec<LatticePoint> = diameter_pairs(&config)
            .iter()
            .flat_map(|&(p, q)| [p, q])
            .filter(|&p| !keep.contains(p))
            .collect();
        ends.sort_unstable();
        // sorted, so equal points are contiguous; keep the first longest run
        let mut victim = ends[0];
        let mut victim_hits = 0;
        let mut i = 0;
        while i < ends.len() {
            let run = ends[i..].iter().take_while(|&&p| p == ends[i]).count();
            if run > victim_hits {
                victim = ends[i];
                victim_hits = run;
            }
            i += run;
        }
        config = config.without(victim);
        removed.push(victim);
    }
    let count = distance_count(&config);
    Trimmed {
        overshoot: count < m,
        config,
        distance_count: count,
        removed,
    }
}
