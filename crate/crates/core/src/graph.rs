//! The candidate compatibility graph.
//!
//! Vertices are lattice points compatible with both anchors `A = (0, 0)` and
//! `B = (0, 1)`; two vertices are adjacent when their squared distance is on
//! the menu. A clique `W` therefore gives a set `W ∪ {A, B}` whose distances
//! all come from the menu.

use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, MenuDefect};
use crate::lattice::{delta_norm, isqrt, norm, DistanceMenu, LatticePoint, SquaredDistance};

pub const ANCHOR_A: LatticePoint = LatticePoint::new(0, 0);
pub const ANCHOR_B: LatticePoint = LatticePoint::new(0, 1);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatGraph {
    vertices: Vec<LatticePoint>,
    adjacency: Vec<BitSet>,
    menu: DistanceMenu,
}

impl CompatGraph {
    /// Builds a graph from explicit adjacency, e.g. for solver tests.
    ///
    /// Vertex labels are synthetic points `(i, 0)`; the menu is `[1]`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adjacency = alloc::vec![BitSet::new(n); n];
        for (i, j) in edges {
            if i != j {
                adjacency[i].insert(j);
                adjacency[j].insert(i);
            }
        }
        CompatGraph {
            vertices: (0..n as i64).map(|i| LatticePoint::new(i, 0)).collect(),
            adjacency,
            menu: DistanceMenu::new([1]).expect("valid"),
        }
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn menu(&self) -> &DistanceMenu {
        &self.menu
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn neighbors(&self, i: usize) -> &BitSet {
        &self.adjacency[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BitSet::count).sum::<usize>() / 2
    }

    pub fn index_of(&self, p: LatticePoint) -> Option<usize> {
        self.vertices.iter().position(|&v| v == p)
    }

    /// Induced subgraph on `keep`, preserving relative vertex order.
    pub fn induced(&self, keep: &[usize]) -> CompatGraph {
        let adjacency = keep
            .iter()
            .map(|&i| {
                let mut row = BitSet::new(keep.len());
                for (new_j, &j) in keep.iter().enumerate() {
                    if self.adjacency[i].contains(j) {
                        row.insert(new_j);
                    }
                }
                row
            })
            .collect();
        CompatGraph {
            vertices: keep.iter().map(|&i| self.vertices[i]).collect(),
            adjacency,
            menu: self.menu.clone(),
        }
    }
}

/// All lattice points other than the anchors whose distances to both anchors
/// are on the menu, in increasing `(a, b)` order.
pub fn candidate_vertices(menu: &DistanceMenu) -> Result<Vec<LatticePoint>, Error> {
    if !menu.contains(SquaredDistance(1)) {
        return Err(Error::InvalidMenu(MenuDefect::MissingUnitDistance));
    }
    let reach = isqrt(2 * menu.max().get()) as i64 + 1;
    let mut out = Vec::new();
    for a in -reach..=reach {
        for b in -reach..=reach {
            let p = LatticePoint::new(a, b);
            if p == ANCHOR_A || p == ANCHOR_B {
                continue;
            }
            if menu.contains(norm(p)) && menu.contains(delta_norm(p, ANCHOR_B)) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Adjacency: an edge joins `i ≠ j` exactly when their squared distance is on the menu.
pub fn build_graph(vertices: &[LatticePoint], menu: &DistanceMenu) -> CompatGraph {
    let n = vertices.len();
    let mut adjacency = alloc::vec![BitSet::new(n); n];
    for i in 0..n {
        for j in i + 1..n {
            if menu.contains(delta_norm(vertices[i], vertices[j])) {
                adjacency[i].insert(j);
                adjacency[j].insert(i);
            }
        }
    }
    CompatGraph {
        vertices: vertices.to_vec(),
        adjacency,
        menu: menu.clone(),
    }
}

/// Iteratively drops vertices of degree below `t − 1` (the `(t−1)`-core).
///
/// A clique with `t` or more vertices gives each member degree at least
/// `t − 1`, so such cliques survive untouched.
pub fn prune_by_degree(g: &CompatGraph, t: usize) -> CompatGraph {
    let min_degree = t.saturating_sub(1);
    let n = g.len();
    let mut alive = BitSet::full(n);
    let mut degree: Vec<usize> = (0..n).map(|i| g.degree(i)).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&i| degree[i] < min_degree).collect();
    for &i in &stack {
        alive.remove(i);
    }
    while let Some(v) = stack.pop() {
        for u in g.neighbors(v).iter() {
            if alive.contains(u) {
                degree[u] -= 1;
                if degree[u] < min_degree {
                    alive.remove(u);
                    stack.push(u);
                }
            }
        }
    }
    let keep: Vec<usize> = alive.iter().collect();
    if keep.len() == n {
        return g.clone();
    }
    g.induced(&keep)
}

/// True iff the listed vertices are pairwise adjacent.
pub fn verify_clique(g: &CompatGraph, clique: &[LatticePoint]) -> Result<bool, Error> {
    let idx: Vec<usize> = clique
        .iter()
        .map(|&p| g.index_of(p).ok_or(Error::UnknownVertex(p)))
        .collect::<Result<_, _>>()?;
    for (k, &i) in idx.iter().enumerate() {
        for &j in &idx[k + 1..] {
            if !g.has_edge(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
