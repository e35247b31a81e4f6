use core::fmt;

use crate::lattice::{LatticePoint, SquaredDistance};

/// Errors produced by the geometry and search routines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// An operation needed more points than it was given.
    EmptyInput { needed: usize, got: usize },
    /// A pair of points realizes a distance that is not on the menu.
    ForeignDistance {
        p: LatticePoint,
        q: LatticePoint,
        distance: SquaredDistance,
    },
    /// The distance menu is malformed or unusable for the requested operation.
    InvalidMenu(MenuDefect),
    /// A hexagon was requested with a non-positive side length.
    InvalidSpec { k: i64 },
    /// A point was looked up in a graph that does not contain it.
    UnknownVertex(LatticePoint),
    /// The brute-force oracle refuses graphs above its size guard.
    OracleTooLarge { vertices: usize, limit: usize },
}

/// What is wrong with a distance menu.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MenuDefect {
    Empty,
    NotIncreasing,
    NonPositive,
    NotLoeschian(u64),
    /// The anchor pair A=(0,0), B=(0,1) is at distance 1, so 1 must be allowed.
    MissingUnitDistance,
}

impl fmt::Display for MenuDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MenuDefect::Empty => f.write_str("menu is empty"),
            MenuDefect::NotIncreasing => f.write_str("menu values are not strictly increasing"),
            MenuDefect::NonPositive => f.write_str("menu contains a non-positive distance"),
            MenuDefect::NotLoeschian(n) => {
                write!(f, "{n} is not a squared distance of the triangular lattice")
            }
            MenuDefect::MissingUnitDistance => f.write_str("menu does not contain 1"),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyInput { needed, got } => {
                write!(f, "need at least {needed} points, got {got}")
            }
            Error::ForeignDistance { p, q, distance } => write!(
                f,
                "pair {p} {q} has squared distance {} which is not on the menu",
                distance.get()
            ),
            Error::InvalidMenu(defect) => write!(f, "invalid distance menu: {defect}"),
            Error::InvalidSpec { k } => write!(f, "hexagon side length must be positive, got {k}"),
            Error::UnknownVertex(p) => write!(f, "point {p} is not a vertex of the graph"),
            Error::OracleTooLarge { vertices, limit } => write!(
                f,
                "brute-force oracle is limited to {limit} vertices, graph has {vertices}"
            ),
        }
    }
}

impl core::error::Error for Error {}
