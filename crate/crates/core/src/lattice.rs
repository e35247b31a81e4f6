//! Exact geometry on the triangular lattice.
//!
//! A point `(a, b)` stands for `a·(1, 0) + b·(1/2, √3/2)`. Every quantity in
//! this module is an integer: squared lengths come from the norm form
//! `a² + ab + b²`, and symmetry checks are carried out in scaled coordinates.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::error::{Error, MenuDefect};

/// A point of the triangular lattice in basis coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub a: i64,
    pub b: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { a: 0, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        LatticePoint { a, b }
    }

    /// Euclidean position, for rendering only.
    pub fn to_cartesian(self) -> (f64, f64) {
        const HALF_SQRT3: f64 = 0.866_025_403_784_438_6;
        (
            self.a as f64 + 0.5 * self.b as f64,
            HALF_SQRT3 * self.b as f64,
        )
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((a, b): (i64, i64)) -> Self {
        LatticePoint { a, b }
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint::new(-self.a, -self.b)
    }
}

/// A squared Euclidean length between two lattice points.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquaredDistance(pub u64);

impl SquaredDistance {
    pub const fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for SquaredDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `a² + ab + b²`.
///
/// The form is positive definite, so the result is non-negative. For
/// coordinates up to 10⁹ in magnitude the intermediate values stay well inside
/// `i128`, and the result fits `u64`.
pub fn norm(p: LatticePoint) -> SquaredDistance {
    let (a, b) = (p.a as i128, p.b as i128);
    SquaredDistance((a * a + a * b + b * b) as u64)
}

pub fn delta_norm(p: LatticePoint, q: LatticePoint) -> SquaredDistance {
    norm(p - q)
}

/// True iff `n = a² + ab + b²` has an integer solution.
///
/// Uses the factorization criterion: every prime `≡ 2 (mod 3)` must divide
/// `n` to an even power. Deliberately shares no code with the enumeration in
/// [`loeschian_sequence`].
pub fn is_loeschian(n: u64) -> bool {
    if n == 0 {
        return true;
    }
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut exp = 0u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                exp += 1;
            }
            if p % 3 == 2 && exp % 2 == 1 {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // What is left is 1 or a prime with exponent one.
    rest % 3 != 2
}

/// The `m` smallest positive squared distances of the lattice, increasing.
pub fn loeschian_sequence(m: usize) -> DistanceMenu {
    assert!(m >= 1, "loeschian_sequence needs m >= 1");
    let mut bound: u64 = 4 * m as u64;
    loop {
        // a² + ab + b² ≥ max(a², b²) / 2, so |a|, |b| ≤ √(2·bound) covers the disk.
        let reach = isqrt(2 * bound) as i64 + 1;
        let mut values: Vec<u64> = Vec::new();
        for a in -reach..=reach {
            for b in -reach..=reach {
                let n = norm(LatticePoint::new(a, b)).get();
                if n > 0 && n <= bound {
                    values.push(n);
                }
            }
        }
        values.sort_unstable();
        values.dedup();
        if values.len() >= m {
            values.truncate(m);
            return DistanceMenu {
                values: values.into_iter().map(SquaredDistance).collect(),
            };
        }
        bound *= 2;
    }
}

pub(crate) fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    // Newton iteration from above
    let mut x = n;
    let mut y = x.div_ceil(2);
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    x
}

/// A strictly increasing, nonempty list of positive Loeschian squared distances.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DistanceMenu {
    values: Vec<SquaredDistance>,
}

impl DistanceMenu {
    pub fn new<I>(values: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = u64>,
    {
        let values: Vec<SquaredDistance> = values.into_iter().map(SquaredDistance).collect();
        if values.is_empty() {
            return Err(Error::InvalidMenu(MenuDefect::Empty));
        }
        for w in values.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidMenu(MenuDefect::NotIncreasing));
            }
        }
        for v in &values {
            if v.0 == 0 {
                return Err(Error::InvalidMenu(MenuDefect::NonPositive));
            }
            if !is_loeschian(v.0) {
                return Err(Error::InvalidMenu(MenuDefect::NotLoeschian(v.0)));
            }
        }
        Ok(DistanceMenu { values })
    }

    pub fn values(&self) -> &[SquaredDistance] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> SquaredDistance {
        *self.values.last().expect("menu is nonempty")
    }

    pub fn contains(&self, d: SquaredDistance) -> bool {
        self.values.binary_search(&d).is_ok()
    }

    pub fn index_of(&self, d: SquaredDistance) -> Option<usize> {
        self.values.binary_search(&d).ok()
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.values.iter().map(|d| d.0).collect()
    }

    /// True when every entry of `self` also appears in `other`.
    pub fn is_subset_of(&self, other: &DistanceMenu) -> bool {
        self.values.iter().all(|d| other.contains(*d))
    }
}

/// A finite set of lattice points, kept sorted and deduplicated.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PointConfig {
    points: Vec<LatticePoint>,
}

impl PointConfig {
    pub fn new<I>(points: I) -> Self
    where
        I: IntoIterator<Item = LatticePoint>,
    {
        let mut points: Vec<LatticePoint> = points.into_iter().collect();
        points.sort_unstable();
        points.dedup();
        PointConfig { points }
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    pub fn translated(&self, by: LatticePoint) -> PointConfig {
        PointConfig {
            points: self.points.iter().map(|&p| p + by).collect(),
        }
    }

    pub fn transformed(&self, g: Symmetry) -> PointConfig {
        PointConfig::new(self.points.iter().map(|&p| g.apply(p)))
    }

    pub fn without(&self, p: LatticePoint) -> PointConfig {
        PointConfig {
            points: self.points.iter().copied().filter(|&q| q != p).collect(),
        }
    }

    /// Number of unordered pairs, `n(n−1)/2`.
    pub fn pair_count(&self) -> u64 {
        let n = self.points.len() as u64;
        n * n.saturating_sub(1) / 2
    }

    pub fn into_points(self) -> Vec<LatticePoint> {
        self.points
    }
}

impl FromIterator<LatticePoint> for PointConfig {
    fn from_iter<T: IntoIterator<Item = LatticePoint>>(iter: T) -> Self {
        PointConfig::new(iter)
    }
}

/// Per-menu-entry pair counts, in menu order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiplicityArray {
    pub counts: Vec<u64>,
}

impl MultiplicityArray {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

pub fn distance_set(c: &PointConfig) -> Result<DistanceMenu, Error> {
    if c.len() < 2 {
        return Err(Error::EmptyInput {
            needed: 2,
            got: c.len(),
        });
    }
    let pts = c.points();
    let mut values: Vec<SquaredDistance> = Vec::with_capacity(pts.len() * (pts.len() - 1) / 2);
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i + 1..] {
            values.push(delta_norm(p, q));
        }
    }
    values.sort_unstable();
    values.dedup();
    Ok(DistanceMenu { values })
}

/// Number of distinct pairwise distances; 0 for fewer than two points.
pub fn distance_count(c: &PointConfig) -> usize {
    distance_set(c).map(|d| d.len()).unwrap_or(0)
}

pub fn multiplicity_array(
    c: &PointConfig,
    menu: &DistanceMenu,
) -> Result<MultiplicityArray, Error> {
    let mut counts = alloc::vec![0u64; menu.len()];
    let pts = c.points();
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i + 1..] {
            let d = delta_norm(p, q);
            match menu.index_of(d) {
                Some(idx) => counts[idx] += 1,
                None => return Err(Error::ForeignDistance { p, q, distance: d }),
            }
        }
    }
    Ok(MultiplicityArray { counts })
}

/// One of the twelve linear isometries of the lattice.
///
/// `rotation` counts 60° turns; `reflect` applies `(a, b) → (b, a)` first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Symmetry {
    pub rotation: u8,
    pub reflect: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry {
        rotation: 0,
        reflect: false,
    };

    pub fn all() -> impl Iterator<Item = Symmetry> {
        [false, true]
            .into_iter()
            .flat_map(|reflect| (0..6).map(move |rotation| Symmetry { rotation, reflect }))
    }

    /// The six mirror symmetries.
    pub fn reflections() -> impl Iterator<Item = Symmetry> {
        (0..6).map(|rotation| Symmetry {
            rotation,
            reflect: true,
        })
    }

    pub fn apply(self, p: LatticePoint) -> LatticePoint {
        let mut q = if self.reflect {
            LatticePoint::new(p.b, p.a)
        } else {
            p
        };
        for _ in 0..self.rotation % 6 {
            q = LatticePoint::new(-q.b, q.a + q.b);
        }
        q
    }
}

/// Number of lattice mirror axes that map the set onto itself.
///
/// Mirrors are taken through the centroid. Coordinates are scaled by `n` so
/// the centroid `Σp / n` becomes the integer vector `Σp`.
pub fn symmetry_axes(c: &PointConfig) -> usize {
    let n = c.len() as i64;
    if n == 0 {
        return 0;
    }
    let sum = c
        .points()
        .iter()
        .fold(LatticePoint::ORIGIN, |acc, &p| acc + p);
    let scaled: Vec<LatticePoint> = {
        let mut v: Vec<LatticePoint> = c
            .points()
            .iter()
            .map(|p| LatticePoint::new(p.a * n, p.b * n))
            .collect();
        v.sort_unstable();
        v
    };
    Symmetry::reflections()
        .filter(|&g| {
            let shift = sum - g.apply(sum);
            let mut image: Vec<LatticePoint> = scaled.iter().map(|&p| g.apply(p) + shift).collect();
            image.sort_unstable();
            image == scaled
        })
        .count()
}

/// Canonical representative of the set under lattice isometries.
///
/// Every one of the twelve point symmetries is applied, the image is shifted so
/// its smallest point sits at the origin, and the lexicographically smallest
/// sorted point list wins.
pub fn canonicalize(c: &PointConfig) -> PointConfig {
    if c.is_empty() {
        return c.clone();
    }
    let mut best: Option<Vec<LatticePoint>> = None;
    for g in Symmetry::all() {
        let mut image: Vec<LatticePoint> = c.points().iter().map(|&p| g.apply(p)).collect();
        image.sort_unstable();
        let shift = image[0];
        for p in image.iter_mut() {
            *p = *p - shift;
        }
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image);
        }
    }
    PointConfig {
        points: best.expect("twelve candidates"),
    }
}
