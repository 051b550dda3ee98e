//! Squares, regions, tilings and the exact-cover verifier.
//!
//! A [`Placement`] occupies the half-open box `[x, x+side) × [y, y+side)`, so
//! squares sharing an edge do not overlap. Rendering treats `y` as growing
//! downwards; nothing in the geometry depends on that.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{add, mul, Error, Result};

/// One axis-aligned square at integer coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Placement {
    x: i64,
    y: i64,
    side: i64,
}

impl Placement {
    /// Fails if `side < 1` or the far corner does not fit in `i64`.
    pub fn new(x: i64, y: i64, side: i64) -> Result<Self> {
        if side < 1 {
            return Err(Error::NonPositive(side));
        }
        add(x, side)?;
        add(y, side)?;
        Ok(Placement { x, y, side })
    }

    pub fn x(&self) -> i64 {
        self.x
    }

    pub fn y(&self) -> i64 {
        self.y
    }

    pub fn side(&self) -> i64 {
        self.side
    }

    /// Exclusive right edge.
    pub fn right(&self) -> i64 {
        self.x + self.side
    }

    /// Exclusive far edge along `y`.
    pub fn bottom(&self) -> i64 {
        self.y + self.side
    }

    pub fn bounds(&self) -> Bounds {
        Bounds { x0: self.x, y0: self.y, x1: self.right(), y1: self.bottom() }
    }

    /// Interior overlap test; touching edges do not count.
    pub fn overlaps(&self, other: &Placement) -> bool {
        self.bounds().intersects(&other.bounds())
    }

    pub fn translated(&self, dx: i64, dy: i64) -> Result<Placement> {
        Placement::new(add(self.x, dx)?, add(self.y, dy)?, self.side)
    }

    pub(crate) fn scaled(&self, m: i64) -> Result<Placement> {
        Placement::new(mul(self.x, m)?, mul(self.y, m)?, mul(self.side, m)?)
    }
}

/// A half-open integer box `[x0, x1) × [y0, y1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub x0: i64,
    pub y0: i64,
    pub x1: i64,
    pub y1: i64,
}

impl Bounds {
    pub fn is_empty(&self) -> bool {
        self.x0 >= self.x1 || self.y0 >= self.y1
    }

    pub fn intersects(&self, other: &Bounds) -> bool {
        self.x0 < other.x1 && other.x0 < self.x1 && self.y0 < other.y1 && other.y0 < self.y1
    }

    pub fn contains(&self, other: &Bounds) -> bool {
        self.x0 <= other.x0 && other.x1 <= self.x1 && self.y0 <= other.y0 && other.y1 <= self.y1
    }

    pub fn area(&self) -> i128 {
        if self.is_empty() {
            0
        } else {
            (self.x1 as i128 - self.x0 as i128) * (self.y1 as i128 - self.y0 as i128)
        }
    }

    fn clip(&self, other: &Bounds) -> Bounds {
        Bounds {
            x0: self.x0.max(other.x0),
            y0: self.y0.max(other.y0),
            x1: self.x1.min(other.x1),
            y1: self.y1.min(other.y1),
        }
    }
}

/// The area a tiling claims to cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// `[0, width) × [0, height)`; every square must stay inside.
    Rect { width: i64, height: i64 },
    /// A finite view of an unbounded construction. Squares may stick out of
    /// the window but must cover all of it.
    Window { x0: i64, y0: i64, x1: i64, y1: i64 },
}

impl Region {
    pub fn rect(width: i64, height: i64) -> Result<Region> {
        if width < 1 {
            return Err(Error::NonPositive(width));
        }
        if height < 1 {
            return Err(Error::NonPositive(height));
        }
        Ok(Region::Rect { width, height })
    }

    pub fn window(x0: i64, y0: i64, x1: i64, y1: i64) -> Result<Region> {
        if x0 >= x1 || y0 >= y1 {
            return Err(Error::EmptyWindow);
        }
        Ok(Region::Window { x0, y0, x1, y1 })
    }

    pub fn bounds(&self) -> Bounds {
        match *self {
            Region::Rect { width, height } => Bounds { x0: 0, y0: 0, x1: width, y1: height },
            Region::Window { x0, y0, x1, y1 } => Bounds { x0, y0, x1, y1 },
        }
    }

    pub fn area(&self) -> i128 {
        self.bounds().area()
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Region::Rect { width, height } => Region::rect(width, height).map(|_| ()),
            Region::Window { x0, y0, x1, y1 } => Region::window(x0, y0, x1, y1).map(|_| ()),
        }
    }
}

/// A region plus the squares claimed to tile it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tiling {
    region: Region,
    squares: Vec<Placement>,
}

impl Tiling {
    /// Validates the region only; the squares are checked by [`verify`].
    pub fn new(region: Region, squares: Vec<Placement>) -> Result<Tiling> {
        region.validate()?;
        Ok(Tiling { region, squares })
    }

    pub fn region(&self) -> Region {
        self.region
    }

    pub fn squares(&self) -> &[Placement] {
        &self.squares
    }

    pub fn into_squares(self) -> Vec<Placement> {
        self.squares
    }

    /// Sides in ascending order (duplicates kept).
    pub fn sides(&self) -> Vec<i64> {
        let mut sides: Vec<i64> = self.squares.iter().map(|p| p.side).collect();
        sides.sort_unstable();
        sides
    }

    /// Multiplies every coordinate and side by `m` (any positive factor).
    pub fn scaled(&self, m: i64) -> Result<Tiling> {
        if m < 1 {
            return Err(Error::NonPositive(m));
        }
        let region = match self.region {
            Region::Rect { width, height } => Region::rect(mul(width, m)?, mul(height, m)?)?,
            Region::Window { x0, y0, x1, y1 } => Region::window(mul(x0, m)?, mul(y0, m)?, mul(x1, m)?, mul(y1, m)?)?,
        };
        let squares = self.squares.iter().map(|p| p.scaled(m)).collect::<Result<Vec<_>>>()?;
        Ok(Tiling { region, squares })
    }

    /// Swaps the axes. A rectangle `w × h` becomes `h × w`; the square at the
    /// origin stays there.
    pub fn transposed(&self) -> Tiling {
        let region = match self.region {
            Region::Rect { width, height } => Region::Rect { width: height, height: width },
            Region::Window { x0, y0, x1, y1 } => Region::Window { x0: y0, y0: x0, x1: y1, y1: x1 },
        };
        let squares = self.squares.iter().map(|p| Placement { x: p.y, y: p.x, side: p.side }).collect();
        Tiling { region, squares }
    }

    /// Mirrors a rectangle tiling left-right and/or top-bottom.
    pub(crate) fn mirrored(&self, flip_x: bool, flip_y: bool) -> Result<Tiling> {
        let (w, h) = match self.region {
            Region::Rect { width, height } => (width, height),
            Region::Window { .. } => return Err(Error::NotRectangle),
        };
        let squares = self
            .squares
            .iter()
            .map(|p| {
                let x = if flip_x { w - p.x - p.side } else { p.x };
                let y = if flip_y { h - p.y - p.side } else { p.y };
                Placement { x, y, side: p.side }
            })
            .collect();
        Ok(Tiling { region: self.region, squares })
    }

    /// Sorts squares by `(y, x)`, the order used for every serialized output.
    pub fn sort_squares(&mut self) {
        self.squares.sort_unstable_by_key(|p| (p.y, p.x, p.side));
    }
}

/// The first defect found in a tiling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Two squares share interior points; indices into the square list, `i < j`.
    Overlap(usize, usize),
    /// The smallest uncovered lattice point, ordered by `(y, x)`.
    Gap {
        x: i64,
        y: i64,
    },
    DuplicateSide(i64),
    /// Index of a square that leaves the rectangle.
    OutOfRegion(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Overlap(i, j) => write!(f, "squares {} and {} overlap", i, j),
            Violation::Gap { x, y } => write!(f, "point ({}, {}) is not covered", x, y),
            Violation::DuplicateSide(s) => write!(f, "side {} is used more than once", s),
            Violation::OutOfRegion(i) => write!(f, "square {} leaves the region", i),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub passed: bool,
    pub violation: Option<Violation>,
    /// Distinct odd sides used, ascending, whether or not the tiling passed.
    pub odd_sides: Vec<i64>,
}

/// Checks that `t` is a perfect tiling of its region.
///
/// Checks run in this order and the first failure is reported: squares
/// leaving a rectangle region, duplicate sides, overlapping interiors, and
/// finally uncovered points of the region.
pub fn verify(t: &Tiling) -> VerificationReport {
    let violation = find_violation(t);
    VerificationReport { passed: violation.is_none(), violation, odd_sides: odd_sides(t) }
}

fn find_violation(t: &Tiling) -> Option<Violation> {
    let region = t.region.bounds();
    if let Region::Rect { .. } = t.region {
        if let Some(i) = t.squares.iter().position(|p| !region.contains(&p.bounds())) {
            return Some(Violation::OutOfRegion(i));
        }
    }

    let sides = t.sides();
    if let Some(w) = sides.windows(2).find(|w| w[0] == w[1]) {
        return Some(Violation::DuplicateSide(w[0]));
    }

    if let Some((i, j)) = first_overlap(&t.squares) {
        return Some(Violation::Overlap(i, j));
    }

    first_gap(&region, &t.squares).map(|(x, y)| Violation::Gap { x, y })
}

/// Lexicographically smallest overlapping index pair.
fn first_overlap(squares: &[Placement]) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..squares.len()).collect();
    order.sort_unstable_by_key(|&i| squares[i].x);
    let mut best: Option<(usize, usize)> = None;
    for (k, &i) in order.iter().enumerate() {
        let a = &squares[i];
        for &j in &order[k + 1..] {
            let b = &squares[j];
            if b.x >= a.right() {
                break;
            }
            if a.overlaps(b) {
                let pair = (i.min(j), i.max(j));
                if best.is_none_or(|cur| pair < cur) {
                    best = Some(pair);
                }
            }
        }
    }
    best
}

/// Sweeps a compressed grid of the region. Assumes no overlaps.
fn first_gap(region: &Bounds, squares: &[Placement]) -> Option<(i64, i64)> {
    let clipped: Vec<Bounds> = squares.iter().map(|p| p.bounds().clip(region)).filter(|b| !b.is_empty()).collect();

    let mut xs = vec![region.x0, region.x1];
    let mut ys = vec![region.y0, region.y1];
    for b in &clipped {
        xs.extend([b.x0, b.x1]);
        ys.extend([b.y0, b.y1]);
    }
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();

    let cols = xs.len() - 1;
    let rows = ys.len() - 1;
    let mut covered = vec![false; cols * rows];
    for b in &clipped {
        let c0 = xs.binary_search(&b.x0).unwrap_or_else(|e| e);
        let c1 = xs.binary_search(&b.x1).unwrap_or_else(|e| e);
        let r0 = ys.binary_search(&b.y0).unwrap_or_else(|e| e);
        let r1 = ys.binary_search(&b.y1).unwrap_or_else(|e| e);
        for r in r0..r1 {
            covered[r * cols + c0..r * cols + c1].fill(true);
        }
    }

    for r in 0..rows {
        for c in 0..cols {
            if !covered[r * cols + c] {
                return Some((xs[c], ys[r]));
            }
        }
    }
    None
}

fn odd_sides(t: &Tiling) -> Vec<i64> {
    let mut odd: Vec<i64> = t.squares.iter().map(|p| p.side).filter(|s| s % 2 != 0).collect();
    odd.sort_unstable();
    odd.dedup();
    odd
}

/// `Σ side² == w · h`, the area condition every rectangle tiling must meet.
pub fn area_identity(sides: &[i64], w: i64, h: i64) -> bool {
    let total: i128 = sides.iter().map(|&s| s as i128 * s as i128).sum();
    total == w as i128 * h as i128
}

/// Count and ascending list of the distinct odd sides in `t`.
pub fn odd_census(t: &Tiling) -> (usize, Vec<i64>) {
    let sides = odd_sides(t);
    (sides.len(), sides)
}

/// Scales a tiling by an odd factor, which maps odd sides to odd sides and
/// even to even.
pub fn scale_tiling(t: &Tiling, m: i64) -> Result<Tiling> {
    if m < 1 {
        return Err(Error::NonPositive(m));
    }
    if m % 2 == 0 {
        return Err(Error::NotOdd(m));
    }
    t.scaled(m)
}

/// Total area of the squares clipped to the region.
pub fn clipped_area(t: &Tiling) -> i128 {
    let region = t.region.bounds();
    t.squares.iter().map(|p| p.bounds().clip(&region).area()).sum()
}
