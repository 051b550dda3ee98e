//! Verified finite patches of tilings of the whole plane.
//!
//! Each construction splits the plane into a small central cluster of odd
//! squares and four quadrants. Every quadrant is filled by a whirl: a seed
//! rectangle anchored at the quadrant corner that grows by appending squares
//! alternately along the two open directions. The appended sides follow the
//! Fibonacci recurrence, so each quadrant's sides come from one sequence of
//! [`crate::seq`], and the sequences are certified pairwise disjoint.

use alloc::vec::Vec;

use crate::error::{add, mul, sub, Error, Result};
use crate::rect::seq_base_tiling;
use crate::seq::{a_sequence, b_sequence, c_sequence, pairwise_disjoint, Disjointness, NamedSeq};
use crate::tiling::{verify, Bounds, Placement, Region, Tiling};

/// Default scales of the base rectangle in the four pinwheel quadrants,
/// counterclockwise from the `(+, +)` quadrant.
pub const PINWHEEL_SCALES: [i64; 4] = [23, 24, 25, 26];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dir {
    Pos,
    Neg,
}

/// The quarter-plane opening from `corner` in the directions `(dir_x, dir_y)`.
///
/// With half-open cells, a `Neg` direction covers coordinates strictly below
/// the corner and a `Pos` direction covers the corner and above.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Quadrant {
    pub corner: (i64, i64),
    pub dir_x: Dir,
    pub dir_y: Dir,
}

impl Quadrant {
    pub fn new(corner: (i64, i64), dir_x: Dir, dir_y: Dir) -> Quadrant {
        Quadrant { corner, dir_x, dir_y }
    }

    /// Local cell interval `[lo, hi)` along one axis covered by the global
    /// interval `[a, b)`; `hi <= 0` means no overlap with the quadrant.
    fn local_span(c: i64, dir: Dir, a: i64, b: i64) -> Result<(i64, i64)> {
        match dir {
            Dir::Pos => Ok((sub(a, c)?, sub(b, c)?)),
            Dir::Neg => Ok((sub(c, b)?, sub(c, a)?)),
        }
    }

    fn to_global(c: i64, dir: Dir, u: i64, s: i64) -> Result<i64> {
        match dir {
            Dir::Pos => add(c, u),
            Dir::Neg => sub(sub(c, u)?, s),
        }
    }

    /// Maps a local square `[u, u+s) × [v, v+s)` into the plane.
    fn place(&self, u: i64, v: i64, s: i64) -> Result<Placement> {
        let x = Quadrant::to_global(self.corner.0, self.dir_x, u, s)?;
        let y = Quadrant::to_global(self.corner.1, self.dir_y, v, s)?;
        Placement::new(x, y, s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Horizontal,
    Vertical,
}

/// The rectangle a whirl grows from, in quadrant-local units before scaling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WhirlSeed {
    /// A verified rectangle tiling whose squares belong to the whirl.
    Tiled(Tiling),
    /// An untiled `width × height` hole, covered by other parts of the
    /// construction.
    Open { width: i64, height: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhirlSpec {
    seed: WhirlSeed,
    scale: i64,
    first_growth_axis: Axis,
}

impl WhirlSpec {
    pub fn new(seed: WhirlSeed, scale: i64, first_growth_axis: Axis) -> Result<WhirlSpec> {
        if scale < 1 {
            return Err(Error::NonPositive(scale));
        }
        match &seed {
            WhirlSeed::Tiled(t) => {
                if !matches!(t.region(), Region::Rect { .. }) {
                    return Err(Error::NotRectangle);
                }
                if let Some(v) = verify(t).violation {
                    return Err(Error::NotVerified(v));
                }
            }
            WhirlSeed::Open { width, height } => {
                Region::rect(*width, *height)?;
            }
        }
        Ok(WhirlSpec { seed, scale, first_growth_axis })
    }

    fn seed_size(&self) -> (i64, i64) {
        match &self.seed {
            WhirlSeed::Tiled(t) => {
                let b = t.region().bounds();
                (b.x1, b.y1)
            }
            WhirlSeed::Open { width, height } => (*width, *height),
        }
    }
}

/// Squares of the whirl in quadrant `q` that meet `window`, sorted by `(y, x)`.
///
/// The seed (scaled) sits at the quadrant corner; squares of sides
/// `h, w+h, w+2h, …` (times the scale) are appended alternately along the
/// two growth axes until the grown rectangle covers `window ∩ q`, plus one
/// more step. The union of the result covers `window ∩ q` minus an open seed.
pub fn quadrant_whirl_patch(spec: &WhirlSpec, q: &Quadrant, window: &Region) -> Result<Vec<Placement>> {
    let win = window.bounds();
    let (_, u_hi) = Quadrant::local_span(q.corner.0, q.dir_x, win.x0, win.x1)?;
    let (_, v_hi) = Quadrant::local_span(q.corner.1, q.dir_y, win.y0, win.y1)?;
    if u_hi <= 0 || v_hi <= 0 {
        return Ok(Vec::new());
    }

    let mut local: Vec<(i64, i64, i64)> = Vec::new();
    if let WhirlSeed::Tiled(t) = &spec.seed {
        for p in t.squares() {
            local.push((mul(p.x(), spec.scale)?, mul(p.y(), spec.scale)?, mul(p.side(), spec.scale)?));
        }
    }

    let (w, h) = spec.seed_size();
    let (mut width, mut height) = (mul(w, spec.scale)?, mul(h, spec.scale)?);
    let mut axis = spec.first_growth_axis;
    let mut margin = 1;
    loop {
        let covered = width >= u_hi && height >= v_hi;
        if covered {
            if margin == 0 {
                break;
            }
            margin -= 1;
        }
        match axis {
            Axis::Horizontal => {
                local.push((width, 0, height));
                width = add(width, height)?;
                axis = Axis::Vertical;
            }
            Axis::Vertical => {
                local.push((0, height, width));
                height = add(height, width)?;
                axis = Axis::Horizontal;
            }
        }
    }

    let mut out = Vec::new();
    for (u, v, s) in local {
        let p = q.place(u, v, s)?;
        if p.bounds().intersects(&win) {
            out.push(p);
        }
    }
    sort_yx(&mut out);
    Ok(out)
}

fn sort_yx(squares: &mut [Placement]) {
    squares.sort_unstable_by_key(|p| (p.y(), p.x(), p.side()));
}

fn window_bounds(window: &Region) -> Result<Bounds> {
    let b = window.bounds();
    if b.is_empty() {
        return Err(Error::EmptyWindow);
    }
    Ok(b)
}

fn window_region(b: &Bounds) -> Result<Region> {
    Region::window(b.x0, b.y0, b.x1, b.y1)
}

/// The one-odd construction with the default scales; see
/// [`pinwheel_patch_with_scales`].
pub fn pinwheel_patch(x: i64, window: &Region) -> Result<Tiling> {
    pinwheel_patch_with_scales(x, PINWHEEL_SCALES, window)
}

/// A square of odd side `x` at `[0, x)²` with four spokes turning
/// counterclockwise around it. The quadrants have corners `(x, 0)`, `(x, x)`,
/// `(0, x)` and `(0, 0)`, opening `(+,+)`, `(−,+)`, `(−,−)` and `(+,−)`, and are
/// filled by whirls of the 66×64 base rectangle scaled by `scales[0..4]`.
///
/// Fails with [`Error::SidesCollide`] if the scaled sequences are not
/// certified disjoint.
pub fn pinwheel_patch_with_scales(x: i64, scales: [i64; 4], window: &Region) -> Result<Tiling> {
    if x < 1 {
        return Err(Error::NonPositive(x));
    }
    if x % 2 == 0 {
        return Err(Error::NotOdd(x));
    }
    let win = window_bounds(window)?;

    let a = a_sequence();
    let mut named = Vec::with_capacity(4);
    for &k in &scales {
        named.push(NamedSeq::new(alloc::format!("{}A", k), a.scaled(k)?));
    }
    require_disjoint(&named)?;

    let base = seq_base_tiling();
    let quadrants = [
        Quadrant::new((x, 0), Dir::Pos, Dir::Pos),
        Quadrant::new((x, x), Dir::Neg, Dir::Pos),
        Quadrant::new((0, x), Dir::Neg, Dir::Neg),
        Quadrant::new((0, 0), Dir::Pos, Dir::Neg),
    ];

    let mut squares = Vec::new();
    let center = Placement::new(0, 0, x)?;
    if center.bounds().intersects(&win) {
        squares.push(center);
    }
    for (q, &k) in quadrants.iter().zip(&scales) {
        let spec = WhirlSpec::new(WhirlSeed::Tiled(base.clone()), k, Axis::Horizontal)?;
        squares.extend(quadrant_whirl_patch(&spec, q, window)?);
    }
    sort_yx(&mut squares);
    Tiling::new(window_region(&win)?, squares)
}

/// The three odd squares of the three-odd construction as `(x, y, side)`.
pub const THREE_ODDS_CLUSTER: [(i64, i64, i64); 3] = [(-3, 0, 3), (-3, 3, 11), (3, 14, 5)];

/// The construction with exactly three odd sides, 3, 5 and 11.
///
/// Quadrant layout (corner, opening, filling):
/// - `(3, 19)`, `(+,+)`: 66×64 base scaled by 23;
/// - `(3, 0)`, `(−,+)`: open 6×14 seed, sides 14, 20, 34, …;
/// - `(0, 0)`, `(−,−)`: 66×64 base scaled by 24;
/// - `(0, 19)`, `(+,−)`: open 8×16 seed, sides 16, 24, 40, ….
///
/// The two seeded quadrants overlap in `[0, 3) × [0, 19)`. Each point of that
/// strip outside both seeds would be covered twice; here the seeds cover the
/// whole strip and the odd squares cover exactly the points lying in both
/// seeds or in one seed outside the strip.
pub fn three_odds_patch(window: &Region) -> Result<Tiling> {
    let win = window_bounds(window)?;
    let a = a_sequence();
    require_disjoint(&[
        NamedSeq::new("B", b_sequence()),
        NamedSeq::new("23A", a.scaled(23)?),
        NamedSeq::new("24A", a.scaled(24)?),
        NamedSeq::new("C", c_sequence()),
    ])?;

    let base = seq_base_tiling();
    let parts = [
        (
            Quadrant::new((3, 19), Dir::Pos, Dir::Pos),
            WhirlSpec::new(WhirlSeed::Tiled(base.clone()), 23, Axis::Horizontal)?,
        ),
        (
            Quadrant::new((3, 0), Dir::Neg, Dir::Pos),
            WhirlSpec::new(WhirlSeed::Open { width: 6, height: 14 }, 1, Axis::Horizontal)?,
        ),
        (Quadrant::new((0, 0), Dir::Neg, Dir::Neg), WhirlSpec::new(WhirlSeed::Tiled(base), 24, Axis::Horizontal)?),
        (
            Quadrant::new((0, 19), Dir::Pos, Dir::Neg),
            WhirlSpec::new(WhirlSeed::Open { width: 8, height: 16 }, 1, Axis::Horizontal)?,
        ),
    ];

    let mut squares = Vec::new();
    for &(x, y, s) in &THREE_ODDS_CLUSTER {
        let p = Placement::new(x, y, s)?;
        if p.bounds().intersects(&win) {
            squares.push(p);
        }
    }
    for (q, spec) in &parts {
        squares.extend(quadrant_whirl_patch(spec, q, window)?);
    }
    sort_yx(&mut squares);
    Tiling::new(window_region(&win)?, squares)
}

fn require_disjoint(seqs: &[NamedSeq]) -> Result<()> {
    match pairwise_disjoint(seqs, 16)? {
        Disjointness::Certificate(c) if c.is_valid() => Ok(()),
        Disjointness::Certificate(c) => Err(Error::SidesCollide { value: c.checked_up_to }),
        Disjointness::Counterexample(c) => Err(Error::SidesCollide { value: c.value }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneConstruction {
    Pinwheel,
    ThreeOdds,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneVerdict {
    Possible(PlaneConstruction),
    /// Recorded result without constructive content; `lemma` numbers it.
    Impossible {
        lemma: u8,
    },
    Unknown,
}

/// Whether some set with exactly `k` odd sides (and otherwise even sides)
/// tiles the plane.
pub fn plane_odd_count_verdict(k: usize) -> PlaneVerdict {
    match k {
        1 => PlaneVerdict::Possible(PlaneConstruction::Pinwheel),
        2 => PlaneVerdict::Impossible { lemma: 2 },
        3 => PlaneVerdict::Possible(PlaneConstruction::ThreeOdds),
        _ => PlaneVerdict::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::odd_census;

    fn win(x0: i64, y0: i64, x1: i64, y1: i64) -> Region {
        Region::window(x0, y0, x1, y1).unwrap()
    }

    #[test]
    fn whirl_window_inside_base() {
        let spec = WhirlSpec::new(WhirlSeed::Tiled(seq_base_tiling()), 23, Axis::Horizontal).unwrap();
        let q = Quadrant::new((0, 0), Dir::Pos, Dir::Pos);
        let out = quadrant_whirl_patch(&spec, &q, &win(0, 0, 100, 100)).unwrap();
        assert!(!out.is_empty());
        assert!(out.iter().all(|p| p.right() <= 1518 && p.bottom() <= 1472));
    }

    #[test]
    fn whirl_reaches_first_growth_squares() {
        let spec = WhirlSpec::new(WhirlSeed::Tiled(seq_base_tiling()), 23, Axis::Horizontal).unwrap();
        let q = Quadrant::new((0, 0), Dir::Pos, Dir::Pos);
        let out = quadrant_whirl_patch(&spec, &q, &win(0, 0, 5000, 5000)).unwrap();
        let sides: Vec<i64> = out.iter().map(|p| p.side()).collect();
        assert!(sides.contains(&1472));
        assert!(sides.contains(&2990));
        assert!(out.contains(&Placement::new(1518, 0, 1472).unwrap()));
        assert!(out.contains(&Placement::new(0, 1472, 2990).unwrap()));
    }

    #[test]
    fn whirl_disjoint_window_is_empty() {
        let spec = WhirlSpec::new(WhirlSeed::Open { width: 6, height: 14 }, 1, Axis::Horizontal).unwrap();
        let q = Quadrant::new((0, 0), Dir::Pos, Dir::Pos);
        assert!(quadrant_whirl_patch(&spec, &q, &win(-50, -50, 0, 0)).unwrap().is_empty());
        let q = Quadrant::new((0, 0), Dir::Neg, Dir::Neg);
        assert!(quadrant_whirl_patch(&spec, &q, &win(0, 0, 10, 10)).unwrap().is_empty());
    }

    #[test]
    fn open_seed_whirl_sides() {
        let spec = WhirlSpec::new(WhirlSeed::Open { width: 6, height: 14 }, 1, Axis::Horizontal).unwrap();
        let q = Quadrant::new((0, 0), Dir::Pos, Dir::Pos);
        let out = quadrant_whirl_patch(&spec, &q, &win(0, 0, 60, 60)).unwrap();
        let mut sides: Vec<i64> = out.iter().map(|p| p.side()).collect();
        sides.sort_unstable();
        assert_eq!(&sides[..4], &[14, 20, 34, 54]);
    }

    #[test]
    fn pinwheel_rejects_even_center() {
        assert_eq!(pinwheel_patch(8, &win(0, 0, 10, 10)), Err(Error::NotOdd(8)));
    }

    #[test]
    fn pinwheel_inside_center_square() {
        let t = pinwheel_patch(9, &win(2, 2, 7, 7)).unwrap();
        assert_eq!(t.squares(), &[Placement::new(0, 0, 9).unwrap()]);
        assert!(verify(&t).passed);
    }

    #[test]
    fn pinwheel_rejects_colliding_scales() {
        let r = pinwheel_patch_with_scales(9, [23, 46, 25, 26], &win(0, 0, 10, 10));
        assert!(matches!(r, Err(Error::SidesCollide { .. })));
    }

    #[test]
    fn three_odds_inside_eleven() {
        let t = three_odds_patch(&win(0, 5, 6, 12)).unwrap();
        assert_eq!(t.squares(), &[Placement::new(-3, 3, 11).unwrap()]);
    }

    #[test]
    fn three_odds_small_window_verifies() {
        let t = three_odds_patch(&win(-40, -40, 40, 40)).unwrap();
        let r = verify(&t);
        assert!(r.passed, "{:?}", r.violation);
        assert_eq!(odd_census(&t), (3, alloc::vec![3, 5, 11]));
    }

    #[test]
    fn verdicts() {
        assert_eq!(plane_odd_count_verdict(1), PlaneVerdict::Possible(PlaneConstruction::Pinwheel));
        assert_eq!(plane_odd_count_verdict(2), PlaneVerdict::Impossible { lemma: 2 });
        assert_eq!(plane_odd_count_verdict(3), PlaneVerdict::Possible(PlaneConstruction::ThreeOdds));
        assert_eq!(plane_odd_count_verdict(0), PlaneVerdict::Unknown);
        assert_eq!(plane_odd_count_verdict(5), PlaneVerdict::Unknown);
    }
}
