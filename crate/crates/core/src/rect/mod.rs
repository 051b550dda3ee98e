//! Perfect squared rectangles: complete search, enumeration, Fibonacci
//! extension and odd-count verdicts.

mod search;

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{add, Error, Result};
use crate::seq::SEQ;
use crate::tiling::{area_identity, odd_census, verify, Placement, Region, Tiling};
use search::{Flow, Search};

/// Default number of node expansions before a search gives up.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// The nine sides of the 33×32 perfect rectangle.
pub const MORON_SET: [i64; 9] = [1, 4, 7, 8, 9, 10, 14, 15, 18];

/// Pairwise-distinct positive sides, kept ascending.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquareSet {
    sides: Vec<i64>,
}

impl SquareSet {
    /// Sorts the input; rejects empty input, non-positive and repeated sides.
    pub fn new(mut sides: Vec<i64>) -> Result<SquareSet> {
        if sides.is_empty() {
            return Err(Error::InvalidArgument("a square set needs at least one side"));
        }
        sides.sort_unstable();
        if sides[0] < 1 {
            return Err(Error::NonPositive(sides[0]));
        }
        if let Some(w) = sides.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSide(w[0]));
        }
        Ok(SquareSet { sides })
    }

    pub fn sides(&self) -> &[i64] {
        &self.sides
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    pub fn odd_count(&self) -> usize {
        self.sides.iter().filter(|s| *s % 2 != 0).count()
    }

    pub fn area(&self) -> i128 {
        self.sides.iter().map(|&s| s as i128 * s as i128).sum()
    }

    fn descending(&self) -> Vec<i64> {
        self.sides.iter().rev().copied().collect()
    }
}

/// Why [`solve`] found nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoTiling {
    /// The squares' total area differs from the rectangle's.
    AreaMismatch,
    /// Some square is larger than the shorter rectangle side.
    SideTooLarge(i64),
    /// The search space was exhausted.
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Tiled(Tiling),
    Absent(NoTiling),
}

impl SolveOutcome {
    pub fn tiling(&self) -> Option<&Tiling> {
        match self {
            SolveOutcome::Tiled(t) => Some(t),
            SolveOutcome::Absent(_) => None,
        }
    }

    pub fn into_tiling(self) -> Option<Tiling> {
        match self {
            SolveOutcome::Tiled(t) => Some(t),
            SolveOutcome::Absent(_) => None,
        }
    }
}

/// Tiles the `w × h` rectangle with every square of `set` exactly once, with
/// the default node budget. See [`solve_with_budget`].
pub fn solve(set: &SquareSet, w: i64, h: i64) -> Result<SolveOutcome> {
    solve_with_budget(set, w, h, DEFAULT_BUDGET)
}

/// Complete, deterministic search. `Absent(Exhausted)` means no tiling
/// exists; running out of budget is reported as
/// [`Error::BudgetExhausted`] instead.
pub fn solve_with_budget(set: &SquareSet, w: i64, h: i64, budget: u64) -> Result<SolveOutcome> {
    let region = Region::rect(w, h)?;
    if !area_identity(&set.sides, w, h) {
        return Ok(SolveOutcome::Absent(NoTiling::AreaMismatch));
    }
    let largest = *set.sides.last().expect("square sets are nonempty");
    if largest > w.min(h) {
        return Ok(SolveOutcome::Absent(NoTiling::SideTooLarge(largest)));
    }

    let sides = set.descending();
    let mut search = Search::new(&sides, w, h, budget);
    let mut result = None;
    search.run(&mut |placed| {
        result = Some(placed.to_vec());
        Flow::Stop
    })?;
    Ok(match result {
        Some(squares) => SolveOutcome::Tiled(Tiling::new(region, squares)?),
        None => SolveOutcome::Absent(NoTiling::Exhausted),
    })
}

/// A perfect squared rectangle found by [`enumerate`], with `width >= height`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquaredRect {
    pub set: SquareSet,
    pub width: i64,
    pub height: i64,
    pub tiling: Tiling,
}

/// All perfect squared rectangles of exactly `order` squares with sides at
/// most `max_side`, each reported once up to the symmetries of the rectangle.
pub fn enumerate(order: usize, max_side: i64) -> Result<Vec<SquaredRect>> {
    enumerate_with_budget(order, max_side, DEFAULT_BUDGET)
}

pub fn enumerate_with_budget(order: usize, max_side: i64, budget: u64) -> Result<Vec<SquaredRect>> {
    if order == 0 {
        return Err(Error::InvalidArgument("order must be positive"));
    }
    if max_side < 1 {
        return Err(Error::NonPositive(max_side));
    }
    if order as i64 > max_side {
        return Ok(Vec::new());
    }

    // Keyed by (area, width, sides, canonical placements) for a stable order.
    let mut found: BTreeSet<(i128, i64, Vec<i64>, Canonical)> = BTreeSet::new();
    let mut spent: u64 = 0;
    let mut combo: Vec<i64> = (1..=order as i64).collect();
    loop {
        spent += 1;
        if spent > budget {
            return Err(Error::BudgetExhausted { nodes: budget });
        }
        let set = SquareSet { sides: combo.clone() };
        let area = set.area();
        let largest = combo[order - 1] as i128;
        let mut h = largest;
        while h * h <= area {
            if area % h == 0 {
                let w = area / h;
                let (w, h64) = (w as i64, h as i64);
                let sides = set.descending();
                let mut search = Search::new(&sides, w, h64, budget - spent).with_corner_rule();
                let mut tilings: Vec<Vec<Placement>> = Vec::new();
                search
                    .run(&mut |placed| {
                        tilings.push(placed.to_vec());
                        Flow::Continue
                    })
                    .map_err(|e| match e {
                        Error::BudgetExhausted { .. } => Error::BudgetExhausted { nodes: budget },
                        e => e,
                    })?;
                spent += search.nodes();
                for squares in tilings {
                    let t = Tiling::new(Region::rect(w, h64)?, squares)?;
                    let canon = canonical_form(&t)?;
                    found.insert((area, w, combo.clone(), canon));
                }
            }
            h += 1;
        }
        if !next_combination(&mut combo, max_side) {
            break;
        }
    }

    found
        .into_iter()
        .map(|(_, w, sides, canon)| {
            let h = canon.iter().map(|&(y, _, s)| y + s).max().unwrap_or(0);
            let squares = canon.iter().map(|&(y, x, s)| Placement::new(x, y, s)).collect::<Result<Vec<_>>>()?;
            Ok(SquaredRect {
                set: SquareSet { sides },
                width: w,
                height: h,
                tiling: Tiling::new(Region::rect(w, h)?, squares)?,
            })
        })
        .collect()
}

/// Advances to the next `k`-subset of `1..=n` in lexicographic order.
fn next_combination(combo: &mut [i64], n: i64) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - (k - 1 - i) as i64 {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Placements as `(y, x, side)` triples.
pub type Canonical = Vec<(i64, i64, i64)>;

/// Lexicographically least `(y, x, side)` list over the dihedral images of a
/// rectangle tiling that keep `width >= height`.
pub fn canonical_form(t: &Tiling) -> Result<Canonical> {
    let Region::Rect { width, height } = t.region() else {
        return Err(Error::NotRectangle);
    };
    let (w, h) = (width.max(height), width.min(height));
    let mut best: Option<Vec<(i64, i64, i64)>> = None;
    for swap in [false, true] {
        let base = if swap { t.transposed() } else { t.clone() };
        if base.region() != (Region::Rect { width: w, height: h }) {
            continue;
        }
        for (fx, fy) in [(false, false), (true, false), (false, true), (true, true)] {
            let image = base.mirrored(fx, fy)?;
            let mut key: Vec<(i64, i64, i64)> = image.squares().iter().map(|p| (p.y(), p.x(), p.side())).collect();
            key.sort_unstable();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    Ok(best.unwrap_or_default())
}

/// Appends a square of side `max(w, h)` along the longer edge, giving a
/// `(w+h) × max(w, h)` tiling. The square at the origin stays at the origin;
/// for `w >= h` the result is transposed so that width >= height.
pub fn fib_extend_rect(t: &Tiling) -> Result<Tiling> {
    let Region::Rect { width: w, height: h } = t.region() else {
        return Err(Error::NotRectangle);
    };
    let report = verify(t);
    if let Some(v) = report.violation {
        return Err(Error::NotVerified(v));
    }
    let side = w.max(h);
    if t.squares().iter().any(|p| p.side() == side) {
        return Err(Error::DuplicateSide(side));
    }
    let mut squares = t.squares().to_vec();
    let sum = add(w, h)?;
    if w >= h {
        squares.push(Placement::new(0, h, side)?);
        Ok(Tiling::new(Region::rect(w, sum)?, squares)?.transposed())
    } else {
        squares.push(Placement::new(w, 0, side)?);
        Tiling::new(Region::rect(sum, h)?, squares)
    }
}

/// The 33×32 tiling by [`MORON_SET`], as found by [`solve`].
pub fn moron_tiling() -> Tiling {
    let set = SquareSet::new(MORON_SET.to_vec()).expect("constant set is valid");
    solve(&set, 33, 32).ok().and_then(SolveOutcome::into_tiling).expect("the 33x32 rectangle has a perfect tiling")
}

/// The 66×64 tiling by the nine-square base set of the plane constructions.
pub fn seq_base_tiling() -> Tiling {
    let set = SquareSet::new(SEQ.to_vec()).expect("constant set is valid");
    solve(&set, 66, 64).ok().and_then(SolveOutcome::into_tiling).expect("the 66x64 rectangle has a perfect tiling")
}

/// A verified rectangle tiling whose sides include exactly `k >= 4` odd
/// values: the 33×32 tiling, extended until the odd count reaches `k`.
pub fn witness_for_odd_count(k: usize) -> Result<(SquareSet, Tiling)> {
    if k < 4 {
        return Err(Error::InvalidArgument("odd-count witnesses exist only for k >= 4"));
    }
    let mut t = moron_tiling();
    // Appended sides run odd, odd, even, so the count climbs by at most one.
    while odd_census(&t).0 < k {
        t = fib_extend_rect(&t)?;
    }
    let set = SquareSet::new(t.sides())?;
    Ok((set, t))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RectVerdict {
    /// No set with exactly `odd_count` odd sides tiles any rectangle (with
    /// more than one square); `lemma` numbers the impossibility result.
    Infeasible { odd_count: usize, lemma: u8 },
    Witness {
        odd_count: usize,
        set: SquareSet,
        tiling: Tiling,
        /// Obtained by scaling another witness rather than by extension.
        derived: bool,
    },
}

/// Feasibility of rectangle tilings by sets with exactly `k` odd sides.
pub fn rect_odd_count_verdict(k: usize) -> Result<RectVerdict> {
    match k {
        0 => {
            let tiling = moron_tiling().scaled(2)?;
            let set = SquareSet::new(tiling.sides())?;
            Ok(RectVerdict::Witness { odd_count: 0, set, tiling, derived: true })
        }
        1..=3 => Ok(RectVerdict::Infeasible { odd_count: k, lemma: k as u8 + 3 }),
        _ => {
            let (set, tiling) = witness_for_odd_count(k)?;
            Ok(RectVerdict::Witness { odd_count: k, set, tiling, derived: false })
        }
    }
}

/// Bouwkamp-style text: `WxH` followed by groups of side lengths, one group
/// per run of squares sharing a top edge, in `(y, x)` order.
pub fn bouwkamp(t: &Tiling) -> Result<String> {
    let Region::Rect { width, height } = t.region() else {
        return Err(Error::NotRectangle);
    };
    let mut squares = t.squares().to_vec();
    squares.sort_unstable_by_key(|p| (p.y(), p.x()));
    let mut out = String::new();
    let _ = write!(out, "{}x{} ", width, height);
    let mut prev: Option<Placement> = None;
    for p in &squares {
        match prev {
            Some(q) if q.y() == p.y() && q.right() == p.x() => {
                let _ = write!(out, ",{}", p.side());
            }
            Some(_) => {
                let _ = write!(out, ")({}", p.side());
            }
            None => {
                let _ = write!(out, "({}", p.side());
            }
        }
        prev = Some(*p);
    }
    if prev.is_some() {
        out.push(')');
    }
    Ok(out)
}
