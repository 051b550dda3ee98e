//! Skyline backtracking over distinct squares.
//!
//! The filled part of the rectangle is always a skyline: each column is
//! filled from `y = 0` up to some height. The search repeatedly takes the
//! lowest segment of the skyline (leftmost on ties), which is the smallest
//! uncovered cell in `(y, x)` order, and puts an unused square in its left
//! corner, trying larger sides first.

use alloc::vec::Vec;
use hashbrown::HashSet;

use crate::error::{Error, Result};
use crate::tiling::Placement;

/// Dead skyline states are remembered up to this many entries.
const MEMO_CAP: usize = 1 << 20;

/// Longer edges skip the subset-sum test.
const FLOOR_CHECK_MAX: i64 = 1 << 16;

/// Whether `target` is a sum of distinct values from `sides`. Targets above
/// [`FLOOR_CHECK_MAX`] are assumed reachable.
fn sum_reachable(target: i64, sides: impl Iterator<Item = i64>) -> bool {
    if target > FLOOR_CHECK_MAX {
        return true;
    }
    let t = target as usize;
    if t < 128 {
        let mut reach = 1u128;
        for s in sides {
            if s <= target {
                reach |= reach << s;
            }
        }
        return reach >> t & 1 == 1;
    }
    let mut reach = alloc::vec![0u64; t / 64 + 1];
    reach[0] = 1;
    for s in sides {
        if s > target {
            continue;
        }
        shift_or(&mut reach, s as usize);
        if reach[t / 64] >> (t % 64) & 1 == 1 {
            return true;
        }
    }
    t == 0
}

/// `bits |= bits << k`, restricted to the length of `bits`.
fn shift_or(bits: &mut [u64], k: usize) {
    let (words, rem) = (k / 64, k % 64);
    for i in (words..bits.len()).rev() {
        let mut v = bits[i - words] << rem;
        if rem > 0 && i > words {
            v |= bits[i - words - 1] >> (64 - rem);
        }
        bits[i] |= v;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Segment {
    x: i64,
    width: i64,
    height: i64,
}

/// What the solution callback wants next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Flow {
    Continue,
    Stop,
}

pub(crate) struct Search<'a> {
    width: i64,
    height: i64,
    /// Only search tilings whose origin square is the largest corner square.
    corner_rule: bool,
    /// Descending.
    sides: &'a [i64],
    used: Vec<bool>,
    skyline: Vec<Segment>,
    placed: Vec<Placement>,
    nodes: u64,
    budget: u64,
    dead: HashSet<Vec<i64>>,
}

impl<'a> Search<'a> {
    /// `sides` must be strictly descending and the caller must have checked
    /// the area identity.
    pub(crate) fn new(sides: &'a [i64], width: i64, height: i64, budget: u64) -> Search<'a> {
        Search {
            width,
            height,
            corner_rule: false,
            sides,
            used: alloc::vec![false; sides.len()],
            skyline: alloc::vec![Segment { x: 0, width, height: 0 }],
            placed: Vec::with_capacity(sides.len()),
            nodes: 0,
            budget,
            dead: HashSet::new(),
        }
    }

    /// Every tiling of a rectangle has exactly one image under the
    /// symmetries of the rectangle (up to transposition for squares) with
    /// the largest corner square at the origin. Enumeration only needs that
    /// image.
    pub(crate) fn with_corner_rule(mut self) -> Search<'a> {
        self.corner_rule = true;
        self
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Runs the search, calling `sink` for each complete tiling. Returns
    /// whether any tiling was found.
    pub(crate) fn run(&mut self, sink: &mut dyn FnMut(&[Placement]) -> Flow) -> Result<bool> {
        // The squares along the left wall stack up to the full height.
        let (w, h) = (self.width, self.height);
        if !sum_reachable(h, self.sides.iter().copied().filter(|&s| s <= w)) {
            return Ok(false);
        }
        let (found, _) = self.dfs(sink)?;
        Ok(found)
    }

    /// Returns `(found, stopped)`.
    fn dfs(&mut self, sink: &mut dyn FnMut(&[Placement]) -> Flow) -> Result<(bool, bool)> {
        if self.placed.len() == self.sides.len() {
            debug_assert!(self.skyline.len() == 1 && self.skyline[0].height == self.height);
            let flow = sink(&self.placed);
            return Ok((true, flow == Flow::Stop));
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExhausted { nodes: self.budget });
        }

        if !self.floors_fillable() {
            return Ok((false, false));
        }
        let key = self.state_key();
        if self.dead.contains(&key) {
            return Ok((false, false));
        }

        let (seg_idx, seg) = self.lowest_segment();
        let mut found = false;
        for i in 0..self.sides.len() {
            if self.used[i] {
                continue;
            }
            let s = self.sides[i];
            if s > seg.width || seg.height + s > self.height {
                continue;
            }
            let origin = self.placed.first().map(Placement::side);
            if self.corner_rule && origin.is_some_and(|o| s > o) && self.at_far_corner(seg.x, seg.height, s) {
                continue;
            }
            let rest = seg.width - s;
            if rest > 0 && rest < self.smallest_unused_except(i) {
                continue;
            }

            let saved = self.skyline.clone();
            self.place(seg_idx, s);
            self.used[i] = true;
            self.placed.push(Placement::new(seg.x, seg.height, s)?);

            let outcome = self.dfs(sink);

            self.placed.pop();
            self.used[i] = false;
            self.skyline = saved;

            let (f, stop) = outcome?;
            found |= f;
            if stop {
                return Ok((found, true));
            }
        }

        if !found && self.dead.len() < MEMO_CAP {
            self.dead.insert(key);
        }
        Ok((found, false))
    }

    fn lowest_segment(&self) -> (usize, Segment) {
        let mut best = 0;
        for (i, s) in self.skyline.iter().enumerate() {
            if s.height < self.skyline[best].height {
                best = i;
            }
        }
        (best, self.skyline[best])
    }

    /// A segment lower than both neighbours (or walls) is covered exactly by
    /// the squares that will rest on it, so its width must be a sum of
    /// distinct unused sides fitting under the ceiling.
    fn floors_fillable(&self) -> bool {
        let n = self.skyline.len();
        let smallest = self.smallest_unused_except(usize::MAX);
        for i in 0..n {
            let seg = self.skyline[i];
            // Cells just above any segment need a square no taller than the room left.
            let room = self.height - seg.height;
            if room > 0 && room < smallest {
                return false;
            }
            let left_higher = i == 0 || self.skyline[i - 1].height > seg.height;
            let right_higher = i + 1 == n || self.skyline[i + 1].height > seg.height;
            if left_higher && right_higher && !self.width_fillable(seg) {
                return false;
            }
        }
        true
    }

    fn width_fillable(&self, seg: Segment) -> bool {
        let room = self.height - seg.height;
        let unused = (0..self.sides.len()).filter(|&j| !self.used[j]).map(|j| self.sides[j]);
        sum_reachable(seg.width, unused.filter(|&s| s <= room))
    }

    fn at_far_corner(&self, x: i64, y: i64, s: i64) -> bool {
        let right = x + s == self.width;
        let top = y + s == self.height;
        (right && y == 0) || (x == 0 && top) || (right && top)
    }

    fn smallest_unused_except(&self, skip: usize) -> i64 {
        (0..self.sides.len()).rev().find(|&j| j != skip && !self.used[j]).map_or(i64::MAX, |j| self.sides[j])
    }

    fn place(&mut self, idx: usize, s: i64) {
        let seg = self.skyline[idx];
        let raised = Segment { x: seg.x, width: s, height: seg.height + s };
        if s == seg.width {
            self.skyline[idx] = raised;
        } else {
            self.skyline[idx] = Segment { x: seg.x + s, width: seg.width - s, height: seg.height };
            self.skyline.insert(idx, raised);
        }
        // Merge equal neighbours around the raised segment.
        if idx + 1 < self.skyline.len() && self.skyline[idx + 1].height == self.skyline[idx].height {
            self.skyline[idx].width += self.skyline[idx + 1].width;
            self.skyline.remove(idx + 1);
        }
        if idx > 0 && self.skyline[idx - 1].height == self.skyline[idx].height {
            self.skyline[idx - 1].width += self.skyline[idx].width;
            self.skyline.remove(idx);
        }
    }

    fn state_key(&self) -> Vec<i64> {
        let mut key = Vec::with_capacity(2 * self.skyline.len() + self.used.len() / 64 + 1);
        for s in &self.skyline {
            key.push(s.width);
            key.push(s.height);
        }
        key.push(-1);
        for chunk in self.used.chunks(63) {
            let mut bits = 0i64;
            for (k, &u) in chunk.iter().enumerate() {
                if u {
                    bits |= 1 << k;
                }
            }
            key.push(bits);
        }
        key
    }
}
