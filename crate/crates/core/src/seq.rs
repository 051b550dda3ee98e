//! Fibonacci-extended sequences and disjointness certificates.
//!
//! A [`FibSeq`] is an optional literal prefix followed by two seeds and the
//! recurrence `t(n+2) = t(n+1) + t(n)`, all multiplied by a common scale.
//! [`pairwise_disjoint`] proves that several such sequences never share a
//! term: a finite check over the small terms, plus a cyclic interleaving
//! chain that is checked at two consecutive indices and then carried to the
//! whole tail by induction on the recurrence.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{add, mul, Error, Result};

/// The nine-square set that tiles the 66×64 rectangle; also the block of
/// terms that precedes the recurrence in [`a_sequence`].
pub const SEQ: [i64; 9] = [2, 8, 14, 16, 18, 20, 28, 30, 36];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibSeq {
    seed1: i64,
    seed2: i64,
    scale: i64,
    prefix: Vec<i64>,
}

impl FibSeq {
    pub fn new(seed1: i64, seed2: i64) -> Result<FibSeq> {
        FibSeq::with_prefix(seed1, seed2, Vec::new())
    }

    /// `prefix` terms come first and are exempt from the recurrence.
    pub fn with_prefix(seed1: i64, seed2: i64, prefix: Vec<i64>) -> Result<FibSeq> {
        for &v in prefix.iter().chain([seed1, seed2].iter()) {
            if v < 1 {
                return Err(Error::NonPositive(v));
            }
        }
        Ok(FibSeq { seed1, seed2, scale: 1, prefix })
    }

    pub fn seeds(&self) -> (i64, i64) {
        (self.seed1, self.seed2)
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    /// Index of the first seed. The recurrence holds for every `n` with
    /// `n >= recurrence_start()`, i.e. `t(n+2) = t(n+1) + t(n)`.
    pub fn recurrence_start(&self) -> usize {
        self.prefix.len()
    }

    /// Same recurrence with every term multiplied by `k`.
    pub fn scaled(&self, k: i64) -> Result<FibSeq> {
        if k < 1 {
            return Err(Error::NonPositive(k));
        }
        Ok(FibSeq { scale: mul(self.scale, k)?, ..self.clone() })
    }

    /// Term `n` (0-based).
    pub fn term(&self, n: usize) -> Result<i64> {
        if let Some(&v) = self.prefix.get(n) {
            return mul(v, self.scale);
        }
        let (mut a, mut b) = (self.seed1, self.seed2);
        for _ in 0..n - self.prefix.len() {
            let next = add(a, b)?;
            a = b;
            b = next;
        }
        mul(a, self.scale)
    }

    /// The first `n` terms.
    pub fn terms(&self, n: usize) -> Result<Vec<i64>> {
        let mut out = Vec::with_capacity(n);
        for &v in self.prefix.iter().take(n) {
            out.push(mul(v, self.scale)?);
        }
        let (mut a, mut b) = (self.seed1, self.seed2);
        while out.len() < n {
            out.push(mul(a, self.scale)?);
            let next = add(a, b)?;
            a = b;
            b = next;
        }
        Ok(out)
    }
}

/// `terms(seq, n)`: the first `n` terms.
pub fn terms(seq: &FibSeq, n: usize) -> Result<Vec<i64>> {
    seq.terms(n)
}

/// `scale_seq(seq, k)`: every term multiplied by `k`.
pub fn scale_seq(seq: &FibSeq, k: i64) -> Result<FibSeq> {
    seq.scaled(k)
}

/// `A = 2, 8, 14, 16, 18, 20, 28, 30, 36, 64, 130, 194, 324, …`
pub fn a_sequence() -> FibSeq {
    FibSeq::with_prefix(64, 130, SEQ.to_vec()).expect("constant seeds are positive")
}

/// `B = 14, 20, 34, 54, 88, …`
pub fn b_sequence() -> FibSeq {
    FibSeq::new(14, 20).expect("constant seeds are positive")
}

/// `C = 16, 24, 40, 64, 104, …`
pub fn c_sequence() -> FibSeq {
    FibSeq::new(16, 24).expect("constant seeds are positive")
}

/// A sequence with the name used in certificates and rule text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedSeq {
    pub label: String,
    pub seq: FibSeq,
}

impl NamedSeq {
    pub fn new(label: impl Into<String>, seq: FibSeq) -> NamedSeq {
        NamedSeq { label: label.into(), seq }
    }
}

/// One link `lhs < rhs` of the tail chain, evaluated at a concrete index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailCheck {
    /// Human-readable relation, e.g. `"26A(n) < 23A(n+1)"`.
    pub relation: String,
    /// Index substituted for `n` (the index of the chain's first sequence).
    pub n: usize,
    pub lhs: i64,
    pub rhs: i64,
}

impl TailCheck {
    pub fn holds(&self) -> bool {
        self.lhs < self.rhs
    }
}

/// One element of the interleaving chain: sequence `seq` at index `n + offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainLink {
    pub seq: usize,
    pub offset: isize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointnessCertificate {
    pub sequences: Vec<String>,
    /// Horizon requested by the caller.
    pub prefix_horizon: usize,
    /// Every term not larger than this value was materialized and compared.
    pub checked_up_to: i64,
    /// No two sequences share a value up to `checked_up_to`.
    pub prefix_check: bool,
    /// Index of the chain's first sequence where the chain starts.
    pub onset: Option<usize>,
    /// `chain[k]` is the k-th smallest term in each cycle of the tail.
    pub chain: Vec<ChainLink>,
    pub tail_base_checks: Vec<TailCheck>,
    /// Empty when no chain was found.
    pub tail_rule: String,
}

impl DisjointnessCertificate {
    pub fn tail_proven(&self) -> bool {
        !self.chain.is_empty() && self.tail_base_checks.iter().all(TailCheck::holds)
    }

    pub fn is_valid(&self) -> bool {
        self.prefix_check && self.tail_proven()
    }
}

/// Two sequences sharing a term; `first < second` index into the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub value: i64,
    pub first: usize,
    pub second: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Disjointness {
    Certificate(DisjointnessCertificate),
    Counterexample(Counterexample),
}

#[derive(Clone, Copy, Debug)]
struct Entry {
    value: i64,
    seq: usize,
    index: usize,
}

/// Decides whether the sequences are pairwise disjoint.
///
/// Returns the smallest shared value if one exists below the checked bound.
/// Otherwise returns a certificate; it is valid only when an interleaving
/// chain starting at or before `horizon` was found for the tail.
pub fn pairwise_disjoint(seqs: &[NamedSeq], horizon: usize) -> Result<Disjointness> {
    if seqs.len() < 2 {
        return Err(Error::InvalidArgument("need at least two sequences"));
    }
    if horizon < 2 {
        return Err(Error::InvalidArgument("horizon must be at least 2"));
    }
    let m = seqs.len();

    let mut cap = 0;
    for s in seqs {
        cap = cap.max(s.seq.term(horizon + 2)?);
    }

    loop {
        let entries = materialize(seqs, cap, horizon + 2)?;
        if let Some(c) = first_collision(&entries, cap) {
            return Ok(Disjointness::Counterexample(c));
        }

        let Some(start) = find_chain(seqs, &entries, cap, horizon)? else {
            return Ok(Disjointness::Certificate(DisjointnessCertificate {
                sequences: seqs.iter().map(|s| s.label.clone()).collect(),
                prefix_horizon: horizon,
                checked_up_to: cap,
                prefix_check: true,
                onset: None,
                chain: Vec::new(),
                tail_base_checks: Vec::new(),
                tail_rule: String::new(),
            }));
        };

        // Terms before the chain start are only safe if the finite check
        // reached every one of them.
        let mut head_max = 0;
        for e in &entries {
            let chain_index = start[e.seq].index;
            if e.index < chain_index {
                head_max = head_max.max(e.value);
            }
        }
        if head_max > cap {
            cap = head_max;
            continue;
        }

        let base = start[0].index;
        let chain: Vec<ChainLink> =
            start.iter().map(|e| ChainLink { seq: e.seq, offset: e.index as isize - base as isize }).collect();
        let mut checks = Vec::with_capacity(2 * m);
        for t in 0..2 {
            for k in 0..m {
                let (a, b) = (start[k], link_target(&start, k));
                checks.push(TailCheck {
                    relation: format!(
                        "{} < {}",
                        link_name(seqs, &chain[k], 0),
                        link_name(seqs, &chain[(k + 1) % m], if k + 1 == m { 1 } else { 0 })
                    ),
                    n: base + t,
                    lhs: seqs[a.seq].seq.term(a.index + t)?,
                    rhs: seqs[b.seq].seq.term(b.index + t)?,
                });
            }
        }
        let mut rule = String::new();
        for link in &chain {
            rule.push_str(&link_name(seqs, link, 0));
            rule.push_str(" < ");
        }
        rule.push_str(&link_name(seqs, &chain[0], 1));

        return Ok(Disjointness::Certificate(DisjointnessCertificate {
            sequences: seqs.iter().map(|s| s.label.clone()).collect(),
            prefix_horizon: horizon,
            checked_up_to: cap,
            prefix_check: true,
            onset: Some(base),
            chain,
            tail_base_checks: checks,
            tail_rule: rule,
        }));
    }
}

fn link_target(start: &[Entry], k: usize) -> Entry {
    if k + 1 < start.len() {
        start[k + 1]
    } else {
        Entry { index: start[0].index + 1, ..start[0] }
    }
}

fn link_name(seqs: &[NamedSeq], link: &ChainLink, extra: isize) -> String {
    let off = link.offset + extra;
    let label = &seqs[link.seq].label;
    match off {
        0 => format!("{}(n)", label),
        o if o > 0 => format!("{}(n+{})", label, o),
        o => format!("{}(n-{})", label, -o),
    }
}

/// All terms not larger than `cap`, plus at least `min_len` terms of each
/// sequence, sorted by value. Past the seeds every sequence is strictly
/// increasing, so the list is complete up to `cap`.
fn materialize(seqs: &[NamedSeq], cap: i64, min_len: usize) -> Result<Vec<Entry>> {
    let mut entries = Vec::new();
    for (si, s) in seqs.iter().enumerate() {
        let rec = s.seq.recurrence_start();
        let mut n = 0;
        loop {
            let value = s.seq.term(n)?;
            let done = n >= min_len && n > rec + 1 && value > cap;
            entries.push(Entry { value, seq: si, index: n });
            if done {
                break;
            }
            n += 1;
        }
    }
    entries.sort_by_key(|e| (e.value, e.seq, e.index));
    Ok(entries)
}

fn first_collision(entries: &[Entry], cap: i64) -> Option<Counterexample> {
    let mut i = 0;
    while i < entries.len() && entries[i].value <= cap {
        let mut j = i + 1;
        while j < entries.len() && entries[j].value == entries[i].value {
            if entries[j].seq != entries[i].seq {
                let (a, b) = (entries[i].seq, entries[j].seq);
                return Some(Counterexample { value: entries[i].value, first: a.min(b), second: a.max(b) });
            }
            j += 1;
        }
        i = j;
    }
    None
}

/// Finds the earliest run of `m` consecutive merged terms, one per sequence,
/// followed by the successor of the run's first term, such that every link
/// holds at two consecutive indices. Returns the run's entries.
fn find_chain(seqs: &[NamedSeq], entries: &[Entry], cap: i64, horizon: usize) -> Result<Option<Vec<Entry>>> {
    let m = seqs.len();
    let usable: Vec<Entry> =
        entries.iter().copied().filter(|e| e.index >= seqs[e.seq].seq.recurrence_start()).collect();
    'start: for p in 0..usable.len() {
        if p + m >= usable.len() {
            break;
        }
        let run = &usable[p..p + m];
        if run[0].index > horizon || run[0].value > cap {
            continue;
        }
        let mut seen = alloc::vec![false; m];
        for e in run {
            if seen[e.seq] {
                continue 'start;
            }
            seen[e.seq] = true;
        }
        let next = usable[p + m];
        if next.seq != run[0].seq || next.index != run[0].index + 1 {
            continue;
        }
        for k in 0..m {
            let (a, b) = (run[k], link_target(run, k));
            for t in 0..2 {
                if seqs[a.seq].seq.term(a.index + t)? >= seqs[b.seq].seq.term(b.index + t)? {
                    continue 'start;
                }
            }
        }
        return Ok(Some(run.to_vec()));
    }
    Ok(None)
}

/// Smallest `i` with `x[i+1] / x[i] > Φ = (1+√5)/2`, decided exactly:
/// the ratio exceeds Φ iff `2·x[i+1] − x[i] > 0` and
/// `(2·x[i+1] − x[i])² > 5·x[i]²`.
pub fn golden_ratio_filter(sorted_sides: &[i64]) -> Result<Option<usize>> {
    for (i, w) in sorted_sides.windows(2).enumerate() {
        if w[0] >= w[1] {
            return Err(Error::NotAscending { index: i + 1 });
        }
    }
    if let Some(&first) = sorted_sides.first() {
        if first < 1 {
            return Err(Error::NonPositive(first));
        }
    }
    for (i, w) in sorted_sides.windows(2).enumerate() {
        let (a, b) = (w[0] as i128, w[1] as i128);
        let d = 2 * b - a;
        if d > 0 && d * d > 5 * a * a {
            return Ok(Some(i));
        }
    }
    Ok(None)
}
