//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sqtile_core::plane::{pinwheel_patch, plane_odd_count_verdict, three_odds_patch, PlaneConstruction, PlaneVerdict};
use sqtile_core::rect::{
    enumerate, fib_extend_rect, moron_tiling, rect_odd_count_verdict, seq_base_tiling, solve, witness_for_odd_count,
    RectVerdict, SolveOutcome, SquareSet, MORON_SET,
};
use sqtile_core::seq::{a_sequence, b_sequence, c_sequence, pairwise_disjoint, Disjointness, NamedSeq, SEQ};
use sqtile_core::{area_identity, odd_census, verify, Placement, Region, Tiling, Violation};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, format!("{} took {:?}, limit {:?}", what, took, limit))?;
    Ok(took)
}

fn set(sides: &[i64]) -> SquareSet {
    SquareSet::new(sides.to_vec()).unwrap()
}

fn solved(sides: &[i64], w: i64, h: i64) -> Result<Tiling, String> {
    match solve(&set(sides), w, h).map_err(|e| e.to_string())? {
        SolveOutcome::Tiled(t) => Ok(t),
        SolveOutcome::Absent(why) => Err(format!("no tiling: {:?}", why)),
    }
}

fn c1_moron() -> Outcome {
    let start = Instant::now();
    let t = solved(&MORON_SET, 33, 32)?;
    let report = verify(&t);
    let took = within(start, Duration::from_secs(1), "solve + verify")?;
    ensure(report.passed, format!("verify failed: {:?}", report.violation))?;
    let census = odd_census(&t);
    ensure(census == (4, vec![1, 7, 9, 15]), format!("odd census {:?}", census))?;
    Ok(format!("33x32 tiled and verified in {:?}, odd sides [1, 7, 9, 15]", took))
}

fn c2_seq_base() -> Outcome {
    let start = Instant::now();
    let t = solved(&SEQ, 66, 64)?;
    let report = verify(&t);
    let took = within(start, Duration::from_secs(1), "solve + verify")?;
    ensure(report.passed, format!("verify failed: {:?}", report.violation))?;
    let doubled: Vec<i64> = MORON_SET.iter().map(|s| 2 * s).collect();
    ensure(SEQ.to_vec() == doubled, "base set is not twice the 33x32 set")?;
    let area: i64 = SEQ.iter().map(|s| s * s).sum();
    ensure(area == 4224 && t.region().area() == i128::from(area), format!("area {}", area))?;
    ensure(area_identity(&SEQ, 66, 64), "area identity")?;
    Ok(format!("66x64 tiled and verified in {:?}, area 4224", took))
}

fn c3_table() -> Outcome {
    const A_ROW: [i64; 12] = [2, 8, 14, 16, 18, 20, 28, 30, 36, 64, 130, 194];
    // Rows as printed, including the misprinted 670.
    const PRINTED: [(i64, [i64; 12]); 4] = [
        (23, [46, 184, 322, 368, 414, 460, 644, 690, 828, 1472, 2990, 4462]),
        (24, [48, 192, 336, 384, 432, 480, 670, 720, 864, 1536, 3120, 4656]),
        (25, [50, 200, 350, 400, 450, 500, 700, 750, 900, 1600, 3250, 4850]),
        (26, [52, 208, 364, 416, 468, 520, 728, 780, 936, 1664, 3380, 5044]),
    ];
    let a = a_sequence();
    let base = a.terms(12).map_err(|e| e.to_string())?;
    ensure(base == A_ROW, format!("a_n row {:?}", base))?;

    let mut deviations = Vec::new();
    for (k, row) in PRINTED {
        let got = a.scaled(k).and_then(|s| s.terms(12)).map_err(|e| e.to_string())?;
        for (i, (&g, &p)) in got.iter().zip(row.iter()).enumerate() {
            if g != p {
                deviations.push((k, i, g, p));
            }
        }
    }
    ensure(deviations == vec![(24, 6, 672, 670)], format!("unexpected deviations {:?}", deviations))?;

    // The inline 23A listing has 1742 where the table has 1472.
    let t9 = a.scaled(23).and_then(|s| s.term(9)).map_err(|e| e.to_string())?;
    ensure(t9 == 1472 && t9 != 1742, format!("23A term 9 is {}", t9))?;
    Ok("all 48 scaled terms match except 24*28 = 672 (printed 670); 23*64 = 1472 (inline 1742)".into())
}

fn brute_force_collision(seqs: &[NamedSeq], n: usize) -> Result<Option<i64>, String> {
    let mut seen: std::collections::BTreeMap<i64, usize> = Default::default();
    for (i, s) in seqs.iter().enumerate() {
        for v in s.seq.terms(n).map_err(|e| e.to_string())? {
            if let Some(&j) = seen.get(&v) {
                if j != i {
                    return Ok(Some(v));
                }
            }
            seen.insert(v, i);
        }
    }
    Ok(None)
}

/// True if `order` lists sequence indices whose chain is a rotation of it.
fn chain_rotation_of(chain: &[usize], order: &[usize]) -> bool {
    (0..order.len()).any(|r| (0..order.len()).all(|k| chain[k] == order[(k + r) % order.len()]))
}

fn c4_certificates() -> Outcome {
    let a = a_sequence();
    let scaled = |k: i64| a.scaled(k).unwrap();
    let four_a: Vec<NamedSeq> = [23, 24, 25, 26].iter().map(|&k| NamedSeq::new(format!("{}A", k), scaled(k))).collect();
    let mixed = vec![
        NamedSeq::new("B", b_sequence()),
        NamedSeq::new("23A", scaled(23)),
        NamedSeq::new("24A", scaled(24)),
        NamedSeq::new("C", c_sequence()),
    ];

    let mut notes = Vec::new();
    for (name, seqs, order) in [("{23A..26A}", &four_a, [0usize, 1, 2, 3]), ("{B,23A,24A,C}", &mixed, [0, 1, 2, 3])] {
        let cert = match pairwise_disjoint(seqs, 16).map_err(|e| e.to_string())? {
            Disjointness::Certificate(c) => c,
            Disjointness::Counterexample(c) => return Err(format!("{}: counterexample {:?}", name, c)),
        };
        ensure(cert.is_valid(), format!("{}: certificate not valid: {:?}", name, cert))?;
        let chain: Vec<usize> = cert.chain.iter().map(|l| l.seq).collect();
        ensure(chain_rotation_of(&chain, &order), format!("{}: chain order {:?}", name, chain))?;
        let onset = cert.onset.unwrap();
        ensure(onset <= 16, format!("{}: onset {}", name, onset))?;
        // The recurrence carries each link forward; check it directly too.
        for t in 0..50 {
            for (k, link) in cert.chain.iter().enumerate() {
                let next = &cert.chain[(k + 1) % chain.len()];
                let wrap = if k + 1 == chain.len() { 1 } else { 0 };
                let n = onset + t;
                let lhs = seqs[link.seq].seq.term((n as isize + link.offset) as usize).unwrap();
                let rhs = seqs[next.seq].seq.term((n as isize + next.offset + wrap) as usize).unwrap();
                ensure(lhs < rhs, format!("{}: link {} fails at n = {}", name, k, n))?;
            }
        }
        ensure(brute_force_collision(seqs, 64)?.is_none(), format!("{}: collision among 64 terms", name))?;
        notes.push(format!("{} onset {} rule {}", name, onset, cert.tail_rule));
    }
    Ok(notes.join("; "))
}

fn c5_witness_chain() -> Outcome {
    let expected = [(4usize, 33i64, 32i64), (5, 65, 33), (6, 98, 65), (7, 261, 163)];
    for (k, w, h) in expected {
        let (set, t) = witness_for_odd_count(k).map_err(|e| e.to_string())?;
        ensure(t.region() == Region::rect(w, h).unwrap(), format!("k = {}: region {:?}", k, t.region()))?;
        let report = verify(&t);
        ensure(report.passed, format!("k = {}: {:?}", k, report.violation))?;
        ensure(odd_census(&t).0 == k && set.odd_count() == k, format!("k = {}: census {:?}", k, odd_census(&t)))?;
    }

    let mut t = moron_tiling();
    let mut appended = Vec::new();
    let mut reached_k7 = None;
    let mut step = 0;
    while reached_k7.is_none_or(|at| step < at + 30) {
        let next = fib_extend_rect(&t).map_err(|e| e.to_string())?;
        let new_side = next.sides().into_iter().find(|s| !t.sides().contains(s)).unwrap();
        appended.push(new_side);
        t = next;
        step += 1;
        if reached_k7.is_none() && t.region() == Region::rect(261, 163).unwrap() {
            reached_k7 = Some(step);
        }
        ensure(verify(&t).passed, format!("extension {} fails verification", step))?;
    }
    for (i, s) in appended.iter().enumerate() {
        let want_odd = i % 3 != 2;
        ensure((s % 2 != 0) == want_odd, format!("appended side {} = {} breaks the parity pattern", i, s))?;
    }
    Ok(format!(
        "k = 4..7 verified; {} extensions (30 past 261x163) follow odd, odd, even; first sides {:?}",
        appended.len(),
        &appended[..6]
    ))
}

fn random_restricted_set(rng: &mut ChaCha8Rng) -> Vec<i64> {
    let odds: Vec<i64> = (1..=24).filter(|s| s % 2 == 1).collect();
    let evens: Vec<i64> = (1..=24).filter(|s| s % 2 == 0).collect();
    let n_odd = rng.gen_range(1..=3usize);
    let size = rng.gen_range(n_odd.max(2)..=7usize);
    let mut sides: Vec<i64> = odds.choose_multiple(rng, n_odd).copied().collect();
    sides.extend(evens.choose_multiple(rng, size - n_odd).copied());
    sides.sort_unstable();
    sides
}

fn c6_impossibility() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let start = Instant::now();
    let mut rects = 0;
    for _ in 0..200 {
        let sides = random_restricted_set(&mut rng);
        let odd = sides.iter().filter(|s| *s % 2 == 1).count();
        ensure((1..=3).contains(&odd) && sides.len() >= 2 && sides.len() <= 7, "bad sample")?;
        let area: i64 = sides.iter().map(|s| s * s).sum();
        let largest = *sides.last().unwrap();
        for h in 1..=area {
            if h * h > area {
                break;
            }
            if area % h != 0 || h < largest {
                continue;
            }
            let w = area / h;
            rects += 1;
            match solve(&set(&sides), w, h).map_err(|e| e.to_string())? {
                SolveOutcome::Absent(_) => {}
                SolveOutcome::Tiled(_) => return Err(format!("{:?} tiles {}x{}", sides, w, h)),
            }
        }
    }
    let took = within(start, Duration::from_secs(60), "200 sets")?;
    Ok(format!("200 sets, {} area-compatible rectangles, all absent, {:?}", rects, took))
}

fn c7_pinwheel() -> Outcome {
    let start = Instant::now();
    let win = Region::window(-3000, -3000, 3000, 3000).unwrap();
    let t = pinwheel_patch(9, &win).map_err(|e| e.to_string())?;
    let report = verify(&t);
    let took = within(start, Duration::from_secs(5), "pinwheel")?;
    ensure(report.passed, format!("{:?}", report.violation))?;
    ensure(odd_census(&t) == (1, vec![9]), format!("census {:?}", odd_census(&t)))?;
    Ok(format!("{} squares verified in {:?}, odd sides [9]", t.squares().len(), took))
}

fn c8_three_odds() -> Outcome {
    let start = Instant::now();
    let win = Region::window(-2000, -2000, 2000, 2000).unwrap();
    let t = three_odds_patch(&win).map_err(|e| e.to_string())?;
    let report = verify(&t);
    let took = within(start, Duration::from_secs(5), "three odds")?;
    ensure(report.passed, format!("{:?}", report.violation))?;
    ensure(odd_census(&t) == (3, vec![3, 5, 11]), format!("census {:?}", odd_census(&t)))?;
    Ok(format!("{} squares verified in {:?}, odd sides [3, 5, 11]", t.squares().len(), took))
}

fn c9_verdicts() -> Outcome {
    ensure(plane_odd_count_verdict(1) == PlaneVerdict::Possible(PlaneConstruction::Pinwheel), "plane k = 1")?;
    ensure(plane_odd_count_verdict(2) == PlaneVerdict::Impossible { lemma: 2 }, "plane k = 2")?;
    ensure(plane_odd_count_verdict(3) == PlaneVerdict::Possible(PlaneConstruction::ThreeOdds), "plane k = 3")?;
    for k in [0, 4, 5, 20, 1000] {
        ensure(plane_odd_count_verdict(k) == PlaneVerdict::Unknown, format!("plane k = {}", k))?;
    }
    for k in 1..=3usize {
        let v = rect_odd_count_verdict(k).map_err(|e| e.to_string())?;
        ensure(v == RectVerdict::Infeasible { odd_count: k, lemma: k as u8 + 3 }, format!("rect k = {}: {:?}", k, v))?;
    }
    for k in 4..=20usize {
        match rect_odd_count_verdict(k).map_err(|e| e.to_string())? {
            RectVerdict::Witness { odd_count, set, tiling, .. } => {
                ensure(odd_count == k, format!("rect k = {}: reported {}", k, odd_count))?;
                let report = verify(&tiling);
                ensure(report.passed, format!("rect k = {}: {:?}", k, report.violation))?;
                ensure(odd_census(&tiling).0 == k, format!("rect k = {}: census", k))?;
                ensure(set.sides() == tiling.sides().as_slice(), format!("rect k = {}: set mismatch", k))?;
            }
            other => return Err(format!("rect k = {}: {:?}", k, other)),
        }
    }
    Ok("plane 1/2/3 = Possible/Impossible/Possible, Unknown otherwise; rect 1..3 cite lemmas 4..6, witnesses for 4..20"
        .into())
}

/// What is really wrong with a rectangle tiling, found cell by cell.
struct Oracle {
    out_of_region: Vec<usize>,
    duplicates: BTreeSet<i64>,
    overlapping: BTreeSet<(usize, usize)>,
    gaps: Vec<(i64, i64)>,
}

fn oracle(w: i64, h: i64, squares: &[(i64, i64, i64)]) -> Oracle {
    let out_of_region = squares
        .iter()
        .enumerate()
        .filter(|(_, &(x, y, s))| x < 0 || y < 0 || x + s > w || y + s > h)
        .map(|(i, _)| i)
        .collect();
    let mut duplicates = BTreeSet::new();
    for i in 0..squares.len() {
        for j in i + 1..squares.len() {
            if squares[i].2 == squares[j].2 {
                duplicates.insert(squares[i].2);
            }
        }
    }
    let mut owners = vec![Vec::new(); (w * h) as usize];
    for (i, &(x, y, s)) in squares.iter().enumerate() {
        for cy in y.max(0)..(y + s).min(h) {
            for cx in x.max(0)..(x + s).min(w) {
                owners[(cy * w + cx) as usize].push(i);
            }
        }
    }
    let mut overlapping = BTreeSet::new();
    for i in 0..squares.len() {
        for j in i + 1..squares.len() {
            let (a, b) = (squares[i], squares[j]);
            if a.0 < b.0 + b.2 && b.0 < a.0 + a.2 && a.1 < b.1 + b.2 && b.1 < a.1 + a.2 {
                overlapping.insert((i, j));
            }
        }
    }
    let mut gaps = Vec::new();
    for cy in 0..h {
        for cx in 0..w {
            if owners[(cy * w + cx) as usize].is_empty() {
                gaps.push((cx, cy));
            }
        }
    }
    Oracle { out_of_region, duplicates, overlapping, gaps }
}

fn c10_mutations() -> Outcome {
    let mut bases =
        vec![moron_tiling(), seq_base_tiling(), moron_tiling().transposed(), moron_tiling().scaled(3).unwrap()];
    for k in 4..=7 {
        bases.push(witness_for_odd_count(k).unwrap().1);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let mut classes = [0usize; 4];
    for trial in 0..100 {
        let base = &bases[rng.gen_range(0..bases.len())];
        let Region::Rect { width: w, height: h } = base.region() else { unreachable!() };
        let mut sq: Vec<(i64, i64, i64)> = base.squares().iter().map(|p| (p.x(), p.y(), p.side())).collect();
        let i = rng.gen_range(0..sq.len());
        let kind = rng.gen_range(0..3);
        match kind {
            0 => loop {
                let (dx, dy) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
                if (dx, dy) != (0, 0) {
                    sq[i].0 += dx;
                    sq[i].1 += dy;
                    break;
                }
            },
            1 => {
                sq.remove(i);
            }
            _ => loop {
                let d = rng.gen_range(-3..=3);
                if d != 0 && sq[i].2 + d >= 1 {
                    sq[i].2 += d;
                    break;
                }
            },
        }
        let placements: Vec<Placement> = sq.iter().map(|&(x, y, s)| Placement::new(x, y, s).unwrap()).collect();
        let mutated = Tiling::new(base.region(), placements).unwrap();
        let report = verify(&mutated);
        let truth = oracle(w, h, &sq);
        let ctx = format!("trial {} kind {} square {}", trial, kind, i);
        ensure(!report.passed, format!("{}: mutation passed", ctx))?;
        match report.violation {
            Some(Violation::OutOfRegion(j)) => {
                ensure(truth.out_of_region.first() == Some(&j), format!("{}: OutOfRegion({})", ctx, j))?;
                classes[0] += 1;
            }
            Some(Violation::DuplicateSide(s)) => {
                ensure(truth.out_of_region.is_empty(), format!("{}: precedence", ctx))?;
                ensure(truth.duplicates.first() == Some(&s), format!("{}: DuplicateSide({})", ctx, s))?;
                classes[1] += 1;
            }
            Some(Violation::Overlap(a, b)) => {
                ensure(truth.out_of_region.is_empty() && truth.duplicates.is_empty(), format!("{}: precedence", ctx))?;
                ensure(truth.overlapping.first() == Some(&(a, b)), format!("{}: Overlap({}, {})", ctx, a, b))?;
                classes[2] += 1;
            }
            Some(Violation::Gap { x, y }) => {
                ensure(
                    truth.out_of_region.is_empty() && truth.duplicates.is_empty() && truth.overlapping.is_empty(),
                    format!("{}: precedence", ctx),
                )?;
                let first = truth.gaps.first().copied();
                ensure(first == Some((x, y)), format!("{}: Gap({}, {}) vs {:?}", ctx, x, y, first))?;
                classes[3] += 1;
            }
            None => return Err(format!("{}: failed without a violation", ctx)),
        }
    }
    Ok(format!(
        "100 mutations rejected: out-of-region {}, duplicate {}, overlap {}, gap {}",
        classes[0], classes[1], classes[2], classes[3]
    ))
}

fn c11_enumerate() -> Outcome {
    let start = Instant::now();
    let found = enumerate(9, 18).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let hit = found
        .iter()
        .find(|r| r.set.sides() == MORON_SET && r.width == 33 && r.height == 32)
        .ok_or_else(|| format!("33x32 set missing among {} results", found.len()))?;
    ensure(verify(&hit.tiling).passed, "enumerated tiling fails verification")?;
    Ok(format!("{} rectangle(s) of order 9 with sides <= 18, including 33x32, in {:?}", found.len(), took))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        ("33x32 reproduction", c1_moron),
        ("66x64 base reproduction", c2_seq_base),
        ("scaled table recomputation", c3_table),
        ("disjointness certificates", c4_certificates),
        ("witness chain", c5_witness_chain),
        ("impossibility consistency", c6_impossibility),
        ("pinwheel patch", c7_pinwheel),
        ("three-odds patch", c8_three_odds),
        ("odd-count verdicts", c9_verdicts),
        ("verifier mutation suite", c10_mutations),
        ("enumeration sanity", c11_enumerate),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(run).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {}", msg))
        });
        match result {
            Ok(detail) => println!("PASS {:>2} {}: {}", i + 1, name, detail),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {}: {}", i + 1, name, detail);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
