//! Text form of sequences on the command line.
//!
//! ```text
//! spec  := [label "="] [scale "*"] atom
//! atom  := "A" | "B" | "C" | "fib(" int "," int [";prefix=" int ("," int)*] ")"
//! ```
//!
//! `A`, `B` and `C` are the presets of [`sqtile_core::seq`]. Without a label,
//! scaled presets are named like `23A` and everything else by its own text.

use std::fmt;

use sqtile_core::seq::{a_sequence, b_sequence, c_sequence, FibSeq, NamedSeq};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError {
    pub spec: String,
    pub reason: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad sequence {:?}: {}", self.spec, self.reason)
    }
}

impl std::error::Error for SpecError {}

pub fn parse(spec: &str) -> Result<NamedSeq, SpecError> {
    let fail = |reason: String| SpecError { spec: spec.to_string(), reason };
    let text: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let (label, body) = match text.split_once('=') {
        Some((l, b)) if !l.contains('(') => (Some(l.to_string()), b),
        _ => (None, text.as_str()),
    };
    if label.as_deref() == Some("") {
        return Err(fail("empty label".into()));
    }

    let (scale, atom) = match body.split_once('*') {
        Some((k, rest)) => (Some(int(k).map_err(fail)?), rest),
        None => (None, body),
    };

    let (base, preset) = match atom {
        "A" => (a_sequence(), true),
        "B" => (b_sequence(), true),
        "C" => (c_sequence(), true),
        _ => (fib(atom).map_err(fail)?, false),
    };
    let seq = match scale {
        Some(k) => base.scaled(k).map_err(|e| fail(e.to_string()))?,
        None => base,
    };
    let label = label.unwrap_or_else(|| match (preset, scale) {
        (true, Some(k)) => format!("{}{}", k, atom),
        _ => body.to_string(),
    });
    Ok(NamedSeq::new(label, seq))
}

fn int(s: &str) -> Result<i64, String> {
    s.parse().map_err(|_| format!("expected an integer, got {:?}", s))
}

fn fib(atom: &str) -> Result<FibSeq, String> {
    let inner = atom
        .strip_prefix("fib(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("expected A, B, C or fib(..), got {:?}", atom))?;
    let (seeds, prefix) = match inner.split_once(';') {
        Some((s, p)) => {
            let list = p.strip_prefix("prefix=").ok_or_else(|| format!("unknown option {:?}", p))?;
            (s, Some(list.split(',').map(int).collect::<Result<Vec<_>, _>>()?))
        }
        None => (inner, None),
    };
    let (s1, s2) = seeds.split_once(',').ok_or_else(|| "fib needs two seeds".to_string())?;
    let (s1, s2) = (int(s1)?, int(s2)?);
    match prefix {
        Some(p) => FibSeq::with_prefix(s1, s2, p),
        None => FibSeq::new(s1, s2),
    }
    .map_err(|e| e.to_string())
}
