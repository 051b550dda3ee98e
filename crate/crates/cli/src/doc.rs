//! JSON documents exchanged on the command line.
//!
//! Integers outside `±2^53` are written as decimal strings so that readers
//! parsing numbers as doubles do not lose precision; both forms are accepted
//! on input. Non-integer numbers are rejected.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use sqtile_core::seq::{Counterexample, DisjointnessCertificate};
use sqtile_core::{Placement, Region, Tiling, VerificationReport, Violation};

const SAFE: i64 = 1 << 53;

/// An `i64` with the string fallback described in the module docs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Int(pub i64);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if (-SAFE..=SAFE).contains(&self.0) {
            s.serialize_i64(self.0)
        } else {
            s.collect_str(&self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = Int;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
                Ok(Int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
                i64::try_from(v).map(Int).map_err(|_| E::custom(format!("integer {} is too large", v)))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Int, E> {
                Err(E::custom(format!("expected an integer, got {}", v)))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                v.parse().map(Int).map_err(|_| E::custom(format!("expected a decimal integer, got {:?}", v)))
            }
        }

        d.deserialize_any(IntVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum RegionDoc {
    Rect { w: Int, h: Int },
    Window { x0: Int, y0: Int, x1: Int, y1: Int },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareDoc {
    pub x: Int,
    pub y: Int,
    pub s: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TilingDoc {
    pub region: RegionDoc,
    pub squares: Vec<SquareDoc>,
}

impl From<&Tiling> for TilingDoc {
    fn from(t: &Tiling) -> TilingDoc {
        let region = match t.region() {
            Region::Rect { width, height } => RegionDoc::Rect { w: Int(width), h: Int(height) },
            Region::Window { x0, y0, x1, y1 } => {
                RegionDoc::Window { x0: Int(x0), y0: Int(y0), x1: Int(x1), y1: Int(y1) }
            }
        };
        let squares =
            t.squares().iter().map(|p| SquareDoc { x: Int(p.x()), y: Int(p.y()), s: Int(p.side()) }).collect();
        TilingDoc { region, squares }
    }
}

impl TryFrom<&TilingDoc> for Tiling {
    type Error = sqtile_core::Error;

    fn try_from(doc: &TilingDoc) -> Result<Tiling, Self::Error> {
        let region = match doc.region {
            RegionDoc::Rect { w, h } => Region::rect(w.0, h.0)?,
            RegionDoc::Window { x0, y0, x1, y1 } => Region::window(x0.0, y0.0, x1.0, y1.0)?,
        };
        let squares = doc.squares.iter().map(|s| Placement::new(s.x.0, s.y.0, s.s.0)).collect::<Result<Vec<_>, _>>()?;
        Tiling::new(region, squares)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationDoc {
    Overlap { first: usize, second: usize },
    Gap { x: Int, y: Int },
    DuplicateSide { side: Int },
    OutOfRegion { index: usize },
}

impl From<&Violation> for ViolationDoc {
    fn from(v: &Violation) -> ViolationDoc {
        match *v {
            Violation::Overlap(first, second) => ViolationDoc::Overlap { first, second },
            Violation::Gap { x, y } => ViolationDoc::Gap { x: Int(x), y: Int(y) },
            Violation::DuplicateSide(s) => ViolationDoc::DuplicateSide { side: Int(s) },
            Violation::OutOfRegion(index) => ViolationDoc::OutOfRegion { index },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportDoc {
    pub passed: bool,
    pub violation: Option<ViolationDoc>,
    pub message: Option<String>,
    pub odd_count: usize,
    pub odd_sides: Vec<Int>,
}

impl From<&VerificationReport> for ReportDoc {
    fn from(r: &VerificationReport) -> ReportDoc {
        ReportDoc {
            passed: r.passed,
            violation: r.violation.as_ref().map(ViolationDoc::from),
            message: r.violation.as_ref().map(|v| v.to_string()),
            odd_count: r.odd_sides.len(),
            odd_sides: r.odd_sides.iter().map(|&s| Int(s)).collect(),
        }
    }
}

/// A disjointness result. Checked inequalities are `[n, lhs, rhs]` triples
/// meaning `lhs < rhs` at index `n`; `relations[i]` names `checks[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum DisjointDoc {
    Certificate {
        sequences: Vec<String>,
        valid: bool,
        prefix_horizon: usize,
        checked_up_to: Int,
        prefix_check: bool,
        onset: Option<usize>,
        tail_rule: String,
        tail_proven: bool,
        relations: Vec<String>,
        checks: Vec<(usize, Int, Int)>,
    },
    Counterexample {
        value: Int,
        first: String,
        second: String,
    },
}

impl DisjointDoc {
    pub fn certificate(c: &DisjointnessCertificate) -> DisjointDoc {
        DisjointDoc::Certificate {
            sequences: c.sequences.clone(),
            valid: c.is_valid(),
            prefix_horizon: c.prefix_horizon,
            checked_up_to: Int(c.checked_up_to),
            prefix_check: c.prefix_check,
            onset: c.onset,
            tail_rule: c.tail_rule.clone(),
            tail_proven: c.tail_proven(),
            relations: c.tail_base_checks.iter().map(|t| t.relation.clone()).collect(),
            checks: c.tail_base_checks.iter().map(|t| (t.n, Int(t.lhs), Int(t.rhs))).collect(),
        }
    }

    pub fn counterexample(c: &Counterexample, labels: &[String]) -> DisjointDoc {
        DisjointDoc::Counterexample {
            value: Int(c.value),
            first: labels[c.first].clone(),
            second: labels[c.second].clone(),
        }
    }
}
