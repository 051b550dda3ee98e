//! Argument parsing and dispatch for the `sqtile` binary.
//!
//! Exit codes: 0 success, feasible or verified; 1 infeasible, failed
//! verification or counterexample; 2 usage, input or IO error; 3 search
//! budget exhausted. Result documents go to standard output (or `--output`),
//! diagnostics to standard error.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use sqtile_core::plane::{
    pinwheel_patch, pinwheel_patch_with_scales, plane_odd_count_verdict, three_odds_patch, PlaneConstruction,
    PlaneVerdict,
};
use sqtile_core::rect::{
    bouwkamp, enumerate_with_budget, fib_extend_rect, rect_odd_count_verdict, solve_with_budget, NoTiling, RectVerdict,
    SolveOutcome, SquareSet, DEFAULT_BUDGET,
};
use sqtile_core::seq::{golden_ratio_filter, pairwise_disjoint, Disjointness};
use sqtile_core::{verify, Error, Region, Tiling};

use crate::doc::{DisjointDoc, Int, ReportDoc, TilingDoc};
use crate::seqspec;
use crate::svg::render_svg;

#[derive(Parser, Debug)]
#[command(name = "sqtile", version, about = "Perfect tilings by distinct integer squares")]
struct Cli {
    /// Write the result document to this file instead of standard output.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tile a rectangle with every given square exactly once.
    Solve {
        #[arg(long, value_delimiter = ',', required = true)]
        sides: Vec<i64>,
        /// Rectangle as WxH.
        #[arg(long)]
        rect: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = TextFormat::Json)]
        format: TextFormat,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check a tiling document (file or standard input).
    Verify { input: Option<PathBuf> },
    /// List perfect squared rectangles, one JSON document per line.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        max_side: i64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Feasibility verdict for sets with exactly the given number of odd sides.
    Witness {
        #[arg(long)]
        odds: usize,
        #[arg(long, value_enum)]
        target: Target,
        /// For plane verdicts with a construction, also emit a patch.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Central side of the one-odd construction.
        #[arg(long, default_value_t = 9)]
        odd: i64,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Window of the one-odd construction.
    Pinwheel {
        #[arg(long)]
        odd: i64,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// Four quadrant scales, counterclockwise from the (+,+) quadrant.
        #[arg(long, value_delimiter = ',')]
        scale: Option<Vec<i64>>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Window of the three-odd construction.
    ThreeOdds {
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Certify that sequences share no term, e.g. `23*A 24*A fib(14,20)`.
    Disjoint {
        #[arg(required = true, num_args = 2..)]
        specs: Vec<String>,
        #[arg(long, default_value_t = 16)]
        horizon: usize,
    },
    /// First consecutive pair of ascending sides with ratio above the golden ratio.
    RatioFilter {
        #[arg(long, value_delimiter = ',', required = true)]
        sides: Vec<i64>,
    },
    /// Append squares along the longer edge of a rectangle tiling.
    Extend {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        times: usize,
        #[arg(long, value_enum, default_value_t = TextFormat::Json)]
        format: TextFormat,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Draw a tiling document as SVG, or print its Bouwkamp-style code.
    Render {
        input: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = RenderFormat::Svg)]
        format: RenderFormat,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Json,
    Bouwkamp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RenderFormat {
    Svg,
    Bouwkamp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Rect,
    Plane,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
    Budget(String),
    /// The reader went away; nothing useful to report.
    BrokenPipe,
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Io(_) | Failure::BrokenPipe => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Io(m) | Failure::Budget(m) => m,
            Failure::BrokenPipe => "",
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::BudgetExhausted { .. } => Failure::Budget(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::BrokenPipe;
        }
        Failure::Io(e.to_string())
    }
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn json<T: Serialize>(&mut self, value: &T) -> Result<(), Failure> {
        let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Io(e.to_string()))?;
        writeln!(self.out, "{}", text)?;
        Ok(())
    }

    fn warn(&mut self, msg: &str) {
        let _ = writeln!(self.err, "warning: {}", msg);
    }

    fn read_tiling(&mut self, input: Option<&Path>) -> Result<Tiling, Failure> {
        let (text, name) = match input {
            Some(p) => {
                let text = fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {}", p.display(), e)))?;
                (text, p.display().to_string())
            }
            None => {
                let mut text = String::new();
                self.stdin.read_to_string(&mut text)?;
                (text, "<stdin>".to_string())
            }
        };
        let doc: TilingDoc = serde_json::from_str(&text).map_err(|e| {
            let full = e.to_string();
            let what = full.rsplit_once(" at line ").map_or(full.as_str(), |(m, _)| m);
            Failure::Usage(format!("{}: malformed tiling at line {} column {}: {}", name, e.line(), e.column(), what))
        })?;
        Tiling::try_from(&doc).map_err(|e| Failure::Usage(format!("{}: {}", name, e)))
    }

    fn emit_tiling(&mut self, t: &Tiling, format: TextFormat, svg: Option<&Path>) -> Result<(), Failure> {
        if let Some(path) = svg {
            write_file(path, &render_svg(t))?;
        }
        match format {
            TextFormat::Json => self.json(&TilingDoc::from(t)),
            TextFormat::Bouwkamp => {
                writeln!(self.out, "{}", bouwkamp(t)?)?;
                Ok(())
            }
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {}", path.display(), e)))
}

/// Parses `WxH`; returns the sides ordered `w >= h` and whether they were swapped.
fn parse_rect(s: &str) -> Result<(i64, i64, bool), Failure> {
    let bad = || Failure::Usage(format!("rectangle must look like WxH, got {:?}", s));
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    Ok(if a >= b { (a, b, false) } else { (b, a, true) })
}

fn parse_window(s: &str) -> Result<Region, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let nums: Option<Vec<i64>> = parts.iter().map(|p| p.parse().ok()).collect();
    match nums.as_deref() {
        Some(&[x0, y0, x1, y1]) => Ok(Region::window(x0, y0, x1, y1)?),
        _ => Err(Failure::Usage(format!("window must be x0,y0,x1,y1, got {:?}", s))),
    }
}

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int(x)).collect()
}

fn dispatch(cmd: Command, ctx: &mut Ctx) -> Result<i32, Failure> {
    match cmd {
        Command::Solve { sides, rect, budget, format, svg } => {
            let (w, h, swapped) = parse_rect(&rect)?;
            if swapped {
                ctx.warn(&format!("rectangle {} taken as {}x{}", rect, w, h));
            }
            let set = SquareSet::new(sides)?;
            match solve_with_budget(&set, w, h, budget)? {
                SolveOutcome::Tiled(t) => {
                    ctx.emit_tiling(&t, format, svg.as_deref())?;
                    Ok(0)
                }
                SolveOutcome::Absent(why) => {
                    let reason = match why {
                        NoTiling::AreaMismatch => json!({"reason": "area_mismatch"}),
                        NoTiling::SideTooLarge(s) => json!({"reason": "side_too_large", "side": Int(s)}),
                        NoTiling::Exhausted => json!({"reason": "exhausted"}),
                    };
                    ctx.json(&json!({"result": "absent", "w": Int(w), "h": Int(h), "why": reason}))?;
                    Ok(1)
                }
            }
        }
        Command::Verify { input } => {
            let t = ctx.read_tiling(input.as_deref())?;
            let report = verify(&t);
            ctx.json(&ReportDoc::from(&report))?;
            Ok(if report.passed { 0 } else { 1 })
        }
        Command::Enumerate { order, max_side, budget } => {
            for r in enumerate_with_budget(order, max_side, budget)? {
                let line = json!({
                    "sides": ints(r.set.sides()),
                    "w": Int(r.width),
                    "h": Int(r.height),
                    "tiling": TilingDoc::from(&r.tiling),
                });
                writeln!(ctx.out, "{}", line)?;
            }
            Ok(0)
        }
        Command::Witness { odds, target: Target::Rect, .. } => match rect_odd_count_verdict(odds)? {
            RectVerdict::Infeasible { odd_count, lemma } => {
                ctx.json(&json!({
                    "target": "rect",
                    "odd_count": odd_count,
                    "verdict": "infeasible",
                    "lemma": lemma,
                }))?;
                Ok(1)
            }
            RectVerdict::Witness { odd_count, set, tiling, derived } => {
                ctx.json(&json!({
                    "target": "rect",
                    "odd_count": odd_count,
                    "verdict": "witness",
                    "derived": derived,
                    "sides": ints(set.sides()),
                    "tiling": TilingDoc::from(&tiling),
                }))?;
                Ok(0)
            }
        },
        Command::Witness { odds, target: Target::Plane, window, odd, svg } => {
            let verdict = plane_odd_count_verdict(odds);
            let mut doc = json!({"target": "plane", "odd_count": odds});
            let code = match verdict {
                PlaneVerdict::Possible(c) => {
                    doc["verdict"] = json!("possible");
                    doc["construction"] = json!(match c {
                        PlaneConstruction::Pinwheel => "pinwheel",
                        PlaneConstruction::ThreeOdds => "three-odds",
                    });
                    if let Some(w) = window {
                        let win = parse_window(&w)?;
                        let patch = match c {
                            PlaneConstruction::Pinwheel => pinwheel_patch(odd, &win)?,
                            PlaneConstruction::ThreeOdds => three_odds_patch(&win)?,
                        };
                        if let Some(path) = svg.as_deref() {
                            write_file(path, &render_svg(&patch))?;
                        }
                        doc["patch"] = serde_json::to_value(TilingDoc::from(&patch)).expect("documents serialize");
                    }
                    0
                }
                PlaneVerdict::Impossible { lemma } => {
                    doc["verdict"] = json!("impossible");
                    doc["lemma"] = json!(lemma);
                    1
                }
                PlaneVerdict::Unknown => {
                    doc["verdict"] = json!("unknown");
                    0
                }
            };
            ctx.json(&doc)?;
            Ok(code)
        }
        Command::Pinwheel { odd, window, scale, svg } => {
            let win = parse_window(&window)?;
            let t = match scale {
                None => pinwheel_patch(odd, &win),
                Some(s) => {
                    let scales: [i64; 4] = s
                        .as_slice()
                        .try_into()
                        .map_err(|_| Failure::Usage(format!("--scale needs four values, got {}", s.len())))?;
                    pinwheel_patch_with_scales(odd, scales, &win)
                }
            };
            match t {
                Ok(t) => {
                    ctx.emit_tiling(&t, TextFormat::Json, svg.as_deref())?;
                    Ok(0)
                }
                Err(Error::SidesCollide { value }) => {
                    ctx.json(&json!({"result": "sides_collide", "value": Int(value)}))?;
                    Ok(1)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::ThreeOdds { window, svg } => {
            let t = three_odds_patch(&parse_window(&window)?)?;
            ctx.emit_tiling(&t, TextFormat::Json, svg.as_deref())?;
            Ok(0)
        }
        Command::Disjoint { specs, horizon } => {
            let seqs = specs
                .iter()
                .map(|s| seqspec::parse(s))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let labels: Vec<String> = seqs.iter().map(|s| s.label.clone()).collect();
            match pairwise_disjoint(&seqs, horizon)? {
                Disjointness::Certificate(c) => {
                    ctx.json(&DisjointDoc::certificate(&c))?;
                    if !c.is_valid() {
                        ctx.warn("no interleaving chain found within the horizon; the tail is unproven");
                    }
                    Ok(if c.is_valid() { 0 } else { 1 })
                }
                Disjointness::Counterexample(c) => {
                    ctx.json(&DisjointDoc::counterexample(&c, &labels))?;
                    Ok(1)
                }
            }
        }
        Command::RatioFilter { sides } => match golden_ratio_filter(&sides)? {
            Some(i) => {
                ctx.json(&json!({"index": i, "pair": [Int(sides[i]), Int(sides[i + 1])]}))?;
                Ok(1)
            }
            None => {
                ctx.json(&json!({"index": null}))?;
                Ok(0)
            }
        },
        Command::Extend { input, times, format, svg } => {
            let mut t = ctx.read_tiling(input.as_deref())?;
            for _ in 0..times {
                t = match fib_extend_rect(&t) {
                    Ok(next) => next,
                    Err(Error::NotVerified(v)) => {
                        ctx.json(&ReportDoc::from(&verify(&t)))?;
                        ctx.warn(&format!("input does not verify: {}", v));
                        return Ok(1);
                    }
                    Err(e) => return Err(e.into()),
                };
            }
            ctx.emit_tiling(&t, format, svg.as_deref())?;
            Ok(0)
        }
        Command::Render { input, svg, format } => {
            let t = ctx.read_tiling(input.as_deref())?;
            let text = match format {
                RenderFormat::Svg => render_svg(&t),
                RenderFormat::Bouwkamp => format!("{}\n", bouwkamp(&t)?),
            };
            match svg {
                Some(path) => write_file(&path, &text)?,
                None => ctx.out.write_all(text.as_bytes())?,
            }
            Ok(0)
        }
    }
}

/// Runs one invocation; `args` includes the program name. Returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                2
            } else {
                let _ = write!(stdout, "{}", e.render());
                0
            };
            return code;
        }
    };

    let mut file_out;
    let out: &mut dyn Write = match &cli.output {
        Some(path) => match fs::File::create(path) {
            Ok(f) => {
                file_out = std::io::BufWriter::new(f);
                &mut file_out
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: {}: {}", path.display(), e);
                return 2;
            }
        },
        None => stdout,
    };
    let mut ctx = Ctx { stdin, out, err: stderr };
    let result = dispatch(cli.command, &mut ctx).and_then(|code| {
        ctx.out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(f) => {
            if !matches!(f, Failure::BrokenPipe) {
                let _ = writeln!(ctx.err, "error: {}", f.message());
            }
            f.code()
        }
    }
}
