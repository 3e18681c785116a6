//! The `convkit` command line.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use convkit_core::relations::classify_map;
use convkit_core::FilterClass;
use convkit_fan as fan;
use serde_json::json;

use crate::error::{HarnessError, Result};
use crate::suites::{self, Bounds};
use crate::{cascadedoc, spacedoc};

#[derive(Parser, Debug)]
#[command(name = "convkit", version, about = "Exact filter calculus on finite convergence spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Space documents.
    Space {
        #[command(subcommand)]
        action: SpaceAction,
    },
    /// Verdicts of every map notion for a map in a space document.
    Classify {
        file: PathBuf,
        map: String,
        /// Comma-separated filter classes.
        #[arg(long, default_value = "F1,clF1")]
        classes: String,
        #[arg(long)]
        json: bool,
    },
    /// Runs theorem suites.
    Verify(VerifyArgs),
    /// Cascade documents.
    Contour {
        #[command(subcommand)]
        action: ContourAction,
    },
    /// Constructions on the sequential fan.
    Fan {
        #[command(subcommand)]
        action: FanAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum SpaceAction {
    /// Loads a space document and prints the space.
    Validate { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum ContourAction {
    /// Prints the contour of a multifilter and the contour of every node.
    Eval { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum FanAction {
    Demo(FanDemo),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// A suite id, or `all`.
    #[arg(long)]
    pub suite: String,
    #[arg(long, default_value_t = 3)]
    pub max_points: usize,
    #[arg(long, default_value = "F1,clF1")]
    pub classes: String,
    /// Worker threads; all cores by default.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, default_value_t = suites::DEFAULT_SEED)]
    pub seed: u64,
    /// Seeded draws beyond the exhaustive range.
    #[arg(long, default_value_t = suites::DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Construction {
    /// A sequence inside a set meshing the fan filter, converging to the fan point.
    Witness,
    /// A fan member missing the range of a transversal.
    Refuter,
    /// The cofinite-support fan filter as a contour of column filters.
    Contour,
    /// A fan member escaping a countable chain of grid tails.
    Diagonal,
    /// The generated witness and refuter battery.
    Battery,
}

#[derive(Args, Debug)]
pub struct FanDemo {
    pub construction: Construction,
    /// Transversal parameters for `refuter`, e.g. `a=1,b=0`.
    #[arg(long, default_value = "a=1,b=0")]
    pub picker: String,
    /// Set for `witness`: `col(N)` or `gridtail(N, N)`.
    #[arg(long, default_value = "gridtail(2, 5)")]
    pub set: String,
    #[arg(long, default_value_t = suites::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub cases: usize,
}

/// Runs a parsed command line; returns the exit status.
pub fn run(cli: Cli, out: &mut dyn Write) -> i32 {
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn io(e: std::io::Error) -> HarnessError {
    HarnessError::Io { path: "<stdout>".into(), source: e }
}

fn parse_classes(list: &str) -> Result<Vec<FilterClass>> {
    // commas inside parentheses belong to nested tags
    let mut names = vec![String::new()];
    let mut depth = 0i32;
    for ch in list.chars() {
        match ch {
            ',' if depth == 0 => names.push(String::new()),
            _ => {
                depth += match ch {
                    '(' => 1,
                    ')' => -1,
                    _ => 0,
                };
                names.last_mut().expect("never empty").push(ch);
            }
        }
    }
    names
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<FilterClass>().map_err(|e| HarnessError::Usage(format!("class `{s}`: {e}"))))
        .collect()
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Space { action: SpaceAction::Validate { file } } => {
            let doc = spacedoc::load(&file)?;
            let sp = &doc.space;
            let k = sp.kind();
            let kinds: Vec<&str> = [
                (k.is_topology, "topological"),
                (k.is_pretopology, "pretopological"),
                (k.is_p_diagonal, "P-diagonal"),
            ]
            .into_iter()
            .filter_map(|(b, name)| b.then_some(name))
            .collect();
            writeln!(out, "ok: {} points, {}", sp.n(), kinds.join(", ")).map_err(io)?;
            writeln!(out, "{}", sp.render()).map_err(io)?;
            for m in &doc.maps {
                writeln!(out, "map {} into {} points", m.name, m.target.n()).map_err(io)?;
            }
            Ok(0)
        }
        Command::Classify { file, map, classes, json } => {
            let doc = spacedoc::load(&file)?;
            let m = doc.map(&map)?;
            let f = m
                .as_map()
                .ok_or_else(|| HarnessError::Usage(format!("`{map}` is a relation; classify takes a map")))?;
            let classes = parse_classes(&classes)?;
            let c = classify_map(&f, &doc.space, &m.target, &classes)?;
            if json {
                let rows: Vec<_> = c
                    .verdicts
                    .iter()
                    .map(|v| json!({"notion": v.notion, "value": v.value, "detail": v.detail}))
                    .collect();
                writeln!(out, "{}", json!({"map": map, "verdicts": rows})).map_err(io)?;
            } else {
                let width = c.verdicts.iter().map(|v| v.notion.chars().count()).max().unwrap_or(0);
                for v in &c.verdicts {
                    let value = match v.value {
                        Some(true) => "yes",
                        Some(false) => "no",
                        None => "not-applicable",
                    };
                    let pad = width - v.notion.chars().count();
                    writeln!(out, "{}{}  {value:<14}  {}", v.notion, " ".repeat(pad), v.detail).map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::Verify(args) => verify(args, out),
        Command::Contour { action: ContourAction::Eval { file } } => {
            let doc = cascadedoc::load(&file)?;
            write!(out, "{}", doc.render()).map_err(io)?;
            Ok(0)
        }
        Command::Fan { action: FanAction::Demo(demo) } => fan_demo(demo, out),
    }
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let bounds = Bounds {
        max_points: args.max_points,
        classes: parse_classes(&args.classes)?,
        seed: args.seed,
        samples: args.samples,
    };
    if bounds.classes.is_empty() {
        return Err(HarnessError::Usage("--classes needs at least one class".into()));
    }
    let ids: Vec<&str> = if args.suite == "all" {
        suites::registry().iter().map(|s| s.id).collect()
    } else {
        vec![suites::find(&args.suite)?.id]
    };
    let mut failed = false;
    let mut reports = Vec::new();
    for id in ids {
        let r = suites::run_suite(id, &bounds, args.jobs)?;
        failed |= !r.passed();
        if args.json {
            reports.push(r);
        } else {
            write!(out, "{}", r.render()).map_err(io)?;
        }
    }
    if args.json {
        let v = serde_json::to_string(&reports).map_err(|e| HarnessError::Usage(e.to_string()))?;
        writeln!(out, "{v}").map_err(io)?;
    }
    Ok(i32::from(failed))
}

fn fan_demo(demo: FanDemo, out: &mut dyn Write) -> Result<i32> {
    match demo.construction {
        Construction::Witness => {
            let a = match fan::parse_filter(&demo.set)? {
                fan::SymFilter::Principal(s) => s,
                fan::SymFilter::GridTail { a, b } => fan::GridSet::grid_tail(a, b),
                other => return Err(HarnessError::Usage(format!("`{other}` is not a set"))),
            };
            let w = fan::frechet_witness(&a)?;
            let ok = fan::check_frechet_witness(&a, &w)?;
            writeln!(out, "set      {a}").map_err(io)?;
            writeln!(out, "witness  {}", fan::SymFilter::Seq(w)).map_err(io)?;
            writeln!(out, "verified {ok}").map_err(io)?;
            Ok(i32::from(!ok))
        }
        Construction::Refuter => {
            let sigma = fan::parse_picker(&demo.picker)?;
            let c = fan::strong_frechet_refuter(&fan::SymFilter::ColumnBlocks, &sigma)?;
            writeln!(out, "sequence     {}", fan::SymFilter::Seq(sigma)).map_err(io)?;
            writeln!(out, "fan member   {}", c.u).map_err(io)?;
            writeln!(out, "range        {}", c.range).map_err(io)?;
            writeln!(out, "in fan       {}", c.fan_member).map_err(io)?;
            writeln!(out, "disjoint     {}", c.disjoint).map_err(io)?;
            writeln!(out, "follows blocks {}", c.follows_blocks).map_err(io)?;
            writeln!(out, "verified     {}", c.verified()).map_err(io)?;
            Ok(i32::from(!c.verified()))
        }
        Construction::Contour => {
            let grids = fan::battery::grid_battery(demo.seed, demo.cases);
            let d = fan::fan_as_contour(&grids)?;
            writeln!(out, "filter     {}", d.filter).map_err(io)?;
            writeln!(out, "cases      {}  members {}  mismatches {}", d.cases, d.members, d.mismatches.len())
                .map_err(io)?;
            Ok(i32::from(!d.holds()))
        }
        Construction::Diagonal => {
            let chain = fan::Chain::AffineTails { p: 1, q: 1, r: 0 };
            let u = fan::diagonal_escape(&chain)?;
            let ok = fan::check_escape(&chain, &u, 64)?;
            writeln!(out, "chain    B_k column n = [n + k, ∞)").map_err(io)?;
            writeln!(out, "escape   {u}").map_err(io)?;
            writeln!(out, "verified {ok} (first 64 chain members)").map_err(io)?;
            Ok(i32::from(!ok))
        }
        Construction::Battery => {
            let start = std::time::Instant::now();
            let r = fan::battery::run_battery(demo.seed, demo.cases)?;
            writeln!(
                out,
                "cases {}  meshing {}  witnesses {}  refuters {}  contour {}  fan order {}  [{} ms]",
                r.cases,
                r.meshing,
                r.witnesses_verified,
                r.refuters_verified,
                r.contour_agreements,
                r.fan_order_holds,
                start.elapsed().as_millis()
            )
            .map_err(io)?;
            for f in r.failures.iter().take(8) {
                writeln!(out, "  failure: {f}").map_err(io)?;
            }
            writeln!(out, "{}", if r.passed() { "PASS" } else { "FAIL" }).map_err(io)?;
            Ok(i32::from(!r.passed()))
        }
    }
}
