//! `cayley-ci`: batch verification and exploration front end.
//!
//! Exit codes: 0 success or pass, 1 check failure, 2 usage error,
//! 3 skipped or capped.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use cayley_ci::aut::{automorphism_group, DEFAULT_AUT_CAP};
use cayley_ci::closure::{dci_scan, is_ci_graph_babai, two_closure, ScanMode};
use cayley_ci::{cayley, suite, ColoredDigraph, Error, FiniteGroup, PermGroup, Permutation};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

/// Largest group order the graph commands accept.
const MAX_GROUP_ORDER: usize = 64;
const CAP_ENV: &str = "CAYLEY_CI_CAP";

#[derive(Parser)]
#[command(
    name = "cayley-ci",
    version,
    about = "Cayley isomorphism checks for small groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every built-in verification and print the report.
    VerifyPaper {
        #[arg(long)]
        json: bool,
    },
    /// Automorphism group of a graph read from a JSON file.
    Aut {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        cap: CapArg,
        #[arg(long)]
        json: bool,
    },
    /// Write the Cayley digraph Cay(G, S) as JSON.
    Cayley {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        conn: String,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Babai's CI test for one connection set.
    CiCheck {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        conn: String,
        #[command(flatten)]
        cap: CapArg,
        #[arg(long)]
        json: bool,
    },
    /// CI test over all or a seeded sample of connection sets.
    DciScan {
        #[arg(long)]
        group: String,
        #[arg(long, conflicts_with = "sample", required_unless_present = "sample")]
        all: bool,
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        cap: CapArg,
        #[arg(long)]
        json: bool,
        /// Report elapsed_ms as 0 so output is byte-identical across runs.
        #[arg(long)]
        no_timing: bool,
    },
    /// 2-closure of the group generated by `--gens`.
    TwoClosure {
        #[command(flatten)]
        gens: GensArg,
        #[command(flatten)]
        cap: CapArg,
        #[arg(long)]
        json: bool,
    },
    /// Finest block system with two given points in one block.
    Blocks {
        #[command(flatten)]
        gens: GensArg,
        /// Two 1-based points, e.g. `1,3`.
        #[arg(long)]
        points: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct CapArg {
    /// Largest group order to enumerate; CAYLEY_CI_CAP overrides the default.
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args)]
struct GensArg {
    #[arg(long)]
    degree: usize,
    /// Comma-separated 1-based cycle notation, e.g. `(12)(34),(56)`.
    #[arg(long)]
    gens: String,
}

enum Failure {
    Usage(String),
    Capped(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Capped(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<u8, Failure>;

impl CapArg {
    fn resolve(&self) -> Result<usize, Failure> {
        if let Some(c) = self.cap {
            return Ok(c);
        }
        match std::env::var(CAP_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| {
                Failure::Usage(format!(
                    "{CAP_ENV} must be a non-negative integer, got {v:?}"
                ))
            }),
            Err(_) => Ok(DEFAULT_AUT_CAP),
        }
    }
}

impl GensArg {
    fn group(&self, cap: usize) -> Result<PermGroup, Failure> {
        if self.degree == 0 {
            return Err(Failure::Usage("degree must be positive".into()));
        }
        let gens = self
            .gens
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| Permutation::from_cycles(s, self.degree))
            .collect::<cayley_ci::Result<Vec<_>>>()?;
        Ok(PermGroup::generate(self.degree, gens, cap)?)
    }
}

fn load_group(spec: &str) -> Result<FiniteGroup, Failure> {
    let spec = spec.parse()?;
    let g = FiniteGroup::build(&spec)?;
    if g.order() > MAX_GROUP_ORDER {
        return Err(Failure::Usage(format!(
            "group order {} exceeds the supported maximum of {MAX_GROUP_ORDER}",
            g.order()
        )));
    }
    Ok(g)
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("value serializes")
    );
}

fn cycles(perms: &[Permutation]) -> Vec<String> {
    perms.iter().map(ToString::to_string).collect()
}

fn verify_paper(json: bool) -> Outcome {
    let checks = suite::run_all()?;
    if json {
        println!("{}", suite::render_json(&checks));
    } else {
        print!("{}", suite::render_text(&checks));
        let passed = checks.iter().filter(|c| c.passed).count();
        println!("{passed}/{} checks passed", checks.len());
    }
    Ok(if suite::all_passed(&checks) { 0 } else { 1 })
}

fn aut(file: &PathBuf, cap: usize, json: bool) -> Outcome {
    let text =
        fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    let graph = ColoredDigraph::from_json(&text)?;
    let r = automorphism_group(&graph, cap)?;
    let order = r.order.map(|o| o.to_string());
    if json {
        print_json(&json!({
            "n": graph.n(),
            "order": order,
            "capped": r.capped,
            "generators": cycles(r.generators()),
        }));
    } else {
        println!("vertices: {}", graph.n());
        println!("order: {}", order.as_deref().unwrap_or("overflow"));
        if r.capped {
            println!("elements not enumerated (order above cap {cap})");
        }
        for g in r.generators() {
            println!("generator: {g}");
        }
    }
    Ok(if r.capped { 3 } else { 0 })
}

fn cayley_cmd(group: &str, conn: &str, out: Option<&PathBuf>) -> Outcome {
    let g = load_group(group)?;
    let s = g.parse_subset(conn)?;
    let text = cayley(&g, &s)?.to_json();
    match out {
        Some(path) => fs::write(path, text + "\n")
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    Ok(0)
}

fn ci_check(group: &str, conn: &str, cap: usize, json: bool) -> Outcome {
    let g = load_group(group)?;
    let s = g.parse_subset(conn)?;
    let v = is_ci_graph_babai(&g, &s, cap)?;
    if json {
        let mut value = v.to_json();
        value["group"] = json!(g.spec().to_string());
        value["conn"] = json!(g.format_subset(&s));
        print_json(&value);
    } else {
        println!(
            "Cay({}, {{{}}}): {}",
            g.spec(),
            g.format_subset(&s),
            v.status()
        );
        if let Some(order) = v.aut_order {
            println!("aut order: {order}");
        }
        println!("regular subgroups found: {}", v.regular_subgroups_found);
        for (h, mu) in &v.conjugator_witnesses {
            println!(
                "  <{}> conjugated onto the right translations by {mu}",
                cycles(h.generators()).join(", ")
            );
        }
        if let Some(h) = &v.failing_subgroup {
            println!("failing subgroup: <{}>", cycles(h.generators()).join(", "));
        }
        if let Some(reason) = &v.skipped {
            println!("skipped: {reason}");
        }
        if let Some(note) = &v.note {
            println!("note: {note}");
        }
    }
    Ok(match v.status() {
        "CI" => 0,
        "not CI" => 1,
        _ => 3,
    })
}

fn scan(
    group: &str,
    sample: Option<usize>,
    seed: u64,
    cap: usize,
    json: bool,
    no_timing: bool,
) -> Outcome {
    let g = load_group(group)?;
    let mode = match sample {
        Some(count) => ScanMode::Sample { count, seed },
        None => ScanMode::Exhaustive,
    };
    let mut report = dci_scan(&g, mode, cap)?;
    if no_timing {
        report.elapsed_ms = 0;
    }
    if json {
        print_json(&serde_json::to_value(&report).expect("report serializes"));
    } else {
        println!("group: {} ({})", report.group, report.mode);
        if let Some(seed) = report.seed {
            println!("seed: {seed}");
        }
        println!("CI: {}/{}", report.ci, report.total);
        println!(
            "skipped: {} (rate {:.3})",
            report.skipped.len(),
            report.skip_rate()
        );
        for s in &report.skipped {
            println!("  {{{}}}: {}", s.conn, s.reason);
        }
        println!("failures: {}", report.failures.len());
        for f in &report.failures {
            println!("  {{{}}}: <{}>", f.conn, f.failing_subgroup.join(", "));
        }
        println!("elapsed: {} ms", report.elapsed_ms);
    }
    Ok(if report.failures.is_empty() { 0 } else { 1 })
}

fn closure_cmd(gens: &GensArg, cap: usize, json: bool) -> Outcome {
    let h = gens.group(cap)?;
    let c = two_closure(&h, cap)?;
    if json {
        print_json(&json!({
            "degree": h.degree(),
            "group_order": h.order(),
            "closure_order": c.order(),
            "closure_generators": cycles(c.generators()),
        }));
    } else {
        println!(
            "group order: {}",
            h.order().map_or("?".into(), |o| o.to_string())
        );
        println!(
            "2-closure order: {}",
            c.order().map_or("?".into(), |o| o.to_string())
        );
        for g in c.generators() {
            println!("generator: {g}");
        }
    }
    Ok(0)
}

fn blocks_cmd(gens: &GensArg, points: &str, json: bool) -> Outcome {
    let pts: Vec<usize> = points
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("bad --points {points:?}")))?;
    let [a, b] = pts[..] else {
        return Err(Failure::Usage("--points takes exactly two points".into()));
    };
    if a == 0 || b == 0 || a > gens.degree || b > gens.degree {
        return Err(Failure::Usage(format!(
            "points must lie in 1..={}",
            gens.degree
        )));
    }
    let h = gens.group(usize::MAX)?;
    let system = h.minimal_block_system(a - 1, b - 1)?;
    let one_based: Vec<Vec<usize>> = system
        .blocks()
        .iter()
        .map(|c| c.iter().map(|p| p + 1).collect())
        .collect();
    if json {
        print_json(&json!({ "block_size": system.block_size(), "blocks": one_based }));
    } else {
        let rendered: Vec<String> = one_based
            .iter()
            .map(|c| {
                format!(
                    "{{{}}}",
                    c.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        println!("{} blocks of size {}", system.len(), system.block_size());
        println!("{}", rendered.join(" "));
    }
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::VerifyPaper { json } => verify_paper(json),
        Command::Aut { file, cap, json } => aut(&file, cap.resolve()?, json),
        Command::Cayley { group, conn, out } => cayley_cmd(&group, &conn, out.as_ref()),
        Command::CiCheck {
            group,
            conn,
            cap,
            json,
        } => ci_check(&group, &conn, cap.resolve()?, json),
        Command::DciScan {
            group,
            all: _,
            sample,
            seed,
            cap,
            json,
            no_timing,
        } => scan(&group, sample, seed, cap.resolve()?, json, no_timing),
        Command::TwoClosure { gens, cap, json } => closure_cmd(&gens, cap.resolve()?, json),
        Command::Blocks { gens, points, json } => blocks_cmd(&gens, &points, json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Capped(msg)) => {
            eprintln!("capped: {msg}");
            ExitCode::from(3)
        }
    }
}
