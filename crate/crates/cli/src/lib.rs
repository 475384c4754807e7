//! The `kplat` command line.
//!
//! Exit codes: 0 success or pass, 1 a property fails or a theorem check finds
//! a violation, 2 usage, parse or input errors, 3 when the outcome includes
//! undecided (unknown or partial) results.

use std::ffi::OsString;
use std::fmt::Display;
use std::fs;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use kplat::condition_b::{check_graph_b, check_vertex_b, default_depth, BStatus, BVerdict};
use kplat::io::{lattice_to_dot, parse_kgraph, parse_kp_expr, serialize_kgraph};
use kplat::kp::Algebra;
use kplat::lab::{
    random_acyclic_kgraph, random_kgraph, verify_lattice_iso, verify_quotient_iso, verify_thm3, verify_thm31_33,
    verify_thm5, ReportStatus,
};
use kplat::lattice::{double_perp, enumerate_sh_lattice, is_regular, perp, quotient_graph, VertexSet};
use kplat::{check_local_convexity, KGraph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "kplat", version, about = "Higher-rank graphs, their sh lattices and Kumjian-Pask algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SetArg {
    /// Comma-separated vertex names; an empty string is the empty set.
    #[arg(long = "set", value_name = "V1,V2", num_args = 0..=1, default_missing_value = "")]
    set: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Theorem {
    #[value(name = "1")]
    Lattice,
    #[value(name = "3")]
    Regular,
    #[value(name = "5")]
    Quotients,
    #[value(name = "31")]
    Largest,
    #[value(name = "33")]
    Graded,
    #[value(name = "quotient")]
    QuotientIso,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a graph document.
    Validate { file: String },
    /// List the saturated hereditary sets.
    Lattice {
        file: String,
        /// Write the Hasse diagram as DOT to this file (`-` for stdout).
        #[arg(long)]
        dot: Option<String>,
    },
    Perp {
        file: String,
        #[command(flatten)]
        set: SetArg,
    },
    Doubleperp {
        file: String,
        #[command(flatten)]
        set: SetArg,
    },
    /// Regularity of one set, or of every set in the lattice.
    Regular {
        file: String,
        #[arg(long = "set", value_name = "V1,V2", num_args = 0..=1, default_missing_value = "")]
        set: Option<String>,
    },
    /// The graph `Λ∖H`.
    Quotient {
        file: String,
        #[command(flatten)]
        set: SetArg,
        #[arg(long)]
        out: Option<String>,
    },
    #[command(name = "condition-b")]
    ConditionB {
        file: String,
        #[arg(long)]
        vertex: Option<String>,
        /// Search depth for k ≥ 2; defaults to KPLAT_DEPTH or 8.
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Evaluate an expression in the Kumjian-Pask algebra.
    #[command(name = "kp-eval")]
    KpEval {
        file: String,
        #[arg(long)]
        expr: String,
        #[arg(long, group = "mode")]
        is_zero: bool,
        #[arg(long, group = "mode")]
        graded: bool,
        #[arg(long, group = "mode", value_name = "V1,V2")]
        in_ideal: Option<String>,
    },
    /// Run a theorem harness on the graph.
    Verify {
        file: String,
        #[arg(long)]
        theorem: Theorem,
        /// Required by `--theorem quotient`.
        #[arg(long = "set", value_name = "V1,V2", num_args = 0..=1, default_missing_value = "")]
        set: Option<String>,
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Print a random graph document.
    Gen {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        density: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        acyclic: bool,
    },
}

/// A message for stderr and the exit code that goes with it.
struct Stop(i32, String);

fn usage(e: impl Display) -> Stop {
    Stop(EXIT_USAGE, e.to_string())
}

type Outcome = Result<i32, Stop>;

/// Run with `argv` (program name first), writing to `out` and `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut buf = String::new();
    let result = dispatch(cli.command, &mut buf);
    let _ = out.write_all(buf.as_bytes());
    match result {
        Ok(code) => code,
        Err(Stop(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn load(file: &str) -> Result<KGraph, Stop> {
    let text = fs::read_to_string(file).map_err(|e| usage(format!("{file}: {e}")))?;
    parse_kgraph(&text).map_err(|e| usage(format!("{file}: {e}")))
}

fn parse_set(g: &KGraph, list: &str) -> Result<VertexSet, Stop> {
    let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    VertexSet::from_names(g, &names).ok_or_else(|| usage(format!("unknown vertex in `{list}`")))
}

fn sh_set(g: &KGraph, list: &str) -> Result<VertexSet, Stop> {
    let h = parse_set(g, list)?;
    if !h.is_sh() {
        return Err(usage(format!("{} is not saturated hereditary", h.display(g))));
    }
    Ok(h)
}

fn write_target(target: &str, text: &str, out: &mut String) -> Result<(), Stop> {
    if target == "-" {
        out.push_str(text);
        Ok(())
    } else {
        fs::write(target, text).map_err(|e| usage(format!("{target}: {e}")))
    }
}

fn dispatch(cmd: Command, out: &mut String) -> Outcome {
    use std::fmt::Write as _;
    match cmd {
        Command::Validate { file } => {
            let g = load(&file)?;
            let _ = writeln!(out, "valid: k={} vertices={} edges={} squares={}", g.k(), g.vertex_count(), g.edge_count(), g.square_count());
            let conv = check_local_convexity(&g);
            match conv.violations.first() {
                None => out.push_str("locally convex\n"),
                Some(w) => {
                    let _ = writeln!(
                        out,
                        "not locally convex: at {} edge {} of color {} leads to no edge of color {}",
                        w.vertex, w.edge, w.first, w.second
                    );
                }
            }
            Ok(EXIT_OK)
        }
        Command::Lattice { file, dot } => {
            let g = load(&file)?;
            let lat = enumerate_sh_lattice(&g).map_err(usage)?;
            let _ = writeln!(out, "{} saturated hereditary sets", lat.len());
            for h in lat.sets() {
                let mark = if is_regular(&g, h).map_err(usage)? { " regular" } else { "" };
                let _ = writeln!(out, "{}{mark}", h.display(&g));
            }
            for &(a, b) in lat.hasse_edges() {
                let _ = writeln!(out, "cover {} < {}", lat.sets()[a].display(&g), lat.sets()[b].display(&g));
            }
            if let Some(target) = dot {
                write_target(&target, &lattice_to_dot(&g, &lat), out)?;
            }
            Ok(EXIT_OK)
        }
        Command::Perp { file, set } => {
            let g = load(&file)?;
            let h = parse_set(&g, &set.set)?;
            let p = perp(&g, &h).map_err(usage)?;
            let _ = writeln!(out, "perp = {}", p.display(&g));
            Ok(EXIT_OK)
        }
        Command::Doubleperp { file, set } => {
            let g = load(&file)?;
            let h = parse_set(&g, &set.set)?;
            let p = double_perp(&g, &h).map_err(usage)?;
            let _ = writeln!(out, "double-perp = {}", p.display(&g));
            Ok(EXIT_OK)
        }
        Command::Regular { file, set } => {
            let g = load(&file)?;
            let sets = match set {
                Some(list) => vec![parse_set(&g, &list)?],
                None => enumerate_sh_lattice(&g).map_err(usage)?.sets().to_vec(),
            };
            let single = sets.len() == 1;
            for h in &sets {
                let dp = double_perp(&g, h).map_err(usage)?;
                let verdict = if dp == *h { "regular".to_owned() } else { format!("not regular; double-perp = {}", dp.display(&g)) };
                if single {
                    let _ = writeln!(out, "{verdict}");
                } else {
                    let _ = writeln!(out, "{}: {verdict}", h.display(&g));
                }
            }
            Ok(EXIT_OK)
        }
        Command::Quotient { file, set, out: target } => {
            let g = load(&file)?;
            let h = parse_set(&g, &set.set)?;
            let q = quotient_graph(&g, &h).map_err(usage)?;
            write_target(target.as_deref().unwrap_or("-"), &serialize_kgraph(&q), out)?;
            Ok(EXIT_OK)
        }
        Command::ConditionB { file, vertex, depth } => {
            let g = load(&file)?;
            let depth = depth.unwrap_or_else(default_depth);
            let statuses: Vec<BStatus> = match vertex {
                Some(name) => {
                    let v = g.vertex_id(&name).ok_or_else(|| usage(format!("unknown vertex `{name}`")))?;
                    let b: BVerdict = check_vertex_b(&g, v, depth);
                    let _ = writeln!(out, "{name}: {}", b.summary());
                    if let BVerdict::Satisfied(w) = &b {
                        let _ = writeln!(out, "witness {}", w.display(&g));
                    }
                    vec![b.status()]
                }
                None => {
                    let rep = check_graph_b(&g, depth);
                    let _ = writeln!(out, "{}", rep.summary(&g));
                    rep.verdicts.iter().map(|(_, b)| b.status()).collect()
                }
            };
            Ok(if statuses.contains(&BStatus::Unknown) { EXIT_UNKNOWN } else { EXIT_OK })
        }
        Command::KpEval { file, expr, is_zero, graded, in_ideal } => {
            let g = load(&file)?;
            let alg = Algebra::new(&g).map_err(usage)?;
            let x = parse_kp_expr(&expr, &alg).map_err(usage)?;
            if is_zero {
                out.push_str(if alg.is_zero(&x) { "zero\n" } else { "nonzero\n" });
            } else if graded {
                let parts = alg.graded_parts(&x);
                if parts.is_empty() {
                    out.push_str("0\n");
                }
                for (d, part) in parts {
                    let _ = writeln!(out, "{d}: {}", part.display(&g));
                }
            } else if let Some(list) = in_ideal {
                let h = sh_set(&g, &list)?;
                let inside = alg.ideal_membership(&x, &h).map_err(usage)?;
                let _ = writeln!(out, "{}in I({})", if inside { "" } else { "not " }, h.display(&g));
            } else {
                let _ = writeln!(out, "{}", alg.normal_form(&x).display(&g));
            }
            Ok(EXIT_OK)
        }
        Command::Verify { file, theorem, set, depth } => {
            let g = load(&file)?;
            let depth = depth.unwrap_or_else(default_depth);
            let report = match theorem {
                Theorem::Lattice => verify_lattice_iso(&g),
                Theorem::Regular => verify_thm3(&g),
                Theorem::Quotients => verify_thm5(&g, depth),
                Theorem::Largest | Theorem::Graded => verify_thm31_33(&g, depth),
                Theorem::QuotientIso => {
                    let list = set.ok_or_else(|| usage("--theorem quotient needs --set"))?;
                    verify_quotient_iso(&g, &parse_set(&g, &list)?)
                }
            }
            .map_err(usage)?;
            out.push_str(&report.to_text());
            Ok(match report.status() {
                ReportStatus::Pass => EXIT_OK,
                ReportStatus::Fail => EXIT_FAIL,
                ReportStatus::Partial => EXIT_UNKNOWN,
            })
        }
        Command::Gen { k, vertices, density, seed, acyclic } => {
            if k == 0 || vertices == 0 || !(0.0..=1.0).contains(&density) {
                return Err(usage("need k ≥ 1, vertices ≥ 1 and density in [0, 1]"));
            }
            let g = if acyclic {
                random_acyclic_kgraph(k, vertices, density, seed)
            } else {
                random_kgraph(k, vertices, density, seed)
            };
            out.push_str(&serialize_kgraph(&g));
            Ok(EXIT_OK)
        }
    }
}
