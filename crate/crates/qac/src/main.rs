use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qac::commands::{self, Families};
use qac::drivers::{pool, Frontier};
use qac::json::parse_vector;
use qac_core::automata::Word;
use qac_core::exactfield::Rational;
use qac_core::groups::{GroupFamily, DEFAULT_CLOSURE_CAP};
use serde::Serialize;

/// Exact verification and search for quantum automatic complexity witnesses.
#[derive(Parser)]
#[command(name = "qac", version)]
struct Cli {
    /// Worker threads for parallel searches (default: one per core).
    #[arg(long, global = true, env = "QAC_WORKERS")]
    workers: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Rebuild the tetrahedral witness for 0011 and certify uniqueness.
    #[command(name = "verify-0011")]
    Verify0011 {
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        orbit_cap: usize,
        /// Conjugation vector `v1,v2`.
        #[arg(long, default_value = "1,2", value_parser = parse_vector)]
        v: [Rational; 2],
    },
    /// Least number of states of a permutation automaton accepting WORD uniquely.
    Aperm {
        #[arg(value_parser = parse_word)]
        word: Word,
        /// Largest state count to try (default |word| + 1).
        #[arg(long)]
        q_max: Option<usize>,
        /// Wall-clock budget in seconds; on expiry a partial report with the
        /// search frontier is written.
        #[arg(long)]
        budget: Option<f64>,
        /// Continue from the frontier of a partial report.
        #[arg(long)]
        resume: Option<PathBuf>,
    },
    /// Scan the finite-group catalog for a semi-classical witness.
    Search {
        #[arg(value_parser = parse_word)]
        word: Word,
        /// Largest projective group order to scan.
        #[arg(long, default_value_t = 121)]
        order_max: usize,
        /// Families to include.
        #[arg(long, value_delimiter = ',', default_value = "cyclic,dihedral,polyhedral")]
        families: Vec<FamilyKind>,
        /// Height bound of the conjugation vector schedule.
        #[arg(long, default_value_t = 3)]
        v_height: i64,
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        orbit_cap: usize,
    },
    /// Commuting exponent and the 0^m 1^m / 1^m 0^m collision in a group.
    Collide {
        #[arg(long)]
        group: GroupFamily,
        #[arg(long)]
        m: Option<usize>,
        /// Work in PU(2) instead of U(2).
        #[arg(long)]
        projective: bool,
    },
    /// Graphviz output for the 0011 witness orbit or a group's Cayley graph.
    Export {
        #[command(flatten)]
        target: ExportTarget,
        #[arg(long)]
        projective: bool,
        #[arg(long, default_value = "1,2", value_parser = parse_vector)]
        v: [Rational; 2],
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        orbit_cap: usize,
    },
    /// Floating-point check that Haar-random unitary pairs accept WORD uniquely.
    FloatCheck {
        #[arg(long = "word", value_parser = parse_word, required = true)]
        words: Vec<Word>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value = "1e-8", value_parser = parse_tol)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use the same sample for both letters.
        #[arg(long)]
        equal: bool,
    },
    /// Summary of a catalog group.
    Group {
        group: GroupFamily,
        #[arg(long)]
        projective: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ExportTarget {
    /// Export the orbit automaton of the 0011 witness.
    #[arg(long)]
    witness: bool,
    /// Export the Cayley graph of a catalog group.
    #[arg(long)]
    group: Option<GroupFamily>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    Cyclic,
    Dihedral,
    Polyhedral,
}

fn parse_word(s: &str) -> Result<Word, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(format!("`{s}` is not a positive decimal")),
    }
}

fn render<T: Serialize>(value: &T, format: Format) -> Result<String> {
    let v = serde_json::to_value(value)?;
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(value)? + "\n",
        Format::Text => {
            let mut out = String::new();
            text(&v, "", &mut out);
            out
        }
    })
}

fn text(v: &serde_json::Value, prefix: &str, out: &mut String) {
    use serde_json::Value;
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                text(x, &key, out);
            }
        }
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = xs.iter().map(scalar).collect();
            out.push_str(&format!("{prefix}: [{}]\n", parts.join(", ")));
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                text(x, &format!("{prefix}[{i}]"), out);
            }
        }
        _ => out.push_str(&format!("{prefix}: {}\n", scalar(v))),
    }
}

fn scalar(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn emit<T: Serialize>(value: &T, format: Format, ok: bool) -> Result<ExitCode> {
    print!("{}", render(value, format)?);
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

#[derive(serde::Deserialize)]
struct PartialReport {
    word: String,
    frontier: Option<Frontier>,
}

fn run(cli: Cli) -> Result<ExitCode> {
    let fmt = cli.format;
    let workers = cli.workers;
    match cli.command {
        Command::Verify0011 { orbit_cap, v } => {
            let r = commands::verify_0011(&v, orbit_cap)?;
            if r.labels_match == Some(false) {
                eprintln!("orbit labels differ from the reference cuboctahedron");
                eprintln!("  missing:    {:?}", r.missing_labels);
                eprintln!("  unexpected: {:?}", r.unexpected_labels);
            }
            emit(&r, fmt, r.ok)
        }
        Command::Aperm {
            word,
            q_max,
            budget,
            resume,
        } => {
            if word.is_empty() || word.len() > 9 {
                bail!("aperm needs 1 ≤ |word| ≤ 9, got {}", word.len());
            }
            let resume = match resume {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    let partial: PartialReport =
                        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
                    if partial.word != word.to_string() {
                        bail!("{} is a report for `{}`, not `{word}`", path.display(), partial.word);
                    }
                    partial.frontier
                }
                None => None,
            };
            let budget = budget.map(Duration::from_secs_f64);
            let p = pool(workers)?;
            let r = commands::aperm(&p, &word, q_max.unwrap_or(word.len() + 1), budget, resume)?;
            let ok = r.ok();
            if !r.complete {
                eprintln!("budget exhausted; resume with --resume on this report");
            }
            emit(&r, fmt, ok)
        }
        Command::Search {
            word,
            order_max,
            families,
            v_height,
            orbit_cap,
        } => {
            if word.is_empty() {
                bail!("the empty word has no witness to search for");
            }
            let fam = Families {
                cyclic: families.contains(&FamilyKind::Cyclic),
                dihedral: families.contains(&FamilyKind::Dihedral),
                polyhedral: families.contains(&FamilyKind::Polyhedral),
            };
            let p = pool(workers)?;
            let r = commands::search(&p, &word, order_max, fam, v_height, orbit_cap)?;
            emit(&r, fmt, r.ok())
        }
        Command::Collide { group, m, projective } => {
            if m == Some(0) {
                bail!("--m must be positive");
            }
            let r = commands::collide(group, projective, m)?;
            emit(&r, fmt, true)
        }
        Command::Export {
            target,
            projective,
            v,
            orbit_cap,
        } => {
            let dot = match target.group {
                Some(g) => commands::export_group(g, projective)?,
                None => commands::export_witness(&v, orbit_cap)?,
            };
            print!("{dot}");
            Ok(ExitCode::SUCCESS)
        }
        Command::FloatCheck {
            words,
            trials,
            tol,
            seed,
            equal,
        } => {
            let reports = words
                .iter()
                .map(|w| commands::float_check(w, trials, tol, seed, equal))
                .collect::<Result<Vec<_>, _>>()?;
            emit(&reports, fmt, true)
        }
        Command::Group { group, projective } => {
            let r = commands::group(group, projective)?;
            emit(&r, fmt, true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
