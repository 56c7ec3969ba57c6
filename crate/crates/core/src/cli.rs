//! The `wocycle` command line.
//!
//! Exit codes: 0 success, 1 usage or parameter error, 2 the requested cycle
//! does not exist (the transition graph is unbalanced or disconnected),
//! 3 verification failed.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::euler::{self, CycleResult, EulerError};
use crate::family::Family;
use crate::graph::TransitionGraph;
use crate::oracle::{self, MinVertexForm, OracleError};
use crate::word::{self, render_symbols, Symbol};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_CYCLE: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "wocycle",
    version,
    about = "Universal and overlap cycles for weak orders",
    after_help = "Family descriptors: wn:n=5  wnh:n=6,h=2  wkn:n=6,k=4  wknh:n=6,k=4,h=2  \
                  wk-full:n=5,k=4  wknh-full:n=5,k=4,h=2  ms:0,0,1,2  bin:n=3"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a cycle from an Euler tour of the transition graph.
    Generate {
        family: String,
        #[command(flatten)]
        overlap: OverlapArg,
        /// Emit the least rotation that keeps word boundaries aligned.
        #[arg(long)]
        canonical: bool,
        /// Write the cycle file here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a cycle file against a family.
    Verify {
        file: PathBuf,
        family: String,
        /// Overlap of consecutive words; defaults to the file header, then to L − 1.
        #[arg(long)]
        overlap: Option<usize>,
    },
    /// Print the number of words in a family.
    Count { family: String },
    /// Print every word of a family, one per line, in lexicographic order.
    Enumerate { family: String },
    /// Print a JSON summary of the transition graph.
    Inspect {
        family: String,
        #[command(flatten)]
        overlap: OverlapArg,
    },
    /// Print the transition graph in Graphviz format.
    Dot {
        family: String,
        #[command(flatten)]
        overlap: OverlapArg,
    },
    /// Closed-form minimum vertex of the fixed-weight prefix graph, checked
    /// against exhaustive search.
    MinVertex {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u64,
        /// Use the fixed weight and height family instead.
        #[arg(long)]
        height: Option<Symbol>,
        /// Evaluate the uncorrected formula.
        #[arg(long, conflicts_with = "height")]
        literal: bool,
    },
    /// Convert a relation such as `2<1=3` to its height word and ordered partition.
    Relation { text: String },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct OverlapArg {
    /// Overlap size s between consecutive words.
    #[arg(long)]
    overlap: Option<usize>,
    /// Universal cycle: overlap L − 1.
    #[arg(long)]
    ucycle: bool,
}

impl OverlapArg {
    fn resolve(&self, family: &Family) -> usize {
        self.overlap.unwrap_or_else(|| family.ucycle_overlap())
    }
}

/// Header line of a cycle file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleHeader {
    pub family: String,
    pub overlap: usize,
    pub word_length: usize,
    pub count: usize,
}

/// Renders a cycle as `# family=… s=… L=… count=…` followed by one line of
/// space-separated symbols.
pub fn format_cycle_file(cycle: &CycleResult) -> String {
    format!(
        "# family={} s={} L={} count={}\n{}\n",
        cycle.family,
        cycle.overlap,
        cycle.object_length,
        cycle.object_count,
        render_symbols(&cycle.symbols)
    )
}

/// Parses a cycle file. The header is optional; body tokens may span
/// several lines.
pub fn parse_cycle_file(text: &str) -> Result<(Option<CycleHeader>, Vec<Symbol>), String> {
    let mut header = None;
    let mut symbols = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix('#') {
            if header.is_none() && rest.contains("family=") {
                header = Some(parse_header(rest).map_err(|e| format!("line {}: {e}", lineno + 1))?);
            }
            continue;
        }
        let tokens = word::parse_symbols(line)
            .map_err(|e| format!("line {}: bad symbol: {e}", lineno + 1))?;
        symbols.extend(tokens);
    }
    Ok((header, symbols))
}

fn parse_header(rest: &str) -> Result<CycleHeader, String> {
    let mut family = None;
    let mut overlap = None;
    let mut word_length = None;
    let mut count = None;
    for field in rest.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| format!("header field {field:?} is not key=value"))?;
        let number = || value.parse::<usize>().map_err(|e| format!("{key}: {e}"));
        match key {
            "family" => family = Some(value.to_string()),
            "s" => overlap = Some(number()?),
            "L" => word_length = Some(number()?),
            "count" => count = Some(number()?),
            other => return Err(format!("unknown header field {other:?}")),
        }
    }
    let missing = |name: &str| format!("header is missing {name}");
    Ok(CycleHeader {
        family: family.ok_or_else(|| missing("family"))?,
        overlap: overlap.ok_or_else(|| missing("s"))?,
        word_length: word_length.ok_or_else(|| missing("L"))?,
        count: count.ok_or_else(|| missing("count"))?,
    })
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) {
    let _ = writeln!(
        out,
        "{}",
        serde_json::to_string(value).expect("serializable")
    );
}

fn json_pretty<T: Serialize>(out: &mut dyn Write, value: &T) {
    let _ = writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn usage_error(err: &mut dyn Write, message: impl std::fmt::Display) -> i32 {
    json_line(
        err,
        &json!({ "error": "parameter", "message": message.to_string() }),
    );
    EXIT_USAGE
}

fn euler_failure(err: &mut dyn Write, e: &EulerError) -> i32 {
    match e {
        EulerError::NotConnected(d) => {
            json_line(
                err,
                &json!({
                    "error": "not_connected",
                    "message": e.to_string(),
                    "components": d.components,
                    "component_sizes": d.component_sizes,
                    "witnesses": d.witnesses,
                }),
            );
            EXIT_NO_CYCLE
        }
        EulerError::NotBalanced(b) => {
            json_line(
                err,
                &json!({
                    "error": "not_balanced",
                    "message": e.to_string(),
                    "vertex": b.vertex,
                    "in_degree": b.in_degree,
                    "out_degree": b.out_degree,
                }),
            );
            EXIT_NO_CYCLE
        }
        EulerError::Graph(g) => usage_error(err, g),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };

    let parse_family = |d: &str| d.parse::<Family>();
    macro_rules! family {
        ($d:expr) => {
            match parse_family($d) {
                Ok(f) => f,
                Err(e) => return usage_error(err, e),
            }
        };
    }

    match cli.command {
        Command::Generate {
            family,
            overlap,
            canonical,
            out: path,
        } => {
            let family = family!(&family);
            let s = overlap.resolve(&family);
            let cycle = match euler::generate(&family, s) {
                Ok(c) if canonical => c.canonical(),
                Ok(c) => c,
                Err(e) => return euler_failure(err, &e),
            };
            let text = format_cycle_file(&cycle);
            match path {
                Some(path) => {
                    if let Err(e) = fs::write(&path, text) {
                        return usage_error(err, format!("cannot write {}: {e}", path.display()));
                    }
                }
                None => {
                    let _ = out.write_all(text.as_bytes());
                }
            }
            EXIT_OK
        }
        Command::Verify {
            file,
            family,
            overlap,
        } => {
            let family = family!(&family);
            let text = match fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => return usage_error(err, format!("cannot read {}: {e}", file.display())),
            };
            let (header, symbols) = match parse_cycle_file(&text) {
                Ok(parsed) => parsed,
                Err(e) => return usage_error(err, e),
            };
            let s = overlap
                .or(header.map(|h| h.overlap))
                .unwrap_or_else(|| family.ucycle_overlap());
            match oracle::verify_symbols(&symbols, s, &family) {
                Ok(report) => {
                    json_pretty(out, &report);
                    if report.ok {
                        EXIT_OK
                    } else {
                        EXIT_VERIFY_FAILED
                    }
                }
                Err(e @ OracleError::LengthMismatch { expected, actual }) => {
                    json_line(
                        err,
                        &json!({
                            "error": "length_mismatch",
                            "message": e.to_string(),
                            "expected": expected,
                            "actual": actual,
                        }),
                    );
                    EXIT_USAGE
                }
                Err(e) => usage_error(err, e),
            }
        }
        Command::Count { family } => {
            let family = family!(&family);
            match family.count() {
                Ok(c) => {
                    let _ = writeln!(out, "{c}");
                    EXIT_OK
                }
                Err(e) => usage_error(err, e),
            }
        }
        Command::Enumerate { family } => {
            let family = family!(&family);
            match family.enumerate() {
                Ok(list) => {
                    for w in list.iter() {
                        let _ = writeln!(out, "{}", render_symbols(w));
                    }
                    EXIT_OK
                }
                Err(e) => usage_error(err, e),
            }
        }
        Command::Inspect { family, overlap } => {
            let family = family!(&family);
            match TransitionGraph::build(&family, overlap.resolve(&family)) {
                Ok(g) => {
                    json_pretty(out, &g.summary());
                    EXIT_OK
                }
                Err(e) => usage_error(err, e),
            }
        }
        Command::Dot { family, overlap } => {
            let family = family!(&family);
            match TransitionGraph::build(&family, overlap.resolve(&family)) {
                Ok(g) => {
                    let _ = out.write_all(g.to_dot().as_bytes());
                    EXIT_OK
                }
                Err(e) => usage_error(err, e),
            }
        }
        Command::MinVertex {
            n,
            k,
            height,
            literal,
        } => min_vertex(out, err, n, k, height, literal),
        Command::Relation { text } => match word::parse_relation(&text) {
            Ok(w) => {
                json_pretty(
                    out,
                    &json!({
                        "relation": w.to_relation(),
                        "word": w.symbols(),
                        "ordered_partition": w.to_ordered_partition().to_string(),
                        "height": w.height(),
                        "weight": w.weight(),
                    }),
                );
                EXIT_OK
            }
            Err(e) => usage_error(err, e),
        },
    }
}

fn min_vertex(
    out: &mut dyn Write,
    err: &mut dyn Write,
    n: usize,
    k: u64,
    height: Option<Symbol>,
    literal: bool,
) -> i32 {
    let family = match height {
        Some(h) => Family::fixed_weight_height_prefix(n, k, h),
        None => Family::fixed_weight_prefix(n, k),
    };
    let family = match family {
        Ok(f) => f,
        Err(e) => return usage_error(err, e),
    };
    let claimed = match height {
        Some(h) => oracle::min_vertex_knh(n, k, h),
        None if literal => oracle::min_vertex_formula(n, k, MinVertexForm::Literal),
        None => oracle::min_vertex_formula(n, k, MinVertexForm::Corrected),
    };
    let claimed = match claimed {
        Ok(c) => c,
        Err(e) => return usage_error(err, e),
    };
    let exhaustive = match oracle::min_vertex_oracle(&family) {
        Ok(v) => v,
        Err(e) => return usage_error(err, e),
    };
    let d = oracle::decompose_weight(k);
    json_pretty(
        out,
        &json!({
            "family": family.to_string(),
            "form": match (height, literal) {
                (Some(_), _) => "fixed-height",
                (None, true) => "literal",
                (None, false) => "corrected",
            },
            "a": d.a,
            "b": d.b,
            "word": claimed.word,
            "word_weight": word::weight(&claimed.word),
            "vertex": claimed.vertex,
            "exhaustive_vertex": exhaustive,
            "matches": claimed.vertex == exhaustive,
        }),
    );
    EXIT_OK
}
