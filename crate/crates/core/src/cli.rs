//! The `tauq` command line.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::additive::{self, Flavor, LMinusConstraint};
use crate::chains::{self, default_bound};
use crate::classify;
use crate::error::{Result, TauqError};
use crate::io::corpus;
use crate::io::format::{parse_quiver, render_quiver};
use crate::io::report::{Format, Report};
use crate::quiver::TranslationQuiver;
use crate::rejection;
use crate::vertex::VertexId;

#[derive(Debug, Parser)]
#[command(name = "tauq", version, about = "Analyse finite translation quivers")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Iteration bound for every ladder (default 16·|Q|).
    #[arg(long, global = true, env = "TAUQ_BOUND")]
    pub bound: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FlavorArg {
    Right,
    Left,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum LMinusArg {
    Free,
    Inj,
    Sinks,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the translation-quiver axioms and admissibility.
    Validate { source: String },
    /// Evaluate the chain conditions and the additive-function verdicts.
    Classify { source: String },
    /// The θ-ladder of a vertex.
    Theta { source: String, vertex: String },
    /// The η-ladder of a vertex.
    Eta { source: String, vertex: String },
    /// Nakayama pairs, for one vertex or all of them.
    Nakayama {
        source: String,
        vertex: Option<String>,
    },
    /// Search for an additive function.
    Additive {
        source: String,
        #[arg(long, value_enum, default_value = "right")]
        flavor: FlavorArg,
        #[arg(long, value_enum, default_value = "free")]
        lminus: LMinusArg,
    },
    /// Test a deleted vertex set for triviality and rejectivity.
    Reject {
        source: String,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        delete: Vec<String>,
    },
    /// Hom-length basis of right additive functions.
    Basis { source: String },
    /// The built-in fixtures.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CorpusAction {
    List,
    Show { name: String },
}

/// `FILE` or `corpus:NAME`.
fn load_text(source: &str) -> Result<String> {
    if let Some(name) = source.strip_prefix("corpus:") {
        return Ok(corpus::text(name)?.to_owned());
    }
    std::fs::read_to_string(PathBuf::from(source))
        .map_err(|e| TauqError::Precondition(format!("cannot read {source}: {e}")))
}

fn load(source: &str) -> Result<TranslationQuiver> {
    Ok(parse_quiver(&load_text(source)?)?.lower()?)
}

fn vertex(q: &TranslationQuiver, id: &str) -> Result<VertexId> {
    q.vertex(id)
}

fn execute(cli: &Cli, warn: &mut dyn Write) -> Result<Report> {
    let fmt = cli.format;
    let bound_for = |q: &TranslationQuiver| cli.bound.unwrap_or_else(|| default_bound(q));
    let report = match &cli.command {
        Command::Validate { source } => {
            let q = parse_quiver(&load_text(source)?)?.lower_unchecked()?;
            let validation = q.validate();
            let admissibility = validation.ok.then(|| q.admissibility());
            Report::new(
                "validate",
                q.name(),
                json!({
                    "vertices": q.len(),
                    "arrows": q.arrows().count(),
                    "validation": validation,
                    "admissibility": admissibility,
                }),
                fmt,
            )
        }
        Command::Classify { source } => {
            let q = load(source)?;
            let r = classify::classify(&q, bound_for(&q))?;
            if r.consistent == Some(false) {
                let _ = writeln!(
                    warn,
                    "warning: chain verdicts {:?} disagree with solver verdicts {:?}",
                    r.chain_verdicts(),
                    r.solver_verdicts()
                );
            }
            Report::new("classify", q.name(), r, fmt)
        }
        Command::Theta { source, vertex: v } => {
            let q = load(source)?;
            let chain = chains::theta_chain(&q, &vertex(&q, v)?, bound_for(&q))?;
            Report::new(
                "theta",
                q.name(),
                json!({"table": chain.render(), "chain": chain}),
                fmt,
            )
        }
        Command::Eta { source, vertex: v } => {
            let q = load(source)?;
            let chain = chains::eta_chain(&q, &vertex(&q, v)?, bound_for(&q))?;
            Report::new(
                "eta",
                q.name(),
                json!({"table": chain.render(), "chain": chain}),
                fmt,
            )
        }
        Command::Nakayama { source, vertex: v } => {
            let q = load(source)?;
            let bound = bound_for(&q);
            match v {
                Some(v) => {
                    let x = vertex(&q, v)?;
                    let minus = chains::nakayama_minus(&q, &x, bound)?;
                    let plus = chains::nakayama_plus(&q, &x, bound)?;
                    Report::new(
                        "nakayama",
                        q.name(),
                        json!({
                            "n_minus": {
                                "defined": minus.defined,
                                "target": minus.target,
                                "n": minus.n,
                                "failure": minus.failure,
                                "table": minus.chain.render(),
                            },
                            "n_plus": {"defined": plus.defined(), "source": plus.source},
                        }),
                        fmt,
                    )
                }
                None => {
                    let pairs: serde_json::Map<String, serde_json::Value> =
                        chains::nakayama_pairs(&q, bound)
                            .into_iter()
                            .map(|(a, r)| (a.to_string(), json!(r.target)))
                            .collect();
                    Report::new("nakayama", q.name(), json!({ "pairs": pairs }), fmt)
                }
            }
        }
        Command::Additive {
            source,
            flavor,
            lminus,
        } => {
            let q = load(source)?;
            let flavor = match flavor {
                FlavorArg::Right => Flavor::Right,
                FlavorArg::Left => Flavor::Left,
                FlavorArg::Both => Flavor::Both,
            };
            let c = match lminus {
                LMinusArg::Free => LMinusConstraint::Free,
                LMinusArg::Inj => LMinusConstraint::EqualToInjectives,
                LMinusArg::Sinks => LMinusConstraint::EqualToSinks,
            };
            Report::new("additive", q.name(), additive::find(&q, flavor, c), fmt)
        }
        Command::Reject { source, delete } => {
            let q = load(source)?;
            let mut deleted = BTreeSet::new();
            for id in delete.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
                deleted.insert(vertex(&q, id)?);
            }
            let verdict = rejection::analyze_deletion(&q, &deleted, bound_for(&q))?;
            let dk = (deleted.len() == 1)
                .then(|| rejection::dk_singleton(&q, deleted.first().expect("one vertex")))
                .transpose()?;
            Report::new(
                "reject",
                q.name(),
                json!({
                    "verdict": verdict,
                    "dk_singleton": dk,
                    "rejectable_singletons": rejection::rejectable_singletons(&q),
                }),
                fmt,
            )
        }
        Command::Basis { source } => {
            let q = load(source)?;
            let bound = bound_for(&q);
            let h = chains::hom_length_matrix(&q, bound)?;
            let basis: serde_json::Map<String, serde_json::Value> = q
                .projectives()
                .iter()
                .filter_map(|x| Some((x.to_string(), json!(h.row(x)?))))
                .collect();
            let s_plus = match additive::s_plus(&q, bound) {
                Ok(s) => json!(s),
                Err(TauqError::Precondition(msg)) => json!({ "unavailable": msg }),
                Err(e) => return Err(e),
            };
            Report::new(
                "basis",
                q.name(),
                json!({"projective_basis": basis, "s_plus": s_plus, "hom_length": h}),
                fmt,
            )
        }
        Command::Corpus { action } => {
            match action {
                CorpusAction::List => {
                    let mut entries = Vec::new();
                    for name in corpus::names() {
                        let q = corpus::load(name)?;
                        entries.push(json!({"name": name, "vertices": q.len(), "arrows": q.arrows().count()}));
                    }
                    Report::new("corpus list", "-", entries, fmt)
                }
                CorpusAction::Show { name } => {
                    let q = corpus::load(name)?;
                    let text = render_quiver(&q);
                    Report::new("corpus show", q.name(), json!({ "text": text }), fmt)
                }
            }
        }
    };
    Ok(report)
}

/// Runs the CLI; returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli, err) {
        Ok(report) => {
            let _ = out.write_all(report.render().as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
