//! Command surface: every subcommand reads Gauss codes, emits one JSON
//! document on stdout, and exits 0 on success, 1 on a domain error, 2 on a
//! usage error. Identical arguments and seeds produce byte-identical output.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::PathBuf;

use freelinks::{
    bracket_full, bracket_knot, bracket_rel, bounded_equiv, classify_knot, covering_k2,
    cycle_basis, enumerate_knots, f_pq, gaussian_assignment, homology_parity,
    kprime_from_k2, p_pq, parse_corpus, pl_assignment, projection_kprime, run_orbit, turaev_delta,
    CanonMode, DeltaMode, DeltaOptions, Error, EquivVerdict, LinkDiagram, OrbitCheck,
    OrbitOptions, Pattern, SearchBudget,
};

#[derive(Parser)]
#[command(name = "freelinks", version, about = "Diagram invariants of free knots and links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Args, Clone)]
struct InputArgs {
    /// A Gauss code: components separated by `/`, `()` for a circle.
    #[arg(value_name = "CODE")]
    code: Option<String>,
    /// Process every entry of a corpus file (`name: code` per line).
    #[arg(long, conflicts_with = "code", value_name = "FILE")]
    corpus: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Search depth for bounded oracles.
    #[arg(long, value_name = "N")]
    budget_depth: Option<usize>,
    /// State cap for bounded oracles.
    #[arg(long, value_name = "N")]
    budget_states: Option<usize>,
    /// Crossing cap for increasing moves in searches and orbits.
    #[arg(long, value_name = "N")]
    max_crossings: Option<usize>,
}

impl BudgetArgs {
    fn budget(&self, default_crossings: usize) -> SearchBudget {
        let d = SearchBudget::default();
        SearchBudget {
            max_crossings: self.max_crossings.unwrap_or(default_crossings),
            max_depth: self.budget_depth.unwrap_or(d.max_depth),
            max_states: self.budget_states.unwrap_or(d.max_states),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate a code and report its crossings.
    Parse(InputArgs),
    /// Canonical form of a diagram.
    Canon {
        #[command(flatten)]
        input: InputArgs,
        /// Keep the component order fixed.
        #[arg(long)]
        ordered: bool,
    },
    /// Parity values of pure crossings.
    Parity {
        #[command(flatten)]
        input: InputArgs,
        /// gaussian, pL, or homology.
        #[arg(long, default_value = "gaussian")]
        rule: String,
        /// The distinguished component (K for pL, L for homology).
        #[arg(long, default_value_t = 0)]
        component: usize,
    },
    /// Diagram-valued bracket invariants.
    Bracket {
        #[command(flatten)]
        input: InputArgs,
        /// G (full), G1 (knot), or G2rel (ordered two-component).
        #[arg(long, default_value = "G")]
        space: String,
    },
    /// Turaev's cobracket and its pattern projection.
    Delta {
        #[command(flatten)]
        input: InputArgs,
        /// nonsplit or no-trivial-component.
        #[arg(long, default_value = "no-trivial-component")]
        mode: String,
        /// A two-component pattern code (or a file containing one); switches
        /// to the pattern projection of the ordered cobracket.
        #[arg(long, value_name = "CODE")]
        pattern: Option<String>,
        /// Report the pattern parity of this crossing of the first component.
        #[arg(long, value_name = "CROSSING", requires = "pattern")]
        parity_of: Option<String>,
        /// Record undecided filter verdicts instead of aborting.
        #[arg(long)]
        lax: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// The two-fold covering and its one-sheet projection.
    Cover {
        #[command(flatten)]
        input: InputArgs,
        /// k2, kprime, or both.
        #[arg(long, default_value = "both")]
        emit: String,
    },
    /// Bounded equivalence search between two codes.
    Equiv {
        #[arg(value_name = "CODE1")]
        code1: String,
        #[arg(value_name = "CODE2")]
        code2: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Seeded random-move orbit recomputing named invariants.
    Orbit {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        length: usize,
        /// Comma-separated checks: bracket, bracket-full, bracket-rel,
        /// delta, delta-l, gaussian-axioms, pl-axioms, pl-odd-exists,
        /// component-count, mixed-parity.
        #[arg(long, default_value = "component-count")]
        invariants: String,
        /// The distinguished component for pL checks.
        #[arg(long, default_value_t = 0)]
        component: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Exhaustive canonical knot diagrams with classification.
    Enumerate {
        #[arg(long, value_name = "N")]
        max_chords: usize,
    },
}

pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum CliError {
    Domain(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult = Result<Value, CliError>;

pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version renders go to stdout with success.
            let rendered = e.render().to_string();
            let code = if e.exit_code() == 0 { 0 } else { 2 };
            return if code == 0 {
                CommandOutput {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                CommandOutput {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    let pretty = cli.pretty;
    let result = dispatch(cli.command);
    let (code, value) = match result {
        Ok(v) => (0, v),
        Err(CliError::Domain(e)) => (
            1,
            json!({ "error": { "code": e.code(), "message": e.to_string() } }),
        ),
        Err(CliError::Usage(msg)) => {
            return CommandOutput {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
    };
    let rendered = if pretty {
        serde_json::to_string_pretty(&value).expect("report serializes")
    } else {
        serde_json::to_string(&value).expect("report serializes")
    };
    CommandOutput {
        code,
        stdout: rendered + "\n",
        stderr: String::new(),
    }
}

fn dispatch(command: Command) -> CliResult {
    match command {
        Command::Parse(input) => for_input(&input, &mut |d| {
            let classification: BTreeMap<String, String> = d
                .classify()
                .into_iter()
                .map(|(k, v)| (k, v.to_string()))
                .collect();
            Ok(json!({
                "components": d.component_count(),
                "crossings": d.crossing_count(),
                "classification": classification,
            }))
        }),
        Command::Canon { input, ordered } => for_input(&input, &mut |d| {
            let mode = if ordered {
                CanonMode::Ordered
            } else {
                CanonMode::Unordered
            };
            Ok(json!({ "canonical": d.canonical(mode).text(), "ordered": ordered }))
        }),
        Command::Parity {
            input,
            rule,
            component,
        } => {
            let rule = rule.clone();
            for_input(&input, &mut |d| parity_report(d, &rule, component))
        }
        Command::Bracket { input, space } => {
            let space = space.clone();
            for_input(&input, &mut |d| {
                let value = match space.as_str() {
                    "G" => bracket_full(d)?,
                    "G1" => bracket_knot(d)?,
                    "G2rel" => bracket_rel(d)?,
                    other => {
                        return Err(CliError::Usage(format!(
                            "unknown bracket space `{other}` (expected G, G1 or G2rel)"
                        )))
                    }
                };
                Ok(json!({
                    "space": space,
                    "terms": value.term_texts(),
                    "zero": value.is_zero(),
                }))
            })
        }
        Command::Delta {
            input,
            mode,
            pattern,
            parity_of,
            lax,
            budget,
        } => {
            let opts_of = |d: &LinkDiagram| -> Result<DeltaOptions, CliError> {
                Ok(DeltaOptions {
                    mode: parse_mode(&mode)?,
                    strict: !lax,
                    budget: budget.budget(d.crossing_count() + 2),
                })
            };
            let pattern_diagram = pattern
                .as_deref()
                .map(load_code_or_file)
                .transpose()?;
            for_input(&input, &mut |d| {
                let opts = opts_of(d)?;
                let value = match &pattern_diagram {
                    None => turaev_delta(d, &opts)?,
                    Some(p) => {
                        let validated = Pattern::validate(p, &opts.budget)?;
                        f_pq(d, &validated, &opts)?
                    }
                };
                let mut report = json!({
                    "mode": mode_name(opts.mode),
                    "terms": value.term_texts(),
                    "zero": value.is_zero(),
                    "dropped": value.dropped,
                    "undecided": value.undecided.len(),
                });
                if let (Some(label), Some(p)) = (&parity_of, &pattern_diagram) {
                    let validated = Pattern::validate(p, &opts.budget)?;
                    let x = d.crossing_by_label(label)?;
                    let bit = p_pq(d, x, &validated, &opts)?;
                    report["parity"] = json!({ label: bit });
                }
                Ok(report)
            })
        }
        Command::Cover { input, emit } => {
            let emit = emit.clone();
            for_input(&input, &mut |d| cover_report(d, &emit))
        }
        Command::Equiv {
            code1,
            code2,
            budget,
        } => {
            let d1 = LinkDiagram::parse(&code1).map_err(CliError::Domain)?;
            let d2 = LinkDiagram::parse(&code2).map_err(CliError::Domain)?;
            let b = budget.budget(d1.crossing_count().max(d2.crossing_count()) + 2);
            let report = match bounded_equiv(&d1, &d2, &b) {
                EquivVerdict::Equivalent(path) => json!({
                    "verdict": "equivalent",
                    "path": path,
                }),
                EquivVerdict::Distinct(invariant) => json!({
                    "verdict": "distinct",
                    "invariant": invariant,
                }),
                EquivVerdict::Unknown => json!({ "verdict": "unknown" }),
            };
            let mut report = report;
            report["budget"] = serde_json::to_value(b).expect("budget serializes");
            Ok(report)
        }
        Command::Orbit {
            input,
            seed,
            length,
            invariants,
            component,
            budget,
        } => {
            let invariants = invariants.clone();
            for_input(&input, &mut |d| {
                let b = budget.budget(d.crossing_count() + 2);
                let checks = parse_checks(&invariants, component, &b)?;
                let opts = OrbitOptions {
                    seed,
                    length,
                    max_crossings: b.max_crossings,
                    include_increasing: true,
                };
                let report = run_orbit(d, &checks, &opts)?;
                Ok(serde_json::to_value(report).expect("report serializes"))
            })
        }
        Command::Enumerate { max_chords } => {
            if max_chords > 8 {
                return Err(CliError::Domain(Error::Corpus(
                    "enumerate supports at most 8 chords".into(),
                )));
            }
            let knots: Vec<Value> = enumerate_knots(max_chords)
                .iter()
                .map(|d| {
                    let class = classify_knot(d);
                    let bracket = bracket_knot(d).expect("knot input");
                    let delta = turaev_delta(
                        d,
                        &DeltaOptions {
                            strict: false,
                            ..DeltaOptions::default()
                        },
                    )
                    .expect("lax delta");
                    json!({
                        "code": class.code,
                        "chords": class.chords,
                        "all_odd": class.all_odd,
                        "r2_irreducible": class.r2_irreducible,
                        "bracket": bracket.term_texts(),
                        "bracket_zero": bracket.is_zero(),
                        "delta": delta.term_texts(),
                        "delta_undecided": delta.undecided.len(),
                    })
                })
                .collect();
            Ok(json!({ "max_chords": max_chords, "count": knots.len(), "knots": knots }))
        }
    }
}

fn parse_mode(mode: &str) -> Result<DeltaMode, CliError> {
    match mode {
        "nonsplit" => Ok(DeltaMode::Nonsplit),
        "no-trivial-component" => Ok(DeltaMode::NoTrivialComponent),
        other => Err(CliError::Usage(format!(
            "unknown delta mode `{other}` (expected nonsplit or no-trivial-component)"
        ))),
    }
}

fn mode_name(mode: DeltaMode) -> &'static str {
    match mode {
        DeltaMode::Nonsplit => "nonsplit",
        DeltaMode::NoTrivialComponent => "no-trivial-component",
    }
}

fn load_code_or_file(value: &str) -> Result<LinkDiagram, CliError> {
    let text = if std::path::Path::new(value).is_file() {
        std::fs::read_to_string(value)
            .map_err(|e| CliError::Usage(format!("cannot read `{value}`: {e}")))?
    } else {
        value.to_string()
    };
    LinkDiagram::parse(text.trim()).map_err(CliError::Domain)
}

fn for_input(
    input: &InputArgs,
    per_diagram: &mut dyn FnMut(&LinkDiagram) -> CliResult,
) -> CliResult {
    match (&input.code, &input.corpus) {
        (Some(code), None) => {
            let d = LinkDiagram::parse(code).map_err(CliError::Domain)?;
            per_diagram(&d)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read corpus: {e}")))?;
            let mut entries = parse_corpus(&text).map_err(CliError::Domain)?;
            entries.sort_by(|a, b| a.name.cmp(&b.name));
            let mut results: BTreeMap<String, Value> = BTreeMap::new();
            for entry in entries {
                let d = entry.diagram().map_err(CliError::Domain)?;
                let value = match per_diagram(&d) {
                    Ok(v) => v,
                    Err(CliError::Domain(e)) => {
                        json!({ "error": { "code": e.code(), "message": e.to_string() } })
                    }
                    Err(usage) => return Err(usage),
                };
                results.insert(entry.name, value);
            }
            Ok(json!({ "entries": results }))
        }
        _ => Err(CliError::Usage(
            "provide a CODE argument or --corpus FILE".into(),
        )),
    }
}

fn parity_report(d: &LinkDiagram, rule: &str, component: usize) -> CliResult {
    match rule {
        "gaussian" => {
            let assignment = gaussian_assignment(d)?;
            Ok(serde_json::to_value(assignment.values).expect("values serialize"))
        }
        "pL" | "pl" => {
            let assignment = pl_assignment(d, component)?;
            Ok(serde_json::to_value(assignment.values).expect("values serialize"))
        }
        "homology" => {
            let basis = cycle_basis(d, component)?;
            let k = 1 - component;
            let mut values: BTreeMap<String, Vec<Value>> = BTreeMap::new();
            for &x in d.word(k) {
                let [a, b] = d.occurrences(x);
                if a.0 != b.0 || a.0 != k {
                    continue;
                }
                let mut bits = Vec::new();
                for (i, cycle) in basis.cycles.iter().enumerate() {
                    if cycle.valid {
                        bits.push(json!(homology_parity(d, x, &basis, i)?));
                    } else {
                        bits.push(Value::Null);
                    }
                }
                values.insert(d.label(x).to_string(), bits);
            }
            Ok(json!({
                "cycles": basis.cycles,
                "values": values,
            }))
        }
        other => Err(CliError::Usage(format!(
            "unknown parity rule `{other}` (expected gaussian, pL or homology)"
        ))),
    }
}

fn cover_report(d: &LinkDiagram, emit: &str) -> CliResult {
    let covering = covering_k2(d);
    let k2_part = || -> Value {
        let involution: BTreeMap<String, String> = (0..covering.graph.vertex_count())
            .map(|v| {
                (
                    covering.graph.label(v).to_string(),
                    covering.graph.label(covering.vertex_dual[v]).to_string(),
                )
            })
            .collect();
        let duality: Vec<Vec<usize>> = covering
            .component_dual
            .iter()
            .enumerate()
            .filter(|(i, &j)| *i < j)
            .map(|(i, &j)| vec![i, j])
            .collect();
        json!({
            "code": covering.to_diagram().serialize(),
            "involution": involution,
            "duality": duality,
            "circle_pairs": covering.circle_pairs,
        })
    };
    match emit {
        "k2" => Ok(json!({ "k2": k2_part() })),
        "kprime" => {
            let sheet = kprime_from_k2(&covering)?;
            let direct = projection_kprime(d).ok().map(|p| p.serialize());
            Ok(json!({ "kprime": sheet.serialize(), "chord_deletion": direct }))
        }
        "both" => {
            let sheet = kprime_from_k2(&covering)?;
            let direct = projection_kprime(d).ok().map(|p| p.serialize());
            Ok(json!({
                "k2": k2_part(),
                "kprime": sheet.serialize(),
                "chord_deletion": direct,
            }))
        }
        other => Err(CliError::Usage(format!(
            "unknown emit target `{other}` (expected k2, kprime or both)"
        ))),
    }
}

fn parse_checks(
    invariants: &str,
    component: usize,
    budget: &SearchBudget,
) -> Result<Vec<OrbitCheck>, CliError> {
    let delta_opts = DeltaOptions {
        budget: *budget,
        ..DeltaOptions::default()
    };
    invariants
        .split(',')
        .map(|name| match name.trim() {
            "bracket" | "bracket-knot" => Ok(OrbitCheck::BracketKnot),
            "bracket-full" => Ok(OrbitCheck::BracketFull),
            "bracket-rel" => Ok(OrbitCheck::BracketRel),
            "delta" => Ok(OrbitCheck::Delta(delta_opts)),
            "delta-l" => Ok(OrbitCheck::DeltaL(delta_opts)),
            "gaussian-axioms" => Ok(OrbitCheck::GaussianAxioms),
            "pl-axioms" => Ok(OrbitCheck::PlAxioms { k: component }),
            "pl-odd-exists" => Ok(OrbitCheck::PlOddCrossingExists { k: component }),
            "component-count" => Ok(OrbitCheck::ComponentCount),
            "mixed-parity" => Ok(OrbitCheck::MixedParity),
            other => Err(CliError::Usage(format!("unknown invariant `{other}`"))),
        })
        .collect()
}
