//! Seeded random-move orbits recomputing named invariants at every step.
//!
//! An orbit report is replayable: the same seed and options reproduce the
//! same move path bit for bit. Value checks compare each step against the
//! starting value; axiom checks run on every applied move; predicate checks
//! run on every visited diagram.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

use crate::bracket::{bracket_full, bracket_knot, bracket_rel};
use crate::delta::{delta_l, turaev_delta, DeltaOptions};
use crate::diagram::LinkDiagram;
use crate::error::Result;
use crate::moves::{apply_move, enumerate_moves, MoveApplication, MoveCaps};
use crate::parity::{check_parity_axioms, p_l, ParityRule};

#[derive(Clone, Copy, Debug)]
pub struct OrbitOptions {
    pub seed: u64,
    pub length: usize,
    pub max_crossings: usize,
    pub include_increasing: bool,
}

/// A named check evaluated along an orbit.
#[derive(Clone, Debug)]
pub enum OrbitCheck {
    /// Value checks: recomputed per step and compared with the start.
    BracketFull,
    BracketKnot,
    BracketRel,
    Delta(DeltaOptions),
    DeltaL(DeltaOptions),
    ComponentCount,
    MixedParity,
    /// Axiom checks: verified on every applied move.
    GaussianAxioms,
    PlAxioms { k: usize },
    /// Predicate checks: must hold on every visited diagram.
    PlOddCrossingExists { k: usize },
}

impl OrbitCheck {
    pub fn name(&self) -> &'static str {
        match self {
            OrbitCheck::BracketFull => "bracket-full",
            OrbitCheck::BracketKnot => "bracket",
            OrbitCheck::BracketRel => "bracket-rel",
            OrbitCheck::Delta(_) => "delta",
            OrbitCheck::DeltaL(_) => "delta-l",
            OrbitCheck::ComponentCount => "component-count",
            OrbitCheck::MixedParity => "mixed-parity",
            OrbitCheck::GaussianAxioms => "gaussian-axioms",
            OrbitCheck::PlAxioms { .. } => "pl-axioms",
            OrbitCheck::PlOddCrossingExists { .. } => "pl-odd-exists",
        }
    }

    fn value(&self, d: &LinkDiagram) -> Result<Option<String>> {
        Ok(match self {
            OrbitCheck::BracketFull => Some(format!("{:?}", bracket_full(d)?.term_texts())),
            OrbitCheck::BracketKnot => Some(format!("{:?}", bracket_knot(d)?.term_texts())),
            OrbitCheck::BracketRel => Some(format!("{:?}", bracket_rel(d)?.term_texts())),
            OrbitCheck::Delta(opts) => Some(format!("{:?}", turaev_delta(d, opts)?.term_texts())),
            OrbitCheck::DeltaL(opts) => Some(format!("{:?}", delta_l(d, opts)?.term_texts())),
            OrbitCheck::ComponentCount => Some(d.component_count().to_string()),
            OrbitCheck::MixedParity => Some((d.mixed_count() % 2).to_string()),
            _ => None,
        })
    }

    fn check_move(&self, d: &LinkDiagram, m: &MoveApplication) -> Result<Option<String>> {
        let rule = match self {
            OrbitCheck::GaussianAxioms => ParityRule::Gaussian,
            OrbitCheck::PlAxioms { k } => ParityRule::Relative { k: *k },
            _ => return Ok(None),
        };
        let report = check_parity_axioms(rule, d, m)?;
        Ok(if report.passed() {
            None
        } else {
            Some(report.violations.join("; "))
        })
    }

    fn check_state(&self, d: &LinkDiagram) -> Result<Option<String>> {
        match self {
            OrbitCheck::PlOddCrossingExists { k } => {
                for &x in d.word(*k) {
                    let [a, b] = d.occurrences(x);
                    if a.0 == b.0 && a.0 == *k && p_l(d, *k, x)? == 1 {
                        return Ok(None);
                    }
                }
                Ok(Some(format!(
                    "component {k} has no odd crossing in {}",
                    d.serialize()
                )))
            }
            _ => Ok(None),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum OrbitVerdict {
    AllEqual,
    Violation {
        step: usize,
        check: String,
        detail: String,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub seed: u64,
    pub start: String,
    pub path: Vec<MoveApplication>,
    pub initial_values: BTreeMap<String, String>,
    pub steps: usize,
    pub verdict: OrbitVerdict,
}

pub fn run_orbit(
    d: &LinkDiagram,
    checks: &[OrbitCheck],
    opts: &OrbitOptions,
) -> Result<OrbitReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let caps = if opts.include_increasing {
        MoveCaps::with_increasing(opts.max_crossings)
    } else {
        MoveCaps::non_increasing()
    };
    let mut initial_values = BTreeMap::new();
    for check in checks {
        if let Some(v) = check.value(d)? {
            initial_values.insert(check.name().to_string(), v);
        }
    }
    let mut report = OrbitReport {
        seed: opts.seed,
        start: d.serialize(),
        path: Vec::new(),
        initial_values: initial_values.clone(),
        steps: 0,
        verdict: OrbitVerdict::AllEqual,
    };
    // The start state must satisfy the predicates too.
    for check in checks {
        if let Some(detail) = check.check_state(d)? {
            report.verdict = OrbitVerdict::Violation {
                step: 0,
                check: check.name().to_string(),
                detail,
            };
            return Ok(report);
        }
    }
    let mut cur = d.clone();
    for step in 1..=opts.length {
        let candidates = enumerate_moves(&cur, caps);
        if candidates.is_empty() {
            break;
        }
        let m = candidates[rng.random_range(0..candidates.len())].clone();
        for check in checks {
            if let Some(detail) = check.check_move(&cur, &m)? {
                report.verdict = OrbitVerdict::Violation {
                    step,
                    check: check.name().to_string(),
                    detail,
                };
                return Ok(report);
            }
        }
        cur = apply_move(&cur, &m)?;
        report.path.push(m);
        report.steps = step;
        for check in checks {
            if let Some(v) = check.value(&cur)? {
                let initial = &initial_values[check.name()];
                if &v != initial {
                    report.verdict = OrbitVerdict::Violation {
                        step,
                        check: check.name().to_string(),
                        detail: format!("{initial} -> {v}"),
                    };
                    return Ok(report);
                }
            }
            if let Some(detail) = check.check_state(&cur)? {
                report.verdict = OrbitVerdict::Violation {
                    step,
                    check: check.name().to_string(),
                    detail,
                };
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// Replays a recorded path from the start diagram.
pub fn replay(d: &LinkDiagram, path: &[MoveApplication]) -> Result<LinkDiagram> {
    let mut cur = d.clone();
    for m in path {
        cur = apply_move(&cur, m)?;
    }
    Ok(cur)
}
