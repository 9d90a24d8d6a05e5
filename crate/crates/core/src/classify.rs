//! Which category classes a translation quiver can be the AR quiver of.
//!
//! Conditions `c31`–`c34` are read off the θ- and η-ladders; `a41`–`a44`
//! ask the solver for the matching additive functions. The two families are
//! equivalent for admissible artinian quivers, so a report whose columns
//! disagree points at a bug or a bad transcription.

use serde::Serialize;

use crate::additive::{find, FeasibilityOutcome, Flavor, LMinusConstraint};
use crate::chains::{
    artinian, nakayama_minus, strict, ArtinianVerdict, NakayamaFailure, StrictVerdict,
};
use crate::error::{Result, TauqError};
use crate::quiver::TranslationQuiver;
use crate::vertex::VertexId;

pub const TORSIONFREE: &str = "torsionfree-class";
pub const HEREDITARY: &str = "hereditary-torsionfree-class";
pub const MODULE_CATEGORY: &str = "module-category";
pub const SOCLE_PROJECTIVE: &str = "socle-projective-category";

/// The Nakayama data of one injective, without its full chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NakayamaSummary {
    pub source: VertexId,
    pub defined: bool,
    pub target: Option<VertexId>,
    pub n: Option<usize>,
    pub failure: Option<NakayamaFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct C32Check {
    pub holds: bool,
    /// One entry per injective `X` with `θ⁻X ≠ 0`.
    pub nakayama: Vec<NakayamaSummary>,
}

impl C32Check {
    /// True when there is no injective with `θ⁻X ≠ 0` to test.
    pub fn vacuous(&self) -> bool {
        self.nakayama.is_empty()
    }

    fn targets_all(&self, pred: impl Fn(&VertexId) -> bool) -> bool {
        self.holds
            && self
                .nakayama
                .iter()
                .all(|r| r.target.as_ref().is_some_and(&pred))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolverVerdicts {
    pub right: FeasibilityOutcome,
    pub free: FeasibilityOutcome,
    pub injectives: FeasibilityOutcome,
    pub sinks: FeasibilityOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub quiver: String,
    pub artinian: ArtinianVerdict,
    pub strict: Option<StrictVerdict>,
    pub c31: Option<bool>,
    pub c32: Option<bool>,
    pub c33: Option<bool>,
    pub c34: Option<bool>,
    /// `c33`/`c34` hold only because no injective has an outgoing arrow.
    pub vacuous: Option<bool>,
    pub nakayama: Vec<NakayamaSummary>,
    pub a41: Option<bool>,
    pub a42: Option<bool>,
    pub a43: Option<bool>,
    pub a44: Option<bool>,
    pub solver: Option<SolverVerdicts>,
    /// Classes `C` for which the quiver is the AR quiver of some `C`.
    pub class_labels: Vec<&'static str>,
    pub consistent: Option<bool>,
}

impl ClassificationReport {
    pub fn chain_verdicts(&self) -> [Option<bool>; 4] {
        [self.c31, self.c32, self.c33, self.c34]
    }

    pub fn solver_verdicts(&self) -> [Option<bool>; 4] {
        [self.a41, self.a42, self.a43, self.a44]
    }
}

/// Covering criterion for strictness.
pub fn check_c31(q: &TranslationQuiver, bound: usize) -> Result<bool> {
    Ok(strict(q, bound)?.uncovered.is_empty())
}

pub fn check_c32(q: &TranslationQuiver, bound: usize) -> Result<C32Check> {
    let c31 = check_c31(q, bound)?;
    let mut nakayama = Vec::new();
    for x in q.injectives() {
        if q.theta_minus_of(x).is_zero() {
            continue;
        }
        let r = nakayama_minus(q, x, bound)?;
        nakayama.push(NakayamaSummary {
            source: r.source,
            defined: r.defined,
            target: r.target,
            n: r.n,
            failure: r.failure,
        });
    }
    Ok(C32Check {
        holds: c31 && nakayama.iter().all(|r| r.defined),
        nakayama,
    })
}

pub fn check_c33(q: &TranslationQuiver, bound: usize) -> Result<bool> {
    Ok(check_c32(q, bound)?.targets_all(|b| !q.is_projective(b)))
}

pub fn check_c34(q: &TranslationQuiver, bound: usize) -> Result<bool> {
    Ok(check_c32(q, bound)?.targets_all(|b| q.is_projective(b)))
}

pub fn class_labels(chain: [bool; 4]) -> Vec<&'static str> {
    [TORSIONFREE, HEREDITARY, MODULE_CATEGORY, SOCLE_PROJECTIVE]
        .into_iter()
        .zip(chain)
        .filter_map(|(label, on)| on.then_some(label))
        .collect()
}

pub fn classify(q: &TranslationQuiver, bound: usize) -> Result<ClassificationReport> {
    let validation = q.validate();
    if !validation.ok {
        return Err(TauqError::Precondition(format!(
            "quiver {} is not a translation quiver ({} violation(s))",
            q.name(),
            validation.violations.len()
        )));
    }
    if !q.admissibility().admissible {
        return Err(TauqError::Precondition(format!(
            "quiver {} is not admissible",
            q.name()
        )));
    }
    let art = artinian(q, bound);
    let mut report = ClassificationReport {
        quiver: q.name().to_owned(),
        artinian: art,
        strict: None,
        c31: None,
        c32: None,
        c33: None,
        c34: None,
        vacuous: None,
        nakayama: Vec::new(),
        a41: None,
        a42: None,
        a43: None,
        a44: None,
        solver: None,
        class_labels: Vec::new(),
        consistent: None,
    };
    if !report.artinian.artinian {
        return Ok(report);
    }

    let s = strict(q, bound)?;
    let c31 = s.uncovered.is_empty();
    let c32 = check_c32(q, bound)?;
    let c33 = c32.targets_all(|b| !q.is_projective(b));
    let c34 = c32.targets_all(|b| q.is_projective(b));
    let chain = [c31, c32.holds, c33, c34];

    let solver = SolverVerdicts {
        right: find(q, Flavor::Right, LMinusConstraint::Free),
        free: find(q, Flavor::Both, LMinusConstraint::Free),
        injectives: find(q, Flavor::Both, LMinusConstraint::EqualToInjectives),
        sinks: find(q, Flavor::Both, LMinusConstraint::EqualToSinks),
    };
    let solved = [
        solver.right.feasible,
        solver.free.feasible,
        solver.injectives.feasible,
        solver.sinks.feasible,
    ];

    report.strict = Some(s);
    [report.c31, report.c32, report.c33, report.c34] = chain.map(Some);
    report.vacuous = Some(c32.holds && c32.vacuous());
    report.nakayama = c32.nakayama;
    [report.a41, report.a42, report.a43, report.a44] = solved.map(Some);
    report.solver = Some(solver);
    report.class_labels = class_labels(chain);
    report.consistent = Some(chain == solved);
    Ok(report)
}
