//! Deleting a vertex set and testing it for triviality and rejectivity.
//!
//! The deleted set `S` is kept as an induced substructure: arrows with both
//! ends in `S`, and `τ̄⁺X = τ⁺X` only when `X ∉ Q^p` and `τ⁺X ∈ S`. Projective
//! and injective marks always come from the original quiver.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::chains::strict;
use crate::combination::VertexCombination;
use crate::error::{Result, TauqError};
use crate::quiver::TranslationQuiver;
use crate::vertex::VertexId;

#[derive(Clone, Debug)]
pub struct DeletedQuiver<'a> {
    base: &'a TranslationQuiver,
    kept: BTreeSet<VertexId>,
}

impl<'a> DeletedQuiver<'a> {
    pub fn base(&self) -> &'a TranslationQuiver {
        self.base
    }

    /// The vertex set `S` of the deleted structure.
    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.kept
    }

    pub fn arrows(&self) -> impl Iterator<Item = (&VertexId, &VertexId)> + '_ {
        self.base
            .arrows()
            .filter(|(s, t, _)| self.kept.contains(*s) && self.kept.contains(*t))
            .map(|(s, t, _)| (s, t))
    }

    pub fn orig_proj(&self) -> BTreeSet<VertexId> {
        self.kept
            .intersection(self.base.projectives())
            .cloned()
            .collect()
    }

    pub fn orig_inj(&self) -> BTreeSet<VertexId> {
        self.kept
            .intersection(self.base.injectives())
            .cloned()
            .collect()
    }

    fn inside(&self, v: VertexCombination) -> VertexCombination {
        v.restrict(|x| self.kept.contains(x))
    }

    pub fn theta_plus(&self, v: &VertexCombination) -> VertexCombination {
        self.inside(self.base.theta_plus_lin(&self.inside(v.clone())))
    }

    pub fn theta_minus(&self, v: &VertexCombination) -> VertexCombination {
        self.inside(self.base.theta_minus_lin(&self.inside(v.clone())))
    }

    pub fn tau_plus(&self, v: &VertexCombination) -> VertexCombination {
        self.inside(self.base.tau_plus_lin(&self.inside(v.clone())))
    }

    pub fn tau_minus(&self, v: &VertexCombination) -> VertexCombination {
        self.inside(self.base.tau_minus_lin(&self.inside(v.clone())))
    }
}

pub fn delete_subset<'a>(
    q: &'a TranslationQuiver,
    deleted: &BTreeSet<VertexId>,
) -> Result<DeletedQuiver<'a>> {
    if let Some(v) = deleted.iter().find(|v| !q.contains(v)) {
        return Err(TauqError::UnknownVertex(v.to_string()));
    }
    Ok(DeletedQuiver {
        base: q,
        kept: deleted.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceKind {
    Trivial,
    /// Driven by `θ̄⁺` and `τ̄⁺`, started at `θ̄⁻X`.
    RejectiveLeft,
    /// Driven by `θ̄⁻` and `τ̄⁻`, started at `θ̄⁺X`.
    RejectiveRight,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YSequence {
    pub kind: SequenceKind,
    pub start: VertexId,
    pub values: Vec<VertexCombination>,
    pub ok: bool,
    pub finished: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RejectionFailure {
    pub start: VertexId,
    pub kind: SequenceKind,
    pub step: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    /// `None` when some sequence hit the bound before deciding.
    pub holds: Option<bool>,
    pub sequences: Vec<YSequence>,
    pub failures: Vec<RejectionFailure>,
}

impl CriterionResult {
    fn absorb(&mut self, seq: YSequence, failure: Option<RejectionFailure>) {
        self.failures.extend(failure);
        self.sequences.push(seq);
    }

    fn settle(mut self) -> Self {
        self.holds = if !self.failures.is_empty() {
            Some(false)
        } else if self.sequences.iter().all(|s| s.finished) {
            Some(true)
        } else {
            None
        };
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RejectionVerdict {
    pub deleted: BTreeSet<VertexId>,
    pub trivial: Option<bool>,
    /// `None` when undecided or when the quiver is not strict.
    pub rejective: Option<bool>,
    pub witnesses: Vec<YSequence>,
    pub failures: Vec<RejectionFailure>,
    pub notes: Vec<String>,
}

/// `Y₀ = X`, `Y₁ = θ̄⁺X`, `Yᵢ = (θ̄⁺Yᵢ₋₁ − τ̄⁺Yᵢ₋₂)₊` for each `X ∈ S ∩ Q^i`;
/// every `Yᵢ` must avoid `Q^p`.
pub fn check_trivial(
    q: &TranslationQuiver,
    deleted: &BTreeSet<VertexId>,
    bound: usize,
) -> Result<CriterionResult> {
    let d = delete_subset(q, deleted)?;
    let mut out = CriterionResult::default();
    for x in d.orig_inj() {
        let mut values = vec![VertexCombination::vertex(x.clone())];
        values.push(d.theta_plus(&values[0]));
        let mut failure = None;
        let mut finished = false;
        let mut i = 0;
        loop {
            let hit: Vec<String> = values[i]
                .support()
                .filter(|v| q.is_projective(v))
                .map(ToString::to_string)
                .collect();
            if !hit.is_empty() {
                failure = Some(RejectionFailure {
                    start: x.clone(),
                    kind: SequenceKind::Trivial,
                    step: i,
                    reason: format!("support meets projective vertices {}", hit.join(",")),
                });
                break;
            }
            if values[i].is_zero() {
                finished = true;
                break;
            }
            i += 1;
            if i > bound {
                break;
            }
            if i == values.len() {
                let next =
                    (&d.theta_plus(&values[i - 1]) - &d.tau_plus(&values[i - 2])).positive_part();
                values.push(next);
            }
        }
        values.truncate(i + 1);
        out.absorb(
            YSequence {
                kind: SequenceKind::Trivial,
                start: x,
                values,
                ok: failure.is_none(),
                finished,
            },
            failure,
        );
    }
    Ok(out.settle())
}

fn run_rejective(
    d: &DeletedQuiver<'_>,
    x: &VertexId,
    kind: SequenceKind,
    bound: usize,
) -> (YSequence, Option<RejectionFailure>) {
    let left = kind == SequenceKind::RejectiveLeft;
    let forward = |v: &VertexCombination| {
        if left {
            d.theta_plus(v)
        } else {
            d.theta_minus(v)
        }
    };
    let back = |v: &VertexCombination| {
        if left {
            d.theta_minus(v)
        } else {
            d.theta_plus(v)
        }
    };
    let shift = |v: &VertexCombination| if left { d.tau_plus(v) } else { d.tau_minus(v) };
    let xv = VertexCombination::vertex(x.clone());
    let y0 = back(&xv);
    let y1 = &forward(&y0) - &xv;
    let mut values = vec![y0, y1];
    let mut failure = None;
    let mut finished = false;
    for i in 0.. {
        if values[i].has_negative() {
            failure = Some(RejectionFailure {
                start: x.clone(),
                kind,
                step: i,
                reason: format!("negative coefficient in {}", values[i]),
            });
            break;
        }
        if i >= 1 && values[i].is_zero() && values[i - 1].is_zero() {
            finished = true;
            break;
        }
        if i + 1 > bound {
            break;
        }
        if i + 1 == values.len() {
            let next = &forward(&values[i]) - &shift(&values[i - 1]);
            values.push(next);
        }
    }
    let ok = failure.is_none();
    (
        YSequence {
            kind,
            start: x.clone(),
            values,
            ok,
            finished,
        },
        failure,
    )
}

/// Both sequence families of the rejectivity criterion; `q` must be strict.
pub fn check_rejective(
    q: &TranslationQuiver,
    deleted: &BTreeSet<VertexId>,
    bound: usize,
) -> Result<CriterionResult> {
    if !strict(q, bound)?.strict {
        return Err(TauqError::Precondition(format!(
            "quiver {} is not strict",
            q.name()
        )));
    }
    let d = delete_subset(q, deleted)?;
    let mut out = CriterionResult::default();
    for x in d.vertices().iter().filter(|x| !q.is_injective(x)) {
        let (seq, failure) = run_rejective(&d, x, SequenceKind::RejectiveLeft, bound);
        out.absorb(seq, failure);
    }
    for x in d.vertices().iter().filter(|x| !q.is_projective(x)) {
        let (seq, failure) = run_rejective(&d, x, SequenceKind::RejectiveRight, bound);
        out.absorb(seq, failure);
    }
    Ok(out.settle())
}

/// Runs both criteria; rejectivity is skipped with a note on non-strict input.
pub fn analyze_deletion(
    q: &TranslationQuiver,
    deleted: &BTreeSet<VertexId>,
    bound: usize,
) -> Result<RejectionVerdict> {
    let trivial = check_trivial(q, deleted, bound)?;
    let mut notes = Vec::new();
    let rejective = match check_rejective(q, deleted, bound) {
        Ok(r) => r,
        Err(TauqError::Precondition(msg)) => {
            notes.push(format!("rejectivity not tested: {msg}"));
            CriterionResult::default()
        }
        Err(e) => return Err(e),
    };
    let mut witnesses = trivial.sequences;
    witnesses.extend(rejective.sequences);
    let mut failures = trivial.failures;
    failures.extend(rejective.failures);
    Ok(RejectionVerdict {
        deleted: deleted.clone(),
        trivial: trivial.holds,
        rejective: rejective.holds,
        witnesses,
        failures,
        notes,
    })
}

/// A singleton `{X}` is rejectable exactly when `X ∈ Q^p ∩ Q^i`.
pub fn dk_singleton(q: &TranslationQuiver, x: &VertexId) -> Result<bool> {
    if !q.contains(x) {
        return Err(TauqError::UnknownVertex(x.to_string()));
    }
    Ok(q.is_projective(x) && q.is_injective(x))
}

pub fn rejectable_singletons(q: &TranslationQuiver) -> BTreeSet<VertexId> {
    q.projectives()
        .intersection(q.injectives())
        .cloned()
        .collect()
}
