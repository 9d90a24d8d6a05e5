//! Radical ladders over a translation quiver.
//!
//! The θ-ladder of a vertex `X` is the sequence
//! `θ⁺₀X = X`, `θ⁺₁X = θ⁺X`, `θ⁺ₙX = (θ⁺θ⁺ₙ₋₁X − τ⁺θ⁺ₙ₋₂X)₊`, and the η-ladder of `A`
//! is `η⁺₀A = θ⁻A`, `η⁺₁A = θ⁺θ⁻A − A`, `η⁺ᵢA = θ⁺η⁺ᵢ₋₁A − τ⁺η⁺ᵢ₋₂A` with no
//! truncation. Both are stored index-0-first as a [`ChainTable`] whose `top`
//! row holds the τ⁺-images subtracted at each step.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combination::VertexCombination;
use crate::error::{Result, TauqError};
use crate::quiver::TranslationQuiver;
use crate::vertex::VertexId;

/// Iteration bound used when the caller does not supply one.
pub fn default_bound(q: &TranslationQuiver) -> usize {
    16 * q.len().max(1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainKind {
    Theta,
    Eta,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    ReachedZero,
    NegativeCoefficient,
    BoundExceeded,
    /// The state `(bottom[n-1], bottom[n])` repeated; it first occurred at
    /// `first` and recurs every `period` steps.
    StateCycle {
        first: usize,
        period: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainTable {
    pub kind: ChainKind,
    pub start: VertexId,
    pub top: Vec<VertexCombination>,
    pub bottom: Vec<VertexCombination>,
    pub termination: Termination,
    /// θ-ladders only: indices where the positive part discarded a negative
    /// term. Includes the step right after the first zero when `τ⁺` of the
    /// last nonzero entry survives.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub truncated: Vec<usize>,
}

impl ChainTable {
    /// True unless the bound cut the computation short.
    pub fn terminated(&self) -> bool {
        self.termination != Termination::BoundExceeded
    }

    /// Two aligned rows read right to left, the start vertex at the right end.
    pub fn render(&self) -> String {
        let cols: Vec<(String, String)> = self
            .top
            .iter()
            .zip(&self.bottom)
            .rev()
            .map(|(t, b)| (t.to_string(), b.to_string()))
            .collect();
        let mut top = String::from("top    ");
        let mut bottom = String::from("bottom ");
        for (i, (t, b)) in cols.iter().enumerate() {
            let w = t.chars().count().max(b.chars().count());
            let sep = if i == 0 { " " } else { " <- " };
            let _ = write!(top, "{sep}{t:>w$}");
            let _ = write!(bottom, "{sep}{b:>w$}");
        }
        format!("{}\n{}\n", top.trim_end(), bottom.trim_end())
    }
}

/// Runs the θ⁺ₙ recursion from a single vertex.
pub fn theta_chain(q: &TranslationQuiver, x: &VertexId, bound: usize) -> Result<ChainTable> {
    if !q.contains(x) {
        return Err(TauqError::UnknownVertex(x.to_string()));
    }
    let start = VertexCombination::vertex(x.clone());
    let first = q.theta_plus_lin(&start);
    let mut top = vec![VertexCombination::zero(), q.tau_plus_lin(&start)];
    let mut bottom = vec![start, first];
    let mut truncated = Vec::new();
    let mut seen: HashMap<(VertexCombination, VertexCombination), usize> = HashMap::new();

    let termination = loop {
        let n = bottom.len() - 1;
        if bottom[n].is_zero() {
            // One more step of the unclipped recursion: −τ⁺θ⁺ₙ₋₁X must vanish.
            if !top[n].is_zero() {
                truncated.push(n + 1);
            }
            break Termination::ReachedZero;
        }
        let state = (bottom[n - 1].clone(), bottom[n].clone());
        if let Some(&prev) = seen.get(&state) {
            break Termination::StateCycle {
                first: prev,
                period: n - prev,
            };
        }
        seen.insert(state, n);
        if n + 1 > bound {
            break Termination::BoundExceeded;
        }
        let raw = &q.theta_plus_lin(&bottom[n]) - &top[n];
        if raw.has_negative() {
            truncated.push(n + 1);
        }
        top.push(q.tau_plus_lin(&bottom[n]));
        bottom.push(raw.positive_part());
    };
    Ok(ChainTable {
        kind: ChainKind::Theta,
        start: x.clone(),
        top,
        bottom,
        termination,
        truncated,
    })
}

fn theta_n_vertex(q: &TranslationQuiver, x: &VertexId, n: usize) -> VertexCombination {
    let start = VertexCombination::vertex(x.clone());
    if n == 0 {
        return start;
    }
    let mut prev = start;
    let mut cur = q.theta_plus_lin(&prev);
    for _ in 1..n {
        if cur.is_zero() {
            break;
        }
        let next = (&q.theta_plus_lin(&cur) - &q.tau_plus_lin(&prev)).positive_part();
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `θ⁺ₙv`, computed on each basis vertex and extended additively.
pub fn theta_n(
    q: &TranslationQuiver,
    n: usize,
    v: &VertexCombination,
) -> Result<VertexCombination> {
    q.check_support(v)?;
    Ok(v.map_linear(|x| theta_n_vertex(q, x, n)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexChainLength {
    pub vertex: VertexId,
    /// First `n` with `θ⁺ₙX = 0`.
    pub length: Option<usize>,
    pub termination: Termination,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArtinianVerdict {
    pub artinian: bool,
    /// Least `n > 0` with `θ⁺ₙ = 0`.
    pub index: Option<usize>,
    /// No vertex cycled but at least one hit the bound.
    pub undecided: bool,
    pub evidence: Vec<VertexChainLength>,
    /// A chain whose state repeated, certifying non-artinian-ness.
    pub cycle: Option<ChainTable>,
}

pub fn artinian(q: &TranslationQuiver, bound: usize) -> ArtinianVerdict {
    let mut evidence = Vec::with_capacity(q.len());
    let mut cycle = None;
    let mut undecided = false;
    for x in q.vertices() {
        let chain = theta_chain(q, x, bound).expect("vertex of q");
        let length = match chain.termination {
            Termination::ReachedZero => Some(chain.bottom.len() - 1),
            Termination::StateCycle { .. } => {
                if cycle.is_none() {
                    cycle = Some(chain.clone());
                }
                None
            }
            _ => {
                undecided = true;
                None
            }
        };
        evidence.push(VertexChainLength {
            vertex: x.clone(),
            length,
            termination: chain.termination,
        });
    }
    let index = if cycle.is_none() && !undecided {
        Some(
            evidence
                .iter()
                .filter_map(|e| e.length)
                .max()
                .unwrap_or(0)
                .max(1),
        )
    } else {
        None
    };
    ArtinianVerdict {
        artinian: index.is_some(),
        index,
        undecided: undecided && cycle.is_none(),
        evidence,
        cycle,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrictVerdict {
    pub strict: bool,
    /// Vertices outside every `supp θ⁺ₙX` with `X ∈ Q^i`.
    pub uncovered: BTreeSet<VertexId>,
    /// `(vertex, step)` pairs where the positive part discarded something.
    pub truncations: Vec<(VertexId, usize)>,
}

fn require_artinian(q: &TranslationQuiver, bound: usize) -> Result<Vec<ChainTable>> {
    let mut chains = Vec::with_capacity(q.len());
    for x in q.vertices() {
        let chain = theta_chain(q, x, bound)?;
        if chain.termination != Termination::ReachedZero {
            return Err(TauqError::Precondition(format!(
                "quiver {} is not known to be artinian (vertex {x}: {:?})",
                q.name(),
                chain.termination
            )));
        }
        chains.push(chain);
    }
    Ok(chains)
}

/// Decides strictness by the covering criterion and by the absence of
/// truncation, and fails loudly if the two disagree.
pub fn strict(q: &TranslationQuiver, bound: usize) -> Result<StrictVerdict> {
    let chains = require_artinian(q, bound)?;
    let mut covered = BTreeSet::new();
    let mut truncations = Vec::new();
    for chain in &chains {
        if q.is_injective(&chain.start) {
            for b in &chain.bottom {
                covered.extend(b.support().cloned());
            }
        }
        truncations.extend(chain.truncated.iter().map(|&n| (chain.start.clone(), n)));
    }
    let uncovered: BTreeSet<VertexId> = q.vertices().difference(&covered).cloned().collect();
    let by_cover = uncovered.is_empty();
    let by_exactness = truncations.is_empty();
    if by_cover != by_exactness {
        return Err(TauqError::Invariant(format!(
            "strictness criteria disagree on {}: covering says {by_cover}, exactness says {by_exactness}",
            q.name()
        )));
    }
    Ok(StrictVerdict {
        strict: by_cover,
        uncovered,
        truncations,
    })
}

/// Runs the η⁺ᵢ recursion from `a`.
pub fn eta_chain(q: &TranslationQuiver, a: &VertexId, bound: usize) -> Result<ChainTable> {
    if !q.contains(a) {
        return Err(TauqError::UnknownVertex(a.to_string()));
    }
    let start = VertexCombination::vertex(a.clone());
    let e0 = q.theta_minus_lin(&start);
    let e1 = &q.theta_plus_lin(&e0) - &start;
    let mut bottom = vec![e0, e1];
    let termination = loop {
        let last = bottom.last().expect("nonempty");
        if last.has_negative() {
            break Termination::NegativeCoefficient;
        }
        if last.is_zero() {
            break Termination::ReachedZero;
        }
        if bottom.len() > bound {
            break Termination::BoundExceeded;
        }
        let n = bottom.len();
        let next = &q.theta_plus_lin(&bottom[n - 1]) - &q.tau_plus_lin(&bottom[n - 2]);
        bottom.push(next);
    };
    let mut top = vec![start];
    top.extend(bottom[..bottom.len() - 1].iter().map(|y| q.tau_plus_lin(y)));
    Ok(ChainTable {
        kind: ChainKind::Eta,
        start: a.clone(),
        top,
        bottom,
        termination,
        truncated: Vec::new(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "reason")]
pub enum NakayamaFailure {
    /// `θ⁻A = 0`.
    Sink,
    Negative {
        step: usize,
    },
    /// An entry before the last nonzero one meets `Q^p`.
    ProjectiveSupport {
        step: usize,
        vertices: Vec<VertexId>,
    },
    /// The last nonzero entry is not a single vertex with coefficient 1.
    MultiTerm {
        value: String,
    },
    Bound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NakayamaResult {
    pub source: VertexId,
    pub defined: bool,
    pub target: Option<VertexId>,
    pub n: Option<usize>,
    pub chain: ChainTable,
    pub failure: Option<NakayamaFailure>,
}

/// `n⁻(A)`: the end of the η-ladder of `A`, when it is a Nakayama pair.
pub fn nakayama_minus(q: &TranslationQuiver, a: &VertexId, bound: usize) -> Result<NakayamaResult> {
    let chain = eta_chain(q, a, bound)?;
    let failure = |f| NakayamaResult {
        source: a.clone(),
        defined: false,
        target: None,
        n: None,
        chain: chain.clone(),
        failure: Some(f),
    };
    if chain.bottom[0].is_zero() {
        return Ok(failure(NakayamaFailure::Sink));
    }
    match chain.termination {
        Termination::NegativeCoefficient => {
            return Ok(failure(NakayamaFailure::Negative {
                step: chain.bottom.len() - 1,
            }))
        }
        Termination::ReachedZero => {}
        _ => return Ok(failure(NakayamaFailure::Bound)),
    }
    let n = chain.bottom.len() - 2;
    for (i, y) in chain.bottom[..n].iter().enumerate() {
        let hit: Vec<VertexId> = y
            .support()
            .filter(|v| q.is_projective(v))
            .cloned()
            .collect();
        if !hit.is_empty() {
            return Ok(failure(NakayamaFailure::ProjectiveSupport {
                step: i,
                vertices: hit,
            }));
        }
    }
    match chain.bottom[n].as_single_vertex() {
        Some(b) => Ok(NakayamaResult {
            source: a.clone(),
            defined: true,
            target: Some(b.clone()),
            n: Some(n),
            chain,
            failure: None,
        }),
        None => Ok(failure(NakayamaFailure::MultiTerm {
            value: chain.bottom[n].to_string(),
        })),
    }
}

/// Every defined Nakayama pair, keyed by source.
pub fn nakayama_pairs(q: &TranslationQuiver, bound: usize) -> BTreeMap<VertexId, NakayamaResult> {
    q.vertices()
        .iter()
        .filter_map(|a| {
            let r = nakayama_minus(q, a, bound).expect("vertex of q");
            r.defined.then(|| (a.clone(), r))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NakayamaPlus {
    pub target: VertexId,
    /// `n⁺(B)`, the unique `A` with `n⁻(A) = B`.
    pub source: Option<VertexId>,
    pub pair: Option<NakayamaResult>,
}

impl NakayamaPlus {
    pub fn defined(&self) -> bool {
        self.source.is_some()
    }
}

/// `n⁺(B)`, found by searching every source.
pub fn nakayama_plus(q: &TranslationQuiver, b: &VertexId, bound: usize) -> Result<NakayamaPlus> {
    if !q.contains(b) {
        return Err(TauqError::UnknownVertex(b.to_string()));
    }
    nakayama_plus_in(&nakayama_pairs(q, bound), b)
}

pub(crate) fn nakayama_plus_in(
    pairs: &BTreeMap<VertexId, NakayamaResult>,
    b: &VertexId,
) -> Result<NakayamaPlus> {
    let mut found = pairs.values().filter(|r| r.target.as_ref() == Some(b));
    let pair = found.next().cloned();
    if let Some(other) = found.next() {
        return Err(TauqError::Invariant(format!(
            "vertex {b} is the Nakayama target of both {} and {}",
            pair.as_ref()
                .map_or_else(String::new, |p| p.source.to_string()),
            other.source
        )));
    }
    Ok(NakayamaPlus {
        target: b.clone(),
        source: pair.as_ref().map(|p| p.source.clone()),
        pair,
    })
}

/// `H[X][Y] = Σₙ` (coefficient of `X` in `θ⁺ₙY`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomLengthMatrix {
    pub vertices: Vec<VertexId>,
    #[serde(serialize_with = "crate::serde_int::matrix")]
    pub rows: Vec<Vec<BigInt>>,
}

impl HomLengthMatrix {
    fn index(&self, v: &VertexId) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    pub fn get(&self, x: &VertexId, y: &VertexId) -> Option<&BigInt> {
        Some(&self.rows[self.index(x)?][self.index(y)?])
    }

    /// The row `H[X][·]` as a combination.
    pub fn row(&self, x: &VertexId) -> Option<VertexCombination> {
        let i = self.index(x)?;
        Some(VertexCombination::from_terms(
            self.vertices
                .iter()
                .cloned()
                .zip(self.rows[i].iter().cloned()),
        ))
    }
}

pub fn hom_length_matrix(q: &TranslationQuiver, bound: usize) -> Result<HomLengthMatrix> {
    let chains = require_artinian(q, bound)?;
    let vertices: Vec<VertexId> = q.vertices().iter().cloned().collect();
    let mut rows = vec![vec![BigInt::zero(); vertices.len()]; vertices.len()];
    for (j, chain) in chains.iter().enumerate() {
        for layer in &chain.bottom {
            for (x, c) in layer.iter() {
                let i = vertices.binary_search(x).expect("support within q");
                rows[i][j] += c;
            }
        }
    }
    debug_assert!((0..vertices.len()).all(|i| rows[i][i] >= BigInt::one()));
    Ok(HomLengthMatrix { vertices, rows })
}
