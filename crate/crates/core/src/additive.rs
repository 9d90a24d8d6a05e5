//! Right, left and two-sided additive functions.
//!
//! A right additive function is `l: Q → ℕ_{>0}` with `l(φ⁺X) = 0` off `Q^p`
//! and `l(φ⁺X) ≥ 0` on `Q^p`; left additive functions mirror this with
//! `φ⁻` and `Q^i`. Existence is decided exactly with [`crate::solver`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::chains::{hom_length_matrix, nakayama_pairs, nakayama_plus_in, strict};
use crate::classify::check_c32;
use crate::combination::VertexCombination;
use crate::error::{Result, TauqError};
use crate::quiver::TranslationQuiver;
use crate::solver::{integral, Feasibility, LinearSystem, Relation};
use crate::vertex::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Right,
    Left,
    Both,
}

impl Flavor {
    fn right(self) -> bool {
        self != Flavor::Left
    }

    fn left(self) -> bool {
        self != Flavor::Right
    }
}

/// Extra requirement on `l⁻ = {X ∈ Q^i : l(φ⁻X) > 0}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LMinusConstraint {
    #[default]
    Free,
    /// `l⁻ = Q^i`.
    EqualToInjectives,
    /// `l⁻` is the set of sinks.
    EqualToSinks,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Right => "right",
            Flavor::Left => "left",
            Flavor::Both => "both",
        })
    }
}

impl fmt::Display for LMinusConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LMinusConstraint::Free => "free",
            LMinusConstraint::EqualToInjectives => "inj",
            LMinusConstraint::EqualToSinks => "sinks",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdditiveFunctionResult {
    #[serde(serialize_with = "crate::serde_int::map")]
    pub values: BTreeMap<VertexId, BigInt>,
    pub flavor: Flavor,
    pub l_plus: BTreeSet<VertexId>,
    pub l_minus: BTreeSet<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibilityOutcome {
    pub feasible: bool,
    pub result: Option<AdditiveFunctionResult>,
    pub certificate: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Defect {
    pub vertex: VertexId,
    pub constraint: String,
    #[serde(serialize_with = "crate::serde_int::int")]
    pub value: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdditiveCheck {
    pub ok: bool,
    pub defects: Vec<Defect>,
}

/// One constraint of the additive-function system, stated on `l`.
enum Requirement {
    Positive,
    Zero,
    Nonnegative,
    AtLeastOne,
}

struct Condition {
    vertex: VertexId,
    name: &'static str,
    form: VertexCombination,
    requirement: Requirement,
}

fn conditions(q: &TranslationQuiver, flavor: Flavor, c: LMinusConstraint) -> Vec<Condition> {
    let mut out = Vec::new();
    for x in q.vertices() {
        out.push(Condition {
            vertex: x.clone(),
            name: "l(X) >= 1",
            form: VertexCombination::vertex(x.clone()),
            requirement: Requirement::Positive,
        });
    }
    if flavor.right() {
        for x in q.vertices() {
            let projective = q.is_projective(x);
            out.push(Condition {
                vertex: x.clone(),
                name: if projective {
                    "l(phi+ X) >= 0"
                } else {
                    "l(phi+ X) = 0"
                },
                form: q.phi_plus_of(x),
                requirement: if projective {
                    Requirement::Nonnegative
                } else {
                    Requirement::Zero
                },
            });
        }
    }
    if flavor.left() {
        for x in q.vertices() {
            let injective = q.is_injective(x);
            let (name, requirement) = match (injective, c) {
                (false, _) => ("l(phi- X) = 0", Requirement::Zero),
                (true, LMinusConstraint::EqualToInjectives) => {
                    ("l(phi- X) >= 1", Requirement::AtLeastOne)
                }
                (true, LMinusConstraint::EqualToSinks) if !q.theta_minus_of(x).is_zero() => {
                    ("l(phi- X) = 0 for a non-sink injective", Requirement::Zero)
                }
                (true, _) => ("l(phi- X) >= 0", Requirement::Nonnegative),
            };
            out.push(Condition {
                vertex: x.clone(),
                name,
                form: q.phi_minus_of(x),
                requirement,
            });
        }
    }
    out
}

fn describe(
    values: &BTreeMap<VertexId, BigInt>,
    q: &TranslationQuiver,
) -> (BTreeSet<VertexId>, BTreeSet<VertexId>) {
    let l = |x: &VertexId| values.get(x).cloned().unwrap_or_default();
    let l_plus = q
        .projectives()
        .iter()
        .filter(|x| q.phi_plus_of(x).evaluate(l).is_positive())
        .cloned()
        .collect();
    let l_minus = q
        .injectives()
        .iter()
        .filter(|x| q.phi_minus_of(x).evaluate(l).is_positive())
        .cloned()
        .collect();
    (l_plus, l_minus)
}

/// Searches for an additive function of the given flavor.
pub fn find(q: &TranslationQuiver, flavor: Flavor, c: LMinusConstraint) -> FeasibilityOutcome {
    let index: BTreeMap<&VertexId, usize> = q
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let conds = conditions(q, flavor, c);
    let mut system = LinearSystem::new(q.len());
    for cond in &conds {
        let terms = cond.form.iter().map(|(v, k)| (index[v], k.clone()));
        match cond.requirement {
            Requirement::Positive | Requirement::AtLeastOne => system.push(terms, Relation::Ge, 1),
            Requirement::Nonnegative => system.push(terms, Relation::Ge, 0),
            Requirement::Zero => system.push(terms, Relation::Eq, 0),
        };
    }
    match system.solve() {
        Feasibility::Feasible(x) => {
            let mut ints = integral(&x);
            // dividing out the content is harmless unless a ≥ 1 bound breaks
            let g = ints.iter().fold(BigInt::zero(), |a, v| a.gcd(v));
            if !g.is_zero() && !g.is_one() {
                let reduced: Vec<BigInt> = ints.iter().map(|v| v / &g).collect();
                let as_map = to_map(q, &reduced);
                if verify_additive(q, &as_map, flavor, c).ok {
                    ints = reduced;
                }
            }
            let values = to_map(q, &ints);
            let (l_plus, l_minus) = describe(&values, q);
            FeasibilityOutcome {
                feasible: true,
                result: Some(AdditiveFunctionResult {
                    values,
                    flavor,
                    l_plus,
                    l_minus,
                }),
                certificate: None,
            }
        }
        Feasibility::Infeasible { reason, origins } => {
            let involved: Vec<String> = origins
                .iter()
                .map(|&i| format!("{} at {}", conds[i].name, conds[i].vertex))
                .collect();
            FeasibilityOutcome {
                feasible: false,
                result: None,
                certificate: Some(format!("{reason}; from: {}", involved.join("; "))),
            }
        }
    }
}

fn to_map(q: &TranslationQuiver, xs: &[BigInt]) -> BTreeMap<VertexId, BigInt> {
    q.vertices()
        .iter()
        .cloned()
        .zip(xs.iter().cloned())
        .collect()
}

pub fn find_right_additive(q: &TranslationQuiver) -> FeasibilityOutcome {
    find(q, Flavor::Right, LMinusConstraint::Free)
}

pub fn find_additive(q: &TranslationQuiver, c: LMinusConstraint) -> FeasibilityOutcome {
    find(q, Flavor::Both, c)
}

/// Re-checks every constraint and names each one that fails.
pub fn verify_additive(
    q: &TranslationQuiver,
    values: &BTreeMap<VertexId, BigInt>,
    flavor: Flavor,
    c: LMinusConstraint,
) -> AdditiveCheck {
    let mut defects = Vec::new();
    for v in values.keys().filter(|v| !q.contains(v)) {
        defects.push(Defect {
            vertex: v.clone(),
            constraint: "vertex not in quiver".into(),
            value: values[v].clone(),
        });
    }
    let l = |x: &VertexId| values.get(x).cloned().unwrap_or_default();
    for cond in conditions(q, flavor, c) {
        let value = cond.form.evaluate(l);
        let ok = match cond.requirement {
            Requirement::Positive | Requirement::AtLeastOne => value.is_positive(),
            Requirement::Nonnegative => !value.is_negative(),
            Requirement::Zero => value.is_zero(),
        };
        if !ok {
            defects.push(Defect {
                vertex: cond.vertex,
                constraint: cond.name.to_owned(),
                value,
            });
        }
    }
    AdditiveCheck {
        ok: defects.is_empty(),
        defects,
    }
}

/// Writes a right additive function in the hom-length basis: returns
/// `a_X = l(φ⁺X)` for `X ∈ Q^p` after checking `l = Σ a_X·H[X][·]`.
pub fn decompose_right_additive(
    q: &TranslationQuiver,
    values: &BTreeMap<VertexId, BigInt>,
    bound: usize,
) -> Result<BTreeMap<VertexId, BigInt>> {
    if !strict(q, bound)?.strict {
        return Err(TauqError::Precondition(format!(
            "quiver {} is not strict",
            q.name()
        )));
    }
    let check = verify_additive(q, values, Flavor::Right, LMinusConstraint::Free);
    if !check.ok {
        return Err(TauqError::Precondition(format!(
            "not a right additive function: {} defect(s), first at {}",
            check.defects.len(),
            check.defects[0].vertex
        )));
    }
    let l = |x: &VertexId| values.get(x).cloned().unwrap_or_default();
    let coefficients: BTreeMap<VertexId, BigInt> = q
        .projectives()
        .iter()
        .map(|x| (x.clone(), q.phi_plus_of(x).evaluate(l)))
        .collect();
    let rebuilt = compose_right_additive(q, &coefficients, bound)?;
    for x in q.vertices() {
        let got = rebuilt.get(x).cloned().unwrap_or_default();
        if got != l(x) {
            return Err(TauqError::Invariant(format!(
                "hom-length reconstruction differs at {x}: {got} != {}",
                l(x)
            )));
        }
    }
    Ok(coefficients)
}

/// `Σ a_X·H[X][·]` over the given coefficients.
pub fn compose_right_additive(
    q: &TranslationQuiver,
    coefficients: &BTreeMap<VertexId, BigInt>,
    bound: usize,
) -> Result<BTreeMap<VertexId, BigInt>> {
    let h = hom_length_matrix(q, bound)?;
    let mut total = VertexCombination::zero();
    for (x, a) in coefficients {
        let row = h
            .row(x)
            .ok_or_else(|| TauqError::UnknownVertex(x.to_string()))?;
        total += &row.scale(a);
    }
    Ok(q.vertices()
        .iter()
        .map(|v| (v.clone(), total.coefficient(v)))
        .collect())
}

/// `S⁺`: projectives with `θ⁺X = 0`, plus projectives whose `n⁺` exists and
/// is not injective.
pub fn s_plus(q: &TranslationQuiver, bound: usize) -> Result<BTreeSet<VertexId>> {
    if !check_c32(q, bound)?.holds {
        return Err(TauqError::Precondition(format!(
            "quiver {} does not have Nakayama pairs for every injective",
            q.name()
        )));
    }
    let pairs = nakayama_pairs(q, bound);
    let mut out = BTreeSet::new();
    for x in q.projectives() {
        if q.theta_plus_of(x).is_zero() {
            out.insert(x.clone());
            continue;
        }
        if let Some(a) = nakayama_plus_in(&pairs, x)?.source {
            if !q.is_injective(&a) {
                out.insert(x.clone());
            }
        }
    }
    Ok(out)
}
