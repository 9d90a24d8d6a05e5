//! Finite valued translation quivers and their basic operators.
//!
//! A [`TranslationQuiver`] is the tuple `(Q, Q^p, Q^i, τ⁺, d, d′)`. The
//! structure can be built even when it breaks the translation-quiver axioms,
//! so that [`TranslationQuiver::validate`] can report every breach; all
//! other analyses assume a quiver that validates.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combination::VertexCombination;
use crate::error::{Result, TauqError};
use crate::vertex::VertexId;

/// Arrow valuation `(d(X,Y), d′(X,Y))`; `(0, 0)` means "no arrow".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Valuation {
    pub d: u64,
    pub dprime: u64,
}

impl Valuation {
    pub const UNIT: Valuation = Valuation { d: 1, dprime: 1 };

    pub fn new(d: u64, dprime: u64) -> Self {
        Valuation { d, dprime }
    }
}

#[derive(Clone, Debug)]
pub struct TranslationQuiver {
    name: String,
    vertices: BTreeSet<VertexId>,
    arrows: BTreeMap<(VertexId, VertexId), Valuation>,
    projectives: BTreeSet<VertexId>,
    injectives: BTreeSet<VertexId>,
    tau_plus: BTreeMap<VertexId, VertexId>,
    tau_minus: BTreeMap<VertexId, VertexId>,
    // θ⁺X = Σ d(Y,X)Y and θ⁻X = Σ d′(X,Y)Y, per basis vertex
    theta_plus: BTreeMap<VertexId, VertexCombination>,
    theta_minus: BTreeMap<VertexId, VertexCombination>,
}

/// Incremental constructor. Only referential integrity is enforced here.
#[derive(Clone, Debug, Default)]
pub struct QuiverBuilder {
    name: String,
    vertices: Vec<VertexId>,
    projectives: Vec<VertexId>,
    injectives: Vec<VertexId>,
    arrows: Vec<(VertexId, VertexId, Valuation)>,
    tau: Vec<(VertexId, VertexId)>,
}

impl QuiverBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        QuiverBuilder {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn vertices<I, V>(mut self, ids: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        self.vertices.extend(ids.into_iter().map(Into::into));
        self
    }

    pub fn projectives<I, V>(mut self, ids: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        self.projectives.extend(ids.into_iter().map(Into::into));
        self
    }

    pub fn injectives<I, V>(mut self, ids: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        self.injectives.extend(ids.into_iter().map(Into::into));
        self
    }

    pub fn arrow(self, src: impl Into<VertexId>, dst: impl Into<VertexId>) -> Self {
        self.valued_arrow(src, dst, Valuation::UNIT)
    }

    pub fn valued_arrow(
        mut self,
        src: impl Into<VertexId>,
        dst: impl Into<VertexId>,
        valuation: Valuation,
    ) -> Self {
        self.arrows.push((src.into(), dst.into(), valuation));
        self
    }

    /// Records `τ⁺(x) = y`.
    pub fn tau(mut self, x: impl Into<VertexId>, y: impl Into<VertexId>) -> Self {
        self.tau.push((x.into(), y.into()));
        self
    }

    pub fn build(self) -> Result<TranslationQuiver> {
        let mut vertices = BTreeSet::new();
        for v in self.vertices {
            if !vertices.insert(v.clone()) {
                return Err(TauqError::Structure(format!("duplicate vertex `{v}`")));
            }
        }
        let known = |v: &VertexId| -> Result<()> {
            if vertices.contains(v) {
                Ok(())
            } else {
                Err(TauqError::UnknownVertex(v.to_string()))
            }
        };
        for v in self.projectives.iter().chain(&self.injectives) {
            known(v)?;
        }
        let mut arrows = BTreeMap::new();
        for (s, t, val) in self.arrows {
            known(&s)?;
            known(&t)?;
            if val.d == 0 && val.dprime == 0 {
                return Err(TauqError::Structure(format!(
                    "arrow {s}->{t} has valuation (0,0)"
                )));
            }
            if arrows.insert((s.clone(), t.clone()), val).is_some() {
                return Err(TauqError::Structure(format!(
                    "arrow {s}->{t} defined twice"
                )));
            }
        }
        let mut tau_plus = BTreeMap::new();
        for (x, y) in self.tau {
            known(&x)?;
            known(&y)?;
            if tau_plus.insert(x.clone(), y).is_some() {
                return Err(TauqError::Structure(format!("tau of `{x}` defined twice")));
            }
        }
        Ok(TranslationQuiver::assemble(
            self.name,
            vertices,
            arrows,
            self.projectives.into_iter().collect(),
            self.injectives.into_iter().collect(),
            tau_plus,
        ))
    }
}

/// One broken translation-quiver axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: &'static str,
    /// Vertex the breach is attached to (arrow source, or τ⁺ argument).
    pub subject: Option<VertexId>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityConflict {
    /// Arrow whose valuation ratio disagrees with the spanning-tree values.
    pub arrow: (VertexId, VertexId),
    /// Closed walk through the arrow, listed from the arrow's source.
    pub cycle: Vec<VertexId>,
    /// Product of the valuation ratios around the cycle (≠ 1).
    pub ratio: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityResult {
    pub admissible: bool,
    #[serde(serialize_with = "crate::serde_int::opt_map")]
    pub c: Option<BTreeMap<VertexId, BigInt>>,
    pub conflict: Option<AdmissibilityConflict>,
}

impl TranslationQuiver {
    fn assemble(
        name: String,
        vertices: BTreeSet<VertexId>,
        arrows: BTreeMap<(VertexId, VertexId), Valuation>,
        projectives: BTreeSet<VertexId>,
        injectives: BTreeSet<VertexId>,
        tau_plus: BTreeMap<VertexId, VertexId>,
    ) -> Self {
        let mut theta_plus: BTreeMap<VertexId, VertexCombination> = vertices
            .iter()
            .map(|v| (v.clone(), VertexCombination::zero()))
            .collect();
        let mut theta_minus = theta_plus.clone();
        for ((s, t), val) in &arrows {
            if let Some(tp) = theta_plus.get_mut(t) {
                tp.add_term(s.clone(), BigInt::from(val.d));
            }
            if let Some(tm) = theta_minus.get_mut(s) {
                tm.add_term(t.clone(), BigInt::from(val.dprime));
            }
        }
        let mut tau_minus = BTreeMap::new();
        for (x, y) in &tau_plus {
            tau_minus.entry(y.clone()).or_insert_with(|| x.clone());
        }
        TranslationQuiver {
            name,
            vertices,
            arrows,
            projectives,
            injectives,
            tau_plus,
            tau_minus,
            theta_plus,
            theta_minus,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn projectives(&self) -> &BTreeSet<VertexId> {
        &self.projectives
    }

    pub fn injectives(&self) -> &BTreeSet<VertexId> {
        &self.injectives
    }

    pub fn arrows(&self) -> impl Iterator<Item = (&VertexId, &VertexId, Valuation)> {
        self.arrows.iter().map(|((s, t), v)| (s, t, *v))
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn is_projective(&self, v: &VertexId) -> bool {
        self.projectives.contains(v)
    }

    pub fn is_injective(&self, v: &VertexId) -> bool {
        self.injectives.contains(v)
    }

    pub fn valuation(&self, src: &VertexId, dst: &VertexId) -> Valuation {
        self.arrows
            .get(&(src.clone(), dst.clone()))
            .copied()
            .unwrap_or(Valuation { d: 0, dprime: 0 })
    }

    /// `τ⁺(v)` on a single vertex, `None` when undefined.
    pub fn tau_plus_of(&self, v: &VertexId) -> Option<&VertexId> {
        self.tau_plus.get(v)
    }

    pub fn tau_minus_of(&self, v: &VertexId) -> Option<&VertexId> {
        self.tau_minus.get(v)
    }

    pub fn tau_pairs(&self) -> impl Iterator<Item = (&VertexId, &VertexId)> {
        self.tau_plus.iter()
    }

    /// `θ⁺v` for a single vertex (zero for unknown ids).
    pub fn theta_plus_of(&self, v: &VertexId) -> VertexCombination {
        self.theta_plus.get(v).cloned().unwrap_or_default()
    }

    pub fn theta_minus_of(&self, v: &VertexId) -> VertexCombination {
        self.theta_minus.get(v).cloned().unwrap_or_default()
    }

    /// Vertices that are injective and have no outgoing arrows.
    pub fn sinks(&self) -> BTreeSet<VertexId> {
        self.injectives
            .iter()
            .filter(|v| self.theta_minus_of(v).is_zero())
            .cloned()
            .collect()
    }

    pub fn vertex(&self, id: &str) -> Result<VertexId> {
        let v = VertexId::from(id);
        if self.contains(&v) {
            Ok(v)
        } else {
            Err(TauqError::UnknownVertex(id.to_owned()))
        }
    }

    pub fn check_support(&self, v: &VertexCombination) -> Result<()> {
        match v.support().find(|x| !self.contains(x)) {
            Some(x) => Err(TauqError::UnknownVertex(x.to_string())),
            None => Ok(()),
        }
    }

    // Linear operators without support checks; callers must have checked.

    pub(crate) fn theta_plus_lin(&self, v: &VertexCombination) -> VertexCombination {
        v.map_linear(|x| self.theta_plus_of(x))
    }

    pub(crate) fn theta_minus_lin(&self, v: &VertexCombination) -> VertexCombination {
        v.map_linear(|x| self.theta_minus_of(x))
    }

    pub(crate) fn tau_plus_lin(&self, v: &VertexCombination) -> VertexCombination {
        v.map_linear(|x| match self.tau_plus_of(x) {
            Some(y) if !self.is_projective(x) => VertexCombination::vertex(y.clone()),
            _ => VertexCombination::zero(),
        })
    }

    pub(crate) fn tau_minus_lin(&self, v: &VertexCombination) -> VertexCombination {
        v.map_linear(|x| match self.tau_minus_of(x) {
            Some(y) if !self.is_injective(x) => VertexCombination::vertex(y.clone()),
            _ => VertexCombination::zero(),
        })
    }

    /// `θ⁺` extended linearly: `θ⁺X = Σ_Y d(Y,X)·Y`.
    pub fn theta_plus(&self, v: &VertexCombination) -> Result<VertexCombination> {
        self.check_support(v)?;
        Ok(self.theta_plus_lin(v))
    }

    /// `θ⁻X = Σ_Y d′(X,Y)·Y`.
    pub fn theta_minus(&self, v: &VertexCombination) -> Result<VertexCombination> {
        self.check_support(v)?;
        Ok(self.theta_minus_lin(v))
    }

    /// `τ⁺` extended linearly; zero on projective vertices.
    pub fn tau_plus_ext(&self, v: &VertexCombination) -> Result<VertexCombination> {
        self.check_support(v)?;
        Ok(self.tau_plus_lin(v))
    }

    /// `τ⁻ = (τ⁺)⁻¹`, zero on injective vertices.
    pub fn tau_minus_ext(&self, v: &VertexCombination) -> Result<VertexCombination> {
        self.check_support(v)?;
        Ok(self.tau_minus_lin(v))
    }

    /// `φ⁺ = 1 − θ⁺ + τ⁺`.
    pub fn phi_plus(&self, v: &VertexCombination) -> Result<VertexCombination> {
        self.check_support(v)?;
        Ok(&(v - &self.theta_plus_lin(v)) + &self.tau_plus_lin(v))
    }

    /// `φ⁻ = 1 − θ⁻ + τ⁻`.
    pub fn phi_minus(&self, v: &VertexCombination) -> Result<VertexCombination> {
        self.check_support(v)?;
        Ok(&(v - &self.theta_minus_lin(v)) + &self.tau_minus_lin(v))
    }

    pub(crate) fn phi_plus_of(&self, x: &VertexId) -> VertexCombination {
        let v = VertexCombination::vertex(x.clone());
        &(&v - &self.theta_plus_lin(&v)) + &self.tau_plus_lin(&v)
    }

    pub(crate) fn phi_minus_of(&self, x: &VertexId) -> VertexCombination {
        let v = VertexCombination::vertex(x.clone());
        &(&v - &self.theta_minus_lin(&v)) + &self.tau_minus_lin(&v)
    }

    /// Checks every translation-quiver axiom and lists each breach.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut push = |rule: &'static str, subject: &VertexId, detail: String| {
            violations.push(Violation {
                rule,
                subject: Some(subject.clone()),
                detail,
            })
        };

        for ((s, t), val) in &self.arrows {
            if (val.d == 0) != (val.dprime == 0) {
                push(
                    "mixed-valuation",
                    s,
                    format!("arrow {s}->{t} has valuation ({},{})", val.d, val.dprime),
                );
            }
        }
        for x in &self.vertices {
            let projective = self.is_projective(x);
            match (self.tau_plus.get(x), projective) {
                (None, false) => push(
                    "tau-undefined",
                    x,
                    format!("tau_plus undefined on non-projective vertex {x}"),
                ),
                (Some(y), true) => push(
                    "tau-on-projective",
                    x,
                    format!("tau_plus({x}) = {y} defined on projective vertex {x}"),
                ),
                _ => {}
            }
            if self.theta_plus_of(x).is_zero() && !projective {
                push(
                    "source-not-projective",
                    x,
                    format!("vertex {x} has no incoming arrows but is not projective"),
                );
            }
        }
        let mut preimages: BTreeMap<&VertexId, Vec<&VertexId>> = BTreeMap::new();
        for (x, y) in &self.tau_plus {
            if self.is_projective(x) {
                continue;
            }
            preimages.entry(y).or_default().push(x);
            if self.is_injective(y) {
                push(
                    "tau-into-injective",
                    x,
                    format!("tau_plus({x}) = {y} lands in the injective set"),
                );
            }
            // d(Y,X) = d′(τ⁺X, Y) for all Y
            let into_x = self.theta_plus_of(x);
            let out_of_y = self.theta_minus_of(y);
            let mut ys: BTreeSet<&VertexId> = into_x.support().collect();
            ys.extend(out_of_y.support());
            for z in ys {
                let lhs = into_x.coefficient(z);
                let rhs = out_of_y.coefficient(z);
                if lhs != rhs {
                    push(
                        "mesh",
                        x,
                        format!(
                            "d({z},{x}) = {lhs} but d'({y},{z}) = {rhs} with tau_plus({x}) = {y}"
                        ),
                    );
                }
            }
        }
        for (y, xs) in &preimages {
            if xs.len() > 1 {
                let names: Vec<String> = xs.iter().map(|v| v.to_string()).collect();
                push(
                    "tau-not-injective",
                    y,
                    format!(
                        "vertex {y} is tau_plus of several vertices: {}",
                        names.join(",")
                    ),
                );
            }
        }
        for y in &self.vertices {
            if !self.is_injective(y) && !preimages.contains_key(y) {
                push(
                    "tau-not-surjective",
                    y,
                    format!("non-injective vertex {y} is not tau_plus of any vertex"),
                );
            }
        }
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    /// Finds the least positive integral `c` with `c(X)d(X,Y) = d′(X,Y)c(Y)`.
    ///
    /// Ratios are propagated breadth-first over the underlying graph of each
    /// connected component; the remaining arrows are then checked, and the
    /// rational solution is scaled to the minimal integral representative.
    pub fn admissibility(&self) -> AdmissibilityResult {
        let mut neighbours: BTreeMap<&VertexId, Vec<(&VertexId, BigRational)>> = BTreeMap::new();
        for ((s, t), val) in &self.arrows {
            if val.d == 0 || val.dprime == 0 {
                return AdmissibilityResult {
                    admissible: false,
                    c: None,
                    conflict: Some(AdmissibilityConflict {
                        arrow: (s.clone(), t.clone()),
                        cycle: vec![s.clone(), t.clone()],
                        ratio: "0".into(),
                    }),
                };
            }
            // c(t) = c(s)·d/d′
            let ratio = BigRational::new(BigInt::from(val.d), BigInt::from(val.dprime));
            neighbours.entry(s).or_default().push((t, ratio.clone()));
            neighbours.entry(t).or_default().push((s, ratio.recip()));
        }

        let mut value: BTreeMap<&VertexId, BigRational> = BTreeMap::new();
        let mut parent: BTreeMap<&VertexId, &VertexId> = BTreeMap::new();
        let mut components: Vec<Vec<&VertexId>> = Vec::new();
        for root in &self.vertices {
            if value.contains_key(root) {
                continue;
            }
            value.insert(root, BigRational::one());
            let mut members = vec![root];
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                let cx = value[x].clone();
                for (y, r) in neighbours.get(x).map(Vec::as_slice).unwrap_or(&[]) {
                    if !value.contains_key(y) {
                        value.insert(y, &cx * r);
                        parent.insert(y, x);
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            components.push(members);
        }

        for ((s, t), val) in &self.arrows {
            let lhs = &value[s] * BigInt::from(val.d);
            let rhs = &value[t] * BigInt::from(val.dprime);
            if lhs != rhs {
                let from_s = path_to_root(&parent, s);
                let from_t = path_to_root(&parent, t);
                let mut shared = 0;
                while shared < from_s.len().min(from_t.len())
                    && from_s[from_s.len() - 1 - shared] == from_t[from_t.len() - 1 - shared]
                {
                    shared += 1;
                }
                // s .. lowest common ancestor .. t, closed by the arrow s -> t
                let mut cycle: Vec<VertexId> = from_s[..from_s.len() - shared + 1].to_vec();
                cycle.extend(from_t[..from_t.len() - shared].iter().rev().cloned());
                return AdmissibilityResult {
                    admissible: false,
                    c: None,
                    conflict: Some(AdmissibilityConflict {
                        arrow: (s.clone(), t.clone()),
                        cycle,
                        ratio: (lhs / rhs).to_string(),
                    }),
                };
            }
        }

        let mut c = BTreeMap::new();
        for members in components {
            let lcm = members
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(value[*v].denom()));
            let scaled: Vec<BigInt> = members
                .iter()
                .map(|v| (&value[*v] * &lcm).to_integer())
                .collect();
            let gcd = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            for (v, x) in members.iter().zip(scaled) {
                c.insert((*v).clone(), x / &gcd);
            }
        }
        AdmissibilityResult {
            admissible: true,
            c: Some(c),
            conflict: None,
        }
    }
}

fn path_to_root<'a>(
    parent: &BTreeMap<&'a VertexId, &'a VertexId>,
    mut v: &'a VertexId,
) -> Vec<VertexId> {
    let mut path = vec![v.clone()];
    while let Some(p) = parent.get(v) {
        path.push((*p).clone());
        v = p;
    }
    path
}
