//! Formal integer linear combinations of vertices.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::vertex::VertexId;

/// An element of the free abelian group on the vertex set.
///
/// Zero coefficients are never stored, so two combinations are equal exactly
/// when their maps are equal.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexCombination {
    coeffs: BTreeMap<VertexId, BigInt>,
}

impl VertexCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vertex(v: impl Into<VertexId>) -> Self {
        Self::term(v, 1)
    }

    pub fn term(v: impl Into<VertexId>, coeff: impl Into<BigInt>) -> Self {
        let mut out = Self::zero();
        out.add_term(v.into(), coeff.into());
        out
    }

    pub fn from_terms<V, C, I>(terms: I) -> Self
    where
        V: Into<VertexId>,
        C: Into<BigInt>,
        I: IntoIterator<Item = (V, C)>,
    {
        let mut out = Self::zero();
        for (v, c) in terms {
            out.add_term(v.into(), c.into());
        }
        out
    }

    pub fn add_term(&mut self, v: VertexId, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.coeffs.entry(v) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, v: &VertexId) -> BigInt {
        self.coeffs.get(v).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| c.is_positive())
    }

    pub fn has_negative(&self) -> bool {
        self.coeffs.values().any(|c| c.is_negative())
    }

    pub fn support(&self) -> impl Iterator<Item = &VertexId> {
        self.coeffs.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexId, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The positive part: drops every nonpositive coefficient.
    pub fn positive_part(&self) -> Self {
        VertexCombination {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(_, c)| c.is_positive())
                .map(|(v, c)| (v.clone(), c.clone()))
                .collect(),
        }
    }

    /// `Some(v)` when the combination is exactly one vertex with coefficient 1.
    pub fn as_single_vertex(&self) -> Option<&VertexId> {
        match self.coeffs.iter().next() {
            Some((v, c)) if self.coeffs.len() == 1 && c.is_one() => Some(v),
            _ => None,
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        VertexCombination {
            coeffs: self
                .coeffs
                .iter()
                .map(|(v, c)| (v.clone(), c * k))
                .collect(),
        }
    }

    /// Extends a vertex-level map linearly.
    pub fn map_linear<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&VertexId) -> VertexCombination,
    {
        let mut out = Self::zero();
        for (v, c) in &self.coeffs {
            let image = f(v);
            for (w, d) in image.coeffs {
                out.add_term(w, d * c);
            }
        }
        out
    }

    /// Fallible variant of [`map_linear`](Self::map_linear).
    pub fn try_map_linear<F, E>(&self, mut f: F) -> Result<Self, E>
    where
        F: FnMut(&VertexId) -> Result<VertexCombination, E>,
    {
        let mut out = Self::zero();
        for (v, c) in &self.coeffs {
            let image = f(v)?;
            for (w, d) in image.coeffs {
                out.add_term(w, d * c);
            }
        }
        Ok(out)
    }

    /// Evaluates an integer-valued vertex function, extended linearly.
    pub fn evaluate<F>(&self, mut f: F) -> BigInt
    where
        F: FnMut(&VertexId) -> BigInt,
    {
        self.coeffs
            .iter()
            .map(|(v, c)| f(v) * c)
            .fold(BigInt::zero(), |a, b| a + b)
    }

    /// Keeps only the terms whose vertex satisfies `keep`.
    pub fn restrict<F>(&self, mut keep: F) -> Self
    where
        F: FnMut(&VertexId) -> bool,
    {
        VertexCombination {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(v, _)| keep(v))
                .map(|(v, c)| (v.clone(), c.clone()))
                .collect(),
        }
    }
}

impl AddAssign<&VertexCombination> for VertexCombination {
    fn add_assign(&mut self, rhs: &VertexCombination) {
        for (v, c) in &rhs.coeffs {
            self.add_term(v.clone(), c.clone());
        }
    }
}

impl SubAssign<&VertexCombination> for VertexCombination {
    fn sub_assign(&mut self, rhs: &VertexCombination) {
        for (v, c) in &rhs.coeffs {
            self.add_term(v.clone(), -c);
        }
    }
}

impl Add for &VertexCombination {
    type Output = VertexCombination;
    fn add(self, rhs: &VertexCombination) -> VertexCombination {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &VertexCombination {
    type Output = VertexCombination;
    fn sub(self, rhs: &VertexCombination) -> VertexCombination {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for VertexCombination {
    type Output = VertexCombination;
    fn add(mut self, rhs: VertexCombination) -> VertexCombination {
        self += &rhs;
        self
    }
}

impl Sub for VertexCombination {
    type Output = VertexCombination;
    fn sub(mut self, rhs: VertexCombination) -> VertexCombination {
        self -= &rhs;
        self
    }
}

impl Neg for &VertexCombination {
    type Output = VertexCombination;
    fn neg(self) -> VertexCombination {
        VertexCombination {
            coeffs: self.coeffs.iter().map(|(v, c)| (v.clone(), -c)).collect(),
        }
    }
}

/// Renders as the ladder tables do: `13,15`, `18^2,19`, and `0` for zero.
impl fmt::Display for VertexCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (v, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if c.is_one() {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for VertexCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Serializes as a JSON object `{vertex: coefficient}`; coefficients outside
/// the `i64` range are written as decimal strings.
impl Serialize for VertexCombination {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (v, c) in &self.coeffs {
            match c.to_i64() {
                Some(small) => map.serialize_entry(v, &small)?,
                None => map.serialize_entry(v, &c.to_string())?,
            }
        }
        map.end()
    }
}
