//! JSON encoding for arbitrary-precision integers: a plain number when it
//! fits in `i64`, otherwise a decimal string.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::Serializer;

use crate::vertex::VertexId;

pub fn int<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(small) => s.serialize_i64(small),
        None => s.serialize_str(&x.to_string()),
    }
}

struct Int<'a>(&'a BigInt);

impl serde::Serialize for Int<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        int(self.0, s)
    }
}

pub fn map<S: Serializer>(m: &BTreeMap<VertexId, BigInt>, s: S) -> Result<S::Ok, S::Error> {
    let mut out = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        out.serialize_entry(k, &Int(v))?;
    }
    out.end()
}

pub fn opt_map<S: Serializer>(
    m: &Option<BTreeMap<VertexId, BigInt>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match m {
        Some(m) => map(m, s),
        None => s.serialize_none(),
    }
}

pub fn matrix<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    struct Row<'a>(&'a [BigInt]);
    impl serde::Serialize for Row<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(self.0.len()))?;
            for x in self.0 {
                seq.serialize_element(&Int(x))?;
            }
            seq.end()
        }
    }
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in rows {
        seq.serialize_element(&Row(r))?;
    }
    seq.end()
}
