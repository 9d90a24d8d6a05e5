#![allow(dead_code)]

use std::collections::BTreeSet;

use tauq::chains::ChainTable;
use tauq::{QuiverBuilder, TranslationQuiver, VertexId};

/// Printed ladders: `(fixture, vertex, bottom row, top row or empty)`.
pub const THETA_GOLDEN: &[(&str, &str, &[&str], &[&str])] = &[
    (
        "EX421",
        "7",
        &["7", "11", "13,15", "18,19", "2,3", "5", "9", "0"],
        &["0", "14", "18", "1,2", "4,5", "8,10", "12", "16"],
    ),
    (
        "EX421",
        "9",
        &["9", "12", "15,17", "18,19", "1,2", "4", "7", "0"],
        &["0", "16", "19", "2,3", "4,5", "6,8", "11", "14"],
    ),
];

pub const ETA_GOLDEN: &[(&str, &str, &[&str], &[&str])] = &[
    (
        "EX451",
        "4",
        &["1", "5", "10", "13", "17", "0"],
        &["4", "9", "12", "16", "19", "23"],
    ),
    (
        "EX451",
        "6",
        &[
            "2", "5,7", "9,10,11", "12,13", "15,16", "18", "20", "24", "0",
        ],
        &[],
    ),
    (
        "EX451",
        "8",
        &["3", "7", "10", "12", "14,15", "18", "22", "26", "30", "0"],
        &[],
    ),
    (
        "EX451",
        "15",
        &[
            "12", "14,16", "18,19", "21,22,23", "25,26", "27,29", "31", "34", "0",
        ],
        &[],
    ),
    (
        "EX451",
        "24",
        &[
            "20", "25", "28,29", "31,32", "33,35,36", "37,38", "2", "6", "0",
        ],
        &[],
    ),
    (
        "EX452",
        "5",
        &[
            "1,2", "5,6", "8,9,10", "12^2", "14,15,16", "18,19", "22,23", "25", "0",
        ],
        &[
            "5", "7,8", "11,12", "14,15,16", "18^2", "20,21,22", "24,25", "2,26", "0",
        ],
    ),
    (
        "EX452",
        "19",
        &[
            "16,17", "18,19", "20,21,22", "24^2", "2,3,4", "5,6", "7,8", "11", "0",
        ],
        &[
            "19", "22,23", "24,25", "2,3,4", "6^2", "8,9,10", "11,12", "13,14", "0",
        ],
    ),
    (
        "EX453",
        "1",
        &[
            "17", "2", "6,7", "9,10", "11,13,14", "15,16", "18,19", "2", "5", "0",
        ],
        &[],
    ),
    (
        "EX453",
        "4",
        &["20", "3", "7", "9", "11,12", "15", "19", "3", "8", "0"],
        &[],
    ),
    (
        "EX454",
        "5",
        &[
            "3",
            "6,7",
            "10,11",
            "12,14",
            "15,16,17",
            "19^2,20",
            "22,23,24^2",
            "0",
        ],
        &[],
    ),
];

/// Last nonzero η entry of the EX454 injectives whose ladders end in a sum.
pub const ETA_MULTI_TERM: &[(&str, &str)] = &[
    ("6", "22^2,23^2,24^4,25^2"),
    ("8", "22,23^2,24^3,25"),
    ("9", "22^2,23,24^3,25"),
];

pub fn row(cs: &[tauq::VertexCombination]) -> Vec<String> {
    cs.iter().map(ToString::to_string).collect()
}

/// Checks a ladder against printed rows; an empty expected top row is skipped.
pub fn matches(chain: &ChainTable, bottom: &[&str], top: &[&str]) -> Result<(), String> {
    let got = row(&chain.bottom);
    if got != bottom {
        return Err(format!(
            "{} bottom: got {got:?}, want {bottom:?}",
            chain.start
        ));
    }
    if !top.is_empty() {
        let got = row(&chain.top);
        if got != top {
            return Err(format!("{} top: got {got:?}, want {top:?}", chain.start));
        }
    }
    Ok(())
}

pub fn set(ids: &[&str]) -> BTreeSet<VertexId> {
    ids.iter().map(|&s| VertexId::from(s)).collect()
}

/// The admissible artinian fixtures: six example quivers and two small oracles.
pub const FIXTURES: &[&str] = &[
    "EX421", "EX451", "EX452", "EX453", "EX454", "EX542", "A2", "PT1",
];

/// Pairs `(n, r)` for which [`za_slice`] is a translation quiver.
pub fn za_valid(n: usize, r: usize) -> bool {
    n >= 1 && (r >= 2 || n == 1)
}

/// The full slice of `ℤA_r` between columns `1..=n`: vertices `M(a,b)` with
/// `1 ≤ a ≤ b ≤ n` and `b − a < r`, arrows `M(a,b) → M(a,b+1)` and
/// `M(a,b) → M(a+1,b)`, and `τ⁺M(a,b) = M(a−1,b−1)`.
pub fn za_slice(n: usize, r: usize) -> TranslationQuiver {
    let name = |a: usize, b: usize| format!("{a}_{b}");
    let valid = |a: usize, b: usize| 1 <= a && a <= b && b <= n && b - a < r;
    let mut vertices = Vec::new();
    let mut proj = Vec::new();
    let mut inj = Vec::new();
    let mut builder = QuiverBuilder::new(format!("ZA{r}x{n}"));
    for a in 1..=n {
        for b in a..=n {
            if !valid(a, b) {
                continue;
            }
            vertices.push(name(a, b));
            if a == 1 {
                proj.push(name(a, b));
            } else {
                builder = builder.tau(name(a, b), name(a - 1, b - 1));
            }
            if b == n {
                inj.push(name(a, b));
            }
            if valid(a, b + 1) {
                builder = builder.arrow(name(a, b), name(a, b + 1));
            }
            if valid(a + 1, b) {
                builder = builder.arrow(name(a, b), name(a + 1, b));
            }
        }
    }
    builder
        .vertices(vertices)
        .projectives(proj)
        .injectives(inj)
        .build()
        .expect("slice of ZA_r")
}

/// Arrows reversed with swapped valuations, `Q^p ↔ Q^i` and `τ⁺ ↔ τ⁻`.
pub fn opposite(q: &TranslationQuiver) -> TranslationQuiver {
    let mut builder = QuiverBuilder::new(format!("{}op", q.name()))
        .vertices(q.vertices().iter().cloned())
        .projectives(q.injectives().iter().cloned())
        .injectives(q.projectives().iter().cloned());
    for (src, dst, v) in q.arrows() {
        builder = builder.valued_arrow(
            dst.clone(),
            src.clone(),
            tauq::Valuation::new(v.dprime, v.d),
        );
    }
    for (x, y) in q.tau_pairs() {
        builder = builder.tau(y.clone(), x.clone());
    }
    builder.build().expect("opposite of a quiver")
}
