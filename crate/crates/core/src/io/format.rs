//! Line-oriented quiver description format.
//!
//! ```text
//! # comment
//! quiver A2
//! vertex a b c
//! proj a b
//! inj b c
//! arrow a b          # valuation defaults to 1 1
//! arrow b c 1 1
//! tau c a            # τ⁺(c) = a
//! ```
//!
//! Every identifier used by `proj`, `inj`, `arrow` or `tau` must be declared
//! by a `vertex` line somewhere in the file.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::quiver::{QuiverBuilder, TranslationQuiver, Valuation};
use crate::vertex::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DeclKind {
    Vertex,
    Proj,
    Inj,
    Arrow,
    Tau,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Declaration {
    pub kind: DeclKind,
    pub tokens: Vec<String>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverDocument {
    pub name: String,
    pub declarations: Vec<Declaration>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<&'static str>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}:{}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" | "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseError {
    pub diagnostics: Vec<Diagnostic>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.diagnostics.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            diagnostics: vec![Diagnostic {
                line,
                column,
                message: message.into(),
                expected: Vec::new(),
            }],
        }
    }

    fn expecting(
        line: usize,
        column: usize,
        message: impl Into<String>,
        expected: &[&'static str],
    ) -> Self {
        let mut e = Self::at(line, column, message);
        e.diagnostics[0].expected = expected.to_vec();
        e
    }

    pub fn first_line(&self) -> usize {
        self.diagnostics.first().map_or(0, |d| d.line)
    }
}

const KEYWORDS: &[&str] = &["quiver", "vertex", "proj", "inj", "arrow", "tau"];

/// Tokenizes and checks arity, numeric fields and redefinitions.
pub fn parse_quiver(text: &str) -> Result<QuiverDocument, ParseError> {
    let mut name: Option<String> = None;
    let mut declarations = Vec::new();
    let mut vertex_lines: BTreeMap<String, usize> = BTreeMap::new();
    let mut arrow_lines: BTreeMap<(String, String), usize> = BTreeMap::new();
    let mut tau_lines: BTreeMap<String, usize> = BTreeMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        // (column, token) with 1-based columns
        let mut tokens: Vec<(usize, &str)> = Vec::new();
        let mut start = None;
        for (i, ch) in content.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push((s + 1, &content[s..i]));
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            tokens.push((s + 1, &content[s..]));
        }
        let Some(&(kw_col, keyword)) = tokens.first() else {
            continue;
        };
        let args = &tokens[1..];
        let end_col = content.trim_end().len() + 1;
        let arg_col = |i: usize| args.get(i).map_or(end_col, |a| a.0);

        let kind = match keyword {
            "quiver" => {
                if args.len() != 1 {
                    return Err(ParseError::expecting(
                        line,
                        arg_col(0),
                        "`quiver` takes exactly one name",
                        &["NAME"],
                    ));
                }
                if name.is_some() {
                    return Err(ParseError::at(line, kw_col, "quiver header given twice"));
                }
                name = Some(args[0].1.to_owned());
                continue;
            }
            "vertex" => DeclKind::Vertex,
            "proj" => DeclKind::Proj,
            "inj" => DeclKind::Inj,
            "arrow" => DeclKind::Arrow,
            "tau" => DeclKind::Tau,
            other => {
                return Err(ParseError::expecting(
                    line,
                    kw_col,
                    format!("unknown keyword `{other}`"),
                    KEYWORDS,
                ))
            }
        };

        match kind {
            DeclKind::Vertex | DeclKind::Proj | DeclKind::Inj => {
                if args.is_empty() {
                    return Err(ParseError::expecting(
                        line,
                        end_col,
                        format!("`{keyword}` needs at least one identifier"),
                        &["ID"],
                    ));
                }
                if kind == DeclKind::Vertex {
                    for &(col, id) in args {
                        if let Some(prev) = vertex_lines.insert(id.to_owned(), line) {
                            return Err(ParseError::at(
                                line,
                                col,
                                format!("duplicate vertex `{id}` (first declared on line {prev})"),
                            ));
                        }
                    }
                }
            }
            DeclKind::Arrow => {
                match args.len() {
                    2 | 4 => {}
                    3 => {
                        return Err(ParseError::expecting(
                            line,
                            arg_col(2),
                            "arrow valuation needs both components",
                            &["D DPRIME", "end of line"],
                        ))
                    }
                    _ => {
                        return Err(ParseError::expecting(
                            line,
                            arg_col(args.len().min(4)),
                            "malformed arrow",
                            &["SRC DST", "SRC DST D DPRIME"],
                        ))
                    }
                }
                if args.len() == 4 {
                    let mut vals = [0u64; 2];
                    for (k, slot) in vals.iter_mut().enumerate() {
                        let (col, tok) = args[2 + k];
                        *slot = tok.parse().map_err(|_| {
                            ParseError::expecting(
                                line,
                                col,
                                format!("`{tok}` is not a nonnegative integer"),
                                &["INTEGER"],
                            )
                        })?;
                    }
                    if vals == [0, 0] {
                        return Err(ParseError::at(
                            line,
                            args[2].0,
                            "valuation (0,0) denotes no arrow",
                        ));
                    }
                }
                let key = (args[0].1.to_owned(), args[1].1.to_owned());
                if let Some(prev) = arrow_lines.insert(key, line) {
                    return Err(ParseError::at(
                        line,
                        kw_col,
                        format!(
                            "arrow {}->{} redefined (first on line {prev})",
                            args[0].1, args[1].1
                        ),
                    ));
                }
            }
            DeclKind::Tau => {
                if args.len() != 2 {
                    return Err(ParseError::expecting(
                        line,
                        arg_col(args.len().min(2)),
                        "malformed tau",
                        &["X Y"],
                    ));
                }
                if let Some(prev) = tau_lines.insert(args[0].1.to_owned(), line) {
                    return Err(ParseError::at(
                        line,
                        kw_col,
                        format!("tau of `{}` redefined (first on line {prev})", args[0].1),
                    ));
                }
            }
        }
        declarations.push(Declaration {
            kind,
            tokens: args.iter().map(|(_, t)| (*t).to_owned()).collect(),
            line,
        });
    }

    Ok(QuiverDocument {
        name: name.unwrap_or_else(|| "unnamed".to_owned()),
        declarations,
    })
}

impl QuiverDocument {
    /// Builds the quiver without checking the translation-quiver axioms.
    pub fn lower_unchecked(&self) -> Result<TranslationQuiver, ParseError> {
        let declared: BTreeSet<&str> = self
            .declarations
            .iter()
            .filter(|d| d.kind == DeclKind::Vertex)
            .flat_map(|d| d.tokens.iter().map(String::as_str))
            .collect();
        let mut diagnostics = Vec::new();
        for decl in &self.declarations {
            let refs: &[String] = match decl.kind {
                DeclKind::Vertex => &[],
                DeclKind::Arrow => &decl.tokens[..2],
                _ => &decl.tokens,
            };
            for id in refs {
                if !declared.contains(id.as_str()) {
                    diagnostics.push(Diagnostic {
                        line: decl.line,
                        column: 0,
                        message: format!("unknown vertex `{id}`"),
                        expected: vec!["a vertex declared by `vertex`"],
                    });
                }
            }
        }
        if !diagnostics.is_empty() {
            return Err(ParseError { diagnostics });
        }

        let mut b = QuiverBuilder::new(self.name.clone());
        for decl in &self.declarations {
            let t = &decl.tokens;
            b = match decl.kind {
                DeclKind::Vertex => b.vertices(t.iter().map(String::as_str)),
                DeclKind::Proj => b.projectives(t.iter().map(String::as_str)),
                DeclKind::Inj => b.injectives(t.iter().map(String::as_str)),
                DeclKind::Arrow => {
                    let val = if t.len() == 4 {
                        // checked by the parser
                        Valuation::new(t[2].parse().unwrap_or(0), t[3].parse().unwrap_or(0))
                    } else {
                        Valuation::UNIT
                    };
                    b.valued_arrow(t[0].as_str(), t[1].as_str(), val)
                }
                DeclKind::Tau => b.tau(t[0].as_str(), t[1].as_str()),
            };
        }
        b.build().map_err(|e| ParseError::at(0, 0, e.to_string()))
    }

    /// Builds the quiver and rejects it unless every axiom holds.
    pub fn lower(&self) -> Result<TranslationQuiver, ParseError> {
        let q = self.lower_unchecked()?;
        let report = q.validate();
        if report.ok {
            return Ok(q);
        }
        let line_of = |kind: DeclKind, v: &VertexId| {
            self.declarations
                .iter()
                .find(|d| {
                    d.kind == kind && d.tokens.first().map(String::as_str) == Some(v.as_str())
                })
                .or_else(|| {
                    self.declarations.iter().find(|d| {
                        d.kind == DeclKind::Vertex && d.tokens.iter().any(|t| t == v.as_str())
                    })
                })
                .map_or(0, |d| d.line)
        };
        let diagnostics = report
            .violations
            .iter()
            .map(|v| {
                let kind = if v.rule.starts_with("tau") || v.rule == "mesh" {
                    DeclKind::Tau
                } else {
                    DeclKind::Arrow
                };
                Diagnostic {
                    line: v.subject.as_ref().map_or(0, |s| line_of(kind, s)),
                    column: 0,
                    message: format!("{}: {}", v.rule, v.detail),
                    expected: Vec::new(),
                }
            })
            .collect();
        Err(ParseError { diagnostics })
    }
}

/// Writes a quiver back out in the text format.
pub fn render_quiver(q: &TranslationQuiver) -> String {
    let mut out = format!("quiver {}\n", q.name());
    let join = |set: &mut dyn Iterator<Item = &VertexId>| {
        set.map(VertexId::as_str).collect::<Vec<_>>().join(" ")
    };
    out.push_str(&format!("vertex {}\n", join(&mut q.vertices().iter())));
    if !q.projectives().is_empty() {
        out.push_str(&format!("proj {}\n", join(&mut q.projectives().iter())));
    }
    if !q.injectives().is_empty() {
        out.push_str(&format!("inj {}\n", join(&mut q.injectives().iter())));
    }
    for (s, t, val) in q.arrows() {
        if val == Valuation::UNIT {
            out.push_str(&format!("arrow {s} {t}\n"));
        } else {
            out.push_str(&format!("arrow {s} {t} {} {}\n", val.d, val.dprime));
        }
    }
    for (x, y) in q.tau_pairs() {
        out.push_str(&format!("tau {x} {y}\n"));
    }
    out
}
