use std::fmt::{self, Write as _};

use crate::algebra::{BoundQuiverAlgebra, DEFAULT_MAX_LENGTH};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// `(-)? (c *)? a1 * a2 * ⋯`, arrows in traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub negative: bool,
    pub coeff: Option<u64>,
    pub arrows: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationExpr {
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationAst {
    pub name: String,
    pub field: Option<u64>,
    pub vertices: usize,
    pub max_length: Option<u64>,
    pub arrows: Vec<ArrowDecl>,
    pub relations: Vec<RelationExpr>,
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.coeff {
            write!(f, "{c}*")?;
        }
        f.write_str(&self.arrows.join("*"))
    }
}

impl fmt::Display for RelationExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            match (i, t.negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl PresentationAst {
    /// A presentation that compiles back to the same algebra.
    pub fn from_algebra(alg: &BoundQuiverAlgebra) -> Self {
        let q = alg.quiver();
        let name: String = alg
            .name()
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
            .collect();
        let name = match name.chars().next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => name,
            _ => format!("a_{name}"),
        };
        PresentationAst {
            name,
            field: Some(alg.field().modulus() as u64),
            vertices: alg.num_vertices(),
            max_length: (alg.max_length() != DEFAULT_MAX_LENGTH).then_some(alg.max_length() as u64),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowDecl {
                    name: a.name.clone(),
                    source: a.source + 1,
                    target: a.target + 1,
                })
                .collect(),
            relations: alg
                .relations()
                .iter()
                .map(|r| RelationExpr {
                    terms: r
                        .terms()
                        .iter()
                        .map(|(c, p)| Term {
                            negative: false,
                            coeff: (*c != 1).then_some(*c as u64),
                            arrows: p.arrows().iter().map(|&i| q.arrow(i).name.clone()).collect(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Canonical source text; parsing it yields an equal AST.
    pub fn pretty(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "algebra {} {{", self.name);
        if let Some(p) = self.field {
            let _ = writeln!(s, "  field = {p};");
        }
        let _ = writeln!(s, "  vertices = {};", self.vertices);
        if let Some(n) = self.max_length {
            let _ = writeln!(s, "  max_length = {n};");
        }
        s.push_str("  arrows {\n");
        for a in &self.arrows {
            let _ = writeln!(s, "    {}: {} -> {};", a.name, a.source, a.target);
        }
        s.push_str("  }\n  relations {\n");
        for r in &self.relations {
            let _ = writeln!(s, "    {r};");
        }
        s.push_str("  }\n}\n");
        s
    }
}
