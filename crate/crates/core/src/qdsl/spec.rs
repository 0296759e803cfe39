//! Module specifiers: `P(i)`, `S(i)`, `A`, `rand(seed, budget)` and sums.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::BoundQuiverAlgebra;
use crate::harness::random_module;
use crate::repr::Module;

use super::lexer::{tokenize, Pos, Tok, Token};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    Projective(usize),
    Simple(usize),
    Regular,
    Random { seed: u64, budget: usize },
    Sum(Vec<ModuleSpec>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("{pos}: unknown module form: {found}")]
    UnknownForm { pos: Pos, found: String },
    #[error("{pos}: vertex {vertex} out of range")]
    VertexOutOfRange { pos: Pos, vertex: u64 },
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::Projective(i) => write!(f, "P({i})"),
            ModuleSpec::Simple(i) => write!(f, "S({i})"),
            ModuleSpec::Regular => f.write_str("A"),
            ModuleSpec::Random { seed, budget } => write!(f, "rand({seed},{budget})"),
            ModuleSpec::Sum(parts) => {
                let s: Vec<String> = parts.iter().map(ToString::to_string).collect();
                f.write_str(&s.join("+"))
            }
        }
    }
}

struct SpecParser<'a> {
    toks: Vec<Token>,
    at: usize,
    alg: &'a BoundQuiverAlgebra,
}

impl SpecParser<'_> {
    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unknown<T>(&self) -> Result<T, SpecError> {
        let t = &self.toks[self.at];
        Err(SpecError::UnknownForm {
            pos: t.pos,
            found: t.tok.to_string(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), SpecError> {
        if self.toks[self.at].tok == tok {
            self.bump();
            Ok(())
        } else {
            self.unknown()
        }
    }

    fn int(&mut self) -> Result<(u64, Pos), SpecError> {
        match self.toks[self.at].tok {
            Tok::Int(n) => Ok((n, self.bump().pos)),
            _ => self.unknown(),
        }
    }

    fn vertex(&mut self) -> Result<usize, SpecError> {
        self.expect(Tok::LParen)?;
        let (v, pos) = self.int()?;
        self.expect(Tok::RParen)?;
        if v == 0 || v > self.alg.num_vertices() as u64 {
            return Err(SpecError::VertexOutOfRange { pos, vertex: v });
        }
        Ok(v as usize)
    }

    fn atom(&mut self) -> Result<ModuleSpec, SpecError> {
        let name = match &self.toks[self.at].tok {
            Tok::Ident(s) => s.clone(),
            _ => return self.unknown(),
        };
        self.bump();
        match name.as_str() {
            "P" => Ok(ModuleSpec::Projective(self.vertex()?)),
            "S" => Ok(ModuleSpec::Simple(self.vertex()?)),
            "A" => Ok(ModuleSpec::Regular),
            "rand" => {
                self.expect(Tok::LParen)?;
                let (seed, _) = self.int()?;
                self.expect(Tok::Comma)?;
                let (budget, _) = self.int()?;
                self.expect(Tok::RParen)?;
                Ok(ModuleSpec::Random {
                    seed,
                    budget: budget.min(1 << 20) as usize,
                })
            }
            _ => {
                self.at -= 1;
                self.unknown()
            }
        }
    }

    fn spec(&mut self) -> Result<ModuleSpec, SpecError> {
        let mut parts = vec![self.atom()?];
        while self.toks[self.at].tok == Tok::Plus {
            self.bump();
            parts.push(self.atom()?);
        }
        if self.toks[self.at].tok != Tok::Eof {
            return self.unknown();
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            ModuleSpec::Sum(parts)
        })
    }
}

pub fn parse_module_spec(text: &str, alg: &BoundQuiverAlgebra) -> Result<ModuleSpec, SpecError> {
    let toks = tokenize(text).map_err(|e| SpecError::UnknownForm {
        pos: e.pos(),
        found: text.to_string(),
    })?;
    SpecParser { toks, at: 0, alg }.spec()
}

impl ModuleSpec {
    pub fn build(&self, alg: &Arc<BoundQuiverAlgebra>) -> Module {
        match self {
            ModuleSpec::Projective(i) => Module::projective(alg, *i),
            ModuleSpec::Simple(i) => Module::simple(alg, *i),
            ModuleSpec::Regular => Module::regular(alg),
            ModuleSpec::Random { seed, budget } => random_module(alg, *seed, *budget),
            ModuleSpec::Sum(parts) => {
                let built: Vec<Module> = parts.iter().map(|p| p.build(alg)).collect();
                let refs: Vec<&Module> = built.iter().collect();
                Module::direct_sum(alg, &refs)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::looped_broom;

    #[test]
    fn forms() {
        let a = looped_broom(10);
        assert_eq!(parse_module_spec("S(3)", &a), Ok(ModuleSpec::Simple(3)));
        assert_eq!(
            parse_module_spec("P(1)+S(2)", &a),
            Ok(ModuleSpec::Sum(vec![ModuleSpec::Projective(1), ModuleSpec::Simple(2)]))
        );
        let r = parse_module_spec("rand(7,40)", &a).unwrap();
        assert_eq!(r, ModuleSpec::Random { seed: 7, budget: 40 });
        assert!(r.build(&a).dim() <= 40);
        assert_eq!(parse_module_spec("A", &a).unwrap().build(&a).dim(), 59);
        assert_eq!(parse_module_spec(" P(1) + S(2) ", &a).unwrap().to_string(), "P(1)+S(2)");
    }

    #[test]
    fn errors() {
        let a = looped_broom(10);
        assert!(matches!(
            parse_module_spec("S(13)", &a),
            Err(SpecError::VertexOutOfRange { vertex: 13, .. })
        ));
        assert!(matches!(
            parse_module_spec("Q(1)", &a),
            Err(SpecError::UnknownForm { .. })
        ));
        assert!(matches!(
            parse_module_spec("S(1) S(2)", &a),
            Err(SpecError::UnknownForm { .. })
        ));
        assert!(matches!(parse_module_spec("", &a), Err(SpecError::UnknownForm { .. })));
    }
}
