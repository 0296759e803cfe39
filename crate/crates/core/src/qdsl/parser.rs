//! Recursive-descent parser for `.qalg` presentations.
//!
//! ```text
//! algebra  ::= "algebra" IDENT "{" stmt* "}"
//! stmt     ::= "field" "=" INT ";" | "vertices" "=" INT ";" | "max_length" "=" INT ";"
//!            | "arrows" "{" (IDENT ":" INT "->" INT ";")* "}"
//!            | "relations" "{" (relexpr ";")* "}"
//! relexpr  ::= "-"? term (("+" | "-") term)*
//! term     ::= (INT "*")? IDENT ("*" IDENT)*
//! ```

use std::sync::Arc;

use crate::algebra::{BoundQuiverAlgebra, DEFAULT_MAX_LENGTH};
use crate::error::AlgebraError;
use crate::linalg::{is_prime, PrimeField};
use crate::quiver::{Quiver, Relation};

use super::ast::{ArrowDecl, PresentationAst, RelationExpr, Term};
use super::lexer::{tokenize, Pos, Tok, Token};
use super::ParseError;

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

/// Positions of the parts of an AST, kept beside it for semantic checks.
#[derive(Default)]
struct Spans {
    header: Pos,
    field: Option<Pos>,
    vertices: Option<Pos>,
    max_length: Option<Pos>,
    arrows: Vec<(Pos, Pos, Pos)>,
    relations: Vec<(Pos, Vec<Pos>)>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T, ParseError> {
        let t = self.peek();
        Err(ParseError::Syntax {
            pos: t.pos,
            expected: expected.to_string(),
            found: t.tok.to_string(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<Pos, ParseError> {
        if self.peek().tok == tok {
            Ok(self.next().pos)
        } else {
            self.fail(&tok.to_string())
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                Ok((s, self.next().pos))
            }
            _ => self.fail("an identifier"),
        }
    }

    fn int(&mut self) -> Result<(u64, Pos), ParseError> {
        match self.peek().tok {
            Tok::Int(n) => Ok((n, self.next().pos)),
            _ => self.fail("an integer"),
        }
    }

    fn assignment(&mut self) -> Result<(u64, Pos), ParseError> {
        self.expect(Tok::Eq)?;
        let v = self.int()?;
        self.expect(Tok::Semi)?;
        Ok(v)
    }

    fn term(&mut self, negative: bool) -> Result<(Term, Pos, Vec<Pos>), ParseError> {
        let start = self.peek().pos;
        let mut coeff = None;
        if let Tok::Int(_) = self.peek().tok {
            coeff = Some(self.int()?.0);
            self.expect(Tok::Star)?;
        }
        let (first, p) = self.ident()?;
        let mut arrows = vec![first];
        let mut positions = vec![p];
        while self.peek().tok == Tok::Star {
            self.next();
            let (a, p) = self.ident()?;
            arrows.push(a);
            positions.push(p);
        }
        Ok((
            Term {
                negative,
                coeff,
                arrows,
            },
            start,
            positions,
        ))
    }

    fn relation(&mut self) -> Result<(RelationExpr, Pos, Vec<Pos>), ParseError> {
        let start = self.peek().pos;
        let mut negative = false;
        if self.peek().tok == Tok::Minus {
            self.next();
            negative = true;
        }
        let mut terms = Vec::new();
        let mut positions = Vec::new();
        loop {
            let (t, _, ps) = self.term(negative)?;
            terms.push(t);
            positions.extend(ps);
            match self.peek().tok {
                Tok::Plus => negative = false,
                Tok::Minus => negative = true,
                _ => break,
            }
            self.next();
        }
        Ok((RelationExpr { terms }, start, positions))
    }

    fn presentation(&mut self) -> Result<(PresentationAst, Spans), ParseError> {
        let mut spans = Spans::default();
        match &self.peek().tok {
            Tok::Ident(k) if k == "algebra" => spans.header = self.next().pos,
            _ => return self.fail("`algebra`"),
        }
        let (name, _) = self.ident()?;
        self.expect(Tok::LBrace)?;
        let mut field = None;
        let mut vertices = None;
        let mut max_length = None;
        let mut arrows = Vec::new();
        let mut relations = Vec::new();
        loop {
            let tok = self.peek().clone();
            let kw = match &tok.tok {
                Tok::RBrace => {
                    self.next();
                    break;
                }
                Tok::Ident(k) => k.clone(),
                _ => return self.fail("a statement or `}`"),
            };
            match kw.as_str() {
                "field" | "vertices" | "max_length" => {
                    self.next();
                    let (v, p) = self.assignment()?;
                    let (slot, span) = match kw.as_str() {
                        "field" => (&mut field, &mut spans.field),
                        "vertices" => (&mut vertices, &mut spans.vertices),
                        _ => (&mut max_length, &mut spans.max_length),
                    };
                    if slot.is_some() {
                        return Err(ParseError::DuplicateStatement { pos: tok.pos, what: kw });
                    }
                    *slot = Some(v);
                    *span = Some(p);
                }
                "arrows" => {
                    self.next();
                    self.expect(Tok::LBrace)?;
                    while self.peek().tok != Tok::RBrace {
                        let (name, np) = self.ident()?;
                        self.expect(Tok::Colon)?;
                        let (s, sp) = self.int()?;
                        self.expect(Tok::Arrow)?;
                        let (t, tp) = self.int()?;
                        self.expect(Tok::Semi)?;
                        arrows.push((name, s, t));
                        spans.arrows.push((np, sp, tp));
                    }
                    self.next();
                }
                "relations" => {
                    self.next();
                    self.expect(Tok::LBrace)?;
                    while self.peek().tok != Tok::RBrace {
                        let (r, p, ps) = self.relation()?;
                        self.expect(Tok::Semi)?;
                        relations.push(r);
                        spans.relations.push((p, ps));
                    }
                    self.next();
                }
                _ => return self.fail("`field`, `vertices`, `max_length`, `arrows` or `relations`"),
            }
        }
        if self.peek().tok != Tok::Eof {
            return self.fail("end of input");
        }
        let Some(vertices) = vertices else {
            return Err(ParseError::Missing {
                pos: spans.header,
                what: "vertices".into(),
            });
        };
        let vpos = spans.vertices.unwrap_or_default();
        if vertices == 0 || vertices > 10_000 {
            return Err(ParseError::InvalidValue {
                pos: vpos,
                message: format!("vertex count {vertices} must lie in 1..=10000"),
            });
        }
        let vertices = vertices as usize;
        let mut arrow_decls = Vec::new();
        for ((name, s, t), (np, sp, tp)) in arrows.into_iter().zip(&spans.arrows) {
            if arrow_decls.iter().any(|a: &ArrowDecl| a.name == name) {
                return Err(ParseError::DuplicateArrow { pos: *np, name });
            }
            for (v, p) in [(s, sp), (t, tp)] {
                if v == 0 || v > vertices as u64 {
                    return Err(ParseError::UnknownVertex { pos: *p, vertex: v });
                }
            }
            arrow_decls.push(ArrowDecl {
                name,
                source: s as usize,
                target: t as usize,
            });
        }
        Ok((
            PresentationAst {
                name,
                field,
                vertices,
                max_length,
                arrows: arrow_decls,
                relations,
            },
            spans,
        ))
    }
}

fn field_of(ast: &PresentationAst, pos: Pos) -> Result<PrimeField, ParseError> {
    let p = ast.field.unwrap_or(PrimeField::DEFAULT_MODULUS as u64);
    if p > u32::MAX as u64 || !is_prime(p) {
        return Err(ParseError::BadModulus { pos, value: p });
    }
    PrimeField::new(p as u32).map_err(|_| ParseError::BadModulus { pos, value: p })
}

fn build_quiver(ast: &PresentationAst) -> Result<Quiver, AlgebraError> {
    Quiver::new(
        ast.vertices,
        ast.arrows.iter().map(|a| (a.name.clone(), a.source, a.target)),
    )
}

fn build_relation(q: &Quiver, field: PrimeField, r: &RelationExpr) -> Result<Relation, AlgebraError> {
    let mut terms = Vec::with_capacity(r.terms.len());
    for t in &r.terms {
        let names: Vec<&str> = t.arrows.iter().map(String::as_str).collect();
        let path = q.path_from_names(&names)?;
        let c = field.reduce(t.coeff.unwrap_or(1));
        terms.push((if t.negative { field.neg(c) } else { c }, path));
    }
    Relation::new(field, terms)
}

/// Parses and validates a presentation; every error carries a position.
pub fn parse_presentation(text: &str) -> Result<PresentationAst, ParseError> {
    let (ast, spans) = Parser {
        toks: tokenize(text)?,
        at: 0,
    }
    .presentation()?;
    let field = field_of(&ast, spans.field.unwrap_or(spans.header))?;
    if ast.max_length == Some(0) {
        return Err(ParseError::InvalidValue {
            pos: spans.max_length.unwrap_or_default(),
            message: "max_length must be positive".into(),
        });
    }
    let q = build_quiver(&ast).map_err(|e| ParseError::Compile {
        pos: spans.header,
        source: e,
    })?;
    for (r, (rpos, apos)) in ast.relations.iter().zip(&spans.relations) {
        let names = r.terms.iter().flat_map(|t| &t.arrows);
        for (name, p) in names.zip(apos) {
            if q.arrow_index(name).is_none() {
                return Err(ParseError::UnknownArrow {
                    pos: *p,
                    name: name.clone(),
                });
            }
        }
        build_relation(&q, field, r).map_err(|e| ParseError::InvalidRelation { pos: *rpos, source: e })?;
    }
    Ok(ast)
}

/// Compiles a validated AST.
pub fn build_algebra(ast: &PresentationAst) -> Result<Arc<BoundQuiverAlgebra>, AlgebraError> {
    let field = PrimeField::new(ast.field.unwrap_or(PrimeField::DEFAULT_MODULUS as u64) as u32)?;
    let q = build_quiver(ast)?;
    let relations = ast
        .relations
        .iter()
        .map(|r| build_relation(&q, field, r))
        .collect::<Result<Vec<_>, _>>()?;
    let max_length = ast.max_length.map_or(DEFAULT_MAX_LENGTH, |n| n.min(1 << 16) as usize);
    BoundQuiverAlgebra::compile(ast.name.clone(), q, relations, field, max_length).map(Arc::new)
}

/// Parses, validates and compiles; compile failures point at the header.
pub fn load_algebra(text: &str) -> Result<(PresentationAst, Arc<BoundQuiverAlgebra>), ParseError> {
    let ast = parse_presentation(text)?;
    let header = tokenize(text)?.first().map(|t| t.pos).unwrap_or_default();
    let alg = build_algebra(&ast).map_err(|e| ParseError::Compile { pos: header, source: e })?;
    Ok((ast, alg))
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = "algebra a2 { field = 101; vertices = 2; arrows { a: 1 -> 2; } relations { } }";

    #[test]
    fn minimal() {
        let ast = parse_presentation(A2).unwrap();
        assert_eq!(ast.arrows.len(), 1);
        assert!(ast.relations.is_empty());
        let (_, alg) = load_algebra(A2).unwrap();
        assert_eq!(alg.dim(), 3);
    }

    #[test]
    fn combination_relation() {
        let text = "algebra sq { vertices = 4; arrows { a: 1 -> 2; b: 2 -> 4; c: 1 -> 3; d: 3 -> 4; }
            relations { a*b + 2*c*d; } }";
        let ast = parse_presentation(text).unwrap();
        assert_eq!(ast.relations[0].terms.len(), 2);
        assert_eq!(ast.relations[0].terms[1].coeff, Some(2));
        let alg = build_algebra(&ast).unwrap();
        let q = alg.quiver();
        let r = build_relation(q, alg.field(), &ast.relations[0]).unwrap();
        let coeffs: Vec<u32> = r.terms().iter().map(|(c, _)| *c).collect();
        assert_eq!(coeffs, vec![1, 2]);
        assert_eq!(alg.dim(), 9);
    }

    #[test]
    fn round_trip() {
        let text = "algebra x { vertices = 3; arrows { a: 1 -> 2; } max_length = 9;
            arrows { b: 2 -> 3; } relations { -a*b; } relations { 3*a*b - 4*a*b; } }";
        let ast = parse_presentation(text).unwrap();
        let again = parse_presentation(&ast.pretty()).unwrap();
        assert_eq!(ast, again);
        assert_eq!(again.pretty(), ast.pretty());
    }

    fn err(text: &str) -> ParseError {
        parse_presentation(text).unwrap_err()
    }

    #[test]
    fn diagnostics() {
        assert!(matches!(
            err("algebra { }"),
            ParseError::Syntax {
                pos: Pos { line: 1, col: 9 },
                ..
            }
        ));
        assert!(matches!(
            err("algebra x { vertices = 2; arrows { a: 1 -> 2; a: 2 -> 1; } }"),
            ParseError::DuplicateArrow {
                pos: Pos { line: 1, col: 47 },
                ..
            }
        ));
        assert!(matches!(
            err("algebra x { vertices = 2; arrows { a: 1 -> 3; } }"),
            ParseError::UnknownVertex { vertex: 3, .. }
        ));
        assert!(matches!(
            err("algebra x { field = 100; vertices = 1; }"),
            ParseError::BadModulus { value: 100, .. }
        ));
        assert!(matches!(
            err("algebra x { vertices = 2; arrows { a: 1 -> 2; } relations { a*b; } }"),
            ParseError::UnknownArrow { .. }
        ));
        assert!(matches!(err("algebra x { arrows { } }"), ParseError::Missing { .. }));
        assert!(matches!(
            err("algebra x { vertices = 2; arrows { a: 1 -> 2; b: 1 -> 2; } relations { a*b; } }"),
            ParseError::InvalidRelation { .. }
        ));
        assert!(matches!(
            err("algebra x { vertices = 1; vertices = 1; }"),
            ParseError::DuplicateStatement { .. }
        ));
    }

    #[test]
    fn free_loop_fails_to_compile() {
        let e = load_algebra("algebra l { vertices = 1; max_length = 6; arrows { x: 1 -> 1; } }").unwrap_err();
        assert!(matches!(
            e,
            ParseError::Compile {
                source: AlgebraError::NotAdmissible(6),
                ..
            }
        ));
    }
}
