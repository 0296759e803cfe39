//! Quivers, paths and linear relations between parallel paths.
//!
//! Vertices are stored 0-based; the user-facing labels used by the
//! presentation language and all public constructors taking a "vertex"
//! argument are 1-based.

use std::cmp::Ordering;
use std::fmt;

use crate::error::AlgebraError;
use crate::linalg::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    num_vertices: usize,
    arrows: Vec<Arrow>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
}

impl Quiver {
    /// `arrows` carry 1-based endpoints.
    pub fn new<S: Into<String>>(
        num_vertices: usize,
        arrows: impl IntoIterator<Item = (S, usize, usize)>,
    ) -> Result<Self, AlgebraError> {
        let mut list: Vec<Arrow> = Vec::new();
        for (name, s, t) in arrows {
            let name = name.into();
            for v in [s, t] {
                if v == 0 || v > num_vertices {
                    return Err(AlgebraError::UnknownVertex(v));
                }
            }
            if list.iter().any(|a| a.name == name) {
                return Err(AlgebraError::DuplicateArrow(name));
            }
            list.push(Arrow {
                name,
                source: s - 1,
                target: t - 1,
            });
        }
        let mut outgoing = vec![Vec::new(); num_vertices];
        let mut incoming = vec![Vec::new(); num_vertices];
        for (i, a) in list.iter().enumerate() {
            outgoing[a.source].push(i);
            incoming[a.target].push(i);
        }
        Ok(Quiver {
            num_vertices,
            arrows: list,
            outgoing,
            incoming,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn outgoing(&self, v: usize) -> &[usize] {
        &self.outgoing[v]
    }

    pub fn incoming(&self, v: usize) -> &[usize] {
        &self.incoming[v]
    }

    pub fn path_from_names(&self, names: &[&str]) -> Result<Path, AlgebraError> {
        let idx = names
            .iter()
            .map(|n| {
                self.arrow_index(n)
                    .ok_or_else(|| AlgebraError::UnknownArrow((*n).to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Path::from_arrows(self, idx)
    }
}

/// A path in the quiver, arrows listed in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(vertex: usize) -> Self {
        Path {
            source: vertex,
            target: vertex,
            arrows: Vec::new(),
        }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Self, AlgebraError> {
        let Some(&first) = arrows.first() else {
            return Err(AlgebraError::EmptyPath);
        };
        for w in arrows.windows(2) {
            if q.arrow(w[0]).target != q.arrow(w[1]).source {
                return Err(AlgebraError::NonComposable(format!(
                    "{} then {}",
                    q.arrow(w[0]).name,
                    q.arrow(w[1]).name
                )));
            }
        }
        Ok(Path {
            source: q.arrow(first).source,
            target: q.arrow(*arrows.last().unwrap()).target,
            arrows,
        })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    pub(crate) fn extend(&self, q: &Quiver, arrow: usize) -> Path {
        debug_assert_eq!(q.arrow(arrow).source, self.target);
        let mut arrows = self.arrows.clone();
        arrows.push(arrow);
        Path {
            source: self.source,
            target: q.arrow(arrow).target,
            arrows,
        }
    }

    /// Length first, then arrow indices lexicographically, then source vertex.
    pub fn length_lex_cmp(&self, other: &Path) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver: q }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_trivial() {
            return write!(f, "e{}", self.path.source + 1);
        }
        let names: Vec<&str> = self
            .path
            .arrows
            .iter()
            .map(|&a| self.quiver.arrow(a).name.as_str())
            .collect();
        write!(f, "{}", names.join("*"))
    }
}

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    terms: Vec<(u32, Path)>,
}

impl Relation {
    /// Merges repeated paths, drops zero coefficients and checks the
    /// relation is parallel with every term of length at least two.
    pub fn new(field: PrimeField, terms: Vec<(u32, Path)>) -> Result<Self, AlgebraError> {
        let mut merged: Vec<(u32, Path)> = Vec::new();
        for (c, p) in terms {
            if p.len() < 2 {
                return Err(AlgebraError::RelationTooShort(p.len()));
            }
            match merged.iter_mut().find(|(_, q)| *q == p) {
                Some((acc, _)) => *acc = field.add(*acc, field.reduce(c as u64)),
                None => merged.push((field.reduce(c as u64), p)),
            }
        }
        merged.retain(|(c, _)| *c != 0);
        if merged.is_empty() {
            return Err(AlgebraError::EmptyRelation);
        }
        let (s, t) = (merged[0].1.source, merged[0].1.target);
        if merged.iter().any(|(_, p)| p.source != s || p.target != t) {
            return Err(AlgebraError::NonParallelRelation);
        }
        Ok(Relation { terms: merged })
    }

    pub fn monomial(path: Path) -> Result<Self, AlgebraError> {
        if path.len() < 2 {
            return Err(AlgebraError::RelationTooShort(path.len()));
        }
        Ok(Relation { terms: vec![(1, path)] })
    }

    pub fn terms(&self) -> &[(u32, Path)] {
        &self.terms
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> Quiver {
        Quiver::new(3, [("a", 1, 2), ("b", 2, 3), ("c", 1, 3)]).unwrap()
    }

    #[test]
    fn quiver_validation() {
        assert!(matches!(
            Quiver::new(2, [("a", 1, 3)]),
            Err(AlgebraError::UnknownVertex(3))
        ));
        assert!(matches!(
            Quiver::new(2, [("a", 1, 2), ("a", 2, 1)]),
            Err(AlgebraError::DuplicateArrow(_))
        ));
    }

    #[test]
    fn paths_compose() {
        let q = a3();
        let p = q.path_from_names(&["a", "b"]).unwrap();
        assert_eq!((p.source(), p.target(), p.len()), (0, 2, 2));
        assert!(q.path_from_names(&["b", "a"]).is_err());
        assert!(matches!(q.path_from_names(&["z"]), Err(AlgebraError::UnknownArrow(_))));
        assert_eq!(p.display(&q).to_string(), "a*b");
        assert_eq!(Path::trivial(1).display(&q).to_string(), "e2");
    }

    #[test]
    fn relation_checks() {
        let q = a3();
        let f = PrimeField::default();
        let ab = q.path_from_names(&["a", "b"]).unwrap();
        let c = q.path_from_names(&["c"]).unwrap();
        assert!(matches!(
            Relation::new(f, vec![(1, ab.clone()), (1, c)]),
            Err(AlgebraError::RelationTooShort(1))
        ));
        assert!(matches!(
            Relation::new(f, vec![(1, ab.clone()), (100, ab.clone())]),
            Err(AlgebraError::EmptyRelation)
        ));
        let r = Relation::new(f, vec![(2, ab.clone()), (3, ab)]).unwrap();
        assert_eq!(r.terms()[0].0, 5);
    }
}
