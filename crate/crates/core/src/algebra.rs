//! Compilation of a quiver with relations into a finite-dimensional algebra.
//!
//! The ideal generated by the relations is computed degreewise as the span
//! of all products `p·r·q`. Paths containing a monomial relation are zero
//! outright, so only monomial-free paths are ever enumerated. Columns are
//! ordered from the largest path down (length, then lexicographic), which
//! makes every pivot the leading term of an ideal element; the remaining
//! non-pivot paths form the normal-form basis.

use std::collections::{HashMap, HashSet};

use crate::error::AlgebraError;
use crate::linalg::{PrimeField, Subspace};
use crate::quiver::{Path, Quiver, Relation};

pub const DEFAULT_MAX_LENGTH: usize = 64;

/// Upper bound on the number of monomial-free paths enumerated during
/// compilation. Exceeding it is reported as non-admissibility.
const PATH_BUDGET: usize = 250_000;

type Sparse = Vec<(usize, u32)>;

#[derive(Clone, Debug)]
pub struct BoundQuiverAlgebra {
    name: String,
    quiver: Quiver,
    relations: Vec<Relation>,
    field: PrimeField,
    max_length: usize,
    nilpotency: usize,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    reductions: HashMap<Path, Sparse>,
    products: Vec<Sparse>,
    by_source: Vec<Vec<usize>>,
    by_target: Vec<Vec<usize>>,
    arrow_elems: Vec<usize>,
    idempotents: Vec<usize>,
}

/// An element of the algebra as a coefficient vector over the basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    pub coeffs: Vec<u32>,
}

impl AlgebraElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// A subspace of the algebra, typically an ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    space: Subspace,
}

impl IdealBasis {
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, x: &AlgebraElement) -> bool {
        self.space.contains(&x.coeffs)
    }

    pub fn elements(&self) -> Vec<AlgebraElement> {
        self.space
            .basis()
            .iter()
            .map(|c| AlgebraElement { coeffs: c.clone() })
            .collect()
    }

    pub fn from_elements(alg: &BoundQuiverAlgebra, elems: &[AlgebraElement]) -> Self {
        IdealBasis {
            space: Subspace::from_rows(alg.field, alg.dim(), elems.iter().map(|e| e.coeffs.clone())),
        }
    }
}

struct PathEnumerator<'a> {
    quiver: &'a Quiver,
    monomials: HashSet<Vec<usize>>,
    max_mono: usize,
    levels: Vec<Vec<Path>>,
    total: usize,
    max_length: usize,
}

impl<'a> PathEnumerator<'a> {
    fn new(quiver: &'a Quiver, monomials: HashSet<Vec<usize>>, max_length: usize) -> Self {
        let max_mono = monomials.iter().map(Vec::len).max().unwrap_or(0);
        let level0 = (0..quiver.num_vertices()).map(Path::trivial).collect::<Vec<_>>();
        PathEnumerator {
            quiver,
            monomials,
            max_mono,
            total: level0.len(),
            levels: vec![level0],
            max_length,
        }
    }

    fn contains_monomial(&self, arrows: &[usize]) -> bool {
        if self.max_mono < 2 {
            return false;
        }
        for start in 0..arrows.len() {
            for len in 2..=self.max_mono.min(arrows.len() - start) {
                if self.monomials.contains(&arrows[start..start + len]) {
                    return true;
                }
            }
        }
        false
    }

    fn suffix_is_monomial(&self, arrows: &[usize]) -> bool {
        (2..=self.max_mono.min(arrows.len())).any(|len| self.monomials.contains(&arrows[arrows.len() - len..]))
    }

    fn ensure(&mut self, level: usize) -> Result<(), AlgebraError> {
        while self.levels.len() <= level {
            let prev = self.levels.last().unwrap();
            let mut next = Vec::new();
            for p in prev {
                for &a in self.quiver.outgoing(p.target()) {
                    let ext = p.extend(self.quiver, a);
                    if !self.suffix_is_monomial(ext.arrows()) {
                        next.push(ext);
                    }
                }
            }
            self.total += next.len();
            if self.total > PATH_BUDGET {
                return Err(AlgebraError::NotAdmissible(self.max_length));
            }
            self.levels.push(next);
        }
        Ok(())
    }

    fn paths_up_to(&self, max_len: usize) -> impl Iterator<Item = &Path> {
        self.levels.iter().take(max_len + 1).flatten()
    }
}

/// Products `p·r·q` with `|p| + |q| + r.max_len() <= budget_len` (or
/// `min_len` when truncating), written as vectors over `cols`.
fn ideal_span(
    en: &PathEnumerator<'_>,
    others: &[&Relation],
    field: PrimeField,
    cols: &HashMap<Path, usize>,
    max_len: usize,
    truncate: bool,
) -> Subspace {
    let mut span = Subspace::zero(field, cols.len());
    for r in others {
        let need = if truncate { r.min_len() } else { r.max_len() };
        if need > max_len {
            continue;
        }
        let room = max_len - need;
        let lefts: Vec<&Path> = en.paths_up_to(room).filter(|p| p.target() == r.source()).collect();
        let rights: Vec<&Path> = en.paths_up_to(room).filter(|q| q.source() == r.target()).collect();
        for p in &lefts {
            for q in &rights {
                if p.len() + q.len() > room {
                    continue;
                }
                let mut v = vec![0u32; cols.len()];
                let mut nonzero = false;
                for (c, w) in r.terms() {
                    let full = p
                        .concat(w)
                        .and_then(|x| x.concat(q))
                        .expect("composable by construction");
                    if full.len() > max_len || en.contains_monomial(full.arrows()) {
                        continue;
                    }
                    let idx = cols[&full];
                    v[idx] = field.add(v[idx], *c);
                    nonzero = true;
                }
                if nonzero {
                    span.insert(v);
                }
            }
        }
    }
    span
}

impl BoundQuiverAlgebra {
    /// Compiles `kQ/I`. Finds the least `N <= max_length` such that every
    /// path of length `N` lies in the ideal generated by `relations`.
    pub fn compile(
        name: impl Into<String>,
        quiver: Quiver,
        relations: Vec<Relation>,
        field: PrimeField,
        max_length: usize,
    ) -> Result<Self, AlgebraError> {
        let max_length = max_length.max(1);
        for r in &relations {
            for (_, p) in r.terms() {
                if p.arrows().iter().any(|&a| a >= quiver.arrows().len()) {
                    return Err(AlgebraError::UnknownArrow(format!("#{}", p.arrows()[0])));
                }
            }
        }
        let monomials: HashSet<Vec<usize>> = relations
            .iter()
            .filter(|r| r.is_monomial())
            .map(|r| r.terms()[0].1.arrows().to_vec())
            .collect();
        let others: Vec<&Relation> = relations.iter().filter(|r| !r.is_monomial()).collect();
        let spread = others.iter().map(|r| r.max_len() - r.min_len()).max().unwrap_or(0);

        let mut en = PathEnumerator::new(&quiver, monomials, max_length);
        let mut nilpotency = None;
        for n in 1..=max_length {
            en.ensure(n)?;
            if en.levels[n].is_empty() {
                nilpotency = Some(n);
                break;
            }
            if others.is_empty() {
                continue;
            }
            let k = n + spread;
            en.ensure(k)?;
            let cols: HashMap<Path, usize> = en.paths_up_to(k).cloned().enumerate().map(|(i, p)| (p, i)).collect();
            let span = ideal_span(&en, &others, field, &cols, k, false);
            let all_in = en.levels[n].iter().all(|p| {
                let mut v = vec![0u32; cols.len()];
                v[cols[p]] = 1;
                span.contains(&v)
            });
            if all_in {
                nilpotency = Some(n);
                break;
            }
        }
        let nilpotency = nilpotency.ok_or(AlgebraError::NotAdmissible(max_length))?;

        // Monomial-free paths of length < N, largest first.
        let mut ordered: Vec<Path> = en.paths_up_to(nilpotency - 1).cloned().collect();
        ordered.sort_by(|a, b| b.length_lex_cmp(a));
        let cols: HashMap<Path, usize> = ordered.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let ideal = if others.is_empty() {
            Subspace::zero(field, ordered.len())
        } else {
            ideal_span(&en, &others, field, &cols, nilpotency - 1, true)
        };
        let pivots: HashSet<usize> = ideal.pivots().iter().copied().collect();
        let mut basis: Vec<Path> = ordered
            .iter()
            .enumerate()
            .filter(|(i, _)| !pivots.contains(i))
            .map(|(_, p)| p.clone())
            .collect();
        basis.sort_by(|a, b| {
            (a.source(), a.target())
                .cmp(&(b.source(), b.target()))
                .then_with(|| a.length_lex_cmp(b))
        });
        let index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut reductions = HashMap::new();
        for (row, &pc) in ideal.basis().iter().zip(ideal.pivots()) {
            let nf: Sparse = row
                .iter()
                .enumerate()
                .filter(|&(c, &x)| c != pc && x != 0)
                .map(|(c, &x)| (index[&ordered[c]], field.neg(x)))
                .collect();
            reductions.insert(ordered[pc].clone(), nf);
        }

        let n = quiver.num_vertices();
        let mut by_source = vec![Vec::new(); n];
        let mut by_target = vec![Vec::new(); n];
        for (i, p) in basis.iter().enumerate() {
            by_source[p.source()].push(i);
            by_target[p.target()].push(i);
        }
        let idempotents = (0..n).map(|v| index[&Path::trivial(v)]).collect();
        let arrow_elems = (0..quiver.arrows().len())
            .map(|a| index[&Path::from_arrows(&quiver, vec![a]).expect("single arrow")])
            .collect();

        let mut alg = BoundQuiverAlgebra {
            name: name.into(),
            quiver,
            relations,
            field,
            max_length,
            nilpotency,
            basis,
            index,
            reductions,
            products: Vec::new(),
            by_source,
            by_target,
            arrow_elems,
            idempotents,
        };
        let dim = alg.dim();
        let mut products = vec![Vec::new(); dim * dim];
        for u in 0..dim {
            for v in 0..dim {
                if let Some(w) = alg.basis[u].concat(&alg.basis[v]) {
                    products[u * dim + v] = alg.normal_form(&w);
                }
            }
        }
        alg.products = products;
        Ok(alg)
    }

    /// Normal form of an arbitrary path as a sparse vector over the basis.
    pub fn normal_form(&self, path: &Path) -> Vec<(usize, u32)> {
        if path.len() >= self.nilpotency {
            return Vec::new();
        }
        if let Some(&i) = self.index.get(path) {
            return vec![(i, 1)];
        }
        self.reductions.get(path).cloned().unwrap_or_default()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Least `N` with every path of length `N` in the ideal; equals the Loewy length of `A`.
    /// The path-length cap the algebra was compiled with.
    pub fn max_length(&self) -> usize {
        self.max_length
    }

    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency
    }

    pub fn loewy_length(&self) -> usize {
        self.nilpotency
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Basis indices of paths starting at the 0-based vertex `v`.
    pub fn paths_from(&self, v: usize) -> &[usize] {
        &self.by_source[v]
    }

    pub fn paths_to(&self, v: usize) -> &[usize] {
        &self.by_target[v]
    }

    pub fn arrow_element_index(&self, arrow: usize) -> usize {
        self.arrow_elems[arrow]
    }

    pub fn idempotent_index(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    /// Product of two basis elements.
    pub fn basis_product(&self, u: usize, v: usize) -> &[(usize, u32)] {
        &self.products[u * self.dim() + v]
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            coeffs: vec![0; self.dim()],
        }
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        let mut x = self.zero();
        x.coeffs[i] = 1;
        x
    }

    pub fn one(&self) -> AlgebraElement {
        let mut x = self.zero();
        for &i in &self.idempotents {
            x.coeffs[i] = 1;
        }
        x
    }

    /// The idempotent `e_v` for the 1-based vertex label `v`.
    pub fn idempotent(&self, v: usize) -> AlgebraElement {
        self.basis_element(self.idempotents[v - 1])
    }

    pub fn element_of_path(&self, path: &Path) -> AlgebraElement {
        let mut x = self.zero();
        for (i, c) in self.normal_form(path) {
            x.coeffs[i] = c;
        }
        x
    }

    pub fn element_of_names(&self, names: &[&str]) -> Result<AlgebraElement, AlgebraError> {
        Ok(self.element_of_path(&self.quiver.path_from_names(names)?))
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let f = self.field;
        let p = f.modulus() as u64;
        let mut acc = vec![0u64; self.dim()];
        for (u, &xu) in x.coeffs.iter().enumerate() {
            if xu == 0 {
                continue;
            }
            let t = self.basis[u].target();
            for &v in &self.by_source[t] {
                let yv = y.coeffs[v];
                if yv == 0 {
                    continue;
                }
                let s = (xu as u64 * yv as u64) % p;
                for &(w, c) in self.basis_product(u, v) {
                    acc[w] = (acc[w] + s * c as u64) % p;
                }
            }
        }
        AlgebraElement {
            coeffs: acc.into_iter().map(|c| c as u32).collect(),
        }
    }

    pub fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(&a, &b)| self.field.add(a, b))
                .collect(),
        }
    }

    /// Components `e_s · x · e_t` for every pair of vertices, nonzero ones only.
    pub fn homogeneous_components(&self, x: &AlgebraElement) -> Vec<AlgebraElement> {
        let n = self.num_vertices();
        let mut parts: HashMap<(usize, usize), Vec<u32>> = HashMap::new();
        for (i, &c) in x.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let key = (self.basis[i].source(), self.basis[i].target());
            parts.entry(key).or_insert_with(|| vec![0; self.dim()])[i] = c;
        }
        let mut keys: Vec<_> = parts.keys().copied().collect();
        keys.sort_by_key(|&(s, t)| s * n + t);
        keys.into_iter()
            .map(|k| AlgebraElement {
                coeffs: parts.remove(&k).unwrap(),
            })
            .collect()
    }

    /// Span of the basis paths of positive length.
    pub fn radical_ideal(&self) -> IdealBasis {
        let elems: Vec<AlgebraElement> = (0..self.dim())
            .filter(|&i| !self.basis[i].is_trivial())
            .map(|i| self.basis_element(i))
            .collect();
        IdealBasis::from_elements(self, &elems)
    }

    /// Smallest two-sided ideal containing `gens`.
    pub fn two_sided_closure(&self, gens: &[AlgebraElement]) -> IdealBasis {
        let mut span = Subspace::zero(self.field, self.dim());
        let mut work: Vec<AlgebraElement> = gens.iter().flat_map(|g| self.homogeneous_components(g)).collect();
        let arrows: Vec<AlgebraElement> = self.arrow_elems.iter().map(|&i| self.basis_element(i)).collect();
        while let Some(x) = work.pop() {
            if !span.insert(x.coeffs.clone()) {
                continue;
            }
            for a in &arrows {
                for y in [self.multiply(&x, a), self.multiply(a, &x)] {
                    if !y.is_zero() {
                        work.push(y);
                    }
                }
            }
        }
        IdealBasis { space: span }
    }

    pub fn is_two_sided(&self, ideal: &IdealBasis) -> bool {
        let gens: Vec<AlgebraElement> = self
            .arrow_elems
            .iter()
            .chain(&self.idempotents)
            .map(|&i| self.basis_element(i))
            .collect();
        ideal.elements().iter().all(|x| {
            gens.iter()
                .all(|g| ideal.contains(&self.multiply(x, g)) && ideal.contains(&self.multiply(g, x)))
        })
    }

    /// Span of all products `x·y` with `x` in `a` and `y` in `b`.
    pub fn ideal_product(&self, a: &IdealBasis, b: &IdealBasis) -> IdealBasis {
        let mut span = Subspace::zero(self.field, self.dim());
        for x in a.elements() {
            for y in b.elements() {
                span.insert(self.multiply(&x, &y).coeffs);
            }
        }
        IdealBasis { space: span }
    }

    pub fn path_display(&self, i: usize) -> String {
        self.basis[i].display(&self.quiver).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    fn a2() -> BoundQuiverAlgebra {
        let q = Quiver::new(2, [("a", 1, 2)]).unwrap();
        BoundQuiverAlgebra::compile("a2", q, vec![], f(), DEFAULT_MAX_LENGTH).unwrap()
    }

    #[test]
    fn hereditary_a2() {
        let a = a2();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.nilpotency_index(), 2);
        let e1 = a.idempotent(1);
        let e2 = a.idempotent(2);
        let arrow = a.element_of_names(&["a"]).unwrap();
        assert_eq!(a.multiply(&e1, &e1), e1);
        assert!(a.multiply(&e1, &e2).is_zero());
        assert_eq!(a.multiply(&e1, &arrow), arrow);
        assert_eq!(a.multiply(&arrow, &e2), arrow);
        assert!(a.multiply(&arrow, &e1).is_zero());
    }

    #[test]
    fn semisimple_has_loewy_length_one() {
        let q = Quiver::new(3, Vec::<(String, usize, usize)>::new()).unwrap();
        let a = BoundQuiverAlgebra::compile("k3", q, vec![], f(), 8).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.loewy_length(), 1);
        assert_eq!(a.radical_ideal().dim(), 0);
    }

    #[test]
    fn free_loop_is_not_admissible() {
        let q = Quiver::new(1, [("x", 1, 1)]).unwrap();
        let err = BoundQuiverAlgebra::compile("loop", q, vec![], f(), 10).unwrap_err();
        assert_eq!(err, AlgebraError::NotAdmissible(10));
    }

    #[test]
    fn inhomogeneous_unit_relation_is_rejected() {
        // x^2 - x^3 generates an ideal that never contains a power of x.
        let q = Quiver::new(1, [("x", 1, 1)]).unwrap();
        let x2 = q.path_from_names(&["x", "x"]).unwrap();
        let x3 = q.path_from_names(&["x", "x", "x"]).unwrap();
        let r = Relation::new(f(), vec![(1, x2), (100, x3)]).unwrap();
        assert!(matches!(
            BoundQuiverAlgebra::compile("bad", q, vec![r], f(), 12),
            Err(AlgebraError::NotAdmissible(12))
        ));
    }

    #[test]
    fn commutative_square() {
        // a: 1->2, b: 2->4, c: 1->3, d: 3->4 with ab = cd.
        let q = Quiver::new(4, [("a", 1, 2), ("b", 2, 4), ("c", 1, 3), ("d", 3, 4)]).unwrap();
        let ab = q.path_from_names(&["a", "b"]).unwrap();
        let cd = q.path_from_names(&["c", "d"]).unwrap();
        let r = Relation::new(f(), vec![(1, ab.clone()), (100, cd.clone())]).unwrap();
        let a = BoundQuiverAlgebra::compile("sq", q, vec![r], f(), 8).unwrap();
        assert_eq!(a.dim(), 4 + 4 + 1);
        assert_eq!(a.element_of_path(&ab), a.element_of_path(&cd));
        assert_eq!(a.loewy_length(), 3);
    }

    #[test]
    fn x_squared_equals_y_squared_with_xy_yx_zero() {
        // Two loops; x^2 = y^2, xy = yx = 0. Then x^3 = x·y^2 = 0.
        let q = Quiver::new(1, [("x", 1, 1), ("y", 1, 1)]).unwrap();
        let p = |n: &[&str]| q.path_from_names(n).unwrap();
        let rels = vec![
            Relation::new(f(), vec![(1, p(&["x", "x"])), (100, p(&["y", "y"]))]).unwrap(),
            Relation::monomial(p(&["x", "y"])).unwrap(),
            Relation::monomial(p(&["y", "x"])).unwrap(),
        ];
        let a = BoundQuiverAlgebra::compile("l", q.clone(), rels, f(), 10).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.loewy_length(), 3);
        let x = a.element_of_names(&["x"]).unwrap();
        let y = a.element_of_names(&["y"]).unwrap();
        assert_eq!(a.multiply(&x, &x), a.multiply(&y, &y));
        assert!(a.multiply(&a.multiply(&x, &x), &x).is_zero());
    }

    #[test]
    fn closure_of_idempotent_contains_paths_through_it() {
        let q = Quiver::new(3, [("a", 1, 2), ("b", 2, 3)]).unwrap();
        let a = BoundQuiverAlgebra::compile("a3", q, vec![], f(), 8).unwrap();
        let ideal = a.two_sided_closure(&[a.idempotent(2)]);
        for names in [&["a"][..], &["b"], &["a", "b"]] {
            assert!(ideal.contains(&a.element_of_names(names).unwrap()));
        }
        assert!(!ideal.contains(&a.idempotent(1)));
        assert_eq!(ideal.dim(), 4);
        assert_eq!(a.two_sided_closure(&[]).dim(), 0);
        assert!(a.is_two_sided(&a.radical_ideal()));
    }
}
