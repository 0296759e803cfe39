//! Right modules as quiver representations.
//!
//! An arrow `α: i → j` acts on the right, sending row vectors at vertex `i`
//! to row vectors at vertex `j`: its matrix has `d_i` rows and `d_j`
//! columns. This matches `e_i α e_j = α` in the path algebra. For example
//! in `P(1) = e_1 A` over the quiver `1 --a--> 2`, the space at vertex 1
//! is spanned by `e_1`, the space at vertex 2 by `a`, and the matrix of `a`
//! is the 1×1 identity sending `e_1` to `e_1·a = a`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{AlgebraElement, BoundQuiverAlgebra};
use crate::linalg::{Matrix, PrimeField, Subspace};
use crate::quiver::Path;

use super::{ModuleError, ModuleHom, Submodule};

#[derive(Clone)]
pub struct Module {
    algebra: Arc<BoundQuiverAlgebra>,
    dims: Vec<usize>,
    action: Vec<Matrix>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Module")
            .field("dims", &self.dims)
            .field("action", &self.action)
            .finish()
    }
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) && self.dims == other.dims && self.action == other.action
    }
}

impl Module {
    /// Checks matrix shapes and that every relation acts as zero.
    pub fn new(algebra: Arc<BoundQuiverAlgebra>, dims: Vec<usize>, action: Vec<Matrix>) -> Result<Self, ModuleError> {
        let q = algebra.quiver();
        if dims.len() != q.num_vertices() || action.len() != q.arrows().len() {
            return Err(ModuleError::ShapeMismatch);
        }
        for (a, m) in q.arrows().iter().zip(&action) {
            if m.rows() != dims[a.source] || m.cols() != dims[a.target] {
                return Err(ModuleError::ShapeMismatch);
            }
        }
        let m = Module { algebra, dims, action };
        m.check_relations()?;
        Ok(m)
    }

    pub(crate) fn from_parts(algebra: Arc<BoundQuiverAlgebra>, dims: Vec<usize>, action: Vec<Matrix>) -> Self {
        let m = Module { algebra, dims, action };
        debug_assert!(m.check_relations().is_ok());
        m
    }

    pub fn check_relations(&self) -> Result<(), ModuleError> {
        let f = self.field();
        for (i, r) in self.algebra.relations().iter().enumerate() {
            let (s, t) = (r.source(), r.target());
            let mut acc = Matrix::zeros(f, self.dims[s], self.dims[t]);
            for (c, p) in r.terms() {
                acc.add_scaled(&self.path_matrix(p), *c);
            }
            if !acc.is_zero() {
                return Err(ModuleError::RelationViolated(i));
            }
        }
        Ok(())
    }

    pub fn zero(algebra: &Arc<BoundQuiverAlgebra>) -> Self {
        let dims = vec![0; algebra.num_vertices()];
        Module::with_dims_zero_action(algebra, dims)
    }

    fn with_dims_zero_action(algebra: &Arc<BoundQuiverAlgebra>, dims: Vec<usize>) -> Self {
        let f = algebra.field();
        let action = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(f, dims[a.source], dims[a.target]))
            .collect();
        Module {
            algebra: algebra.clone(),
            dims,
            action,
        }
    }

    /// The simple module at the 1-based vertex `v`.
    pub fn simple(algebra: &Arc<BoundQuiverAlgebra>, v: usize) -> Self {
        assert!(v >= 1 && v <= algebra.num_vertices(), "vertex {v} out of range");
        let mut dims = vec![0; algebra.num_vertices()];
        dims[v - 1] = 1;
        Module::with_dims_zero_action(algebra, dims)
    }

    /// `P(v) = e_v A` with the normal-form paths from `v` as basis.
    pub fn projective(algebra: &Arc<BoundQuiverAlgebra>, v: usize) -> Self {
        assert!(v >= 1 && v <= algebra.num_vertices(), "vertex {v} out of range");
        Module::path_module(algebra, |p| p.source() == v - 1)
    }

    /// `A_A`; the space at vertex `j` is spanned by all basis paths ending at `j`.
    pub fn regular(algebra: &Arc<BoundQuiverAlgebra>) -> Self {
        Module::path_module(algebra, |_| true)
    }

    fn path_module(algebra: &Arc<BoundQuiverAlgebra>, keep: impl Fn(&Path) -> bool) -> Self {
        let n = algebra.num_vertices();
        let f = algebra.field();
        let spaces: Vec<Vec<usize>> = (0..n)
            .map(|j| {
                algebra
                    .paths_to(j)
                    .iter()
                    .copied()
                    .filter(|&u| keep(&algebra.basis()[u]))
                    .collect()
            })
            .collect();
        let position = |j: usize, u: usize| spaces[j].iter().position(|&x| x == u);
        let dims: Vec<usize> = spaces.iter().map(Vec::len).collect();
        let action = algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Matrix::zeros(f, dims[a.source], dims[a.target]);
                let ae = algebra.arrow_element_index(ai);
                for (r, &u) in spaces[a.source].iter().enumerate() {
                    for &(w, c) in algebra.basis_product(u, ae) {
                        let col = position(a.target, w).expect("right ideal is closed under arrows");
                        m.set(r, col, c);
                    }
                }
                m
            })
            .collect();
        Module::from_parts(algebra.clone(), dims, action)
    }

    pub fn direct_sum(algebra: &Arc<BoundQuiverAlgebra>, parts: &[&Module]) -> Self {
        let n = algebra.num_vertices();
        let f = algebra.field();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
        let action = (0..algebra.quiver().arrows().len())
            .map(|a| {
                let blocks: Vec<&Matrix> = parts.iter().map(|m| &m.action[a]).collect();
                Matrix::block_diag(f, &blocks)
            })
            .collect();
        Module {
            algebra: algebra.clone(),
            dims,
            action,
        }
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> PrimeField {
        self.algebra.field()
    }

    /// Dimension vector, indexed by 0-based vertex.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn action(&self, arrow: usize) -> &Matrix {
        &self.action[arrow]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// The matrix by which a path acts; identity for a trivial path.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dims[p.source()]);
        for &a in p.arrows() {
            m = m.mul(&self.action[a]);
        }
        m
    }

    /// Path matrices for every basis path of the algebra.
    pub fn basis_path_matrices(&self) -> Vec<Matrix> {
        let basis = self.algebra.basis();
        let mut out: Vec<Option<Matrix>> = vec![None; basis.len()];
        // Basis paths are closed under prefixes, so build them in length order.
        let mut order: Vec<usize> = (0..basis.len()).collect();
        order.sort_by_key(|&u| basis[u].len());
        for u in order {
            let p = &basis[u];
            let m = if p.is_trivial() {
                Matrix::identity(self.field(), self.dims[p.source()])
            } else {
                let (last, prefix) = p.arrows().split_last().unwrap();
                let prefix_idx = if prefix.is_empty() {
                    self.algebra.basis_index(&Path::trivial(p.source()))
                } else {
                    Path::from_arrows(self.algebra.quiver(), prefix.to_vec())
                        .ok()
                        .and_then(|pp| self.algebra.basis_index(&pp))
                };
                match prefix_idx.and_then(|i| out[i].as_ref()) {
                    Some(pm) => pm.mul(&self.action[*last]),
                    None => self.path_matrix(p),
                }
            };
            out[u] = Some(m);
        }
        out.into_iter().map(Option::unwrap).collect()
    }

    /// `x · a` for `x` at the 0-based vertex `v`; returns one vector per vertex.
    pub fn act(&self, v: usize, x: &[u32], a: &AlgebraElement) -> Vec<Vec<u32>> {
        let f = self.field();
        let mut out: Vec<Vec<u32>> = self.dims.iter().map(|&d| vec![0; d]).collect();
        for &u in self.algebra.paths_from(v) {
            let c = a.coeffs[u];
            if c == 0 {
                continue;
            }
            let p = &self.algebra.basis()[u];
            let y = self.path_matrix(p).apply(x);
            for (o, yi) in out[p.target()].iter_mut().zip(y) {
                *o = f.add(*o, f.mul(c, yi));
            }
        }
        out
    }

    /// Top multiplicities: `dim M_j - dim (rad M)_j`.
    pub fn top_dims(&self) -> Vec<usize> {
        let rad = self.radical();
        self.dims.iter().zip(rad.dims()).map(|(d, r)| d - r).collect()
    }

    pub fn radical(&self) -> Submodule {
        self.radical_of(&Submodule::full(self))
    }

    /// `U · rad A` inside `self`: at vertex `j` the sum of the images of
    /// `U_i` under the arrows `i → j`.
    pub fn radical_of(&self, u: &Submodule) -> Submodule {
        let f = self.field();
        let mut spaces: Vec<Subspace> = self.dims.iter().map(|&d| Subspace::zero(f, d)).collect();
        for (ai, a) in self.algebra.quiver().arrows().iter().enumerate() {
            for b in u.space(a.source).basis() {
                spaces[a.target].insert(self.action[ai].apply(b));
            }
        }
        Submodule::from_spaces(spaces)
    }

    /// Closure of the given vertex-homogeneous elements under the action.
    pub fn generated(&self, elements: &[(usize, Vec<u32>)]) -> Submodule {
        let f = self.field();
        let spaces: Vec<Subspace> = self.dims.iter().map(|&d| Subspace::zero(f, d)).collect();
        self.close(spaces, elements.to_vec())
    }

    /// Smallest submodule containing the given per-vertex subspaces.
    pub fn generated_by_spaces(&self, seeds: &[Subspace]) -> Submodule {
        let f = self.field();
        let spaces: Vec<Subspace> = self.dims.iter().map(|&d| Subspace::zero(f, d)).collect();
        let work = seeds
            .iter()
            .enumerate()
            .flat_map(|(v, s)| s.basis().iter().map(move |b| (v, b.clone())))
            .collect();
        self.close(spaces, work)
    }

    fn close(&self, mut spaces: Vec<Subspace>, mut work: Vec<(usize, Vec<u32>)>) -> Submodule {
        let q = self.algebra.quiver();
        while let Some((v, x)) = work.pop() {
            if !spaces[v].insert(x.clone()) {
                continue;
            }
            for &ai in q.outgoing(v) {
                let y = self.action[ai].apply(&x);
                if y.iter().any(|&c| c != 0) {
                    work.push((q.arrow(ai).target, y));
                }
            }
        }
        Submodule::from_spaces(spaces)
    }

    /// The submodule as a module in its RREF basis, with the inclusion map.
    pub fn submodule(&self, u: &Submodule) -> (Module, ModuleHom) {
        let f = self.field();
        let dims: Vec<usize> = u.dims();
        let action = self
            .algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let rows: Vec<Vec<u32>> = u
                    .space(a.source)
                    .basis()
                    .iter()
                    .map(|b| {
                        u.space(a.target)
                            .coordinates(&self.action[ai].apply(b))
                            .expect("submodule closed under action")
                    })
                    .collect();
                Matrix::from_rows(f, dims[a.target], &rows)
            })
            .collect();
        let incl = ModuleHom::new((0..dims.len()).map(|v| u.space(v).basis_matrix()).collect());
        (Module::from_parts(self.algebra.clone(), dims, action), incl)
    }

    /// `M/U` on the non-pivot coordinates of `U`, with the projection map.
    pub fn quotient(&self, u: &Submodule) -> (Module, ModuleHom) {
        let f = self.field();
        let comps: Vec<Vec<usize>> = (0..self.dims.len()).map(|v| u.space(v).complement_indices()).collect();
        let dims: Vec<usize> = comps.iter().map(Vec::len).collect();
        let project = |v: usize, x: &[u32]| -> Vec<u32> {
            let r = u.space(v).reduce(x);
            comps[v].iter().map(|&c| r[c]).collect()
        };
        let proj: Vec<Matrix> = (0..self.dims.len())
            .map(|v| {
                let rows: Vec<Vec<u32>> = (0..self.dims[v])
                    .map(|k| {
                        let mut e = vec![0; self.dims[v]];
                        e[k] = 1;
                        project(v, &e)
                    })
                    .collect();
                Matrix::from_rows(f, dims[v], &rows)
            })
            .collect();
        let action = self
            .algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let rows: Vec<Vec<u32>> = comps[a.source]
                    .iter()
                    .map(|&c| {
                        let mut e = vec![0; self.dims[a.source]];
                        e[c] = 1;
                        project(a.target, &self.action[ai].apply(&e))
                    })
                    .collect();
                Matrix::from_rows(f, dims[a.target], &rows)
            })
            .collect();
        (
            Module::from_parts(self.algebra.clone(), dims, action),
            ModuleHom::new(proj),
        )
    }

    /// Least `n` with `M · rad^n = 0`; zero for the zero module.
    pub fn loewy_length(&self) -> usize {
        let mut u = Submodule::full(self);
        let mut n = 0;
        while !u.is_zero() {
            u = self.radical_of(&u);
            n += 1;
        }
        n
    }

    /// `M · J` for a two-sided ideal `J`.
    pub fn times_ideal(&self, ideal: &[AlgebraElement]) -> Submodule {
        let alg = &self.algebra;
        let comps: Vec<AlgebraElement> = ideal.iter().flat_map(|x| alg.homogeneous_components(x)).collect();
        let f = self.field();
        let mut spaces: Vec<Subspace> = self.dims.iter().map(|&d| Subspace::zero(f, d)).collect();
        for a in &comps {
            let Some(src) = a.coeffs.iter().position(|&c| c != 0).map(|i| alg.basis()[i].source()) else {
                continue;
            };
            for k in 0..self.dims[src] {
                let mut e = vec![0; self.dims[src]];
                e[k] = 1;
                for (v, y) in self.act(src, &e, a).into_iter().enumerate() {
                    if y.iter().any(|&c| c != 0) {
                        spaces[v].insert(y);
                    }
                }
            }
        }
        Submodule::from_spaces(spaces)
    }
}
