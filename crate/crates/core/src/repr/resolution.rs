//! Minimal projective covers, syzygies and projective summands.

use std::sync::Arc;

use crate::algebra::BoundQuiverAlgebra;
use crate::linalg::{Matrix, Subspace};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{HomSpace, Module, ModuleHom, Submodule, DEFAULT_ISO_SEED};

/// A minimal projective cover `P → M`.
///
/// `P` is the direct sum of `P(v)` over the generators in order; at each
/// vertex its basis is labelled by `(generator, algebra basis path)`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    projective: Module,
    epi: ModuleHom,
    generators: Vec<(usize, Vec<u32>)>,
    labels: Vec<Vec<(usize, usize)>>,
}

impl ProjectiveCover {
    pub fn projective(&self) -> &Module {
        &self.projective
    }

    pub fn epi(&self) -> &ModuleHom {
        &self.epi
    }

    /// Top generators as `(0-based vertex, element of M)`.
    pub fn generators(&self) -> &[(usize, Vec<u32>)] {
        &self.generators
    }

    /// 1-based vertices of the indecomposable summands of `P`.
    pub fn summand_vertices(&self) -> Vec<usize> {
        self.generators.iter().map(|(v, _)| v + 1).collect()
    }

    pub fn labels(&self, v: usize) -> &[(usize, usize)] {
        &self.labels[v]
    }

    pub fn kernel(&self) -> Submodule {
        self.epi.kernel()
    }
}

pub fn projective_cover(m: &Module) -> ProjectiveCover {
    let alg = m.algebra();
    let f = m.field();
    let n = alg.num_vertices();
    let rad = m.radical();
    let mut generators = Vec::new();
    for v in 0..n {
        for c in rad.space(v).complement_indices() {
            let mut e = vec![0; m.dims()[v]];
            e[c] = 1;
            generators.push((v, e));
        }
    }
    let mut labels: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (g, (v, _)) in generators.iter().enumerate() {
        for &u in alg.paths_from(*v) {
            labels[alg.basis()[u].target()].push((g, u));
        }
    }
    let mpm = m.basis_path_matrices();
    let epi = ModuleHom::new(
        (0..n)
            .map(|j| {
                let rows: Vec<Vec<u32>> = labels[j].iter().map(|&(g, u)| mpm[u].apply(&generators[g].1)).collect();
                Matrix::from_rows(f, m.dims()[j], &rows)
            })
            .collect(),
    );
    let projective = sum_of_projectives(alg, generators.iter().map(|(v, _)| *v));
    debug_assert_eq!(projective.dims(), labels.iter().map(Vec::len).collect::<Vec<_>>());
    ProjectiveCover {
        projective,
        epi,
        generators,
        labels,
    }
}

/// `⊕ P(v)` over 0-based vertices, in the given order.
pub fn sum_of_projectives(alg: &Arc<BoundQuiverAlgebra>, vertices: impl Iterator<Item = usize>) -> Module {
    let mut cache: Vec<Option<Module>> = vec![None; alg.num_vertices()];
    let parts: Vec<Module> = vertices
        .map(|v| cache[v].get_or_insert_with(|| Module::projective(alg, v + 1)).clone())
        .collect();
    let refs: Vec<&Module> = parts.iter().collect();
    Module::direct_sum(alg, &refs)
}

pub fn is_projective(m: &Module) -> bool {
    cover_dim(m) == m.dim()
}

fn cover_dim(m: &Module) -> usize {
    m.top_dims()
        .iter()
        .enumerate()
        .map(|(v, &t)| t * m.algebra().paths_from(v).len())
        .sum()
}

/// `dim Ω M`, read off the top without building the cover.
pub fn syzygy_dim(m: &Module) -> usize {
    cover_dim(m) - m.dim()
}

/// `Ω M`, the kernel of the minimal projective cover.
pub fn first_syzygy(m: &Module) -> Module {
    let cover = projective_cover(m);
    cover.projective().submodule(&cover.kernel()).0
}

/// `Ω^k M`; `Ω^0 M = M`.
pub fn syzygy(m: &Module, k: usize) -> Module {
    let mut cur = m.clone();
    for _ in 0..k {
        if cur.is_zero() {
            break;
        }
        cur = first_syzygy(&cur);
    }
    cur
}

/// Peels off indecomposable projective summands until none remain.
///
/// Returns the remaining module and the 1-based vertices of the removed
/// summands `P(v)`, in removal order.
pub fn strip_projective_summands(m: &Module) -> (Module, Vec<usize>) {
    let alg = m.algebra().clone();
    let mut core = m.clone();
    let mut stripped = Vec::new();
    'outer: loop {
        let top = core.top_dims();
        for (v, &t) in top.iter().enumerate() {
            if t == 0 {
                continue;
            }
            let pv = Module::projective(&alg, v + 1);
            let e_pos = alg
                .paths_to(v)
                .iter()
                .filter(|&&u| alg.basis()[u].source() == v)
                .position(|&u| u == alg.idempotent_index(v))
                .expect("idempotent is a basis path");
            // A map g: M → P(v) hitting e_v outside the radical splits off P(v).
            let homs = HomSpace::new(&core, &pv);
            if homs.is_zero() {
                continue;
            }
            let hits = |g: &ModuleHom| {
                let gv = g.map(v);
                (0..gv.rows()).any(|r| gv.get(r, e_pos) != 0)
            };
            // A random element misses only when every basis element does, up to probability 1/p.
            let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_ISO_SEED ^ v as u64);
            let found = Some(homs.random_element(&mut rng))
                .filter(|g| hits(g))
                .or_else(|| (0..homs.dim()).map(|i| homs.basis_element(i)).find(|g| hits(g)));
            if let Some(g) = found {
                core = core.submodule(&g.kernel()).0;
                stripped.push(v + 1);
                continue 'outer;
            }
        }
        break;
    }
    (core, stripped)
}

/// Largest submodule of `m` whose composition factors all sit at the given 0-based vertices.
pub fn largest_submodule_supported_on(m: &Module, keep: &[bool]) -> Submodule {
    let f = m.field();
    let q = m.algebra().quiver();
    let mut spaces: Vec<Subspace> = m
        .dims()
        .iter()
        .enumerate()
        .map(|(v, &d)| {
            if keep[v] {
                Subspace::full(f, d)
            } else {
                Subspace::zero(f, d)
            }
        })
        .collect();
    loop {
        let mut changed = false;
        for v in 0..spaces.len() {
            if spaces[v].is_zero() {
                continue;
            }
            // Elements of W_v whose image under every arrow stays inside W.
            let basis = spaces[v].basis_matrix();
            let mut constraint = Matrix::zeros(f, basis.rows(), 0);
            for &ai in q.outgoing(v) {
                let t = q.arrow(ai).target;
                let img = basis.mul(m.action(ai));
                let comps = spaces[t].complement_indices();
                let rows: Vec<Vec<u32>> = (0..img.rows())
                    .map(|r| {
                        let red = spaces[t].reduce(img.row(r));
                        comps.iter().map(|&c| red[c]).collect()
                    })
                    .collect();
                constraint = constraint.hstack(&Matrix::from_rows(f, comps.len(), &rows));
            }
            let lk = constraint.left_kernel();
            if lk.rows() < basis.rows() {
                spaces[v] = Subspace::from_matrix(&lk.mul(&basis));
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Submodule::from_spaces(spaces)
}
