//! Homomorphism spaces, isomorphism tests and `add`-membership.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Matrix, Subspace};

use super::{projective_cover, Module, Submodule};

pub const DEFAULT_ISO_TRIALS: usize = 64;
pub const DEFAULT_ISO_SEED: u64 = 0x9e37_79b9;

/// A family of vertex maps `f_v: M_v → N_v`, each a `d_v(M) × d_v(N)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleHom {
    maps: Vec<Matrix>,
}

impl ModuleHom {
    pub fn new(maps: Vec<Matrix>) -> Self {
        ModuleHom { maps }
    }

    pub fn identity(m: &Module) -> Self {
        ModuleHom {
            maps: m.dims().iter().map(|&d| Matrix::identity(m.field(), d)).collect(),
        }
    }

    pub fn zero(m: &Module, n: &Module) -> Self {
        ModuleHom {
            maps: m
                .dims()
                .iter()
                .zip(n.dims())
                .map(|(&a, &b)| Matrix::zeros(m.field(), a, b))
                .collect(),
        }
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, v: usize) -> &Matrix {
        &self.maps[v]
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ModuleHom) -> ModuleHom {
        ModuleHom {
            maps: self.maps.iter().zip(&next.maps).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &ModuleHom, s: u32) {
        for (a, b) in self.maps.iter_mut().zip(&other.maps) {
            a.add_scaled(b, s);
        }
    }

    /// `f_i · N_α = M_α · f_j` for every arrow `α: i → j`.
    pub fn is_homomorphism(&self, m: &Module, n: &Module) -> bool {
        m.algebra()
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .all(|(ai, a)| self.maps[a.source].mul(n.action(ai)) == m.action(ai).mul(&self.maps[a.target]))
    }

    pub fn kernel(&self) -> Submodule {
        Submodule::from_spaces(
            self.maps
                .iter()
                .map(|f| Subspace::from_matrix(&f.left_kernel()))
                .collect(),
        )
    }

    pub fn image(&self) -> Submodule {
        Submodule::from_spaces(self.maps.iter().map(Subspace::from_matrix).collect())
    }

    /// `f(U)` for a submodule `U` of the domain.
    pub fn image_of(&self, u: &Submodule) -> Submodule {
        Submodule::from_spaces(
            self.maps
                .iter()
                .enumerate()
                .map(|(v, f)| Subspace::from_rows(f.field(), f.cols(), u.space(v).basis().iter().map(|b| f.apply(b))))
                .collect(),
        )
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|f| f.rank() == f.rows())
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|f| f.rank() == f.cols())
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }

    fn flatten(&self) -> Vec<u32> {
        self.maps
            .iter()
            .flat_map(|m| (0..m.rows()).flat_map(move |r| m.row(r).to_vec()))
            .collect()
    }
}

/// `Hom_A(M, N)` as the solution space of a linear system.
///
/// Solved through the projective cover `P → M`: a homomorphism is fixed by
/// the images of the top generators, subject to killing the kernel of the
/// cover. The unknowns are one vector of `N_v` per generator at `v`.
/// Homomorphisms are only materialized on request.
pub struct HomSpace {
    /// Solution vectors, one per basis element.
    solutions: Vec<Vec<u32>>,
    offsets: Vec<usize>,
    gen_vertex: Vec<usize>,
    labels: Vec<Vec<(usize, usize)>>,
    npm: Vec<Matrix>,
    /// Right inverses of the cover at each vertex, `M_j → P_j`.
    sections: Vec<Matrix>,
    n_dims: Vec<usize>,
}

impl HomSpace {
    pub fn new(m: &Module, n: &Module) -> Self {
        let f = m.field();
        let empty = HomSpace {
            solutions: Vec::new(),
            offsets: Vec::new(),
            gen_vertex: Vec::new(),
            labels: Vec::new(),
            npm: Vec::new(),
            sections: Vec::new(),
            n_dims: n.dims().to_vec(),
        };
        if m.is_zero() || n.is_zero() {
            return empty;
        }
        let cover = projective_cover(m);
        let mut offsets = Vec::with_capacity(cover.generators().len());
        let mut total = 0;
        for (v, _) in cover.generators() {
            offsets.push(total);
            total += n.dims()[*v];
        }
        if total == 0 {
            return empty;
        }
        let npm = n.basis_path_matrices();
        let gen_vertex: Vec<usize> = cover.generators().iter().map(|(v, _)| *v).collect();
        let kernel = cover.kernel();
        let p = f.modulus() as u64;
        let mut equations: Vec<Vec<u32>> = Vec::new();
        for j in 0..m.dims().len() {
            let labels = cover.labels(j);
            for k in kernel.space(j).basis() {
                for b in 0..n.dims()[j] {
                    let mut row = vec![0u64; total];
                    for (pos, &(g, u)) in labels.iter().enumerate() {
                        let c = k[pos] as u64;
                        if c == 0 {
                            continue;
                        }
                        for a in 0..n.dims()[gen_vertex[g]] {
                            let x = npm[u].get(a, b) as u64;
                            if x != 0 {
                                let slot = &mut row[offsets[g] + a];
                                *slot = (*slot + c * x) % p;
                            }
                        }
                    }
                    if row.iter().any(|&x| x != 0) {
                        equations.push(row.into_iter().map(|x| x as u32).collect());
                    }
                }
            }
        }
        let null = Matrix::from_rows(f, total, &equations).kernel_basis();
        let solutions = (0..null.cols()).map(|c| null.column(c)).collect();

        let sections = (0..m.dims().len())
            .map(|j| {
                let e = cover.epi().map(j);
                let d = m.dims()[j];
                if d == 0 {
                    return Matrix::zeros(f, 0, e.rows());
                }
                e.transpose()
                    .solve(&Matrix::identity(f, d))
                    .expect("shapes agree")
                    .expect("cover is surjective")
                    .transpose()
            })
            .collect();
        HomSpace {
            solutions,
            offsets,
            gen_vertex,
            labels: (0..m.dims().len()).map(|j| cover.labels(j).to_vec()).collect(),
            npm,
            sections,
            n_dims: n.dims().to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_zero(&self) -> bool {
        self.solutions.is_empty()
    }

    /// The homomorphism with generator images `sol`.
    fn element(&self, sol: &[u32]) -> ModuleHom {
        let f = self.sections[0].field();
        let maps = self
            .labels
            .iter()
            .enumerate()
            .map(|(j, labels)| {
                let rows: Vec<Vec<u32>> = labels
                    .iter()
                    .map(|&(g, u)| {
                        let v = self.gen_vertex[g];
                        self.npm[u].apply(&sol[self.offsets[g]..self.offsets[g] + self.n_dims[v]])
                    })
                    .collect();
                self.sections[j].mul(&Matrix::from_rows(f, self.n_dims[j], &rows))
            })
            .collect();
        ModuleHom::new(maps)
    }

    pub fn basis_element(&self, i: usize) -> ModuleHom {
        self.element(&self.solutions[i])
    }

    pub fn basis(&self) -> Vec<ModuleHom> {
        (0..self.dim()).map(|i| self.basis_element(i)).collect()
    }

    /// A uniformly random element. Panics on the zero space.
    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> ModuleHom {
        let f = self.sections[0].field();
        let p = f.modulus() as u64;
        let mut acc = vec![0u64; self.solutions[0].len()];
        for s in &self.solutions {
            let c = rng.gen_range(0..f.modulus()) as u64;
            if c == 0 {
                continue;
            }
            for (a, &x) in acc.iter_mut().zip(s) {
                *a = (*a + c * x as u64) % p;
            }
        }
        let sol: Vec<u32> = acc.into_iter().map(|x| x as u32).collect();
        self.element(&sol)
    }
}

/// A basis of `Hom_A(M, N)`.
pub fn hom_space(m: &Module, n: &Module) -> Vec<ModuleHom> {
    HomSpace::new(m, n).basis()
}

/// Probabilistic isomorphism test.
///
/// Returns `true` only after exhibiting a homomorphism that is invertible
/// at every vertex, so a `true` answer is certain. A `false` answer may be
/// wrong with probability at most `(max_v d_v / p)^trials`.
pub fn is_iso(m: &Module, n: &Module, trials: usize) -> bool {
    is_iso_seeded(m, n, trials, DEFAULT_ISO_SEED)
}

pub fn is_iso_seeded(m: &Module, n: &Module, trials: usize, seed: u64) -> bool {
    if m.dims() != n.dims() {
        return false;
    }
    if m.is_zero() {
        return true;
    }
    let homs = HomSpace::new(m, n);
    if homs.is_zero() {
        return false;
    }
    if homs.dim() == 1 {
        return homs.basis_element(0).is_iso();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials.max(1)).any(|_| homs.random_element(&mut rng).is_iso())
}

/// Whether `M` is a direct summand of some `N^s`.
///
/// The maps `M → N → M` span a two-sided ideal of `End(M)`, and `M ∈ add N`
/// exactly when that ideal holds an invertible map. Sums of `r` random
/// compositions are tested for invertibility first, with `r` doubling up to
/// `dim M`; any hit is exact. Only when none is found is the ideal spanned
/// from all basis pairs and checked for `id_M`.
pub fn in_add(m: &Module, n: &Module) -> bool {
    if m.is_zero() {
        return true;
    }
    let to_n = HomSpace::new(m, n);
    let from_n = HomSpace::new(n, m);
    if to_n.is_zero() || from_n.is_zero() {
        return false;
    }
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_ISO_SEED ^ m.dim() as u64);
    let mut acc: Option<ModuleHom> = None;
    let mut r = 0;
    let mut next_check = 1;
    while r < m.dim() {
        let a = to_n.random_element(&mut rng);
        let b = from_n.random_element(&mut rng);
        let prod = a.then(&b);
        match acc.as_mut() {
            Some(s) => s.add_scaled(&prod, 1),
            None => acc = Some(prod),
        }
        r += 1;
        if r == next_check || r == m.dim() {
            if acc.as_ref().is_some_and(ModuleHom::is_iso) {
                return true;
            }
            next_check *= 2;
        }
    }

    let id = ModuleHom::identity(m).flatten();
    let mut span = Subspace::zero(f, id.len());
    let (to_n, from_n) = (to_n.basis(), from_n.basis());
    for a in &to_n {
        for b in &from_n {
            span.insert(a.then(b).flatten());
        }
        if span.contains(&id) {
            return true;
        }
    }
    false
}
