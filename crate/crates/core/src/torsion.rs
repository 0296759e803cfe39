//! Torsion radicals `t_V`, radical layer lengths and projective dimensions.
//!
//! For a set `V` of simples with complement `V′`, the torsion class `T_V`
//! holds the modules whose top lies in `add V′`. Its radical `t_V(M)` is the
//! submodule generated by the spaces of `M` at the vertices of `V′`. The
//! layer functor is `F = rad ∘ t_V`, and `ℓℓ^{t_V}(M)` is the least `i` with
//! `t_V(F^i M) = 0`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, BoundQuiverAlgebra, IdealBasis};
use crate::error::TheoryError;
use crate::linalg::Subspace;
use crate::par::{map_range, Execution};
use crate::repr::{first_syzygy, is_iso, is_projective, syzygy_dim, Module, Submodule, DEFAULT_ISO_TRIALS};

/// A set `V` of simple modules, named by 1-based vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleSet {
    members: Vec<bool>,
}

impl SimpleSet {
    pub fn new(num_vertices: usize, vertices: impl IntoIterator<Item = usize>) -> Result<Self, TheoryError> {
        let mut members = vec![false; num_vertices];
        for v in vertices {
            if v == 0 || v > num_vertices {
                return Err(TheoryError::VertexOutOfRange(v));
            }
            members[v - 1] = true;
        }
        Ok(SimpleSet { members })
    }

    pub fn empty(num_vertices: usize) -> Self {
        SimpleSet {
            members: vec![false; num_vertices],
        }
    }

    pub fn all(num_vertices: usize) -> Self {
        SimpleSet {
            members: vec![true; num_vertices],
        }
    }

    pub fn from_mask(members: Vec<bool>) -> Self {
        SimpleSet { members }
    }

    pub fn num_vertices(&self) -> usize {
        self.members.len()
    }

    /// Membership mask indexed by 0-based vertex.
    pub fn mask(&self) -> &[bool] {
        &self.members
    }

    pub fn contains(&self, v: usize) -> bool {
        v >= 1 && v <= self.members.len() && self.members[v - 1]
    }

    /// Sorted 1-based vertices.
    pub fn vertices(&self) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&i| self.members[i])
            .map(|i| i + 1)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `V′`.
    pub fn complement(&self) -> SimpleSet {
        SimpleSet {
            members: self.members.iter().map(|b| !b).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &SimpleSet) -> bool {
        self.members.iter().zip(&other.members).all(|(a, b)| !a || *b)
    }
}

impl fmt::Display for SimpleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices().iter().map(|v| format!("S({v})")).collect();
        write!(f, "{{{}}}", vs.join(", "))
    }
}

/// Projective dimension, with `Finite(-1)` for the zero module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PdResult {
    Finite {
        value: i64,
    },
    /// `Ω^a M ≅ Ω^b M ≠ 0` with `a < b`.
    Infinite {
        a: usize,
        b: usize,
    },
    Undetermined {
        cutoff: usize,
    },
}

impl PdResult {
    pub fn finite(self) -> Option<i64> {
        match self {
            PdResult::Finite { value } => Some(value),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, PdResult::Finite { .. })
    }
}

impl fmt::Display for PdResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PdResult::Finite { value } => write!(f, "{value}"),
            PdResult::Infinite { a, b } => write!(f, "inf (Omega^{a} = Omega^{b})"),
            PdResult::Undetermined { cutoff } => write!(f, "undetermined (cutoff {cutoff})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PdOptions {
    /// Largest syzygy index examined.
    pub cutoff: usize,
    pub iso_trials: usize,
    /// Give up once a syzygy exceeds this total dimension.
    pub max_dim: usize,
}

pub const DEFAULT_MAX_SYZYGY_DIM: usize = 600;

impl PdOptions {
    /// Cutoff `4 · dim A`.
    pub fn for_algebra(alg: &BoundQuiverAlgebra) -> Self {
        PdOptions {
            cutoff: 4 * alg.dim(),
            iso_trials: DEFAULT_ISO_TRIALS,
            max_dim: DEFAULT_MAX_SYZYGY_DIM,
        }
    }

    pub fn with_cutoff(mut self, cutoff: usize) -> Self {
        self.cutoff = cutoff.max(1);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerLengthTrace {
    pub value: usize,
    /// Total dimensions of `M, t M, F M, t F M, F² M, …`, ending with 0.
    pub chain: Vec<usize>,
}

pub fn torsion_radical(m: &Module, v: &SimpleSet) -> Submodule {
    torsion_radical_within(m, &Submodule::full(m), v)
}

/// `t_V(X)` for a submodule `X` of `m`, as a submodule of `m`.
pub fn torsion_radical_within(m: &Module, x: &Submodule, v: &SimpleSet) -> Submodule {
    let f = m.field();
    let seeds: Vec<Subspace> = (0..m.dims().len())
        .map(|i| {
            if v.mask()[i] {
                Subspace::zero(f, m.dims()[i])
            } else {
                x.space(i).clone()
            }
        })
        .collect();
    m.generated_by_spaces(&seeds)
}

/// `q_{t_V}(M) = M / t_V(M)`.
pub fn torsion_quotient(m: &Module, v: &SimpleSet) -> Module {
    m.quotient(&torsion_radical(m, v)).0
}

/// `F(X) = rad t_V(X)` inside `m`.
pub fn layer_step(m: &Module, x: &Submodule, v: &SimpleSet) -> Submodule {
    m.radical_of(&torsion_radical_within(m, x, v))
}

/// `F^i(M)` as a submodule of `m`.
pub fn layer_power(m: &Module, v: &SimpleSet, i: usize) -> Submodule {
    let mut x = Submodule::full(m);
    for _ in 0..i {
        if x.is_zero() {
            break;
        }
        x = layer_step(m, &x, v);
    }
    x
}

/// `ℓℓ^{t_V}(M)` with the chain of dimensions that produced it.
pub fn layer_length(m: &Module, v: &SimpleSet) -> LayerLengthTrace {
    layer_length_within(m, &Submodule::full(m), v)
}

pub fn layer_length_within(m: &Module, x: &Submodule, v: &SimpleSet) -> LayerLengthTrace {
    let mut chain = vec![x.dim()];
    let mut x = x.clone();
    let mut i = 0;
    loop {
        let t = torsion_radical_within(m, &x, v);
        chain.push(t.dim());
        if t.is_zero() {
            return LayerLengthTrace { value: i, chain };
        }
        x = m.radical_of(&t);
        chain.push(x.dim());
        i += 1;
    }
}

/// `LL(M)`.
pub fn loewy_length(m: &Module) -> usize {
    m.loewy_length()
}

pub fn pd(m: &Module, opts: &PdOptions) -> PdResult {
    if m.is_zero() {
        return PdResult::Finite { value: -1 };
    }
    let mut seen: Vec<Module> = Vec::new();
    let mut cur = m.clone();
    for k in 0..=opts.cutoff {
        if is_projective(&cur) {
            return PdResult::Finite { value: k as i64 };
        }
        if let Some(a) = seen
            .iter()
            .position(|s| s.dims() == cur.dims() && is_iso(s, &cur, opts.iso_trials))
        {
            return PdResult::Infinite { a, b: k };
        }
        if cur.dim() > opts.max_dim || syzygy_dim(&cur) > opts.max_dim {
            break;
        }
        let next = first_syzygy(&cur);
        seen.push(cur);
        cur = next;
    }
    PdResult::Undetermined { cutoff: opts.cutoff }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    /// `pd S(i)`, indexed by 0-based vertex.
    pub table: Vec<PdResult>,
    pub finite: SimpleSet,
    pub infinite: SimpleSet,
    pub gldim: PdResult,
}

impl Classification {
    pub fn undetermined(&self) -> Vec<usize> {
        (0..self.table.len())
            .filter(|&i| matches!(self.table[i], PdResult::Undetermined { .. }))
            .map(|i| i + 1)
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.undetermined().is_empty()
    }

    /// `pd V`; `Finite(-1)` for the empty set.
    pub fn pd_of_set(&self, v: &SimpleSet) -> PdResult {
        let mut best = -1;
        for u in v.vertices() {
            match self.table[u - 1] {
                PdResult::Finite { value } => best = best.max(value),
                other => return other,
            }
        }
        PdResult::Finite { value: best }
    }
}

pub fn classify_simples(alg: &Arc<BoundQuiverAlgebra>, opts: &PdOptions) -> Classification {
    classify_simples_with(alg, opts, Execution::default())
}

pub fn classify_simples_with(alg: &Arc<BoundQuiverAlgebra>, opts: &PdOptions, exec: Execution) -> Classification {
    let n = alg.num_vertices();
    let table = map_range(exec, n, |i| pd(&Module::simple(alg, i + 1), opts));
    let finite = SimpleSet::from_mask(table.iter().map(|r| r.is_finite()).collect());
    let infinite = SimpleSet::from_mask(table.iter().map(|r| matches!(r, PdResult::Infinite { .. })).collect());
    let gldim = if let Some(&inf) = table.iter().find(|r| matches!(r, PdResult::Infinite { .. })) {
        inf
    } else if let Some(&und) = table.iter().find(|r| matches!(r, PdResult::Undetermined { .. })) {
        und
    } else {
        PdResult::Finite {
            value: table.iter().filter_map(|r| r.finite()).max().unwrap_or(-1),
        }
    };
    Classification {
        table,
        finite,
        infinite,
        gldim,
    }
}

pub fn pd_of_set(alg: &Arc<BoundQuiverAlgebra>, v: &SimpleSet, opts: &PdOptions) -> PdResult {
    let mut best = -1;
    for u in v.vertices() {
        match pd(&Module::simple(alg, u), opts) {
            PdResult::Finite { value } => best = best.max(value),
            other => return other,
        }
    }
    PdResult::Finite { value: best }
}

/// `ℓℓ^∞(M) = ℓℓ^{t_V}(M)` with `V = S^{<∞}`.
pub fn ell_infinity(m: &Module, opts: &PdOptions) -> Result<usize, TheoryError> {
    let class = classify_simples(m.algebra(), opts);
    if !class.is_complete() {
        return Err(TheoryError::UndeterminedPd(opts.cutoff));
    }
    Ok(layer_length(m, &class.finite).value)
}

pub fn module_times_ideal(m: &Module, j: &IdealBasis) -> Submodule {
    m.times_ideal(&j.elements())
}

/// Reads a submodule of the regular module `A_A` as a subspace of `A`.
pub fn regular_submodule_as_ideal(alg: &BoundQuiverAlgebra, u: &Submodule) -> IdealBasis {
    let mut elems = Vec::new();
    for j in 0..alg.num_vertices() {
        let paths = alg.paths_to(j);
        for b in u.space(j).basis() {
            let mut coeffs = vec![0; alg.dim()];
            for (k, &c) in b.iter().enumerate() {
                coeffs[paths[k]] = c;
            }
            elems.push(AlgebraElement { coeffs });
        }
    }
    IdealBasis::from_elements(alg, &elems)
}

/// `t_V F^i(A_A)` as a subspace of `A`.
pub fn layer_ideal(alg: &Arc<BoundQuiverAlgebra>, v: &SimpleSet, i: usize) -> IdealBasis {
    let a = Module::regular(alg);
    let x = layer_power(&a, v, i);
    regular_submodule_as_ideal(alg, &torsion_radical_within(&a, &x, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{a2, looped_broom, semisimple, two_chains};

    fn set(n: usize, vs: impl IntoIterator<Item = usize>) -> SimpleSet {
        SimpleSet::new(n, vs).unwrap()
    }

    #[test]
    fn simple_set_basics() {
        let v = set(5, [2, 4]);
        assert_eq!(v.vertices(), vec![2, 4]);
        assert_eq!(v.complement().vertices(), vec![1, 3, 5]);
        assert!(SimpleSet::new(3, [4]).is_err());
        assert_eq!(v.to_string(), "{S(2), S(4)}");
    }

    #[test]
    fn extreme_torsion_radicals() {
        let a = looped_broom(10);
        let m = Module::projective(&a, 1);
        assert!(torsion_radical(&m, &SimpleSet::all(12)).is_zero());
        assert_eq!(torsion_radical(&m, &SimpleSet::empty(12)), Submodule::full(&m));
    }

    #[test]
    fn torsion_radical_of_radical_layers() {
        let a = looped_broom(10);
        let v = set(12, 3..=9);
        let p1 = Module::projective(&a, 1);
        let rad = p1.radical();
        assert_eq!(torsion_radical_within(&p1, &rad, &v), rad);
        let rad2 = p1.radical_of(&rad);
        assert!(!rad2.is_zero());
        assert!(torsion_radical_within(&p1, &rad2, &v).is_zero());
    }

    #[test]
    fn layer_lengths() {
        let a = looped_broom(10);
        let reg = Module::regular(&a);
        let t = layer_length(&reg, &set(12, 3..=9));
        assert_eq!(t.value, 2);
        assert_eq!(t.chain.first(), Some(&59));
        assert_eq!(t.chain.last(), Some(&0));
        assert_eq!(layer_length(&reg, &SimpleSet::empty(12)).value, 9);
        assert_eq!(layer_length(&reg, &SimpleSet::all(12)).value, 0);
        let b = two_chains(6);
        assert_eq!(layer_length(&Module::regular(&b), &set(13, 2..=6)).value, 2);
        assert_eq!(layer_length(&Module::regular(&b), &set(13, 1..=6)).value, 2);
    }

    #[test]
    fn loewy_lengths() {
        let a = looped_broom(10);
        assert_eq!(loewy_length(&Module::simple(&a, 4)), 1);
        assert_eq!(loewy_length(&Module::projective(&a, 2)), 9);
        assert_eq!(loewy_length(&Module::zero(&a)), 0);
    }

    #[test]
    fn pd_table_looped_broom() {
        let a = looped_broom(10);
        let c = classify_simples(&a, &PdOptions::for_algebra(&a));
        assert!(matches!(c.table[0], PdResult::Infinite { .. }));
        for i in 2..=9 {
            assert_eq!(c.table[i - 1], PdResult::Finite { value: 1 }, "S({i})");
        }
        for i in 10..=12 {
            assert_eq!(c.table[i - 1], PdResult::Finite { value: 0 });
        }
        assert_eq!(c.infinite.vertices(), vec![1]);
        assert!(matches!(c.gldim, PdResult::Infinite { .. }));
        assert_eq!(c.pd_of_set(&set(12, 3..=9)), PdResult::Finite { value: 1 });
    }

    #[test]
    fn pd_table_two_chains() {
        let b = two_chains(6);
        let c = classify_simples(&b, &PdOptions::for_algebra(&b));
        let expect = [5, 1, 1, 1, 1, 0, 4, 3, 2, 1, 0, 0, 0];
        let got: Vec<i64> = c.table.iter().map(|r| r.finite().unwrap()).collect();
        assert_eq!(got, expect);
        assert_eq!(c.gldim, PdResult::Finite { value: 5 });
        assert_eq!(c.finite, SimpleSet::all(13));
        assert_eq!(
            pd_of_set(&b, &set(13, 2..=6), &PdOptions::for_algebra(&b)),
            PdResult::Finite { value: 1 }
        );
        assert_eq!(ell_infinity(&Module::regular(&b), &PdOptions::for_algebra(&b)), Ok(0));
    }

    #[test]
    fn pd_conventions() {
        let a = a2();
        let o = PdOptions::for_algebra(&a);
        assert_eq!(pd(&Module::zero(&a), &o), PdResult::Finite { value: -1 });
        assert_eq!(pd(&Module::projective(&a, 1), &o), PdResult::Finite { value: 0 });
        assert_eq!(pd(&Module::simple(&a, 1), &o), PdResult::Finite { value: 1 });
        assert_eq!(pd_of_set(&a, &SimpleSet::empty(2), &o), PdResult::Finite { value: -1 });
        let k = semisimple(3);
        let c = classify_simples(&k, &PdOptions::for_algebra(&k));
        assert_eq!(c.gldim, PdResult::Finite { value: 0 });
        assert_eq!(ell_infinity(&Module::regular(&k), &PdOptions::for_algebra(&k)), Ok(0));
    }

    #[test]
    fn ideal_action_matches_radical() {
        let a = looped_broom(10);
        let m = Module::projective(&a, 1);
        assert_eq!(module_times_ideal(&m, &a.radical_ideal()), m.radical());
        let v = set(12, 3..=9);
        let j = layer_ideal(&a, &v, 1);
        assert!(a.is_two_sided(&j));
        let (r, _) = m.submodule(&m.radical());
        let lhs = torsion_radical_within(&r, &layer_power(&r, &v, 1), &v);
        assert_eq!(lhs, module_times_ideal(&r, &j));
    }
}
