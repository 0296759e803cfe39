//! Seeded random algebras, modules and short exact sequences.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::BoundQuiverAlgebra;
use crate::linalg::PrimeField;
use crate::quiver::{Path, Quiver, Relation};
use crate::repr::{Module, ModuleHom, Submodule};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub seed: u64,
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub max_relations: usize,
    /// Every path of this length is declared zero.
    pub forced_length: usize,
    pub module_budget: usize,
    /// Chance that a drawn arrow is allowed to be a loop.
    pub loop_probability: f64,
    /// Draws whose algebra exceeds this dimension are rejected.
    pub max_algebra_dim: usize,
    pub modulus: u32,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            seed: 0,
            min_vertices: 1,
            max_vertices: 8,
            max_arrows: 12,
            max_relations: 6,
            forced_length: 5,
            module_budget: 24,
            loop_probability: 0.1,
            max_algebra_dim: 60,
            modulus: PrimeField::DEFAULT_MODULUS,
        }
    }
}

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

const MAX_FORCED_PATHS: usize = 4000;
const ALGEBRA_ATTEMPTS: usize = 64;

pub fn random_algebra(params: &GenParams) -> Arc<BoundQuiverAlgebra> {
    let mut rng = rng_for(params.seed, 0);
    random_algebra_with(params, &mut rng)
}

pub fn random_algebra_with(params: &GenParams, rng: &mut ChaCha8Rng) -> Arc<BoundQuiverAlgebra> {
    let field = PrimeField::new(params.modulus).expect("prime modulus");
    let len = params.forced_length.max(2);
    let lo = params.min_vertices.max(1);
    let hi = params.max_vertices.max(lo);
    let mut arrow_cap = params.max_arrows;
    for attempt in 0..ALGEBRA_ATTEMPTS {
        let n = rng.gen_range(lo..=hi);
        let k = rng.gen_range(0..=arrow_cap);
        let mut arrows = Vec::with_capacity(k);
        for i in 0..k {
            let s = rng.gen_range(1..=n);
            let mut t = rng.gen_range(1..=n);
            if s == t && !rng.gen_bool(params.loop_probability.clamp(0.0, 1.0)) {
                t = if n == 1 { continue } else { (t % n) + 1 };
            }
            arrows.push((format!("a{}", i + 1), s, t));
        }
        let q = Quiver::new(n, arrows).expect("generated endpoints are in range");
        if let Some(alg) = compile_random(&q, params, len, field, rng) {
            if alg.dim() <= params.max_algebra_dim {
                return Arc::new(alg);
            }
        }
        // Shrink the arrow budget so persistent rejections terminate.
        if attempt % 8 == 7 {
            arrow_cap = arrow_cap.saturating_sub(1);
        }
    }
    let q = Quiver::new(lo, Vec::<(String, usize, usize)>::new()).expect("no arrows");
    Arc::new(BoundQuiverAlgebra::compile("random", q, vec![], field, len).expect("semisimple"))
}

fn compile_random(
    q: &Quiver,
    params: &GenParams,
    len: usize,
    field: PrimeField,
    rng: &mut ChaCha8Rng,
) -> Option<BoundQuiverAlgebra> {
    let forced = paths_of_length(q, len, MAX_FORCED_PATHS)?;
    let mut relations: Vec<Relation> = forced
        .into_iter()
        .map(|p| Relation::monomial(p).ok())
        .collect::<Option<_>>()?;
    if len > 2 && !q.arrows().is_empty() {
        let count = rng.gen_range(0..=params.max_relations);
        for _ in 0..count {
            let l = rng.gen_range(2..len);
            if let Some(p) = random_walk(q, l, rng) {
                if !relations.iter().any(|r| r.terms()[0].1 == p) {
                    relations.push(Relation::monomial(p).ok()?);
                }
            }
        }
    }
    BoundQuiverAlgebra::compile(format!("random_{}", params.seed), q.clone(), relations, field, len).ok()
}

fn paths_of_length(q: &Quiver, len: usize, cap: usize) -> Option<Vec<Path>> {
    let mut level: Vec<Path> = (0..q.num_vertices()).map(Path::trivial).collect();
    for _ in 0..len {
        let mut next = Vec::new();
        for p in &level {
            for &a in q.outgoing(p.target()) {
                let mut arrows = p.arrows().to_vec();
                arrows.push(a);
                next.push(Path::from_arrows(q, arrows).ok()?);
                if next.len() > cap {
                    return None;
                }
            }
        }
        level = next;
    }
    Some(level)
}

fn random_walk(q: &Quiver, len: usize, rng: &mut ChaCha8Rng) -> Option<Path> {
    let starts: Vec<usize> = (0..q.num_vertices()).filter(|&v| !q.outgoing(v).is_empty()).collect();
    let mut v = *starts.choose(rng)?;
    let mut arrows = Vec::with_capacity(len);
    for _ in 0..len {
        let &a = q.outgoing(v).choose(rng)?;
        arrows.push(a);
        v = q.arrow(a).target;
    }
    Path::from_arrows(q, arrows).ok()
}

pub fn random_vector(field: PrimeField, len: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
    (0..len).map(|_| rng.gen_range(0..field.modulus())).collect()
}

/// `P / U` for a random sum `P` of projectives, each cut down to
/// `P(v) / rad^k P(v)` when it exceeds the budget, and `U` generated by
/// random elements of `rad P`.
pub fn random_module(alg: &Arc<BoundQuiverAlgebra>, seed: u64, budget: usize) -> Module {
    random_module_with(alg, &mut rng_for(seed, 1), budget)
}

pub fn random_module_with(alg: &Arc<BoundQuiverAlgebra>, rng: &mut ChaCha8Rng, budget: usize) -> Module {
    let n = alg.num_vertices();
    let mut parts: Vec<Module> = Vec::new();
    let mut remaining = budget.max(1);
    while remaining > 0 {
        let part = truncated_projective(alg, rng.gen_range(1..=n), remaining);
        remaining -= part.dim();
        parts.push(part);
        if rng.gen_bool(0.4) {
            break;
        }
    }
    let refs: Vec<&Module> = parts.iter().collect();
    let p = Module::direct_sum(alg, &refs);
    let rad = p.radical();
    let u = match rng.gen_range(0..8) {
        0 => Submodule::zero(&p),
        1 => rad,
        _ => {
            let count = rng.gen_range(1..=3);
            let elems = random_elements_in(&p, &rad, count, rng);
            p.generated(&elems)
        }
    };
    p.quotient(&u).0
}

/// `P(v) / rad^k P(v)` for the largest `k` keeping the dimension within `budget`.
fn truncated_projective(alg: &Arc<BoundQuiverAlgebra>, v: usize, budget: usize) -> Module {
    let p = Module::projective(alg, v);
    if p.dim() <= budget {
        return p;
    }
    let mut layers = vec![Submodule::full(&p)];
    while !layers.last().expect("nonempty").is_zero() {
        let next = p.radical_of(layers.last().expect("nonempty"));
        layers.push(next);
    }
    let k = (1..layers.len())
        .rev()
        .find(|&k| p.dim() - layers[k].dim() <= budget)
        .unwrap_or(1);
    p.quotient(&layers[k]).0
}

/// Random vertex-homogeneous elements of the submodule `u` of `m`.
pub fn random_elements_in(m: &Module, u: &Submodule, count: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, Vec<u32>)> {
    let f = m.field();
    let support: Vec<usize> = (0..m.dims().len()).filter(|&v| u.space(v).dim() > 0).collect();
    let mut out = Vec::new();
    if support.is_empty() {
        return out;
    }
    for _ in 0..count {
        let v = *support.choose(rng).expect("nonempty");
        let basis = u.space(v).basis();
        let mut x = vec![0u32; m.dims()[v]];
        for b in basis {
            let c = rng.gen_range(0..f.modulus());
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi = f.add(*xi, f.mul(c, *bi));
            }
        }
        if x.iter().any(|&c| c != 0) {
            out.push((v, x));
        }
    }
    out
}

/// A random submodule of `m` generated by a few random elements.
pub fn random_submodule(m: &Module, rng: &mut ChaCha8Rng) -> Submodule {
    match rng.gen_range(0..10) {
        0 => Submodule::zero(m),
        1 => Submodule::full(m),
        _ => {
            let count = rng.gen_range(1..=3);
            let elems = random_elements_in(m, &Submodule::full(m), count, rng);
            m.generated(&elems)
        }
    }
}

/// `0 → L → M → N → 0` with the inclusion and projection.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub sub: Submodule,
    pub l: Module,
    pub m: Module,
    pub n: Module,
    pub inclusion: ModuleHom,
    pub projection: ModuleHom,
}

pub fn random_ses(m: &Module, seed: u64) -> ShortExactSequence {
    random_ses_with(m, &mut rng_for(seed, 2))
}

pub fn random_ses_with(m: &Module, rng: &mut ChaCha8Rng) -> ShortExactSequence {
    let sub = random_submodule(m, rng);
    ses_from_submodule(m, sub)
}

pub fn ses_from_submodule(m: &Module, sub: Submodule) -> ShortExactSequence {
    let (l, inclusion) = m.submodule(&sub);
    let (n, projection) = m.quotient(&sub);
    ShortExactSequence {
        sub,
        l,
        m: m.clone(),
        n,
        inclusion,
        projection,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_without_arrows_is_semisimple() {
        let p = GenParams {
            seed: 3,
            max_vertices: 1,
            max_arrows: 0,
            ..GenParams::default()
        };
        let a = random_algebra(&p);
        assert_eq!(a.dim(), 1);
        assert_eq!(a.loewy_length(), 1);
    }

    #[test]
    fn draws_compile_within_forced_length() {
        for seed in 0..40 {
            let p = GenParams {
                seed,
                ..GenParams::default()
            };
            let a = random_algebra(&p);
            assert!(a.loewy_length() <= p.forced_length);
            assert!(a.dim() <= p.max_algebra_dim);
        }
    }

    #[test]
    fn deterministic() {
        let p = GenParams {
            seed: 42,
            ..GenParams::default()
        };
        let (a, b) = (random_algebra(&p), random_algebra(&p));
        assert_eq!(a.basis(), b.basis());
        let m1 = random_module(&a, 9, 30);
        let m2 = random_module(&b, 9, 30);
        assert_eq!(m1.dims(), m2.dims());
        assert!(m1.dim() <= 30);
    }

    #[test]
    fn ses_is_additive() {
        let a = random_algebra(&GenParams {
            seed: 5,
            ..GenParams::default()
        });
        for s in 0..20 {
            let m = random_module(&a, s, 20);
            let ses = random_ses(&m, s);
            for v in 0..a.num_vertices() {
                assert_eq!(ses.l.dims()[v] + ses.n.dims()[v], m.dims()[v]);
            }
            assert!(ses.inclusion.is_homomorphism(&ses.l, &m));
            assert!(ses.projection.is_homomorphism(&m, &ses.n));
            assert!(ses.inclusion.then(&ses.projection).maps().iter().all(|x| x.is_zero()));
        }
        let m = random_module(&a, 1, 20);
        let whole = ses_from_submodule(&m, Submodule::full(&m));
        assert!(whole.n.is_zero());
        let none = ses_from_submodule(&m, Submodule::zero(&m));
        assert_eq!(none.n.dims(), m.dims());
    }
}
