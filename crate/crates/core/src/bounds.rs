//! Upper bounds for the dimension of the bounded derived category, the
//! search for a good `V`, and syzygy-finiteness certificates.

use std::cmp::Ordering;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::BoundQuiverAlgebra;
use crate::error::TheoryError;
use crate::harness::{random_module_with, rng_for};
use crate::par::{map_range, map_slice, Execution};
use crate::repr::{in_add, sum_of_projectives, syzygy, Module};
use crate::torsion::{classify_simples_with, layer_length, Classification, PdOptions, PdResult, SimpleSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `LL(A) − 1`.
    Loewy,
    /// `gldim A`.
    Gldim,
    /// `(pd V + 2)(ℓℓ^{t_V}(A) + 1) − 2`.
    LayerProduct,
    /// `2(pd V + ℓℓ^{t_V}(A)) + 1`.
    LayerSum,
    /// `pd V + 3`, when `ℓℓ^{t_V}(A) ≤ 2`.
    SyzygyFinite,
}

impl BoundKind {
    pub const ALL: [BoundKind; 5] = [
        BoundKind::Loewy,
        BoundKind::Gldim,
        BoundKind::LayerProduct,
        BoundKind::LayerSum,
        BoundKind::SyzygyFinite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Loewy => "loewy",
            BoundKind::Gldim => "gldim",
            BoundKind::LayerProduct => "layer_product",
            BoundKind::LayerSum => "layer_sum",
            BoundKind::SyzygyFinite => "syzygy_finite",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            BoundKind::Loewy => "LL - 1",
            BoundKind::Gldim => "gldim",
            BoundKind::LayerProduct => "(pd V + 2)(ll + 1) - 2",
            BoundKind::LayerSum => "2(pd V + ll) + 1",
            BoundKind::SyzygyFinite => "pd V + 3",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub formula: &'static str,
    /// `None` when the bound does not apply.
    pub value: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Implications {
    pub syzygy_finite_k: Option<i64>,
    pub big_findim_finite: bool,
    pub psi_dim_finite: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub algebra: String,
    pub v_set: SimpleSet,
    pub pd_v: i64,
    pub ll_tv: usize,
    pub ll_chain: Vec<usize>,
    pub loewy_length: usize,
    pub pd_table: Vec<PdResult>,
    pub gldim: PdResult,
    pub entries: Vec<BoundEntry>,
    pub implications: Implications,
    /// Smallest applicable bound, clamped at 0.
    pub best: i64,
}

impl BoundReport {
    pub fn entry(&self, kind: BoundKind) -> Option<i64> {
        self.entries
            .iter()
            .find(|e| e.name == kind.name())
            .and_then(|e| e.value)
    }

    /// Raw formula values in the order of [`BoundKind::ALL`].
    pub fn values(&self) -> Vec<Option<i64>> {
        BoundKind::ALL.iter().map(|&k| self.entry(k)).collect()
    }
}

/// Pure bound arithmetic.
pub fn bound_values(loewy: usize, gldim: Option<i64>, pd_v: i64, ll: usize) -> [Option<i64>; 5] {
    let ll = ll as i64;
    [
        Some(loewy as i64 - 1),
        gldim,
        Some((pd_v + 2) * (ll + 1) - 2),
        Some(2 * (pd_v + ll) + 1),
        (ll <= 2).then_some(pd_v + 3),
    ]
}

/// Classification and regular module shared by every `V` for one algebra.
pub struct BoundContext {
    algebra: Arc<BoundQuiverAlgebra>,
    regular: Module,
    class: Classification,
    opts: PdOptions,
}

impl BoundContext {
    pub fn new(algebra: &Arc<BoundQuiverAlgebra>, opts: &PdOptions, exec: Execution) -> Self {
        BoundContext {
            algebra: algebra.clone(),
            regular: Module::regular(algebra),
            class: classify_simples_with(algebra, opts, exec),
            opts: *opts,
        }
    }

    pub fn classification(&self) -> &Classification {
        &self.class
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.algebra
    }

    /// `pd V`, failing unless every member has finite projective dimension.
    pub fn pd_v(&self, v: &SimpleSet) -> Result<i64, TheoryError> {
        let mut best = -1;
        for u in v.vertices() {
            match self.class.table[u - 1] {
                PdResult::Finite { value } => best = best.max(value),
                PdResult::Infinite { .. } => return Err(TheoryError::VNotInFiniteProjDim(u)),
                PdResult::Undetermined { cutoff } => return Err(TheoryError::UndeterminedPd(cutoff)),
            }
        }
        Ok(best)
    }

    pub fn report(&self, v: &SimpleSet) -> Result<BoundReport, TheoryError> {
        if v.num_vertices() != self.algebra.num_vertices() {
            return Err(TheoryError::VertexOutOfRange(v.num_vertices()));
        }
        let pd_v = self.pd_v(v)?;
        let trace = layer_length(&self.regular, v);
        let loewy = self.algebra.loewy_length();
        let gldim = self.class.gldim.finite();
        let values = bound_values(loewy, gldim, pd_v, trace.value);
        let entries: Vec<BoundEntry> = BoundKind::ALL
            .iter()
            .zip(values)
            .map(|(&k, value)| BoundEntry {
                name: k.name(),
                formula: k.formula(),
                value,
            })
            .collect();
        let applies = values[4].is_some();
        let best = values.iter().flatten().copied().min().unwrap_or(0).max(0);
        Ok(BoundReport {
            algebra: self.algebra.name().to_string(),
            v_set: v.clone(),
            pd_v,
            ll_tv: trace.value,
            ll_chain: trace.chain,
            loewy_length: loewy,
            pd_table: self.class.table.clone(),
            gldim: self.class.gldim,
            entries,
            implications: Implications {
                syzygy_finite_k: applies.then_some(pd_v + 2),
                big_findim_finite: applies,
                psi_dim_finite: applies,
            },
            best,
        })
    }

    pub fn pd_options(&self) -> &PdOptions {
        &self.opts
    }
}

pub fn derived_dim_bounds(
    alg: &Arc<BoundQuiverAlgebra>,
    v: &SimpleSet,
    opts: &PdOptions,
) -> Result<BoundReport, TheoryError> {
    BoundContext::new(alg, opts, Execution::default()).report(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SearchStrategy {
    #[default]
    Exhaustive,
    Greedy,
}

pub const DEFAULT_SEARCH_CAP: usize = 20;

fn search_key(r: &BoundReport) -> (i64, usize, Vec<usize>) {
    (r.best, r.v_set.len(), r.v_set.vertices())
}

fn better(a: &BoundReport, b: &BoundReport) -> bool {
    search_key(a).cmp(&search_key(b)) == Ordering::Less
}

/// Minimizes the best bound over subsets of `S^{<∞}`.
///
/// Ties go to the smaller `V`, then to the lexicographically smaller vertex
/// list. Simples whose projective dimension stays undetermined are left out
/// of the candidate pool.
pub fn best_v_search(
    alg: &Arc<BoundQuiverAlgebra>,
    opts: &PdOptions,
    strategy: SearchStrategy,
    cap: usize,
    exec: Execution,
) -> Result<BoundReport, TheoryError> {
    let ctx = BoundContext::new(alg, opts, exec);
    best_v_search_in(&ctx, strategy, cap, exec)
}

pub fn best_v_search_in(
    ctx: &BoundContext,
    strategy: SearchStrategy,
    cap: usize,
    exec: Execution,
) -> Result<BoundReport, TheoryError> {
    let n = ctx.algebra.num_vertices();
    let pool: Vec<usize> = ctx.class.finite.vertices();
    let subset = |mask: u64| {
        SimpleSet::new(
            n,
            pool.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v),
        )
        .expect("pool vertices are in range")
    };
    match strategy {
        SearchStrategy::Exhaustive => {
            if pool.len() > cap || pool.len() >= 63 {
                return Err(TheoryError::SearchSpaceTooLarge { size: pool.len(), cap });
            }
            let reports = map_range(exec, 1usize << pool.len(), |mask| ctx.report(&subset(mask as u64)));
            let mut best: Option<BoundReport> = None;
            for r in reports {
                let r = r?;
                if best.as_ref().is_none_or(|b| better(&r, b)) {
                    best = Some(r);
                }
            }
            Ok(best.expect("the empty set is always a candidate"))
        }
        SearchStrategy::Greedy => {
            let mut current = ctx.report(&ctx.class.finite)?;
            loop {
                let flips: Vec<SimpleSet> = pool
                    .iter()
                    .map(|&u| {
                        let mut mask = current.v_set.mask().to_vec();
                        mask[u - 1] = !mask[u - 1];
                        SimpleSet::from_mask(mask)
                    })
                    .collect();
                let reports = map_slice(exec, &flips, |s| ctx.report(s));
                let mut step: Option<BoundReport> = None;
                for r in reports {
                    let r = r?;
                    if better(&r, &current) && step.as_ref().is_none_or(|b| better(&r, b)) {
                        step = Some(r);
                    }
                }
                match step {
                    Some(r) => current = r,
                    None => return Ok(current),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateOptions {
    pub samples: usize,
    pub seed: u64,
    pub module_budget: usize,
    pub iso_trials: usize,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        CertificateOptions {
            samples: 25,
            seed: 0,
            module_budget: 24,
            iso_trials: crate::repr::DEFAULT_ISO_TRIALS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateEntry {
    pub label: String,
    pub seed: Option<u64>,
    pub dims: Vec<usize>,
    pub syzygy_dim: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub algebra: String,
    pub v_set: Vec<usize>,
    pub pd_v: i64,
    pub ll_tv: usize,
    pub k: usize,
    pub generator_dim: usize,
    pub entries: Vec<CertificateEntry>,
    pub passed: bool,
}

/// The modules every certificate checks before random sampling: all
/// simples, all `rad P(i)` and each `P(i)` modulo its last radical layer.
pub fn smoke_set(alg: &Arc<BoundQuiverAlgebra>) -> Vec<(String, Module)> {
    let n = alg.num_vertices();
    let mut out = Vec::new();
    for i in 1..=n {
        out.push((format!("S({i})"), Module::simple(alg, i)));
    }
    for i in 1..=n {
        let p = Module::projective(alg, i);
        out.push((format!("rad P({i})"), p.submodule(&p.radical()).0));
    }
    for i in 1..=n {
        let p = Module::projective(alg, i);
        let mut layer = crate::repr::Submodule::full(&p);
        for _ in 1..p.loewy_length() {
            layer = p.radical_of(&layer);
        }
        out.push((format!("P({i})/soc"), p.quotient(&layer).0));
    }
    out
}

/// Checks `Ω^{δ+2}(M) ∈ add(Ω^{δ+2}(⊕ S(i)) ⊕ A)` with `δ = pd V`.
pub fn syzygy_finiteness_certificate(
    ctx: &BoundContext,
    v: &SimpleSet,
    cert: &CertificateOptions,
    exec: Execution,
) -> Result<CertificateReport, TheoryError> {
    let alg = ctx.algebra();
    let pd_v = ctx.pd_v(v)?;
    let ll = layer_length(&ctx.regular, v).value;
    if ll > 2 {
        return Err(TheoryError::HypothesisFailed(ll));
    }
    let k = (pd_v + 2) as usize;
    let n = alg.num_vertices();
    let simples: Vec<Module> = (1..=n).map(|i| Module::simple(alg, i)).collect();
    let refs: Vec<&Module> = simples.iter().collect();
    let top = Module::direct_sum(alg, &refs);
    let omega_top = syzygy(&top, k);
    let regular = sum_of_projectives(alg, 0..n);
    let generator = Module::direct_sum(alg, &[&omega_top, &regular]);

    let mut cases: Vec<(String, Option<u64>, Module)> = smoke_set(alg).into_iter().map(|(l, m)| (l, None, m)).collect();
    let sampled = map_range(exec, cert.samples, |j| {
        let seed = cert.seed.wrapping_add(j as u64);
        let mut rng = rng_for(seed, 3);
        (
            format!("random #{j}"),
            Some(seed),
            random_module_with(alg, &mut rng, cert.module_budget),
        )
    });
    cases.extend(sampled);

    let entries = map_slice(exec, &cases, |(label, seed, m)| {
        let omega = syzygy(m, k);
        CertificateEntry {
            label: label.clone(),
            seed: *seed,
            dims: m.dims().to_vec(),
            syzygy_dim: omega.dim(),
            passed: in_add(&omega, &generator),
        }
    });
    let passed = entries.iter().all(|e| e.passed);
    Ok(CertificateReport {
        algebra: alg.name().to_string(),
        v_set: v.vertices(),
        pd_v,
        ll_tv: ll,
        k,
        generator_dim: generator.dim(),
        entries,
        passed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub ll_l: usize,
    pub ll_m: usize,
    pub ll_n: usize,
    pub lower: bool,
    pub upper: bool,
    pub degenerate: bool,
}

impl CheckResult {
    pub fn from_values(ll_l: usize, ll_m: usize, ll_n: usize) -> Self {
        CheckResult {
            ll_l,
            ll_m,
            ll_n,
            lower: ll_l.max(ll_n) <= ll_m,
            upper: ll_m <= ll_l + ll_n,
            degenerate: (ll_l != 0 || ll_n == ll_m) && (ll_n != 0 || ll_l == ll_m),
        }
    }

    pub fn passed(&self) -> bool {
        self.lower && self.upper && self.degenerate
    }
}

/// Both inequalities and both degenerate equalities for `0 → L → M → N → 0`.
pub fn exact_sequence_bound_check(l: &Module, m: &Module, n: &Module, v: &SimpleSet) -> CheckResult {
    CheckResult::from_values(
        layer_length(l, v).value,
        layer_length(m, v).value,
        layer_length(n, v).value,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{a2, looped_broom, semisimple, two_chains};

    fn ctx(alg: &Arc<BoundQuiverAlgebra>) -> BoundContext {
        BoundContext::new(alg, &PdOptions::for_algebra(alg), Execution::default())
    }

    #[test]
    fn looped_broom_bounds() {
        let a = looped_broom(10);
        let r = ctx(&a).report(&SimpleSet::new(12, 3..=9).unwrap()).unwrap();
        assert_eq!(r.pd_v, 1);
        assert_eq!(r.ll_tv, 2);
        assert_eq!(r.values(), vec![Some(8), None, Some(7), Some(7), Some(4)]);
        assert_eq!(r.best, 4);
        assert_eq!(r.implications.syzygy_finite_k, Some(3));
    }

    #[test]
    fn two_chains_bounds() {
        let a = two_chains(6);
        let r = ctx(&a).report(&SimpleSet::new(13, 2..=6).unwrap()).unwrap();
        assert_eq!(r.values(), vec![Some(5), Some(5), Some(7), Some(7), Some(4)]);
        assert_eq!(r.best, 4);
    }

    #[test]
    fn infinite_pd_in_v_is_rejected() {
        let a = looped_broom(10);
        let err = ctx(&a).report(&SimpleSet::new(12, [1, 3]).unwrap()).unwrap_err();
        assert_eq!(err, TheoryError::VNotInFiniteProjDim(1));
    }

    #[test]
    fn semisimple_empty_v() {
        let a = semisimple(2);
        let r = ctx(&a).report(&SimpleSet::empty(2)).unwrap();
        assert_eq!(r.pd_v, -1);
        assert_eq!(r.ll_tv, 1);
        assert_eq!(r.values(), vec![Some(0), Some(0), Some(0), Some(1), Some(2)]);
        assert_eq!(r.best, 0);
    }

    #[test]
    fn search_a2() {
        let a = a2();
        let r = best_v_search(
            &a,
            &PdOptions::for_algebra(&a),
            SearchStrategy::Exhaustive,
            20,
            Execution::default(),
        )
        .unwrap();
        assert_eq!(r.best, 1);
        assert!(r.v_set.is_empty());
        assert_eq!(r.entry(BoundKind::Gldim), Some(1));
    }

    #[test]
    fn search_looped_broom() {
        let a = looped_broom(10);
        let c = ctx(&a);
        let ex = best_v_search_in(&c, SearchStrategy::Exhaustive, 20, Execution::default()).unwrap();
        assert!(ex.best <= 4);
        let gr = best_v_search_in(&c, SearchStrategy::Greedy, 20, Execution::default()).unwrap();
        assert!(gr.best >= ex.best);
        let seq = best_v_search_in(&c, SearchStrategy::Exhaustive, 20, Execution::Sequential).unwrap();
        assert_eq!(seq, ex);
        assert!(matches!(
            best_v_search_in(&c, SearchStrategy::Exhaustive, 5, Execution::default()),
            Err(TheoryError::SearchSpaceTooLarge { size: 11, cap: 5 })
        ));
    }

    #[test]
    fn certificate_passes_on_examples() {
        let a = looped_broom(10);
        let c = ctx(&a);
        let opts = CertificateOptions {
            samples: 3,
            seed: 7,
            ..Default::default()
        };
        let r = syzygy_finiteness_certificate(&c, &SimpleSet::new(12, 3..=9).unwrap(), &opts, Execution::default())
            .unwrap();
        assert_eq!(r.k, 3);
        assert!(
            r.passed,
            "{:?}",
            r.entries.iter().filter(|e| !e.passed).collect::<Vec<_>>()
        );
        let b = two_chains(6);
        let r = syzygy_finiteness_certificate(
            &ctx(&b),
            &SimpleSet::new(13, 1..=6).unwrap(),
            &opts,
            Execution::default(),
        )
        .unwrap();
        assert_eq!(r.k, 7);
        assert!(r.passed);
    }

    #[test]
    fn certificate_hypothesis() {
        let a = looped_broom(10);
        let err = syzygy_finiteness_certificate(
            &ctx(&a),
            &SimpleSet::empty(12),
            &CertificateOptions::default(),
            Execution::default(),
        )
        .unwrap_err();
        assert_eq!(err, TheoryError::HypothesisFailed(9));
    }

    #[test]
    fn exact_sequence_examples() {
        let a = looped_broom(10);
        let v = SimpleSet::new(12, 3..=9).unwrap();
        let p1 = Module::projective(&a, 1);
        let rad2 = p1.radical_of(&p1.radical());
        let (l, _) = p1.submodule(&rad2);
        let (n, _) = p1.quotient(&rad2);
        let r = exact_sequence_bound_check(&l, &p1, &n, &v);
        assert_eq!((r.ll_l, r.ll_m, r.ll_n), (0, 2, 2));
        assert!(r.passed());
        assert!(!CheckResult::from_values(0, 3, 2).passed());
    }
}
