//! The invariant campaign: named checks run on seeded random draws.

use std::fmt;
use std::fs;
use std::io;
use std::path::Path;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::gen::{
    random_algebra, random_elements_in, random_module_with, random_ses_with, random_submodule, rng_for, GenParams,
};
use crate::algebra::BoundQuiverAlgebra;
use crate::bounds::{exact_sequence_bound_check, CheckResult};
use crate::linalg::Subspace;
use crate::par::{map_range, Execution};
use crate::qdsl::PresentationAst;
use crate::quiver::{Quiver, Relation};
use crate::repr::{
    first_syzygy, in_add, is_iso, largest_submodule_supported_on, strip_projective_summands, syzygy, syzygy_dim,
    HomSpace, Module, Submodule, DEFAULT_ISO_TRIALS,
};
use crate::torsion::{
    classify_simples_with, layer_ideal, layer_length, layer_power, layer_step, module_times_ideal, pd,
    torsion_quotient, torsion_radical, torsion_radical_within, Classification, PdOptions, SimpleSet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    SesLayerBounds,
    SesLoewyBounds,
    LemmaIdealAction,
    MonoEpiPreservation,
    ShiftLemma,
    VanishingLemma,
    OmegaLemma,
    TorsionAxioms,
    Idempotence,
    SyzygyAdditivity,
    StableSyzygyLemma,
    Certificate,
}

impl Check {
    pub const ALL: [Check; 12] = [
        Check::SesLayerBounds,
        Check::SesLoewyBounds,
        Check::LemmaIdealAction,
        Check::MonoEpiPreservation,
        Check::ShiftLemma,
        Check::VanishingLemma,
        Check::OmegaLemma,
        Check::TorsionAxioms,
        Check::Idempotence,
        Check::SyzygyAdditivity,
        Check::StableSyzygyLemma,
        Check::Certificate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::SesLayerBounds => "ses-layer-bounds",
            Check::SesLoewyBounds => "ses-loewy-bounds",
            Check::LemmaIdealAction => "lemma-ideal-action",
            Check::MonoEpiPreservation => "mono-epi-preservation",
            Check::ShiftLemma => "shift-lemma",
            Check::VanishingLemma => "vanishing-lemma",
            Check::OmegaLemma => "omega-lemma",
            Check::TorsionAxioms => "torsion-axioms",
            Check::Idempotence => "idempotence",
            Check::SyzygyAdditivity => "syzygy-additivity",
            Check::StableSyzygyLemma => "stable-syzygy-lemma",
            Check::Certificate => "certificate",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// The draw did not meet the check's hypotheses.
    Skip(String),
    Fail(String),
}

struct CertGenerator {
    k: usize,
    generator: Module,
}

/// A random algebra with its simple-module classification.
pub struct AlgebraCase {
    pub algebra: Arc<BoundQuiverAlgebra>,
    pub seed: u64,
    class: Classification,
    regular: Module,
    cert: OnceLock<Option<CertGenerator>>,
}

const MAX_CERT_SEARCH: usize = 12;
const MAX_GENERATOR_DIM: usize = 300;

type ModuleFunctor<'a> = (&'static str, &'a dyn Fn(&Module) -> Submodule);

const MAX_SYZYGY_DIM: usize = 150;
/// Syzygy size at which projective dimensions are left undetermined.
const CAMPAIGN_PD_DIM: usize = 200;

fn campaign_pd_options(alg: &BoundQuiverAlgebra) -> PdOptions {
    PdOptions {
        max_dim: CAMPAIGN_PD_DIM,
        ..PdOptions::for_algebra(alg)
    }
}

/// `Ω^k(m)`, or `None` once some intermediate syzygy exceeds `MAX_SYZYGY_DIM`.
fn bounded_syzygy(m: &Module, k: usize) -> Option<Module> {
    let mut cur = m.clone();
    for _ in 0..k {
        if syzygy_dim(&cur) > MAX_SYZYGY_DIM {
            return None;
        }
        cur = first_syzygy(&cur);
    }
    Some(cur)
}

impl AlgebraCase {
    pub fn new(algebra: Arc<BoundQuiverAlgebra>, seed: u64) -> Self {
        let class = classify_simples_with(&algebra, &campaign_pd_options(&algebra), Execution::Sequential);
        AlgebraCase {
            regular: Module::regular(&algebra),
            algebra,
            seed,
            class,
            cert: OnceLock::new(),
        }
    }

    pub fn classification(&self) -> &Classification {
        &self.class
    }

    /// The `V ⊆ S^{<∞}` with `ℓℓ^{t_V}(A) ≤ 2` of least `pd V`, and its generator.
    fn cert_generator(&self) -> Option<&CertGenerator> {
        self.cert
            .get_or_init(|| {
                let pool = self.class.finite.vertices();
                if pool.len() > MAX_CERT_SEARCH {
                    return None;
                }
                let n = self.algebra.num_vertices();
                let mut best: Option<(i64, SimpleSet)> = None;
                for mask in 0u32..(1 << pool.len()) {
                    let v = SimpleSet::new(
                        n,
                        pool.iter()
                            .enumerate()
                            .filter(|(i, _)| mask >> i & 1 == 1)
                            .map(|(_, &u)| u),
                    )
                    .expect("in range");
                    let pd_v = self.class.pd_of_set(&v).finite()?;
                    if layer_length(&self.regular, &v).value <= 2 && best.as_ref().is_none_or(|(b, _)| pd_v < *b) {
                        best = Some((pd_v, v));
                    }
                }
                let (pd_v, _) = best?;
                let k = (pd_v + 2) as usize;
                let simples: Vec<Module> = (1..=n).map(|i| Module::simple(&self.algebra, i)).collect();
                let refs: Vec<&Module> = simples.iter().collect();
                let omega = bounded_syzygy(&Module::direct_sum(&self.algebra, &refs), k)?;
                let generator = Module::direct_sum(&self.algebra, &[&omega, &self.regular]);
                (generator.dim() <= MAX_GENERATOR_DIM).then_some(CertGenerator { k, generator })
            })
            .as_ref()
    }
}

fn random_set(n: usize, rng: &mut ChaCha8Rng) -> SimpleSet {
    SimpleSet::from_mask((0..n).map(|_| rng.gen_bool(0.5)).collect())
}

fn random_subset_of(v: &SimpleSet, rng: &mut ChaCha8Rng) -> SimpleSet {
    SimpleSet::from_mask(v.mask().iter().map(|&b| b && rng.gen_bool(0.5)).collect())
}

fn standalone(m: &Module, u: &Submodule) -> Module {
    m.submodule(u).0
}

fn fail_if(bad: bool, msg: impl FnOnce() -> String) -> Outcome {
    if bad {
        Outcome::Fail(msg())
    } else {
        Outcome::Pass
    }
}

fn ses_values(r: &CheckResult) -> String {
    format!("ll(L)={} ll(M)={} ll(N)={}", r.ll_l, r.ll_m, r.ll_n)
}

/// Runs one draw of a check. Identical arguments give identical outcomes.
pub fn run_check(check: Check, case: &AlgebraCase, draw_seed: u64, budget: usize) -> Outcome {
    let alg = &case.algebra;
    let n = alg.num_vertices();
    let rng = &mut rng_for(draw_seed, 7);
    match check {
        Check::SesLayerBounds => {
            let m = random_module_with(alg, rng, budget);
            let ses = random_ses_with(&m, rng);
            let v = random_set(n, rng);
            let r = exact_sequence_bound_check(&ses.l, &ses.m, &ses.n, &v);
            fail_if(!r.passed(), || format!("V={v}: {}", ses_values(&r)))
        }
        Check::SesLoewyBounds => {
            let m = random_module_with(alg, rng, budget);
            let ses = random_ses_with(&m, rng);
            let ll = CheckResult::from_values(ses.l.loewy_length(), m.loewy_length(), ses.n.loewy_length());
            if !ll.passed() {
                return Outcome::Fail(format!("Loewy lengths: {}", ses_values(&ll)));
            }
            if !case.class.is_complete() {
                return Outcome::Pass;
            }
            let r = exact_sequence_bound_check(&ses.l, &ses.m, &ses.n, &case.class.finite);
            fail_if(!r.passed(), || format!("infinite layer lengths: {}", ses_values(&r)))
        }
        Check::LemmaIdealAction => {
            let x = random_module_with(alg, rng, budget);
            if x.radical() != module_times_ideal(&x, &alg.radical_ideal()) {
                return Outcome::Fail("rad X differs from X rad A".into());
            }
            let v = random_set(n, rng);
            let i = rng.gen_range(0..=4);
            let lhs = torsion_radical_within(&x, &layer_power(&x, &v, i), &v);
            let rhs = module_times_ideal(&x, &layer_ideal(alg, &v, i));
            fail_if(lhs != rhs, || {
                format!(
                    "V={v}, i={i}: t F^i(X) has dims {:?}, X·J has dims {:?}",
                    lhs.dims(),
                    rhs.dims()
                )
            })
        }
        Check::MonoEpiPreservation => {
            let m = random_module_with(alg, rng, budget);
            let u = random_submodule(&m, rng);
            let v = random_set(n, rng);
            let (sub, incl) = m.submodule(&u);
            let (quo, proj) = m.quotient(&u);
            let functors: [ModuleFunctor; 3] = [
                ("t_V", &|x: &Module| torsion_radical(x, &v)),
                ("rad", &|x: &Module| x.radical()),
                ("rad t_V", &|x: &Module| layer_step(x, &Submodule::full(x), &v)),
            ];
            for (name, g) in functors {
                let gu = g(&sub);
                let gm = g(&m);
                let img = incl.image_of(&gu);
                if img.dim() != gu.dim() || !img.is_contained_in(&gm) {
                    return Outcome::Fail(format!("{name} does not preserve the monomorphism (V={v})"));
                }
                if proj.image_of(&gm) != g(&quo) {
                    return Outcome::Fail(format!("{name} does not preserve the epimorphism (V={v})"));
                }
            }
            Outcome::Pass
        }
        Check::ShiftLemma => {
            let m = random_module_with(alg, rng, budget);
            let v = random_set(n, rng);
            let total = layer_length(&m, &v).value;
            for j in 0..=total {
                let fj = standalone(&m, &layer_power(&m, &v, j));
                let got = layer_length(&fj, &v).value;
                if got + j != total {
                    return Outcome::Fail(format!("V={v}: ll(M)={total} but ll(F^{j} M)={got}"));
                }
            }
            Outcome::Pass
        }
        Check::VanishingLemma => {
            let m = random_module_with(alg, rng, budget);
            let v = random_set(n, rng);
            let total = layer_length(&m, &v).value;
            let f = standalone(&m, &layer_power(&m, &v, total));
            fail_if(!torsion_radical(&f, &v).is_zero(), || {
                format!("V={v}: t F^{total}(M) is nonzero")
            })
        }
        Check::OmegaLemma => {
            let v = random_subset_of(&case.class.finite, rng);
            let bound = layer_length(&case.regular, &v).value;
            for _ in 0..4 {
                let m = random_module_with(alg, rng, budget);
                let t = torsion_radical(&m, &v);
                if t.is_zero() {
                    continue;
                }
                let omega = first_syzygy(&standalone(&m, &t));
                let got = layer_length(&omega, &v).value;
                return fail_if(got + 1 > bound, || format!("V={v}: ll(Omega t M)={got}, ll(A)={bound}"));
            }
            Outcome::Skip("t_V(M) = 0 on every draw".into())
        }
        Check::TorsionAxioms => torsion_axioms(case, rng, budget),
        Check::Idempotence => {
            let m = random_module_with(alg, rng, budget);
            let v = random_set(n, rng);
            let t = torsion_radical(&m, &v);
            if torsion_radical_within(&m, &t, &v) != t {
                return Outcome::Fail(format!("V={v}: t(t M) differs from t M inside M"));
            }
            let tm = standalone(&m, &t);
            fail_if(torsion_radical(&tm, &v) != Submodule::full(&tm), || {
                format!("V={v}: t(t M) is a proper submodule")
            })
        }
        Check::SyzygyAdditivity => {
            let x = random_module_with(alg, rng, budget / 2 + 1);
            let y = random_module_with(alg, rng, budget / 2 + 1);
            let k = rng.gen_range(1..=3);
            let Some(sum) = bounded_syzygy(&Module::direct_sum(alg, &[&x, &y]), k) else {
                return Outcome::Skip("syzygy too large".into());
            };
            let (ox, oy) = (syzygy(&x, k), syzygy(&y, k));
            if !is_iso(&sum, &Module::direct_sum(alg, &[&ox, &oy]), DEFAULT_ISO_TRIALS) {
                return Outcome::Fail(format!("Omega^{k}(X+Y) is not Omega^{k} X + Omega^{k} Y"));
            }
            fail_if(!in_add(&ox, &sum), || {
                format!("Omega^{k} X is not in add Omega^{k}(X+Y)")
            })
        }
        Check::StableSyzygyLemma => stable_syzygy(case, rng, budget),
        Check::Certificate => {
            let Some(cert) = case.cert_generator() else {
                return Outcome::Skip("no V with ll <= 2 and a small generator".into());
            };
            let m = random_module_with(alg, rng, budget);
            let Some(omega) = bounded_syzygy(&m, cert.k) else {
                return Outcome::Skip("syzygy too large".into());
            };
            fail_if(!in_add(&omega, &cert.generator), || {
                format!("Omega^{} M (dims {:?}) is not in add G", cert.k, omega.dims())
            })
        }
    }
}

fn torsion_axioms(case: &AlgebraCase, rng: &mut ChaCha8Rng, budget: usize) -> Outcome {
    let alg = &case.algebra;
    let n = alg.num_vertices();
    let v = random_set(n, rng);
    let m = random_module_with(alg, rng, budget);
    let t = torsion_radical(&m, &v);
    let tm = standalone(&m, &t);
    let q = torsion_quotient(&m, &v);
    for i in 0..n {
        if t.dims()[i] + q.dims()[i] != m.dims()[i] {
            return Outcome::Fail("0 -> tM -> M -> qM -> 0 is not exact".into());
        }
        if v.mask()[i] && tm.top_dims()[i] != 0 {
            return Outcome::Fail(format!("V={v}: top t_V(M) meets S({})", i + 1));
        }
        if !v.mask()[i] && q.dims()[i] != 0 {
            return Outcome::Fail(format!("V={v}: q(M) has support at {}", i + 1));
        }
    }
    let other = random_module_with(alg, rng, budget);
    let f = torsion_quotient(&other, &v);
    if !HomSpace::new(&tm, &f).is_zero() {
        return Outcome::Fail(format!("V={v}: Hom(T, F) is nonzero"));
    }
    let f = alg.field();
    let gaps: Vec<usize> = (0..n).filter(|&i| t.space(i).dim() < m.dims()[i]).collect();
    for _ in 0..3 {
        let Some(&i) = gaps.choose(rng) else { break };
        let x: Vec<u32> = loop {
            let x = super::gen::random_vector(f, m.dims()[i], rng);
            if !t.space(i).contains(&x) {
                break x;
            }
        };
        let mut seeds: Vec<Subspace> = t.spaces().to_vec();
        seeds[i].insert(x);
        let u = m.generated_by_spaces(&seeds);
        let top = standalone(&m, &u).top_dims();
        if (0..n).all(|j| !v.mask()[j] || top[j] == 0) {
            return Outcome::Fail(format!("V={v}: a proper extension of t_V(M) still has top in add V'"));
        }
    }
    Outcome::Pass
}

fn stable_iso(a: &Module, b: &Module) -> bool {
    let (ca, _) = strip_projective_summands(a);
    let (cb, _) = strip_projective_summands(b);
    ca.dims() == cb.dims() && is_iso(&ca, &cb, DEFAULT_ISO_TRIALS)
}

fn stable_syzygy(case: &AlgebraCase, rng: &mut ChaCha8Rng, budget: usize) -> Outcome {
    let alg = &case.algebra;
    let fin = &case.class.finite;
    let opts = campaign_pd_options(alg);
    let y = random_module_with(alg, rng, budget);
    if rng.gen_bool(0.5) {
        // X ⊇ t_V(Y) with V = S^{<∞}, so Z = Y/X is supported on V and pd Z < ∞.
        let t = torsion_radical(&y, fin);
        let extra = rng.gen_range(0..=2);
        let elems = random_elements_in(&y, &Submodule::full(&y), extra, rng);
        let xs = t.sum(&y.generated(&elems));
        let (x, _) = y.submodule(&xs);
        let (z, _) = y.quotient(&xs);
        let Some(pz) = pd(&z, &opts).finite() else {
            return Outcome::Skip("pd Z undetermined".into());
        };
        let k = pz.max(0) as usize + rng.gen_range(0..=1);
        let (Some(ox), Some(oy)) = (bounded_syzygy(&x, k), bounded_syzygy(&y, k)) else {
            return Outcome::Skip("syzygy too large".into());
        };
        fail_if(!stable_iso(&ox, &oy), || {
            format!("pd Z={pz}, m={k}: Omega^m X and Omega^m Y differ stably")
        })
    } else {
        // X inside the largest submodule supported on S^{<∞}, so pd X < ∞.
        let w = largest_submodule_supported_on(&y, fin.mask());
        let count = rng.gen_range(1..=3);
        let elems = random_elements_in(&y, &w, count, rng);
        let xs = y.generated(&elems);
        let (x, _) = y.submodule(&xs);
        let (z, _) = y.quotient(&xs);
        let Some(px) = pd(&x, &opts).finite() else {
            return Outcome::Skip("pd X undetermined".into());
        };
        let k = px.max(0) as usize + rng.gen_range(0..=1) + 1;
        let (Some(oy), Some(oz)) = (bounded_syzygy(&y, k), bounded_syzygy(&z, k)) else {
            return Outcome::Skip("syzygy too large".into());
        };
        fail_if(!stable_iso(&oy, &oz), || {
            format!("pd X={px}, m+1={k}: Omega^(m+1) Y and Omega^(m+1) Z differ stably")
        })
    }
}

#[derive(Clone, Debug)]
pub struct CampaignParams {
    pub seed: u64,
    pub algebras: usize,
    /// Draws per check, spread round-robin over the algebras.
    pub count: usize,
    pub checks: Vec<Check>,
    pub gen: GenParams,
    pub exec: Execution,
    pub shrink: bool,
}

impl Default for CampaignParams {
    fn default() -> Self {
        CampaignParams {
            seed: 0,
            algebras: 50,
            count: 1000,
            checks: Check::ALL.to_vec(),
            gen: GenParams::default(),
            exec: Execution::default(),
            shrink: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureRecord {
    pub draw: usize,
    pub algebra_seed: u64,
    pub draw_seed: u64,
    pub budget: usize,
    pub detail: String,
    /// Minimized presentation reproducing the failure.
    pub presentation: String,
    pub replay: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub failures: Vec<FailureRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignResult {
    pub seed: u64,
    pub algebras: usize,
    pub count: usize,
    pub checks: Vec<CheckSummary>,
}

impl CampaignResult {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }
}

/// SplitMix64 finalizer, used to derive independent seeds.
pub fn mix(a: u64, b: u64) -> u64 {
    let mut z = a ^ b
        .wrapping_mul(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(0x6a09_e667_f3bc_c909);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn algebra_seed(seed: u64, i: usize) -> u64 {
    mix(seed, i as u64)
}

pub fn draw_seed(seed: u64, check: Check, draw: usize) -> u64 {
    mix(mix(seed ^ 0xd1b5_4a32_d192_ed03, check as u64 + 1), draw as u64)
}

pub fn build_cases(params: &CampaignParams) -> Vec<AlgebraCase> {
    map_range(params.exec, params.algebras.max(1), |i| {
        let seed = algebra_seed(params.seed, i);
        let gen = GenParams {
            seed,
            ..params.gen.clone()
        };
        AlgebraCase::new(random_algebra(&gen), seed)
    })
}

pub fn run_campaign(params: &CampaignParams) -> CampaignResult {
    let cases = if params.count == 0 || params.checks.is_empty() {
        Vec::new()
    } else {
        build_cases(params)
    };
    run_campaign_on(params, &cases)
}

pub fn run_campaign_on(params: &CampaignParams, cases: &[AlgebraCase]) -> CampaignResult {
    let mut checks = Vec::new();
    if params.count > 0 && !cases.is_empty() {
        for &check in &params.checks {
            let outcomes = map_range(params.exec, params.count, |d| {
                let case = &cases[d % cases.len()];
                let s = draw_seed(params.seed, check, d);
                (d, case.seed, s, run_check(check, case, s, params.gen.module_budget))
            });
            let mut summary = CheckSummary {
                name: check.name(),
                passed: 0,
                failed: 0,
                skipped: 0,
                failures: Vec::new(),
            };
            for (d, aseed, s, outcome) in outcomes {
                match outcome {
                    Outcome::Pass => summary.passed += 1,
                    Outcome::Skip(_) => summary.skipped += 1,
                    Outcome::Fail(detail) => {
                        summary.failed += 1;
                        let case = &cases[d % cases.len()];
                        let (alg, budget) = if params.shrink {
                            shrink(check, &case.algebra, s, params.gen.module_budget)
                        } else {
                            (case.algebra.clone(), params.gen.module_budget)
                        };
                        summary.failures.push(FailureRecord {
                            draw: d,
                            algebra_seed: aseed,
                            draw_seed: s,
                            budget,
                            detail,
                            presentation: PresentationAst::from_algebra(&alg).pretty(),
                            replay: format!(
                                "qalg fuzz --replay failures/{check}/{s}.qalg --check {check} --seed {s} --budget {budget}"
                            ),
                        });
                    }
                }
            }
            checks.push(summary);
        }
    }
    CampaignResult {
        seed: params.seed,
        algebras: params.algebras,
        count: params.count,
        checks,
    }
}

fn fails(check: Check, alg: &Arc<BoundQuiverAlgebra>, seed: u64, budget: usize) -> bool {
    let case = AlgebraCase::new(alg.clone(), 0);
    matches!(run_check(check, &case, seed, budget), Outcome::Fail(_))
}

fn without_arrow(alg: &BoundQuiverAlgebra, drop: usize) -> Option<Arc<BoundQuiverAlgebra>> {
    let q = alg.quiver();
    let keep: Vec<usize> = (0..q.arrows().len()).filter(|&i| i != drop).collect();
    let nq = Quiver::new(
        q.num_vertices(),
        keep.iter().map(|&i| {
            let a = q.arrow(i);
            (a.name.clone(), a.source + 1, a.target + 1)
        }),
    )
    .ok()?;
    let mut relations = Vec::new();
    for r in alg.relations() {
        if r.terms().iter().any(|(_, p)| p.arrows().contains(&drop)) {
            continue;
        }
        let terms = r
            .terms()
            .iter()
            .map(|(c, p)| {
                let names: Vec<&str> = p.arrows().iter().map(|&i| q.arrow(i).name.as_str()).collect();
                nq.path_from_names(&names).map(|np| (*c, np))
            })
            .collect::<Result<Vec<_>, _>>()
            .ok()?;
        relations.push(Relation::new(alg.field(), terms).ok()?);
    }
    BoundQuiverAlgebra::compile(alg.name(), nq, relations, alg.field(), alg.max_length())
        .ok()
        .map(Arc::new)
}

/// Halves the module budget, then drops arrows, while the failure persists.
pub fn shrink(
    check: Check,
    alg: &Arc<BoundQuiverAlgebra>,
    seed: u64,
    budget: usize,
) -> (Arc<BoundQuiverAlgebra>, usize) {
    let mut budget = budget;
    while budget > 1 && fails(check, alg, seed, budget / 2) {
        budget /= 2;
    }
    let mut alg = alg.clone();
    let mut i = alg.quiver().arrows().len();
    while i > 0 {
        i -= 1;
        if let Some(smaller) = without_arrow(&alg, i) {
            if fails(check, &smaller, seed, budget) {
                alg = smaller;
            }
        }
    }
    (alg, budget)
}

/// Re-runs a single draw, e.g. from a saved failure file.
pub fn replay(check: Check, alg: &Arc<BoundQuiverAlgebra>, draw_seed: u64, budget: usize) -> Outcome {
    run_check(check, &AlgebraCase::new(alg.clone(), 0), draw_seed, budget)
}

/// Writes `<dir>/<check>/<seed>.qalg` per failure and `<dir>/summary.json`.
pub fn write_failures(result: &CampaignResult, dir: &Path) -> io::Result<()> {
    if result.all_passed() {
        return Ok(());
    }
    for c in &result.checks {
        if c.failures.is_empty() {
            continue;
        }
        let sub = dir.join(c.name);
        fs::create_dir_all(&sub)?;
        for f in &c.failures {
            let body = format!(
                "# check: {}\n# detail: {}\n# replay: {}\n{}",
                c.name, f.detail, f.replay, f.presentation
            );
            fs::write(sub.join(format!("{}.qalg", f.draw_seed)), body)?;
        }
    }
    let json = serde_json::to_string_pretty(result).expect("serializable");
    fs::write(dir.join("summary.json"), json + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>(), Ok(c));
        }
        assert!("nope".parse::<Check>().is_err());
    }

    #[test]
    fn empty_campaign() {
        let r = run_campaign(&CampaignParams {
            count: 0,
            ..Default::default()
        });
        assert!(r.checks.is_empty());
        assert!(r.all_passed());
    }

    #[test]
    fn small_campaign_is_green_and_deterministic() {
        let params = CampaignParams {
            seed: 11,
            algebras: 3,
            count: 6,
            ..Default::default()
        };
        let a = run_campaign(&params);
        assert!(a.all_passed(), "{a:#?}");
        let b = run_campaign(&CampaignParams {
            exec: Execution::Sequential,
            ..params
        });
        assert_eq!(a, b);
    }

    #[test]
    fn shrinking_drops_irrelevant_arrows() {
        let alg = crate::catalog::looped_broom(4);
        let smaller = without_arrow(&alg, 5).unwrap();
        assert_eq!(smaller.quiver().arrows().len(), 5);
        assert!(smaller.dim() < alg.dim());
    }
}
