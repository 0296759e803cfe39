use proptest::prelude::*;

use qalg_core::algebra::AlgebraElement;
use qalg_core::harness::{random_algebra, random_module, random_ses, GenParams};
use qalg_core::linalg::{Matrix, PrimeField, Subspace};
use qalg_core::qdsl::{load_algebra, parse_presentation, PresentationAst};
use qalg_core::repr::{first_syzygy, projective_cover, Module, Submodule};
use qalg_core::torsion::{layer_length, torsion_radical, SimpleSet};

const P: u32 = 101;

fn field() -> PrimeField {
    PrimeField::new(P).unwrap()
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(0..P, c), r)
            .prop_map(move |rows| Matrix::from_rows(field(), c, &rows))
    })
}

fn small_algebra(seed: u64) -> std::sync::Arc<qalg_core::algebra::BoundQuiverAlgebra> {
    random_algebra(&GenParams {
        seed,
        max_vertices: 4,
        max_arrows: 6,
        max_algebra_dim: 30,
        ..GenParams::default()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in matrix(7)) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn grassmann_formula(a in matrix(6), b in matrix(6)) {
        prop_assume!(a.cols() == b.cols());
        let u = Subspace::from_matrix(&a);
        let w = Subspace::from_matrix(&b);
        let s = u.sum(&w).unwrap();
        let i = u.intersect(&w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&w));
        prop_assert!(u.is_subspace_of(&s) && w.is_subspace_of(&s));
    }

    #[test]
    fn rref_is_canonical(m in matrix(6), c in 1..P) {
        let (r1, p1) = m.rref();
        let (r2, p2) = m.scale(c).rref();
        prop_assert_eq!(r1, r2);
        prop_assert_eq!(p1, p2);
    }

    #[test]
    fn multiplication_is_associative(seed in any::<u64>(), coeffs in prop::collection::vec(0..P, 90)) {
        let alg = small_algebra(seed);
        let d = alg.dim();
        let elt = |k: usize| AlgebraElement { coeffs: (0..d).map(|i| coeffs[(k * d + i) % coeffs.len()]).collect() };
        let (x, y, z) = (elt(0), elt(1), elt(2));
        let left = alg.multiply(&alg.multiply(&x, &y), &z);
        let right = alg.multiply(&x, &alg.multiply(&y, &z));
        prop_assert_eq!(left, right);
        prop_assert_eq!(alg.multiply(&alg.one(), &x), x.clone());
        prop_assert_eq!(alg.multiply(&x, &alg.one()), x);
    }

    #[test]
    fn random_modules_satisfy_relations(seed in any::<u64>(), mseed in any::<u64>()) {
        let alg = small_algebra(seed);
        let m = random_module(&alg, mseed, 16);
        prop_assert!(m.check_relations().is_ok());
        prop_assert!(m.dim() <= 16);
        let cover = projective_cover(&m);
        prop_assert_eq!(cover.projective().dim(), m.dim() + first_syzygy(&m).dim());
    }

    #[test]
    fn ses_dimensions_add_up(seed in any::<u64>(), mseed in any::<u64>()) {
        let alg = small_algebra(seed);
        let m = random_module(&alg, mseed, 16);
        let ses = random_ses(&m, mseed ^ 1);
        for v in 0..alg.num_vertices() {
            prop_assert_eq!(ses.l.dims()[v] + ses.n.dims()[v], m.dims()[v]);
        }
        prop_assert!(ses.inclusion.is_homomorphism(&ses.l, &ses.m));
        prop_assert!(ses.projection.is_surjective());
    }

    #[test]
    fn torsion_radical_bounds(seed in any::<u64>(), mseed in any::<u64>(), mask in prop::collection::vec(any::<bool>(), 4)) {
        let alg = small_algebra(seed);
        let m = random_module(&alg, mseed, 16);
        let n = alg.num_vertices();
        let v = SimpleSet::from_mask(mask[..n].to_vec());
        prop_assert!(torsion_radical(&m, &SimpleSet::empty(n)) == Submodule::full(&m));
        prop_assert!(torsion_radical(&m, &SimpleSet::all(n)).is_zero());
        prop_assert!(layer_length(&m, &v).value <= m.loewy_length());
        prop_assert_eq!(layer_length(&m, &SimpleSet::empty(n)).value, m.loewy_length());
    }

    #[test]
    fn parser_never_panics(bytes in prop::collection::vec(any::<u8>(), 0..200)) {
        let text = String::from_utf8_lossy(&bytes);
        let _ = load_algebra(&text);
    }

    #[test]
    fn mutated_examples_never_panic(pos in 0usize..400, byte in any::<u8>(), cut in any::<bool>()) {
        let base = include_str!("../../cli/examples/ex1_m10.qalg");
        let mut bytes = base.as_bytes().to_vec();
        let at = pos % bytes.len();
        if cut { bytes.truncate(at) } else { bytes[at] = byte }
        let text = String::from_utf8_lossy(&bytes);
        if let Err(e) = load_algebra(&text) {
            prop_assert!(e.pos().line >= 1);
            prop_assert!(e.to_string().starts_with(&e.pos().to_string()));
        }
    }

    #[test]
    fn random_algebras_round_trip(seed in any::<u64>()) {
        let alg = small_algebra(seed);
        let text = PresentationAst::from_algebra(&alg).pretty();
        let ast = parse_presentation(&text).unwrap();
        prop_assert_eq!(ast.pretty(), text.clone());
        let (_, back) = load_algebra(&text).unwrap();
        prop_assert_eq!(back.dim(), alg.dim());
        prop_assert_eq!(Module::regular(&back).dims().to_vec(), Module::regular(&alg).dims().to_vec());
    }
}
