use super::*;
use crate::catalog::{a2, looped_broom, semisimple, two_chains};

#[test]
fn a2_projectives() {
    let a = a2();
    assert_eq!(Module::projective(&a, 1).dims(), &[1, 1]);
    assert_eq!(Module::projective(&a, 2), Module::simple(&a, 2));
    assert_eq!(Module::regular(&a).dim(), 3);
}

#[test]
fn projective_dims() {
    let a = looped_broom(10);
    assert_eq!(Module::projective(&a, 2).dim(), 9);
    assert_eq!(Module::projective(&a, 2).loewy_length(), 9);
    let b = two_chains(6);
    assert_eq!(Module::projective(&b, 7).dim(), 2);
    let total: usize = (1..=13).map(|i| Module::projective(&b, i).dim()).sum();
    assert_eq!(total, b.dim());
}

#[test]
fn radical_and_top() {
    let a = looped_broom(10);
    let p1 = Module::projective(&a, 1);
    let (rad, _) = p1.submodule(&p1.radical());
    assert_eq!(rad.dim(), p1.dim() - 1);
    let top = rad.top_dims();
    let support: Vec<usize> = (0..12).filter(|&v| top[v] > 0).map(|v| v + 1).collect();
    assert_eq!(support, vec![1, 2, 11, 12]);
    assert!(Module::simple(&a, 3).radical().is_zero());
}

#[test]
fn hom_dimensions() {
    let a = a2();
    let (s1, s2, p1) = (Module::simple(&a, 1), Module::simple(&a, 2), Module::projective(&a, 1));
    assert_eq!(hom_space(&s1, &s2).len(), 0);
    assert_eq!(hom_space(&s1, &s1).len(), 1);
    assert_eq!(hom_space(&p1, &s1).len(), 1);
    assert_eq!(hom_space(&s1, &p1).len(), 0);
    assert_eq!(hom_space(&s2, &p1).len(), 1);
    for h in hom_space(&p1, &Module::regular(&a)) {
        assert!(h.is_homomorphism(&p1, &Module::regular(&a)));
    }
    let b = looped_broom(10);
    assert_eq!(hom_space(&Module::projective(&b, 1), &Module::simple(&b, 1)).len(), 1);
}

#[test]
fn covers_and_syzygies() {
    let b = two_chains(6);
    let p1 = Module::projective(&b, 1);
    let (rad, _) = p1.submodule(&p1.radical());
    let cover = projective_cover(&rad);
    assert_eq!(cover.summand_vertices(), vec![2, 7, 12, 13]);
    assert!(cover.epi().is_surjective());
    assert!(cover.epi().is_homomorphism(cover.projective(), &rad));
    assert!(is_iso(
        &syzygy(&Module::simple(&b, 7), 1),
        &Module::simple(&b, 8),
        DEFAULT_ISO_TRIALS
    ));
    assert!(syzygy(&Module::projective(&b, 3), 1).is_zero());
    let pc = projective_cover(&Module::projective(&b, 3));
    assert_eq!(pc.summand_vertices(), vec![3]);
}

#[test]
fn periodic_syzygy() {
    let a = looped_broom(10);
    let s1 = Module::simple(&a, 1);
    let o2 = syzygy(&s1, 2);
    let o3 = syzygy(&s1, 3);
    assert!(is_iso(&o2, &o3, DEFAULT_ISO_TRIALS));
    assert_eq!(o3.dims(), &[1; 12][..]);
    let (core, stripped) = strip_projective_summands(&o2);
    assert!(stripped.contains(&10));
    assert_eq!(core.dims()[9], 0);
}

#[test]
fn iso_basics() {
    let a = looped_broom(10);
    let m = syzygy(&Module::simple(&a, 1), 1);
    assert!(is_iso(&m, &m, 8));
    assert!(!is_iso(&Module::simple(&a, 1), &Module::simple(&a, 2), 8));
}

#[test]
fn add_membership() {
    let a = a2();
    let s1 = Module::simple(&a, 1);
    let s2 = Module::simple(&a, 2);
    let sum = Module::direct_sum(&a, &[&s1, &s2]);
    assert!(in_add(&s1, &sum));
    assert!(!in_add(&Module::projective(&a, 1), &s1));
    let p1 = Module::projective(&a, 1);
    assert!(in_add(&Module::direct_sum(&a, &[&p1, &p1]), &p1));
    assert!(!in_add(&p1, &sum));
}

#[test]
fn strip_examples() {
    let a = a2();
    let m = Module::direct_sum(&a, &[&Module::projective(&a, 1), &Module::simple(&a, 1)]);
    let (core, stripped) = strip_projective_summands(&m);
    assert_eq!(stripped, vec![1]);
    assert!(is_iso(&core, &Module::simple(&a, 1), 8));
    let (core, stripped) = strip_projective_summands(&Module::simple(&a, 1));
    assert!(stripped.is_empty());
    assert_eq!(core.dims(), &[1, 0]);
}

#[test]
fn generated_and_quotient() {
    let a = a2();
    let p1 = Module::projective(&a, 1);
    let u = p1.generated(&[(1, vec![1])]);
    assert!(is_iso(&p1.submodule(&u).0, &Module::simple(&a, 2), 4));
    let (q, proj) = p1.quotient(&p1.radical());
    assert!(is_iso(&q, &Module::simple(&a, 1), 4));
    assert!(proj.is_homomorphism(&p1, &q));
    assert_eq!(p1.generated(&[(0, vec![1])]), Submodule::full(&p1));
}

#[test]
fn supported_submodule() {
    let a = looped_broom(10);
    let p1 = Module::projective(&a, 1);
    let keep: Vec<bool> = (0..12).map(|v| (2..=8).contains(&v)).collect();
    let w = largest_submodule_supported_on(&p1, &keep);
    assert!(w.is_closed_in(&p1));
    assert_eq!(w.dim(), 7);
    let p2 = Module::projective(&a, 2);
    let keep: Vec<bool> = (0..12).map(|v| v >= 5).collect();
    assert_eq!(largest_submodule_supported_on(&p2, &keep).dim(), 5);
}

#[test]
fn semisimple_everything_projective() {
    let a = semisimple(3);
    assert!(is_projective(&Module::simple(&a, 2)));
    assert!(is_projective(&Module::regular(&a)));
}
