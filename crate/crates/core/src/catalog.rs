//! Named families of bound quiver algebras used in tests, benches and docs.

use std::sync::Arc;

use crate::algebra::{BoundQuiverAlgebra, DEFAULT_MAX_LENGTH};
use crate::linalg::PrimeField;
use crate::quiver::{Quiver, Relation};

fn build(
    name: String,
    n: usize,
    arrows: Vec<(String, usize, usize)>,
    zero_paths: &[Vec<String>],
) -> Arc<BoundQuiverAlgebra> {
    let q = Quiver::new(n, arrows).expect("well-formed quiver");
    let relations = zero_paths
        .iter()
        .map(|names| {
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            Relation::monomial(q.path_from_names(&refs).expect("composable")).expect("length ≥ 2")
        })
        .collect();
    Arc::new(
        BoundQuiverAlgebra::compile(name, q, relations, PrimeField::default(), DEFAULT_MAX_LENGTH).expect("admissible"),
    )
}

fn a(k: usize) -> String {
    format!("a{k}")
}

/// Loop `a1` at vertex 1, a chain `1 → 2 → ⋯ → m` and two extra arrows
/// `1 → m+1`, `1 → m+2`. Relations: `a1²`, `a1·a{m+1}`, `a1·a{m+2}`,
/// `a1·a2` and the full chain `a2⋯am`. Needs `m ≥ 3`.
pub fn looped_broom(m: usize) -> Arc<BoundQuiverAlgebra> {
    assert!(m >= 3);
    let mut arrows = vec![(a(1), 1, 1)];
    arrows.extend((2..=m).map(|k| (a(k), k - 1, k)));
    arrows.push((a(m + 1), 1, m + 1));
    arrows.push((a(m + 2), 1, m + 2));
    let rels = vec![
        vec![a(1), a(1)],
        vec![a(1), a(m + 1)],
        vec![a(1), a(m + 2)],
        vec![a(1), a(2)],
        (2..=m).map(a).collect(),
    ];
    build(format!("looped_broom_{m}"), m + 2, arrows, &rels)
}

/// A free chain `1 → ⋯ → n`, a chain `1 → n+1 → ⋯ → 2n−1` with all length-2
/// paths zero, and two arrows `1 → 2n`, `1 → 2n+1`. Needs `n ≥ 3`.
pub fn two_chains(n: usize) -> Arc<BoundQuiverAlgebra> {
    assert!(n >= 3);
    let mut arrows: Vec<(String, usize, usize)> = (1..n).map(|k| (a(k), k, k + 1)).collect();
    arrows.push((a(n + 1), 1, n + 1));
    arrows.extend((n + 2..2 * n).map(|k| (a(k), k - 1, k)));
    arrows.push((a(2 * n), 1, 2 * n));
    arrows.push((a(2 * n + 1), 1, 2 * n + 1));
    let rels: Vec<Vec<String>> = (n + 1..2 * n - 1).map(|k| vec![a(k), a(k + 1)]).collect();
    build(format!("two_chains_{n}"), 2 * n + 1, arrows, &rels)
}

/// `1 → 2`.
pub fn a2() -> Arc<BoundQuiverAlgebra> {
    build("a2".into(), 2, vec![(a(1), 1, 2)], &[])
}

/// `n` vertices, no arrows.
pub fn semisimple(n: usize) -> Arc<BoundQuiverAlgebra> {
    build(format!("k{n}"), n, vec![], &[])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(looped_broom(10).dim(), 59);
        assert_eq!(looped_broom(10).loewy_length(), 9);
        assert_eq!(two_chains(6).dim(), 35);
        assert_eq!(two_chains(6).loewy_length(), 6);
        assert_eq!(two_chains(6).quiver().arrows().len(), 12);
        assert_eq!(a2().dim(), 3);
        assert_eq!(semisimple(3).loewy_length(), 1);
    }
}
