use loewy_core::charring::{enumerate_tables, multiply, phi_product, table_to_composition};
use loewy_core::oracles::w_order_formula;
use loewy_core::partitions::{enumerate_partitions, is_refinement, jm, jm_leq, pi_p};
use loewy_core::{CharElement, Composition, Partition};
use num_bigint::BigInt;
use proptest::prelude::*;

fn composition(max_parts: usize, max_part: usize) -> impl Strategy<Value = Composition> {
    prop::collection::vec(1..=max_part, 1..=max_parts).prop_map(|v| Composition::new(v).unwrap())
}

/// A random partition of some `n` in `1..=max_n`.
fn partition_of(n: usize) -> impl Strategy<Value = Partition> {
    let all = enumerate_partitions(n);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn triple(max_n: usize) -> impl Strategy<Value = (Partition, Partition, Partition)> {
    (1..=max_n).prop_flat_map(|n| (partition_of(n), partition_of(n), partition_of(n)))
}

/// Merges adjacent parts wherever the corresponding flag is set.
fn coarsen(c: &Composition, merges: &[bool]) -> Composition {
    let mut out: Vec<usize> = Vec::new();
    for (k, &part) in c.parts().iter().enumerate() {
        match out.last_mut() {
            Some(last) if merges.get(k).copied().unwrap_or(false) => *last += part,
            _ => out.push(part),
        }
    }
    Composition::new(out).unwrap()
}

fn phi(lambda: &Partition) -> CharElement {
    CharElement::phi(&lambda.as_composition())
}

proptest! {
    #[test]
    fn pi_p_ignores_order(c in composition(10, 5), p in prop::sample::select(vec![2usize, 3, 5, 7])) {
        let sorted = c.normalize();
        prop_assert_eq!(pi_p(c.parts(), p), pi_p(sorted.parts(), p));
        prop_assert!(pi_p(sorted.parts(), p) <= c.size() / p);
    }

    #[test]
    fn refinement_is_reflexive_and_transitive(
        c in composition(8, 4),
        m1 in prop::collection::vec(any::<bool>(), 8),
        m2 in prop::collection::vec(any::<bool>(), 8),
    ) {
        let mid = coarsen(&c, &m1);
        let top = coarsen(&mid, &m2);
        prop_assert!(is_refinement(&c, &c).unwrap());
        prop_assert!(is_refinement(&c, &mid).unwrap());
        prop_assert!(is_refinement(&mid, &top).unwrap());
        prop_assert!(is_refinement(&c, &top).unwrap());
        prop_assert!(is_refinement(&c.normalize().as_composition(), &top).unwrap());
    }

    #[test]
    fn refinement_antisymmetric_on_partitions((a, b, _) in triple(9)) {
        let (a, b) = (a.as_composition(), b.as_composition());
        if is_refinement(&a, &b).unwrap() && is_refinement(&b, &a).unwrap() {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn jm_leq_is_total((a, b, c) in triple(12), p in prop::sample::select(vec![2usize, 3])) {
        let (x, y, z) = (jm(a.parts(), p), jm(b.parts(), p), jm(c.parts(), p));
        prop_assert!(jm_leq(&x, &y) || jm_leq(&y, &x));
        if jm_leq(&x, &y) && jm_leq(&y, &z) {
            prop_assert!(jm_leq(&x, &z));
        }
    }

    #[test]
    fn random_triples_commute_and_associate((a, b, c) in triple(10)) {
        let (a, b, c) = (phi(&a), phi(&b), phi(&c));
        let ab = multiply(&a, &b).unwrap();
        prop_assert_eq!(&ab, &multiply(&b, &a).unwrap());
        let left = multiply(&ab, &c).unwrap();
        let right = multiply(&a, &multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_of_compositions_matches_sorted(
        a in composition(5, 3),
        shuffle in any::<prop::sample::Index>(),
    ) {
        let mut parts = a.parts().to_vec();
        let k = shuffle.index(parts.len());
        parts.rotate_left(k);
        let b = Composition::new(parts).unwrap();
        let ab = phi_product(&a, &b).unwrap();
        prop_assert_eq!(&ab, &phi_product(&a, &a).unwrap());
        prop_assert_eq!(&ab, &phi_product(&b, &b).unwrap());
    }

    #[test]
    fn tables_refine_both_margins((a, b, _) in triple(9)) {
        let (a, b) = (a.as_composition(), b.as_composition());
        let mut count = 0u64;
        for t in enumerate_tables(&a, &b).unwrap() {
            let nu = table_to_composition(&t);
            prop_assert!(is_refinement(&nu, &a).unwrap());
            prop_assert!(is_refinement(&nu, &b).unwrap());
            count += 1;
        }
        let product = phi_product(&a, &b).unwrap();
        prop_assert_eq!(product.coefficient_sum(), BigInt::from(count));
        for (nu, _) in product.terms() {
            prop_assert!(is_refinement(&nu.as_composition(), &a).unwrap());
            prop_assert!(is_refinement(&nu.as_composition(), &b).unwrap());
        }
    }
}

#[test]
fn exhaustive_commutative_associative_unital() {
    for n in 1..=6 {
        let basis: Vec<CharElement> = enumerate_partitions(n).iter().map(phi).collect();
        let unit = CharElement::one(n);
        for a in &basis {
            assert_eq!(&multiply(&unit, a).unwrap(), a);
            assert_eq!(&multiply(a, &unit).unwrap(), a);
            for b in &basis {
                let ab = multiply(a, b).unwrap();
                assert_eq!(ab, multiply(b, a).unwrap());
                for c in &basis {
                    let left = multiply(&ab, c).unwrap();
                    let right = multiply(a, &multiply(b, c).unwrap()).unwrap();
                    assert_eq!(left, right, "n={n}");
                }
            }
        }
    }
}

#[test]
fn leading_coefficient_of_powers() {
    for n in 1..=8 {
        for lambda in enumerate_partitions(n) {
            let w = BigInt::from(w_order_formula(lambda.parts()));
            let x = phi(&lambda);
            let square = multiply(&x, &x).unwrap();
            let cube = multiply(&square, &x).unwrap();
            assert_eq!(square.coefficient(&lambda), w, "{lambda}");
            assert_eq!(cube.coefficient(&lambda), &w * &w, "{lambda}");
        }
    }
}

#[test]
fn pi_p_bounds_attained() {
    for n in 1..=12 {
        for p in [2, 3, 5] {
            let max = enumerate_partitions(n)
                .iter()
                .map(|l| pi_p(l.parts(), p))
                .max()
                .unwrap();
            assert_eq!(max, n / p);
            assert_eq!(pi_p(Partition::singletons(n).parts(), p), n / p);
        }
    }
}
