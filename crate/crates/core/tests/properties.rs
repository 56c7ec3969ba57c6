use proptest::prelude::*;

use weakorder_cycles::family::max_weight;
use weakorder_cycles::{euler_tour, generate, verify, verify_symbols, Family, TransitionGraph};

/// Families with an Euler tour for the paired overlap.
fn cyclic_family() -> impl Strategy<Value = (Family, usize)> {
    prop_oneof![
        (1usize..=5).prop_map(|n| {
            let f = Family::all_weak_orders(n).unwrap();
            let s = f.ucycle_overlap();
            (f, s)
        }),
        (2usize..=5)
            .prop_flat_map(|n| (Just(n), 1..n))
            .prop_map(|(n, s)| (Family::all_weak_orders(n).unwrap(), s)),
        (2usize..=6)
            .prop_flat_map(|n| (Just(n), 1..=max_weight(n)))
            .prop_map(|(n, k)| (Family::fixed_weight_prefix(n, k).unwrap(), n - 2)),
        (3usize..=6)
            .prop_flat_map(|n| (Just(n), 0..(n as u32 - 1)))
            .prop_map(|(n, h)| (Family::fixed_height(n, h).unwrap(), n - 1)),
        (1usize..=6)
            .prop_flat_map(|n| (Just(n), if n == 1 { 0..1 } else { 1..n }))
            .prop_map(|(n, s)| (Family::binary(n).unwrap(), s)),
        proptest::collection::vec(0u32..3, 3..=5)
            .prop_map(|ms| (Family::multiset_perms(ms).unwrap(), 1)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_cycles_verify((f, s) in cyclic_family()) {
        let c = generate(&f, s).unwrap();
        prop_assert_eq!(c.len() as u128, f.count().unwrap() * (f.word_length() - s).max(1) as u128);
        prop_assert!(verify(&c, &f).unwrap().ok);
    }

    #[test]
    fn canonical_form_is_an_aligned_rotation((f, s) in cyclic_family()) {
        let c = generate(&f, s).unwrap();
        let canon = c.clone().canonical();
        prop_assert!(verify(&canon, &f).unwrap().ok);
        prop_assert_eq!(canon.clone().canonical().symbols, canon.symbols.clone());
        let doubled = [c.symbols.as_slice(), c.symbols.as_slice()].concat();
        let step = c.step();
        let aligned = (0..c.len()).step_by(step).any(|i| doubled[i..i + c.len()] == canon.symbols[..]);
        prop_assert!(aligned);
    }

    #[test]
    fn tour_uses_every_edge_once((f, s) in cyclic_family()) {
        let g = TransitionGraph::build(&f, s).unwrap();
        prop_assert!(g.is_balanced());
        let tour = euler_tour(&g).unwrap();
        prop_assert_eq!(tour.len(), g.edge_count());
        let mut seen = tour.clone();
        seen.sort_unstable();
        seen.dedup();
        prop_assert_eq!(seen.len(), tour.len());
        for (i, &e) in tour.iter().enumerate() {
            let next = tour[(i + 1) % tour.len()];
            prop_assert_eq!(g.head(e), g.tail(next));
        }
    }

    #[test]
    fn single_mutation_is_rejected((f, s) in cyclic_family(), pos in any::<prop::sample::Index>(), bump in 1u32..4) {
        let c = generate(&f, s).unwrap();
        let mut symbols = c.symbols.clone();
        let i = pos.index(symbols.len());
        symbols[i] += bump;
        let r = verify_symbols(&symbols, s, &f).unwrap();
        prop_assert!(!r.ok);
    }
}
