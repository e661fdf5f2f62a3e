use std::collections::BTreeSet;

use concept_core::{Bond, Classification, ConceptLattice, Relation};
use proptest::prelude::*;

fn relation(rows: usize, cols: usize) -> impl Strategy<Value = Relation> {
    prop::collection::vec(any::<bool>(), rows * cols)
        .prop_map(move |bits| Relation::from_fn(rows, cols, |i, j| bits[i * cols + j]))
}

/// Three relations `r: a×b`, `s: b×c`, `t: a×c` with dimensions up to `max`.
fn triple(max: usize) -> impl Strategy<Value = (Relation, Relation, Relation)> {
    (0..=max, 0..=max, 0..=max).prop_flat_map(|(a, b, c)| (relation(a, b), relation(b, c), relation(a, c)))
}

fn context(max: usize) -> impl Strategy<Value = Classification> {
    (0..=max, 0..=max).prop_flat_map(|(n, m)| relation(n, m)).prop_map(Classification::unlabelled)
}

fn left_oracle(r: &Relation, t: &Relation) -> Relation {
    Relation::from_fn(r.cols(), t.cols(), |b, c| (0..r.rows()).all(|a| !r.get(a, b) || t.get(a, c)))
}

fn right_oracle(t: &Relation, s: &Relation) -> Relation {
    Relation::from_fn(t.rows(), s.rows(), |a, b| (0..s.cols()).all(|c| !s.get(b, c) || t.get(a, c)))
}

fn compose_oracle(r: &Relation, s: &Relation) -> Relation {
    Relation::from_fn(r.rows(), s.cols(), |a, c| (0..r.cols()).any(|b| r.get(a, b) && s.get(b, c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn residuals_match_pointwise_definitions((r, s, t) in triple(9)) {
        prop_assert_eq!(r.left_residual(&t).unwrap(), left_oracle(&r, &t));
        prop_assert_eq!(t.right_residual(&s).unwrap(), right_oracle(&t, &s));
        prop_assert_eq!(r.compose(&s).unwrap(), compose_oracle(&r, &s));
    }

    #[test]
    fn residuation_is_adjoint_to_composition((r, s, t) in triple(7)) {
        let rs = r.compose(&s).unwrap().is_subset(&t).unwrap();
        prop_assert_eq!(rs, s.is_subset(&r.left_residual(&t).unwrap()).unwrap());
        prop_assert_eq!(rs, r.is_subset(&t.right_residual(&s).unwrap()).unwrap());
    }

    #[test]
    fn left_residual_preserves_composition((r1, r2, t) in (0usize..6, 0usize..6, 0usize..6, 0usize..6)
        .prop_flat_map(|(a, b, c, d)| (relation(a, b), relation(b, c), relation(a, d))))
    {
        let whole = r1.compose(&r2).unwrap().left_residual(&t).unwrap();
        let parts = r2.left_residual(&r1.left_residual(&t).unwrap()).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn right_residual_preserves_composition((s1, s2, t) in (0usize..6, 0usize..6, 0usize..6, 0usize..6)
        .prop_flat_map(|(a, b, c, d)| (relation(a, b), relation(b, c), relation(d, c))))
    {
        let whole = t.right_residual(&s1.compose(&s2).unwrap()).unwrap();
        let parts = t.right_residual(&s2).unwrap().right_residual(&s1).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn residuation_preserves_identity(t in (0usize..8, 0usize..8).prop_flat_map(|(a, b)| relation(a, b))) {
        prop_assert_eq!(Relation::identity(t.rows()).left_residual(&t).unwrap(), t.clone());
        prop_assert_eq!(t.right_residual(&Relation::identity(t.cols())).unwrap(), t);
    }

    #[test]
    fn transpose_dualizes_residuation((r, s, t) in triple(7)) {
        prop_assert_eq!(r.left_residual(&t).unwrap().transpose(), t.transpose().right_residual(&r.transpose()).unwrap());
        prop_assert_eq!(t.right_residual(&s).unwrap().transpose(), s.transpose().left_residual(&t.transpose()).unwrap());
    }

    #[test]
    fn unconstrained_associative_law((r, s, t) in (0usize..7, 0usize..7, 0usize..7, 0usize..7)
        .prop_flat_map(|(a, b, c, d)| (relation(a, c), relation(d, b), relation(a, b))))
    {
        let lhs = r.left_residual(&t).unwrap().right_residual(&s).unwrap();
        let rhs = r.left_residual(&t.right_residual(&s).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn constrained_associative_law((t, r0, s0) in (0usize..6, 0usize..6, 0usize..6)
        .prop_flat_map(|(a, b, c)| (relation(a, a), relation(a, b), relation(c, a))))
    {
        let r = t.right_residual(&r0.left_residual(&t).unwrap()).unwrap();
        let s = t.right_residual(&s0).unwrap().left_residual(&t).unwrap();
        prop_assert_eq!(&r, &t.right_residual(&r.left_residual(&t).unwrap()).unwrap());
        let lhs = t.right_residual(&s).unwrap().left_residual(&r).unwrap();
        let rhs = s.right_residual(&r.left_residual(&t).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivation_is_a_galois_connection(k in context(7), mask in any::<u16>()) {
        let n = k.num_instances();
        let set = concept_core::BitSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
        let intent = k.intent_of(&set).unwrap();
        let closed = k.extent_of(&intent).unwrap();
        prop_assert!(set.is_subset(&closed));
        prop_assert_eq!(k.intent_of(&closed).unwrap(), intent.clone());
        prop_assert_eq!(k.close_extent(&closed).unwrap(), closed);
        prop_assert!(k.is_intent(&intent).unwrap());
    }

    #[test]
    fn lattice_matches_brute_force(k in context(6)) {
        let lattice = ConceptLattice::build(&k).unwrap();
        let built: BTreeSet<_> = lattice.concepts().iter().map(|c| (c.extent.to_vec(), c.intent.to_vec())).collect();
        prop_assert_eq!(built.len(), lattice.len());
        let mut oracle = BTreeSet::new();
        for mask in 0u32..1 << k.num_instances() {
            let ext: Vec<usize> = (0..k.num_instances()).filter(|a| mask >> a & 1 == 1).collect();
            let int: Vec<usize> = (0..k.num_types()).filter(|&t| ext.iter().all(|&a| k.classifies(a, t))).collect();
            let closed: Vec<usize> = (0..k.num_instances()).filter(|&a| int.iter().all(|&t| k.classifies(a, t))).collect();
            oracle.insert((closed, int));
        }
        prop_assert_eq!(built, oracle);
        prop_assert!(lattice.decomposes(k.incidence()));
        prop_assert!(lattice.concept(lattice.top()).extent.is_full());
        prop_assert!(lattice.concept(lattice.bottom()).intent.is_full());
    }

    #[test]
    fn duality_swaps_extents_and_intents(k in context(6)) {
        let l = ConceptLattice::build(&k).unwrap();
        let d = ConceptLattice::build(&k.dual()).unwrap();
        prop_assert_eq!(l.len(), d.len());
        for c in l.concepts() {
            prop_assert!(d.index_of_extent(&c.intent).is_some());
        }
    }

    #[test]
    fn generated_bonds_contain_seed_and_absorb_identities(
        (a, b, seed) in (context(4), context(4)).prop_flat_map(|(a, b)| {
            let n = b.num_instances() * a.num_types();
            (Just(a), Just(b), prop::collection::vec(any::<bool>(), n))
        })
    ) {
        let (rows, cols) = (b.num_instances(), a.num_types());
        let seed = Relation::from_fn(rows, cols, |i, j| seed[i * cols + j]);
        let (a, b) = (std::sync::Arc::new(a), std::sync::Arc::new(b));
        let bond = Bond::generate(a.clone(), b.clone(), &seed).unwrap();
        prop_assert!(seed.is_subset(bond.rel()).unwrap());
        prop_assert!(Bond::is_bond(&a, &b, bond.rel()).unwrap());
        let ident = Bond::identity(a.clone());
        prop_assert_eq!(&ident.compose(&bond).unwrap(), &bond);
        prop_assert_eq!(&bond.compose(&Bond::identity(b.clone())).unwrap(), &bond);
    }
}
