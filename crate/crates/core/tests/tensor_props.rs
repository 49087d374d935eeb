//! Property tests for the structural tensor operations.

use proptest::prelude::*;

use frobhoch_core::builtins;
use frobhoch_core::tensor::{combine, tensor_product, TensorElement};
use frobhoch_core::Scalar;

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::ratio(n, d))
}

/// Arbitrary tensor of the given arity over H*(T²), whose mixed parities
/// exercise every sign path.
fn arb_tensor(arity: usize) -> impl Strategy<Value = TensorElement> {
    let keys = proptest::collection::vec(
        (proptest::collection::vec(0u32..4, arity), arb_scalar()),
        0..5,
    );
    keys.prop_map(move |terms| {
        let basis = builtins::torus2().basis().clone();
        TensorElement::from_terms(basis, arity, terms)
    })
}

// Note: each generated tensor carries its own algebra instance, so the
// strategies below generate index/coefficient data and rebuild over one
// shared algebra inside the test.
fn rebuild(basis: &std::sync::Arc<frobhoch_core::GradedBasis>, t: &TensorElement) -> TensorElement {
    TensorElement::from_terms(
        basis.clone(),
        t.arity(),
        t.terms().map(|(k, c)| (k.clone(), c.clone())),
    )
}

proptest! {
    #[test]
    fn combine_is_linear(u in arb_tensor(2), v in arb_tensor(2), a in arb_scalar(), b in arb_scalar()) {
        let alg = builtins::torus2();
        let basis = alg.basis();
        let u = rebuild(basis, &u);
        let v = rebuild(basis, &v);
        let lhs = combine(&[a.clone(), b.clone()], &[u.clone(), v.clone()]).unwrap();
        let rhs = u.scaled(&a).add(&v.scaled(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_product_is_associative(u in arb_tensor(1), v in arb_tensor(2), w in arb_tensor(1)) {
        let alg = builtins::torus2();
        let basis = alg.basis();
        let (u, v, w) = (rebuild(basis, &u), rebuild(basis, &v), rebuild(basis, &w));
        let lhs = tensor_product(&tensor_product(&u, &v).unwrap(), &w).unwrap();
        let rhs = tensor_product(&u, &tensor_product(&v, &w).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_product_distributes(u in arb_tensor(1), v in arb_tensor(2), w in arb_tensor(2)) {
        let alg = builtins::torus2();
        let basis = alg.basis();
        let (u, v, w) = (rebuild(basis, &u), rebuild(basis, &v), rebuild(basis, &w));
        let lhs = tensor_product(&u, &v.add(&w).unwrap()).unwrap();
        let rhs = tensor_product(&u, &v).unwrap().add(&tensor_product(&u, &w).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn koszul_swap_is_an_involution(t in arb_tensor(3), slot in 0usize..2) {
        let alg = builtins::torus2();
        let t = rebuild(alg.basis(), &t);
        let back = t.koszul_swap(slot).unwrap().koszul_swap(slot).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn permutation_signs_compose(t in arb_tensor(3)) {
        let alg = builtins::torus2();
        let t = rebuild(alg.basis(), &t);
        // rotating three slots two ways around agrees with the direct 2-cycle
        let rot = t.koszul_permute(&[1, 2, 0]).unwrap();
        let rot2 = rot.koszul_permute(&[1, 2, 0]).unwrap();
        let direct = t.koszul_permute(&[2, 0, 1]).unwrap();
        prop_assert_eq!(rot2, direct);
    }

    #[test]
    fn canonical_form_is_unique(t in arb_tensor(2), u in arb_tensor(2)) {
        let alg = builtins::torus2();
        let t = rebuild(alg.basis(), &t);
        let u = rebuild(alg.basis(), &u);
        // t + u - u == t termwise, exactly
        let round = t.add(&u).unwrap().sub(&u).unwrap();
        prop_assert_eq!(round, t);
    }

    #[test]
    fn pairing_matches_contraction(t in arb_tensor(2), u in arb_tensor(2)) {
        let alg = builtins::torus2();
        let t = rebuild(alg.basis(), &t);
        let u = rebuild(alg.basis(), &u);
        // ⟨t, u⟩ is bilinear: scale one side
        let two = Scalar::from_int(2);
        let lhs = alg.pair_tensors(&t.scaled(&two), &u).unwrap();
        let rhs = &two * &alg.pair_tensors(&t, &u).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #[test]
    fn permutation_sign_matches_adjacent_swap_decomposition(
        t in arb_tensor(4),
        seed in proptest::collection::vec(0usize..4, 4)
    ) {
        let alg = builtins::torus2();
        let t = rebuild(alg.basis(), &t);
        // build a permutation from the seed by selection
        let mut pool: Vec<usize> = (0..4).collect();
        let mut perm = Vec::with_capacity(4);
        for s in seed {
            perm.push(pool.remove(s % pool.len()));
        }
        let direct = t.koszul_permute(&perm).unwrap();
        // decompose: repeatedly bubble the required source to the front of
        // the remaining slots by adjacent swaps
        let mut current = t.clone();
        let mut order: Vec<usize> = (0..4).collect();
        for target in 0..4 {
            let from = order.iter().position(|&x| x == perm[target]).unwrap();
            for k in (target..from).rev() {
                current = current.koszul_swap(k).unwrap();
                order.swap(k, k + 1);
            }
        }
        prop_assert_eq!(direct, current);
    }
}
