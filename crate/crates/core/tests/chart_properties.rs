use proptest::prelude::*;
use toruschart::unknotting::{chart_coloring_count, coloring_lower_bound, unknotting_bounds};
use toruschart::{BraidWord, GluingMatrix, Letter, TorusCoveringChart};

fn word_strategy(max_m: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (1..=max_m).prop_flat_map(move |m| {
        let letters = if m > 1 {
            prop::collection::vec((1..m, any::<bool>()), 0..=max_len).boxed()
        } else {
            Just(Vec::new()).boxed()
        };
        letters.prop_map(move |ls| {
            BraidWord::new(m, ls.into_iter().map(|(i, inv)| Letter { index: i, inverse: inv }).collect()).unwrap()
        })
    })
}

/// Random members of the extendable subgroup: first row (±1, 0, 0), a
/// unimodular lower-right block with even entry sum, free first column.
fn extendable_strategy() -> impl Strategy<Value = GluingMatrix> {
    let gens: [[[i64; 2]; 2]; 4] = [[[1, 2], [0, 1]], [[1, 0], [2, 1]], [[0, 1], [1, 0]], [[-1, 0], [0, 1]]];
    (prop::collection::vec(0..4usize, 0..6), any::<bool>(), -5i64..=5, -5i64..=5).prop_map(move |(picks, neg, x, y)| {
        let mut b = [[1i64, 0], [0, 1]];
        for p in picks {
            let g = gens[p];
            b = [
                [b[0][0] * g[0][0] + b[0][1] * g[1][0], b[0][0] * g[0][1] + b[0][1] * g[1][1]],
                [b[1][0] * g[0][0] + b[1][1] * g[1][0], b[1][0] * g[0][1] + b[1][1] * g[1][1]],
            ];
        }
        let s = if neg { -1 } else { 1 };
        GluingMatrix([[s, 0, 0], [x, b[0][0], b[0][1]], [y, b[1][0], b[1][1]]])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn constructors_pass_validation(beta in word_strategy(5, 8)) {
        for c in [
            TorusCoveringChart::spun(&beta),
            TorusCoveringChart::turned_spun(&beta),
            TorusCoveringChart::turned_spun_inverse(&beta),
            TorusCoveringChart::symmetry_spun(&beta),
        ] {
            let again = TorusCoveringChart::new(c.degree(), c.v_braid().clone(), c.h_braid().clone(), vec![], vec![], 0, 0);
            prop_assert!(again.is_ok());
        }
    }

    #[test]
    fn turning_preserves_commutation_and_components(beta in word_strategy(5, 6), a in 0..3usize, b in 0..3usize) {
        let c = TorusCoveringChart::from_braids(beta.pow(a), beta.pow(b)).unwrap();
        let t = c.turn().unwrap();
        prop_assert_eq!(t.degree(), c.degree());
        prop_assert!(t.v_braid().commutes_with(t.h_braid()).unwrap());
        prop_assert_eq!(t.component_count().unwrap(), c.component_count().unwrap());
        let tt = t.turn().unwrap();
        let expected = c.h_braid().concat(&c.v_braid().pow(2)).unwrap();
        prop_assert_eq!(tt.h_braid(), &expected);
        prop_assert_eq!(chart_coloring_count(&t, 3).unwrap(), chart_coloring_count(&c, 3).unwrap());
    }

    #[test]
    fn lower_bound_invariant_under_turn(beta in word_strategy(5, 8)) {
        let c = TorusCoveringChart::spun(&beta);
        prop_assume!(c.component_count().unwrap() == 1);
        let t = c.turn().unwrap();
        prop_assert_eq!(coloring_lower_bound(&c, 3).unwrap(), coloring_lower_bound(&t, 3).unwrap());
        let r = unknotting_bounds(&c).unwrap();
        prop_assert!(r.is_consistent());
        prop_assert_eq!(r, unknotting_bounds(&t).unwrap());
    }

    #[test]
    fn chart_documents_roundtrip(beta in word_strategy(5, 8), free in prop::collection::vec(1usize..5, 0..3), extra in 0usize..3) {
        let m = beta.degree();
        prop_assume!(m > 1 || free.is_empty());
        let free: Vec<usize> = free.into_iter().map(|l| 1 + (l - 1) % m.max(2).saturating_sub(1).max(1)).filter(|&l| l < m).collect();
        let black = 2 * free.len() + extra;
        let c = TorusCoveringChart::new(m, beta.clone(), beta.pow(2), free, vec![], black, 0).unwrap();
        prop_assert_eq!(TorusCoveringChart::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn extendable_subgroup_is_closed(a in extendable_strategy(), b in extendable_strategy()) {
        prop_assert!(a.is_extendable().unwrap());
        prop_assert!(b.is_extendable().unwrap());
        prop_assert!(a.mul(&b).is_extendable().unwrap());
        prop_assert!(a.inverse().unwrap().is_extendable().unwrap());
    }
}

#[test]
fn theorem_family_exact_for_small_n() {
    for n in 1..=5u32 {
        let beta = BraidWord::cubed_chain(n as usize);
        for c in [TorusCoveringChart::spun(&beta), TorusCoveringChart::turned_spun(&beta)] {
            let r = unknotting_bounds(&c).unwrap();
            assert_eq!(r.exact, Some(n));
            assert_eq!(r.coloring_count, 3u64.pow(n + 1));
        }
    }
}

#[test]
fn turning_matrix_powers() {
    let tau = GluingMatrix::TURNING;
    for k in 0..8u32 {
        assert_eq!(tau.pow(k).is_extendable().unwrap(), k % 2 == 0, "τ^{k}");
    }
}
