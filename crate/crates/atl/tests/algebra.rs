use atl::algebra::{Letter, Phi, Word};
use atl::diagram::Diagram;
use atl::fusion::tl_diagrams;
use atl::scalar::Ring;
use proptest::prelude::*;

fn letters(n: u32) -> impl Strategy<Value = Vec<Letter>> {
    let pick = move |i: u32| match i {
        i if i < n && n >= 2 => Letter::E(i as i64),
        i if i == n => Letter::Tau,
        _ => Letter::TauInv,
    };
    prop::collection::vec((0..n + 2).prop_map(pick), 0..=6)
}

fn words() -> impl Strategy<Value = (u32, Vec<Letter>, Vec<Letter>)> {
    (1u32..=5).prop_flat_map(|n| (Just(n), letters(n), letters(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn phi_is_multiplicative((n, a, b) in words()) {
        for ring in [Ring::generic(), Ring::root_of_unity(3).unwrap()] {
            let phi = Phi::new(&ring, n).unwrap();
            let (wa, wb) = (Word::new(n, a.clone()).unwrap(), Word::new(n, b.clone()).unwrap());
            let lhs = phi.apply(&wa.concat(&wb).unwrap()).unwrap();
            let rhs = phi.apply(&wa).unwrap().compose(&phi.apply(&wb).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

fn catalan(n: u64) -> u64 {
    (0..n).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

#[test]
fn regular_diagrams_embed_as_rank_zero() {
    for n in 1..=6 {
        let ds = tl_diagrams(n);
        assert_eq!(ds.len() as u64, catalan(n as u64), "n = {n}");
        let distinct: std::collections::HashSet<&Diagram> = ds.iter().collect();
        assert_eq!(distinct.len(), ds.len());
        assert!(ds.iter().all(|d| d.rank() == 0 && d.is_regular()));
    }
}
