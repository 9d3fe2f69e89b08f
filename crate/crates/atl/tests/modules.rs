use atl::functors::{build_p, resphi_concrete};
use atl::labels::{dims, functor_table, Dim, Functor, ModuleLabel, QParam, ZSpec};
use atl::modcore::{build_i, build_l, build_s, build_w_cell};
use atl::scalar::Ring;
use proptest::prelude::*;

fn nk(max: u32) -> impl Strategy<Value = (u32, u32)> {
    (1..=max).prop_flat_map(|n| (Just(n), (0..=n / 2).prop_map(move |j| n - 2 * j)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn constructed_modules_satisfy_their_relations((n, k) in nk(6), r in -8i64..=8, sign in prop::bool::ANY, ell in 2u32..=5) {
        let z = ZSpec::power(if sign { 1 } else { -1 }, r);
        for ring in [Ring::parse("inst=2").unwrap(), Ring::root_of_unity(ell).unwrap()] {
            prop_assert!(build_w_cell(&ring, n, k, z).unwrap().relations_hold().unwrap());
            prop_assert!(build_l(&ring, n, k, z).unwrap().relations_hold().unwrap());
            prop_assert!(build_s(&ring, n, k).unwrap().relations_hold().unwrap());
        }
    }

    #[test]
    fn pullback_preserves_dimension((n, k) in nk(6), ell in 3u32..=5) {
        let ring = Ring::root_of_unity(ell).unwrap();
        let p = QParam::from_ring(&ring).unwrap();
        let mut mods = vec![build_s(&ring, n, k).unwrap(), build_i(&ring, n, k).unwrap()];
        if n <= 5 {
            mods.push(build_p(&ring, n, k).unwrap());
        }
        for x in mods {
            let y = resphi_concrete(&x).unwrap();
            prop_assert_eq!(y.dim(), x.dim());
            if let Some(label) = x.label() {
                let report = functor_table(Functor::ResPhi, &label, &p).unwrap();
                prop_assert_eq!(report.total_dim(), Some(x.dim() as u64), "{}", label);
            }
        }
    }
}

#[test]
fn label_dimensions_match_the_constructions() {
    for ell in 3..=4 {
        let ring = Ring::root_of_unity(ell).unwrap();
        let p = QParam::from_ring(&ring).unwrap();
        for n in 1..=6 {
            for k in (n % 2..=n).step_by(2) {
                for (label, m) in [(ModuleLabel::s(n, k), build_s(&ring, n, k)), (ModuleLabel::i(n, k), build_i(&ring, n, k))] {
                    assert_eq!(dims(&label, &p).unwrap(), Dim::Finite(m.unwrap().dim() as u64), "{label} at ℓ = {ell}");
                }
            }
        }
    }
}
