use atl::functors::build_p;
use atl::homsolver::{end_dim, hom_space, hom_space_nullspace};
use atl::labels::{regular_hom_dim, Family, QParam, ZSpec};
use atl::modcore::{build_i, build_s, build_w_cell, Module};
use atl::scalar::Ring;
use proptest::prelude::*;

fn sum(ring: &Ring, n: u32, ks: &[u32]) -> Module {
    let mut out = build_s(ring, n, ks[0]).unwrap();
    for &k in &ks[1..] {
        out = out.direct_sum(&build_s(ring, n, k).unwrap()).unwrap();
    }
    out
}

fn summands(n: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec((0..=n / 2).prop_map(move |j| n - 2 * j), 1..=3)
}

fn case() -> impl Strategy<Value = (u32, Vec<u32>, Vec<u32>)> {
    (2u32..=5).prop_flat_map(|n| (Just(n), summands(n), summands(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Standard modules are simple and pairwise distinct for generic q.
    #[test]
    fn hom_of_sums_counts_matching_pairs((n, a, b) in case()) {
        let ring = Ring::parse("inst=2").unwrap();
        let want = a.iter().map(|x| b.iter().filter(|y| *y == x).count()).sum::<usize>();
        let h = hom_space(&sum(&ring, n, &a), &sum(&ring, n, &b)).unwrap();
        prop_assert_eq!(h.dim, want);
        prop_assert!(h.verify(&sum(&ring, n, &a), &sum(&ring, n, &b)).unwrap());
    }
}

#[test]
fn unrelated_twists_give_kronecker_delta() {
    let ring = Ring::parse("inst=2").unwrap();
    for n in 1..=6 {
        // v^{n+5} satisfies neither z² = (−q)^j nor z² = (−q)^{−j} for j ≤ n
        let z = ZSpec::z(n as i64 + 5);
        let mods: Vec<(u32, Module)> = (n % 2..=n).step_by(2).map(|k| (k, build_w_cell(&ring, n, k, z).unwrap())).collect();
        for (k, a) in &mods {
            for (k2, b) in &mods {
                assert_eq!(hom_space(a, b).unwrap().dim, usize::from(k == k2), "n={n} {k}→{k2}");
            }
        }
    }
}

#[test]
fn hom_table_matches_the_solver() {
    for ell in [3, 4] {
        let ring = Ring::root_of_unity(ell).unwrap();
        let p = QParam::from_ring(&ring).unwrap();
        for n in 2..=5 {
            let mut mods = Vec::new();
            for k in (n % 2..=n).step_by(2) {
                mods.push(((Family::S, k), build_s(&ring, n, k).unwrap()));
                mods.push(((Family::I, k), build_i(&ring, n, k).unwrap()));
                mods.push(((Family::P, k), build_p(&ring, n, k).unwrap()));
            }
            for (x, a) in &mods {
                for (y, b) in &mods {
                    if a.dim() == 0 || b.dim() == 0 {
                        continue;
                    }
                    let table = regular_hom_dim(&p, n, *x, *y).unwrap();
                    let solved = hom_space(a, b).unwrap();
                    assert_eq!(solved.dim as u32, table, "ℓ={ell} n={n} Hom({x:?}, {y:?})");
                }
            }
        }
    }
}

#[test]
fn cyclic_and_nullspace_methods_agree_on_projectives() {
    let ring = Ring::root_of_unity(3).unwrap();
    let (p, s) = (build_p(&ring, 5, 3).unwrap(), build_s(&ring, 5, 3).unwrap());
    for (a, b) in [(&p, &s), (&s, &p), (&p, &p)] {
        assert_eq!(hom_space(a, b).unwrap().dim, hom_space_nullspace(a, b).unwrap().dim);
    }
    assert_eq!(end_dim(&p).unwrap(), 2);
}
