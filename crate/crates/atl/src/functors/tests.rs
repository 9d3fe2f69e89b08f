use super::*;
use crate::algebra::{regular_words, Letter, Phi};
use crate::labels::ZSpec;
use crate::modcore::{build_l, build_w_cell};

fn element_matrix(x: &Module, e: &crate::algebra::Element) -> Matrix {
    let words = regular_words(x.n());
    let ring = x.ring();
    let mut acc = Matrix::zeros(ring, x.dim(), x.dim());
    for (d, c) in e.terms() {
        let w = &words[&d.without_loops()];
        let letters = w.iter().map(|&i| Letter::U(i)).collect();
        let m = x.word_matrix(&crate::algebra::Word::new(x.n(), letters).unwrap()).unwrap();
        acc = acc.add(&m.scale(&(c * &ring.pow(&ring.beta(), d.nc_loops() as u64))));
    }
    acc
}

#[test]
fn pullback_matches_the_images_of_phi() {
    let r = Ring::generic();
    for n in 1..=5u32 {
        let phi = Phi::new(&r, n).unwrap();
        for k in (n % 2..=n).step_by(2) {
            let x = build_s(&r, n, k).unwrap();
            let y = resphi_concrete(&x).unwrap();
            for (l, m) in y.generators() {
                assert_eq!(*m, element_matrix(&x, phi.letter(*l)), "n={n} k={k} {l}");
            }
        }
    }
}

#[test]
fn identities_on_standard_modules() {
    let r = Ring::parse("inst=2").unwrap();
    let mods: Vec<Module> = [(4, 0), (4, 2), (4, 4)].iter().map(|&(n, k)| build_s(&r, n, k).unwrap()).collect();
    let rep = functor_identity_check(4, &mods).unwrap();
    assert!(rep.pass(), "{rep:?}");
    let rep = functor_identity_check(2, &[build_s(&r, 2, 0).unwrap()]).unwrap();
    assert!(rep.pass());
    assert!(resphi_concrete(&Module::zero(&r, 3, Acting::Regular)).unwrap().dim() == 0);
}

#[test]
fn projective_covers_at_ell_3() {
    let r = Ring::root_of_unity(3).unwrap();
    let p = QParam::from_ring(&r).unwrap();
    for n in 1..=6u32 {
        for k in (n % 2..=n).step_by(2) {
            let m = build_p(&r, n, k).unwrap();
            assert_eq!(m.dim() as u64, crate::labels::dim_p(&p, n as i64, k as i64), "P({n},{k})");
            assert!(m.relations_hold().unwrap());
            let want = if p.minus(k as i64).is_some() { 2 } else { 1 };
            assert_eq!(end_dim(&m).unwrap(), want, "End P({n},{k})");
        }
    }
}

#[test]
fn pulled_back_projectives_have_two_dimensional_ends() {
    let r = Ring::root_of_unity(3).unwrap();
    let mods: Vec<Module> = [1, 3, 5].iter().map(|&k| build_p(&r, 5, k).unwrap()).collect();
    // only k = 3 has a reflection 1 = 3⁻; the others are standard
    for (m, want) in mods.iter().zip([1, 2, 1]) {
        let y = resphi_concrete(m).unwrap();
        assert_eq!(end_dim(&y).unwrap(), want, "{}", m.name());
    }
    assert!(functor_identity_check(5, &mods).unwrap().pass());
}

#[test]
fn irreducible_pullback_is_the_head_of_a_cell_module() {
    let r = Ring::parse("inst=2").unwrap();
    let x = resphi_concrete(&build_s(&r, 4, 2).unwrap()).unwrap();
    let l = build_l(&r, 4, 2, ZSpec::z(4)).unwrap();
    assert!(isomorphism_signature(&x, &l).unwrap().is_certified());
}

#[test]
fn pullback_of_a_standard_is_a_quotient_of_a_cell_module() {
    // Resφ S_{n,k} = W_{n,k;z_{k+2}} / W_{n,k+2;z_k}
    let r = Ring::root_of_unity(3).unwrap();
    for (n, k) in [(4, 0), (4, 2), (5, 1), (5, 3), (6, 2)] {
        let w = build_w_cell(&r, n, k, ZSpec::z(k as i64 + 2)).unwrap();
        let sub = build_w_cell(&r, n, k + 2, ZSpec::z(k as i64)).unwrap();
        let h = hom_space(&sub, &w).unwrap();
        let mut cols = Vec::new();
        for f in &h.basis {
            cols.extend((0..f.cols()).map(|j| f.column(j)));
        }
        let span = w.over_field().unwrap().submodule_closure(&cols).unwrap();
        let q = w.quotient(&span).unwrap();
        let x = resphi_concrete(&build_s(&r, n, k).unwrap()).unwrap();
        assert!(isomorphism_signature(&x, &q).unwrap().is_certified(), "n={n} k={k}");
    }
}

#[test]
fn signatures() {
    let r = Ring::parse("inst=2").unwrap();
    let a = build_w_cell(&r, 2, 0, ZSpec::z(1)).unwrap();
    let b = build_w_cell(&r, 2, 2, ZSpec::z(3)).unwrap();
    assert!(matches!(isomorphism_signature(&a, &b).unwrap(), IsoVerdict::Distinguished { .. }));
    assert!(isomorphism_signature(&a, &a).unwrap().is_certified());
    let c = resphi_concrete(&build_s(&r, 4, 2).unwrap()).unwrap();
    let d = resphi_concrete(&build_s(&r, 4, 0).unwrap()).unwrap();
    assert!(!isomorphism_signature(&c, &d).unwrap().is_certified());
}
