use super::*;
use crate::algebra::Letter;
use crate::labels::ZSpec;
use crate::linalg::{rank, Matrix};
use crate::scalar::{Ring, XRole};

fn all_pass(m: &Module) -> bool {
    let checks = m.relation_checks().unwrap();
    for c in checks.iter().filter(|c| !c.pass) {
        eprintln!("{}: {} fails", m.name(), c.relation);
    }
    checks.iter().all(|c| c.pass)
}

#[test]
fn standard_dimensions() {
    let r = Ring::generic();
    assert_eq!(build_s(&r, 5, 3).unwrap().dim(), 4);
    assert_eq!(build_s(&r, 4, 0).unwrap().dim(), 2);
    let top = build_s(&r, 4, 4).unwrap();
    assert_eq!(top.dim(), 1);
    assert!(top.generators().iter().all(|(_, m)| m.is_zero()));
    assert!(build_s(&r, 4, 1).is_err());
}

#[test]
fn standard_and_m_relations() {
    let r = Ring::generic();
    for n in 1..=6 {
        for k in (n % 2..=n).step_by(2) {
            assert!(all_pass(&build_s(&r, n, k).unwrap()));
        }
    }
    let catalan = [1, 1, 2, 5, 14, 42];
    for (n, k) in [(3, 1), (4, 2), (2, 4), (4, 0)] {
        let m = build_m(&r, n, k).unwrap();
        assert_eq!(m.dim(), catalan[((n + k) / 2) as usize]);
        assert!(all_pass(&m));
    }
}

#[test]
fn s_is_m_modulo_non_monic() {
    let r = Ring::parse("inst=2").unwrap();
    let (n, k) = (4, 2);
    let m = build_m(&r, n, k).unwrap();
    let non_monic: Vec<Vec<_>> = m
        .basis()
        .iter()
        .enumerate()
        .filter(|(_, b)| crate::diagram::Diagram::parse(b).unwrap().through_lines() < k)
        .map(|(i, _)| (0..m.dim()).map(|j| if i == j { r.one() } else { r.zero() }).collect())
        .collect();
    let q = m.quotient(&non_monic).unwrap();
    let s = build_s(&r, n, k).unwrap();
    assert_eq!(q.dim(), s.dim());
    assert!(all_pass(&q));
}

#[test]
fn cell_modules() {
    let r = Ring::generic();
    let w = build_w_cell(&r, 4, 2, ZSpec::z(3)).unwrap();
    assert_eq!(w.dim(), 4);
    assert!(all_pass(&w));
    // τ on W_{n,n;z} is z
    let top = build_w_cell(&r, 3, 3, ZSpec::power(-1, 2)).unwrap();
    assert_eq!(top.matrix(Letter::Tau).unwrap().get(0, 0), &ZSpec::power(-1, 2).value(&r).unwrap());
    // a non-contractible loop in W_{2,0} is worth z + z⁻¹
    let tz = Ring::generic_x(XRole::Twist);
    let w20 = build_w_cell(&tz, 2, 0, ZSpec::Formal).unwrap();
    let arc = w20.basis().iter().position(|b| b == "()").unwrap();
    let e0 = w20.matrix(Letter::E(0)).unwrap();
    let loop_val = &tz.x_pow(1).unwrap() + &tz.x_pow(-1).unwrap();
    assert!((0..2).any(|i| e0.get(i, arc) == &loop_val));
    for n in 1..=5 {
        for k in (n % 2..=n).step_by(2) {
            assert!(all_pass(&build_w_cell(&tz, n, k, ZSpec::Formal).unwrap()), "{n},{k}");
        }
    }
    let c = Ring::root_of_unity(3).unwrap();
    assert!(all_pass(&build_w_cell(&c, 4, 0, ZSpec::z(2)).unwrap()));
}

#[test]
fn free_module_specializes() {
    let t = Ring::generic_x(XRole::Winding);
    let tz = Ring::generic_x(XRole::Twist);
    let z = tz.x_pow(1).unwrap();
    for (n, k) in [(4, 2), (4, 0), (3, 1), (2, 2)] {
        let free = build_w_free(&t, n, k).unwrap();
        assert!(all_pass(&free));
        let sp = specialize_free(&free, k, &tz, &z).unwrap();
        let cell = build_w_cell(&tz, n, k, ZSpec::Formal).unwrap();
        assert_eq!(sp.generators().iter().map(|g| &g.1).collect::<Vec<_>>(), cell.generators().iter().map(|g| &g.1).collect::<Vec<_>>());
    }
    let w11 = build_w_free(&t, 1, 1).unwrap();
    assert_eq!(w11.dim(), 1);
    assert_eq!(w11.matrix(Letter::Tau).unwrap().get(0, 0), &t.x_pow(1).unwrap());
}

#[test]
fn gram_examples() {
    let tz = Ring::generic_x(XRole::Twist);
    let g = gram_matrix(&tz, 2, 0, ZSpec::Formal).unwrap();
    assert_eq!((g.rank, g.certified), (2, true));
    let r = Ring::generic();
    // z_2 = v² = −q
    let g = gram_matrix(&r, 2, 0, ZSpec::z(2)).unwrap();
    assert_eq!(g.rank, 1);
    assert_eq!(g.rank + g.radical_dim, 2);
    let g = gram_matrix(&r, 4, 4, ZSpec::z(6)).unwrap();
    assert_eq!(g.rank, 1);
}

/// ⟨f x, y⟩ = ⟨x, f^t y⟩ with the right argument in W_{z⁻¹}.
#[test]
fn gram_adjointness() {
    let tz = Ring::generic_x(XRole::Twist);
    let z = tz.x_pow(1).unwrap();
    let z_inv = tz.x_pow(-1).unwrap();
    for n in 1..=4 {
        for k in (n % 2..=n).step_by(2) {
            let g = cell::gram_entries(&tz, n, k, &z).unwrap();
            let wz = cell::build_w_twisted(&tz, n, k, &z).unwrap();
            let wzi = cell::build_w_twisted(&tz, n, k, &z_inv).unwrap();
            for (l, m) in wz.generators() {
                let lt = match l {
                    Letter::Tau => Letter::TauInv,
                    Letter::TauInv => Letter::Tau,
                    other => *other,
                };
                let lhs = m.transpose().mul(&tz, &g);
                let rhs = g.mul(&tz, wzi.matrix(lt).unwrap());
                assert_eq!(lhs, rhs, "n={n} k={k} {l}");
            }
        }
    }
}

#[test]
fn induced_standard_structure() {
    let t = Ring::generic_x(XRole::Winding);
    for (n, k) in [(4, 2), (3, 1), (4, 0), (2, 2), (5, 3), (4, 4), (3, 3), (1, 1)] {
        let ind = InducedStandard::new(&t, n, k).unwrap();
        let rep = ind.check(2).unwrap();
        assert!(rep.pass(), "{n},{k}: {rep:?}");
    }
}

#[test]
fn resar_examples() {
    let r = Ring::generic();
    let strata = resar_filtration(&r, 4, 2, Some(ZSpec::z(1))).unwrap();
    assert_eq!(strata.iter().map(|s| s.dim).collect::<Vec<_>>(), vec![3, 1]);
    assert!(strata.iter().all(|s| s.invariant && s.matches_s));
    let strata = resar_filtration(&r, 2, 0, Some(ZSpec::z(1))).unwrap();
    assert_eq!(strata.iter().map(|s| s.dim).collect::<Vec<_>>(), vec![1, 1]);
    assert!(strata.iter().all(|s| s.invariant && s.matches_s));
    let c = Ring::root_of_unity(3).unwrap();
    assert!(resar_filtration(&c, 4, 2, Some(ZSpec::z(1))).is_err());
}

#[test]
fn peirce_examples() {
    for (n, b) in [(2, 1), (3, 1), (4, 2)] {
        let rep = peirce_count_check(n, b).unwrap();
        assert!(rep.pass, "{rep:?}");
    }
}

#[test]
fn quotient_and_submodule_of_a_sum() {
    let r = Ring::parse("inst=2").unwrap();
    let a = build_s(&r, 4, 2).unwrap();
    let b = build_s(&r, 4, 0).unwrap();
    let sum = a.direct_sum(&b).unwrap();
    let first: Vec<Vec<_>> = (0..3).map(|i| (0..5).map(|j| if i == j { r.one() } else { r.zero() }).collect()).collect();
    let sub = sum.submodule(&first).unwrap();
    assert_eq!(sub.dim(), 3);
    let q = sum.quotient(&first).unwrap();
    assert_eq!(q.dim(), 2);
    assert_eq!(q.generators()[0].1, b.generators()[0].1);
    let _ = (rank(&r, &Matrix::identity(&r, 2)), ());
}
