use super::*;
use crate::homsolver::{find_isomorphism, hom_space};
use crate::modcore::{build_m, build_s, Module};
use crate::scalar::Ring;

fn inst() -> Ring {
    Ring::parse("inst=2").unwrap()
}

fn sum(ms: &[Module]) -> Module {
    ms[1..].iter().fold(ms[0].clone(), |acc, m| acc.direct_sum(m).unwrap())
}

#[test]
fn two_single_strands() {
    let r = inst();
    let s = build_s(&r, 1, 1).unwrap();
    let f = tl_fuse_explicit(&s, &s, MAX_FREE).unwrap();
    assert_eq!(f.dim(), 2);
    assert!(f.relations_hold().unwrap());
    let want = sum(&[build_s(&r, 2, 0).unwrap(), build_s(&r, 2, 2).unwrap()]);
    assert!(find_isomorphism(&f, &want, 8).unwrap().is_some());
}

#[test]
fn two_pairs_of_defects() {
    let r = inst();
    let s = build_s(&r, 2, 2).unwrap();
    let f = tl_fuse_explicit(&s, &s, MAX_FREE).unwrap();
    assert_eq!(f.dim(), 6);
    let want = sum(&[build_s(&r, 4, 0).unwrap(), build_s(&r, 4, 2).unwrap(), build_s(&r, 4, 4).unwrap()]);
    assert!(find_isomorphism(&f, &want, 8).unwrap().is_some());
}

#[test]
fn fusing_with_zero_is_zero() {
    let r = inst();
    let z = Module::zero(&r, 2, crate::modcore::Acting::Regular);
    assert_eq!(tl_fuse_explicit(&build_s(&r, 2, 0).unwrap(), &z, MAX_FREE).unwrap().dim(), 0);
}

#[test]
fn idempotent_presentation_matches_the_quotient() {
    for ring in [inst(), Ring::root_of_unity(3).unwrap(), Ring::root_of_unity(4).unwrap()] {
        for (n1, r) in [(1, 1), (2, 0), (2, 2), (3, 1)] {
            for (n2, s) in [(1, 1), (2, 0), (2, 2)] {
                let a = build_s(&ring, n1, r).unwrap();
                let b = build_s(&ring, n2, s).unwrap();
                let slow = tl_fuse_explicit(&a, &b, MAX_FREE).unwrap();
                let fast = tl_fuse_standard(&ring, n1, r, n2, s).unwrap();
                assert!(fast.relations_hold().unwrap());
                assert_eq!(slow.dim(), fast.dim(), "S({n1},{r}) × S({n2},{s})");
                assert!(find_isomorphism(&slow, &fast, 8).unwrap().is_some(), "S({n1},{r}) × S({n2},{s})");
            }
        }
    }
}

#[test]
fn idempotent_presentation_needs_beta() {
    let r = Ring::root_of_unity(2).unwrap();
    assert!(matches!(tl_fuse_standard(&r, 2, 0, 1, 1), Err(FusionError::Refused(_))));
    assert!(tl_fuse_standard(&r, 1, 1, 1, 1).is_ok());
}

#[test]
fn quotients_fuse_to_quotients() {
    // S(n,k) is a quotient of M(n,k), so S × X is a quotient of M × X
    let r = Ring::root_of_unity(3).unwrap();
    for (n, k) in [(2, 0), (3, 1), (2, 2)] {
        let m = build_m(&r, n, k).unwrap();
        let s = build_s(&r, n, k).unwrap();
        let x = build_s(&r, 1, 1).unwrap();
        let fm = tl_fuse_explicit(&m, &x, MAX_FREE).unwrap();
        let fs = tl_fuse_explicit(&s, &x, MAX_FREE).unwrap();
        assert!(fs.dim() <= fm.dim());
        let h = hom_space(&fm, &fs).unwrap();
        let f = h.basis.iter().enumerate().fold(crate::linalg::Matrix::zeros(&h.ring, fs.dim(), fm.dim()), |acc, (i, b)| {
            acc.add(&b.scale(&h.ring.int(i as i64 + 1)))
        });
        assert_eq!(crate::linalg::rank(&h.ring, &f).0, fs.dim(), "M({n},{k})");
    }
}

mod pipelines {
    use super::super::*;
    use crate::labels::{ModuleLabel, QParam, ZSpec};
    use crate::scalar::Ring;

    #[test]
    fn symbolic_generic_rule() {
        let g = QParam::generic();
        let r = tl_fuse_symbolic(&ModuleLabel::s(3, 1), &ModuleLabel::s(4, 2), &g).unwrap();
        assert_eq!(r.render(), "S(7,1) ⊕ S(7,3)");
        let r = tl_fuse_symbolic(&ModuleLabel::s(3, 3), &ModuleLabel::s(4, 0), &g).unwrap();
        assert_eq!(r.render(), "S(7,3)");
        let p = QParam::root(3).unwrap();
        assert!(matches!(tl_fuse_symbolic(&ModuleLabel::s(3, 1), &ModuleLabel::s(3, 1), &p), Err(FusionError::Refused(_))));
    }

    #[test]
    fn showcase_at_ell_5() {
        let p = QParam::root(5).unwrap();
        let r = affine_fuse(FusionKind::Affine1, &ModuleLabel::w(5, 3), &ModuleLabel::w(7, 5), &p).unwrap();
        assert_eq!(r.render(), "Pa(12,4) ⊕ Pa(12,6) ⊕ Resφ S(12,8)");
        assert_eq!(r.total_dim(), Some(780));
        let off = affine_fuse(FusionKind::Affine1, &ModuleLabel::wcell(5, 3, ZSpec::z(3)), &ModuleLabel::wcell(7, 5, ZSpec::z(7)), &p).unwrap();
        assert!(off.is_zero());
        let on = affine_fuse(FusionKind::Affine1, &ModuleLabel::wcell(5, 3, ZSpec::z(5)), &ModuleLabel::wcell(7, 5, ZSpec::z(7)), &p).unwrap();
        assert_eq!(on, r);
    }

    #[test]
    fn crosscheck_small_pairs() {
        let r = Ring::parse("inst=2").unwrap();
        for kind in [FusionKind::Affine1, FusionKind::Affine2] {
            for (a, b) in [(ModuleLabel::w(2, 2), ModuleLabel::w(2, 2)), (ModuleLabel::w(2, 0), ModuleLabel::w(2, 2))] {
                let c = fuse_crosscheck(kind, &a, &b, &r, MAX_FREE).unwrap();
                assert!(c.pass, "{c:#?}");
            }
        }
        let c = fuse_crosscheck(FusionKind::Affine3, &ModuleLabel::l(2, 0, ZSpec::z(4)), &ModuleLabel::l(2, 1 + 1, ZSpec::z(4)), &r, MAX_FREE)
            .unwrap();
        assert!(c.pass, "{c:#?}");
    }

    #[test]
    fn crosscheck_at_ell_3() {
        // TL fusion at a root of unity is only explicit; ×¹ predictions come
        // from the quoted-free route and must be refused symbolically
        let r = Ring::root_of_unity(3).unwrap();
        let e = fuse_crosscheck(FusionKind::Affine1, &ModuleLabel::w(2, 0), &ModuleLabel::w(2, 2), &r, MAX_FREE);
        assert!(matches!(e, Err(FusionError::Refused(_))));
        let (m, _) = affine_fuse_explicit(FusionKind::Affine1, &ModuleLabel::w(2, 0), &ModuleLabel::w(2, 2), &r, MAX_FREE).unwrap();
        assert_eq!(m.dim(), 3);
        assert!(m.relations_hold().unwrap());
    }
}
