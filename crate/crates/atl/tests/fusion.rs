use atl::functors::isomorphism_signature;
use atl::fusion::{affine_fuse, affine_fuse_explicit, tl_fuse_explicit, FusionKind, MAX_FREE};
use atl::labels::{DecompositionReport, ModuleLabel, QParam, ZSpec};
use atl::modcore::{build_m, build_s};
use atl::scalar::Ring;
use proptest::prelude::*;

fn label(max: u32) -> impl Strategy<Value = ModuleLabel> {
    (1..=max, 0u32..3).prop_flat_map(|(n, fam)| {
        (0..=n / 2).prop_map(move |j| {
            let k = n - 2 * j;
            let z = ZSpec::z(k as i64 + 2);
            match fam {
                0 => ModuleLabel::w(n, k),
                1 => ModuleLabel::wcell(n, k, z),
                _ => ModuleLabel::l(n, k, z),
            }
        })
    })
}

fn kind() -> impl Strategy<Value = FusionKind> {
    prop::sample::select(vec![FusionKind::Affine1, FusionKind::Affine2, FusionKind::Affine3])
}

fn fuse(kind: FusionKind, a: &ModuleLabel, b: &ModuleLabel) -> Option<DecompositionReport> {
    // ×³ is refused outside irreducible factors
    affine_fuse(kind, a, b, &QParam::generic()).ok()
}

fn multiset(r: &DecompositionReport) -> Vec<(ModuleLabel, u32)> {
    let mut v: Vec<_> = r.summands.iter().map(|s| (s.label, s.mult)).collect();
    v.sort();
    v
}

/// Fuses every summand of `r` with `c`; L labels at z_{t+2} stand for their
/// own Resφ images, so they feed back into ×¹ and ×³.
fn fuse_report(kind: FusionKind, r: &DecompositionReport, c: &ModuleLabel, left: bool) -> Vec<(ModuleLabel, u32)> {
    let mut acc = DecompositionReport::default();
    for s in &r.summands {
        let out = if left { fuse(kind, &s.label, c) } else { fuse(kind, c, &s.label) }.expect("summands stay in range");
        acc.extend(out, s.mult);
    }
    multiset(&acc)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fusion_is_commutative(k in kind(), a in label(6), b in label(6)) {
        let (x, y) = (fuse(k, &a, &b), fuse(k, &b, &a));
        prop_assert_eq!(x.is_some(), y.is_some());
        if let (Some(x), Some(y)) = (x, y) {
            prop_assert_eq!(multiset(&x), multiset(&y));
        }
    }

    #[test]
    fn fusion_is_associative(k in prop::sample::select(vec![FusionKind::Affine1, FusionKind::Affine3]), a in label(4), b in label(4), c in label(4)) {
        let (Some(ab), Some(bc)) = (fuse(k, &a, &b), fuse(k, &b, &c)) else { return Ok(()) };
        prop_assert_eq!(fuse_report(k, &ab, &c, true), fuse_report(k, &bc, &a, false));
    }
}

#[test]
fn explicit_dimension_is_the_reported_total() {
    let ring = Ring::parse("inst=2").unwrap();
    let p = QParam::generic();
    for (a, b) in [(ModuleLabel::w(2, 0), ModuleLabel::w(3, 1)), (ModuleLabel::l(3, 3, ZSpec::z(5)), ModuleLabel::wcell(2, 2, ZSpec::z(4)))] {
        let report = affine_fuse(FusionKind::Affine1, &a, &b, &p).unwrap();
        let (m, _) = affine_fuse_explicit(FusionKind::Affine1, &a, &b, &ring, MAX_FREE).unwrap();
        assert_eq!(Some(m.dim() as u64), report.total_dim(), "{a} {b}");
        assert!(m.relations_hold().unwrap());
    }
}

#[test]
fn explicit_tl_fusion_commutes_up_to_isomorphism() {
    let ring = Ring::parse("inst=2").unwrap();
    let (a, b) = (build_s(&ring, 3, 1).unwrap(), build_s(&ring, 2, 0).unwrap());
    let ab = tl_fuse_explicit(&a, &b, MAX_FREE).unwrap();
    let ba = tl_fuse_explicit(&b, &a, MAX_FREE).unwrap();
    assert!(isomorphism_signature(&ab, &ba).unwrap().is_certified());
}

#[test]
fn fusing_a_quotient_gives_a_smaller_module() {
    // S is a quotient of M, and induction is right exact
    let ring = Ring::root_of_unity(3).unwrap();
    for (n, k) in [(2, 0), (3, 1), (4, 2)] {
        let s = build_s(&ring, n, k).unwrap();
        let m = build_m(&ring, n, k).unwrap();
        let strand = build_s(&ring, 1, 1).unwrap();
        let fs = tl_fuse_explicit(&s, &strand, MAX_FREE).unwrap();
        let fm = tl_fuse_explicit(&m, &strand, MAX_FREE).unwrap();
        assert!(fs.dim() <= fm.dim(), "({n},{k})");
        assert!(atl::homsolver::hom_space(&fm, &fs).unwrap().dim >= 1);
    }
}
