//! Images of labelled modules under Indφ, Resφ, Indar and Resar, and the
//! Hom table among irreducible, standard and projective TL_n-modules.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::dims::{dims, validate, Dim};
use super::order::{successors, Pair};
use super::{Family, LabelError, ModuleLabel, QParam, ZSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Functor {
    IndPhi,
    ResPhi,
    IndAr,
    ResAr,
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Functor::IndPhi => "Indφ",
            Functor::ResPhi => "Resφ",
            Functor::IndAr => "Indar",
            Functor::ResAr => "Resar",
        })
    }
}

impl FromStr for Functor {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "indphi" | "indφ" => Functor::IndPhi,
            "resphi" | "resφ" => Functor::ResPhi,
            "indar" => Functor::IndAr,
            "resar" => Functor::ResAr,
            _ => return Err(LabelError::Parse(s.to_string())),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub label: ModuleLabel,
    /// Set when the summand is only known as the image of `label`.
    pub via: Option<Functor>,
    pub mult: u32,
    pub dim: Dim,
    /// Loewy layers, head first.
    pub loewy: Option<Vec<Vec<ModuleLabel>>>,
}

impl Summand {
    fn plain(label: ModuleLabel, p: &QParam) -> Result<Summand, LabelError> {
        Ok(Summand { label, via: None, mult: 1, dim: dims(&label, p)?, loewy: None })
    }

    pub fn name(&self) -> String {
        match self.via {
            Some(f) => format!("{f} {}", self.label),
            None => self.label.to_string(),
        }
    }

    pub fn key(&self) -> (ModuleLabel, Option<Functor>) {
        (self.label, self.via)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub summands: Vec<Summand>,
    pub notes: Vec<String>,
}

impl DecompositionReport {
    pub fn zero(note: &str) -> Self {
        DecompositionReport { summands: Vec::new(), notes: vec![note.to_string()] }
    }

    fn single(s: Summand) -> Self {
        DecompositionReport { summands: vec![s], notes: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    /// Σ mult · dim, when every summand is finite.
    pub fn total_dim(&self) -> Option<u64> {
        self.summands.iter().map(|s| s.dim.finite().map(|d| d * s.mult as u64)).sum()
    }

    /// Adds `s`, merging with an equal summand.
    pub fn push(&mut self, s: Summand) {
        match self.summands.iter_mut().find(|t| t.key() == s.key()) {
            Some(t) => t.mult += s.mult,
            None => self.summands.push(s),
        }
    }

    pub fn extend(&mut self, other: DecompositionReport, times: u32) {
        for mut s in other.summands {
            s.mult *= times;
            self.push(s);
        }
        for n in other.notes {
            if !self.notes.contains(&n) {
                self.notes.push(n);
            }
        }
    }

    /// Sorted (summand, multiplicity) pairs, for comparisons.
    pub fn multiset(&self) -> Vec<((ModuleLabel, Option<Functor>), u32)> {
        let mut out: Vec<_> = self.summands.iter().map(|s| (s.key(), s.mult)).collect();
        out.sort();
        out
    }

    pub fn render(&self) -> String {
        if self.summands.is_empty() {
            return "0".into();
        }
        self.summands
            .iter()
            .map(|s| if s.mult == 1 { s.name() } else { format!("{}·{}", s.mult, s.name()) })
            .collect::<Vec<_>>()
            .join(" ⊕ ")
    }
}

fn refuse(msg: impl Into<String>) -> LabelError {
    LabelError::Uncovered(msg.into())
}

fn l_top(n: u32, k: u32) -> ModuleLabel {
    ModuleLabel::l(n, k, ZSpec::z(k as i64 + 2))
}

/// k⁺ when it lies in Λ_n.
fn plus_in(p: &QParam, n: u32, k: u32) -> Option<u32> {
    p.plus(k as i64).filter(|&x| x <= n as i64).map(|x| x as u32)
}

fn minus_of(p: &QParam, k: u32) -> Option<u32> {
    p.minus(k as i64).map(|x| x as u32)
}

fn no_beta_zero_k0(p: &QParam, n: u32, k: u32) -> Result<(), LabelError> {
    if p.beta_zero() && k == 0 && n.is_multiple_of(2) && n > 0 {
        return Err(refuse("β = 0 with n even: the trivial head I(n,0) is excluded, so k = 0 is not covered"));
    }
    Ok(())
}

/// Resφ of S_{n,k}: L_{n,k;z_{k+2}} when S is irreducible, otherwise the
/// non-split extension of L_{n,k;z_{k+2}} by L_{n,k⁺;z_{k⁺+2}}.
fn resphi_s(p: &QParam, n: u32, k: u32) -> Result<Summand, LabelError> {
    no_beta_zero_k0(p, n, k)?;
    match plus_in(p, n, k) {
        None => Summand::plain(l_top(n, k), p),
        Some(kp) => Ok(Summand {
            label: ModuleLabel::s(n, k),
            via: Some(Functor::ResPhi),
            mult: 1,
            dim: dims(&ModuleLabel::s(n, k), p)?,
            loewy: Some(vec![vec![l_top(n, k)], vec![l_top(n, kp)]]),
        }),
    }
}

/// Pa_{n,k} = Resφ P_{n,k}: the diamond L_k / (L_{k⁻} ⊕ L_{k⁺}) / L_k, with
/// the L_{k⁺} corner absent when k⁺ > n. Without k⁻, P = S.
fn resphi_p(p: &QParam, n: u32, k: u32) -> Result<Summand, LabelError> {
    no_beta_zero_k0(p, n, k)?;
    let label = ModuleLabel::new(Family::Pa, n, k, None)?;
    let Some(km) = minus_of(p, k) else {
        let s = resphi_s(p, n, k)?;
        return Ok(Summand { label, via: None, mult: 1, dim: dims(&label, p)?, loewy: s.loewy.or(Some(vec![vec![l_top(n, k)]])) });
    };
    let mut middle = vec![l_top(n, km)];
    middle.extend(plus_in(p, n, k).map(|kp| l_top(n, kp)));
    Ok(Summand {
        label,
        via: None,
        mult: 1,
        dim: dims(&label, p)?,
        loewy: Some(vec![vec![l_top(n, k)], middle, vec![l_top(n, k)]]),
    })
}

fn on_locus(p: &QParam, k: u32, z: ZSpec) -> bool {
    z != ZSpec::Formal && p.same_pair(k, z, ZSpec::z(k as i64 + 2))
}

/// The image of a labelled module under a functor, from the closed forms
/// available; anything else is refused.
pub fn functor_table(dir: Functor, x: &ModuleLabel, p: &QParam) -> Result<DecompositionReport, LabelError> {
    validate(x, p)?;
    let (n, k) = (x.n, x.k);
    if dir == Functor::ResPhi || dir == Functor::IndAr {
        if x.family.is_affine() {
            return Err(refuse(format!("{dir} takes TL_n-modules, not {x}")));
        }
    } else if !x.family.is_affine() {
        return Err(refuse(format!("{dir} takes aTL_n-modules, not {x}")));
    }
    if n == 0 && matches!(dir, Functor::IndPhi | Functor::ResPhi) {
        return Err(refuse("φ is defined for n ≥ 1"));
    }
    match dir {
        Functor::IndPhi => match x.family {
            Family::W => Ok(DecompositionReport::single(Summand::plain(ModuleLabel::s(n, k), p)?)),
            Family::Wcell => {
                if on_locus(p, k, x.z.unwrap()) {
                    Ok(DecompositionReport::single(Summand::plain(ModuleLabel::s(n, k), p)?))
                } else {
                    Ok(DecompositionReport::zero("the twist is off z_{k+2}"))
                }
            }
            Family::L => {
                if on_locus(p, k, x.z.unwrap()) {
                    no_beta_zero_k0(p, n, k)?;
                    Ok(DecompositionReport::single(Summand::plain(ModuleLabel::i(n, k), p)?))
                } else {
                    // a quotient of Indφ W_{n,k;z} = 0
                    Ok(DecompositionReport::zero("the twist is off z_{k+2}; Indφ is right exact"))
                }
            }
            Family::Pa => Ok(DecompositionReport::single(Summand::plain(ModuleLabel::p(n, k), p)?)),
            Family::IndarS => Ok(DecompositionReport::single(Summand::plain(ModuleLabel::s(n, k), p)?)),
            _ => unreachable!("affine families"),
        },
        Functor::ResPhi => match x.family {
            Family::I => {
                no_beta_zero_k0(p, n, k)?;
                Ok(DecompositionReport::single(Summand::plain(l_top(n, k), p)?))
            }
            Family::S => Ok(DecompositionReport::single(resphi_s(p, n, k)?)),
            Family::P => Ok(DecompositionReport::single(resphi_p(p, n, k)?)),
            _ => Err(refuse(format!("Resφ {x}: only I, S and P images are known"))),
        },
        Functor::IndAr => match x.family {
            Family::S => {
                let label = ModuleLabel::new(Family::IndarS, n, k, None)?;
                let mut r = DecompositionReport::single(Summand::plain(label, p)?);
                if k == 1 || (k == 0 && !p.beta_zero()) {
                    r.notes.push(format!("≅ W({n},{k})"));
                } else {
                    r.notes.push(format!("extension of W({n},{k}) by Indar S({n},{})", k - 2));
                }
                Ok(r)
            }
            _ => Err(refuse(format!("Indar {x}: only standard modules are induced"))),
        },
        Functor::ResAr => {
            if x.family == Family::Pa {
                return Ok(DecompositionReport::single(Summand::plain(ModuleLabel::p(n, k), p)?));
            }
            if !p.is_generic() {
                return Err(refuse("generic q only: Resar of affine modules is known for generic q"));
            }
            let top = match x.family {
                Family::Wcell => (n - k) / 2 + 1,
                Family::L => {
                    let succ = successors(p, Pair::new(p, k, x.z.unwrap()), n);
                    match succ.first() {
                        None => (n - k) / 2 + 1,
                        Some((y, _)) => (y.k - k) / 2,
                    }
                }
                _ => return Err(refuse(format!("Resar {x} is infinite-dimensional or unknown"))),
            };
            let mut r = DecompositionReport::default();
            for t in 0..top {
                r.push(Summand::plain(ModuleLabel::s(n, k + 2 * t), p)?);
            }
            Ok(r)
        }
    }
}

/// dim Hom_{TL_n}(M, N) for M, N among I, S and P.
pub fn regular_hom_dim(p: &QParam, n: u32, m: (Family, u32), t: (Family, u32)) -> Result<u32, LabelError> {
    for &(f, k) in [&m, &t] {
        ModuleLabel::new(f, n, k, None)?;
        if !matches!(f, Family::I | Family::S | Family::P) {
            return Err(refuse(format!("the Hom table covers I, S and P, not {f}")));
        }
    }
    let Some(norm_m) = normalize(p, n, m)? else { return Ok(0) };
    let Some(norm_t) = normalize(p, n, t)? else { return Ok(0) };
    let ((fm, k), (ft, kk)) = (norm_m, norm_t);
    let d = |a: Option<u32>| u32::from(a == Some(kk));
    if p.is_generic() || p.is_critical(k as i64) || p.is_critical(kk as i64) {
        return Ok(u32::from(k == kk));
    }
    let (km, kp) = (minus_of(p, k), plus_in(p, n, k));
    Ok(match (fm, ft) {
        (Family::I, Family::I) => d(Some(k)),
        (Family::I, Family::S) => d(km),
        (Family::I, Family::P) => d(Some(k)),
        (Family::S, Family::I) => d(Some(k)),
        (Family::S, Family::S) => d(Some(k)) + d(km),
        (Family::S, Family::P) => d(Some(k)) + d(kp),
        (Family::P, Family::I) => d(Some(k)),
        (Family::P, Family::S) => d(Some(k)) + d(km),
        (Family::P, Family::P) => 2 * d(Some(k)) + d(km) + d(kp),
        _ => unreachable!("checked above"),
    })
}

/// Reading conventions: S_{k_R} = I_{k_R}, P_{k_L} = S_{k_L}, and with
/// β = 0, n even: S_{n,0} = I_{n,2} and I_{n,0} = 0 (`None`).
fn normalize(p: &QParam, n: u32, (f, k): (Family, u32)) -> Result<Option<(Family, u32)>, LabelError> {
    if p.beta_zero() && n.is_multiple_of(2) && n > 0 && k == 0 {
        return match f {
            Family::I => Ok(None),
            Family::S => Ok(if n >= 2 { Some((Family::I, 2)) } else { None }),
            _ => Err(LabelError::Excluded(format!("P({n},0) at β = 0"))),
        };
    }
    if p.is_generic() || p.is_critical(k as i64) {
        return Ok(Some((Family::I, k)));
    }
    let f = if f == Family::P && minus_of(p, k).is_none() { Family::S } else { f };
    let f = if f == Family::S && plus_in(p, n, k).is_none() { Family::I } else { f };
    Ok(Some((f, k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn induction_along_phi_vanishes_off_the_locus() {
        let g = QParam::generic();
        assert!(functor_table(Functor::IndPhi, &ModuleLabel::wcell(4, 2, ZSpec::z(2)), &g).unwrap().is_zero());
        let r = functor_table(Functor::IndPhi, &ModuleLabel::wcell(4, 2, ZSpec::z(4)), &g).unwrap();
        assert_eq!(r.render(), "S(4,2)");
    }

    #[test]
    fn pulled_back_projective_is_a_diamond() {
        let p = QParam::root(3).unwrap();
        let r = functor_table(Functor::ResPhi, &ModuleLabel::p(8, 4), &p).unwrap();
        let s = &r.summands[0];
        assert_eq!(s.label.family, Family::Pa);
        let ks: Vec<Vec<u32>> = s.loewy.as_ref().unwrap().iter().map(|l| l.iter().map(|x| x.k).collect()).collect();
        assert_eq!(ks, vec![vec![4], vec![0, 6], vec![4]]);
        assert_eq!(r.total_dim(), Some(crate::labels::dim_p(&p, 8, 4)));
    }

    #[test]
    fn restriction_to_tl_is_generic_only() {
        let g = QParam::generic();
        let r = functor_table(Functor::ResAr, &ModuleLabel::l(6, 0, ZSpec::z(4)), &g).unwrap();
        assert_eq!(r.render(), "S(6,0) ⊕ S(6,2)");
        let r = functor_table(Functor::ResAr, &ModuleLabel::wcell(4, 0, ZSpec::z(1)), &g).unwrap();
        assert_eq!(r.total_dim(), Some(6));
        let p = QParam::root(3).unwrap();
        assert!(matches!(
            functor_table(Functor::ResAr, &ModuleLabel::wcell(4, 0, ZSpec::z(1)), &p),
            Err(LabelError::Uncovered(_))
        ));
    }

    #[test]
    fn wrong_direction_is_refused() {
        let g = QParam::generic();
        assert!(functor_table(Functor::ResPhi, &ModuleLabel::w(3, 1), &g).is_err());
        assert!(functor_table(Functor::IndAr, &ModuleLabel::i(3, 1), &g).is_err());
    }

    #[test]
    fn hom_table_samples() {
        let p = QParam::root(3).unwrap();
        use Family::*;
        // n = 7: the class of 1 is {1, 3, 7}
        assert_eq!(regular_hom_dim(&p, 7, (P, 3), (P, 3)).unwrap(), 2);
        assert_eq!(regular_hom_dim(&p, 7, (P, 3), (P, 1)).unwrap(), 1);
        assert_eq!(regular_hom_dim(&p, 7, (S, 1), (S, 1)).unwrap(), 1);
        assert_eq!(regular_hom_dim(&p, 7, (I, 3), (S, 1)).unwrap(), 1);
        assert_eq!(regular_hom_dim(&p, 7, (P, 3), (S, 1)).unwrap(), 1);
        assert_eq!(regular_hom_dim(&p, 7, (S, 5), (P, 5)).unwrap(), 1);
        // P_{k_R}: S_{7,7} = I_{7,7}
        assert_eq!(regular_hom_dim(&p, 7, (P, 7), (P, 7)).unwrap(), 2);
    }
}
