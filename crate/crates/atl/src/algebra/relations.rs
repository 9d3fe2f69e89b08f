//! Executable relation suites. Each relation instance is evaluated as an
//! exact identity between elements and reported individually.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::scalar::Ring;

use super::appendix::AppendixElements;
use super::braid::{eta, eta_second_form, t, t_inv};
use super::phi::Phi;
use super::{AlgebraError, Element, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Suite {
    Affine,
    Regular,
    Phi,
    AppendixA,
}

impl FromStr for Suite {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "affine" => Ok(Suite::Affine),
            "regular" => Ok(Suite::Regular),
            "phi" => Ok(Suite::Phi),
            "appendixA" | "appendixa" => Ok(Suite::AppendixA),
            _ => Err(AlgebraError::Word(format!("unknown suite {s}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Affine => "affine",
            Suite::Regular => "regular",
            Suite::Phi => "phi",
            Suite::AppendixA => "appendixA",
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relation: String,
    pub pass: bool,
}

impl RelationCheck {
    pub fn new(relation: &str, lhs: &Element, rhs: &Element) -> Self {
        RelationCheck { relation: relation.to_string(), pass: lhs == rhs }
    }

    pub fn zero(relation: &str, x: &Element) -> Self {
        RelationCheck { relation: relation.to_string(), pass: x.is_empty() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: u32,
    pub ring: String,
    pub checks: Vec<RelationCheck>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn word(n: u32, letters: &[Letter]) -> Word {
    Word::new(n, letters.to_vec()).expect("valid generator word")
}

/// The defining relations of aTL_n as pairs of words.
pub fn affine_relations(n: u32) -> Vec<(String, Word, Word)> {
    use Letter::{Tau, TauInv, E};
    let mut out = Vec::new();
    let mut rel = |name: String, a: &[Letter], b: &[Letter]| out.push((name, word(n, a), word(n, b)));
    rel("τ τ^-1 = 1".into(), &[Tau, TauInv], &[]);
    rel("τ^-1 τ = 1".into(), &[TauInv, Tau], &[]);
    if n < 2 {
        return out;
    }
    let nn = n as i64;
    if n == 2 {
        rel("τ² e1 = e1".into(), &[Tau, Tau, E(1)], &[E(1)]);
        rel("e1 τ² = e1".into(), &[E(1), Tau, Tau], &[E(1)]);
    }
    for i in 0..nn {
        let mut conj = vec![Tau; i as usize];
        conj.push(E(0));
        conj.extend(std::iter::repeat_n(TauInv, i as usize));
        rel(format!("e{i} = τ^{i} e0 τ^-{i}"), &[E(i)], &conj);
        rel(format!("e{} = e{i}", i + nn), &[E(i + nn)], &[E(i)]);
        rel(format!("τ e{i} = e{} τ", i + 1), &[Tau, E(i)], &[E(i + 1), Tau]);
        if n > 2 {
            rel(format!("e{i} e{} e{i} = e{i}", i + 1), &[E(i), E(i + 1), E(i)], &[E(i)]);
            rel(format!("e{i} e{} e{i} = e{i}", i - 1), &[E(i), E(i - 1), E(i)], &[E(i)]);
            for j in i + 2..nn {
                if (j - i).rem_euclid(nn) >= 2 && (i - j).rem_euclid(nn) >= 2 {
                    rel(format!("e{i} e{j} = e{j} e{i}"), &[E(i), E(j)], &[E(j), E(i)]);
                }
            }
        }
    }
    if n > 2 {
        let chain: Vec<Letter> = (1..nn).map(E).collect();
        rel("e1 τ² = e1 e2 ⋯ e_{n-1}".into(), &[E(1), Tau, Tau], &chain);
    }
    out
}

/// e_i² = β e_i needs a scalar, so it is checked separately.
fn idempotent_checks(n: u32, eval: &dyn Fn(&Word) -> Result<Element, AlgebraError>, ring: &Ring) -> Result<Vec<RelationCheck>, AlgebraError> {
    let mut out = Vec::new();
    for i in 0..n as i64 {
        if n < 2 || (n == 2 && i == 0) {
            continue;
        }
        let ei = eval(&word(n, &[Letter::E(i)]))?;
        let sq = eval(&word(n, &[Letter::E(i), Letter::E(i)]))?;
        out.push(RelationCheck::new(&format!("e{i} e{i} = β e{i}"), &sq, &ei.scale(&ring.beta())));
    }
    Ok(out)
}

fn affine_suite(ring: &Ring, n: u32, eval: &dyn Fn(&Word) -> Result<Element, AlgebraError>) -> Result<Vec<RelationCheck>, AlgebraError> {
    let mut out = idempotent_checks(n, eval, ring)?;
    for (name, a, b) in affine_relations(n) {
        out.push(RelationCheck::new(&name, &eval(&a)?, &eval(&b)?));
    }
    if n >= 2 {
        let tn = eval(&word(n, &vec![Letter::Tau; n as usize]))?;
        for i in 0..n as i64 {
            let ei = eval(&word(n, &[Letter::E(i)]))?;
            out.push(RelationCheck::zero(&format!("[τ^{n}, e{i}] = 0"), &tn.commutator(&ei)?));
        }
    }
    Ok(out)
}

fn u(ring: &Ring, n: u32, i: i64) -> Result<Element, AlgebraError> {
    Ok(Element::from_diagram(ring, Diagram::u(n, i as u32)?))
}

/// Right-multiply by T_{i_1}, T_{i_2}, … in turn.
fn times_ts(x: &Element, ring: &Ring, indices: impl IntoIterator<Item = i64>) -> Result<Element, AlgebraError> {
    let mut acc = x.clone();
    for i in indices {
        acc = acc.compose(&t(ring, x.right(), i)?)?;
    }
    Ok(acc)
}

fn regular_suite(ring: &Ring, n: u32) -> Result<Vec<RelationCheck>, AlgebraError> {
    let mut out = Vec::new();
    let nn = n as i64;
    let beta = ring.beta();
    for i in 1..nn {
        let ui = u(ring, n, i)?;
        out.push(RelationCheck::new(&format!("u{i} u{i} = β u{i}"), &ui.compose(&ui)?, &ui.scale(&beta)));
        for j in [i - 1, i + 1] {
            if (1..nn).contains(&j) {
                let uj = u(ring, n, j)?;
                out.push(RelationCheck::new(&format!("u{i} u{j} u{i} = u{i}"), &ui.compose(&uj)?.compose(&ui)?, &ui));
            }
        }
        for j in i + 2..nn {
            out.push(RelationCheck::zero(&format!("[u{i}, u{j}] = 0"), &ui.commutator(&u(ring, n, j)?)?));
        }
        let ti = t(ring, n, i)?;
        out.push(RelationCheck::new(&format!("T{i} T{i}^-1 = 1"), &ti.compose(&t_inv(ring, n, i)?)?, &Element::identity(ring, n)));
        if i + 1 < nn {
            let ti1 = t(ring, n, i + 1)?;
            let ui1 = u(ring, n, i + 1)?;
            let mid = ui.compose(&ui1)?;
            out.push(RelationCheck::new(&format!("u{i} T{} T{i} = u{i} u{}", i + 1, i + 1), &ui.compose(&ti1)?.compose(&ti)?, &mid));
            out.push(RelationCheck::new(&format!("T{} T{i} u{} = u{i} u{}", i + 1, i + 1, i + 1), &ti1.compose(&ti)?.compose(&ui1)?, &mid));
            out.push(RelationCheck::new(
                &format!("T{i} T{} T{i} = T{} T{i} T{}", i + 1, i + 1, i + 1),
                &ti.compose(&ti1)?.compose(&ti)?,
                &ti1.compose(&ti)?.compose(&ti1)?,
            ));
        }
        for j in i + 2..nn {
            out.push(RelationCheck::zero(&format!("[T{i}, T{j}] = 0"), &ti.commutator(&t(ring, n, j)?)?));
        }
    }
    if n >= 2 {
        let un = u(ring, n, nn - 1)?;
        out.push(RelationCheck::new(
            &format!("u{0} T{0} T{0} = (-q)^-3 u{0}", nn - 1),
            &times_ts(&un, ring, [nn - 1, nn - 1])?,
            &un.scale(&ring.v_pow(-6)),
        ));
        // (η_{1,n−1})^n and (η_{n−1,1})^n, built one T at a time
        let seq_a: Vec<i64> = (1..nn).rev().collect();
        let seq_b: Vec<i64> = (1..nn).collect();
        for (label, seq) in [("η_{1,n-1}", seq_a), ("η_{n-1,1}", seq_b)] {
            let full = times_ts(&Element::identity(ring, n), ring, seq.iter().cycle().take(seq.len() * n as usize).copied())?;
            for i in 1..nn {
                out.push(RelationCheck::zero(&format!("[({label})^{n}, u{i}] = 0"), &full.commutator(&u(ring, n, i)?)?));
            }
        }
        out.push(RelationCheck::new("η_{1,n-1} forms agree", &eta(ring, 1, n - 1)?, &eta_second_form(ring, 1, n - 1)?));
        out.push(RelationCheck::new("η_{n-1,1} forms agree", &eta(ring, n - 1, 1)?, &eta_second_form(ring, n - 1, 1)?));
    }
    Ok(out)
}

fn phi_suite(ring: &Ring, n: u32) -> Result<Vec<RelationCheck>, AlgebraError> {
    let phi = Phi::new(ring, n)?;
    let eval = |w: &Word| phi.apply(w);
    let mut out = affine_suite(ring, n, &eval)?;
    let nn = n as i64;
    out.push(RelationCheck { relation: "φ(τ) is regular".into(), pass: phi.tau().is_regular() && phi.tau_inv().is_regular() });
    for i in 1..nn {
        out.push(RelationCheck::new(&format!("φ(e{i}) = u{i}"), phi.e(i), &u(ring, n, i)?));
    }
    for i in 0..nn.max(1) {
        if n >= 2 {
            let img = phi.e(i);
            out.push(RelationCheck::new(&format!("φ ι φ(e{i}) = φ(e{i})"), &phi.apply_regular(img)?, img));
        }
    }
    out.push(RelationCheck::new("φ ι φ(τ) = φ(τ)", &phi.apply_regular(phi.tau())?, phi.tau()));
    out.push(RelationCheck::new("φ ι φ(τ^-1) = φ(τ^-1)", &phi.apply_regular(phi.tau_inv())?, phi.tau_inv()));
    if n == 2 {
        let u1 = u(ring, 2, 1)?;
        out.push(RelationCheck::new("φ(τ) φ(e1) = -u1", &phi.tau().compose(phi.e(1))?, &u1.neg()));
        out.push(RelationCheck::new("φ(e1) φ(τ) = -u1", &phi.e(1).compose(phi.tau())?, &u1.neg()));
        let expected = Element::scalar(ring, 2, ring.q()).sub(&u1)?.scale(&ring.q());
        out.push(RelationCheck::new("φ(τ) = q(q - u1)", phi.tau(), &expected));
    }
    if n == 1 {
        out.push(RelationCheck::new("φ(τ) = (-q)^{3/2}", phi.tau(), &Element::scalar(ring, 1, ring.v_pow(3))));
    }
    Ok(out)
}

pub fn relation_suite(ring: &Ring, n: u32, suite: Suite) -> Result<SuiteReport, AlgebraError> {
    let checks = match suite {
        Suite::Affine => affine_suite(ring, n, &|w: &Word| w.eval(ring))?,
        Suite::Regular => regular_suite(ring, n)?,
        Suite::Phi => phi_suite(ring, n)?,
        Suite::AppendixA => AppendixElements::new(ring, n)?.relations()?,
    };
    Ok(SuiteReport { suite, n, ring: ring.descriptor().to_string(), checks })
}

/// η_{r,s} ∘ (f ⊗ g) = (g ⊗ f) ∘ η_{m,n} for rank-zero f : m → r, g : n → s.
pub fn eta_naturality_check(ring: &Ring, f: &Diagram, g: &Diagram) -> Result<bool, AlgebraError> {
    let (r, m) = (f.left(), f.right());
    let (s, n) = (g.left(), g.right());
    let fe = Element::from_diagram(ring, f.clone());
    let ge = Element::from_diagram(ring, g.clone());
    let lhs = eta(ring, r, s)?.compose(&fe.tensor(&ge)?)?;
    let rhs = ge.tensor(&fe)?.compose(&eta(ring, m, n)?)?;
    Ok(lhs == rhs)
}
