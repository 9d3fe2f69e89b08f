use std::fmt;

use crate::diagram::Diagram;
use crate::scalar::Ring;

use super::{AlgebraError, Element};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    /// e_i, index taken mod n
    E(i64),
    Tau,
    TauInv,
    /// regular generator u_i, 1 ≤ i ≤ n−1
    U(u32),
}

impl Letter {
    pub fn is_regular(self) -> bool {
        matches!(self, Letter::U(_))
    }

    pub fn diagram(self, n: u32) -> Result<Diagram, AlgebraError> {
        Ok(match self {
            Letter::E(i) => Diagram::e(n, i)?,
            Letter::Tau => Diagram::tau(n),
            Letter::TauInv => Diagram::tau_inv(n),
            Letter::U(i) => Diagram::u(n, i)?,
        })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::E(i) => write!(f, "e{i}"),
            Letter::Tau => f.write_str("t"),
            Letter::TauInv => f.write_str("t-"),
            Letter::U(i) => write!(f, "u{i}"),
        }
    }
}

/// A word in the affine generators {e_i, τ, τ⁻¹} or in the regular
/// generators {u_i}; the empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    n: u32,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(n: u32, letters: Vec<Letter>) -> Result<Word, AlgebraError> {
        let regular = letters.iter().filter(|l| l.is_regular()).count();
        if regular != 0 && regular != letters.len() {
            return Err(AlgebraError::Word("mixes affine and regular generators".into()));
        }
        for l in &letters {
            l.diagram(n)?;
        }
        Ok(Word { n, letters })
    }

    pub fn empty(n: u32) -> Word {
        Word { n, letters: Vec::new() }
    }

    /// Whitespace-separated letters `e0`, `t`, `t-`, `u1`.
    pub fn parse(n: u32, s: &str) -> Result<Word, AlgebraError> {
        let bad = || AlgebraError::Word(s.to_string());
        let letters = s
            .split_whitespace()
            .map(|tok| match tok {
                "t" => Ok(Letter::Tau),
                "t-" => Ok(Letter::TauInv),
                _ => {
                    if let Some(i) = tok.strip_prefix('e') {
                        i.parse().map(Letter::E).map_err(|_| bad())
                    } else if let Some(i) = tok.strip_prefix('u') {
                        i.parse().map(Letter::U).map_err(|_| bad())
                    } else {
                        Err(bad())
                    }
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Word::new(n, letters)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_regular(&self) -> bool {
        self.letters.iter().all(|l| l.is_regular())
    }

    pub fn concat(&self, other: &Word) -> Result<Word, AlgebraError> {
        if self.n != other.n {
            return Err(AlgebraError::Shape(self.n, self.n, other.n, other.n));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word::new(self.n, letters)
    }

    /// The product of the letters, leftmost letter outermost. Words evaluate
    /// to single diagrams times a power of β.
    pub fn eval(&self, ring: &Ring) -> Result<Element, AlgebraError> {
        let mut d = Diagram::identity(self.n);
        let mut loops = 0;
        for l in &self.letters {
            let (next, c) = Diagram::compose(&d, &l.diagram(self.n)?)?;
            d = next;
            loops += c;
        }
        Ok(Element::term(ring, d, ring.pow(&ring.beta(), loops as u64)))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(Letter::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugated_e0_is_e1() {
        let r = Ring::generic();
        let w = Word::parse(4, "t e0 t-").unwrap();
        assert_eq!(w.eval(&r).unwrap(), Element::from_diagram(&r, Diagram::e(4, 1).unwrap()));
        assert_eq!(Word::empty(3).eval(&r).unwrap(), Element::identity(&r, 3));
    }

    #[test]
    fn e1_tau_squared() {
        let r = Ring::generic();
        for n in 3..=7 {
            let lhs = Word::parse(n, "e1 t t").unwrap().eval(&r).unwrap();
            let letters = (1..n as i64).map(Letter::E).collect();
            let rhs = Word::new(n, letters).unwrap().eval(&r).unwrap();
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn parse_errors() {
        assert!(Word::parse(3, "u3").is_err());
        assert!(Word::parse(3, "u1 e0").is_err());
        assert!(Word::parse(3, "x").is_err());
        assert_eq!(Word::parse(3, "e0 e1 t t e2 t-").unwrap().to_string(), "e0 e1 t t e2 t-");
    }
}
