use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// One generator of the fundamental group with exponent `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub exponent: i8,
}

impl Letter {
    pub fn new(generator: usize, exponent: i8) -> Letter {
        assert!(exponent == 1 || exponent == -1, "exponent must be +1 or -1");
        Letter {
            generator,
            exponent,
        }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            generator: self.generator,
            exponent: -self.exponent,
        }
    }
}

/// A word in the generators `x_0, x_1, ...` of the fundamental group of the punctured base.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn gen(i: usize) -> Word {
        Word(vec![Letter::new(i, 1)])
    }

    pub fn gen_inv(i: usize) -> Word {
        Word(vec![Letter::new(i, -1)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v).reduced()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::new();
        for _ in 0..k.unsigned_abs() {
            out.extend_from_slice(&base.0);
        }
        Word(out).reduced()
    }

    /// Free reduction.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Free and cyclic reduction.
    pub fn cyclically_reduced(&self) -> Word {
        let mut w = self.reduced().0;
        while w.len() >= 2 && w[0] == w[w.len() - 1].inverse() {
            w.pop();
            w.remove(0);
        }
        Word(w)
    }

    /// Largest generator index plus one.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    pub fn validate(&self, generators: usize) -> Result<(), Error> {
        match self.0.iter().find(|l| l.generator >= generators) {
            Some(l) => Err(Error::InvalidWord(format!(
                "generator x{} out of range 0..{}",
                l.generator, generators
            ))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if l.exponent == 1 {
                write!(f, "x{}", l.generator)?;
            } else {
                write!(f, "x{}^-1", l.generator)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses `"x2 x3^-1"`; `"1"` and the empty string give the empty word.
    fn from_str(s: &str) -> Result<Word, Error> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let body = tok
                .strip_prefix('x')
                .ok_or_else(|| Error::InvalidWord(format!("bad token {:?}", tok)))?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, "-1")) => (i, -1),
                Some((i, "1")) => (i, 1),
                Some(_) => return Err(Error::InvalidWord(format!("bad exponent in {:?}", tok))),
                None => (body, 1),
            };
            let g = idx
                .parse::<usize>()
                .map_err(|_| Error::InvalidWord(format!("bad generator in {:?}", tok)))?;
            out.push(Letter::new(g, exp));
        }
        Ok(Word(out))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w: Word = "x2 x3^-1".parse().unwrap();
        assert_eq!(w, Word(vec![Letter::new(2, 1), Letter::new(3, -1)]));
        assert_eq!(w.to_string(), "x2 x3^-1");
        assert_eq!("1".parse::<Word>().unwrap(), Word::empty());
        assert!("y2".parse::<Word>().is_err());
    }

    #[test]
    fn reduction() {
        let w: Word = "x1 x2 x2^-1 x1^-1 x3".parse().unwrap();
        assert_eq!(w.reduced().to_string(), "x3");
        let c: Word = "x1 x3 x2 x1^-1".parse().unwrap();
        assert_eq!(c.cyclically_reduced().to_string(), "x3 x2");
        assert_eq!(c.concat(&c.inverse()), Word::empty());
    }
}
