//! Braid words in the Artin generators of `B_m`.
//!
//! Generators are 1-based (`σ₁ … σ_{m−1}`), and every word carries its
//! degree so that the identity braid of `B_m` still knows `m`.

use std::fmt;

use thiserror::Error;

use crate::garside::{self, NormalForm};
use crate::perm::Permutation;

/// Largest exponent magnitude accepted by the parser.
pub const MAX_EXPONENT: i64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("braid degree must be at least 1, got {0}")]
    ZeroDegree(usize),
    #[error("syntax error in braid word at token {token:?}: {reason}")]
    Syntax { token: String, reason: &'static str },
    #[error("generator index out of range: s{index} is not a generator of B_{degree} (valid: 1..={max})", max = .degree.saturating_sub(1))]
    IndexOutOfRange { index: usize, degree: usize },
    #[error("exponent {0} exceeds the bound |k| <= {MAX_EXPONENT}")]
    ExponentTooLarge(i64),
    #[error("degree mismatch: B_{left} vs B_{right}")]
    DegreeMismatch { left: usize, right: usize },
}

/// A single Artin generator `σ_i` or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    /// 1-based generator index.
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn pos(index: usize) -> Self {
        Letter { index, inverse: false }
    }

    pub const fn neg(index: usize) -> Self {
        Letter { index, inverse: true }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(self) -> Self {
        Letter { index: self.index, inverse: !self.inverse }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    degree: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    /// The identity braid `e` of `B_degree`.
    pub fn identity(degree: usize) -> Result<Self, BraidError> {
        Self::new(degree, Vec::new())
    }

    pub fn new(degree: usize, letters: Vec<Letter>) -> Result<Self, BraidError> {
        if degree == 0 {
            return Err(BraidError::ZeroDegree(degree));
        }
        if let Some(bad) = letters.iter().find(|l| l.index == 0 || l.index >= degree) {
            return Err(BraidError::IndexOutOfRange { index: bad.index, degree });
        }
        Ok(BraidWord { degree, letters })
    }

    /// Builds a word from signed generator indices: `3` is `σ₃`, `-3` is `σ₃⁻¹`.
    pub fn from_signed(degree: usize, gens: &[i64]) -> Result<Self, BraidError> {
        let letters = gens
            .iter()
            .map(|&g| match g {
                0 => Err(BraidError::IndexOutOfRange { index: 0, degree }),
                g if g > 0 => Ok(Letter::pos(g as usize)),
                g => Ok(Letter::neg(g.unsigned_abs() as usize)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(degree, letters)
    }

    /// `σ₁³σ₂³⋯σₙ³` in `B_{n+1}`.
    pub fn cubed_chain(n: usize) -> Self {
        let letters = (1..=n).flat_map(|i| std::iter::repeat_n(Letter::pos(i), 3)).collect();
        BraidWord { degree: n + 1, letters }
    }

    pub fn parse(text: &str, degree: usize) -> Result<Self, BraidError> {
        if degree == 0 {
            return Err(BraidError::ZeroDegree(degree));
        }
        let mut letters = Vec::new();
        let mut saw_token = false;
        for token in text.split_whitespace() {
            saw_token = true;
            if token == "e" {
                continue;
            }
            let (index, exponent) = parse_token(token)?;
            if index == 0 || index >= degree {
                return Err(BraidError::IndexOutOfRange { index, degree });
            }
            let letter = if exponent < 0 { Letter::neg(index) } else { Letter::pos(index) };
            letters.extend(std::iter::repeat_n(letter, exponent.unsigned_abs() as usize));
        }
        if !saw_token {
            return Err(BraidError::Syntax { token: String::new(), reason: "empty word; write `e` for the identity" });
        }
        Ok(BraidWord { degree, letters })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn invert(&self) -> Self {
        let letters = self.letters.iter().rev().map(|l| l.inverted()).collect();
        BraidWord { degree: self.degree, letters }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<Self, BraidError> {
        self.check_degree(other)?;
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { degree: self.degree, letters })
    }

    /// `self` repeated `k` times.
    pub fn pow(&self, k: usize) -> Self {
        let letters = (0..k).flat_map(|_| self.letters.iter().copied()).collect();
        BraidWord { degree: self.degree, letters }
    }

    /// The same letters viewed in `B_degree` for a larger degree.
    pub fn widen(&self, degree: usize) -> Result<Self, BraidError> {
        if degree < self.degree {
            return Err(BraidError::DegreeMismatch { left: self.degree, right: degree });
        }
        Ok(BraidWord { degree, letters: self.letters.clone() })
    }

    /// Cancels adjacent `σ_i σ_i⁻¹` and `σ_i⁻¹ σ_i` pairs until none remain.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            match out.last() {
                Some(&top) if top == l.inverted() => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        BraidWord { degree: self.degree, letters: out }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    /// Image under `B_m → S_m`, `σ_i ↦ (i i+1)`, composed right to left.
    pub fn permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (0..self.degree).collect();
        // images[j] = π(j) with π = s_{i1} ∘ … ∘ s_{ik}; appending s_i on the
        // right swaps the entries at positions i-1, i.
        for l in &self.letters {
            images.swap(l.index - 1, l.index);
        }
        Permutation::from_images(images).expect("product of transpositions is a bijection")
    }

    pub fn closure_component_count(&self) -> usize {
        self.permutation().cycle_count()
    }

    pub fn left_canonical_form(&self) -> NormalForm {
        garside::left_canonical_form(self)
    }

    pub fn words_equal(&self, other: &BraidWord) -> Result<bool, BraidError> {
        self.check_degree(other)?;
        if self.exponent_sum() != other.exponent_sum() {
            return Ok(false);
        }
        Ok(self.left_canonical_form() == other.left_canonical_form())
    }

    pub fn commutes_with(&self, other: &BraidWord) -> Result<bool, BraidError> {
        self.concat(other)?.words_equal(&other.concat(self)?)
    }

    fn check_degree(&self, other: &BraidWord) -> Result<(), BraidError> {
        if self.degree != other.degree {
            return Err(BraidError::DegreeMismatch { left: self.degree, right: other.degree });
        }
        Ok(())
    }
}

pub fn parse_braid(text: &str, degree: usize) -> Result<BraidWord, BraidError> {
    BraidWord::parse(text, degree)
}

pub fn words_equal(a: &BraidWord, b: &BraidWord) -> Result<bool, BraidError> {
    a.words_equal(b)
}

pub fn commute(a: &BraidWord, b: &BraidWord) -> Result<bool, BraidError> {
    a.commutes_with(b)
}

fn parse_token(token: &str) -> Result<(usize, i64), BraidError> {
    let syntax = |reason| BraidError::Syntax { token: token.to_string(), reason };
    let body = token.strip_prefix('s').ok_or_else(|| syntax("expected `e` or `s<index>`"))?;
    let (index_part, exp_part) = match body.split_once('^') {
        Some((i, e)) => (i, Some(e)),
        None => (body, None),
    };
    if index_part.is_empty() || !index_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax("generator index must be decimal digits"));
    }
    let index: usize = index_part.parse().map_err(|_| syntax("generator index too large"))?;
    let exponent = match exp_part {
        None => 1,
        Some(e) => {
            let digits = e.strip_prefix(['-', '+']).unwrap_or(e);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(syntax("exponent must be signed decimal digits"));
            }
            let k: i64 = e.parse().map_err(|_| BraidError::ExponentTooLarge(i64::MAX))?;
            if k.abs() > MAX_EXPONENT {
                return Err(BraidError::ExponentTooLarge(k));
            }
            k
        }
    };
    Ok((index, exponent))
}

/// Emits the parser grammar with runs of equal letters collapsed.
impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let run = self.letters[i..].iter().take_while(|&&x| x == l).count();
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let exp = run as i64 * l.sign();
            if exp == 1 {
                write!(f, "s{}", l.index)?;
            } else {
                write!(f, "s{}^{}", l.index, exp)?;
            }
            i += run;
        }
        Ok(())
    }
}
