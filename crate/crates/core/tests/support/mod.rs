//! Shared helpers for the integration suites: exhaustive word enumeration,
//! brute-force oracles and seeded random words.

#![allow(dead_code)]

use std::collections::HashMap;

use rand::Rng;
use toruschart::{BraidWord, Letter};

/// Letters of `B_m` in a fixed order: σ₁, σ₁⁻¹, σ₂, σ₂⁻¹, …
pub fn alphabet(m: usize) -> Vec<Letter> {
    (1..m).flat_map(|i| [Letter::pos(i), Letter::neg(i)]).collect()
}

/// Calls `f` on every word of `B_m` of exactly `len` letters.
pub fn for_each_word(m: usize, len: usize, mut f: impl FnMut(&[Letter])) {
    let alpha = alphabet(m);
    if alpha.is_empty() {
        if len == 0 {
            f(&[]);
        }
        return;
    }
    let mut idx = vec![0usize; len];
    let mut word: Vec<Letter> = vec![alpha[0]; len];
    loop {
        f(&word);
        let mut j = len;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < alpha.len() {
                word[j] = alpha[idx[j]];
                break;
            }
            idx[j] = 0;
            word[j] = alpha[0];
        }
    }
}

/// Whether the closure of the letters is a knot (underlying permutation is one cycle).
pub fn closes_to_knot(m: usize, letters: &[Letter]) -> bool {
    let mut images: [usize; 16] = std::array::from_fn(|i| i);
    for l in letters {
        images.swap(l.index - 1, l.index);
    }
    let mut x = images[0];
    let mut len = 1;
    while x != 0 {
        x = images[x];
        len += 1;
    }
    len == m
}

pub fn random_word<R: Rng>(rng: &mut R, m: usize, lens: std::ops::RangeInclusive<usize>) -> BraidWord {
    let alpha = alphabet(m);
    let len = rng.gen_range(lens);
    let letters =
        if alpha.is_empty() { Vec::new() } else { (0..len).map(|_| alpha[rng.gen_range(0..alpha.len())]).collect() };
    BraidWord::new(m, letters).unwrap()
}

/// Brute-force rewriting oracle for the word problem in `B_3`.
///
/// Every word over `σ₁^{±1}, σ₂^{±1}` of length at most `cap` is a vertex;
/// edges are free cancellations and the substitutions
/// `σ₁σ₂σ₁ ↔ σ₂σ₁σ₂` and `σ₁⁻¹σ₂⁻¹σ₁⁻¹ ↔ σ₂⁻¹σ₁⁻¹σ₂⁻¹`. Two words are
/// declared equal when they land in one connected component.
pub struct RewritingOracle {
    component: HashMap<Vec<i8>, usize>,
}

impl RewritingOracle {
    pub fn b3(cap: usize) -> Self {
        let gens: [i8; 4] = [1, -1, 2, -2];
        let mut words: Vec<Vec<i8>> = vec![vec![]];
        let mut start = 0;
        for _ in 0..cap {
            let end = words.len();
            for i in start..end {
                for g in gens {
                    let mut w = words[i].clone();
                    w.push(g);
                    words.push(w);
                }
            }
            start = end;
        }
        let id: HashMap<Vec<i8>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut parent: Vec<usize> = (0..words.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            if ra != rb {
                p[ra] = rb;
            }
        };
        let relations: [([i8; 3], [i8; 3]); 2] = [([1, 2, 1], [2, 1, 2]), ([-1, -2, -1], [-2, -1, -2])];
        for (i, w) in words.iter().enumerate() {
            for j in 0..w.len().saturating_sub(1) {
                if w[j] == -w[j + 1] {
                    let mut r = w.clone();
                    r.drain(j..j + 2);
                    union(&mut parent, i, id[&r]);
                }
            }
            for j in 0..w.len().saturating_sub(2) {
                for (lhs, rhs) in relations {
                    if w[j..j + 3] == lhs {
                        let mut r = w.clone();
                        r[j..j + 3].copy_from_slice(&rhs);
                        union(&mut parent, i, id[&r]);
                    }
                }
            }
        }
        let component = words.iter().enumerate().map(|(i, w)| (w.clone(), find(&mut parent, i))).collect();
        RewritingOracle { component }
    }

    pub fn equal(&self, a: &[i8], b: &[i8]) -> bool {
        self.component[a] == self.component[b]
    }
}

pub fn to_signed(letters: &[Letter]) -> Vec<i8> {
    letters.iter().map(|l| if l.inverse { -(l.index as i8) } else { l.index as i8 }).collect()
}

/// Whether no cyclic rotation of `letters` is lexicographically smaller.
pub fn is_min_rotation(letters: &[Letter]) -> bool {
    let n = letters.len();
    (1..n).all(|r| {
        for j in 0..n {
            let (a, b) = (letters[(r + j) % n], letters[j]);
            if a != b {
                return a > b;
            }
        }
        true
    })
}

/// Alexander quandle on `Z/5` with `a * b = 2a − b`; not involutory, so it
/// exercises the inverse operation.
pub fn alexander_z5() -> toruschart::Quandle {
    let table = (0..5).map(|a| (0..5).map(|b| (2 * a + 5 - b) % 5).collect()).collect();
    toruschart::Quandle::from_table(table).unwrap()
}
