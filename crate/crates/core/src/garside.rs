//! Garside left-canonical form in `B_m`.
//!
//! A braid is written `Δ^r · A₁ ⋯ A_k` where each `A_j` is a permutation
//! braid (a positive braid in which every pair of strands crosses at most
//! once), none is `1` or `Δ`, and every adjacent pair is left-weighted:
//! the starting set of `A_{j+1}` lies in the finishing set of `A_j`.
//!
//! A permutation braid is stored as the permutation `w = s_{i1} ∘ ⋯ ∘ s_{ik}`
//! of any of its positive words, which is the same map as
//! [`BraidWord::permutation`](crate::braid::BraidWord::permutation).

use crate::braid::BraidWord;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub infimum: i64,
    pub factors: Vec<Permutation>,
}

impl NormalForm {
    pub fn is_identity(&self) -> bool {
        self.infimum == 0 && self.factors.is_empty()
    }

    /// `inf + len`, the largest power of Δ bounding the braid from above.
    pub fn supremum(&self) -> i64 {
        self.infimum + self.factors.len() as i64
    }

    pub fn is_left_weighted(&self) -> bool {
        let n = self.factors.first().map_or(0, Permutation::degree);
        let delta = half_twist(n);
        let no_trivial = self.factors.iter().all(|f| !f.is_identity() && *f != delta);
        let weighted = self.factors.windows(2).all(|p| {
            let fin = finishing_set(p[0].images());
            starting_set(p[1].images()).iter().all(|i| fin.contains(i))
        });
        no_trivial && weighted
    }
}

pub fn left_canonical_form(word: &BraidWord) -> NormalForm {
    let m = word.degree();
    let letters = word.letters();
    let mut negatives_after = letters.iter().filter(|l| l.inverse).count();
    let infimum = -(negatives_after as i64);

    let mut factors: Vec<Vec<usize>> = Vec::with_capacity(letters.len());
    for l in letters {
        let i = l.index - 1;
        let simple = if l.inverse {
            negatives_after -= 1;
            // σ_i⁻¹ = Δ⁻¹ · (Δ σ_i⁻¹), and Δ σ_i⁻¹ ↦ w₀ ∘ s_i.
            let mut w: Vec<usize> = (0..m).rev().collect();
            w.swap(i, i + 1);
            w
        } else {
            let mut w: Vec<usize> = (0..m).collect();
            w.swap(i, i + 1);
            w
        };
        // Moving the Δ⁻¹ of every later negative letter to the front
        // conjugates this factor once per letter.
        let simple = if negatives_after % 2 == 1 { flip(&simple) } else { simple };
        push_factor(&mut factors, simple);
    }

    let mut infimum = infimum;
    let delta: Vec<usize> = (0..m).rev().collect();
    let leading = factors.iter().take_while(|f| **f == delta).count();
    infimum += leading as i64;
    let factors = factors
        .into_iter()
        .skip(leading)
        .take_while(|f| !is_identity(f))
        .map(|f| Permutation::from_images(f).expect("simple braids are permutations"))
        .collect();
    NormalForm { infimum, factors }
}

/// Appends a simple factor to a left-weighted sequence and restores the
/// left-weighted condition with one right-to-left sweep.
fn push_factor(factors: &mut Vec<Vec<usize>>, simple: Vec<usize>) {
    factors.push(simple);
    let mut j = factors.len() - 1;
    while j > 0 {
        let (head, tail) = factors.split_at_mut(j);
        if !make_left_weighted(&mut head[j - 1], &mut tail[0]) {
            break;
        }
        j -= 1;
    }
}

/// Moves generators from the front of `b` to the back of `a` until the
/// pair is left-weighted. Returns whether anything moved.
fn make_left_weighted(a: &mut [usize], b: &mut [usize]) -> bool {
    let mut changed = false;
    loop {
        let Some(i) = (0..a.len().saturating_sub(1)).find(|&i| {
            let in_start = position_of(b, i) > position_of(b, i + 1);
            let in_finish = a[i] > a[i + 1];
            in_start && !in_finish
        }) else {
            return changed;
        };
        a.swap(i, i + 1);
        // s_i ∘ b: exchange the values i and i+1.
        let (pi, pj) = (position_of(b, i), position_of(b, i + 1));
        b.swap(pi, pj);
        changed = true;
    }
}

fn position_of(w: &[usize], value: usize) -> usize {
    w.iter().position(|&x| x == value).expect("value in range")
}

/// `Δ⁻¹ w Δ`, i.e. `w₀ ∘ w ∘ w₀`.
fn flip(w: &[usize]) -> Vec<usize> {
    let n = w.len();
    (0..n).map(|j| n - 1 - w[n - 1 - j]).collect()
}

fn is_identity(w: &[usize]) -> bool {
    w.iter().enumerate().all(|(i, &x)| i == x)
}

fn half_twist(m: usize) -> Permutation {
    Permutation::from_images((0..m).rev().collect()).expect("reversal is a permutation")
}

/// Generators `i` (0-based) with `w ≽ σ_i`, i.e. right descents.
fn finishing_set(w: &[usize]) -> Vec<usize> {
    (0..w.len().saturating_sub(1)).filter(|&i| w[i] > w[i + 1]).collect()
}

/// Generators `i` (0-based) with `σ_i ≼ w`, i.e. left descents.
fn starting_set(w: &[usize]) -> Vec<usize> {
    (0..w.len().saturating_sub(1)).filter(|&i| position_of(w, i) > position_of(w, i + 1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(deg: usize, gens: &[i64]) -> NormalForm {
        left_canonical_form(&BraidWord::from_signed(deg, gens).unwrap())
    }

    #[test]
    fn braid_relation_gives_identical_forms() {
        assert_eq!(nf(3, &[1, 2, 1]), nf(3, &[2, 1, 2]));
        assert_eq!(nf(4, &[1, 3]), nf(4, &[3, 1]));
        assert_ne!(nf(3, &[1, 2]), nf(3, &[2, 1]));
    }

    #[test]
    fn identity_and_cancellation() {
        let id = nf(2, &[1, -1]);
        assert_eq!(id, NormalForm { infimum: 0, factors: vec![] });
        assert!(nf(4, &[2, -3, 1, -1, 3, -2]).is_identity());
        assert!(nf(5, &[]).is_identity());
    }

    #[test]
    fn half_twist_is_absorbed() {
        // Δ in B_3 is σ₁σ₂σ₁.
        let d = nf(3, &[1, 2, 1]);
        assert_eq!(d.infimum, 1);
        assert!(d.factors.is_empty());
        let dinv = nf(3, &[-1, -2, -1]);
        assert_eq!(dinv.infimum, -1);
        assert!(dinv.factors.is_empty());
        // Δ² is central: Δ² σ₁ = σ₁ Δ².
        assert_eq!(nf(3, &[1, 2, 1, 1, 2, 1, 1]), nf(3, &[1, 1, 2, 1, 1, 2, 1]));
    }

    #[test]
    fn forms_are_left_weighted() {
        for gens in [&[1, 2, 2, 1, -2, 3][..], &[-1, -2, 3, 3, 1], &[2, 1, 3, 2, -1, -3, 2]] {
            let f = nf(4, gens);
            assert!(f.is_left_weighted(), "{gens:?}: {f:?}");
        }
    }

    #[test]
    fn sigma1_cubed_in_b2() {
        // σ₁ = Δ in B_2.
        let f = nf(2, &[1, 1, 1]);
        assert_eq!(f.infimum, 3);
        assert!(f.factors.is_empty());
    }
}
