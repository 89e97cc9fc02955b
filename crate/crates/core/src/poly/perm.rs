use std::fmt;

use serde::{Deserialize, Serialize};

/// A permutation of `{0, …, n-1}` in one-line notation: `self.apply(a)` is
/// the image of `a`.
///
/// Acting on polynomials, `π` sends `y_a` to `y_{π(a)}`; composition
/// `π.compose(σ)` is `π ∘ σ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n).collect())
    }

    /// Returns `None` unless `images` is a permutation of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Option<Perm> {
        let mut seen = vec![false; images.len()];
        for &a in &images {
            if a >= images.len() || std::mem::replace(&mut seen[a], true) {
                return None;
            }
        }
        Some(Perm(images))
    }

    /// The simple transposition swapping `k` and `k + 1`.
    pub fn simple(n: usize, k: usize) -> Perm {
        assert!(k + 1 < n, "simple transposition s_{k} out of range for n = {n}");
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(k, k + 1);
        Perm(v)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, a: usize) -> usize {
        self.0[a]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &a)| i == a)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &a) in self.0.iter().enumerate() {
            inv[a] = i;
        }
        Perm(inv)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n());
        Perm(other.0.iter().map(|&a| self.0[a]).collect())
    }

    /// Coxeter length: the number of inversions.
    pub fn length(&self) -> usize {
        let mut l = 0;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    l += 1;
                }
            }
        }
        l
    }

    /// The lexicographically smallest reduced word `[k_1, …, k_l]` with
    /// `self = s_{k_1} ∘ … ∘ s_{k_l}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        // Peel left descents: π = s_k ∘ π' with ℓ(π') < ℓ(π) iff π⁻¹(k) > π⁻¹(k+1).
        let mut word = Vec::with_capacity(self.length());
        let mut cur = self.clone();
        let n = self.n();
        while !cur.is_identity() {
            let inv = cur.inverse();
            let k = (0..n - 1).find(|&k| inv.0[k] > inv.0[k + 1]).unwrap();
            word.push(k);
            cur = Perm::simple(n, k).compose(&cur);
        }
        word
    }

    /// Sort key used for deterministic orders: length, then reduced word.
    pub fn shortlex_key(&self) -> (usize, Vec<usize>) {
        (self.length(), self.reduced_word())
    }

    /// All permutations of `0..n` in lexicographic order of one-line
    /// notation.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", a + 1)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_word_multiplies_back() {
        for p in Perm::all(4) {
            let w = p.reduced_word();
            assert_eq!(w.len(), p.length());
            let mut q = Perm::identity(4);
            for &k in &w {
                q = q.compose(&Perm::simple(4, k));
            }
            assert_eq!(q, p);
        }
    }

    #[test]
    fn counts_and_inverse() {
        assert_eq!(Perm::all(4).len(), 24);
        let p = Perm::from_images(vec![2, 0, 1]).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(Perm::from_images(vec![0, 0]).is_none());
        assert_eq!(Perm::from_images(vec![2, 1, 0]).unwrap().length(), 3);
    }
}
