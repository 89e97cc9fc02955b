use std::collections::BTreeMap;
use std::fmt;

use super::{MultiPoly, Perm};

/// A rational function `num / Π (y_a - y_b)^m` whose denominator is a product
/// of difference forms.
///
/// Stored reduced: every pair has `a < b` (signs are absorbed into the
/// numerator) and the numerator is not divisible by any difference form in
/// the denominator. Since the forms are pairwise non-associate primes this
/// representation is unique, so structural equality is equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffDenomFn {
    num: MultiPoly,
    den: BTreeMap<(usize, usize), u32>,
}

impl DiffDenomFn {
    /// `num / Π_{(a,b) ∈ den} (y_a - y_b)`.
    pub fn new(num: MultiPoly, den: impl IntoIterator<Item = (usize, usize)>) -> DiffDenomFn {
        let mut num = num;
        let mut map = BTreeMap::new();
        for (a, b) in den {
            assert_ne!(a, b, "difference form y_a - y_a in denominator");
            let key = if a < b {
                (a, b)
            } else {
                num = -&num;
                (b, a)
            };
            *map.entry(key).or_insert(0) += 1;
        }
        let mut f = DiffDenomFn { num, den: map };
        f.reduce();
        f
    }

    pub fn from_poly(p: MultiPoly) -> DiffDenomFn {
        DiffDenomFn {
            num: p,
            den: BTreeMap::new(),
        }
    }

    pub fn zero(n: usize) -> DiffDenomFn {
        DiffDenomFn::from_poly(MultiPoly::zero(n))
    }

    pub fn one(n: usize) -> DiffDenomFn {
        DiffDenomFn::from_poly(MultiPoly::one(n))
    }

    /// `1 / (y_a - y_b)`.
    pub fn inv_diff(n: usize, a: usize, b: usize) -> DiffDenomFn {
        DiffDenomFn::new(MultiPoly::one(n), [(a, b)])
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for (&(a, b), m) in self.den.iter_mut() {
            while *m > 0 {
                match self.num.divide_linear(a, b) {
                    Some(q) => {
                        self.num = q;
                        *m -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, m| *m > 0);
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.den.iter().map(|(&k, &m)| (k, m))
    }

    fn den_poly(&self) -> MultiPoly {
        let n = self.nvars();
        self.den.iter().fold(MultiPoly::one(n), |acc, (&(a, b), &m)| {
            &acc * &MultiPoly::diff(n, a, b).pow(m)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn add(&self, other: &DiffDenomFn) -> DiffDenomFn {
        let n = self.nvars();
        let mut den = self.den.clone();
        for (k, &m) in &other.den {
            let e = den.entry(*k).or_insert(0);
            *e = (*e).max(m);
        }
        let lift = |f: &DiffDenomFn| {
            den.iter().fold(f.num.clone(), |acc, (&(a, b), &m)| {
                let have = f.den.get(&(a, b)).copied().unwrap_or(0);
                &acc * &MultiPoly::diff(n, a, b).pow(m - have)
            })
        };
        let num = &lift(self) + &lift(other);
        let mut f = DiffDenomFn { num, den };
        f.reduce();
        f
    }

    pub fn neg(&self) -> DiffDenomFn {
        DiffDenomFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &DiffDenomFn) -> DiffDenomFn {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &DiffDenomFn) -> DiffDenomFn {
        if self.is_zero() || other.is_zero() {
            return DiffDenomFn::zero(self.nvars());
        }
        let mut den = self.den.clone();
        for (k, &m) in &other.den {
            *den.entry(*k).or_insert(0) += m;
        }
        let mut f = DiffDenomFn {
            num: &self.num * &other.num,
            den,
        };
        f.reduce();
        f
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> DiffDenomFn {
        self.mul(&DiffDenomFn::from_poly(p.clone()))
    }

    /// Applies `y_k ↦ y_{σ(k)}`.
    pub fn permute(&self, sigma: &Perm) -> DiffDenomFn {
        if sigma.is_identity() {
            return self.clone();
        }
        let mut pairs = Vec::new();
        for (&(a, b), &m) in &self.den {
            for _ in 0..m {
                pairs.push((sigma.apply(a), sigma.apply(b)));
            }
        }
        DiffDenomFn::new(self.num.permute(sigma), pairs)
    }

    /// `self / other` if the quotient is a polynomial.
    pub fn div_to_poly(&self, other: &DiffDenomFn) -> Option<MultiPoly> {
        assert!(!other.is_zero(), "division by zero rational function");
        let top = &self.num * &other.den_poly();
        let bottom = &other.num * &self.den_poly();
        top.div_exact(&bottom)
    }

    /// Weighted degree, `deg num - Σ m·w_a`. Denominator pairs must have
    /// equal weights for this to be meaningful; `None` when inhomogeneous.
    pub fn weighted_degree(&self, weights: &[i64]) -> Option<i64> {
        let d = self.num.weighted_degree(weights)?;
        Some(d - self.den.iter().map(|(&(a, _), &m)| m as i64 * weights[a]).sum::<i64>())
    }
}

impl fmt::Display for DiffDenomFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / (", self.num)?;
        for (i, (&(a, b), &m)) in self.den.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write!(f, "(y{} - y{})", a + 1, b + 1)?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        write!(f, ")")
    }
}
