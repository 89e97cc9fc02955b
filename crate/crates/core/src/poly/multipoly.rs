use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Perm;
use crate::rat::{fmt_rat, Rat};

/// Exponent vector over `y_1, …, y_n`, ordered graded-lexicographically with
/// `y_1 > y_2 > … > y_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[i64]) -> i64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// All monomials in `n` variables whose weighted degree is exactly `d`.
    /// Weights must be positive.
    pub fn of_weighted_degree(weights: &[i64], d: i64) -> Vec<Monomial> {
        fn rec(weights: &[i64], d: i64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let k = cur.len();
            if k == weights.len() {
                if d == 0 {
                    out.push(Monomial(cur.clone()));
                }
                return;
            }
            let mut e = 0;
            while e as i64 * weights[k] <= d {
                cur.push(e);
                rec(weights, d - e as i64 * weights[k], cur, out);
                cur.pop();
                e += 1;
            }
        }
        let mut out = Vec::new();
        if d >= 0 {
            rec(weights, d, &mut Vec::new(), &mut out);
        }
        out.sort();
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `y_1, …, y_n` over ℚ. No zero coefficients are
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> MultiPoly {
        MultiPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> MultiPoly {
        MultiPoly::constant(n, Rat::one())
    }

    pub fn constant(n: usize, c: Rat) -> MultiPoly {
        MultiPoly::from_terms(n, [(Monomial::one(n), c)])
    }

    /// The variable `y_k` (0-based).
    pub fn var(n: usize, k: usize) -> MultiPoly {
        assert!(k < n);
        let mut e = vec![0; n];
        e[k] = 1;
        MultiPoly::from_terms(n, [(Monomial(e), Rat::one())])
    }

    /// `y_a - y_b`.
    pub fn diff(n: usize, a: usize, b: usize) -> MultiPoly {
        &MultiPoly::var(n, a) - &MultiPoly::var(n, b)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> MultiPoly {
        let mut p = MultiPoly::zero(n);
        for (m, c) in terms {
            assert_eq!(m.0.len(), n, "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.degree() == 0 && c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common weighted degree of all terms, or `None` if the polynomial
    /// is zero or not homogeneous.
    pub fn weighted_degree(&self, weights: &[i64]) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| m.weighted_degree(weights));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.n);
        }
        MultiPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Relabels `y_k ↦ y_{σ(k)}`.
    pub fn permute(&self, sigma: &Perm) -> MultiPoly {
        assert_eq!(sigma.n(), self.n);
        if sigma.is_identity() {
            return self.clone();
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; self.n];
            for (k, &x) in m.0.iter().enumerate() {
                e[sigma.apply(k)] = x;
            }
            (Monomial(e), c.clone())
        });
        MultiPoly::from_terms(self.n, terms)
    }

    /// Substitutes `y_k := value`.
    pub fn substitute(&self, k: usize, value: &MultiPoly) -> MultiPoly {
        assert_eq!(value.n, self.n);
        let mut out = MultiPoly::zero(self.n);
        let mut powers: Vec<MultiPoly> = vec![MultiPoly::one(self.n)];
        for (m, c) in &self.terms {
            let e = m.0[k] as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let mut rest = m.0.clone();
            rest[k] = 0;
            let mono = MultiPoly::from_terms(self.n, [(Monomial(rest), c.clone())]);
            out = &out + &(&mono * &powers[e]);
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` if the divisor does not
    /// divide. The divisor must be nonzero.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        assert_eq!(self.n, divisor.n);
        let (lm, lc) = divisor.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.n);
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            let term = MultiPoly::from_terms(self.n, [(qm, qc)]);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        Some(quot)
    }

    /// Exact quotient by `y_a - y_b`.
    pub fn divide_linear(&self, a: usize, b: usize) -> Option<MultiPoly> {
        assert_ne!(a, b);
        self.div_exact(&MultiPoly::diff(self.n, a, b))
    }

    /// Embeds into a ring with more variables, keeping indices.
    pub fn extend_vars(&self, n: usize) -> MultiPoly {
        assert!(n >= self.n);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.0.clone();
            e.resize(n, 0);
            (Monomial(e), c.clone())
        });
        MultiPoly::from_terms(n, terms)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = MultiPoly::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for MultiPoly {
    /// Terms in descending graded-lex order, e.g. `1 * y1^2 + -1 * y2^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", fmt_rat(c))?;
            for (k, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, " * y{}", k + 1)?,
                    _ => write!(f, " * y{}^{}", k + 1, e)?,
                }
            }
        }
        Ok(())
    }
}
