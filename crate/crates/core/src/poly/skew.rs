use std::collections::BTreeMap;
use std::fmt;

use super::{DiffDenomFn, MultiPoly, Perm};

/// An element `Σ_π f_π · π` of the skew group ring of `S_n` over rational
/// functions with difference-form denominators. Composition follows
/// `(f·π)(g·σ) = (f · π(g)) · (πσ)`; as an operator it sends `p` to
/// `Σ f_π · π(p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewElement {
    n: usize,
    comps: BTreeMap<Perm, DiffDenomFn>,
}

impl SkewElement {
    pub fn zero(n: usize) -> SkewElement {
        SkewElement {
            n,
            comps: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> SkewElement {
        SkewElement::from_poly(MultiPoly::one(n))
    }

    /// Multiplication by `p`.
    pub fn from_poly(p: MultiPoly) -> SkewElement {
        let n = p.nvars();
        SkewElement::from_component(Perm::identity(n), DiffDenomFn::from_poly(p))
    }

    pub fn from_component(pi: Perm, f: DiffDenomFn) -> SkewElement {
        let n = pi.n();
        let mut comps = BTreeMap::new();
        if !f.is_zero() {
            comps.insert(pi, f);
        }
        SkewElement { n, comps }
    }

    pub fn perm(pi: Perm) -> SkewElement {
        let n = pi.n();
        SkewElement::from_component(pi, DiffDenomFn::one(n))
    }

    /// `∂_j = (s_j - 1)/(y_j - y_{j+1})` with 0-based `j`.
    pub fn demazure(j: usize, n: usize) -> SkewElement {
        let r = DiffDenomFn::inv_diff(n, j, j + 1);
        let mut comps = BTreeMap::new();
        comps.insert(Perm::simple(n, j), r.clone());
        comps.insert(Perm::identity(n), r.neg());
        SkewElement { n, comps }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Perm, &DiffDenomFn)> {
        self.comps.iter()
    }

    pub fn component(&self, pi: &Perm) -> Option<&DiffDenomFn> {
        self.comps.get(pi)
    }

    fn add_component(&mut self, pi: Perm, f: DiffDenomFn) {
        if f.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.comps.entry(pi) {
            Entry::Vacant(v) => {
                v.insert(f);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&f);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &SkewElement) -> SkewElement {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (pi, f) in &other.comps {
            out.add_component(pi.clone(), f.clone());
        }
        out
    }

    pub fn neg(&self) -> SkewElement {
        SkewElement {
            n: self.n,
            comps: self.comps.iter().map(|(p, f)| (p.clone(), f.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &SkewElement) -> SkewElement {
        self.add(&other.neg())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SkewElement) -> SkewElement {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut out = SkewElement::zero(self.n);
        for (pi, f) in &self.comps {
            for (sigma, g) in &other.comps {
                out.add_component(pi.compose(sigma), f.mul(&g.permute(pi)));
            }
        }
        out
    }

    /// `mult(p) ∘ self`.
    pub fn mul_left_poly(&self, p: &MultiPoly) -> SkewElement {
        let mut out = SkewElement::zero(self.n);
        for (pi, f) in &self.comps {
            out.add_component(pi.clone(), f.mul_poly(p));
        }
        out
    }

    /// `self ∘ mult(p)`.
    pub fn mul_right_poly(&self, p: &MultiPoly) -> SkewElement {
        self.compose(&SkewElement::from_poly(p.clone()))
    }

    /// `Σ f_π · π(p)`.
    pub fn apply(&self, p: &MultiPoly) -> DiffDenomFn {
        let mut out = DiffDenomFn::zero(self.n);
        for (pi, f) in &self.comps {
            out = out.add(&f.mul_poly(&p.permute(pi)));
        }
        out
    }

    /// Components of maximal Coxeter length, in shortlex order.
    pub fn top_components(&self) -> Vec<&Perm> {
        let Some(max) = self.comps.keys().map(Perm::length).max() else {
            return Vec::new();
        };
        let mut v: Vec<&Perm> = self.comps.keys().filter(|p| p.length() == max).collect();
        v.sort_by_key(|p| p.shortlex_key());
        v
    }
}

impl fmt::Display for SkewElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        for (i, (pi, g)) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{g}]·{pi}")?;
        }
        Ok(())
    }
}
