//! The weighted KLR algebra, realised through its faithful action on
//! polynomial rings, with elements stored in the `b_π` normal form.

pub mod diagram;
pub mod relations;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::loading::{is_generic, ChamberSet, Loading};
use crate::poly::{Monomial, MultiPoly, Perm, SkewElement};
use crate::quiver::Quiver;
use crate::rat::{int, Rat};
use diagram::{trace, Diagram, Movie};

/// An element `Σ_π b_π ∘ p_π(y)` of `e_tgt W e_src`; the polynomials act
/// first, on the source loading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WklrElement {
    pub src: Loading,
    pub tgt: Loading,
    pub coeffs: BTreeMap<Perm, MultiPoly>,
}

impl WklrElement {
    pub fn zero(src: Loading, tgt: Loading) -> WklrElement {
        WklrElement {
            src,
            tgt,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &WklrElement) -> Result<WklrElement> {
        if self.src != other.src || self.tgt != other.tgt {
            return Err(Error::InvalidArgument("adding elements between different loadings".into()));
        }
        let mut out = self.clone();
        for (pi, p) in &other.coeffs {
            let s = match out.coeffs.get(pi) {
                Some(q) => q + p,
                None => p.clone(),
            };
            if s.is_zero() {
                out.coeffs.remove(pi);
            } else {
                out.coeffs.insert(pi.clone(), s);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> WklrElement {
        let mut out = WklrElement::zero(self.src.clone(), self.tgt.clone());
        if !c.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(p, f)| (p.clone(), f.scale(c))).collect();
        }
        out
    }

    /// Coordinates as `(π, monomial) → coefficient`.
    pub fn coordinates(&self) -> impl Iterator<Item = ((&Perm, &Monomial), &Rat)> {
        self.coeffs
            .iter()
            .flat_map(|(pi, p)| p.terms().map(move |(m, c)| ((pi, m), c)))
    }
}

impl fmt::Display for WklrElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] -> [{}]:", self.src, self.tgt)?;
        if self.coeffs.is_empty() {
            return write!(f, " 0");
        }
        for (pi, p) in &self.coeffs {
            write!(f, " b{pi}·({p})")?;
        }
        Ok(())
    }
}

/// Result of stacking two elements: undefined compositions are a
/// distinguished zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Product {
    Value(WklrElement),
    Zero,
}

impl Product {
    pub fn value(self) -> Option<WklrElement> {
        match self {
            Product::Value(x) => Some(x),
            Product::Zero => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Product::Value(x) => x.is_zero(),
            Product::Zero => true,
        }
    }
}

/// The chosen diagram `b_π` and its operator.
#[derive(Debug)]
pub struct BasisDiagram {
    pub diagram: Diagram,
    pub op: SkewElement,
    pub degree: i64,
}

type CacheKey = (Loading, Loading, Perm);

/// A weighted KLR algebra. Holds the normalized quiver and the cache of
/// basis diagrams, which is part of the algebra's identity: every element is
/// expressed against these particular `b_π`.
pub struct Wklr {
    quiver: Quiver,
    cache: RwLock<HashMap<CacheKey, Arc<BasisDiagram>>>,
}

/// Pivots visited by straightening, for the triangularity check.
pub type PivotTrace = Vec<Perm>;

impl Wklr {
    /// Validates and merges parallel edges first.
    pub fn new(quiver: Quiver) -> Result<Wklr> {
        Ok(Wklr {
            quiver: quiver.normalized()?,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    fn var_weights(&self, l: &Loading) -> Vec<i64> {
        l.labels().iter().map(|&v| 2 * self.quiver.d(v) as i64).collect()
    }

    pub fn idempotent(&self, i: &Loading) -> WklrElement {
        self.from_poly(i, MultiPoly::one(i.len()))
    }

    /// `p(y) e_i`.
    pub fn from_poly(&self, i: &Loading, p: MultiPoly) -> WklrElement {
        let mut x = WklrElement::zero(i.clone(), i.clone());
        if !p.is_zero() {
            x.coeffs.insert(Perm::identity(i.len()), p);
        }
        x
    }

    /// A dot on strand `k` (0-based).
    pub fn dot(&self, i: &Loading, k: usize) -> Result<WklrElement> {
        if k >= i.len() {
            return Err(Error::StrandOutOfRange { index: k, len: i.len() });
        }
        Ok(self.from_poly(i, MultiPoly::var(i.len(), k)))
    }

    /// The movie of the crossing of strands `k`, `k + 1` drawn left of every
    /// ghost between them: strand `k + 1` slides left next to strand `k`,
    /// the two cross, then strand `k` slides right into the vacated place.
    /// Either end position is nudged when the exact swap is not generic.
    pub fn psi_movie(&self, i: &Loading, k: usize) -> Result<Movie> {
        let n = i.len();
        if k + 1 >= n {
            return Err(Error::StrandOutOfRange { index: k + 1, len: n });
        }
        let q = &self.quiver;
        let x: Vec<Rat> = i.points().iter().map(|p| p.0.clone()).collect();
        let mut marks: Vec<Rat> = x.clone();
        for (xj, v) in i.points() {
            for e in &q.edges {
                if e.head == *v {
                    marks.push(xj + &e.weight);
                }
            }
        }
        marks.sort();
        marks.dedup();
        let gap = marks
            .windows(2)
            .map(|w| &w[1] - &w[0])
            .min()
            .unwrap_or_else(Rat::one);
        let mut delta = gap / int(4);
        for _ in 0..64 {
            let ns = nudges(&delta);
            let pairs = ns.iter().flat_map(|a| ns.iter().map(move |b| (a, b)));
            for (nudge, back) in pairs {
                let mut m = Movie::starting_at(q, i);
                let mut f1 = x.clone();
                f1[k + 1] = &x[k] + &delta;
                m.push(f1);
                let mut f2 = x.clone();
                f2[k] = &x[k] + &delta;
                f2[k + 1] = &x[k] + back;
                m.push(f2);
                let mut f3 = x.clone();
                f3[k] = &x[k + 1] + nudge;
                f3[k + 1] = &x[k] + back;
                m.push(f3);
                let Ok(end) = m.end_loading() else { continue };
                if is_generic(q, &end) && trace(q, &m).is_ok() {
                    return Ok(m);
                }
            }
            delta /= int(2);
        }
        Err(Error::NonGeneric(format!("no generic crossing found for strand {k} of {i}")))
    }

    /// `ψ_k e_i` ending at the swapped loading itself (nudged if needed).
    pub fn psi_raw(&self, i: &Loading, k: usize) -> Result<WklrElement> {
        let m = self.psi_movie(i, k)?;
        self.element_from_movie(&m)
    }

    /// `ψ_k e_i` followed by the straight-line isomorphism onto the chamber
    /// representative of its target.
    pub fn psi(&self, i: &Loading, k: usize, chambers: &ChamberSet) -> Result<WklrElement> {
        let mut m = self.psi_movie(i, k)?;
        let rep = chambers.canonical(&self.quiver, &m.end_loading()?)?.clone();
        m.push_straight_to(&rep)?;
        self.element_from_movie(&m)
    }

    /// The element whose operator is the traced movie.
    pub fn element_from_movie(&self, m: &Movie) -> Result<WklrElement> {
        let src = Loading::new(
            m.frames[0].iter().cloned().zip(m.labels.iter().copied()).collect(),
        )?;
        let tgt = m.end_loading()?;
        let d = trace(&self.quiver, m)?;
        self.straighten(&d.operator(&self.quiver), &src, &tgt)
    }

    /// The straight-line path between two loadings of the same dimension
    /// vector, strands matched by label rank.
    pub fn straight_line(&self, src: &Loading, tgt: &Loading) -> Result<WklrElement> {
        let n = self.quiver.vertex_count();
        if src.weight(n) != tgt.weight(n) {
            return Err(Error::WeightMismatch);
        }
        let mut m = Movie::starting_at(&self.quiver, src);
        m.push_straight_to(tgt)?;
        self.element_from_movie(&m)
    }

    /// `b_π`: strands move linearly from their source positions to their
    /// `π`-images in the target.
    pub fn wire_b(&self, pi: &Perm, src: &Loading, tgt: &Loading) -> Result<Arc<BasisDiagram>> {
        let key = (src.clone(), tgt.clone(), pi.clone());
        if let Some(b) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(b.clone());
        }
        if pi.n() != src.len() || src.len() != tgt.len() {
            return Err(Error::LabelMismatch);
        }
        if (0..src.len()).any(|a| src.label(a) != tgt.label(pi.apply(a))) {
            return Err(Error::LabelMismatch);
        }
        let mut m = Movie::starting_at(&self.quiver, src);
        m.push((0..src.len()).map(|a| tgt.position(pi.apply(a)).clone()).collect());
        let diagram = trace(&self.quiver, &m)?;
        debug_assert_eq!(&diagram.perm, pi);
        let op = diagram.operator(&self.quiver);
        let degree = diagram.degree(&self.quiver);
        let b = Arc::new(BasisDiagram { diagram, op, degree });
        self.cache
            .write()
            .expect("cache lock")
            .entry(key)
            .or_insert(b.clone());
        Ok(b)
    }

    /// Permutations `π` with `label(tgt, π(a)) = label(src, a)`.
    pub fn basis_perms(&self, src: &Loading, tgt: &Loading) -> Vec<Perm> {
        if src.len() != tgt.len() {
            return Vec::new();
        }
        let mut v: Vec<Perm> = Perm::all(src.len())
            .into_iter()
            .filter(|pi| (0..src.len()).all(|a| src.label(a) == tgt.label(pi.apply(a))))
            .collect();
        v.sort_by_key(|p| p.shortlex_key());
        v
    }

    pub fn to_operator(&self, x: &WklrElement) -> Result<SkewElement> {
        let mut op = SkewElement::zero(x.src.len());
        for (pi, p) in &x.coeffs {
            let b = self.wire_b(pi, &x.src, &x.tgt)?;
            op = op.add(&b.op.mul_right_poly(p));
        }
        Ok(op)
    }

    pub fn straighten(&self, x: &SkewElement, src: &Loading, tgt: &Loading) -> Result<WklrElement> {
        self.straighten_traced(x, src, tgt).map(|(e, _)| e)
    }

    /// Descending-length elimination against the leading terms of the
    /// `b_π`, returning the visited pivots as well.
    pub fn straighten_traced(
        &self,
        x: &SkewElement,
        src: &Loading,
        tgt: &Loading,
    ) -> Result<(WklrElement, PivotTrace)> {
        let mut out = WklrElement::zero(src.clone(), tgt.clone());
        let mut rem = x.clone();
        let mut pivots = Vec::new();
        while let Some(pi) = rem.top_components().first().map(|p| (*p).clone()) {
            let f = rem.component(&pi).expect("top component present").clone();
            let b = self
                .wire_b(&pi, src, tgt)
                .map_err(|_| Error::NotInSpan(format!("component at {pi} has incompatible labels")))?;
            let lead = b.op.component(&pi).expect("b_π has a leading term");
            let g = f
                .div_to_poly(lead)
                .ok_or_else(|| Error::NotInSpan(format!("non-polynomial coefficient at {pi}")))?;
            let p = g.permute(&pi.inverse());
            rem = rem.sub(&b.op.mul_right_poly(&p));
            if rem.component(&pi).is_some() {
                return Err(Error::NotInSpan(format!("elimination at {pi} did not clear it")));
            }
            pivots.push(pi.clone());
            out.coeffs.insert(pi, p);
        }
        Ok((out, pivots))
    }

    /// `a ∘ b`, or the distinguished zero when `src(a) ≠ tgt(b)`.
    pub fn multiply(&self, a: &WklrElement, b: &WklrElement) -> Result<Product> {
        if a.src != b.tgt {
            return Ok(Product::Zero);
        }
        let op = self.to_operator(a)?.compose(&self.to_operator(b)?);
        Ok(Product::Value(self.straighten(&op, &b.src, &a.tgt)?))
    }

    /// Reflection through a horizontal line: each `b_π ∘ p` becomes
    /// `p ∘ (reflected b_π)`.
    pub fn star(&self, a: &WklrElement) -> Result<WklrElement> {
        let n = a.src.len();
        let mut op = SkewElement::zero(n);
        for (pi, p) in &a.coeffs {
            let b = self.wire_b(pi, &a.src, &a.tgt)?;
            let refl = b.diagram.mirrored().operator(&self.quiver);
            op = op.add(&refl.mul_left_poly(p));
        }
        self.straighten(&op, &a.tgt, &a.src)
    }

    /// Operator degree, or `None` for zero or inhomogeneous elements.
    pub fn degree(&self, a: &WklrElement) -> Result<Option<i64>> {
        let w = self.var_weights(&a.src);
        let mut deg = None;
        for (pi, p) in &a.coeffs {
            let b = self.wire_b(pi, &a.src, &a.tgt)?;
            let Some(dp) = p.weighted_degree(&w) else {
                return Ok(None);
            };
            let d = b.degree + dp;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Ok(None),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Dimensions of the graded pieces of `e_tgt W e_src` from the lowest
    /// possible degree (or 0) up to `cutoff`.
    pub fn graded_dim(&self, src: &Loading, tgt: &Loading, cutoff: i64) -> Result<Vec<(i64, usize)>> {
        let w = self.var_weights(src);
        let mut degs = Vec::new();
        for pi in self.basis_perms(src, tgt) {
            degs.push(self.wire_b(&pi, src, tgt)?.degree);
        }
        let lo = degs.iter().copied().min().unwrap_or(0).min(0);
        Ok((lo..=cutoff)
            .map(|d| {
                let dim = degs
                    .iter()
                    .map(|&b| Monomial::of_weighted_degree(&w, d - b).len())
                    .sum();
                (d, dim)
            })
            .collect())
    }

    /// Basis of the degree-`d` piece of `e_tgt W e_src` as
    /// `(π, monomial)` pairs.
    pub fn graded_basis(&self, src: &Loading, tgt: &Loading, d: i64) -> Result<Vec<(Perm, Monomial)>> {
        let w = self.var_weights(src);
        let mut out = Vec::new();
        for pi in self.basis_perms(src, tgt) {
            let b = self.wire_b(&pi, src, tgt)?;
            for m in Monomial::of_weighted_degree(&w, d - b.degree) {
                out.push((pi.clone(), m));
            }
        }
        Ok(out)
    }

    /// The lowest degree of any basis element of `e_tgt W e_src`.
    pub fn min_degree(&self, src: &Loading, tgt: &Loading) -> Result<Option<i64>> {
        let mut lo = None;
        for pi in self.basis_perms(src, tgt) {
            let d = self.wire_b(&pi, src, tgt)?.degree;
            lo = Some(lo.map_or(d, |l: i64| l.min(d)));
        }
        Ok(lo)
    }

    /// The operator obtained by moving strands linearly from `src` to `tgt`
    /// (matched by label rank) while every edge weight moves linearly from
    /// this algebra's weighting to `target_weights`.
    pub fn interp_operator(&self, target_weights: &[Rat], src: &Loading, tgt: &Loading) -> Result<SkewElement> {
        if target_weights.len() != self.quiver.edges.len() {
            return Err(Error::InvalidArgument("one weight per edge required".into()));
        }
        let q1 = self.quiver.with_weights(target_weights);
        if !is_generic(&self.quiver, src) || !is_generic(&q1, tgt) {
            return Err(Error::NonGeneric("interpolation endpoints".into()));
        }
        let mut m = Movie::starting_at(&self.quiver, src);
        m.push_straight_to(tgt)?;
        let last = m.frames.pop().expect("pushed frame");
        m.weights.pop();
        m.push_weighted(last, target_weights.to_vec());
        Ok(trace(&self.quiver, &m)?.operator(&self.quiver))
    }
}

/// `0, δ/2, -δ/2, δ/4, -δ/4, …`: candidate offsets for the final position.
fn nudges(delta: &Rat) -> Vec<Rat> {
    let mut out = vec![Rat::zero()];
    let mut d = delta / int(2);
    for _ in 0..8 {
        out.push(d.clone());
        out.push(-d.clone());
        d /= int(2);
    }
    out
}
