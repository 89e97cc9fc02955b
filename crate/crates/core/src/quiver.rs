//! Weighted quivers with multiplicities and edge polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly};
use crate::rat::{fmt_rat, int, Rat};

/// Dense vertex index `0..vertex_count`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `Q_e(u, v)`: `u` is the head variable, `v` the tail variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgePoly(MultiPoly);

impl EdgePoly {
    /// From `(exponent of u, exponent of v, coefficient)` triples.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, Rat)>) -> EdgePoly {
        EdgePoly(MultiPoly::from_terms(
            2,
            terms.into_iter().map(|(a, b, c)| (Monomial::new(vec![a, b]), c)),
        ))
    }

    pub fn one() -> EdgePoly {
        EdgePoly(MultiPoly::one(2))
    }

    /// `u - v`.
    pub fn u_minus_v() -> EdgePoly {
        EdgePoly(MultiPoly::diff(2, 0, 1))
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rat)> {
        self.0.terms().map(|(m, c)| (m.exps()[0], m.exps()[1], c))
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rat {
        self.0.coeff(&Monomial::new(vec![a, b]))
    }

    pub fn mul(&self, other: &EdgePoly) -> EdgePoly {
        EdgePoly(&self.0 * &other.0)
    }

    pub fn pow(&self, e: u32) -> EdgePoly {
        EdgePoly(self.0.pow(e))
    }

    /// `Q(v, u)`.
    pub fn swap_args(&self) -> EdgePoly {
        EdgePoly(self.0.permute(&crate::poly::Perm::simple(2, 0)))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.swap_args()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Exact quotient by `u - v`.
    pub fn div_u_minus_v(&self) -> Option<EdgePoly> {
        self.0.divide_linear(0, 1).map(EdgePoly)
    }

    /// `Q(y_a, y_b)` in the ring with `n` variables.
    pub fn eval(&self, n: usize, a: usize, b: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(n);
        for (ea, eb, c) in self.terms() {
            let mut e = vec![0; n];
            e[a] += ea;
            e[b] += eb;
            out = &out + &MultiPoly::from_terms(n, [(Monomial::new(e), c.clone())]);
        }
        out
    }
}

impl fmt::Display for EdgePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.0.to_string().replace("y1", "u").replace("y2", "v");
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
    pub c: u32,
    pub cbar: u32,
    pub weight: Rat,
    pub q: EdgePoly,
}

impl Edge {
    /// A simply-laced edge with `Q = u - v`.
    pub fn simple(tail: usize, head: usize, weight: Rat) -> Edge {
        Edge {
            tail: VertexId(tail),
            head: VertexId(head),
            c: 1,
            cbar: 1,
            weight,
            q: EdgePoly::u_minus_v(),
        }
    }

    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    pub fn is_weight_zero_loop(&self) -> bool {
        self.is_loop() && self.weight.is_zero()
    }

    pub fn reversed(&self) -> Edge {
        Edge {
            tail: self.head,
            head: self.tail,
            c: self.cbar,
            cbar: self.c,
            weight: -self.weight.clone(),
            q: self.q.swap_args(),
        }
    }
}

/// A violated standing assumption, reported by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    BadSymmetrizer { vertex: usize },
    BadVertex { edge: usize },
    ZeroMultiplicity { edge: usize },
    NotSymmetrizable { edge: usize },
    NotHomogeneous { edge: usize },
    PureMonomialMissing { edge: usize },
    LoopNotDivisible { edge: usize },
    LoopQuotientNotSymmetric { edge: usize },
    BadCbVertex,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::BadSymmetrizer { vertex } => {
                write!(f, "vertex {vertex}: symmetrizer must be positive")
            }
            Diagnostic::BadVertex { edge } => write!(f, "edge {edge}: endpoint out of range"),
            Diagnostic::ZeroMultiplicity { edge } => {
                write!(f, "edge {edge}: multiplicities must be positive")
            }
            Diagnostic::NotSymmetrizable { edge } => write!(f, "edge {edge}: not symmetrizable"),
            Diagnostic::NotHomogeneous { edge } => {
                write!(f, "edge {edge}: Q polynomial not homogeneous")
            }
            Diagnostic::PureMonomialMissing { edge } => {
                write!(f, "edge {edge}: pure monomial coefficient of Q is zero")
            }
            Diagnostic::LoopNotDivisible { edge } => {
                write!(f, "edge {edge}: loop polynomial not divisible by (u-v)")
            }
            Diagnostic::LoopQuotientNotSymmetric { edge } => {
                write!(f, "edge {edge}: loop polynomial quotient by (u-v) not symmetric")
            }
            Diagnostic::BadCbVertex => write!(f, "Crawley-Boevey vertex out of range"),
        }
    }
}

/// Dimension vector `ν = Σ v_i α_i`, stored densely by vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn zero(vertex_count: usize) -> DimVector {
        DimVector(vec![0; vertex_count])
    }

    pub fn simple(vertex_count: usize, v: usize) -> DimVector {
        let mut d = DimVector::zero(vertex_count);
        d.0[v] = 1;
        d
    }

    pub fn get(&self, v: VertexId) -> u32 {
        self.0.get(v.0).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All `μ` with `0 ≤ μ ≤ self` componentwise, in lexicographic order.
    pub fn sub_vectors(&self) -> Vec<DimVector> {
        let mut out = vec![Vec::new()];
        for &x in &self.0 {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u32>| {
                    (0..=x).map(move |k| {
                        let mut w = v.clone();
                        w.push(k);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(DimVector).collect()
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    pub symmetrizers: Vec<u32>,
    pub edges: Vec<Edge>,
    /// The appended Crawley-Boevey vertex, if this quiver was built by
    /// [`crawley_boevey`].
    pub cb_vertex: Option<VertexId>,
}

impl Quiver {
    pub fn new(symmetrizers: Vec<u32>, edges: Vec<Edge>) -> Quiver {
        Quiver {
            symmetrizers,
            edges,
            cb_vertex: None,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.symmetrizers.len()
    }

    pub fn d(&self, v: VertexId) -> u32 {
        self.symmetrizers[v.0]
    }

    /// The weight-zero loop at `v`, if any. After merging there is at most one.
    pub fn weight_zero_loop(&self, v: VertexId) -> Option<&Edge> {
        self.edges
            .iter()
            .find(|e| e.tail == v && e.is_weight_zero_loop())
    }

    /// Sum of `|ϑ_e|`.
    pub fn total_abs_weight(&self) -> Rat {
        self.edges.iter().map(|e| e.weight.abs()).sum()
    }

    /// Same quiver with every weight replaced.
    pub fn with_weights(&self, weights: &[Rat]) -> Quiver {
        assert_eq!(weights.len(), self.edges.len());
        let mut q = self.clone();
        for (e, w) in q.edges.iter_mut().zip(weights) {
            e.weight = w.clone();
        }
        q
    }

    /// Validates and merges parallel edges; the normal entry point for
    /// user-supplied quivers.
    pub fn normalized(self) -> Result<Quiver> {
        let diags = validate(&self);
        if !diags.is_empty() {
            return Err(Error::Validation(diags));
        }
        let q = merge_parallel(&self);
        let diags = validate(&q);
        if !diags.is_empty() {
            return Err(Error::Validation(diags));
        }
        Ok(q)
    }
}

/// All violations of the standing assumptions on multiplicities and edge
/// polynomials. Parallel-edge conditions are the business of
/// [`merge_parallel`].
pub fn validate(q: &Quiver) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let n = q.vertex_count();
    for (v, &d) in q.symmetrizers.iter().enumerate() {
        if d == 0 {
            out.push(Diagnostic::BadSymmetrizer { vertex: v });
        }
    }
    if let Some(cb) = q.cb_vertex {
        if cb.0 >= n {
            out.push(Diagnostic::BadCbVertex);
        }
    }
    for (i, e) in q.edges.iter().enumerate() {
        if e.tail.0 >= n || e.head.0 >= n {
            out.push(Diagnostic::BadVertex { edge: i });
            continue;
        }
        if e.c == 0 || e.cbar == 0 {
            out.push(Diagnostic::ZeroMultiplicity { edge: i });
            continue;
        }
        let (dh, dt) = (q.d(e.head), q.d(e.tail));
        if dh * e.c != dt * e.cbar {
            out.push(Diagnostic::NotSymmetrizable { edge: i });
        }
        let target = dh * e.c;
        if e.q.terms().any(|(a, b, _)| a * dh + b * dt != target) {
            out.push(Diagnostic::NotHomogeneous { edge: i });
        }
        if e.q.coeff(e.c, 0).is_zero() || e.q.coeff(0, e.cbar).is_zero() {
            out.push(Diagnostic::PureMonomialMissing { edge: i });
        }
        if e.is_weight_zero_loop() {
            match e.q.div_u_minus_v() {
                None => out.push(Diagnostic::LoopNotDivisible { edge: i }),
                Some(p) if !p.is_symmetric() => {
                    out.push(Diagnostic::LoopQuotientNotSymmetric { edge: i })
                }
                Some(_) => {}
            }
        }
    }
    out
}

/// The edge with orientation flipped, weight negated, `Q` arguments swapped
/// and multiplicities exchanged.
pub fn reverse_edge(q: &Quiver, e: usize) -> Quiver {
    let mut out = q.clone();
    out.edges[e] = q.edges[e].reversed();
    out
}

fn orientation_key(e: &Edge) -> (VertexId, VertexId, Rat) {
    let forward = e.tail < e.head || (e.tail == e.head && !e.weight.is_negative());
    if forward {
        (e.tail, e.head, e.weight.clone())
    } else {
        (e.head, e.tail, -e.weight.clone())
    }
}

/// Replaces every family of parallel edges with matching weight (after
/// reversing orientations as needed) by a single edge with the product
/// polynomial and summed multiplicities. The first edge of each family fixes
/// the orientation; families keep the order of their first members.
pub fn merge_parallel(q: &Quiver) -> Quiver {
    let mut groups: Vec<Edge> = Vec::new();
    let mut index: BTreeMap<(VertexId, VertexId, Rat), usize> = BTreeMap::new();
    for e in &q.edges {
        let key = orientation_key(e);
        match index.get(&key) {
            None => {
                index.insert(key, groups.len());
                groups.push(e.clone());
            }
            Some(&g) => {
                let first = &groups[g];
                let aligned = if e.tail == first.tail && e.head == first.head && e.weight == first.weight {
                    e.clone()
                } else {
                    e.reversed()
                };
                let merged = &mut groups[g];
                merged.q = merged.q.mul(&aligned.q);
                merged.c += aligned.c;
                merged.cbar += aligned.cbar;
            }
        }
    }
    Quiver {
        symmetrizers: q.symmetrizers.clone(),
        edges: groups,
        cb_vertex: q.cb_vertex,
    }
}

/// `i·j = 2 d_i δ_ij - d_i (Σ_{e: j→i} c_e + Σ_{e: i→j} c_ē)`, extended
/// bilinearly.
pub fn pairing_dot(q: &Quiver, mu: &DimVector, nu: &DimVector) -> i64 {
    let n = q.vertex_count();
    let mut total = 0i64;
    for i in 0..n {
        for j in 0..n {
            let m = mu.get(VertexId(i)) as i64 * nu.get(VertexId(j)) as i64;
            if m == 0 {
                continue;
            }
            let di = q.symmetrizers[i] as i64;
            let mut v = if i == j { 2 * di } else { 0 };
            for e in &q.edges {
                if e.tail.0 == j && e.head.0 == i {
                    v -= di * e.c as i64;
                }
                if e.tail.0 == i && e.head.0 == j {
                    v -= di * e.cbar as i64;
                }
            }
            total += m * v;
        }
    }
    total
}

/// `⟨μ, ν⟩` from `⟨j, i⟩ = d_i δ_ij - Σ_{e: j→i} d_i c_e`, with `μ` in the
/// `j` slot.
pub fn pairing_bracket(q: &Quiver, mu: &DimVector, nu: &DimVector) -> i64 {
    let n = q.vertex_count();
    let mut total = 0i64;
    for j in 0..n {
        for i in 0..n {
            let m = mu.get(VertexId(j)) as i64 * nu.get(VertexId(i)) as i64;
            if m == 0 {
                continue;
            }
            let di = q.symmetrizers[i] as i64;
            let mut v = if i == j { di } else { 0 };
            for e in &q.edges {
                if e.tail.0 == j && e.head.0 == i {
                    v -= di * e.c as i64;
                }
            }
            total += m * v;
        }
    }
    total
}

/// Appends a vertex with `d = 1` and one edge from it to each target, with
/// `c = c̄ = 1`, `Q = u - v` and the given weight, then merges parallel
/// edges. The new vertex is last and flagged as `cb_vertex`.
pub fn crawley_boevey(q: &Quiver, targets: &[(VertexId, Rat)]) -> Quiver {
    let mut out = q.clone();
    let cb = out.vertex_count();
    out.symmetrizers.push(1);
    for (v, w) in targets {
        out.edges.push(Edge::simple(cb, v.0, w.clone()));
    }
    out.cb_vertex = Some(VertexId(cb));
    merge_parallel(&out)
}

/// `P_e = Q_e / (u - v)` for a weight-zero loop.
pub fn loop_p(e: &Edge) -> Result<EdgePoly> {
    if !e.is_weight_zero_loop() {
        return Err(Error::NotWeightZeroLoop);
    }
    let p = e.q.div_u_minus_v().ok_or(Error::NotDivisible)?;
    if !p.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(p)
}

/// Small quivers used throughout the tests and offered by the command line.
pub mod presets {
    use super::*;

    /// Type `A_n` with vertices `0..n` and edges `k → k+1` of the given
    /// weights.
    pub fn a_n(weights: &[Rat]) -> Quiver {
        let n = weights.len() + 1;
        let edges = weights
            .iter()
            .enumerate()
            .map(|(k, w)| Edge::simple(k, k + 1, w.clone()))
            .collect();
        Quiver::new(vec![1; n], edges)
    }

    /// Two vertices, two edges `0 → 1` with weights `w1 != w2`.
    pub fn kronecker(w1: Rat, w2: Rat) -> Quiver {
        Quiver::new(vec![1, 1], vec![Edge::simple(0, 1, w1), Edge::simple(0, 1, w2)])
    }

    /// One vertex with one loop.
    pub fn jordan(weight: Rat, q: EdgePoly) -> Quiver {
        let e = Edge {
            tail: VertexId(0),
            head: VertexId(0),
            c: 1,
            cbar: 1,
            weight,
            q,
        };
        Quiver::new(vec![1], vec![e])
    }

    pub fn single_vertex() -> Quiver {
        Quiver::new(vec![1], vec![])
    }

    /// Crawley-Boevey quiver of `sl_2` for highest weight `ℓω`: vertex 0 is
    /// the original vertex, vertex 1 the new one, and `ℓ` new edges of equal
    /// weight `varpi` merge into one with `Q = (u - v)^ℓ`.
    pub fn cb_sl2(level: usize, varpi: Rat) -> Quiver {
        let base = single_vertex();
        let targets = vec![(VertexId(0), varpi); level];
        crawley_boevey(&base, &targets)
    }

    /// Default weight for new Crawley-Boevey edges: comfortably larger than
    /// the separation of any small loading.
    pub fn default_varpi() -> Rat {
        int(10)
    }

}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {} (c={}, cbar={}, weight={}, Q={})",
            self.tail,
            self.head,
            self.c,
            self.cbar,
            fmt_rat(&self.weight),
            self.q
        )
    }
}
