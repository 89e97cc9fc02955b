//! Loadings, ghosts, equivalence signatures and chamber enumeration.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver, VertexId};
use crate::rat::{fmt_rat, int, pow2_below, Rat};
use crate::Limits;

/// A finite set of labelled points on the rational line, sorted by
/// position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Loading {
    points: Vec<(Rat, VertexId)>,
}

impl Loading {
    pub fn new(mut points: Vec<(Rat, VertexId)>) -> Result<Loading> {
        points.sort();
        if points.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidArgument(
                "loading positions must be distinct".into(),
            ));
        }
        Ok(Loading { points })
    }

    pub fn empty() -> Loading {
        Loading { points: Vec::new() }
    }

    pub fn points(&self) -> &[(Rat, VertexId)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, k: usize) -> &Rat {
        &self.points[k].0
    }

    pub fn label(&self, k: usize) -> VertexId {
        self.points[k].1
    }

    /// The sequence of labels read left to right.
    pub fn labels(&self) -> Vec<VertexId> {
        self.points.iter().map(|p| p.1).collect()
    }

    pub fn weight(&self, vertex_count: usize) -> DimVector {
        let mut d = DimVector::zero(vertex_count);
        for (_, v) in &self.points {
            d.0[v.0] += 1;
        }
        d
    }

    pub fn translate(&self, t: &Rat) -> Loading {
        Loading {
            points: self.points.iter().map(|(x, v)| (x + t, *v)).collect(),
        }
    }

    /// For each point, how many points with the same label lie to its left.
    pub fn label_ranks(&self) -> Vec<usize> {
        let mut seen: HashMap<VertexId, usize> = HashMap::new();
        self.points
            .iter()
            .map(|(_, v)| {
                let r = seen.entry(*v).or_insert(0);
                *r += 1;
                *r - 1
            })
            .collect()
    }

    pub fn diameter(&self) -> Rat {
        match (self.points.first(), self.points.last()) {
            (Some(a), Some(b)) => &b.0 - &a.0,
            _ => Rat::zero(),
        }
    }

    /// Smallest and largest position among points and their ghosts.
    fn extent(&self, q: &Quiver) -> Option<(Rat, Rat)> {
        let mut all: Vec<Rat> = self.points.iter().map(|p| p.0.clone()).collect();
        all.extend(ghosts(q, self).into_iter().map(|g| g.position));
        let lo = all.iter().min()?.clone();
        let hi = all.iter().max()?.clone();
        Some((lo, hi))
    }
}

impl fmt::Display for Loading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|(x, v)| format!("{}@{}", v, fmt_rat(x)))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A ghost: a copy of point `owner` shifted by the weight of `edge`, whose
/// head is the owner's label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ghost {
    pub position: Rat,
    pub edge: usize,
    pub owner: usize,
}

pub fn ghosts(q: &Quiver, i: &Loading) -> Vec<Ghost> {
    let mut out = Vec::new();
    for (k, (x, v)) in i.points.iter().enumerate() {
        for (ei, e) in q.edges.iter().enumerate() {
            if e.head == *v {
                out.push(Ghost {
                    position: x + &e.weight,
                    edge: ei,
                    owner: k,
                });
            }
        }
    }
    out
}

/// No tail point sits on a ghost of its edge, and no two ghosts of distinct
/// weights coincide. Coincidences forced by weight-zero loops are allowed.
pub fn is_generic(q: &Quiver, i: &Loading) -> bool {
    for e in &q.edges {
        if e.is_weight_zero_loop() {
            continue;
        }
        for (xj, vj) in &i.points {
            if *vj != e.tail {
                continue;
            }
            for (xk, vk) in &i.points {
                if *vk == e.head && *xj == xk + &e.weight {
                    return false;
                }
            }
        }
    }
    let mut gs: Vec<(Rat, Rat)> = ghosts(q, i)
        .into_iter()
        .map(|g| (g.position, q.edges[g.edge].weight.clone()))
        .collect();
    gs.sort();
    !gs.windows(2).any(|w| w[0].0 == w[1].0 && w[0].1 != w[1].1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// The ghost lies left of the tail point.
    Left,
    /// The ghost lies right of the tail point.
    Right,
    /// A weight-zero loop ghost on its own point.
    Same,
}

/// For every edge `e`, every `m`-th point labelled `t(e)` and every `n`-th
/// point labelled `h(e)`: on which side of the former the ghost of the
/// latter lies.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(Vec<((usize, usize, usize), Side)>);

impl Signature {
    pub fn entries(&self) -> &[((usize, usize, usize), Side)] {
        &self.0
    }

    pub fn get(&self, edge: usize, m: usize, n: usize) -> Option<Side> {
        self.0
            .binary_search_by(|(k, _)| k.cmp(&(edge, m, n)))
            .ok()
            .map(|i| self.0[i].1)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (_, s) in &self.0 {
            let c = match s {
                Side::Left => 'L',
                Side::Right => 'R',
                Side::Same => 'S',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

pub fn signature(q: &Quiver, i: &Loading) -> Result<Signature> {
    if !is_generic(q, i) {
        return Err(Error::NonGeneric(i.to_string()));
    }
    let by_label = |v: VertexId| -> Vec<(usize, &Rat)> {
        i.points
            .iter()
            .enumerate()
            .filter(|(_, p)| p.1 == v)
            .map(|(k, p)| (k, &p.0))
            .collect()
    };
    let mut out = Vec::new();
    for (ei, e) in q.edges.iter().enumerate() {
        let tails = by_label(e.tail);
        let heads = by_label(e.head);
        for (m, (kt, xt)) in tails.iter().enumerate() {
            for (n, (kh, xh)) in heads.iter().enumerate() {
                let g = *xh + &e.weight;
                let side = if &g < *xt {
                    Side::Left
                } else if &g > *xt {
                    Side::Right
                } else if e.is_weight_zero_loop() && kt == kh {
                    Side::Same
                } else {
                    return Err(Error::NonGeneric(i.to_string()));
                };
                out.push(((ei, m, n), side));
            }
        }
    }
    out.sort();
    Ok(Signature(out))
}

/// Equal dimension vectors and equal signatures.
pub fn equivalent(q: &Quiver, a: &Loading, b: &Loading) -> Result<bool> {
    let n = q.vertex_count();
    Ok(a.weight(n) == b.weight(n) && signature(q, a)? == signature(q, b)?)
}

/// One representative loading per chamber of the hyperplane arrangement for
/// a dimension vector, ordered by signature.
#[derive(Clone, Debug)]
pub struct ChamberSet {
    pub nu: DimVector,
    reps: Vec<Loading>,
    sigs: Vec<Signature>,
    index: HashMap<Signature, usize>,
}

impl ChamberSet {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[Loading] {
        &self.reps
    }

    pub fn rep(&self, k: usize) -> &Loading {
        &self.reps[k]
    }

    pub fn signatures(&self) -> &[Signature] {
        &self.sigs
    }

    /// Index of the representative equivalent to `i`.
    pub fn find(&self, q: &Quiver, i: &Loading) -> Result<usize> {
        if i.weight(q.vertex_count()) != self.nu {
            return Err(Error::WeightMismatch);
        }
        let sig = signature(q, i)?;
        self.index.get(&sig).copied().ok_or(Error::NotInChamberSet)
    }

    pub fn canonical(&self, q: &Quiver, i: &Loading) -> Result<&Loading> {
        Ok(&self.reps[self.find(q, i)?])
    }
}

/// Strict difference constraint `x_a - x_b < c`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Diff {
    a: usize,
    b: usize,
    c: Rat,
}

impl Diff {
    fn slack(&self, x: &[Rat]) -> Rat {
        &self.c - (&x[self.a] - &x[self.b])
    }
}

/// A point satisfying every strict constraint, or `None` if infeasible.
///
/// Bellman-Ford over lexicographic weights `(c, -1)` stands for `c - ε`;
/// the infinitesimal is then replaced by a small enough power of two.
fn solve(nvars: usize, cons: &[Diff]) -> Option<Vec<Rat>> {
    let mut dist: Vec<(Rat, i64)> = vec![(Rat::zero(), 0); nvars];
    let mut settled = false;
    for _ in 0..=nvars {
        let mut changed = false;
        for d in cons {
            let cand = (&dist[d.b].0 + &d.c, dist[d.b].1 - 1);
            if cand < dist[d.a] {
                dist[d.a] = cand;
                changed = true;
            }
        }
        if !changed {
            settled = true;
            break;
        }
    }
    if !settled {
        return None;
    }
    let mut eps = Rat::one();
    loop {
        let x: Vec<Rat> = dist.iter().map(|(v, k)| v + &eps * int(*k)).collect();
        if cons.iter().all(|d| d.slack(&x).is_positive()) {
            let lo = x.iter().min().cloned().unwrap_or_else(Rat::zero);
            return Some(x.iter().map(|v| v - &lo).collect());
        }
        eps /= int(2);
    }
}

/// Enumerates `B(ν)`.
pub fn enumerate_chambers(q: &Quiver, nu: &DimVector, limits: &Limits) -> Result<ChamberSet> {
    let total = nu.total() as usize;
    if total > limits.max_points {
        return Err(Error::TooLarge {
            what: "points",
            size: total as u64,
            bound: limits.max_points as u64,
        });
    }
    let mut var_label = Vec::with_capacity(total);
    let mut offset = vec![0; q.vertex_count()];
    for (v, &count) in nu.0.iter().enumerate() {
        offset[v] = var_label.len();
        var_label.extend(std::iter::repeat_n(VertexId(v), count as usize));
    }
    let var = |v: VertexId, r: usize| offset[v.0] + r;

    let mut base = Vec::new();
    for (v, &count) in nu.0.iter().enumerate() {
        for r in 1..count as usize {
            base.push(Diff {
                a: var(VertexId(v), r - 1),
                b: var(VertexId(v), r),
                c: Rat::zero(),
            });
        }
    }

    let mut planes: BTreeSet<(usize, usize, Rat)> = BTreeSet::new();
    for e in &q.edges {
        if e.is_weight_zero_loop() {
            continue;
        }
        for m in 0..nu.get(e.tail) as usize {
            for n in 0..nu.get(e.head) as usize {
                let (a, b) = (var(e.tail, m), var(e.head, n));
                if a == b {
                    continue;
                }
                planes.insert(if a < b {
                    (a, b, e.weight.clone())
                } else {
                    (b, a, -e.weight.clone())
                });
            }
        }
    }

    let start = solve(total, &base).expect("dominant cone is nonempty");
    let mut cells: Vec<(Vec<Diff>, Vec<Rat>)> = vec![(base, start)];
    for (a, b, c) in planes {
        let mut next = Vec::with_capacity(cells.len() * 2);
        for (cons, x) in cells {
            let below = Diff { a, b, c: c.clone() };
            let above = Diff { a: b, b: a, c: -c.clone() };
            for side in [below, above] {
                let mut cs = cons.clone();
                let holds = side.slack(&x).is_positive();
                cs.push(side);
                if holds {
                    next.push((cs, x.clone()));
                } else if let Some(y) = solve(total, &cs) {
                    next.push((cs, y));
                }
            }
        }
        cells = next;
    }

    let mut found: Vec<(Signature, Loading)> = Vec::with_capacity(cells.len());
    for (cons, x) in cells {
        let l = make_generic(q, &cons, &x, &var_label);
        found.push((signature(q, &l)?, l));
    }
    found.sort();
    let mut index = HashMap::new();
    for (k, (s, _)) in found.iter().enumerate() {
        let fresh = index.insert(s.clone(), k).is_none();
        debug_assert!(fresh, "distinct chambers share a signature");
    }
    let (sigs, reps) = found.into_iter().unzip();
    Ok(ChamberSet {
        nu: nu.clone(),
        reps,
        sigs,
        index,
    })
}

/// Perturbs an interior point of a chamber along `(1, 2, …, N)` until the
/// loading is generic, staying inside the chamber.
fn make_generic(q: &Quiver, cons: &[Diff], x: &[Rat], labels: &[VertexId]) -> Loading {
    let build = |x: &[Rat]| -> Option<Loading> {
        let lo = x.iter().min().cloned().unwrap_or_else(Rat::zero);
        let pts = x.iter().zip(labels).map(|(p, v)| (p - &lo, *v)).collect();
        Loading::new(pts).ok().filter(|l| is_generic(q, l))
    };
    if let Some(l) = build(x) {
        return l;
    }
    let n = x.len().max(1);
    let slack = cons
        .iter()
        .map(|d| d.slack(x))
        .min()
        .unwrap_or_else(Rat::one);
    let mut delta = pow2_below(&(slack / int(2 * n as i64)));
    loop {
        let y: Vec<Rat> = x
            .iter()
            .enumerate()
            .map(|(k, p)| p + &delta * int(k as i64 + 1))
            .collect();
        if let Some(l) = build(&y) {
            return l;
        }
        delta /= int(2);
    }
}

/// `1 + Σ|ϑ_e| +` the largest diameter among `loadings`.
pub fn separation_constant(q: &Quiver, loadings: &[&Loading]) -> Rat {
    let widest = loadings
        .iter()
        .map(|l| l.diameter())
        .max()
        .unwrap_or_else(Rat::zero);
    Rat::one() + q.total_abs_weight() + widest
}

/// Points spaced by `1 + Σ|ϑ_e|`, the first at 0.
pub fn well_separated(q: &Quiver, word: &[VertexId]) -> Loading {
    let s = separation_constant(q, &[]);
    let points = word
        .iter()
        .enumerate()
        .map(|(k, v)| (&s * int(k as i64), *v))
        .collect();
    Loading::new(points).expect("well-separated positions are distinct")
}

/// `i ∘ j`: `j` translated right until the gap between everything of `i`
/// (points and ghosts) and everything of `j` exceeds the separation
/// constant.
pub fn compose(q: &Quiver, i: &Loading, j: &Loading) -> Loading {
    let (Some((_, hi)), Some((lo, _))) = (i.extent(q), j.extent(q)) else {
        return if i.is_empty() { j.clone() } else { i.clone() };
    };
    let s = separation_constant(q, &[i, j]);
    let t = hi - lo + s + Rat::one();
    let mut points = i.points.clone();
    points.extend(j.translate(&t).points);
    Loading::new(points).expect("composed loadings are disjoint")
}

/// Moves every `v`-labelled point by `η_v` and changes weights to
/// `ϑ_e + η_{t(e)} - η_{h(e)}`, which keeps every ghost-versus-point
/// comparison unchanged.
pub fn shift_eta(q: &Quiver, i: &Loading, eta: &[Rat]) -> Result<(Quiver, Loading)> {
    let weights: Vec<Rat> = q
        .edges
        .iter()
        .map(|e| &e.weight + &eta[e.tail.0] - &eta[e.head.0])
        .collect();
    let q2 = q.with_weights(&weights);
    let points = i
        .points
        .iter()
        .map(|(x, v)| (x + &eta[v.0], *v))
        .collect();
    let l = Loading::new(points).map_err(|_| Error::NonGeneric("shifted loading".into()))?;
    if is_generic(q, i) && !is_generic(&q2, &l) {
        return Err(Error::NonGeneric(format!("shifted loading {l}")));
    }
    Ok((q2, l))
}

/// A potential `η` with `ϑ_e + η_{t(e)} - η_{h(e)} = 0` on every edge, when
/// one exists (always, for forests).
pub fn solve_trivializing_eta(q: &Quiver) -> Option<Vec<Rat>> {
    let n = q.vertex_count();
    let mut eta: Vec<Option<Rat>> = vec![None; n];
    for root in 0..n {
        if eta[root].is_some() {
            continue;
        }
        eta[root] = Some(Rat::zero());
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let ev = eta[v].clone().unwrap();
            for e in &q.edges {
                let (other, val) = if e.tail.0 == v {
                    (e.head.0, &ev + &e.weight)
                } else if e.head.0 == v {
                    (e.tail.0, &ev - &e.weight)
                } else {
                    continue;
                };
                if eta[other].is_none() {
                    eta[other] = Some(val);
                    queue.push_back(other);
                }
            }
        }
    }
    let eta: Vec<Rat> = eta.into_iter().map(Option::unwrap).collect();
    q.edges
        .iter()
        .all(|e| (&e.weight + &eta[e.tail.0] - &eta[e.head.0]).is_zero())
        .then_some(eta)
}
