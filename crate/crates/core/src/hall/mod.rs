//! Finite-field point counts: loaded flags over `F_p`, the functions they
//! define on `E_ν(F_p)`, and Hall convolution.
//!
//! Only quivers with all symmetrizers 1 and `c_e = c̄_e` are supported; an
//! edge then stands for `c_e` parallel arrows `t(e) → h(e)`.

pub mod fq;
pub mod qsqrt;

use std::fmt::Write as _;

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::loading::{compose, Loading};
use crate::quiver::{pairing_bracket, pairing_dot, DimVector, Quiver};
use crate::rat::Rat;
use crate::Limits;

pub use fq::{Mat, Subspace};
pub use qsqrt::QSqrt;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Arrow {
    tail: usize,
    head: usize,
    weight: Rat,
}

fn arrows(q: &Quiver) -> Result<Vec<Arrow>> {
    if q.symmetrizers.iter().any(|&d| d != 1) {
        return Err(Error::Unsupported("point counts need all symmetrizers equal to 1".into()));
    }
    let mut out = Vec::new();
    for e in &q.edges {
        if e.c != e.cbar {
            return Err(Error::Unsupported("point counts need c = c̄ on every edge".into()));
        }
        for _ in 0..e.c {
            out.push(Arrow {
                tail: e.tail.0,
                head: e.head.0,
                weight: e.weight.clone(),
            });
        }
    }
    Ok(out)
}

fn check_prime(p: u32) -> Result<u8> {
    match p {
        2 | 3 | 5 => Ok(p as u8),
        _ => Err(Error::InvalidArgument(format!("prime must be 2, 3 or 5, got {p}"))),
    }
}

/// A point of `E_ν(F_p)`: one `dim V_h × dim V_t` matrix per arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqRep {
    pub p: u8,
    pub mats: Vec<Mat>,
}

impl FqRep {
    /// Entries of all matrices in arrow order, row-major.
    pub fn encoding(&self) -> Vec<u8> {
        self.mats.iter().flat_map(|m| m.data.iter().copied()).collect()
    }

    pub fn hex(&self) -> String {
        self.encoding().iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }
}

/// The finite set `E_ν(F_p)`, enumerated in lexicographic order of the
/// encoding.
#[derive(Clone, Debug)]
pub struct RepSpace {
    pub p: u8,
    pub nu: DimVector,
    arrows: Vec<Arrow>,
    coords: usize,
}

impl RepSpace {
    pub fn new(q: &Quiver, nu: &DimVector, p: u32, limits: &Limits) -> Result<RepSpace> {
        let p = check_prime(p)?;
        let arrows = arrows(q)?;
        let dims = |v: usize| nu.0.get(v).copied().unwrap_or(0) as usize;
        let coords: usize = arrows.iter().map(|a| dims(a.head) * dims(a.tail)).sum();
        let size = (p as u64).checked_pow(coords as u32).unwrap_or(u64::MAX);
        if size > limits.max_hall_points {
            return Err(Error::TooLarge {
                what: "points of E_nu(F_p)",
                size,
                bound: limits.max_hall_points,
            });
        }
        Ok(RepSpace {
            p,
            nu: nu.clone(),
            arrows,
            coords,
        })
    }

    pub fn dim(&self, v: usize) -> usize {
        self.nu.0.get(v).copied().unwrap_or(0) as usize
    }

    pub fn size(&self) -> u64 {
        (self.p as u64).pow(self.coords as u32)
    }

    pub fn rep(&self, index: u64) -> FqRep {
        let mut digits = vec![0u8; self.coords];
        let mut x = index;
        for d in digits.iter_mut().rev() {
            *d = (x % self.p as u64) as u8;
            x /= self.p as u64;
        }
        let mut mats = Vec::with_capacity(self.arrows.len());
        let mut at = 0;
        for a in &self.arrows {
            let (r, c) = (self.dim(a.head), self.dim(a.tail));
            mats.push(Mat {
                rows: r,
                cols: c,
                data: digits[at..at + r * c].to_vec(),
            });
            at += r * c;
        }
        FqRep { p: self.p, mats }
    }

    pub fn index(&self, rep: &FqRep) -> u64 {
        rep.encoding()
            .iter()
            .fold(0u64, |acc, &d| acc * self.p as u64 + d as u64)
    }

    /// `g · rep`, with `A_a ↦ g_{h(a)} A_a g_{t(a)}⁻¹`.
    pub fn act(&self, g: &[Mat], rep: &FqRep) -> FqRep {
        let p = self.p;
        let inv: Vec<Mat> = g.iter().map(|m| m.inverse(p).expect("invertible")).collect();
        FqRep {
            p,
            mats: self
                .arrows
                .iter()
                .zip(&rep.mats)
                .map(|(a, m)| g[a.head].mul(m, p).mul(&inv[a.tail], p))
                .collect(),
        }
    }

    pub fn random_group_element<R: Rng>(&self, rng: &mut R) -> Vec<Mat> {
        (0..self.nu.0.len())
            .map(|v| Mat::random_invertible(self.dim(v), self.p, rng))
            .collect()
    }

    /// Every I-graded subrepresentation `N ⊆ rep` of dimension `sub.nu`, as
    /// the pair of indices of `N` in `sub` and `rep / N` in `quot`.
    fn subquotients(&self, rep: &FqRep, sub: &RepSpace, quot: &RepSpace) -> Vec<(u64, u64)> {
        let p = self.p;
        let n = self.nu.0.len();
        let grass: Vec<Vec<Subspace>> = (0..n)
            .map(|v| Subspace::all(self.dim(v), sub.dim(v), p))
            .collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; n];
        'outer: loop {
            let ns: Vec<&Subspace> = (0..n).map(|v| &grass[v][choice[v]]).collect();
            let stable = self.arrows.iter().zip(&rep.mats).all(|(a, m)| {
                ns[a.tail].rows().iter().all(|r| ns[a.head].contains(&m.apply(r, p), p))
            });
            if stable {
                let mut sm = Vec::new();
                let mut qm = Vec::new();
                for (a, m) in self.arrows.iter().zip(&rep.mats) {
                    let (nt, nh) = (ns[a.tail], ns[a.head]);
                    let mut s = Mat::zero(nh.dim(), nt.dim());
                    for (k, r) in nt.rows().iter().enumerate() {
                        for (row, x) in nh.coords(&m.apply(r, p)).into_iter().enumerate() {
                            s.set(row, k, x);
                        }
                    }
                    let qb = nt.quotient_basis();
                    let mut qmat = Mat::zero(nh.n - nh.dim(), qb.len());
                    for (k, r) in qb.iter().enumerate() {
                        for (row, x) in nh.quotient_coords(&m.apply(r, p), p).into_iter().enumerate() {
                            qmat.set(row, k, x);
                        }
                    }
                    sm.push(s);
                    qm.push(qmat);
                }
                out.push((sub.index(&FqRep { p, mats: sm }), quot.index(&FqRep { p, mats: qm })));
            }
            for v in 0..n {
                choice[v] += 1;
                if choice[v] < grass[v].len() {
                    continue 'outer;
                }
                choice[v] = 0;
            }
            break;
        }
        out
    }
}

pub fn enumerate_reps(q: &Quiver, nu: &DimVector, p: u32, limits: &Limits) -> Result<Vec<FqRep>> {
    let space = RepSpace::new(q, nu, p, limits)?;
    Ok((0..space.size()).map(|k| space.rep(k)).collect())
}

/// For each point of the loading, the arrow conditions that become
/// checkable once that many points have been placed.
struct FlagShape {
    labels: Vec<usize>,
    // (arrow, tail state, head state), indexed by the state at which both exist.
    checks: Vec<Vec<(usize, usize, usize)>>,
}

impl FlagShape {
    fn new(arrows: &[Arrow], i: &Loading) -> FlagShape {
        let n = i.len();
        let labels: Vec<usize> = i.labels().iter().map(|v| v.0).collect();
        let mut checks = vec![Vec::new(); n + 1];
        for (k, a) in arrows.iter().enumerate() {
            for j in 0..n {
                if labels[j] != a.tail {
                    continue;
                }
                let bound = i.position(j) - &a.weight;
                let m = (0..n).filter(|&b| *i.position(b) <= bound).count();
                checks[(j + 1).max(m)].push((k, j + 1, m));
            }
        }
        FlagShape { labels, checks }
    }

    fn count(&self, arrows: &[Arrow], dims: &[usize], rep: &FqRep) -> u64 {
        let mut states: Vec<Vec<Subspace>> = vec![dims.iter().map(|&d| Subspace::zero(d)).collect()];
        self.extend(arrows, rep, &mut states)
    }

    fn extend(&self, arrows: &[Arrow], rep: &FqRep, states: &mut Vec<Vec<Subspace>>) -> u64 {
        let s = states.len();
        if s > self.labels.len() {
            return 1;
        }
        let v = self.labels[s - 1];
        let p = rep.p;
        let mut total = 0;
        for cover in states[s - 1][v].covers(p) {
            let mut next = states[s - 1].clone();
            next[v] = cover;
            states.push(next);
            let ok = self.checks[s].iter().all(|&(k, ts, hs)| {
                let a = &arrows[k];
                let m = &rep.mats[k];
                states[ts][a.tail]
                    .rows()
                    .iter()
                    .all(|r| states[hs][a.head].contains(&m.apply(r, p), p))
            });
            if ok {
                total += self.extend(arrows, rep, states);
            }
            states.pop();
        }
        total
    }
}

/// The number of `i`-loaded flags compatible with `e`.
pub fn count_flags(q: &Quiver, i: &Loading, e: &FqRep) -> Result<u64> {
    let arrows = arrows(q)?;
    let nu = i.weight(q.vertex_count());
    let dims: Vec<usize> = nu.0.iter().map(|&d| d as usize).collect();
    for (a, m) in arrows.iter().zip(&e.mats) {
        if m.rows != dims[a.head] || m.cols != dims[a.tail] {
            return Err(Error::WeightMismatch);
        }
    }
    Ok(FlagShape::new(&arrows, i).count(&arrows, &dims, e))
}

/// `#{(e, a, b) : i(a) = t(e), i(b) = h(e), a - b ≥ ϑ_e} - Σ_v n_v(n_v + 1)/2`,
/// counting each edge `c_e` times.
pub fn u_dim(q: &Quiver, i: &Loading) -> i64 {
    let mut total = 0i64;
    for e in &q.edges {
        for (a, la) in i.points() {
            for (b, lb) in i.points() {
                if *la == e.tail && *lb == e.head && !(a - b - &e.weight).is_negative() {
                    total += e.c as i64;
                }
            }
        }
    }
    let nu = i.weight(q.vertex_count());
    total - nu.0.iter().map(|&n| (n as i64) * (n as i64 + 1) / 2).sum::<i64>()
}

/// A `ℚ(√q)`-valued function on `E_ν(F_p)`, stored densely in the order
/// of [`RepSpace::rep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallFunction {
    pub nu: DimVector,
    pub p: u32,
    pub values: Vec<QSqrt>,
}

impl HallFunction {
    /// The unit: the constant 1 on the single point of `E_0`.
    pub fn unit(q: &Quiver, p: u32) -> HallFunction {
        HallFunction {
            nu: DimVector::zero(q.vertex_count()),
            p,
            values: vec![QSqrt::one(p)],
        }
    }

    pub fn to_csv(&self, space: &RepSpace) -> String {
        let mut s = String::from("rep,a,b\n");
        for (k, v) in self.values.iter().enumerate() {
            let _ = writeln!(
                s,
                "{},{},{}",
                space.rep(k as u64).hex(),
                crate::rat::fmt_rat(&v.a),
                crate::rat::fmt_rat(&v.b)
            );
        }
        s
    }
}

/// `e ↦ q^{u(i)/2} · #{i-loaded flags compatible with e}`.
pub fn func_y(q: &Quiver, i: &Loading, p: u32, limits: &Limits) -> Result<HallFunction> {
    let nu = i.weight(q.vertex_count());
    let space = RepSpace::new(q, &nu, p, limits)?;
    let arrows = arrows(q)?;
    let dims: Vec<usize> = (0..q.vertex_count()).map(|v| space.dim(v)).collect();
    let shape = FlagShape::new(&arrows, i);
    let scale = QSqrt::v_pow(p, u_dim(q, i));
    let values = (0..space.size())
        .into_par_iter()
        .map(|k| {
            let n = shape.count(&arrows, &dims, &space.rep(k));
            &scale * &QSqrt::from_int(p, n as i64)
        })
        .collect();
    Ok(HallFunction { nu, p, values })
}

/// Normalisations of the Hall product and coproduct. The defaults make
/// `Δ(f ⋆ g) = Δ(f) Δ(g)` hold: the coproduct averages over extension
/// blocks, and the tensor square carries a skew term because the product
/// twist uses the non-symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HallConventions {
    /// `f ⋆ g` carries `v^{mult_twist · ⟨deg g, deg f⟩}`.
    pub mult_twist: i64,
    /// The coproduct carries `q^{comult_codim · c}` with `c` the
    /// codimension of the block-triangular locus. EXPERIMENTAL: any value
    /// other than 0 breaks compatibility with the product.
    pub comult_codim: i64,
    /// The coproduct carries `v^{comult_twist · ⟨ν″,ν′⟩}`.
    pub comult_twist: i64,
    /// The coproduct carries `q^{comult_block · dim ⊕ Hom(V″_t, V′_h)}`.
    pub comult_block: i64,
    /// `(a ⊗ b)(c ⊗ d) = v^{tensor_twist · (deg b · deg c)} ac ⊗ bd`.
    pub tensor_twist: i64,
    /// Extra `v^{tensor_skew · (⟨deg b, deg c⟩ - ⟨deg c, deg b⟩)}` in the
    /// same product.
    pub tensor_skew: i64,
}

impl Default for HallConventions {
    fn default() -> Self {
        HallConventions {
            mult_twist: -1,
            comult_codim: 0,
            comult_twist: 1,
            comult_block: -1,
            tensor_twist: 1,
            tensor_skew: 2,
        }
    }
}

/// `(f ⋆ g)(M) = v^{-⟨ν″,ν′⟩} Σ_{N ⊆ M, dim N = ν′} f(N) g(M/N)` with
/// `ν′ = deg f` and `ν″ = deg g`.
pub fn hall_mult(q: &Quiver, f: &HallFunction, g: &HallFunction, limits: &Limits) -> Result<HallFunction> {
    hall_mult_with(q, f, g, &HallConventions::default(), limits)
}

pub fn hall_mult_with(
    q: &Quiver,
    f: &HallFunction,
    g: &HallFunction,
    conv: &HallConventions,
    limits: &Limits,
) -> Result<HallFunction> {
    if f.p != g.p {
        return Err(Error::FieldMismatch(f.p, g.p));
    }
    let p = f.p;
    let nu = f.nu.add(&g.nu);
    let space = RepSpace::new(q, &nu, p, limits)?;
    let sub = RepSpace::new(q, &f.nu, p, limits)?;
    let quot = RepSpace::new(q, &g.nu, p, limits)?;
    let twist = QSqrt::v_pow(p, conv.mult_twist * pairing_bracket(q, &g.nu, &f.nu));
    let values = (0..space.size())
        .into_par_iter()
        .map(|k| {
            let m = space.rep(k);
            let mut acc = QSqrt::zero(p);
            for (a, b) in space.subquotients(&m, &sub, &quot) {
                acc = &acc + &(&f.values[a as usize] * &g.values[b as usize]);
            }
            &twist * &acc
        })
        .collect();
    Ok(HallFunction { nu, p, values })
}

/// A function on `E_{ν′}(F_p) × E_{ν″}(F_p)`, row-major in `(N, Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFunction {
    pub nu1: DimVector,
    pub nu2: DimVector,
    pub p: u32,
    pub values: Vec<QSqrt>,
}

impl PairFunction {
    pub fn get(&self, n: u64, q_rep: u64, second_size: u64) -> &QSqrt {
        &self.values[(n * second_size + q_rep) as usize]
    }
}

/// `(Δf)(N, Q) = v^{⟨ν″,ν′⟩} q^{-dim B} Σ_{b ∈ B} f(M(N, Q, b))` under the
/// default conventions, where `B = ⊕ Hom(V″_t, V′_h)` holds the
/// off-diagonal blocks. The extra factor `q^{comult_codim · c}` with
/// `c = Σ dim Hom(V′_t, V″_h)` is EXPERIMENTAL and off by default.
pub fn hall_comult(
    q: &Quiver,
    f: &HallFunction,
    split: (&DimVector, &DimVector),
    conv: &HallConventions,
    limits: &Limits,
) -> Result<PairFunction> {
    let (nu1, nu2) = split;
    if nu1.add(nu2) != f.nu {
        return Err(Error::WeightMismatch);
    }
    let p = f.p;
    let space = RepSpace::new(q, &f.nu, p, limits)?;
    let s1 = RepSpace::new(q, nu1, p, limits)?;
    let s2 = RepSpace::new(q, nu2, p, limits)?;
    let arrows = arrows(q)?;
    let blocks: Vec<(usize, usize)> = arrows.iter().map(|a| (s1.dim(a.head), s2.dim(a.tail))).collect();
    let block_coords: usize = blocks.iter().map(|(r, c)| r * c).sum();
    let codim: usize = arrows.iter().map(|a| s1.dim(a.tail) * s2.dim(a.head)).sum();
    let nblocks = (p as u64).pow(block_coords as u32);
    let scale = QSqrt::v_pow(
        p,
        conv.comult_twist * pairing_bracket(q, nu2, nu1)
            + 2 * conv.comult_codim * codim as i64
            + 2 * conv.comult_block * block_coords as i64,
    );
    let pp = p as u8;
    let values = (0..s1.size() * s2.size())
        .into_par_iter()
        .map(|k| {
            let rn = s1.rep(k / s2.size());
            let rq = s2.rep(k % s2.size());
            let mut acc = QSqrt::zero(p);
            for code in 0..nblocks {
                let mut x = code;
                let mats = arrows
                    .iter()
                    .enumerate()
                    .map(|(a, arr)| {
                        let (h1, t1) = (s1.dim(arr.head), s1.dim(arr.tail));
                        let mut m = Mat::zero(space.dim(arr.head), space.dim(arr.tail));
                        for r in 0..h1 {
                            for c in 0..t1 {
                                m.set(r, c, rn.mats[a].get(r, c));
                            }
                        }
                        for r in 0..rq.mats[a].rows {
                            for c in 0..rq.mats[a].cols {
                                m.set(h1 + r, t1 + c, rq.mats[a].get(r, c));
                            }
                        }
                        for r in 0..blocks[a].0 {
                            for c in 0..blocks[a].1 {
                                m.set(r, t1 + c, (x % pp as u64) as u8);
                                x /= pp as u64;
                            }
                        }
                        m
                    })
                    .collect();
                let idx = space.index(&FqRep { p: pp, mats });
                acc = &acc + &f.values[idx as usize];
            }
            &scale * &acc
        })
        .collect();
    Ok(PairFunction {
        nu1: nu1.clone(),
        nu2: nu2.clone(),
        p,
        values,
    })
}

/// `(F ⋆ G)` on pairs, with the tensor-square twist applied.
fn pair_mult(q: &Quiver, f: &PairFunction, g: &PairFunction, conv: &HallConventions, limits: &Limits) -> Result<PairFunction> {
    let p = f.p;
    let nu1 = f.nu1.add(&g.nu1);
    let nu2 = f.nu2.add(&g.nu2);
    let (a1, a2) = (
        RepSpace::new(q, &nu1, p, limits)?,
        RepSpace::new(q, &nu2, p, limits)?,
    );
    let (f1, f2) = (RepSpace::new(q, &f.nu1, p, limits)?, RepSpace::new(q, &f.nu2, p, limits)?);
    let (g1, g2) = (RepSpace::new(q, &g.nu1, p, limits)?, RepSpace::new(q, &g.nu2, p, limits)?);
    let exp = conv.mult_twist * (pairing_bracket(q, &g.nu1, &f.nu1) + pairing_bracket(q, &g.nu2, &f.nu2))
        + conv.tensor_twist * pairing_dot(q, &f.nu2, &g.nu1)
        + conv.tensor_skew * (pairing_bracket(q, &f.nu2, &g.nu1) - pairing_bracket(q, &g.nu1, &f.nu2));
    let twist = QSqrt::v_pow(p, exp);
    let values = (0..a1.size() * a2.size())
        .into_par_iter()
        .map(|k| {
            let m1 = a1.rep(k / a2.size());
            let m2 = a2.rep(k % a2.size());
            let mut acc = QSqrt::zero(p);
            for (n1, q1) in a1.subquotients(&m1, &f1, &g1) {
                for (n2, q2) in a2.subquotients(&m2, &f2, &g2) {
                    let x = f.get(n1, n2, f2.size());
                    let y = g.get(q1, q2, g2.size());
                    acc = &acc + &(x * y);
                }
            }
            &twist * &acc
        })
        .collect();
    Ok(PairFunction { nu1, nu2, p, values })
}

/// Whether `Δ(f ⋆ g) = Δ(f) Δ(g)` holds on every splitting of
/// `deg f + deg g`, in the twisted tensor square.
pub fn check_bialgebra(
    q: &Quiver,
    f: &HallFunction,
    g: &HallFunction,
    conv: &HallConventions,
    limits: &Limits,
) -> Result<bool> {
    let fg = hall_mult_with(q, f, g, conv, limits)?;
    for nu1 in fg.nu.sub_vectors() {
        let nu2 = fg.nu.checked_sub(&nu1).expect("sub vector");
        let lhs = hall_comult(q, &fg, (&nu1, &nu2), conv, limits)?;
        let mut rhs = vec![QSqrt::zero(f.p); lhs.values.len()];
        for a1 in f.nu.sub_vectors() {
            let a2 = f.nu.checked_sub(&a1).expect("sub vector");
            let Some(b1) = nu1.checked_sub(&a1) else { continue };
            let Some(b2) = g.nu.checked_sub(&b1) else { continue };
            let df = hall_comult(q, f, (&a1, &a2), conv, limits)?;
            let dg = hall_comult(q, g, (&b1, &b2), conv, limits)?;
            let term = pair_mult(q, &df, &dg, conv, limits)?;
            for (r, t) in rhs.iter_mut().zip(&term.values) {
                *r = &*r + t;
            }
        }
        if lhs.values != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct HallCheckRow {
    pub rep: String,
    pub lhs: QSqrt,
    pub rhs: QSqrt,
}

/// Pointwise comparison of `func_y(i ∘ j)` against `func_y(i) ⋆ func_y(j)`.
#[derive(Clone, Debug)]
pub struct HallCheck {
    pub rows: Vec<HallCheckRow>,
    pub passed: bool,
}

impl HallCheck {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("rep,composite,convolution\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{}", r.rep, r.lhs, r.rhs);
        }
        s
    }
}

pub fn check_hq_algebra_map(q: &Quiver, i: &Loading, j: &Loading, p: u32, limits: &Limits) -> Result<HallCheck> {
    let ij = compose(q, i, j);
    let lhs = func_y(q, &ij, p, limits)?;
    let rhs = hall_mult(q, &func_y(q, i, p, limits)?, &func_y(q, j, p, limits)?, limits)?;
    let space = RepSpace::new(q, &lhs.nu, p, limits)?;
    let rows: Vec<HallCheckRow> = lhs
        .values
        .into_iter()
        .zip(rhs.values)
        .enumerate()
        .map(|(k, (l, r))| HallCheckRow {
            rep: space.rep(k as u64).hex(),
            lhs: l,
            rhs: r,
        })
        .collect();
    let passed = rows.iter().all(|r| r.lhs == r.rhs);
    Ok(HallCheck { rows, passed })
}

/// Compares `f` at random points and random `G_ν`-translates of them.
pub fn sample_invariance(q: &Quiver, f: &HallFunction, samples: usize, seed: u64, limits: &Limits) -> Result<bool> {
    let space = RepSpace::new(q, &f.nu, f.p, limits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let k = rng.gen_range(0..space.size());
        let g = space.random_group_element(&mut rng);
        let moved = space.index(&space.act(&g, &space.rep(k)));
        if f.values[k as usize] != f.values[moved as usize] {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::presets::*;
    use crate::quiver::VertexId;
    use crate::rat::{int, rat};

    fn load(v: &[(i64, usize)]) -> Loading {
        Loading::new(v.iter().map(|&(x, l)| (int(x), VertexId(l))).collect()).unwrap()
    }

    #[test]
    fn point_counts_of_spaces() {
        let lim = Limits::default();
        let a2 = a_n(&[int(0)]);
        assert_eq!(enumerate_reps(&a2, &DimVector(vec![1, 1]), 2, &lim).unwrap().len(), 2);
        assert_eq!(enumerate_reps(&a2, &DimVector(vec![1, 0]), 2, &lim).unwrap().len(), 1);
        let k = kronecker(int(1), int(-1));
        assert_eq!(enumerate_reps(&k, &DimVector(vec![1, 1]), 3, &lim).unwrap().len(), 9);
        let tight = Limits {
            max_hall_points: 8,
            ..lim
        };
        assert!(matches!(
            RepSpace::new(&k, &DimVector(vec![2, 2]), 2, &tight),
            Err(Error::TooLarge { .. })
        ));
        assert!(RepSpace::new(&a2, &DimVector(vec![1, 1]), 4, &lim).is_err());
    }

    #[test]
    fn flags_on_a2() {
        let q = a_n(&[int(0)]);
        let lim = Limits::default();
        let sp = RepSpace::new(&q, &DimVector(vec![1, 1]), 2, &lim).unwrap();
        let (zero, one) = (sp.rep(0), sp.rep(1));
        let left = load(&[(0, 0), (5, 1)]);
        let right = load(&[(0, 1), (5, 0)]);
        assert_eq!(count_flags(&q, &left, &zero).unwrap(), 1);
        assert_eq!(count_flags(&q, &left, &one).unwrap(), 0);
        assert_eq!(count_flags(&q, &right, &zero).unwrap(), 1);
        assert_eq!(count_flags(&q, &right, &one).unwrap(), 1);
        assert_eq!(u_dim(&q, &left), -2);
        assert_eq!(u_dim(&q, &right), -1);
        assert_eq!(u_dim(&single_vertex(), &load(&[(0, 0)])), -1);

        let f = func_y(&q, &left, 2, &lim).unwrap();
        assert_eq!(f.values, vec![QSqrt::rational(2, rat(1, 2)), QSqrt::zero(2)]);
        let g = func_y(&q, &right, 2, &lim).unwrap();
        assert!(g.values.iter().all(|v| *v == QSqrt::v_pow(2, -1)));
    }

    #[test]
    fn convolution_on_a2() {
        let q = a_n(&[int(0)]);
        let lim = Limits::default();
        let f = func_y(&q, &load(&[(0, 0)]), 2, &lim).unwrap();
        let g = func_y(&q, &load(&[(0, 1)]), 2, &lim).unwrap();
        let fg = hall_mult(&q, &f, &g, &lim).unwrap();
        assert_eq!(fg.nu, DimVector(vec![1, 1]));
        assert_eq!(fg.values, vec![QSqrt::rational(2, rat(1, 2)), QSqrt::zero(2)]);
        let u = HallFunction::unit(&q, 2);
        assert_eq!(hall_mult(&q, &f, &u, &lim).unwrap(), f);
        assert_eq!(hall_mult(&q, &u, &f, &lim).unwrap(), f);
        let c = check_hq_algebra_map(&q, &load(&[(0, 0)]), &load(&[(0, 1)]), 2, &lim).unwrap();
        assert!(c.passed);
        assert_eq!(c.rows.len(), 2);
        assert!(check_hq_algebra_map(&q, &load(&[(0, 0)]), &Loading::empty(), 2, &lim).unwrap().passed);
    }

    #[test]
    fn comult_trivial_splits() {
        let q = a_n(&[int(0)]);
        let lim = Limits::default();
        let conv = HallConventions::default();
        let f = func_y(&q, &load(&[(0, 1), (5, 0)]), 3, &lim).unwrap();
        let zero = DimVector::zero(2);
        let d = hall_comult(&q, &f, (&f.nu, &zero), &conv, &lim).unwrap();
        assert_eq!(d.values, f.values);
        let u = HallFunction::unit(&q, 3);
        let du = hall_comult(&q, &u, (&zero, &zero), &conv, &lim).unwrap();
        assert_eq!(du.values, vec![QSqrt::one(3)]);
    }

    #[test]
    fn invariance_on_kronecker() {
        let q = kronecker(int(1), int(-1));
        let lim = Limits::default();
        let f = func_y(&q, &load(&[(0, 0), (3, 0), (6, 1), (9, 1)]), 2, &lim).unwrap();
        assert!(sample_invariance(&q, &f, 50, 7, &lim).unwrap());
    }
}
