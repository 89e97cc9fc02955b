//! Charges, unsteady loadings and degree-truncated steadied quotients.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::loading::{compose, enumerate_chambers, ChamberSet, Loading};
use crate::poly::{Monomial, MultiPoly, Perm};
use crate::quiver::{DimVector, Quiver};
use crate::rat::Rat;
use crate::wklr::{Product, Wklr, WklrElement};
use crate::Limits;

/// A map from vertices to the closed upper half plane minus the
/// non-positive reals, as `(re, im)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Charge {
    values: Vec<(Rat, Rat)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArgOrder {
    Greater,
    EqualArg,
    Less,
}

impl Charge {
    pub fn new(values: Vec<(Rat, Rat)>) -> Result<Charge> {
        for (k, (re, im)) in values.iter().enumerate() {
            let ok = im.is_positive() || (im.is_zero() && re.is_positive());
            if !ok {
                return Err(Error::InvalidArgument(format!(
                    "charge value at vertex {k} is not in the upper half plane"
                )));
            }
        }
        Ok(Charge { values })
    }

    /// The reading used for Crawley-Boevey quivers: `-1 + √-1` on every
    /// original vertex and `Σ d_i + √-1` on the new vertex. This is one
    /// interpretation of an ambiguous prescription, offered as a preset.
    pub fn crawley_boevey_preset(q: &Quiver) -> Result<Charge> {
        let cb = q.cb_vertex.ok_or(Error::NoCbVertex)?;
        let sum_d: u32 = (0..q.vertex_count())
            .filter(|&v| v != cb.0)
            .map(|v| q.symmetrizers[v])
            .sum();
        let values = (0..q.vertex_count())
            .map(|v| {
                if v == cb.0 {
                    (Rat::from_integer(sum_d.into()), Rat::one())
                } else {
                    (-Rat::one(), Rat::one())
                }
            })
            .collect();
        Charge::new(values)
    }

    pub fn values(&self) -> &[(Rat, Rat)] {
        &self.values
    }

    /// `c(μ) = Σ μ_v c(v)`.
    pub fn eval(&self, mu: &DimVector) -> (Rat, Rat) {
        let mut re = Rat::zero();
        let mut im = Rat::zero();
        for (v, (a, b)) in self.values.iter().enumerate() {
            let m = Rat::from_integer(mu.0.get(v).copied().unwrap_or(0).into());
            re += a * &m;
            im += b * &m;
        }
        (re, im)
    }
}

/// Compares `arg c(μ)` with `arg c(ν)`.
pub fn compare_c(c: &Charge, mu: &DimVector, nu: &DimVector) -> Result<ArgOrder> {
    if mu.is_zero() || nu.is_zero() {
        return Err(Error::InvalidArgument("zero dimension vector".into()));
    }
    let (rm, im) = c.eval(mu);
    let (rn, in_) = c.eval(nu);
    // Im(conj(c(ν)) c(μ)) > 0 iff c(μ) is anticlockwise of c(ν).
    let cross = &rn * &im - &in_ * &rm;
    Ok(if cross.is_positive() {
        ArgOrder::Greater
    } else if cross.is_zero() {
        ArgOrder::EqualArg
    } else {
        ArgOrder::Less
    })
}

/// Representatives of `B(ν)` equivalent to `i₁ ∘ i₂` for some splitting
/// `ν = ν′ + ν″` with `ν′ >_c ν″`, in the order of `B`.
pub fn unsteady_idempotents(q: &Quiver, chambers: &ChamberSet, c: &Charge, limits: &Limits) -> Result<Vec<Loading>> {
    let mut hit = vec![false; chambers.len()];
    for nu1 in chambers.nu.sub_vectors() {
        let nu2 = chambers.nu.checked_sub(&nu1).expect("sub vector");
        if nu1.is_zero() || nu2.is_zero() || compare_c(c, &nu1, &nu2)? != ArgOrder::Greater {
            continue;
        }
        let b1 = enumerate_chambers(q, &nu1, limits)?;
        let b2 = enumerate_chambers(q, &nu2, limits)?;
        for i1 in b1.reps() {
            for i2 in b2.reps() {
                hit[chambers.find(q, &compose(q, i1, i2))?] = true;
            }
        }
    }
    Ok(chambers
        .reps()
        .iter()
        .zip(hit)
        .filter(|(_, h)| *h)
        .map(|(l, _)| l.clone())
        .collect())
}

/// A dot on the Crawley-Boevey strand of every representative.
pub fn reduced_generators(w: &Wklr, chambers: &ChamberSet) -> Result<Vec<WklrElement>> {
    let cb = w.quiver().cb_vertex.ok_or(Error::NoCbVertex)?;
    let count = chambers.nu.get(cb);
    if count != 1 {
        return Err(Error::CbMultiplicity(count));
    }
    chambers
        .reps()
        .iter()
        .map(|i| {
            let k = i.labels().iter().position(|&v| v == cb).expect("one CB point");
            w.dot(i, k)
        })
        .collect()
}

/// Row-reduced spanning set of one graded piece of the ideal.
#[derive(Clone, Debug)]
pub struct SpanPiece {
    pub basis: Vec<(Perm, Monomial)>,
    pub rows: Vec<Vec<Rat>>,
}

impl SpanPiece {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Ideal pieces keyed by `(src index, tgt index, degree)`.
#[derive(Clone, Debug, Default)]
pub struct IdealSpan {
    pub pieces: BTreeMap<(usize, usize, i64), SpanPiece>,
}

/// Incremental exact row reduction.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vec<Rat>)>,
}

impl Echelon {
    fn insert(&mut self, mut v: Vec<Rat>) {
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    *a -= &f * b;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return;
        };
        let inv = Rat::one() / &v[p];
        for a in v.iter_mut() {
            *a *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (a, b) in row.iter_mut().zip(&v) {
                    *a -= &f * b;
                }
            }
        }
        self.rows.push((p, v));
    }

    fn into_rows(mut self) -> Vec<Vec<Rat>> {
        self.rows.sort_by_key(|(p, _)| *p);
        self.rows.into_iter().map(|(_, r)| r).collect()
    }
}

fn basis_element(src: &Loading, tgt: &Loading, pi: &Perm, m: &Monomial) -> WklrElement {
    let mut x = WklrElement::zero(src.clone(), tgt.clone());
    x.coeffs.insert(
        pi.clone(),
        MultiPoly::from_terms(src.len(), [(m.clone(), Rat::one())]),
    );
    x
}

/// `(src, tgt, degree)`.
type Piece = (usize, usize, i64);

/// The span of all `a·g·b` up to total degree `cutoff`, with `a`, `b`
/// ranging over homogeneous basis elements between representatives.
pub fn ideal_graded_span(w: &Wklr, chambers: &ChamberSet, gens: &[WklrElement], cutoff: i64) -> Result<IdealSpan> {
    let reps = chambers.reps();
    let index: HashMap<&Loading, usize> = reps.iter().enumerate().map(|(k, l)| (l, k)).collect();
    let mut echelons: BTreeMap<Piece, (Vec<(Perm, Monomial)>, Echelon)> = BTreeMap::new();

    for g in gens {
        let dg = w
            .degree(g)?
            .ok_or_else(|| Error::InvalidArgument("ideal generators must be homogeneous".into()))?;
        let (Some(&gs), Some(&gt)) = (index.get(&g.src), index.get(&g.tgt)) else {
            return Err(Error::NotInChamberSet);
        };
        for (s, src) in reps.iter().enumerate() {
            let Some(min_b) = w.min_degree(src, &reps[gs])? else { continue };
            for (t, tgt) in reps.iter().enumerate() {
                let Some(min_a) = w.min_degree(&reps[gt], tgt)? else { continue };
                for db in min_b..=cutoff - dg - min_a {
                    let bs = w.graded_basis(src, &reps[gs], db)?;
                    let gbs: Vec<WklrElement> = bs
                        .iter()
                        .map(|(pi, m)| {
                            let b = basis_element(src, &reps[gs], pi, m);
                            match w.multiply(g, &b)? {
                                Product::Value(x) => Ok(x),
                                Product::Zero => unreachable!("composable by construction"),
                            }
                        })
                        .collect::<Result<_>>()?;
                    for da in min_a..=cutoff - dg - db {
                        let d = da + dg + db;
                        let entry = echelons.entry((s, t, d)).or_insert_with(|| {
                            (w.graded_basis(src, tgt, d).unwrap_or_default(), Echelon::default())
                        });
                        let coord: HashMap<(Perm, Monomial), usize> = entry
                            .0
                            .iter()
                            .cloned()
                            .enumerate()
                            .map(|(k, key)| (key, k))
                            .collect();
                        for (pa, ma) in w.graded_basis(&reps[gt], tgt, da)? {
                            let a = basis_element(&reps[gt], tgt, &pa, &ma);
                            for gb in &gbs {
                                let Product::Value(x) = w.multiply(&a, gb)? else { continue };
                                if x.is_zero() {
                                    continue;
                                }
                                let mut v = vec![Rat::zero(); entry.0.len()];
                                for ((pi, m), c) in x.coordinates() {
                                    let k = coord.get(&(pi.clone(), m.clone())).ok_or_else(|| {
                                        Error::InvalidArgument("product left its graded piece".into())
                                    })?;
                                    v[*k] = c.clone();
                                }
                                entry.1.insert(v);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(IdealSpan {
        pieces: echelons
            .into_iter()
            .map(|(k, (basis, e))| {
                (
                    k,
                    SpanPiece {
                        basis,
                        rows: e.into_rows(),
                    },
                )
            })
            .collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRow {
    pub src: usize,
    pub tgt: usize,
    pub degree: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QuotientTable {
    pub rows: Vec<QuotientRow>,
}

impl QuotientTable {
    pub fn get(&self, src: usize, tgt: usize, degree: i64) -> Option<usize> {
        self.rows
            .iter()
            .find(|r| r.src == src && r.tgt == tgt && r.degree == degree)
            .map(|r| r.dim)
    }

    /// Dimensions for one `(src, tgt)` pair from degree 0 to `cutoff`.
    pub fn series(&self, src: usize, tgt: usize, cutoff: i64) -> Vec<usize> {
        (0..=cutoff).map(|d| self.get(src, tgt, d).unwrap_or(0)).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("src_index,tgt_index,degree,dim\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{},{}", r.src, r.tgt, r.degree, r.dim);
        }
        s
    }
}

/// Graded dimensions of `e_tgt (W / ⟨gens⟩) e_src` for all representatives
/// up to `cutoff`.
pub fn quotient_graded_dim(w: &Wklr, chambers: &ChamberSet, gens: &[WklrElement], cutoff: i64) -> Result<QuotientTable> {
    let span = ideal_graded_span(w, chambers, gens, cutoff)?;
    let mut rows = Vec::new();
    for (s, src) in chambers.reps().iter().enumerate() {
        for (t, tgt) in chambers.reps().iter().enumerate() {
            for (d, dim) in w.graded_dim(src, tgt, cutoff)? {
                let rank = span.pieces.get(&(s, t, d)).map_or(0, SpanPiece::rank);
                rows.push(QuotientRow {
                    src: s,
                    tgt: t,
                    degree: d,
                    dim: dim - rank,
                });
            }
        }
    }
    Ok(QuotientTable { rows })
}

/// The steadied quotient by the unsteady idempotents; with `reduced`, dots
/// on the Crawley-Boevey strand are killed as well.
pub fn steadied_graded_dim(
    w: &Wklr,
    chambers: &ChamberSet,
    c: &Charge,
    cutoff: i64,
    reduced: bool,
    limits: &Limits,
) -> Result<QuotientTable> {
    let mut gens: Vec<WklrElement> = unsteady_idempotents(w.quiver(), chambers, c, limits)?
        .iter()
        .map(|u| w.idempotent(u))
        .collect();
    if reduced {
        gens.extend(reduced_generators(w, chambers)?);
    }
    quotient_graded_dim(w, chambers, &gens, cutoff)
}
