//! Exhaustive verification of the defining relations as operator
//! identities, over every configuration realised by chamber
//! representatives.
//!
//! Like-labelled crossings act by `(s - 1)/(y_k - y_{k+1})`, or by
//! `P(y_k, y_{k+1})(s - 1)` with a weight-zero loop, so the relations are
//! stated here for these operators: the dot slides read
//! `ψ y_{k+1} - y_k ψ = c` and `ψ y_k - y_{k+1} ψ = -c`, and a bigon with a
//! weight-zero loop is `-2P ψ`.

use serde::Serialize;

use super::diagram::{crossing_factor, trace, Movie};
use super::Wklr;
use crate::error::Result;
use crate::loading::{enumerate_chambers, ChamberSet, Loading};
use crate::poly::{DiffDenomFn, MultiPoly, Perm, SkewElement};
use crate::quiver::{loop_p, DimVector, Quiver, VertexId};
use crate::rat::{int, Rat};
use crate::Limits;

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub loading: String,
    pub detail: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
    /// Diagram-level instances that could not be drawn without extra
    /// crossings.
    pub skipped: usize,
}

impl RelationReport {
    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn record(&mut self, relation: &str, i: &Loading, detail: String, lhs: &SkewElement, rhs: &SkewElement) {
        self.checks.push(RelationCheck {
            relation: relation.into(),
            loading: i.to_string(),
            detail,
            passed: lhs == rhs,
        });
    }
}

fn poly_op(p: MultiPoly) -> SkewElement {
    SkewElement::from_poly(p)
}

fn y(n: usize, k: usize) -> SkewElement {
    poly_op(MultiPoly::var(n, k))
}

/// `R` in `crossing = R (s - 1)` for like strands labelled `v`.
fn crossing_scalar(q: &Quiver, n: usize, p: usize, v: VertexId) -> DiffDenomFn {
    match q.weight_zero_loop(v) {
        None => DiffDenomFn::inv_diff(n, p, p + 1),
        Some(e) => DiffDenomFn::from_poly(loop_p(e).expect("validated loop").eval(n, p, p + 1)),
    }
}

fn scalar_op(f: DiffDenomFn) -> SkewElement {
    let n = f.nvars();
    SkewElement::from_component(Perm::identity(n), f)
}

/// Crossings applied left to right as `(position, labels)` steps, starting
/// from `labels`.
fn crossing_word(q: &Quiver, labels: &[VertexId], word: &[usize]) -> SkewElement {
    let n = labels.len();
    let mut l = labels.to_vec();
    let mut op = SkewElement::identity(n);
    for &p in word {
        op = crossing_factor(q, n, p, l[p], l[p + 1]).compose(&op);
        l.swap(p, p + 1);
    }
    op
}

/// Local relations around each adjacent pair and triple of strands in `i`.
fn local_checks(q: &Quiver, i: &Loading, report: &mut RelationReport) {
    let n = i.len();
    let l = i.labels();
    for p in 0..n.saturating_sub(1) {
        let (a, b) = (l[p], l[p + 1]);
        let c = crossing_factor(q, n, p, a, b);
        let like = a == b;
        let corr = if !like {
            SkewElement::zero(n)
        } else {
            match q.weight_zero_loop(a) {
                None => SkewElement::identity(n),
                Some(e) => poly_op(e.q.eval(n, p, p + 1)),
            }
        };

        let lhs = c.compose(&y(n, p + 1)).sub(&y(n, p).compose(&c));
        report.record("dot slide (lower right)", i, format!("strands {p},{}", p + 1), &lhs, &corr);
        let lhs = c.compose(&y(n, p)).sub(&y(n, p + 1).compose(&c));
        report.record("dot slide (lower left)", i, format!("strands {p},{}", p + 1), &lhs, &corr.neg());
        for r in (0..n).filter(|&r| r != p && r != p + 1) {
            let lhs = c.compose(&y(n, r));
            let rhs = y(n, r).compose(&c);
            report.record("dot commutes with distant crossing", i, format!("strands {p},{}; dot {r}", p + 1), &lhs, &rhs);
        }

        let back = crossing_factor(q, n, p, b, a);
        let bigon = back.compose(&c);
        let expect = if !like {
            SkewElement::identity(n)
        } else {
            match q.weight_zero_loop(a) {
                None => SkewElement::zero(n),
                Some(e) => {
                    let pp = loop_p(e).expect("validated loop").eval(n, p, p + 1);
                    c.mul_left_poly(&pp.scale(&int(-2)))
                }
            }
        };
        report.record("crossing bigon", i, format!("strands {p},{}", p + 1), &bigon, &expect);

        for (ei, e) in q.edges.iter().enumerate() {
            if e.is_weight_zero_loop() {
                continue;
            }
            for j in (0..n).filter(|&j| j != p && j != p + 1) {
                let qe = |owner: usize, strand: usize| e.q.eval(n, owner, strand);
                // The ghost of strand j crosses the crossing point.
                if l[j] == e.head && (e.tail == a || e.tail == b) {
                    let (lhs, rhs, expect) = if like {
                        let r = crossing_scalar(q, n, p, a);
                        let diff = &qe(j, p) - &qe(j, p + 1);
                        (
                            poly_op(qe(j, p + 1)).compose(&c),
                            c.compose(&poly_op(qe(j, p))),
                            scalar_op(r.mul_poly(&diff)),
                        )
                    } else if e.tail == a {
                        (poly_op(qe(j, p + 1)).compose(&c), c.compose(&poly_op(qe(j, p))), SkewElement::zero(n))
                    } else {
                        (poly_op(qe(j, p)).compose(&c), c.compose(&poly_op(qe(j, p + 1))), SkewElement::zero(n))
                    };
                    report.record(
                        "ghost through crossing",
                        i,
                        format!("strands {p},{}; ghost of {j} via edge {ei}", p + 1),
                        &lhs.sub(&rhs),
                        &expect,
                    );
                }
                // Strand j passes the crossing of two ghosts.
                if l[j] == e.tail && (e.head == a || e.head == b) {
                    let (lhs, rhs, expect) = if like {
                        let r = crossing_scalar(q, n, p, a);
                        let diff = &qe(p, j) - &qe(p + 1, j);
                        (
                            c.compose(&poly_op(qe(p + 1, j))),
                            poly_op(qe(p, j)).compose(&c),
                            scalar_op(r.mul_poly(&diff)),
                        )
                    } else if e.head == b {
                        (c.compose(&poly_op(qe(p + 1, j))), poly_op(qe(p, j)).compose(&c), SkewElement::zero(n))
                    } else {
                        (c.compose(&poly_op(qe(p, j))), poly_op(qe(p + 1, j)).compose(&c), SkewElement::zero(n))
                    };
                    report.record(
                        "strand through ghost crossing",
                        i,
                        format!("strands {p},{}; strand {j} via edge {ei}", p + 1),
                        &lhs.sub(&rhs),
                        &expect,
                    );
                }
            }
        }
    }

    for p in 0..n.saturating_sub(2) {
        let lhs = crossing_word(q, &l, &[p, p + 1, p]);
        let rhs = crossing_word(q, &l, &[p + 1, p, p + 1]);
        let all_like = l[p] == l[p + 1] && l[p + 1] == l[p + 2];
        let expect = match q.weight_zero_loop(l[p]) {
            Some(e) if all_like => {
                let pe = loop_p(e).expect("validated loop");
                let pp = |a: usize, b: usize| pe.eval(n, p + a, p + b);
                let x0 = crossing_factor(q, n, p, l[p], l[p]);
                let x1 = crossing_factor(q, n, p + 1, l[p], l[p]);
                let ca = &(&(&pp(0, 1) * &pp(1, 2)) + &(&pp(0, 2) * &pp(1, 0))) - &(&pp(0, 2) * &pp(1, 2));
                let cb = &(&(&pp(0, 1) * &pp(1, 2)) + &(&pp(0, 2) * &pp(2, 1))) - &(&pp(0, 2) * &pp(0, 1));
                x0.mul_left_poly(&ca).sub(&x1.mul_left_poly(&cb))
            }
            _ => SkewElement::zero(n),
        };
        report.record(
            "triple point",
            i,
            format!("strands {p},{},{}", p + 1, p + 2),
            &lhs.sub(&rhs),
            &expect,
        );
    }
}

/// Draws each strand-ghost bigon as an actual movie and checks that it acts
/// by `Q_e(y_owner, y_strand)`.
fn ghost_bigons(w: &Wklr, i: &Loading, report: &mut RelationReport) -> Result<()> {
    let q = w.quiver();
    let n = i.len();
    let x: Vec<Rat> = i.points().iter().map(|p| p.0.clone()).collect();
    let mut marks = x.clone();
    for (xk, v) in i.points() {
        for e in &q.edges {
            if e.head == *v {
                marks.push(xk + &e.weight);
            }
        }
    }
    marks.sort();
    marks.dedup();
    let eps = marks
        .windows(2)
        .map(|m| &m[1] - &m[0])
        .min()
        .unwrap_or_else(|| int(1))
        / int(3);
    for j in 0..n {
        for k in (0..n).filter(|&k| k != j) {
            for (ei, e) in q.edges.iter().enumerate() {
                if e.is_weight_zero_loop() || e.tail != i.label(j) || e.head != i.label(k) {
                    continue;
                }
                let g = &x[k] + &e.weight;
                let past = if x[j] < g { &g + &eps } else { &g - &eps };
                let mut m = Movie::starting_at(q, i);
                let mut f = x.clone();
                f[j] = past;
                m.push(f);
                m.push(x.clone());
                let Ok(d) = trace(q, &m) else {
                    report.skipped += 1;
                    continue;
                };
                if d.events.len() != 2 {
                    report.skipped += 1;
                    continue;
                }
                let expect = poly_op(e.q.eval(n, k, j));
                report.record(
                    "strand-ghost bigon",
                    i,
                    format!("strand {j} around ghost of {k} via edge {ei}"),
                    &d.operator(q),
                    &expect,
                );
            }
        }
    }
    Ok(())
}

/// Straight-line paths to an equivalent translate and back compose to the
/// idempotent.
fn isotopy_checks(w: &Wklr, i: &Loading, report: &mut RelationReport) -> Result<()> {
    let shifted = i.translate(&(int(1) / int(3)));
    let there = w.straight_line(i, &shifted)?;
    let back = w.straight_line(&shifted, i)?;
    let round = w.to_operator(&back)?.compose(&w.to_operator(&there)?);
    report.record(
        "straight-line isomorphism",
        i,
        "translate by 1/3 and back".into(),
        &round,
        &SkewElement::identity(i.len()),
    );
    Ok(())
}

/// Runs every check on every representative of `chambers`.
pub fn check_relation_suite(w: &Wklr, chambers: &ChamberSet) -> Result<RelationReport> {
    let mut report = RelationReport::default();
    for i in chambers.reps() {
        local_checks(w.quiver(), i, &mut report);
        ghost_bigons(w, i, &mut report)?;
        isotopy_checks(w, i, &mut report)?;
    }
    Ok(report)
}

/// Runs the suite over `B(ν)` for every nonzero `ν` with at most
/// `max_strands` points.
pub fn check_all(w: &Wklr, max_strands: u32, limits: &Limits) -> Result<RelationReport> {
    let nv = w.quiver().vertex_count();
    let full = DimVector(vec![max_strands; nv]);
    let mut report = RelationReport::default();
    for nu in full.sub_vectors() {
        if nu.is_zero() || nu.total() > max_strands {
            continue;
        }
        let b = enumerate_chambers(w.quiver(), &nu, limits)?;
        let r = check_relation_suite(w, &b)?;
        report.checks.extend(r.checks);
        report.skipped += r.skipped;
    }
    Ok(report)
}
