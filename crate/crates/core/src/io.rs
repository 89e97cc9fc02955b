//! Text formats: quiver documents (TOML or JSON), loadings, dimension
//! vectors, charges, and JSON views of chamber sets and elements.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::loading::{ChamberSet, Loading};
use crate::quiver::{validate, DimVector, Edge, EdgePoly, Quiver, VertexId};
use crate::rat::{fmt_rat, parse_rat, Rat};
use crate::steady::Charge;
use crate::wklr::WklrElement;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub tail: usize,
    pub head: usize,
    #[serde(default = "one")]
    pub c: u32,
    #[serde(default = "one")]
    pub cbar: u32,
    #[serde(default = "zero_str")]
    pub weight: String,
    /// Terms `[a, b, "coeff"]` of `Q(u, v) = Σ coeff u^a v^b`; defaults to
    /// `u^c - v^cbar`.
    #[serde(rename = "Q", default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<(u32, u32, String)>>,
}

fn one() -> u32 {
    1
}

fn zero_str() -> String {
    "0".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    pub vertices: usize,
    #[serde(default)]
    pub symmetrizers: Option<Vec<u32>>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cb_vertex: Option<usize>,
}

impl QuiverDoc {
    pub fn to_quiver(&self) -> Result<Quiver> {
        let symmetrizers = self.symmetrizers.clone().unwrap_or_else(|| vec![1; self.vertices]);
        if symmetrizers.len() != self.vertices {
            return Err(Error::Parse(format!(
                "{} symmetrizers given for {} vertices",
                symmetrizers.len(),
                self.vertices
            )));
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let q = match &e.q {
                Some(terms) => EdgePoly::from_terms(
                    terms
                        .iter()
                        .map(|(a, b, c)| Ok((*a, *b, parse_rat(c)?)))
                        .collect::<Result<Vec<_>>>()?,
                ),
                None => EdgePoly::from_terms([(e.c, 0, Rat::from_integer(1.into())), (0, e.cbar, Rat::from_integer((-1).into()))]),
            };
            edges.push(Edge {
                tail: VertexId(e.tail),
                head: VertexId(e.head),
                c: e.c,
                cbar: e.cbar,
                weight: parse_rat(&e.weight)?,
                q,
            });
        }
        let mut q = Quiver::new(symmetrizers, edges);
        q.cb_vertex = self.cb_vertex.map(VertexId);
        Ok(q)
    }

    /// Canonical form: edges sorted by `(tail, head, weight)` and `Q` terms
    /// by exponent.
    pub fn from_quiver(q: &Quiver) -> QuiverDoc {
        let mut edges: Vec<(&Edge, EdgeDoc)> = q
            .edges
            .iter()
            .map(|e| {
                let mut terms: Vec<(u32, u32, String)> = e.q.terms().map(|(a, b, c)| (a, b, fmt_rat(c))).collect();
                terms.sort();
                (
                    e,
                    EdgeDoc {
                        tail: e.tail.0,
                        head: e.head.0,
                        c: e.c,
                        cbar: e.cbar,
                        weight: fmt_rat(&e.weight),
                        q: Some(terms),
                    },
                )
            })
            .collect();
        edges.sort_by(|(a, _), (b, _)| (a.tail, a.head, &a.weight).cmp(&(b.tail, b.head, &b.weight)));
        QuiverDoc {
            vertices: q.vertex_count(),
            symmetrizers: Some(q.symmetrizers.clone()),
            edges: edges.into_iter().map(|(_, d)| d).collect(),
            cb_vertex: q.cb_vertex.map(|v| v.0),
        }
    }
}

/// Reads a quiver document, JSON if it starts with `{` and TOML otherwise,
/// and returns it without merging.
pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let doc: QuiverDoc = if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?
    } else {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?
    };
    doc.to_quiver()
}

/// Parses, validates and merges parallel edges.
pub fn load_quiver(text: &str) -> Result<Quiver> {
    let q = parse_quiver(text)?;
    let diags = validate(&q);
    if !diags.is_empty() {
        return Err(Error::Validation(diags));
    }
    q.normalized()
}

pub fn quiver_to_toml(q: &Quiver) -> String {
    toml::to_string(&QuiverDoc::from_quiver(q)).expect("quiver documents serialize")
}

pub fn quiver_to_json(q: &Quiver) -> String {
    serde_json::to_string_pretty(&QuiverDoc::from_quiver(q)).expect("quiver documents serialize")
}

/// `"v@x,v@x,…"` with `x` an integer, `p/q` or decimal. The empty string
/// is the empty loading.
pub fn parse_loading(s: &str) -> Result<Loading> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Loading::empty());
    }
    let mut points = Vec::new();
    for part in s.split(',') {
        let (v, x) = part
            .split_once('@')
            .ok_or_else(|| Error::Parse(format!("expected vertex@position, got {part:?}")))?;
        let v: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex {v:?}")))?;
        points.push((parse_rat(x)?, VertexId(v)));
    }
    Loading::new(points)
}

pub fn parse_nu(s: &str) -> Result<DimVector> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad multiplicity {x:?}")))
        })
        .collect::<Result<Vec<_>>>()
        .map(DimVector)
}

/// `"re/im,re/im,…"`, one entry per vertex.
pub fn parse_charge(s: &str) -> Result<Charge> {
    let values = s
        .split(',')
        .map(|part| {
            let (re, im) = part
                .split_once('/')
                .ok_or_else(|| Error::Parse(format!("expected re/im, got {part:?}")))?;
            Ok((parse_rat(re)?, parse_rat(im)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Charge::new(values)
}

/// `[["p/q", vertex], …]`.
pub fn loading_json(i: &Loading) -> Value {
    Value::Array(i.points().iter().map(|(x, v)| json!([fmt_rat(x), v.0])).collect())
}

pub fn loading_from_json(v: &Value) -> Result<Loading> {
    let bad = || Error::Parse(format!("not a loading: {v}"));
    let points = v
        .as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|p| {
            let x = p.get(0).and_then(Value::as_str).ok_or_else(bad)?;
            let l = p.get(1).and_then(Value::as_u64).ok_or_else(bad)?;
            Ok((parse_rat(x)?, VertexId(l as usize)))
        })
        .collect::<Result<Vec<_>>>()?;
    Loading::new(points)
}

/// Representatives together with their signatures.
pub fn chambers_json(b: &ChamberSet) -> Value {
    json!({
        "nu": b.nu.0,
        "chambers": b
            .reps()
            .iter()
            .zip(b.signatures())
            .map(|(l, s)| json!({ "loading": loading_json(l), "signature": s.to_string() }))
            .collect::<Vec<_>>(),
    })
}

/// `{src, tgt, terms: [[π one-line, polynomial], …]}`.
pub fn element_json(x: &WklrElement) -> Value {
    json!({
        "src": loading_json(&x.src),
        "tgt": loading_json(&x.tgt),
        "terms": x
            .coeffs
            .iter()
            .map(|(pi, p)| json!([pi.to_string(), p.to_string()]))
            .collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::presets::*;
    use crate::rat::{int, rat};

    const KRONECKER: &str = r#"
vertices = 2
symmetrizers = [1, 1]

[[edges]]
tail = 0
head = 1
weight = "1"
Q = [[1, 0, "1"], [0, 1, "-1"]]

[[edges]]
tail = 0
head = 1
weight = "-1"
"#;

    #[test]
    fn toml_round_trip() {
        let q = parse_quiver(KRONECKER).unwrap();
        assert_eq!(q, kronecker(int(1), int(-1)));
        let again = parse_quiver(&quiver_to_toml(&q)).unwrap();
        assert_eq!(again, kronecker(int(-1), int(1)));
        assert_eq!(quiver_to_toml(&q), quiver_to_toml(&again));
        let json = parse_quiver(&quiver_to_json(&q)).unwrap();
        assert_eq!(json, again);
    }

    #[test]
    fn canonical_edge_order() {
        let mut q = kronecker(int(1), int(-1));
        q.edges.reverse();
        let doc = QuiverDoc::from_quiver(&q);
        assert_eq!(doc.edges[0].weight, "-1");
        assert_eq!(doc.edges[1].weight, "1");
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(parse_quiver("vertices = "), Err(Error::Parse(_))));
        assert!(matches!(parse_quiver("vertices = 1\nbogus = 2"), Err(Error::Parse(_))));
        let bad = "vertices = 1\n[[edges]]\ntail = 0\nhead = 3\n";
        assert!(matches!(load_quiver(bad), Err(Error::Validation(_))));
        let unsym = "vertices = 1\n[[edges]]\ntail = 0\nhead = 0\nweight = \"0\"\nQ = [[3, 0, \"1\"], [2, 1, \"1\"], [0, 3, \"-1\"]]\nc = 3\ncbar = 3\n";
        assert!(matches!(load_quiver(unsym), Err(Error::Validation(_))));
    }

    #[test]
    fn loadings_and_parameters() {
        let l = parse_loading("0@0, 1@1/2,0@2.5").unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(*l.position(1), rat(1, 2));
        assert_eq!(loading_from_json(&loading_json(&l)).unwrap(), l);
        assert!(parse_loading("0@1,1@1").is_err());
        assert!(parse_loading("x@1").is_err());
        assert!(parse_loading("").unwrap().is_empty());
        assert_eq!(parse_nu("1, 2").unwrap(), DimVector(vec![1, 2]));
        assert!(parse_nu("1,-1").is_err());
        let c = parse_charge("-1/1,2/1").unwrap();
        assert_eq!(c.values()[0], (int(-1), int(1)));
        assert!(parse_charge("1").is_err());
    }
}
