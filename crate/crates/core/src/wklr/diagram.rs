//! Piecewise-linear strand movies, their crossing events, and the operator
//! each event contributes in the polynomial representation.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::loading::Loading;
use crate::poly::{Perm, SkewElement};
use crate::quiver::{Quiver, VertexId};
use crate::rat::{int, Rat};

/// Strands moving linearly between keyframes. Strand `a` is the `a`-th point
/// of the first frame; `weights[f][e]` is the weight of edge `e` at frame
/// `f`, so ghosts may move relative to their owners.
#[derive(Clone, Debug)]
pub struct Movie {
    pub labels: Vec<VertexId>,
    pub frames: Vec<Vec<Rat>>,
    pub weights: Vec<Vec<Rat>>,
}

impl Movie {
    /// A movie starting at `src` with constant weights from `q`.
    pub fn starting_at(q: &Quiver, src: &Loading) -> Movie {
        Movie {
            labels: src.labels(),
            frames: vec![src.points().iter().map(|p| p.0.clone()).collect()],
            weights: vec![q.edges.iter().map(|e| e.weight.clone()).collect()],
        }
    }

    pub fn last_frame(&self) -> &[Rat] {
        self.frames.last().expect("movie has a frame")
    }

    /// Appends a keyframe with the current weights.
    pub fn push(&mut self, positions: Vec<Rat>) {
        let w = self.weights.last().expect("movie has a frame").clone();
        self.push_weighted(positions, w);
    }

    pub fn push_weighted(&mut self, positions: Vec<Rat>, weights: Vec<Rat>) {
        assert_eq!(positions.len(), self.labels.len());
        self.frames.push(positions);
        self.weights.push(weights);
    }

    /// The loading of the last frame.
    pub fn end_loading(&self) -> Result<Loading> {
        Loading::new(
            self.last_frame()
                .iter()
                .cloned()
                .zip(self.labels.iter().copied())
                .collect(),
        )
    }

    /// Appends a straight-line segment to `tgt`, matching the `m`-th strand
    /// of each label (counted left to right at the current frame) with the
    /// `m`-th point of that label in `tgt`.
    pub fn push_straight_to(&mut self, tgt: &Loading) -> Result<()> {
        let cur = self.last_frame().to_vec();
        let mut order: Vec<usize> = (0..cur.len()).collect();
        order.sort_by(|&a, &b| cur[a].cmp(&cur[b]));
        let mut next = vec![Rat::zero(); cur.len()];
        let mut used = vec![false; tgt.len()];
        for &a in &order {
            let slot = (0..tgt.len())
                .find(|&k| !used[k] && tgt.label(k) == self.labels[a])
                .ok_or(Error::WeightMismatch)?;
            used[slot] = true;
            next[a] = tgt.position(slot).clone();
        }
        if used.iter().any(|u| !u) {
            return Err(Error::WeightMismatch);
        }
        self.push(next);
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EventKind {
    /// The strands at positions `pos`, `pos + 1` cross; labels are read
    /// before the crossing.
    Crossing { pos: usize, left: VertexId, right: VertexId },
    /// The strand at `strand_pos` passes the ghost of the strand at
    /// `owner_pos` for `edge`, left to right or right to left.
    Ghost {
        edge: usize,
        strand_pos: usize,
        owner_pos: usize,
        left_to_right: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Event {
    pub time: Rat,
    pub kind: EventKind,
}

impl EventKind {
    /// The same event seen in the reflected diagram.
    pub fn mirrored(&self) -> EventKind {
        match self {
            EventKind::Crossing { pos, left, right } => EventKind::Crossing {
                pos: *pos,
                left: *right,
                right: *left,
            },
            EventKind::Ghost {
                edge,
                strand_pos,
                owner_pos,
                left_to_right,
            } => EventKind::Ghost {
                edge: *edge,
                strand_pos: *strand_pos,
                owner_pos: *owner_pos,
                left_to_right: !left_to_right,
            },
        }
    }
}

/// The action of a single crossing of the strands at `pos`, `pos + 1`.
pub fn crossing_factor(q: &Quiver, n: usize, pos: usize, left: VertexId, right: VertexId) -> SkewElement {
    if left != right {
        return SkewElement::perm(Perm::simple(n, pos));
    }
    match q.weight_zero_loop(left) {
        None => SkewElement::demazure(pos, n),
        Some(e) => {
            let p = crate::quiver::loop_p(e).expect("validated weight-zero loop");
            let s_minus_1 = SkewElement::perm(Perm::simple(n, pos)).sub(&SkewElement::identity(n));
            s_minus_1.mul_left_poly(&p.eval(n, pos, pos + 1))
        }
    }
}

/// `Q_e(y_owner, y_strand)` when the strand passes left to right, identity
/// otherwise.
pub fn ghost_factor(q: &Quiver, n: usize, edge: usize, strand_pos: usize, owner_pos: usize, left_to_right: bool) -> SkewElement {
    if left_to_right {
        SkewElement::from_poly(q.edges[edge].q.eval(n, owner_pos, strand_pos))
    } else {
        SkewElement::identity(n)
    }
}

pub fn event_factor(q: &Quiver, n: usize, kind: &EventKind) -> SkewElement {
    match kind {
        EventKind::Crossing { pos, left, right } => crossing_factor(q, n, *pos, *left, *right),
        EventKind::Ghost {
            edge,
            strand_pos,
            owner_pos,
            left_to_right,
        } => ghost_factor(q, n, *edge, *strand_pos, *owner_pos, *left_to_right),
    }
}

/// Operator degree with `deg y = 2 d`.
pub fn event_degree(q: &Quiver, kind: &EventKind) -> i64 {
    match kind {
        EventKind::Crossing { left, right, .. } if left != right => 0,
        EventKind::Crossing { left, .. } => {
            let d = q.d(*left) as i64;
            match q.weight_zero_loop(*left) {
                None => -2 * d,
                Some(e) => 2 * d * e.c as i64 - 2 * d,
            }
        }
        EventKind::Ghost {
            edge, left_to_right, ..
        } => {
            if *left_to_right {
                let e = &q.edges[*edge];
                2 * q.d(e.head) as i64 * e.c as i64
            } else {
                0
            }
        }
    }
}

/// A traced movie: its events in time order and the permutation carrying
/// each strand's initial position to its final one.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub n: usize,
    pub events: Vec<Event>,
    pub perm: Perm,
}

impl Diagram {
    /// `E_m ∘ … ∘ E_1`.
    pub fn operator(&self, q: &Quiver) -> SkewElement {
        self.operator_skipping(q, &[])
    }

    /// The operator with the listed events (by index) left out.
    pub fn operator_skipping(&self, q: &Quiver, skip: &[usize]) -> SkewElement {
        let mut op = SkewElement::identity(self.n);
        for (k, ev) in self.events.iter().enumerate() {
            if !skip.contains(&k) {
                op = event_factor(q, self.n, &ev.kind).compose(&op);
            }
        }
        op
    }

    pub fn degree(&self, q: &Quiver) -> i64 {
        self.events.iter().map(|e| event_degree(q, &e.kind)).sum()
    }

    /// The diagram reflected top to bottom.
    pub fn mirrored(&self) -> Diagram {
        let last = self.events.last().map(|e| e.time.clone()).unwrap_or_else(Rat::zero);
        Diagram {
            n: self.n,
            events: self
                .events
                .iter()
                .rev()
                .map(|e| Event {
                    time: &last - &e.time,
                    kind: e.kind.mirrored(),
                })
                .collect(),
            perm: self.perm.inverse(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Obj {
    Strand(usize),
    Ghost { owner: usize, edge: usize },
}

/// Traces a movie, emitting one event for each crossing of a strand with a
/// strand or with a ghost it interacts with. Simultaneous crossings are
/// ordered by delaying strand `k` by `k·ε`; whatever still coincides is
/// resolved by swapping the leftmost adjacent out-of-order pair.
pub fn trace(q: &Quiver, movie: &Movie) -> Result<Diagram> {
    let n = movie.labels.len();
    let nf = movie.frames.len();
    let zero_loop = |e: usize| movie.weights.iter().all(|w| w[e].is_zero()) && q.edges[e].is_loop();
    for (ei, e) in q.edges.iter().enumerate() {
        if e.is_loop() && !zero_loop(ei) && movie.weights.iter().any(|w| w[ei].is_zero()) {
            return Err(Error::DegenerateInterpolation(format!(
                "loop {ei} passes through weight zero"
            )));
        }
    }

    let mut objs: Vec<Obj> = (0..n).map(Obj::Strand).collect();
    for owner in 0..n {
        for (ei, e) in q.edges.iter().enumerate() {
            if e.head == movie.labels[owner] && !zero_loop(ei) {
                objs.push(Obj::Ghost { owner, edge: ei });
            }
        }
    }
    let pos_at = |o: Obj, f: usize| -> Rat {
        match o {
            Obj::Strand(k) => movie.frames[f][k].clone(),
            Obj::Ghost { owner, edge } => &movie.frames[f][owner] + &movie.weights[f][edge],
        }
    };
    let interacts = |a: Obj, b: Obj| -> bool {
        match (a, b) {
            (Obj::Strand(_), Obj::Strand(_)) => true,
            (Obj::Strand(j), Obj::Ghost { edge, .. }) | (Obj::Ghost { edge, .. }, Obj::Strand(j)) => {
                q.edges[edge].tail == movie.labels[j]
            }
            _ => false,
        }
    };
    let mut pairs = Vec::new();
    for a in 0..objs.len() {
        for b in a + 1..objs.len() {
            if interacts(objs[a], objs[b]) {
                pairs.push((a, b));
            }
        }
    }

    // Strand `k` runs `k·ε` late; ghosts keep their owner's schedule, and
    // among coincident objects a ghost stays next to its owner.
    let sched = |o: Obj| -> Rat {
        match o {
            Obj::Strand(k) | Obj::Ghost { owner: k, .. } => int(k as i64),
        }
    };
    let tie = |o: usize| -> (usize, usize) {
        match objs[o] {
            Obj::Strand(k) => (k, 0),
            Obj::Ghost { owner, .. } => (owner, o),
        }
    };
    let mut order: Vec<usize> = (0..objs.len()).collect();
    let mut events = Vec::new();

    for f in 0..nf {
        let last = f + 1 == nf;
        let p0: Vec<Rat> = objs.iter().map(|&o| pos_at(o, f)).collect();
        for &(a, b) in &pairs {
            if p0[a] == p0[b] {
                return Err(Error::NonGeneric(format!(
                    "movie keyframe {f}: interacting objects coincide"
                )));
            }
        }
        if f == 0 {
            order.sort_by(|&a, &b| p0[a].cmp(&p0[b]).then(tie(a).cmp(&tie(b))));
        }
        if last {
            break;
        }
        let p1: Vec<Rat> = objs.iter().map(|&o| pos_at(o, f + 1)).collect();
        let vel: Vec<Rat> = (0..objs.len()).map(|o| &p1[o] - &p0[o]).collect();
        // Event times `t + c·ε`, stored as `(t, c)`.
        let mut times: Vec<(Rat, Rat)> = Vec::new();
        for &(a, b) in &pairs {
            let d0 = &p0[a] - &p0[b];
            let d1 = &p1[a] - &p1[b];
            if d0.is_zero() && d1.is_zero() {
                return Err(Error::DegenerateInterpolation(
                    "objects coincide along a segment".into(),
                ));
            }
            if (d0 < Rat::zero()) != (d1 < Rat::zero()) && !d1.is_zero() {
                let t = &d0 / (&d0 - &d1);
                let c = (&vel[a] * sched(objs[a]) - &vel[b] * sched(objs[b])) / (&vel[a] - &vel[b]);
                times.push((t, c));
            }
        }
        times.sort();
        times.dedup();
        let mut samples: Vec<(Rat, Rat)> = Vec::with_capacity(times.len() + 1);
        let mut prev = (Rat::zero(), Rat::zero());
        for t in &times {
            samples.push(if t.0 == prev.0 {
                (t.0.clone(), (&prev.1 + &t.1) / int(2))
            } else {
                ((&prev.0 + &t.0) / int(2), Rat::zero())
            });
            prev = t.clone();
        }
        samples.push(((&prev.0 + Rat::one()) / int(2), Rat::zero()));

        let strand_pos = |order: &[usize], k: usize| -> usize {
            order
                .iter()
                .take_while(|&&o| o != k)
                .filter(|&&o| matches!(objs[o], Obj::Strand(_)))
                .count()
        };
        for (si, (st, sc)) in samples.iter().enumerate() {
            let key: Vec<(Rat, Rat)> = (0..objs.len())
                .map(|o| (&p0[o] + &vel[o] * st, &vel[o] * (sc - sched(objs[o]))))
                .collect();
            let mut rank = vec![0; objs.len()];
            let mut sorted: Vec<usize> = (0..objs.len()).collect();
            sorted.sort_by(|&a, &b| key[a].cmp(&key[b]).then(tie(a).cmp(&tie(b))));
            for (r, &o) in sorted.iter().enumerate() {
                rank[o] = r;
            }
            let time = if si == 0 {
                None
            } else {
                Some(int(f as i64) + &times[si - 1].0)
            };
            while let Some(i) = (0..order.len().saturating_sub(1)).find(|&i| rank[order[i]] > rank[order[i + 1]]) {
                let (a, b) = (order[i], order[i + 1]);
                if interacts(objs[a], objs[b]) {
                    let Some(time) = time.clone() else {
                        return Err(Error::NonGeneric("interacting objects cross at a keyframe".into()));
                    };
                    let kind = match (objs[a], objs[b]) {
                        (Obj::Strand(ka), Obj::Strand(kb)) => EventKind::Crossing {
                            pos: strand_pos(&order, a),
                            left: movie.labels[ka],
                            right: movie.labels[kb],
                        },
                        (Obj::Strand(j), Obj::Ghost { owner, edge }) => EventKind::Ghost {
                            edge,
                            strand_pos: strand_pos(&order, j),
                            owner_pos: strand_pos(&order, owner),
                            left_to_right: true,
                        },
                        (Obj::Ghost { owner, edge }, Obj::Strand(j)) => EventKind::Ghost {
                            edge,
                            strand_pos: strand_pos(&order, j),
                            owner_pos: strand_pos(&order, owner),
                            left_to_right: false,
                        },
                        _ => unreachable!("ghosts do not interact with ghosts"),
                    };
                    events.push(Event { time, kind });
                }
                order.swap(i, i + 1);
            }
        }
    }

    let mut images = vec![0; n];
    let mut p = 0;
    for &o in &order {
        if let Obj::Strand(k) = objs[o] {
            images[k] = p;
            p += 1;
        }
    }
    Ok(Diagram {
        n,
        events,
        perm: Perm::from_images(images).expect("strand order is a permutation"),
    })
}
