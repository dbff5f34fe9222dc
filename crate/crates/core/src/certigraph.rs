//! The carry transition digraph and a checkable certificate that none of its
//! closed walks has negative weight.
//!
//! Vertices are `(u, a, b, c, d)` with `u, a, b` bits and `c, d` carries in
//! `{-1, 0, 1}`. From `(u, a, b, c, d)` the next carries are forced,
//! `c'' = floor((u - a + b + c) / 2)`, `d'' = floor((u + a - b + d) / 2)`,
//! the next `u` is `1 - u` and the next `a, b` are free, so every vertex has
//! out-degree 4. The arc weight is `a + b - c'' - d''`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::carry::{CarryError, PairedSystems};
use crate::expsums::string_weight_excess;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertError {
    #[error("certificate has no potential for vertex {0}")]
    MissingPotential(String),
    #[error("walk correspondence needs 1 <= m <= 4 (got {0})")]
    WalkRange(u32),
    #[error(transparent)]
    Carry(#[from] CarryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Vertex {
    pub u: u8,
    pub a: u8,
    pub b: u8,
    pub c: i8,
    pub d: i8,
}

impl Vertex {
    /// Position in the lexicographic order on `(u, a, b, c+1, d+1)`.
    pub fn index(&self) -> usize {
        let (u, a, b) = (self.u as usize, self.a as usize, self.b as usize);
        (((u * 2 + a) * 2 + b) * 3 + (self.c + 1) as usize) * 3 + (self.d + 1) as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self {
            d: (i % 3) as i8 - 1,
            c: (i / 3 % 3) as i8 - 1,
            b: (i / 9 % 2) as u8,
            a: (i / 18 % 2) as u8,
            u: (i / 36 % 2) as u8,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{})",
            self.u, self.a, self.b, self.c, self.d
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub weight: i64,
}

/// Weighted digraph with labelled vertices; arcs refer to positions in
/// `labels`.
#[derive(Debug, Clone, Serialize)]
pub struct Graph<L> {
    pub labels: Vec<L>,
    pub arcs: Vec<Arc>,
}

impl<L: Clone + Ord + fmt::Display> Graph<L> {
    pub fn new(labels: Vec<L>, arcs: Vec<Arc>) -> Self {
        Self { labels, arcs }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.labels.len()];
        for a in &self.arcs {
            deg[a.tail] += 1;
        }
        deg
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.labels.len()];
        for a in &self.arcs {
            adj[a.tail].push(a.head);
        }
        adj
    }

    /// Subgraph induced by `vertices` (positions), keeping only internal arcs.
    pub fn induced(&self, vertices: &[usize]) -> Graph<L> {
        let pos: HashMap<usize, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let arcs = self
            .arcs
            .iter()
            .filter_map(|a| {
                Some(Arc {
                    tail: *pos.get(&a.tail)?,
                    head: *pos.get(&a.head)?,
                    weight: a.weight,
                })
            })
            .collect();
        Graph { labels, arcs }
    }

    /// JSON export: vertex labels, arcs and (optionally) SCC labels and
    /// potentials.
    pub fn to_json(
        &self,
        scc: Option<&[Vec<usize>]>,
        cert: Option<&Certificate<L>>,
    ) -> serde_json::Value
    where
        L: Serialize,
    {
        let component_of: Option<Vec<usize>> = scc.map(|comps| {
            let mut label = vec![0; self.labels.len()];
            for (i, comp) in comps.iter().enumerate() {
                for &v in comp {
                    label[v] = i;
                }
            }
            label
        });
        serde_json::json!({
            "vertices": self.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "arcs": self.arcs.iter().map(|a| serde_json::json!({
                "tail": self.labels[a.tail].to_string(),
                "head": self.labels[a.head].to_string(),
                "weight": a.weight,
            })).collect::<Vec<_>>(),
            "scc": component_of,
            "potentials": cert.map(|c| c.potentials.iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect::<BTreeMap<_, _>>()),
        })
    }
}

/// The full 72-vertex transition graph.
pub fn build_graph() -> Graph<Vertex> {
    let labels: Vec<Vertex> = (0..72).map(Vertex::from_index).collect();
    let mut arcs = Vec::with_capacity(288);
    for v in &labels {
        let (u, a, b) = (v.u as i64, v.a as i64, v.b as i64);
        let (c, d) = (v.c as i64, v.d as i64);
        let c2 = (u - a + b + c).div_euclid(2);
        let d2 = (u + a - b + d).div_euclid(2);
        let s = u - a + b + c - 2 * c2;
        let t = u + a - b + d - 2 * d2;
        debug_assert!((0..=1).contains(&s) && (0..=1).contains(&t));
        for a2 in 0..2u8 {
            for b2 in 0..2u8 {
                let head = Vertex {
                    u: 1 - v.u,
                    a: a2,
                    b: b2,
                    c: c2 as i8,
                    d: d2 as i8,
                };
                arcs.push(Arc {
                    tail: v.index(),
                    head: head.index(),
                    weight: a + b - c2 - d2,
                });
            }
        }
    }
    Graph { labels, arcs }
}

/// Tarjan's algorithm; components are returned with sorted members, ordered
/// by their smallest member.
pub fn scc_decompose<L: Clone + Ord + fmt::Display>(g: &Graph<L>) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next = 0;
    let mut out = Vec::new();
    // explicit call stack of (vertex, next child position)
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut calls = vec![(root, 0usize)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut child)) = calls.last_mut() {
            if let Some(&w) = adj[v].get(*child) {
                *child += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if let Some(&(parent, _)) = calls.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                out.push(comp);
            }
        }
    }
    out.sort_by_key(|c| c[0]);
    out
}

pub fn weight_histogram<L>(h: &Graph<L>) -> BTreeMap<i64, usize> {
    let mut hist = BTreeMap::new();
    for a in &h.arcs {
        *hist.entry(a.weight).or_insert(0) += 1;
    }
    hist
}

/// Vertex potentials with nonnegative reduced weights on every arc.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate<L: Ord> {
    pub potentials: BTreeMap<L, i64>,
}

/// A closed walk of negative total weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NegativeCycle<L> {
    pub vertices: Vec<L>,
    pub weight: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certification<L: Ord> {
    Certified(Certificate<L>),
    Counterexample(NegativeCycle<L>),
}

/// Bellman-Ford from a virtual source joined to every vertex with weight 0.
/// Distances become the potentials; a relaxation in round `|V|` exposes a
/// negative cycle, which is traced through the predecessor links.
pub fn certify_nonnegative<L: Clone + Ord + fmt::Display>(h: &Graph<L>) -> Certification<L> {
    let n = h.vertex_count();
    let mut dist = vec![0i64; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut last_relaxed = None;
    for _ in 0..=n {
        last_relaxed = None;
        for (i, a) in h.arcs.iter().enumerate() {
            if dist[a.tail] + a.weight < dist[a.head] {
                dist[a.head] = dist[a.tail] + a.weight;
                pred[a.head] = Some(i);
                last_relaxed = Some(a.head);
            }
        }
        if last_relaxed.is_none() {
            break;
        }
    }
    match last_relaxed {
        None => Certification::Certified(Certificate {
            potentials: h.labels.iter().cloned().zip(dist).collect(),
        }),
        Some(mut v) => {
            for _ in 0..n {
                v = h.arcs[pred[v].expect("relaxed vertex has a predecessor")].tail;
            }
            let start = v;
            let mut cycle = Vec::new();
            let mut weight = 0;
            loop {
                let arc = h.arcs[pred[v].expect("on cycle")];
                cycle.push(v);
                weight += arc.weight;
                v = arc.tail;
                if v == start {
                    break;
                }
            }
            cycle.reverse();
            Certification::Counterexample(NegativeCycle {
                vertices: cycle.into_iter().map(|i| h.labels[i].clone()).collect(),
                weight,
            })
        }
    }
}

/// Linear check of `w(e) + pi(tail) - pi(head) >= 0` on every arc.
pub fn verify_certificate<L: Clone + Ord + fmt::Display>(
    h: &Graph<L>,
    cert: &Certificate<L>,
) -> Result<bool, CertError> {
    let pot: Vec<i64> = h
        .labels
        .iter()
        .map(|l| {
            cert.potentials
                .get(l)
                .copied()
                .ok_or_else(|| CertError::MissingPotential(l.to_string()))
        })
        .collect::<Result<_, _>>()?;
    Ok(h.arcs
        .iter()
        .all(|a| a.weight + pot[a.tail] - pot[a.head] >= 0))
}

/// Karp's minimum cycle mean with every vertex as a start (all `D_0 = 0`).
/// `None` for acyclic graphs.
pub fn min_cycle_mean<L>(h: &Graph<L>) -> Option<Ratio<i64>> {
    let n = h.labels.len();
    if n == 0 {
        return None;
    }
    // table[k][v]: minimum weight of a walk with exactly k arcs ending at v
    let mut table = vec![vec![None::<i64>; n]; n + 1];
    table[0] = vec![Some(0); n];
    for k in 1..=n {
        for a in &h.arcs {
            if let Some(prev) = table[k - 1][a.tail] {
                let cand = prev + a.weight;
                let slot = &mut table[k][a.head];
                if slot.is_none_or(|cur| cand < cur) {
                    *slot = Some(cand);
                }
            }
        }
    }
    (0..n)
        .filter_map(|v| {
            let full = table[n][v]?;
            (0..n)
                .filter_map(|k| table[k][v].map(|dk| Ratio::new(full - dk, (n - k) as i64)))
                .max()
        })
        .min()
}

/// Summary of the graph analysis.
#[derive(Debug, Clone, Serialize)]
pub struct GraphReport {
    pub vertices: usize,
    pub arcs: usize,
    pub out_degrees_all_four: bool,
    pub components: usize,
    pub component_sizes: Vec<usize>,
    pub trivial_components_without_arcs: usize,
    pub largest_component: usize,
    pub histogram: BTreeMap<i64, usize>,
    pub certified: bool,
    pub certificate_verified: bool,
    pub min_cycle_mean: Option<String>,
}

/// Everything [`analyze`] produces.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub graph: Graph<Vertex>,
    pub components: Vec<Vec<usize>>,
    /// The largest strong component as an induced subgraph.
    pub component: Graph<Vertex>,
    pub certification: Certification<Vertex>,
    pub report: GraphReport,
}

/// Build the graph, locate the large component `H`, certify it.
pub fn analyze() -> Analysis {
    let g = build_graph();
    let comps = scc_decompose(&g);
    let largest = comps
        .iter()
        .max_by_key(|c| c.len())
        .expect("nonempty graph")
        .clone();
    let h = g.induced(&largest);
    let trivial = comps
        .iter()
        .filter(|c| c.len() == 1)
        .filter(|c| !g.arcs.iter().any(|a| a.tail == c[0] && a.head == c[0]))
        .count();
    let cert = certify_nonnegative(&h);
    let verified = match &cert {
        Certification::Certified(c) => verify_certificate(&h, c).unwrap_or(false),
        Certification::Counterexample(_) => false,
    };
    let mut sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let report = GraphReport {
        vertices: g.vertex_count(),
        arcs: g.arcs.len(),
        out_degrees_all_four: g.out_degrees().iter().all(|&d| d == 4),
        components: comps.len(),
        component_sizes: sizes,
        trivial_components_without_arcs: trivial,
        largest_component: largest.len(),
        histogram: weight_histogram(&h),
        certified: matches!(cert, Certification::Certified(_)),
        certificate_verified: verified,
        min_cycle_mean: min_cycle_mean(&h).map(|r| r.to_string()),
    };
    Analysis {
        graph: g,
        components: comps,
        component: h,
        certification: cert,
        report,
    }
}

/// Outcome of tracing every carry system as a closed walk.
#[derive(Debug, Clone, Default, Serialize)]
pub struct WalkReport {
    pub instances: usize,
    pub closed_walks: usize,
    pub weight_matches: usize,
    pub nonnegative: usize,
}

impl WalkReport {
    pub fn all_pass(&self) -> bool {
        self.instances > 0
            && self.closed_walks == self.instances
            && self.weight_matches == self.instances
            && self.nonnegative == self.instances
    }
}

/// For every `(a, b, u)` modulo `2^(2m) - 1`, follow
/// `(u_j, a_j, b_j, c_(j-1), d_(j-1)) -> (u_(j+1), a_(j+1), b_(j+1), c_j, d_j)`
/// through the graph and compare the walk weight to the carry sum and to the
/// direct weight computation.
pub fn walk_correspondence(m: u32) -> Result<WalkReport, CertError> {
    if !(1..=4).contains(&m) {
        return Err(CertError::WalkRange(m));
    }
    let g = build_graph();
    let arc_weight: HashMap<(usize, usize), i64> = g
        .arcs
        .iter()
        .map(|a| ((a.tail, a.head), a.weight))
        .collect();
    let n = 2 * m as usize;
    let modulus = (1i128 << n) - 1;
    let mut report = WalkReport::default();
    for u_choice in 0..2u8 {
        for a in 0..modulus {
            for b in 0..modulus {
                report.instances += 1;
                let p = PairedSystems::build(m, u_choice, a, b)?;
                let vertex = |j: usize| Vertex {
                    u: p.u.bits()[j % n],
                    a: p.a.bits()[j % n],
                    b: p.b.bits()[j % n],
                    c: p.s_side.carries[(j + n - 1) % n] as i8,
                    d: p.t_side.carries[(j + n - 1) % n] as i8,
                };
                let mut total = 0;
                let mut closed = true;
                for j in 0..n {
                    match arc_weight.get(&(vertex(j).index(), vertex(j + 1).index())) {
                        Some(w) => total += w,
                        None => closed = false,
                    }
                }
                closed &= vertex(n) == vertex(0);
                if closed {
                    report.closed_walks += 1;
                }
                if closed
                    && total == p.walk_sum()
                    && total == string_weight_excess(m, u_choice, a, b)
                {
                    report.weight_matches += 1;
                }
                if total >= 0 {
                    report.nonnegative += 1;
                }
            }
        }
    }
    Ok(report)
}

pub fn walk_correspondence_check(m: u32) -> Result<bool, CertError> {
    Ok(walk_correspondence(m)?.all_pass())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(weights: &[(usize, usize, i64)], n: usize) -> Graph<usize> {
        Graph::new(
            (0..n).collect(),
            weights
                .iter()
                .map(|&(tail, head, weight)| Arc { tail, head, weight })
                .collect(),
        )
    }

    #[test]
    fn vertex_index_round_trip() {
        for i in 0..72 {
            assert_eq!(Vertex::from_index(i).index(), i);
        }
        let order: Vec<Vertex> = (0..72).map(Vertex::from_index).collect();
        let mut sorted = order.clone();
        sorted.sort();
        assert_eq!(order, sorted);
    }

    #[test]
    fn graph_shape() {
        let g = build_graph();
        assert_eq!(g.vertex_count(), 72);
        assert_eq!(g.arcs.len(), 288);
        assert!(g.out_degrees().iter().all(|&d| d == 4));
        for a in &g.arcs {
            let (t, h) = (g.labels[a.tail], g.labels[a.head]);
            assert_eq!(h.u, 1 - t.u);
            assert_eq!(a.weight, t.a as i64 + t.b as i64 - h.c as i64 - h.d as i64);
            let s = t.u as i64 - t.a as i64 + t.b as i64 + t.c as i64 - 2 * h.c as i64;
            let tt = t.u as i64 + t.a as i64 - t.b as i64 + t.d as i64 - 2 * h.d as i64;
            assert!((0..=1).contains(&s) && (0..=1).contains(&tt));
            assert!((-2..=4).contains(&a.weight));
        }
    }

    #[test]
    fn components_and_histogram() {
        let Analysis {
            components: comps,
            component: h,
            certification: cert,
            report,
            ..
        } = analyze();
        assert_eq!(comps.len(), 33);
        assert_eq!(report.component_sizes[0], 40);
        assert_eq!(
            report.component_sizes.iter().filter(|&&s| s == 1).count(),
            32
        );
        assert_eq!(report.trivial_components_without_arcs, 32);
        let expected: BTreeMap<i64, usize> = [(-1, 8), (0, 32), (1, 80), (2, 32), (3, 8)].into();
        assert_eq!(weight_histogram(&h), expected);
        assert_eq!(h.arcs.len(), 160);
        let Certification::Certified(c) = cert else {
            panic!("H should be certified")
        };
        assert!(verify_certificate(&h, &c).unwrap());
        assert!(min_cycle_mean(&h).unwrap() >= Ratio::from_integer(0));
    }

    #[test]
    fn planted_negative_cycle() {
        let g = synthetic(&[(0, 1, 1), (1, 2, -1), (2, 0, -1)], 3);
        match certify_nonnegative(&g) {
            Certification::Counterexample(c) => {
                assert_eq!(c.weight, -1);
                let mut v = c.vertices.clone();
                v.sort();
                assert_eq!(v, vec![0, 1, 2]);
            }
            Certification::Certified(_) => panic!("cycle of weight -1 missed"),
        }
        assert_eq!(min_cycle_mean(&g), Some(Ratio::new(-1, 3)));
    }

    #[test]
    fn zero_potentials_reject_negative_arc() {
        let g = synthetic(&[(0, 1, -1)], 2);
        let cert = Certificate {
            potentials: [(0, 0), (1, 0)].into(),
        };
        assert!(!verify_certificate(&g, &cert).unwrap());
        // acyclic, so a certificate exists
        let Certification::Certified(c) = certify_nonnegative(&g) else {
            panic!()
        };
        assert!(verify_certificate(&g, &c).unwrap());
        let partial = Certificate {
            potentials: [(0, 0)].into(),
        };
        assert!(matches!(
            verify_certificate(&g, &partial),
            Err(CertError::MissingPotential(_))
        ));
        assert_eq!(min_cycle_mean(&g), None);
    }

    #[test]
    fn certificate_sensitivity() {
        let Analysis {
            component: h,
            certification: cert,
            ..
        } = analyze();
        let Certification::Certified(c) = cert else {
            panic!()
        };
        let reduced =
            |a: &Arc| a.weight + c.potentials[&h.labels[a.tail]] - c.potentials[&h.labels[a.head]];
        let mut broken = 0;
        for (i, v) in h.labels.iter().enumerate() {
            let slack_in = h
                .arcs
                .iter()
                .filter(|a| a.head == i && a.tail != i)
                .map(reduced)
                .min();
            let slack_out = h
                .arcs
                .iter()
                .filter(|a| a.tail == i && a.head != i)
                .map(reduced)
                .min();
            for (delta, slack) in [(3, slack_in), (-3, slack_out)] {
                let mut bad = c.clone();
                *bad.potentials.get_mut(v).unwrap() += delta;
                let expect_reject = slack.is_some_and(|s| s < 3);
                assert_eq!(
                    !verify_certificate(&h, &bad).unwrap(),
                    expect_reject,
                    "{v} {delta}"
                );
                broken += expect_reject as usize;
            }
        }
        assert!(broken > 0);
    }

    #[test]
    fn tarjan_small() {
        let g = synthetic(&[(0, 1, 0), (1, 0, 0), (1, 2, 0), (3, 3, 0)], 4);
        assert_eq!(scc_decompose(&g), vec![vec![0, 1], vec![2], vec![3]]);
    }

    #[test]
    fn walks_m1() {
        let r = walk_correspondence(1).unwrap();
        assert_eq!(r.instances, 18);
        assert!(r.all_pass());
        assert!(walk_correspondence(5).is_err());
    }

    #[test]
    fn graph_json() {
        let Analysis {
            graph: g,
            components: comps,
            ..
        } = analyze();
        let j = g.to_json(Some(&comps), None);
        assert_eq!(j["vertices"].as_array().unwrap().len(), 72);
        assert_eq!(j["arcs"].as_array().unwrap().len(), 288);
        assert_eq!(j["vertices"][0], "(0,0,0,-1,-1)");
    }
}
