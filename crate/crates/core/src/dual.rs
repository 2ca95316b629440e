//! Dual graphs of complexes embedded one dimension up.
//!
//! Each void (component of the ambient space minus the complex) becomes a
//! dual vertex and each d-simplex an edge from the void on its negative side
//! to the void on its positive side. The source void is split into `s*` and
//! `t*` along the two unit flows `Γ₁` (boundary `-γ`) and `Γ₂` (boundary
//! `γ`). Max flows become shortest paths from `s*`, and cuts become unit
//! `s* → t*` flows.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::complex::{apply_coboundary, Chain, Cochain, Coefficients};
use crate::flow::{FlowNetwork, FlowResult};
use crate::linalg::solve_linear;
use crate::{Error, Rational, Result};

/// Void incidences of the d-simplices. Supplied, not computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoidData {
    pub n_voids: usize,
    pub unbounded: usize,
    /// `(positive side, negative side)` for each d-simplex.
    pub sides: Vec<(usize, usize)>,
    pub source: usize,
    pub gamma1: Vec<usize>,
    pub gamma2: Vec<usize>,
}

impl VoidData {
    /// Signed boundary chain of void `v`: `+σ` where `v` is on the positive
    /// side, `-σ` where it is on the negative side.
    pub fn void_boundary(&self, v: usize, dim: usize) -> Chain {
        let coeffs = self
            .sides
            .iter()
            .map(|&(p, n)| Rational::from_integer(i64::from(p == v) - i64::from(n == v)))
            .collect();
        Chain::new(dim, coeffs)
    }

    /// Simplices with at least one side on the source void.
    pub fn source_boundary(&self) -> Vec<usize> {
        (0..self.sides.len())
            .filter(|&j| self.sides[j].0 == self.source || self.sides[j].1 == self.source)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualVertex {
    Source,
    Sink,
    Void(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualEdge {
    pub from: usize,
    pub to: usize,
    /// `None` is unbounded.
    pub weight: Option<Rational>,
    /// The dual d-simplex, or `None` for the edge dual to Σ.
    pub simplex: Option<usize>,
}

/// Vertex 0 is `s*`, vertex 1 is `t*`, then the other voids in increasing
/// order. Edge `j < n_d` is dual to simplex `j`; the last edge is `(t*, s*)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub vertices: Vec<DualVertex>,
    pub edges: Vec<DualEdge>,
}

pub const S_STAR: usize = 0;
pub const T_STAR: usize = 1;

/// Validates the void data against the network and builds the dual graph
/// weighted by capacities.
pub fn build_dual(net: &FlowNetwork, voids: &VoidData) -> Result<DualGraph> {
    build_dual_weighted(net, voids, net.capacities())
}

pub fn build_dual_weighted(
    net: &FlowNetwork,
    voids: &VoidData,
    weights: &[Rational],
) -> Result<DualGraph> {
    validate(net, voids)?;
    let n = net.n_top();
    if weights.len() != n {
        return Err(Error::ShapeMismatch {
            what: "dual weights",
            expected: n,
            found: weights.len(),
        });
    }
    let mut vertex_of = vec![usize::MAX; voids.n_voids];
    let mut vertices = vec![DualVertex::Source, DualVertex::Sink];
    for v in 0..voids.n_voids {
        if v != voids.source {
            vertex_of[v] = vertices.len();
            vertices.push(DualVertex::Void(v));
        }
    }
    let mut in_g1 = vec![false; n];
    for &j in &voids.gamma1 {
        in_g1[j] = true;
    }
    let split = |v: usize, j: usize| {
        if v == voids.source {
            if in_g1[j] {
                S_STAR
            } else {
                T_STAR
            }
        } else {
            vertex_of[v]
        }
    };
    let mut edges: Vec<DualEdge> = (0..n)
        .map(|j| {
            let (pos, neg) = voids.sides[j];
            DualEdge {
                from: split(neg, j),
                to: split(pos, j),
                weight: Some(weights[j].clone()),
                simplex: Some(j),
            }
        })
        .collect();
    edges.push(DualEdge {
        from: T_STAR,
        to: S_STAR,
        weight: None,
        simplex: None,
    });
    Ok(DualGraph { vertices, edges })
}

fn validate(net: &FlowNetwork, voids: &VoidData) -> Result<()> {
    let n = net.n_top();
    let d = net.dim();
    if voids.sides.len() != n {
        return Err(Error::ShapeMismatch {
            what: "void sides",
            expected: n,
            found: voids.sides.len(),
        });
    }
    for (j, &(p, q)) in voids.sides.iter().enumerate() {
        for v in [p, q] {
            if v >= voids.n_voids {
                return Err(Error::VoidIndexOutOfRange {
                    simplex: j,
                    void: v,
                });
            }
        }
    }
    for v in [voids.source, voids.unbounded] {
        if v >= voids.n_voids {
            return Err(Error::VoidIndexOutOfRange {
                simplex: usize::MAX,
                void: v,
            });
        }
    }
    let cx = net.complex();
    for v in 0..voids.n_voids {
        let b = voids.void_boundary(v, d);
        if d >= 1 && !crate::apply_boundary(cx, &b)?.is_zero() {
            return Err(Error::VoidBoundaryNotCycle { void: v });
        }
    }
    let mut mark = vec![0u8; n];
    for &j in voids.gamma1.iter().chain(&voids.gamma2) {
        if j >= n || mark[j] != 0 {
            return Err(Error::GammaSplitNotPartition);
        }
        mark[j] = 1;
    }
    let bd = voids.source_boundary();
    if bd.len() != voids.gamma1.len() + voids.gamma2.len() || bd.iter().any(|&j| mark[j] == 0) {
        return Err(Error::GammaSplitNotPartition);
    }
    let src = voids.void_boundary(voids.source, d);
    let restrict = |set: &[usize]| {
        let mut c = Chain::zero(d, n);
        for &j in set {
            c.coeffs[j] = src.coeffs[j].clone();
        }
        c
    };
    let g1 = crate::apply_boundary(cx, &restrict(&voids.gamma1))?;
    if g1 != net.gamma().scale(&-Rational::ONE) {
        return Err(Error::Gamma1Boundary);
    }
    let g2 = crate::apply_boundary(cx, &restrict(&voids.gamma2))?;
    if g2 != *net.gamma() {
        return Err(Error::Gamma2Boundary);
    }
    Ok(())
}

/// The boundary of Σ in the embedded convention (`∂Σ = γ`). The LP
/// convention appends the column `-γ` instead.
pub fn embedded_sigma_boundary(net: &FlowNetwork) -> Chain {
    net.gamma().clone()
}

/// Directed arcs `(from, to, weight)` used by the shortest-path search: each
/// simplex edge forward with its weight and backward with weight zero. The
/// Σ edge is left out.
pub fn shortest_path_arcs(g: &DualGraph) -> Vec<(usize, usize, Rational)> {
    let mut arcs = Vec::new();
    for e in &g.edges {
        if let (Some(w), Some(_)) = (&e.weight, e.simplex) {
            arcs.push((e.from, e.to, w.clone()));
            arcs.push((e.to, e.from, Rational::ZERO));
        }
    }
    arcs
}

fn adjacency(n: usize, arcs: &[(usize, usize, Rational)]) -> Vec<Vec<(usize, Rational)>> {
    let mut adj = vec![Vec::new(); n];
    for (u, v, w) in arcs {
        adj[*u].push((*v, w.clone()));
    }
    adj
}

/// Single-source distances with non-negative weights; `None` if
/// unreachable.
pub fn dijkstra(
    n: usize,
    arcs: &[(usize, usize, Rational)],
    source: usize,
) -> Vec<Option<Rational>> {
    let adj = adjacency(n, arcs);
    let mut dist: Vec<Option<Rational>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(Rational::ZERO);
    heap.push(Reverse((Rational::ZERO, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for (v, w) in &adj[u] {
            let nd = &d + w;
            if dist[*v].as_ref().map_or(true, |old| nd < *old) {
                dist[*v] = Some(nd.clone());
                heap.push(Reverse((nd, *v)));
            }
        }
    }
    dist
}

/// Reference single-source distances (any weights without negative cycles).
pub fn bellman_ford(
    n: usize,
    arcs: &[(usize, usize, Rational)],
    source: usize,
) -> Vec<Option<Rational>> {
    let mut dist: Vec<Option<Rational>> = vec![None; n];
    dist[source] = Some(Rational::ZERO);
    for _ in 0..n {
        let mut changed = false;
        for (u, v, w) in arcs {
            let Some(du) = &dist[*u] else { continue };
            let nd = du + w;
            if dist[*v].as_ref().map_or(true, |old| nd < *old) {
                dist[*v] = Some(nd);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

/// Distances from `s*`; vertices not connected to `s*` are measured from
/// their own component root.
pub fn dual_potentials(g: &DualGraph) -> Vec<Option<Rational>> {
    let arcs = shortest_path_arcs(g);
    let n = g.vertices.len();
    let mut dist = dijkstra(n, &arcs, S_STAR);
    for root in 0..n {
        if dist[root].is_none() {
            let local = dijkstra(n, &arcs, root);
            for (d, l) in dist.iter_mut().zip(local) {
                if d.is_none() {
                    *d = l;
                }
            }
        }
    }
    dist
}

/// Max flow as `dist(t*)`; the flow on σ is `dist(pos) - dist(neg)`.
pub fn max_flow_shortest_path(net: &FlowNetwork, voids: &VoidData) -> Result<FlowResult> {
    let g = build_dual(net, voids)?;
    let reach = dijkstra(g.vertices.len(), &shortest_path_arcs(&g), S_STAR);
    if reach[T_STAR].is_none() {
        return Err(Error::Unreachable("t* is not reachable from s*"));
    }
    let dist = dual_potentials(&g);
    let coeffs = g.edges[..net.n_top()]
        .iter()
        .map(|e| dist[e.to].as_ref().unwrap() - dist[e.from].as_ref().unwrap())
        .collect();
    Ok(FlowResult {
        flow: Chain::new(net.dim(), coeffs),
        value: dist[T_STAR].clone().unwrap(),
    })
}

/// A γ-cut recovered from a unit dual flow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCut {
    /// `p` with `p(γ) = -1`.
    pub cochain: Cochain,
    /// `δp`, equal to minus the dual flow.
    pub coboundary: Cochain,
    /// `{σ : δp(σ) < 0}`.
    pub directed_cut: Vec<usize>,
    /// `supp(δp)`.
    pub support: Vec<usize>,
    /// Cost of the dual flow.
    pub value: Rational,
    /// Net dual flow along each simplex edge.
    pub dual_flow: Vec<Rational>,
}

/// Residual arc for the successive-shortest-path solver.
#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: Option<Rational>,
    cost: Rational,
    flow: Rational,
    rev: usize,
    /// `(simplex, +1 along the dual edge / -1 against it)` for original arcs.
    tag: Option<(usize, i8)>,
}

/// Min-cost flow of value `demand` from `s` to `t` with non-negative costs,
/// by successive shortest paths with Johnson potentials.
struct MinCostFlow {
    graph: Vec<Vec<Arc>>,
}

impl MinCostFlow {
    fn new(n: usize) -> Self {
        MinCostFlow {
            graph: vec![Vec::new(); n],
        }
    }

    fn add_arc(
        &mut self,
        u: usize,
        v: usize,
        cap: Option<Rational>,
        cost: Rational,
        tag: (usize, i8),
    ) {
        let ru = self.graph[v].len() + usize::from(u == v);
        let rv = self.graph[u].len();
        self.graph[u].push(Arc {
            to: v,
            cap,
            cost: cost.clone(),
            flow: Rational::ZERO,
            rev: ru,
            tag: Some(tag),
        });
        self.graph[v].push(Arc {
            to: u,
            cap: Some(Rational::ZERO),
            cost: -cost,
            flow: Rational::ZERO,
            rev: rv,
            tag: None,
        });
    }

    fn residual(a: &Arc) -> Option<Rational> {
        a.cap.as_ref().map(|c| c - &a.flow)
    }

    fn run(&mut self, s: usize, t: usize, demand: &Rational) -> Result<Rational> {
        let n = self.graph.len();
        let mut potential = vec![Rational::ZERO; n];
        let mut sent = Rational::ZERO;
        let mut cost = Rational::ZERO;
        while sent < *demand {
            // Dijkstra on reduced costs.
            let mut dist: Vec<Option<Rational>> = vec![None; n];
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
            let mut done = vec![false; n];
            let mut heap = BinaryHeap::new();
            dist[s] = Some(Rational::ZERO);
            heap.push(Reverse((Rational::ZERO, s)));
            while let Some(Reverse((d, u))) = heap.pop() {
                if done[u] {
                    continue;
                }
                done[u] = true;
                for (k, a) in self.graph[u].iter().enumerate() {
                    if Self::residual(a).is_some_and(|r| !r.is_positive()) {
                        continue;
                    }
                    let nd = &(&d + &a.cost) + &(&potential[u] - &potential[a.to]);
                    if dist[a.to].as_ref().map_or(true, |old| nd < *old) {
                        dist[a.to] = Some(nd.clone());
                        prev[a.to] = Some((u, k));
                        heap.push(Reverse((nd, a.to)));
                    }
                }
            }
            if dist[t].is_none() {
                return Err(Error::Unreachable("no s*-t* path in the dual cost graph"));
            }
            for v in 0..n {
                if let Some(d) = &dist[v] {
                    potential[v] += d;
                }
            }
            let mut push = demand - &sent;
            let mut v = t;
            while let Some((u, k)) = prev[v] {
                if let Some(r) = Self::residual(&self.graph[u][k]) {
                    if r < push {
                        push = r;
                    }
                }
                v = u;
            }
            let mut v = t;
            while let Some((u, k)) = prev[v] {
                self.graph[u][k].flow += &push;
                cost += &push * &self.graph[u][k].cost;
                let (to, rev) = (self.graph[u][k].to, self.graph[u][k].rev);
                self.graph[to][rev].flow -= &push;
                v = u;
            }
            sent += &push;
        }
        Ok(cost)
    }
}

/// Minimum cut through a unit `s* → t*` min-cost flow in the dual.
///
/// With `unit_capacities == false` each simplex edge costs its weight
/// forward and nothing backward, with unbounded capacity; the result is a
/// minimum topological cut. With `unit_capacities == true` both directions
/// cost the weight and carry at most one unit; the support of `δp` is then a
/// minimum combinatorial cut.
pub fn min_cut_via_min_cost_flow(
    net: &FlowNetwork,
    voids: &VoidData,
    weights: &[Rational],
    unit_capacities: bool,
) -> Result<DualCut> {
    if let Some(index) = weights.iter().position(Rational::is_negative) {
        return Err(Error::NegativeCapacity { index });
    }
    let g = build_dual_weighted(net, voids, weights)?;
    let n = net.n_top();
    let mut mcf = MinCostFlow::new(g.vertices.len());
    for e in &g.edges[..n] {
        let j = e.simplex.unwrap();
        let w = weights[j].clone();
        if unit_capacities {
            mcf.add_arc(e.from, e.to, Some(Rational::ONE), w.clone(), (j, 1));
            mcf.add_arc(e.to, e.from, Some(Rational::ONE), w, (j, -1));
        } else {
            mcf.add_arc(e.from, e.to, None, w, (j, 1));
            mcf.add_arc(e.to, e.from, None, Rational::ZERO, (j, -1));
        }
    }
    let value = mcf.run(S_STAR, T_STAR, &Rational::ONE)?;
    let mut flow = vec![Rational::ZERO; n];
    for arcs in &mcf.graph {
        for a in arcs {
            if let Some((j, s)) = a.tag {
                if s > 0 {
                    flow[j] += &a.flow;
                } else {
                    flow[j] -= &a.flow;
                }
            }
        }
    }
    // Lift the dual flow g to p̄ with δp̄ = g, p̄(γ) = 1, then p = -p̄.
    let mut system = net.boundary().transpose();
    let m = net.n_faces();
    let mut rows = system.to_dense();
    rows.push(net.gamma().coeffs.clone());
    system = crate::SparseMatrix::from_dense(&rows);
    debug_assert_eq!(system.ncols(), m);
    let mut rhs = flow.clone();
    rhs.push(Rational::ONE);
    let pbar = solve_linear(&system, &rhs)?
        .ok_or(Error::Unreachable("dual flow does not lift to a cochain"))?;
    let cochain = Cochain::new(net.dim() - 1, pbar.iter().map(|v| -v).collect());
    let coboundary = apply_coboundary(net.complex(), &cochain)?;
    let directed_cut = (0..n)
        .filter(|&j| coboundary.coeffs[j].is_negative())
        .collect();
    let support = coboundary.support();
    Ok(DualCut {
        cochain,
        coboundary,
        directed_cut,
        support,
        value,
        dual_flow: flow,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::flow::{make_network, max_flow_lp, min_cut_lp, verify_flow, verify_gamma_cut};
    use crate::int;
    use alloc::string::ToString;

    fn square() -> (FlowNetwork, VoidData) {
        // s=0, a=1, t=2, b=3
        let labels = (0..4).map(|v| v.to_string()).collect();
        let tops = [vec![0, 1], vec![1, 2], vec![0, 3], vec![3, 2]];
        let cx = SimplicialComplex::from_top_simplices(labels, &tops)
            .unwrap()
            .chain_complex()
            .unwrap();
        let mut g = Chain::zero(0, 4);
        g.coeffs[0] = int(-1);
        g.coeffs[2] = int(1);
        let net = make_network(cx, vec![int(1); 4], g).unwrap();
        let voids = VoidData {
            n_voids: 2,
            unbounded: 1,
            sides: vec![(0, 1), (0, 1), (1, 0), (1, 0)],
            source: 0,
            gamma1: vec![2, 3],
            gamma2: vec![0, 1],
        };
        (net, voids)
    }

    #[test]
    fn planar_square_dual() {
        let (net, voids) = square();
        let g = build_dual(&net, &voids).unwrap();
        assert_eq!(
            g.vertices,
            vec![DualVertex::Source, DualVertex::Sink, DualVertex::Void(1)]
        );
        assert_eq!(g.edges.len(), 5);
        assert_eq!((g.edges[0].from, g.edges[0].to), (2, T_STAR));
        assert_eq!((g.edges[2].from, g.edges[2].to), (S_STAR, 2));
        let f = max_flow_shortest_path(&net, &voids).unwrap();
        assert_eq!(f.value, int(2));
        assert!(verify_flow(&net, &f.flow, &f.value));
        let cut = min_cut_via_min_cost_flow(&net, &voids, net.capacities(), true).unwrap();
        assert_eq!(cut.value, int(2));
        assert!(verify_gamma_cut(&net, &cut.cochain));
        let topo = min_cut_via_min_cost_flow(&net, &voids, net.capacities(), false).unwrap();
        assert_eq!(topo.value, min_cut_lp(&net).unwrap().value);
        assert_eq!(f.value, max_flow_lp(&net).unwrap().value);
    }

    #[test]
    fn overlapping_split_rejected() {
        let (net, mut voids) = square();
        voids.gamma1 = vec![1, 2, 3];
        assert_eq!(build_dual(&net, &voids), Err(Error::GammaSplitNotPartition));
    }

    #[test]
    fn swapped_split_rejected() {
        let (net, mut voids) = square();
        core::mem::swap(&mut voids.gamma1, &mut voids.gamma2);
        assert_eq!(build_dual(&net, &voids), Err(Error::Gamma1Boundary));
    }

    #[test]
    fn broken_void_rejected() {
        let (net, mut voids) = square();
        voids.sides[0] = (1, 1);
        assert_eq!(
            build_dual(&net, &voids),
            Err(Error::VoidBoundaryNotCycle { void: 0 })
        );
    }

    #[test]
    fn sign_conventions_differ_by_negation() {
        let (net, voids) = square();
        let a = net.augmented_top_boundary();
        let col: Vec<Rational> = (0..net.n_faces())
            .map(|i| a.get(i, net.sigma_index()))
            .collect();
        let emb = embedded_sigma_boundary(&net);
        assert_eq!(emb.scale(&-Rational::ONE).coeffs, col);
        // f closes up with +kΣ in the LP convention and -kΣ in the embedded one.
        let f = max_flow_shortest_path(&net, &voids).unwrap();
        let bf = crate::apply_boundary(net.complex(), &f.flow).unwrap();
        assert_eq!(bf.sub(&emb.scale(&f.value)), Chain::zero(0, 4));
    }

    #[test]
    fn dijkstra_agrees_with_bellman_ford() {
        let arcs = vec![
            (0, 1, int(4)),
            (0, 2, int(1)),
            (2, 1, int(2)),
            (1, 3, int(1)),
            (3, 0, int(0)),
        ];
        assert_eq!(dijkstra(5, &arcs, 0), bellman_ford(5, &arcs, 0));
    }
}
