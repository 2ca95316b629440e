//! Max γ-flows and min γ-cuts through linear programming, plus the
//! definitional checks for flows and cuts.

use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{
    apply_boundary, apply_coboundary, is_null_homologous, Chain, ChainComplexData, Cochain,
    Coefficients,
};
use crate::linalg::{kernel_basis, solve_linear, SparseMatrix};
use crate::lp::{feasible_point, solve, Bound, Constraint, LinearProgram, Relation, Sense, Status};
use crate::{Error, Rational, Result};

/// A simplicial flow network `(K, c, γ)`.
///
/// The pseudo-simplex Σ with `∂Σ = -γ` and unbounded capacity is appended
/// after the last d-simplex; `sigma_index` equals the number of d-simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowNetwork {
    complex: ChainComplexData,
    capacities: Vec<Rational>,
    gamma: Chain,
    sigma_index: usize,
}

/// Checks and assembles a network.
pub fn make_network(
    cx: ChainComplexData,
    capacities: Vec<Rational>,
    gamma: Chain,
) -> Result<FlowNetwork> {
    let d = cx.top_dim();
    if d == 0 {
        return Err(Error::DimensionOutOfRange { dim: 0, max: 0 });
    }
    let n = cx.size(d);
    if capacities.len() != n {
        return Err(Error::ShapeMismatch {
            what: "capacities",
            expected: n,
            found: capacities.len(),
        });
    }
    if let Some(index) = capacities.iter().position(Rational::is_negative) {
        return Err(Error::NegativeCapacity { index });
    }
    if gamma.dim != d - 1 {
        return Err(Error::DimensionOutOfRange {
            dim: gamma.dim,
            max: d - 1,
        });
    }
    if gamma.len() != cx.size(d - 1) {
        return Err(Error::ShapeMismatch {
            what: "gamma",
            expected: cx.size(d - 1),
            found: gamma.len(),
        });
    }
    if gamma.is_zero() {
        return Err(Error::ZeroGamma);
    }
    if !is_null_homologous(&cx, &gamma, None)? {
        return Err(Error::NotNullHomologous);
    }
    Ok(FlowNetwork {
        complex: cx,
        capacities,
        gamma,
        sigma_index: n,
    })
}

impl FlowNetwork {
    pub fn complex(&self) -> &ChainComplexData {
        &self.complex
    }

    pub fn capacities(&self) -> &[Rational] {
        &self.capacities
    }

    pub fn gamma(&self) -> &Chain {
        &self.gamma
    }

    pub fn sigma_index(&self) -> usize {
        self.sigma_index
    }

    /// Top dimension d.
    pub fn dim(&self) -> usize {
        self.complex.top_dim()
    }

    /// Number of d-simplices, Σ excluded.
    pub fn n_top(&self) -> usize {
        self.sigma_index
    }

    pub fn n_faces(&self) -> usize {
        self.complex.size(self.dim() - 1)
    }

    pub fn boundary(&self) -> &SparseMatrix {
        self.complex.top_boundary()
    }

    /// ∂_d with the Σ column `-γ` appended.
    pub fn augmented_top_boundary(&self) -> SparseMatrix {
        let mut b = self.boundary().clone();
        b.push_column(
            self.gamma
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, -v)),
        );
        b
    }

    /// Same network with different capacities.
    pub fn with_capacities(&self, capacities: Vec<Rational>) -> Result<FlowNetwork> {
        make_network(self.complex.clone(), capacities, self.gamma.clone())
    }

    /// Zero flow of dimension d.
    pub fn zero_flow(&self) -> FlowResult {
        FlowResult {
            flow: Chain::zero(self.dim(), self.n_top()),
            value: Rational::ZERO,
        }
    }
}

/// A γ-flow `f` with `∂f = kγ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowResult {
    pub flow: Chain,
    pub value: Rational,
}

/// A unit γ-cut from the second LP.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutResult {
    /// `p` with `p(γ) = -1`.
    pub cochain: Cochain,
    /// `δp` on the d-simplices (Σ excluded).
    pub coboundary: Cochain,
    /// `{σ : δp(σ) < 0}`.
    pub directed_cut: Vec<usize>,
    /// `Σ y_d(σ) c(σ)`.
    pub value: Rational,
    /// The `y_d` block of the solution.
    pub y_top: Vec<Rational>,
}

impl CutResult {
    /// `‖p‖ = Σ |δp(σ)| c(σ)`.
    pub fn size(&self, capacities: &[Rational]) -> Rational {
        self.coboundary
            .coeffs
            .iter()
            .zip(capacities)
            .map(|(a, c)| a.abs() * c)
            .sum()
    }

    /// Total capacity of the directed cut.
    pub fn support_weight(&self, weights: &[Rational]) -> Rational {
        self.directed_cut.iter().map(|&i| weights[i].clone()).sum()
    }
}

/// Maximizes `f(Σ)` subject to conservation and capacities.
pub fn max_flow_lp(net: &FlowNetwork) -> Result<FlowResult> {
    let a = net.augmented_top_boundary();
    let n = net.n_top();
    let mut objective = vec![Rational::ZERO; n + 1];
    objective[n] = Rational::ONE;
    let mut lp = LinearProgram::new(Sense::Max, objective);
    for (j, c) in net.capacities.iter().enumerate() {
        lp.bounds[j] = Bound::between(Rational::ZERO, c.clone());
    }
    let dense = a.to_dense();
    for row in dense {
        if row.iter().all(Rational::is_zero) {
            continue;
        }
        lp.add_constraint(row, Relation::Eq, Rational::ZERO);
    }
    let sol = solve(&lp)?;
    if sol.status != Status::Optimal {
        return Err(Error::Unreachable(
            "flow LP is feasible and bounded for a valid network",
        ));
    }
    let mut values = sol.values;
    let value = values.pop().unwrap();
    Ok(FlowResult {
        flow: Chain::new(net.dim(), values),
        value,
    })
}

/// Solves the dual LP: minimize `Σ y_d(σ) c(σ)` subject to
/// `δy(σ) + y_d(σ) ≥ 0`, `y(γ) = -1`, `y_d ≥ 0`, `y` free.
pub fn min_cut_lp(net: &FlowNetwork) -> Result<CutResult> {
    let b = net.boundary();
    let m = net.n_faces();
    let n = net.n_top();
    let mut objective = vec![Rational::ZERO; m + n];
    objective[m..].clone_from_slice(&net.capacities);
    let mut lp = LinearProgram::new(Sense::Min, objective);
    for j in 0..m {
        lp.bounds[j] = Bound::free();
    }
    for j in 0..n {
        let mut row = vec![Rational::ZERO; m + n];
        for (i, v) in b.col(j) {
            row[*i] = v.clone();
        }
        row[m + j] = Rational::ONE;
        lp.add_constraint(row, Relation::Ge, Rational::ZERO);
    }
    let mut sigma_row = vec![Rational::ZERO; m + n];
    sigma_row[..m].clone_from_slice(&net.gamma.coeffs);
    lp.add_constraint(sigma_row, Relation::Eq, -Rational::ONE);
    let sol = solve(&lp)?;
    if sol.status != Status::Optimal {
        return Err(Error::Unreachable(
            "cut LP is feasible and bounded for a valid network",
        ));
    }
    let cochain = Cochain::new(net.dim() - 1, sol.values[..m].to_vec());
    let y_top = sol.values[m..].to_vec();
    let coboundary = apply_coboundary(&net.complex, &cochain)?;
    let directed_cut = (0..n)
        .filter(|&i| coboundary.coeffs[i].is_negative())
        .collect();
    Ok(CutResult {
        cochain,
        coboundary,
        directed_cut,
        value: sol.objective,
        y_top,
    })
}

/// `∂f = kγ` and `0 ≤ f ≤ c`.
pub fn verify_flow(net: &FlowNetwork, f: &Chain, k: &Rational) -> bool {
    if f.dim != net.dim() || f.len() != net.n_top() {
        return false;
    }
    if f.coeffs
        .iter()
        .zip(&net.capacities)
        .any(|(x, c)| x.is_negative() || x > c)
    {
        return false;
    }
    match apply_boundary(&net.complex, f) {
        Ok(bf) => bf == net.gamma.scale(k),
        Err(_) => false,
    }
}

/// First violated flow condition, if any.
pub fn flow_violation(net: &FlowNetwork, f: &Chain, k: &Rational) -> Option<&'static str> {
    if f.dim != net.dim() || f.len() != net.n_top() {
        return Some("shape");
    }
    if f.coeffs.iter().any(Rational::is_negative) {
        return Some("non-negativity");
    }
    if f.coeffs.iter().zip(&net.capacities).any(|(x, c)| x > c) {
        return Some("capacity");
    }
    match apply_boundary(&net.complex, f) {
        Ok(bf) if bf == net.gamma.scale(k) => None,
        _ => Some("conservation"),
    }
}

/// `p(γ) = -1` and γ does not bound in `K ∖ supp(δp)`.
pub fn verify_gamma_cut(net: &FlowNetwork, p: &Cochain) -> bool {
    gamma_cut_violation(net, p).is_none()
}

pub fn gamma_cut_violation(net: &FlowNetwork, p: &Cochain) -> Option<&'static str> {
    if p.dim + 1 != net.dim() || p.len() != net.n_faces() {
        return Some("shape");
    }
    let pg: Rational = p
        .coeffs
        .iter()
        .zip(&net.gamma.coeffs)
        .map(|(a, b)| a * b)
        .sum();
    if pg != -Rational::ONE {
        return Some("normalization p(gamma) = -1");
    }
    let Ok(dp) = apply_coboundary(&net.complex, p) else {
        return Some("shape");
    };
    let rest: Vec<usize> = (0..net.n_top())
        .filter(|&i| dp.coeffs[i].is_zero())
        .collect();
    match is_null_homologous(&net.complex, &net.gamma, Some(&rest)) {
        Ok(false) => None,
        _ => Some("gamma still bounds off the coboundary support"),
    }
}

/// Whether `K ∖ C` is an undirected cut: γ does not bound there.
pub fn is_combinatorial_cut(net: &FlowNetwork, cut: &[usize]) -> bool {
    let rest = complement(net.n_top(), cut);
    !is_null_homologous(&net.complex, &net.gamma, Some(&rest)).unwrap_or(true)
}

/// No non-negative chain off `C` has boundary γ.
pub fn verify_directed_combinatorial_cut(net: &FlowNetwork, cut: &[usize]) -> bool {
    let rest = complement(net.n_top(), cut);
    non_negative_bounding_chain(net, &rest).is_none()
}

/// Some `Γ ≥ 0` supported on `support` with `∂Γ = γ`.
pub fn non_negative_bounding_chain(net: &FlowNetwork, support: &[usize]) -> Option<Vec<Rational>> {
    let b = net.boundary().select_columns(support);
    let constraints: Vec<Constraint> = b
        .to_dense()
        .into_iter()
        .zip(&net.gamma.coeffs)
        .filter(|(row, g)| !g.is_zero() || row.iter().any(|v| !v.is_zero()))
        .map(|(row, g)| Constraint::new(row, Relation::Eq, g.clone()))
        .collect();
    let bounds = vec![Bound::non_negative(); support.len()];
    feasible_point(&constraints, &bounds).ok().flatten()
}

fn complement(n: usize, set: &[usize]) -> Vec<usize> {
    let mut mark = vec![false; n];
    for &i in set {
        if i < n {
            mark[i] = true;
        }
    }
    (0..n).filter(|&i| !mark[i]).collect()
}

/// Largest number of candidate subsets the exhaustive searches will build.
pub const BRUTE_SUBSET_LIMIT: usize = 1 << 22;
/// Largest number of d-simplices the exhaustive searches accept.
pub const BRUTE_SIMPLEX_LIMIT: usize = 25;

fn candidate_subsets(weights: &[Rational], max_size: usize) -> Result<Vec<(Rational, Vec<usize>)>> {
    let n = weights.len();
    if n > BRUTE_SIMPLEX_LIMIT {
        return Err(Error::GuardExceeded {
            limit: BRUTE_SIMPLEX_LIMIT,
            found: n,
        });
    }
    let k = max_size.min(n);
    let mut count: usize = 0;
    let mut binom: usize = 1;
    for i in 0..=k {
        if let Some(b) = (binom * (n + 1 - i)).checked_div(i) {
            binom = b;
        }
        count = count.saturating_add(binom);
    }
    if count > BRUTE_SUBSET_LIMIT {
        return Err(Error::GuardExceeded {
            limit: BRUTE_SUBSET_LIMIT,
            found: count,
        });
    }
    let mut out = Vec::with_capacity(count);
    let mut cur = Vec::new();
    fn rec(
        start: usize,
        n: usize,
        k: usize,
        cur: &mut Vec<usize>,
        w: &[Rational],
        out: &mut Vec<(Rational, Vec<usize>)>,
    ) {
        out.push((cur.iter().map(|&i| w[i].clone()).sum(), cur.clone()));
        if cur.len() == k {
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, w, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, weights, &mut out);
    out.sort();
    Ok(out)
}

/// Minimum-weight set `C` of at most `max_subset_size` d-simplices such
/// that γ does not bound in `K ∖ C`. Ties go to the lexicographically
/// smallest index list. `None` if no such set is that small.
pub fn brute_min_combinatorial_cut(
    net: &FlowNetwork,
    weight: &[Rational],
    max_subset_size: usize,
) -> Result<Option<(Vec<usize>, Rational)>> {
    check_weights(net, weight)?;
    for (w, c) in candidate_subsets(weight, max_subset_size)? {
        if is_combinatorial_cut(net, &c) {
            return Ok(Some((c, w)));
        }
    }
    Ok(None)
}

/// Like [`brute_min_combinatorial_cut`] for directed combinatorial cuts.
pub fn brute_min_directed_combinatorial_cut(
    net: &FlowNetwork,
    weight: &[Rational],
    max_subset_size: usize,
) -> Result<Option<(Vec<usize>, Rational)>> {
    check_weights(net, weight)?;
    for (w, c) in candidate_subsets(weight, max_subset_size)? {
        if verify_directed_combinatorial_cut(net, &c) {
            return Ok(Some((c, w)));
        }
    }
    Ok(None)
}

/// Largest number of d-simplices [`brute_max_flow`] accepts.
pub const BRUTE_FLOW_SIMPLEX_LIMIT: usize = 10;

/// Maximum flow by enumerating the vertices of the flow polytope: every
/// simplex is pinned at `0`, pinned at `c(σ)`, or left free, and the free
/// columns together with γ must be independent.
pub fn brute_max_flow(net: &FlowNetwork) -> Result<FlowResult> {
    let n = net.n_top();
    if n > BRUTE_FLOW_SIMPLEX_LIMIT {
        return Err(Error::GuardExceeded {
            limit: BRUTE_FLOW_SIMPLEX_LIMIT,
            found: n,
        });
    }
    let mut best = net.zero_flow();
    let mut state = Vec::with_capacity(n);
    vertex_search(net, &mut state, &mut best)?;
    Ok(best)
}

/// `state[j]`: 0 pinned at zero, 1 pinned at capacity, 2 free.
fn vertex_search(net: &FlowNetwork, state: &mut Vec<u8>, best: &mut FlowResult) -> Result<()> {
    let n = net.n_top();
    let b = net.boundary();
    let free: Vec<usize> = (0..state.len()).filter(|&j| state[j] == 2).collect();
    let neg_gamma: Vec<Rational> = net.gamma.coeffs.iter().map(|g| -g).collect();
    let cols = b.select_columns(&free).with_column(&neg_gamma);
    if state.last() == Some(&2) && !kernel_basis(&cols).is_empty() {
        return Ok(());
    }
    if state.len() < n {
        for s in 0..3 {
            state.push(s);
            vertex_search(net, state, best)?;
            state.pop();
        }
        return Ok(());
    }
    let caps = &net.capacities;
    let mut rhs = vec![Rational::ZERO; net.n_faces()];
    for j in (0..n).filter(|&j| state[j] == 1) {
        for (i, v) in b.col(j) {
            rhs[*i] -= v * &caps[j];
        }
    }
    let Some(x) = solve_linear(&cols, &rhs)? else {
        return Ok(());
    };
    let k = &x[free.len()];
    let inside = free
        .iter()
        .zip(&x)
        .all(|(&j, v)| !v.is_negative() && *v <= caps[j]);
    if inside && *k > best.value {
        let mut f: Vec<Rational> = (0..n)
            .map(|j| {
                if state[j] == 1 {
                    caps[j].clone()
                } else {
                    Rational::ZERO
                }
            })
            .collect();
        for (&j, v) in free.iter().zip(&x) {
            f[j] = v.clone();
        }
        *best = FlowResult {
            flow: Chain::new(net.dim(), f),
            value: k.clone(),
        };
    }
    Ok(())
}

fn check_weights(net: &FlowNetwork, weight: &[Rational]) -> Result<()> {
    if weight.len() != net.n_top() {
        return Err(Error::ShapeMismatch {
            what: "weights",
            expected: net.n_top(),
            found: weight.len(),
        });
    }
    if let Some(index) = weight.iter().position(Rational::is_negative) {
        return Err(Error::NegativeCapacity { index });
    }
    Ok(())
}

/// A (d-1)-cochain whose coboundary is supported inside `cut` with the
/// largest possible support, or `None` if every such coboundary is zero.
pub fn find_supporting_cochain(cx: &ChainComplexData, cut: &[usize]) -> Result<Option<Cochain>> {
    let d = cx.top_dim();
    if d == 0 {
        return Err(Error::DimensionOutOfRange { dim: 0, max: 0 });
    }
    if cut.is_empty() {
        return Ok(None);
    }
    let delta = cx.top_boundary().transpose();
    let off = complement(cx.size(d), cut);
    let basis = kernel_basis(&delta.select_rows(&off));
    let images: Vec<Vec<Rational>> = basis
        .iter()
        .map(|p| delta.mul_vec(p))
        .collect::<Result<_>>()?;
    let mut union = vec![false; cx.size(d)];
    for img in &images {
        for (i, v) in img.iter().enumerate() {
            if !v.is_zero() {
                union[i] = true;
            }
        }
    }
    if !union.iter().any(|&u| u) {
        return Ok(None);
    }
    // A generic combination reaches the union of supports; retry on the
    // measure-zero event of a cancellation.
    for attempt in 1i64.. {
        let mut p = vec![Rational::ZERO; cx.size(d - 1)];
        let mut lambda = Rational::ONE;
        for v in &basis {
            for (pi, vi) in p.iter_mut().zip(v) {
                if !vi.is_zero() {
                    *pi += &lambda * vi;
                }
            }
            lambda *= &Rational::from_integer(attempt);
        }
        let dp = delta.mul_vec(&p)?;
        if dp.iter().zip(&union).all(|(v, &u)| v.is_zero() != u) {
            return Ok(Some(Cochain::new(d - 1, p)));
        }
    }
    unreachable!()
}

/// Whether the cut LP's vertex solution has all entries in `{-1, 0, 1}`.
pub fn tu_vertex_integrality_check(net: &FlowNetwork) -> Result<bool> {
    let cut = min_cut_lp(net)?;
    let unit = |v: &Rational| v.is_zero() || v.abs() == Rational::ONE;
    Ok(cut.cochain.coeffs.iter().all(unit) && cut.y_top.iter().all(unit))
}

/// Some `x` with `∂x = γ`, the witness used by network validation.
pub fn bounding_chain(net: &FlowNetwork) -> Option<Vec<Rational>> {
    solve_linear(net.boundary(), &net.gamma.coeffs)
        .ok()
        .flatten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::int;
    use alloc::string::ToString;

    fn path(caps: &[i64]) -> FlowNetwork {
        let n = caps.len() + 1;
        let labels = (0..n).map(|v| v.to_string()).collect();
        let tops: Vec<Vec<usize>> = (0..caps.len()).map(|i| vec![i, i + 1]).collect();
        let cx = SimplicialComplex::from_top_simplices(labels, &tops)
            .unwrap()
            .chain_complex()
            .unwrap();
        let mut g = Chain::zero(0, n);
        g.coeffs[0] = int(-1);
        g.coeffs[n - 1] = int(1);
        make_network(cx, caps.iter().map(|&c| int(c)).collect(), g).unwrap()
    }

    #[test]
    fn sigma_column_is_minus_gamma() {
        let net = path(&[1]);
        let a = net.augmented_top_boundary();
        assert_eq!(a.get(0, 1), int(1));
        assert_eq!(a.get(1, 1), int(-1));
        assert_eq!(net.sigma_index(), 1);
    }

    #[test]
    fn single_edge_cut() {
        let net = path(&[1]);
        let f = max_flow_lp(&net).unwrap();
        assert_eq!(f.value, int(1));
        let c = min_cut_lp(&net).unwrap();
        assert_eq!(c.value, int(1));
        assert_eq!(c.directed_cut, vec![0]);
        assert!(verify_gamma_cut(&net, &c.cochain));
        assert!(verify_directed_combinatorial_cut(&net, &c.directed_cut));
    }

    #[test]
    fn bottleneck_path() {
        let net = path(&[3, 1, 2]);
        assert_eq!(max_flow_lp(&net).unwrap().value, int(1));
        let c = min_cut_lp(&net).unwrap();
        assert_eq!(c.directed_cut, vec![1]);
        assert!(tu_vertex_integrality_check(&net).unwrap());
        let (set, w) = brute_min_combinatorial_cut(&net, &[int(3), int(1), int(2)], 3)
            .unwrap()
            .unwrap();
        assert_eq!((set, w), (vec![1], int(1)));
    }

    #[test]
    fn zero_capacity_gives_zero_flow() {
        let net = path(&[0, 0]);
        let f = max_flow_lp(&net).unwrap();
        assert_eq!(f.value, int(0));
        assert!(verify_flow(&net, &f.flow, &f.value));
    }

    #[test]
    fn network_validation_errors() {
        let net = path(&[1]);
        let cx = net.complex().clone();
        assert_eq!(
            make_network(cx.clone(), vec![int(-1)], net.gamma().clone()),
            Err(Error::NegativeCapacity { index: 0 })
        );
        assert_eq!(
            make_network(cx.clone(), vec![int(1)], Chain::zero(0, 2)),
            Err(Error::ZeroGamma)
        );
        let mut g = Chain::zero(0, 2);
        g.coeffs[0] = int(1);
        assert_eq!(
            make_network(cx, vec![int(1)], g),
            Err(Error::NotNullHomologous)
        );
    }

    #[test]
    fn zero_cochain_is_not_a_cut() {
        let net = path(&[1, 1]);
        assert!(!verify_gamma_cut(&net, &Cochain::zero(0, 3)));
        assert!(verify_directed_combinatorial_cut(&net, &[0, 1]));
        assert!(!verify_directed_combinatorial_cut(&net, &[]));
    }

    #[test]
    fn supporting_cochain_on_path() {
        let net = path(&[1, 1]);
        assert!(find_supporting_cochain(net.complex(), &[])
            .unwrap()
            .is_none());
        let p = find_supporting_cochain(net.complex(), &[1])
            .unwrap()
            .unwrap();
        let dp = apply_coboundary(net.complex(), &p).unwrap();
        assert_eq!(dp.support(), vec![1]);
    }
}
