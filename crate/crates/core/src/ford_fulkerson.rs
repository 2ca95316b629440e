//! Generalized Ford-Fulkerson on simplicial flow networks.
//!
//! Each round finds a non-negative residual chain with boundary γ, pushes
//! as much as it allows, then repairs the flow so that the half-saturated
//! simplices carry no top-dimensional cycle. Every iterate is then a vertex
//! of the flow polytope and the value strictly increases, so the loop halts.

use alloc::vec;
use alloc::vec::Vec;

use crate::complex::Chain;
use crate::flow::{flow_violation, FlowNetwork, FlowResult};
use crate::linalg::kernel_basis;
use crate::lp::{feasible_point, Bound, Constraint, Relation};
use crate::{Error, Rational, Result};

/// Residual capacities of a flow: forward `c - f`, backward `f`.
#[derive(Clone, Debug)]
pub struct ResidualComplex<'a> {
    pub net: &'a FlowNetwork,
    pub forward: Vec<Rational>,
    pub backward: Vec<Rational>,
    /// Backward capacity of Σ, the current value. Its forward capacity is
    /// unbounded.
    pub sigma_backward: Rational,
}

/// A non-negative residual chain `Σ α_i σ_i` with boundary γ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentingChain {
    /// Coefficient on `+σ` for each d-simplex.
    pub forward: Vec<Rational>,
    /// Coefficient on `-σ` for each d-simplex.
    pub backward: Vec<Rational>,
    /// `min c_f(σ_i) / α_i` over the support.
    pub step: Rational,
}

impl AugmentingChain {
    /// The chain as a signed d-chain of the base complex.
    pub fn signed(&self) -> Vec<Rational> {
        self.forward
            .iter()
            .zip(&self.backward)
            .map(|(a, b)| a - b)
            .collect()
    }
}

pub fn residual<'a>(net: &'a FlowNetwork, f: &FlowResult) -> Result<ResidualComplex<'a>> {
    if let Some(why) = flow_violation(net, &f.flow, &f.value) {
        return Err(Error::InfeasibleFlow(why.into()));
    }
    let forward = f
        .flow
        .coeffs
        .iter()
        .zip(net.capacities())
        .map(|(x, c)| c - x)
        .collect();
    Ok(ResidualComplex {
        net,
        forward,
        backward: f.flow.coeffs.clone(),
        sigma_backward: f.value.clone(),
    })
}

/// Searches for an augmenting chain supported on strictly positive residual
/// directions. `None` certifies that the flow is maximum.
pub fn find_augmenting_chain(rc: &ResidualComplex<'_>) -> Result<Option<AugmentingChain>> {
    let net = rc.net;
    let b = net.boundary();
    let n = net.n_top();
    // (simplex, +1 forward / -1 backward) for each variable.
    let mut vars: Vec<(usize, bool)> = Vec::new();
    for j in 0..n {
        if rc.forward[j].is_positive() {
            vars.push((j, true));
        }
        if rc.backward[j].is_positive() {
            vars.push((j, false));
        }
    }
    let mut rows = vec![vec![Rational::ZERO; vars.len()]; net.n_faces()];
    for (k, &(j, fwd)) in vars.iter().enumerate() {
        for (i, v) in b.col(j) {
            rows[*i][k] = if fwd { v.clone() } else { -v };
        }
    }
    let constraints: Vec<Constraint> = rows
        .into_iter()
        .zip(&net.gamma().coeffs)
        .filter(|(row, g)| !g.is_zero() || row.iter().any(|v| !v.is_zero()))
        .map(|(row, g)| Constraint::new(row, Relation::Eq, g.clone()))
        .collect();
    let Some(x) = feasible_point(&constraints, &vec![Bound::non_negative(); vars.len()])? else {
        return Ok(None);
    };
    let mut signed = vec![Rational::ZERO; n];
    for (&(j, fwd), v) in vars.iter().zip(&x) {
        if fwd {
            signed[j] += v;
        } else {
            signed[j] -= v;
        }
    }
    let mut forward = vec![Rational::ZERO; n];
    let mut backward = vec![Rational::ZERO; n];
    let mut step: Option<Rational> = None;
    for j in 0..n {
        let (cap, coef) = if signed[j].is_positive() {
            forward[j] = signed[j].clone();
            (&rc.forward[j], &forward[j])
        } else if signed[j].is_negative() {
            backward[j] = -&signed[j];
            (&rc.backward[j], &backward[j])
        } else {
            continue;
        };
        let s = cap / coef;
        if step.as_ref().map_or(true, |m| s < *m) {
            step = Some(s);
        }
    }
    // A chain with boundary γ ≠ 0 is never empty.
    let step = step.ok_or(Error::Unreachable("augmenting chain with empty support"))?;
    Ok(Some(AugmentingChain {
        forward,
        backward,
        step,
    }))
}

/// `f' = f + α(Γ⁺ - Γ⁻)` with value `k + α`.
pub fn augment(f: &FlowResult, chain: &AugmentingChain) -> Result<FlowResult> {
    if !chain.step.is_positive() {
        return Err(Error::ZeroStep);
    }
    let a = &chain.step;
    let coeffs = f
        .flow
        .coeffs
        .iter()
        .zip(chain.forward.iter().zip(&chain.backward))
        .map(|(x, (p, m))| x + &(a * &(p - m)))
        .collect();
    Ok(FlowResult {
        flow: Chain::new(f.flow.dim, coeffs),
        value: &f.value + a,
    })
}

/// Simplices with `0 < f(σ) < c(σ)`. Σ is never included.
pub fn half_saturated(net: &FlowNetwork, f: &FlowResult) -> Vec<usize> {
    f.flow
        .coeffs
        .iter()
        .zip(net.capacities())
        .enumerate()
        .filter(|(_, (x, c))| x.is_positive() && x < c)
        .map(|(i, _)| i)
        .collect()
}

/// No nonzero d-cycle is supported on `h`.
pub fn is_acyclic(net: &FlowNetwork, h: &[usize]) -> bool {
    kernel_basis(&net.boundary().select_columns(h)).is_empty()
}

/// Pushes flow around cycles of the half-saturated subcomplex until it is
/// acyclic. Value and boundary are unchanged.
pub fn repair(net: &FlowNetwork, f: &FlowResult) -> Result<FlowResult> {
    let mut flow = f.flow.coeffs.clone();
    let caps = net.capacities();
    loop {
        let h: Vec<usize> = (0..flow.len())
            .filter(|&i| flow[i].is_positive() && flow[i] < caps[i])
            .collect();
        let kernel = kernel_basis(&net.boundary().select_columns(&h));
        let Some(z) = kernel.into_iter().next() else {
            break;
        };
        let mut step: Option<Rational> = None;
        for (k, &i) in h.iter().enumerate() {
            let room = if z[k].is_positive() {
                (&caps[i] - &flow[i]) / &z[k]
            } else if z[k].is_negative() {
                &flow[i] / &(-&z[k])
            } else {
                continue;
            };
            if step.as_ref().map_or(true, |s| room < *s) {
                step = Some(room);
            }
        }
        let step = step.ok_or(Error::Unreachable("kernel vector with empty support"))?;
        for (k, &i) in h.iter().enumerate() {
            if !z[k].is_zero() {
                flow[i] += &step * &z[k];
            }
        }
    }
    Ok(FlowResult {
        flow: Chain::new(f.flow.dim, flow),
        value: f.value.clone(),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FfOptions {
    /// Defaults to `10 n_d² + 10`.
    pub max_iterations: Option<usize>,
    /// Keep every iterate's flow in the trace.
    pub keep_flows: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationRecord {
    pub iter: usize,
    pub value: Rational,
    /// Size of the half-saturated set after repair.
    pub half_saturated: usize,
    /// Simplices with `f(σ) = c(σ) > 0` after repair.
    pub saturated: Vec<usize>,
    /// The iterate, when requested.
    pub flow: Option<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FfOutcome {
    pub flow: FlowResult,
    pub iterations: usize,
    pub trace: Vec<IterationRecord>,
}

pub fn default_iteration_cap(net: &FlowNetwork) -> usize {
    10 * net.n_top() * net.n_top() + 10
}

/// Runs augment-and-repair from the zero flow until no augmenting chain
/// remains.
pub fn max_flow_ff(net: &FlowNetwork, options: &FfOptions) -> Result<FfOutcome> {
    let cap = options
        .max_iterations
        .unwrap_or_else(|| default_iteration_cap(net));
    let mut f = net.zero_flow();
    let mut trace = Vec::new();
    let mut iterations = 0;
    loop {
        let rc = residual(net, &f)?;
        let Some(chain) = find_augmenting_chain(&rc)? else {
            break;
        };
        if iterations == cap {
            return Err(Error::IterationCap {
                cap,
                value: alloc::format!("{}", f.value),
            });
        }
        f = repair(net, &augment(&f, &chain)?)?;
        iterations += 1;
        let saturated = f
            .flow
            .coeffs
            .iter()
            .zip(net.capacities())
            .enumerate()
            .filter(|(_, (x, c))| c.is_positive() && x == c)
            .map(|(i, _)| i)
            .collect();
        trace.push(IterationRecord {
            iter: iterations,
            value: f.value.clone(),
            half_saturated: half_saturated(net, &f).len(),
            saturated,
            flow: options.keep_flows.then(|| f.flow.coeffs.clone()),
        });
    }
    Ok(FfOutcome {
        flow: f,
        iterations,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::flow::{make_network, max_flow_lp, verify_flow};
    use crate::int;
    use alloc::string::ToString;

    fn diamond() -> FlowNetwork {
        // s=0, a=1, b=2, t=3; s→a, a→t, s→b, b→t, a→b
        let labels = (0..4).map(|v| v.to_string()).collect();
        let tops = [vec![0, 1], vec![1, 3], vec![0, 2], vec![2, 3], vec![1, 2]];
        let cx = SimplicialComplex::from_top_simplices(labels, &tops)
            .unwrap()
            .chain_complex()
            .unwrap();
        let mut g = Chain::zero(0, 4);
        g.coeffs[0] = int(-1);
        g.coeffs[3] = int(1);
        make_network(cx, [2, 1, 1, 2, 1].iter().map(|&c| int(c)).collect(), g).unwrap()
    }

    #[test]
    fn ff_matches_lp_on_diamond() {
        let net = diamond();
        let out = max_flow_ff(&net, &FfOptions::default()).unwrap();
        assert_eq!(out.flow.value, max_flow_lp(&net).unwrap().value);
        assert!(verify_flow(&net, &out.flow.flow, &out.flow.value));
        let rc = residual(&net, &out.flow).unwrap();
        assert!(find_augmenting_chain(&rc).unwrap().is_none());
    }

    #[test]
    fn zero_flow_residual_and_repair() {
        let net = diamond();
        let z = net.zero_flow();
        let rc = residual(&net, &z).unwrap();
        assert_eq!(rc.forward, net.capacities().to_vec());
        assert!(rc.backward.iter().all(Rational::is_zero));
        assert!(half_saturated(&net, &z).is_empty());
        assert_eq!(repair(&net, &z).unwrap(), z);
        assert!(is_acyclic(&net, &[]));
    }

    #[test]
    fn repair_breaks_a_cycle() {
        let net = diamond();
        // Half a unit around s→a→b and s→b in opposite directions: the
        // half-saturated set {s→a, a→b, s→b, b→t} contains a cycle.
        let flow = Chain::new(
            1,
            [ratio_(1), int(0), ratio_(1), int(1), ratio_(1)].to_vec(),
        );
        let f = FlowResult {
            flow,
            value: int(1),
        };
        assert!(verify_flow(&net, &f.flow, &f.value));
        assert!(!is_acyclic(&net, &half_saturated(&net, &f)));
        let g = repair(&net, &f).unwrap();
        assert_eq!(g.value, f.value);
        assert!(verify_flow(&net, &g.flow, &g.value));
        assert!(is_acyclic(&net, &half_saturated(&net, &g)));
    }

    fn ratio_(n: i64) -> Rational {
        crate::ratio(n, 2)
    }

    #[test]
    fn zero_step_rejected() {
        let net = diamond();
        let c = AugmentingChain {
            forward: vec![int(0); 5],
            backward: vec![int(0); 5],
            step: int(0),
        };
        assert_eq!(augment(&net.zero_flow(), &c), Err(Error::ZeroStep));
    }

    #[test]
    fn infeasible_flow_rejected_by_residual() {
        let net = diamond();
        let f = FlowResult {
            flow: Chain::new(1, vec![int(5); 5]),
            value: int(0),
        };
        assert!(matches!(residual(&net, &f), Err(Error::InfeasibleFlow(_))));
    }
}
