//! Min-cost flow formulation of Z-free joint-winner instances.

mod mcf;
mod network;
mod solution;

pub use mcf::{check_flow, min_cost_flow, IntegralFlow};
pub use network::{build_network, Arc, ArcKind, FlowNetwork, NodeKind};
pub use solution::{bundles_fill_in_order, canonical_flow, extract_solution, read_assignment};

pub(crate) use network::{assemble, BundleTree};

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::instance::{Assignment, VcspInstance};
use crate::jwp::{check_jwp, eliminate_z, extract_clique_hierarchy, CliqueHierarchy, MergeLog};

/// Everything produced along the flow route.
#[derive(Clone, Debug)]
pub struct FlowSolve {
    pub assignment: Assignment,
    pub cost: Cost,
    pub reduced: VcspInstance,
    pub log: MergeLog,
    pub hierarchy: CliqueHierarchy,
    /// `None` when pruning infinite unary costs emptied a domain.
    pub network: Option<FlowNetwork>,
    pub flow: Option<IntegralFlow>,
}

/// Solves a joint-winner instance exactly: Z-elimination, clique hierarchy,
/// network construction and min-cost flow.
///
/// An infeasible instance reports cost `inf` with the all-zero assignment.
pub fn solve_jwp(instance: &VcspInstance) -> Result<FlowSolve> {
    if let Some(w) = check_jwp(instance) {
        return Err(Error::JwpPreconditionViolated(format!(
            "triangle ({}={}, {}={}, {}={}) has costs {}, {}, {}",
            w.i + 1,
            w.a,
            w.j + 1,
            w.b,
            w.k + 1,
            w.c,
            w.cost_ij,
            w.cost_ik,
            w.cost_jk
        )));
    }
    let (reduced, log) = eliminate_z(instance)?;
    let hierarchy = extract_clique_hierarchy(&reduced)?;
    let infeasible = |reduced, log, hierarchy, network| FlowSolve {
        assignment: Assignment(vec![0; instance.num_vars()]),
        cost: Cost::Infinite,
        reduced,
        log,
        hierarchy,
        network,
        flow: None,
    };
    let network = match build_network(&reduced, &hierarchy) {
        Ok(net) => net,
        Err(Error::Infeasible) => return Ok(infeasible(reduced, log, hierarchy, None)),
        Err(e) => return Err(e),
    };
    let Some(flow) = min_cost_flow(&network)? else {
        return Ok(infeasible(reduced, log, hierarchy, Some(network)));
    };
    if !bundles_fill_in_order(&network, &flow) {
        return Err(Error::InternalConsistency("a bundle is not filled cheapest-first".into()));
    }
    let (assignment, cost) = extract_solution(instance, &network, &flow, &log)?;
    Ok(FlowSolve { assignment, cost, reduced, log, hierarchy, network: Some(network), flow: Some(flow) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn three_var_example() -> VcspInstance {
        let mut p = VcspInstance::new(vec![2, 2, 1]).unwrap();
        p.set_binary(0, 1, 0, 0, Cost::from_int(2)).unwrap();
        p.set_binary(0, 2, 0, 0, Cost::from_int(1)).unwrap();
        p.set_binary(1, 2, 0, 0, Cost::from_int(1)).unwrap();
        p.set_binary(0, 1, 1, 1, Cost::from_int(1)).unwrap();
        p
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn three_var_network_shape() {
        let p = three_var_example();
        let h = extract_clique_hierarchy(&p).unwrap();
        let net = build_network(&p, &h).unwrap();
        assert_eq!(net.num_nodes(), 13);
        // Hierarchy ids: 1 = {1a,2a,3a} at 1, 2 = {1b,2b} at 1, 3 = {1a,2a} at 2.
        assert_eq!(net.bundle_weights(3), ints(&[0, 1]));
        assert_eq!(net.bundle_weights(1), ints(&[0, 1, 2]));
        assert_eq!(net.bundle_weights(2), ints(&[0, 1]));
    }

    #[test]
    fn canonical_flow_of_all_a_costs_four() {
        let p = three_var_example();
        let h = extract_clique_hierarchy(&p).unwrap();
        let net = build_network(&p, &h).unwrap();
        let x = Assignment(vec![0, 0, 0]);
        let f = canonical_flow(&net, &x).unwrap();
        check_flow(&net, &f).unwrap();
        assert_eq!(Cost::Finite(f.cost(&net)), p.evaluate(&x).unwrap());
        assert_eq!(f.cost(&net), BigRational::from_integer(4.into()));
    }

    #[test]
    fn three_var_optimum() {
        let s = solve_jwp(&three_var_example()).unwrap();
        assert_eq!(s.cost, Cost::from_int(1));
        assert_eq!(three_var_example().evaluate(&s.assignment).unwrap(), Cost::from_int(1));
    }

    #[test]
    fn zero_binary_costs_feed_sink_directly() {
        let mut p = VcspInstance::uniform(2, 2).unwrap();
        p.set_unary(0, 0, Cost::from_int(3)).unwrap();
        let h = extract_clique_hierarchy(&p).unwrap();
        let net = build_network(&p, &h).unwrap();
        assert!(net
            .arcs()
            .iter()
            .filter(|a| matches!(a.kind, ArcKind::Feed { .. }))
            .all(|a| a.head == net.sink()));
        let s = solve_jwp(&p).unwrap();
        assert_eq!(s.cost, Cost::zero());
        assert_eq!(s.assignment.0, vec![1, 0]);
    }

    #[test]
    fn single_variable_picks_cheaper_value() {
        let mut p = VcspInstance::uniform(1, 2).unwrap();
        p.set_unary(0, 1, Cost::from_int(5)).unwrap();
        let s = solve_jwp(&p).unwrap();
        assert_eq!(s.assignment.0, vec![0]);
        assert!(s.cost.is_zero());
    }

    #[test]
    fn infinite_unary_everywhere_is_infeasible() {
        let mut p = VcspInstance::uniform(2, 1).unwrap();
        p.set_unary(1, 0, Cost::Infinite).unwrap();
        let s = solve_jwp(&p).unwrap();
        assert!(s.cost.is_infinite());
        assert!(s.network.is_none());
    }

    #[test]
    fn infinite_binary_blocks_flow() {
        let mut p = VcspInstance::uniform(2, 1).unwrap();
        p.set_binary(0, 1, 0, 0, Cost::Infinite).unwrap();
        let s = solve_jwp(&p).unwrap();
        assert!(s.cost.is_infinite());
    }

    #[test]
    fn rejects_non_jwp() {
        let mut p = VcspInstance::uniform(3, 1).unwrap();
        p.set_binary(0, 2, 0, 0, Cost::Infinite).unwrap();
        p.set_binary(1, 2, 0, 0, Cost::Infinite).unwrap();
        assert!(matches!(solve_jwp(&p), Err(Error::JwpPreconditionViolated(_))));
    }

    #[test]
    fn validation_rejects_bad_arcs() {
        let mut net = FlowNetwork::new();
        net.add_arc(Arc { tail: 0, head: 1, demand: 2, capacity: 1, weight: BigRational::zero(), kind: ArcKind::Source { var: 0 } });
        assert!(matches!(min_cost_flow(&net), Err(Error::InvalidNetwork(_))));
    }

    #[test]
    fn unique_paths_give_their_sum() {
        let mut net = FlowNetwork::new();
        let v = net.add_node(NodeKind::Variable(0));
        let w = BigRational::from_integer(7.into());
        net.add_arc(Arc { tail: 0, head: v, demand: 1, capacity: 1, weight: BigRational::zero(), kind: ArcKind::Source { var: 0 } });
        net.add_arc(Arc { tail: v, head: 1, demand: 0, capacity: 1, weight: w.clone(), kind: ArcKind::Bundle { node: 0, rank: 0 } });
        let f = min_cost_flow(&net).unwrap().unwrap();
        assert_eq!(f.cost(&net), w);
        assert_eq!(f.value(&net), 1);
    }
}
