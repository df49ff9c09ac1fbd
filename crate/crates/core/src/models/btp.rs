use crate::cost::Cost;
use crate::error::Result;
use crate::graph::SimpleGraph;
use crate::instance::VcspInstance;

/// Maximum independent set as a Boolean VCSP: `v_i = 1` puts vertex `i` in
/// the set, adjacent vertices may not both be 1, and `c_i(x) = 1 - x`.
///
/// The optimum is `n` minus the independence number, and the crisp part has
/// the broken-triangle property under every ordering.
pub fn gen_btp_independent_set(graph: &SimpleGraph) -> Result<VcspInstance> {
    let n = graph.num_vertices();
    let mut p = VcspInstance::uniform(n, 2)?;
    for i in 0..n {
        p.set_unary(i, 0, Cost::from_int(1))?;
    }
    for (u, v) in graph.edges() {
        p.set_binary(u, v, 1, 1, Cost::Infinite)?;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::microstructure::check_btp;
    use crate::oracle::{brute_force_solve, DEFAULT_BUDGET};

    #[test]
    fn edgeless_costs_nothing() {
        let p = gen_btp_independent_set(&SimpleGraph::new(3)).unwrap();
        assert!(brute_force_solve(&p, DEFAULT_BUDGET).unwrap().1.is_zero());
    }

    #[test]
    fn triangle_costs_two() {
        let p = gen_btp_independent_set(&SimpleGraph::complete(3)).unwrap();
        assert_eq!(brute_force_solve(&p, DEFAULT_BUDGET).unwrap().1, Cost::from_int(2));
        for order in [[0, 1, 2], [2, 0, 1], [1, 2, 0]] {
            assert_eq!(check_btp(&p, &order).unwrap(), None);
        }
    }
}
