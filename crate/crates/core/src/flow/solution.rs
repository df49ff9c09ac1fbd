use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::flow::mcf::IntegralFlow;
use crate::flow::network::{ArcKind, FlowNetwork, NodeKind};
use crate::instance::{Assignment, VcspInstance};
use crate::jwp::MergeLog;

/// Value chosen for each variable by a flow (the `v_i -> (i, a)` arc carrying it).
pub fn read_assignment(net: &FlowNetwork, f: &IntegralFlow) -> Result<Assignment> {
    let n = net.nodes().iter().filter(|k| matches!(k, NodeKind::Variable(_))).count();
    let mut x: Vec<Option<usize>> = vec![None; n];
    for (arc, &units) in net.arcs().iter().zip(&f.flow) {
        if let ArcKind::Value { var, value } = arc.kind {
            if units > 0 && x[var].replace(value).is_some() {
                return Err(Error::InternalConsistency(format!("variable {var} takes two values")));
            }
        }
    }
    x.into_iter()
        .enumerate()
        .map(|(var, v)| v.ok_or_else(|| Error::InternalConsistency(format!("variable {var} carries no flow"))))
        .collect::<Result<Vec<_>>>()
        .map(Assignment)
}

/// Reads the assignment from `f`, lifts it through `log` and checks that its
/// cost in `original` equals the flow cost.
pub fn extract_solution(
    original: &VcspInstance,
    net: &FlowNetwork,
    f: &IntegralFlow,
    log: &MergeLog,
) -> Result<(Assignment, Cost)> {
    let reduced = read_assignment(net, f)?;
    let x = log.lift(&reduced);
    let cost = original.evaluate(&x)?;
    let flow_cost = Cost::Finite(f.cost(net));
    if cost != flow_cost {
        return Err(Error::InternalConsistency(format!("assignment costs {cost} but the flow costs {flow_cost}")));
    }
    Ok((x, cost))
}

/// The flow that routes each variable through its value in `x` and, at every
/// tree node, sends the incoming units along the cheapest bundle arcs.
///
/// `None` if `x` uses a pruned value or overloads a bundle.
pub fn canonical_flow(net: &FlowNetwork, x: &Assignment) -> Option<IntegralFlow> {
    let mut f = IntegralFlow::zero(net);
    let mut inflow = vec![0u32; net.num_nodes()];
    let mut feeds_found = 0;
    for (id, arc) in net.arcs().iter().enumerate() {
        match arc.kind {
            ArcKind::Source { .. } => f.flow[id] = 1,
            ArcKind::Value { var, value } | ArcKind::Feed { var, value } if x.get(var) == Some(&value) => {
                f.flow[id] = 1;
                if matches!(arc.kind, ArcKind::Feed { .. }) {
                    inflow[arc.head] += 1;
                    feeds_found += 1;
                }
            }
            _ => {}
        }
    }
    if feeds_found != x.len() {
        return None;
    }
    // Tree nodes are pushed in parent-before-child order, so sweeping them in
    // reverse handles children first.
    let mut bundles: Vec<Vec<usize>> = vec![Vec::new(); net.num_nodes()];
    for (id, arc) in net.arcs().iter().enumerate() {
        if let ArcKind::Bundle { .. } = arc.kind {
            bundles[arc.tail].push(id);
        }
    }
    for node in (0..net.num_nodes()).rev() {
        if !matches!(net.nodes()[node], NodeKind::Clique(_)) || node == net.sink() {
            continue;
        }
        let arcs = &mut bundles[node];
        arcs.sort_by(|&a, &b| net.arcs()[a].weight.cmp(&net.arcs()[b].weight).then(a.cmp(&b)));
        let units = inflow[node] as usize;
        if units > arcs.len() {
            return None;
        }
        for &a in &arcs[..units] {
            f.flow[a] = 1;
            inflow[net.arcs()[a].head] += 1;
        }
    }
    Some(f)
}

/// Whether, in every bundle, no unused arc is strictly cheaper than a used one.
pub fn bundles_fill_in_order(net: &FlowNetwork, f: &IntegralFlow) -> bool {
    let mut used_max: Vec<Option<&num_rational::BigRational>> = vec![None; net.num_nodes()];
    let mut unused_min: Vec<Option<&num_rational::BigRational>> = vec![None; net.num_nodes()];
    for (arc, &units) in net.arcs().iter().zip(&f.flow) {
        if let ArcKind::Bundle { .. } = arc.kind {
            let slot = if units > 0 { &mut used_max[arc.tail] } else { &mut unused_min[arc.tail] };
            let keep_new = match *slot {
                None => true,
                Some(w) => (units > 0 && arc.weight > *w) || (units == 0 && arc.weight < *w),
            };
            if keep_new {
                *slot = Some(&arc.weight);
            }
        }
    }
    used_max.iter().zip(&unused_min).all(|(u, m)| match (u, m) {
        (Some(u), Some(m)) => u <= m,
        _ => true,
    })
}
