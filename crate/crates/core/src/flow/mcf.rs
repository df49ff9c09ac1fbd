//! Successive shortest paths with node potentials.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::flow::network::FlowNetwork;

/// An integral flow, one value per arc of its network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralFlow {
    pub flow: Vec<u32>,
}

impl IntegralFlow {
    pub fn zero(net: &FlowNetwork) -> Self {
        IntegralFlow { flow: vec![0; net.arcs().len()] }
    }

    /// Net flow out of the source.
    pub fn value(&self, net: &FlowNetwork) -> u64 {
        let s = net.source();
        net.arcs()
            .iter()
            .zip(&self.flow)
            .map(|(a, &f)| if a.tail == s { f as i64 } else if a.head == s { -(f as i64) } else { 0 })
            .sum::<i64>()
            .max(0) as u64
    }

    pub fn cost(&self, net: &FlowNetwork) -> BigRational {
        let mut total = BigRational::zero();
        for (a, &f) in net.arcs().iter().zip(&self.flow) {
            if f > 0 {
                total += &a.weight * BigRational::from_integer(f.into());
            }
        }
        total
    }
}

fn validate(net: &FlowNetwork) -> Result<u64> {
    let mut required = 0u64;
    for (id, arc) in net.arcs().iter().enumerate() {
        let bad = |why: &str| Err(Error::InvalidNetwork(format!("arc {id} ({} -> {}): {why}", arc.tail, arc.head)));
        if arc.tail >= net.num_nodes() || arc.head >= net.num_nodes() {
            return bad("endpoint out of range");
        }
        if arc.demand > arc.capacity {
            return bad("demand exceeds capacity");
        }
        if arc.weight.is_negative() {
            return bad("negative weight");
        }
        if arc.tail == net.source() {
            if arc.demand != arc.capacity {
                return bad("source arcs must have demand equal to capacity");
            }
            required += arc.demand as u64;
        } else if arc.demand > 0 {
            return bad("demands are only supported on source arcs");
        }
    }
    Ok(required)
}

/// Checks conservation, bounds and value of a flow; the value must equal the
/// total demand on source arcs.
pub fn check_flow(net: &FlowNetwork, f: &IntegralFlow) -> Result<()> {
    let required = validate(net)?;
    if f.flow.len() != net.arcs().len() {
        return Err(Error::InternalConsistency("flow length differs from arc count".into()));
    }
    let mut balance = vec![0i64; net.num_nodes()];
    for (id, (arc, &x)) in net.arcs().iter().zip(&f.flow).enumerate() {
        if x < arc.demand || x > arc.capacity {
            return Err(Error::InternalConsistency(format!("arc {id} carries {x} outside [{}, {}]", arc.demand, arc.capacity)));
        }
        balance[arc.tail] -= x as i64;
        balance[arc.head] += x as i64;
    }
    for (v, &b) in balance.iter().enumerate() {
        if v != net.source() && v != net.sink() && b != 0 {
            return Err(Error::InternalConsistency(format!("node {v} violates conservation by {b}")));
        }
    }
    if f.value(net) != required {
        return Err(Error::InternalConsistency(format!("flow value {} differs from {required}", f.value(net))));
    }
    Ok(())
}

struct Residual {
    // Edge 2e is arc e forward, 2e + 1 its reverse.
    to: Vec<usize>,
    cap: Vec<u32>,
    cost: Vec<BigRational>,
    out: Vec<Vec<usize>>,
}

impl Residual {
    fn new(net: &FlowNetwork) -> Self {
        let m = net.arcs().len();
        let mut r = Residual {
            to: Vec::with_capacity(2 * m),
            cap: Vec::with_capacity(2 * m),
            cost: Vec::with_capacity(2 * m),
            out: vec![Vec::new(); net.num_nodes()],
        };
        for arc in net.arcs() {
            r.out[arc.tail].push(r.to.len());
            r.to.push(arc.head);
            r.cap.push(arc.capacity);
            r.cost.push(arc.weight.clone());
            r.out[arc.head].push(r.to.len());
            r.to.push(arc.tail);
            r.cap.push(0);
            r.cost.push(-arc.weight.clone());
        }
        r
    }
}

/// Label-correcting shortest distances from `s` over edges with residual capacity.
fn bellman_ford(r: &Residual, s: usize) -> Vec<Option<BigRational>> {
    let n = r.out.len();
    let mut dist: Vec<Option<BigRational>> = vec![None; n];
    dist[s] = Some(BigRational::zero());
    for _ in 0..n {
        let mut changed = false;
        for u in 0..n {
            let Some(du) = dist[u].clone() else { continue };
            for &e in &r.out[u] {
                if r.cap[e] == 0 {
                    continue;
                }
                let cand = &du + &r.cost[e];
                let v = r.to[e];
                if dist[v].as_ref().is_none_or(|dv| cand < *dv) {
                    dist[v] = Some(cand);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

/// Minimum-cost integral flow saturating every source arc, or `None` if no
/// such flow exists.
///
/// Demands are supported on source arcs only, where they must equal the
/// capacity; other arcs need demand 0.
pub fn min_cost_flow(net: &FlowNetwork) -> Result<Option<IntegralFlow>> {
    let required = validate(net)?;
    let (s, t) = (net.source(), net.sink());
    let mut r = Residual::new(net);
    let n = net.num_nodes();
    let mut potential: Vec<BigRational> =
        bellman_ford(&r, s).into_iter().map(|d| d.unwrap_or_else(BigRational::zero)).collect();
    let mut sent = 0u64;
    while sent < required {
        let mut dist: Vec<Option<BigRational>> = vec![None; n];
        let mut via: Vec<Option<usize>> = vec![None; n];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        dist[s] = Some(BigRational::zero());
        heap.push(Reverse((BigRational::zero(), s)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if done[u] {
                continue;
            }
            done[u] = true;
            for &e in &r.out[u] {
                if r.cap[e] == 0 {
                    continue;
                }
                let v = r.to[e];
                if done[v] {
                    continue;
                }
                let reduced = &r.cost[e] + &potential[u] - &potential[v];
                debug_assert!(!reduced.is_negative(), "negative reduced cost");
                let cand = &d + reduced;
                if dist[v].as_ref().is_none_or(|dv| cand < *dv) {
                    dist[v] = Some(cand.clone());
                    via[v] = Some(e);
                    heap.push(Reverse((cand, v)));
                }
            }
        }
        let Some(dt) = dist[t].clone() else {
            return Ok(None);
        };
        for v in 0..n {
            let shift = match &dist[v] {
                Some(dv) if *dv < dt => dv.clone(),
                _ => dt.clone(),
            };
            potential[v] += shift;
        }
        let mut push = u32::MAX;
        let mut v = t;
        while v != s {
            let e = via[v].expect("path edge");
            push = push.min(r.cap[e]);
            v = r.to[e ^ 1];
        }
        let push = push.min((required - sent).min(u32::MAX as u64) as u32);
        let mut v = t;
        while v != s {
            let e = via[v].expect("path edge");
            r.cap[e] -= push;
            r.cap[e ^ 1] += push;
            v = r.to[e ^ 1];
        }
        sent += push as u64;
    }
    let flow = IntegralFlow { flow: (0..net.arcs().len()).map(|e| r.cap[2 * e + 1]).collect() };
    check_flow(net, &flow)?;
    Ok(Some(flow))
}
