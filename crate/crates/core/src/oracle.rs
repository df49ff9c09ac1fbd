//! Exhaustive reference solvers.
//!
//! Nothing here calls into the structured solvers; every routine enumerates
//! assignments and scores them with [`VcspInstance::evaluate`] (or a caller
//! supplied objective), which is what lets the rest of the crate be tested
//! against it.

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::instance::{next_assignment, search_space_size, Assignment, VcspInstance};

pub const DEFAULT_BUDGET: u128 = 1_000_000;

fn check_budget(domains: &[usize], budget: u128) -> Result<()> {
    match search_space_size(domains) {
        Some(size) if size <= budget => Ok(()),
        Some(size) => Err(Error::TooLarge(format!("{size} assignments exceed budget {budget}"))),
        None => Err(Error::TooLarge("search space overflows u128".into())),
    }
}

/// Minimises `objective` over every assignment of `domains`.
///
/// Ties keep the lexicographically first assignment.
pub fn brute_force_min<F>(domains: &[usize], budget: u128, mut objective: F) -> Result<(Assignment, Cost)>
where
    F: FnMut(&[usize]) -> Cost,
{
    check_budget(domains, budget)?;
    if domains.contains(&0) {
        return Err(Error::InvalidArgument("empty domain".into()));
    }
    let mut x = vec![0; domains.len()];
    let mut best = (x.clone(), objective(&x));
    while next_assignment(&mut x, domains) {
        let c = objective(&x);
        if c < best.1 {
            best = (x.clone(), c);
        }
    }
    Ok((Assignment(best.0), best.1))
}

pub fn brute_force_solve(instance: &VcspInstance, budget: u128) -> Result<(Assignment, Cost)> {
    brute_force_min(instance.domains(), budget, |x| instance.evaluate_unchecked(x))
}

/// All finite-cost assignments in lexicographic order.
pub fn enumerate_feasible(instance: &VcspInstance, budget: u128) -> Result<Vec<Assignment>> {
    check_budget(instance.domains(), budget)?;
    let mut out = Vec::new();
    let mut x = vec![0; instance.num_vars()];
    loop {
        if instance.evaluate_unchecked(&x).is_finite() {
            out.push(Assignment(x.clone()));
        }
        if !next_assignment(&mut x, instance.domains()) {
            break;
        }
    }
    Ok(out)
}

/// Solutions of the dead-end subproblem for the forbidden pair `(j, c)`, `(k, d)`.
///
/// The subproblem keeps variables `0..=k`, pins `j` to `c` and `k` to `d`, and
/// drops the binary constraints between `k` and the variables `j..k`. Only
/// binary entries of `crisp` count; an entry is forbidden iff it is infinite.
/// Returned prefixes have length `k + 1`.
pub fn dead_end_solutions(
    crisp: &VcspInstance,
    j: usize,
    k: usize,
    c: usize,
    d: usize,
    budget: u128,
) -> Result<Vec<Vec<usize>>> {
    if !(j < k && k < crisp.num_vars()) {
        return Err(Error::InvalidArgument(format!("dead-end scope ({j}, {k})")));
    }
    let mut domains: Vec<usize> = crisp.domains()[..=k].to_vec();
    domains[j] = 1;
    domains[k] = 1;
    check_budget(&domains, budget)?;
    let lift = |x: &[usize]| -> Vec<usize> {
        let mut y = x.to_vec();
        y[j] = c;
        y[k] = d;
        y
    };
    let consistent = |y: &[usize]| {
        for a in 0..=k {
            for b in a + 1..=k {
                if b == k && a >= j {
                    continue;
                }
                if crisp.binary(a, b, y[a], y[b]).is_infinite() {
                    return false;
                }
            }
        }
        true
    };
    let mut out = Vec::new();
    let mut x = vec![0; k + 1];
    loop {
        let y = lift(&x);
        if consistent(&y) {
            out.push(y);
        }
        if !next_assignment(&mut x, &domains) {
            break;
        }
    }
    Ok(out)
}
