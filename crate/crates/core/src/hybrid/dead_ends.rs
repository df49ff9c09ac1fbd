//! Optimisation over the solutions of a crisp instance with few dead ends,
//! by splitting the solution set into lexicographic intervals.

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::hybrid::interval::{complement_intervals, decompose_interval, union_intervals, LexInterval};
use crate::instance::{Assignment, VcspInstance};

/// Minimises `crisp + finite` where `crisp` has only `0` and `inf` binary
/// costs (and any mix of `0` and `inf` unary costs).
///
/// `dead_ends(crisp, j, k, c, d)` must list the solutions of the dead-end
/// subproblem for the forbidden pair `(j=c, k=d)`: variables `0..=k`, `j`
/// and `k` pinned, and the constraints between `k` and `j..k` dropped (see
/// [`crate::oracle::dead_end_solutions`]). Every full assignment extending
/// one of those prefixes is a non-solution, and every non-solution extends
/// one. `solver` must return an optimal assignment of a domain-restricted
/// copy of `finite`.
pub fn solve_via_dead_ends<S, D>(
    crisp: &VcspInstance,
    finite: &VcspInstance,
    mut solver: S,
    mut dead_ends: D,
) -> Result<(Assignment, Cost)>
where
    S: FnMut(&VcspInstance) -> Result<(Assignment, Cost)>,
    D: FnMut(&VcspInstance, usize, usize, usize, usize) -> Result<Vec<Vec<usize>>>,
{
    let domains = crisp.domains();
    if finite.domains() != domains {
        return Err(Error::InvalidArgument("crisp and finite parts have different domains".into()));
    }
    if let Some((i, j)) = crisp.first_soft_binary() {
        return Err(Error::NotCrisp { i, j });
    }
    let n = crisp.num_vars();
    let infeasible = || Ok((Assignment(vec![0; n]), Cost::Infinite));
    let mut allowed: Vec<Vec<usize>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut values = Vec::new();
        for a in 0..domains[i] {
            let c = crisp.unary(i, a);
            if c.is_zero() {
                values.push(a);
            } else if c.is_finite() {
                return Err(Error::NotCrisp { i, j: i });
            }
        }
        if values.is_empty() {
            return infeasible();
        }
        allowed.push(values);
    }

    let mut dead = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            for c in 0..domains[j] {
                for d in 0..domains[k] {
                    if !crisp.binary(j, k, c, d).is_infinite() {
                        continue;
                    }
                    for prefix in dead_ends(crisp, j, k, c, d)? {
                        check_dead_end(crisp, j, k, c, d, &prefix)?;
                        let mut lower = prefix.clone();
                        lower.resize(n, 0);
                        let mut upper = prefix;
                        upper.extend(domains[k + 1..].iter().map(|&dv| dv - 1));
                        dead.push(LexInterval { lower, upper });
                    }
                }
            }
        }
    }
    let merged = union_intervals(domains, dead);
    let mut best: Option<(Assignment, Cost)> = None;
    for iv in complement_intervals(domains, &merged) {
        for descriptor in decompose_interval(domains, &iv) {
            let keep: Vec<Vec<usize>> = descriptor
                .iter()
                .zip(&allowed)
                .map(|(vals, ok)| vals.iter().copied().filter(|v| ok.binary_search(v).is_ok()).collect())
                .collect();
            if keep.iter().any(Vec::is_empty) {
                continue;
            }
            let (sub, remap) = finite.restrict_domains(&keep)?;
            let (x, _) = solver(&sub).map_err(|e| Error::Callback(e.to_string()))?;
            sub.check_assignment(&x).map_err(|e| Error::OracleInconsistency(e.to_string()))?;
            let x = remap.to_original(&x);
            let crisp_cost = crisp.evaluate(&x)?;
            if crisp_cost.is_infinite() {
                return Err(Error::OracleInconsistency(format!("{x} lies in a solution interval but violates the crisp part")));
            }
            let cost = &crisp_cost + &finite.evaluate(&x)?;
            if best.as_ref().is_none_or(|(bx, bc)| cost < *bc || (cost == *bc && x < *bx)) {
                best = Some((x, cost));
            }
        }
    }
    match best {
        Some(b) => Ok(b),
        None => infeasible(),
    }
}

fn check_dead_end(crisp: &VcspInstance, j: usize, k: usize, c: usize, d: usize, prefix: &[usize]) -> Result<()> {
    let bad = |why: &str| Err(Error::OracleInconsistency(format!("dead end {prefix:?} for ({j}={c}, {k}={d}): {why}")));
    if prefix.len() != k + 1 || prefix.iter().zip(crisp.domains()).any(|(&a, &dv)| a >= dv) {
        return bad("wrong shape");
    }
    if prefix[j] != c || prefix[k] != d {
        return bad("pinned values differ");
    }
    for a in 0..=k {
        for b in a + 1..=k {
            if b == k && a >= j {
                continue;
            }
            if crisp.binary(a, b, prefix[a], prefix[b]).is_infinite() {
                return bad("violates a kept constraint");
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_force_solve, dead_end_solutions, DEFAULT_BUDGET};

    fn run(crisp: &VcspInstance, finite: &VcspInstance) -> Result<(Assignment, Cost)> {
        solve_via_dead_ends(
            crisp,
            finite,
            |p| brute_force_solve(p, DEFAULT_BUDGET),
            |p, j, k, c, d| dead_end_solutions(p, j, k, c, d, DEFAULT_BUDGET),
        )
    }

    #[test]
    fn no_forbidden_pairs_uses_full_space() {
        let crisp = VcspInstance::uniform(2, 2).unwrap();
        let mut finite = VcspInstance::uniform(2, 2).unwrap();
        finite.set_unary(0, 0, Cost::from_int(2)).unwrap();
        let (x, c) = run(&crisp, &finite).unwrap();
        assert_eq!(x.0, vec![1, 0]);
        assert!(c.is_zero());
    }

    #[test]
    fn everything_forbidden_is_infinite() {
        let mut crisp = VcspInstance::uniform(2, 2).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                crisp.set_binary(0, 1, a, b, Cost::Infinite).unwrap();
            }
        }
        let finite = VcspInstance::uniform(2, 2).unwrap();
        assert!(run(&crisp, &finite).unwrap().1.is_infinite());
    }

    #[test]
    fn matches_brute_force_on_small_case() {
        let mut crisp = VcspInstance::uniform(3, 2).unwrap();
        crisp.set_binary(0, 2, 0, 0, Cost::Infinite).unwrap();
        crisp.set_binary(1, 2, 1, 1, Cost::Infinite).unwrap();
        crisp.set_unary(1, 0, Cost::Infinite).unwrap();
        let mut finite = VcspInstance::uniform(3, 2).unwrap();
        finite.set_binary(0, 1, 1, 1, Cost::from_int(3)).unwrap();
        finite.set_unary(2, 0, Cost::from_int(1)).unwrap();
        let mut whole = finite.clone();
        for i in 0..3 {
            for a in 0..2 {
                whole.set_unary(i, a, crisp.unary(i, a) + finite.unary(i, a)).unwrap();
                for j in i + 1..3 {
                    for b in 0..2 {
                        whole.set_binary(i, j, a, b, crisp.binary(i, j, a, b) + finite.binary(i, j, a, b)).unwrap();
                    }
                }
            }
        }
        let (_, expect) = brute_force_solve(&whole, DEFAULT_BUDGET).unwrap();
        assert_eq!(run(&crisp, &finite).unwrap().1, expect);
    }

    #[test]
    fn bogus_enumerator_detected() {
        let mut crisp = VcspInstance::uniform(2, 2).unwrap();
        crisp.set_binary(0, 1, 0, 0, Cost::Infinite).unwrap();
        let finite = VcspInstance::uniform(2, 2).unwrap();
        let r = solve_via_dead_ends(&crisp, &finite, |p| brute_force_solve(p, DEFAULT_BUDGET), |_, _, _, _, _| Ok(vec![vec![1, 1]]));
        assert!(matches!(r, Err(Error::OracleInconsistency(_))));
    }
}
