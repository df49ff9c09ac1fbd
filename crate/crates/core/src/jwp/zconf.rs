//! Z-configurations and their elimination by merging independent sub-domains.

use std::collections::VecDeque;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::instance::{Assignment, VcspInstance};

/// A 2x2 block `{a, b} x {c, d}` of the scope `(i, j)`, `i < j`, in which
/// `c_ij(a, c)`, `c_ij(b, c)` and `c_ij(b, d)` all exceed `c_ij(a, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZConfiguration {
    pub i: usize,
    pub j: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl ZConfiguration {
    fn holds(&self, instance: &VcspInstance) -> bool {
        let c = |x, y| instance.binary(self.i, self.j, x, y);
        let low = c(self.a, self.d);
        self.a != self.b && self.c != self.d && c(self.a, self.c) > low && c(self.b, self.c) > low && c(self.b, self.d) > low
    }
}

// Per-scope ranks so the d^4 block search compares integers.
fn scope_ranks(instance: &VcspInstance, i: usize, j: usize) -> Vec<u32> {
    let table = instance.binary_table(i, j);
    let mut levels: Vec<&Cost> = table.iter().collect();
    levels.sort();
    levels.dedup();
    table.iter().map(|c| levels.binary_search(&c).expect("present") as u32).collect()
}

fn scan_scope(instance: &VcspInstance, i: usize, j: usize, mut visit: impl FnMut(ZConfiguration) -> bool) {
    let (di, dj) = (instance.domain_size(i), instance.domain_size(j));
    if di < 2 || dj < 2 {
        return;
    }
    let r = scope_ranks(instance, i, j);
    let at = |x: usize, y: usize| r[x * dj + y];
    for a in 0..di {
        for b in 0..di {
            if a == b {
                continue;
            }
            for c in 0..dj {
                for d in 0..dj {
                    if c == d {
                        continue;
                    }
                    let low = at(a, d);
                    if at(a, c) > low && at(b, c) > low && at(b, d) > low && !visit(ZConfiguration { i, j, a, b, c, d }) {
                        return;
                    }
                }
            }
        }
    }
}

fn first_in_scope(instance: &VcspInstance, i: usize, j: usize) -> Option<ZConfiguration> {
    let mut found = None;
    scan_scope(instance, i, j, |z| {
        found = Some(z);
        false
    });
    found
}

/// Every Z-configuration, ordered by `(i, j, a, b, c, d)`.
///
/// Each block is reported once: its labelling is fixed by the position of
/// the strictly smallest corner.
pub fn find_z_configurations(instance: &VcspInstance) -> Vec<ZConfiguration> {
    let n = instance.num_vars();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            scan_scope(instance, i, j, |z| {
                out.push(z);
                true
            });
        }
    }
    out
}

/// Grows a Z-configuration into a maximal pair `(S_i, S_j)` that is
/// independent of the other variables and of the other domain values.
///
/// Returns both sets sorted. Fails with `JwpPreconditionViolated` if the
/// result does not pass the direct independence checks, which can only
/// happen when the instance does not have the joint-winner property.
pub fn expand_independent_pair(instance: &VcspInstance, seed: ZConfiguration) -> Result<(Vec<usize>, Vec<usize>)> {
    let ZConfiguration { i, j, .. } = seed;
    if !(i < j && j < instance.num_vars()) {
        return Err(Error::InvalidArgument(format!("scope ({i}, {j})")));
    }
    if seed.a.max(seed.b) >= instance.domain_size(i)
        || seed.c.max(seed.d) >= instance.domain_size(j)
        || !seed.holds(instance)
    {
        return Err(Error::InvalidArgument(format!("{seed:?} is not a Z-configuration")));
    }
    let (di, dj) = (instance.domain_size(i), instance.domain_size(j));
    let c = |x: usize, y: usize| instance.binary(i, j, x, y);
    let mut in_i = vec![false; di];
    let mut in_j = vec![false; dj];
    in_i[seed.a] = true;
    in_i[seed.b] = true;
    in_j[seed.c] = true;
    in_j[seed.d] = true;
    loop {
        let mut grew = false;
        for f in 0..di {
            if !in_i[f] {
                let mut row = (0..dj).filter(|&y| in_j[y]).map(|y| c(f, y));
                let first = row.next().expect("S_j non-empty");
                if row.any(|v| v != first) {
                    in_i[f] = true;
                    grew = true;
                }
            }
        }
        for g in 0..dj {
            if !in_j[g] {
                let mut col = (0..di).filter(|&x| in_i[x]).map(|x| c(x, g));
                let first = col.next().expect("S_i non-empty");
                if col.any(|v| v != first) {
                    in_j[g] = true;
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let s_i: Vec<usize> = (0..di).filter(|&x| in_i[x]).collect();
    let s_j: Vec<usize> = (0..dj).filter(|&y| in_j[y]).collect();
    verify_independent(instance, i, j, &s_i, &s_j)?;
    Ok((s_i, s_j))
}

fn verify_independent(instance: &VcspInstance, i: usize, j: usize, s_i: &[usize], s_j: &[usize]) -> Result<()> {
    let violated = |what: String| Err(Error::JwpPreconditionViolated(what));
    for k in (0..instance.num_vars()).filter(|&k| k != i && k != j) {
        for e in 0..instance.domain_size(k) {
            let reference = instance.binary(i, k, s_i[0], e);
            let row_i = s_i.iter().map(|&a| instance.binary(i, k, a, e));
            let row_j = s_j.iter().map(|&b| instance.binary(j, k, b, e));
            if let Some(bad) = row_i.chain(row_j).find(|v| *v != reference) {
                return violated(format!(
                    "sub-domains of ({i}, {j}) depend on variable {k} value {e} ({reference} vs {bad})"
                ));
            }
        }
    }
    for f in (0..instance.domain_size(i)).filter(|f| s_i.binary_search(f).is_err()) {
        if s_j.iter().any(|&y| instance.binary(i, j, f, y) != instance.binary(i, j, f, s_j[0])) {
            return violated(format!("value {f} of variable {i} separates S_j"));
        }
    }
    for g in (0..instance.domain_size(j)).filter(|g| s_j.binary_search(g).is_err()) {
        if s_i.iter().any(|&x| instance.binary(i, j, x, g) != instance.binary(i, j, s_i[0], g)) {
            return violated(format!("value {g} of variable {j} separates S_i"));
        }
    }
    Ok(())
}

/// A value of a merged domain: either an untouched value (by its index before
/// the merge) or the value standing for a whole merged sub-domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MergedValue {
    Kept(usize),
    Merged,
}

/// One substitution: `S_i` and `S_j` of scope `(i, j)` were replaced by single
/// values `p` and `q`. All value indices refer to the domains just before
/// this step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeStep {
    pub i: usize,
    pub j: usize,
    pub s_i: Vec<usize>,
    pub s_j: Vec<usize>,
    pub p0: usize,
    pub q0: usize,
    pub p1: usize,
    pub q1: usize,
    /// New domain of `i`, indexed by new value.
    pub values_i: Vec<MergedValue>,
    /// New domain of `j`, indexed by new value.
    pub values_j: Vec<MergedValue>,
}

impl MergeStep {
    fn lift(&self, x: &mut [usize]) {
        let vi = self.values_i[x[self.i]];
        let vj = self.values_j[x[self.j]];
        let (xi, xj) = match (vi, vj) {
            (MergedValue::Merged, MergedValue::Merged) => (self.p1, self.q1),
            (MergedValue::Merged, MergedValue::Kept(g)) => (self.p0, g),
            (MergedValue::Kept(f), MergedValue::Merged) => (f, self.q0),
            (MergedValue::Kept(f), MergedValue::Kept(g)) => (f, g),
        };
        x[self.i] = xi;
        x[self.j] = xj;
    }
}

/// The substitutions performed by [`eliminate_z`], in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MergeLog {
    steps: Vec<MergeStep>,
}

impl MergeLog {
    pub fn steps(&self) -> &[MergeStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn extend(&mut self, other: MergeLog) {
        self.steps.extend(other.steps);
    }

    /// Maps an assignment of the reduced instance to one of the original
    /// instance with the same cost.
    pub fn lift(&self, x: &Assignment) -> Assignment {
        let mut y = x.0.clone();
        for step in self.steps.iter().rev() {
            step.lift(&mut y);
        }
        Assignment(y)
    }
}

fn argmin_by<T, K: Ord>(items: impl Iterator<Item = T>, key: impl Fn(&T) -> K) -> T {
    let mut best: Option<(K, T)> = None;
    for item in items {
        let k = key(&item);
        if best.as_ref().is_none_or(|(bk, _)| k < *bk) {
            best = Some((k, item));
        }
    }
    best.expect("non-empty").1
}

fn substitute(instance: &VcspInstance, i: usize, j: usize, s_i: Vec<usize>, s_j: Vec<usize>) -> Result<(VcspInstance, MergeStep)> {
    let p0 = argmin_by(s_i.iter().copied(), |&a| instance.unary(i, a).clone());
    let q0 = argmin_by(s_j.iter().copied(), |&b| instance.unary(j, b).clone());
    let pairs = s_i.iter().flat_map(|&a| s_j.iter().map(move |&b| (a, b)));
    let (p1, q1) = argmin_by(pairs, |&(a, b)| instance.unary(i, a) + instance.unary(j, b) + instance.binary(i, j, a, b).clone());
    let best = instance.unary(i, p1) + instance.unary(j, q1) + instance.binary(i, j, p1, q1).clone();
    let pq = best
        .checked_sub(instance.unary(i, p0))
        .and_then(|c| c.checked_sub(instance.unary(j, q0)))
        .ok_or_else(|| Error::InternalConsistency("merged cost would be negative".into()))?;

    let merged_domain = |d: usize, set: &[usize]| -> Vec<MergedValue> {
        (0..d)
            .filter_map(|v| match set.binary_search(&v) {
                Err(_) => Some(MergedValue::Kept(v)),
                Ok(0) => Some(MergedValue::Merged),
                Ok(_) => None,
            })
            .collect()
    };
    let values_i = merged_domain(instance.domain_size(i), &s_i);
    let values_j = merged_domain(instance.domain_size(j), &s_j);
    // Each new value reads its costs from a representative old value.
    let rep_i: Vec<usize> = values_i.iter().map(|v| if let MergedValue::Kept(f) = *v { f } else { p0 }).collect();
    let rep_j: Vec<usize> = values_j.iter().map(|v| if let MergedValue::Kept(g) = *v { g } else { q0 }).collect();

    let n = instance.num_vars();
    let mut domains = instance.domains().to_vec();
    domains[i] = values_i.len();
    domains[j] = values_j.len();
    let rep = |var: usize, value: usize| -> usize {
        if var == i {
            rep_i[value]
        } else if var == j {
            rep_j[value]
        } else {
            value
        }
    };
    let mut out = VcspInstance::new(domains.clone())?;
    for v in 0..n {
        for a in 0..domains[v] {
            out.set_unary(v, a, instance.unary(v, rep(v, a)).clone())?;
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            for a in 0..domains[u] {
                for b in 0..domains[v] {
                    let both_merged = u == i && v == j && values_i[a] == MergedValue::Merged && values_j[b] == MergedValue::Merged;
                    let cost = if both_merged { pq.clone() } else { instance.binary(u, v, rep(u, a), rep(v, b)).clone() };
                    out.set_binary(u, v, a, b, cost)?;
                }
            }
        }
    }
    let step = MergeStep { i, j, s_i, s_j, p0, q0, p1, q1, values_i, values_j };
    Ok((out, step))
}

/// Removes every Z-configuration by repeated sub-domain merging.
///
/// Ties in the choice of `p0`, `q0` and `(p1, q1)` go to the smallest value
/// (pair). The reduced instance has the same optimum as the input, and
/// [`MergeLog::lift`] maps its solutions back at equal cost.
pub fn eliminate_z(instance: &VcspInstance) -> Result<(VcspInstance, MergeLog)> {
    let n = instance.num_vars();
    let mut current = instance.clone();
    let mut log = MergeLog::default();
    let mut queue: VecDeque<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut queued = vec![true; n * n];
    while let Some((i, j)) = queue.pop_front() {
        queued[i * n + j] = false;
        let Some(z) = first_in_scope(&current, i, j) else {
            continue;
        };
        let (s_i, s_j) = expand_independent_pair(&current, z)?;
        let (next, step) = substitute(&current, i, j, s_i, s_j)?;
        current = next;
        log.steps.push(step);
        for (u, v) in (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| u == i || u == j || v == i || v == j)
        {
            if !queued[u * n + v] {
                queued[u * n + v] = true;
                queue.push_back((u, v));
            }
        }
    }
    Ok((current, log))
}
