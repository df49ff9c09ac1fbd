//! Binary VCSP instances, assignments and objective evaluation.

use std::fmt;
use std::ops::Deref;

use crate::cost::Cost;
use crate::error::{Error, Result};

/// A binary valued constraint satisfaction instance.
///
/// Variables are `0..n` and the values of variable `i` are `0..d_i`.
/// Unspecified unary and binary costs are zero. Each unordered scope owns one
/// dense cost table, so `binary(i, j, a, b)` and `binary(j, i, b, a)` always
/// read the same entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcspInstance {
    domains: Vec<usize>,
    unary: Vec<Vec<Cost>>,
    // One table per scope i < j, row-major in (a, b).
    binary: Vec<Vec<Cost>>,
}

impl VcspInstance {
    pub fn new(domains: Vec<usize>) -> Result<Self> {
        if let Some(var) = domains.iter().position(|&d| d == 0) {
            return Err(Error::EmptyDomain { var });
        }
        let n = domains.len();
        let unary = domains.iter().map(|&d| vec![Cost::zero(); d]).collect();
        let mut binary = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                binary.push(vec![Cost::zero(); domains[i] * domains[j]]);
            }
        }
        Ok(VcspInstance { domains, unary, binary })
    }

    /// `n` variables sharing a domain of size `d`.
    pub fn uniform(n: usize, d: usize) -> Result<Self> {
        Self::new(vec![d; n])
    }

    pub fn num_vars(&self) -> usize {
        self.domains.len()
    }

    pub fn domains(&self) -> &[usize] {
        &self.domains
    }

    pub fn domain_size(&self, var: usize) -> usize {
        self.domains[var]
    }

    pub fn max_domain_size(&self) -> usize {
        self.domains.iter().copied().max().unwrap_or(0)
    }

    /// Number of (variable, value) pairs.
    pub fn num_vertices(&self) -> usize {
        self.domains.iter().sum()
    }

    /// Offset of variable `i`'s first value in the flat vertex numbering.
    pub fn vertex_offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.domains.len() + 1);
        let mut acc = 0;
        for &d in &self.domains {
            offsets.push(acc);
            acc += d;
        }
        offsets.push(acc);
        offsets
    }

    fn check_value(&self, var: usize, value: usize) -> Result<()> {
        if var >= self.num_vars() {
            return Err(Error::OutOfRange(format!("variable {var} (n = {})", self.num_vars())));
        }
        if value >= self.domains[var] {
            return Err(Error::OutOfRange(format!(
                "value {value} of variable {var} (domain size {})",
                self.domains[var]
            )));
        }
        Ok(())
    }

    fn scope_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.num_vars());
        let n = self.num_vars();
        i * n - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn unary(&self, var: usize, value: usize) -> &Cost {
        &self.unary[var][value]
    }

    pub fn set_unary(&mut self, var: usize, value: usize, cost: Cost) -> Result<()> {
        self.check_value(var, value)?;
        self.unary[var][value] = cost;
        Ok(())
    }

    pub fn binary(&self, i: usize, j: usize, a: usize, b: usize) -> &Cost {
        if i < j {
            &self.binary[self.scope_index(i, j)][a * self.domains[j] + b]
        } else {
            assert!(i != j, "binary cost on a single variable");
            &self.binary[self.scope_index(j, i)][b * self.domains[i] + a]
        }
    }

    pub fn set_binary(&mut self, i: usize, j: usize, a: usize, b: usize, cost: Cost) -> Result<()> {
        if i == j {
            return Err(Error::InvalidArgument(format!("binary scope ({i}, {i}) repeats a variable")));
        }
        self.check_value(i, a)?;
        self.check_value(j, b)?;
        let (i, j, a, b) = if i < j { (i, j, a, b) } else { (j, i, b, a) };
        let idx = self.scope_index(i, j);
        let dj = self.domains[j];
        self.binary[idx][a * dj + b] = cost;
        Ok(())
    }

    /// Row-major cost table of scope `(i, j)` with `i < j`.
    pub fn binary_table(&self, i: usize, j: usize) -> &[Cost] {
        assert!(i < j, "binary_table expects i < j");
        &self.binary[self.scope_index(i, j)]
    }

    pub fn binary_entries(&self) -> impl Iterator<Item = &Cost> {
        self.binary.iter().flatten()
    }

    /// First scope `(i, j)`, `i < j`, whose cost table uses a value outside `{0, inf}`.
    pub fn first_soft_binary(&self) -> Option<(usize, usize)> {
        let n = self.num_vars();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.binary_table(i, j).iter().any(|c| !(c.is_zero() || c.is_infinite())))
    }

    pub fn check_assignment(&self, x: &Assignment) -> Result<()> {
        if x.len() != self.num_vars() {
            return Err(Error::InvalidAssignment(format!(
                "expected {} values, got {}",
                self.num_vars(),
                x.len()
            )));
        }
        for (i, &a) in x.iter().enumerate() {
            if a >= self.domains[i] {
                return Err(Error::InvalidAssignment(format!(
                    "value {a} out of range for variable {i} (domain size {})",
                    self.domains[i]
                )));
            }
        }
        Ok(())
    }

    /// Total cost: all unary terms plus all binary terms over pairs `i < j`.
    pub fn evaluate(&self, x: &Assignment) -> Result<Cost> {
        self.check_assignment(x)?;
        Ok(self.evaluate_unchecked(x))
    }

    pub(crate) fn evaluate_unchecked(&self, x: &[usize]) -> Cost {
        let n = self.num_vars();
        let mut total = Cost::zero();
        for i in 0..n {
            total += self.unary(i, x[i]);
            if total.is_infinite() {
                return total;
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                total += self.binary(i, j, x[i], x[j]);
                if total.is_infinite() {
                    return total;
                }
            }
        }
        total
    }

    /// Restricts every variable to the listed values, re-indexed in the order given.
    pub fn restrict_domains(&self, keep: &[Vec<usize>]) -> Result<(VcspInstance, DomainRemap)> {
        if keep.len() != self.num_vars() {
            return Err(Error::InvalidArgument(format!(
                "restriction lists {} variables, instance has {}",
                keep.len(),
                self.num_vars()
            )));
        }
        for (var, values) in keep.iter().enumerate() {
            if values.is_empty() {
                return Err(Error::EmptyDomain { var });
            }
            let mut seen = vec![false; self.domains[var]];
            for &v in values {
                self.check_value(var, v)?;
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidArgument(format!("value {v} of variable {var} kept twice")));
                }
            }
        }
        let mut out = VcspInstance::new(keep.iter().map(Vec::len).collect())?;
        let n = self.num_vars();
        for i in 0..n {
            for (na, &a) in keep[i].iter().enumerate() {
                out.unary[i][na] = self.unary(i, a).clone();
            }
            for j in i + 1..n {
                let idx = out.scope_index(i, j);
                let dj = keep[j].len();
                for (na, &a) in keep[i].iter().enumerate() {
                    for (nb, &b) in keep[j].iter().enumerate() {
                        out.binary[idx][na * dj + nb] = self.binary(i, j, a, b).clone();
                    }
                }
            }
        }
        Ok((out, DomainRemap { kept: keep.to_vec() }))
    }
}

/// Maps values of a restricted instance back to the instance it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainRemap {
    kept: Vec<Vec<usize>>,
}

impl DomainRemap {
    pub fn kept(&self) -> &[Vec<usize>] {
        &self.kept
    }

    pub fn to_original(&self, x: &Assignment) -> Assignment {
        Assignment(x.iter().enumerate().map(|(i, &a)| self.kept[i][a]).collect())
    }

    /// `None` when some value of `x` was dropped by the restriction.
    pub fn to_restricted(&self, x: &Assignment) -> Option<Assignment> {
        x.iter()
            .enumerate()
            .map(|(i, &a)| self.kept[i].iter().position(|&v| v == a))
            .collect::<Option<Vec<_>>>()
            .map(Assignment)
    }
}

/// One value per variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Assignment(pub Vec<usize>);

impl Assignment {
    pub fn new(values: Vec<usize>) -> Self {
        Assignment(values)
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

impl Deref for Assignment {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for Assignment {
    fn from(values: Vec<usize>) -> Self {
        Assignment(values)
    }
}

/// `1=a 2=b ...` with 1-based variables and 0-based values.
impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}={}", i + 1, a)?;
        }
        Ok(())
    }
}

/// Advances `x` to the next assignment in lexicographic order.
///
/// Returns `false` after the last assignment (leaving `x` reset to all zeros).
pub fn next_assignment(x: &mut [usize], domains: &[usize]) -> bool {
    for i in (0..x.len()).rev() {
        x[i] += 1;
        if x[i] < domains[i] {
            return true;
        }
        x[i] = 0;
    }
    false
}

/// Number of assignments, or `None` on overflow.
pub fn search_space_size(domains: &[usize]) -> Option<u128> {
    domains.iter().try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
}
