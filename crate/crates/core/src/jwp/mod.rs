//! Joint-winner property: recognition, Z-configuration elimination and the
//! laminar clique hierarchy of Z-free instances.

mod hierarchy;
mod zconf;

pub use hierarchy::{extract_clique_hierarchy, CliqueHierarchy, CliqueNode};
pub use zconf::{
    eliminate_z, expand_independent_pair, find_z_configurations, MergeLog, MergeStep, MergedValue, ZConfiguration,
};

use crate::cost::Cost;
use crate::instance::VcspInstance;

/// A cost triangle whose two smallest binary costs differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JwpWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// `c_ij(a, b)`
    pub cost_ij: Cost,
    /// `c_ik(a, c)`
    pub cost_ik: Cost,
    /// `c_jk(b, c)`
    pub cost_jk: Cost,
}

/// Binary cost tables with every cost replaced by its rank among the
/// distinct binary costs of the instance. Ranks preserve order and equality,
/// which is all the structural checks need.
pub(crate) struct RankedCosts {
    n: usize,
    domains: Vec<usize>,
    tables: Vec<Vec<u32>>,
    levels: Vec<Cost>,
}

impl RankedCosts {
    pub(crate) fn new(instance: &VcspInstance) -> Self {
        let n = instance.num_vars();
        let mut levels: Vec<Cost> = instance.binary_entries().cloned().collect();
        levels.sort();
        levels.dedup();
        let rank = |c: &Cost| levels.binary_search(c).expect("level present") as u32;
        let mut tables = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                tables.push(instance.binary_table(i, j).iter().map(rank).collect());
            }
        }
        RankedCosts { n, domains: instance.domains().to_vec(), tables, levels }
    }

    pub(crate) fn table(&self, i: usize, j: usize) -> &[u32] {
        debug_assert!(i < j);
        &self.tables[i * self.n - i * (i + 1) / 2 + (j - i - 1)]
    }

    /// Rank of `c_ij(a, b)` for `i < j`.
    pub(crate) fn get(&self, i: usize, j: usize, a: usize, b: usize) -> u32 {
        self.table(i, j)[a * self.domains[j] + b]
    }

    pub(crate) fn level(&self, rank: u32) -> &Cost {
        &self.levels[rank as usize]
    }

    pub(crate) fn levels(&self) -> &[Cost] {
        &self.levels
    }
}

/// Checks the joint-winner property on every triple of distinct variables.
///
/// Uses the isosceles form: in every triangle of binary costs the two
/// smallest are equal. Unary costs play no part. Returns the first violating
/// triangle in lexicographic order of `(i, j, k, a, b, c)`.
pub fn check_jwp(instance: &VcspInstance) -> Option<JwpWitness> {
    let n = instance.num_vars();
    if n < 3 {
        return None;
    }
    let ranks = RankedCosts::new(instance);
    let d = instance.domains();
    for i in 0..n {
        for j in i + 1..n {
            let tij = ranks.table(i, j);
            for k in j + 1..n {
                let tik = ranks.table(i, k);
                let tjk = ranks.table(j, k);
                for a in 0..d[i] {
                    for b in 0..d[j] {
                        let x = tij[a * d[j] + b];
                        for c in 0..d[k] {
                            let y = tik[a * d[k] + c];
                            let z = tjk[b * d[k] + c];
                            if !isosceles(x, y, z) {
                                return Some(JwpWitness {
                                    i,
                                    j,
                                    k,
                                    a,
                                    b,
                                    c,
                                    cost_ij: ranks.level(x).clone(),
                                    cost_ik: ranks.level(y).clone(),
                                    cost_jk: ranks.level(z).clone(),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

fn isosceles(x: u32, y: u32, z: u32) -> bool {
    let mut v = [x, y, z];
    v.sort_unstable();
    v[0] == v[1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_var_example() -> VcspInstance {
        let mut p = VcspInstance::new(vec![2, 2, 1]).unwrap();
        p.set_binary(0, 1, 0, 0, Cost::from_int(2)).unwrap();
        p.set_binary(0, 2, 0, 0, Cost::from_int(1)).unwrap();
        p.set_binary(1, 2, 0, 0, Cost::from_int(1)).unwrap();
        p.set_binary(0, 1, 1, 1, Cost::from_int(1)).unwrap();
        p
    }

    #[test]
    fn three_var_example_is_jwp() {
        assert_eq!(check_jwp(&three_var_example()), None);
    }

    #[test]
    fn zero_inf_inf_triangle_violates() {
        let mut p = VcspInstance::uniform(3, 1).unwrap();
        p.set_binary(0, 2, 0, 0, Cost::Infinite).unwrap();
        p.set_binary(1, 2, 0, 0, Cost::Infinite).unwrap();
        let w = check_jwp(&p).unwrap();
        assert_eq!((w.i, w.j, w.k), (0, 1, 2));
        assert_eq!(w.cost_ij, Cost::zero());
        assert_eq!(w.cost_ik, Cost::Infinite);
        assert_eq!(w.cost_jk, Cost::Infinite);
    }

    #[test]
    fn two_variables_pass() {
        let mut p = VcspInstance::uniform(2, 3).unwrap();
        p.set_binary(0, 1, 0, 2, Cost::from_int(9)).unwrap();
        assert_eq!(check_jwp(&p), None);
    }

    #[test]
    fn isosceles_cases() {
        assert!(isosceles(1, 1, 5));
        assert!(isosceles(5, 1, 1));
        assert!(isosceles(2, 2, 2));
        assert!(!isosceles(1, 2, 3));
        assert!(!isosceles(0, 3, 3));
    }
}
