use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::instance::VcspInstance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SoftAllDiffVariant {
    /// Each pair of variables taking equal values costs 1.
    Graph,
    /// Each variable that repeats an earlier-used value costs 1.
    VariableBased,
}

/// Soft all-different over variables whose domains are lists of value labels.
///
/// In the graph variant value `a` of variable `i` is `labels[i][a]`. The
/// variable-based variant doubles every domain: value `2a` means "first
/// variable to take label `labels[i][a]`" and costs 0, value `2a + 1` means
/// "takes it but is not first" and costs 1; two variables may not both be
/// first for the same label.
pub fn gen_softalldiff(labels: &[Vec<u32>], variant: SoftAllDiffVariant) -> Result<VcspInstance> {
    for (i, vals) in labels.iter().enumerate() {
        let mut sorted = vals.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != vals.len() {
            return Err(Error::InvalidInput(format!("variable {} repeats a label", i + 1)));
        }
    }
    let n = labels.len();
    match variant {
        SoftAllDiffVariant::Graph => {
            let mut p = VcspInstance::new(labels.iter().map(Vec::len).collect())?;
            for i in 0..n {
                for j in i + 1..n {
                    for (a, la) in labels[i].iter().enumerate() {
                        for (b, lb) in labels[j].iter().enumerate() {
                            if la == lb {
                                p.set_binary(i, j, a, b, Cost::from_int(1))?;
                            }
                        }
                    }
                }
            }
            Ok(p)
        }
        SoftAllDiffVariant::VariableBased => {
            let mut p = VcspInstance::new(labels.iter().map(|l| 2 * l.len()).collect())?;
            for i in 0..n {
                for a in 0..labels[i].len() {
                    p.set_unary(i, 2 * a + 1, Cost::from_int(1))?;
                }
                for j in i + 1..n {
                    for (a, la) in labels[i].iter().enumerate() {
                        for (b, lb) in labels[j].iter().enumerate() {
                            if la == lb {
                                p.set_binary(i, j, 2 * a, 2 * b, Cost::Infinite)?;
                            }
                        }
                    }
                }
            }
            Ok(p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jwp::check_jwp;
    use crate::oracle::{brute_force_solve, DEFAULT_BUDGET};

    #[test]
    fn single_shared_value() {
        let p = gen_softalldiff(&[vec![0], vec![0], vec![0]], SoftAllDiffVariant::Graph).unwrap();
        assert_eq!(brute_force_solve(&p, DEFAULT_BUDGET).unwrap().1, Cost::from_int(3));
        let q = gen_softalldiff(&[vec![0], vec![0], vec![0]], SoftAllDiffVariant::VariableBased).unwrap();
        assert_eq!(brute_force_solve(&q, DEFAULT_BUDGET).unwrap().1, Cost::from_int(2));
    }

    #[test]
    fn distinct_values_cost_nothing() {
        let p = gen_softalldiff(&[vec![0, 1], vec![2, 3]], SoftAllDiffVariant::Graph).unwrap();
        assert!(brute_force_solve(&p, DEFAULT_BUDGET).unwrap().1.is_zero());
    }

    #[test]
    fn both_variants_are_jwp() {
        let labels = vec![vec![0, 1, 2], vec![1, 2], vec![0, 2], vec![2]];
        for v in [SoftAllDiffVariant::Graph, SoftAllDiffVariant::VariableBased] {
            assert_eq!(check_jwp(&gen_softalldiff(&labels, v).unwrap()), None);
        }
    }

    #[test]
    fn repeated_label_rejected() {
        assert!(gen_softalldiff(&[vec![1, 1]], SoftAllDiffVariant::Graph).is_err());
    }
}
