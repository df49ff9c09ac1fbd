use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::instance::VcspInstance;

/// Jobs on unrelated machines; `lengths[i][m]` is the processing time of job
/// `i` on machine `m` (`inf` if the machine cannot run it).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchedulingSpec {
    pub lengths: Vec<Vec<Cost>>,
}

impl SchedulingSpec {
    pub fn num_jobs(&self) -> usize {
        self.lengths.len()
    }

    pub fn num_machines(&self) -> usize {
        self.lengths.first().map_or(0, Vec::len)
    }
}

/// Total completion time as a binary VCSP: variable `i` is job `i`'s machine,
/// `c_i(m) = l_i(m)` and two jobs sharing machine `m` add `min(l_i(m), l_j(m))`,
/// the wait of the longer one for the shorter.
pub fn gen_scheduling(spec: &SchedulingSpec) -> Result<VcspInstance> {
    let d = spec.num_machines();
    if d == 0 {
        return Err(Error::InvalidInput("no machines".into()));
    }
    if let Some(i) = spec.lengths.iter().position(|row| row.len() != d) {
        return Err(Error::InvalidInput(format!("job {} lists {} lengths, expected {d}", i + 1, spec.lengths[i].len())));
    }
    let n = spec.num_jobs();
    let mut p = VcspInstance::uniform(n, d)?;
    for i in 0..n {
        for m in 0..d {
            p.set_unary(i, m, spec.lengths[i][m].clone())?;
            for j in i + 1..n {
                let wait = spec.lengths[i][m].clone().min(spec.lengths[j][m].clone());
                p.set_binary(i, j, m, m, wait)?;
            }
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jwp::check_jwp;
    use crate::oracle::{brute_force_solve, DEFAULT_BUDGET};

    fn spec(rows: &[&[u64]]) -> SchedulingSpec {
        SchedulingSpec { lengths: rows.iter().map(|r| r.iter().map(|&c| Cost::from_int(c)).collect()).collect() }
    }

    #[test]
    fn one_machine_two_jobs() {
        let p = gen_scheduling(&spec(&[&[2], &[3]])).unwrap();
        assert_eq!(brute_force_solve(&p, DEFAULT_BUDGET).unwrap().1, Cost::from_int(7));
    }

    #[test]
    fn two_machines_split_jobs() {
        let p = gen_scheduling(&spec(&[&[1, 1], &[1, 1]])).unwrap();
        let (x, c) = brute_force_solve(&p, DEFAULT_BUDGET).unwrap();
        assert_eq!(c, Cost::from_int(2));
        assert_ne!(x[0], x[1]);
        assert_eq!(check_jwp(&p), None);
    }

    #[test]
    fn ragged_lengths_rejected() {
        assert!(gen_scheduling(&spec(&[&[1, 2], &[1]])).is_err());
    }
}
