//! Solver routing shared by the command line and the C interface.

use std::fmt;
use std::str::FromStr;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::flow::solve_jwp;
use crate::format::InstanceFile;
use crate::hybrid::{mwis_reduction, solve_mwis, DEFAULT_MWIS_LIMIT};
use crate::instance::{Assignment, VcspInstance};
use crate::jwp::{check_jwp, eliminate_z, extract_clique_hierarchy};
use crate::noc::{jwp_to_noc, solve_noc, NocInstance};
use crate::oracle::{brute_force_min, brute_force_solve};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Auto,
    Flow,
    Noc,
    Brute,
    Mwis,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Flow => "flow",
            Method::Noc => "noc",
            Method::Brute => "brute",
            Method::Mwis => "mwis",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => Method::Auto,
            "flow" => Method::Flow,
            "noc" => Method::Noc,
            "brute" => Method::Brute,
            "mwis" => Method::Mwis,
            _ => return Err(Error::InvalidArgument(format!("unknown method `{s}`"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub assignment: Assignment,
    pub cost: Cost,
    /// The method that produced the answer; never [`Method::Auto`].
    pub method: Method,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub method: Method,
    /// Largest search space the brute-force route may enumerate.
    pub max_brute: u128,
    /// Largest graph the MWIS route may search.
    pub max_mwis: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { method: Method::Auto, max_brute: crate::oracle::DEFAULT_BUDGET, max_mwis: DEFAULT_MWIS_LIMIT }
    }
}

/// Whether an error means the chosen method does not apply to the input,
/// as opposed to a failure inside the solver.
pub fn is_precondition_error(e: &Error) -> bool {
    matches!(
        e,
        Error::JwpPreconditionViolated(_)
            | Error::NotCrisp { .. }
            | Error::TooLarge(_)
            | Error::InvalidNoc(_)
            | Error::UnsupportedPattern(_)
    )
}

pub fn solve_file(file: &InstanceFile, opts: &SolveOptions) -> Result<SolveReport> {
    match file {
        InstanceFile::Vcsp(p) => solve_vcsp(p, opts),
        InstanceFile::Noc(p) => solve_noc_file(p, opts),
    }
}

/// `auto` takes the flow route whenever the joint-winner property holds,
/// then MWIS for crisp binary constraints, then brute force.
pub fn solve_vcsp(inst: &VcspInstance, opts: &SolveOptions) -> Result<SolveReport> {
    let report = |(assignment, cost), method| Ok(SolveReport { assignment, cost, method });
    match opts.method {
        Method::Flow => {
            let s = solve_jwp(inst)?;
            report((s.assignment, s.cost), Method::Flow)
        }
        Method::Noc => report(via_noc(inst)?, Method::Noc),
        Method::Brute => report(brute_force_solve(inst, opts.max_brute)?, Method::Brute),
        Method::Mwis => report(via_mwis(inst, opts.max_mwis)?, Method::Mwis),
        Method::Auto => {
            if check_jwp(inst).is_none() {
                return solve_vcsp(inst, &SolveOptions { method: Method::Flow, ..*opts });
            }
            match via_mwis(inst, opts.max_mwis) {
                Ok(r) => return report(r, Method::Mwis),
                Err(Error::NotCrisp { .. } | Error::TooLarge(_)) => {}
                Err(e) => return Err(e),
            }
            report(brute_force_solve(inst, opts.max_brute)?, Method::Brute)
        }
    }
}

fn via_noc(inst: &VcspInstance) -> Result<(Assignment, Cost)> {
    if let Some(w) = check_jwp(inst) {
        return Err(Error::JwpPreconditionViolated(format!("variables {}, {}, {}", w.i + 1, w.j + 1, w.k + 1)));
    }
    let (reduced, log) = eliminate_z(inst)?;
    let h = extract_clique_hierarchy(&reduced)?;
    let (x, cost) = solve_noc(&jwp_to_noc(&reduced, &h)?)?;
    if cost.is_infinite() {
        return Ok((Assignment(vec![0; inst.num_vars()]), cost));
    }
    let x = log.lift(&x);
    let lifted = inst.evaluate(&x)?;
    if lifted != cost {
        return Err(Error::InternalConsistency(format!("NOC optimum {cost} lifts to cost {lifted}")));
    }
    Ok((x, cost))
}

fn via_mwis(inst: &VcspInstance, limit: usize) -> Result<(Assignment, Cost)> {
    let r = mwis_reduction(inst)?;
    let (set, _) = solve_mwis(&r.graph, limit)?;
    match r.decode(&set, inst.num_vars()) {
        Some(x) => {
            let cost = inst.evaluate(&x)?;
            Ok((x, cost))
        }
        None => Ok((Assignment(vec![0; inst.num_vars()]), Cost::Infinite)),
    }
}

fn solve_noc_file(inst: &NocInstance, opts: &SolveOptions) -> Result<SolveReport> {
    let method = match opts.method {
        Method::Auto | Method::Noc => Method::Noc,
        Method::Brute => Method::Brute,
        m => return Err(Error::UnsupportedPattern(format!("method {m} does not apply to NOC instances"))),
    };
    let (assignment, cost) = match method {
        Method::Noc => solve_noc(inst)?,
        _ => brute_force_min(inst.domains(), opts.max_brute, |x| {
            inst.evaluate(&Assignment(x.to_vec())).expect("enumerated assignment fits the domains")
        })?,
    };
    Ok(SolveReport { assignment, cost, method })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse;

    fn opts(method: Method) -> SolveOptions {
        SolveOptions { method, ..Default::default() }
    }

    #[test]
    fn methods_agree_on_small_jwp() {
        let mut p = VcspInstance::uniform(3, 2).unwrap();
        p.set_binary(0, 1, 0, 0, Cost::from_int(2)).unwrap();
        p.set_unary(2, 1, Cost::from_int(1)).unwrap();
        let costs: Vec<Cost> = [Method::Auto, Method::Flow, Method::Noc, Method::Brute]
            .into_iter()
            .map(|m| solve_vcsp(&p, &opts(m)).unwrap().cost)
            .collect();
        assert!(costs.iter().all(|c| *c == costs[0]));
        assert_eq!(solve_vcsp(&p, &opts(Method::Auto)).unwrap().method, Method::Flow);
    }

    #[test]
    fn auto_falls_back_to_mwis_then_brute() {
        let mut p = VcspInstance::uniform(3, 1).unwrap();
        p.set_binary(0, 2, 0, 0, Cost::Infinite).unwrap();
        p.set_binary(1, 2, 0, 0, Cost::Infinite).unwrap();
        let r = solve_vcsp(&p, &opts(Method::Auto)).unwrap();
        assert_eq!((r.method, r.cost), (Method::Mwis, Cost::Infinite));
        p.set_binary(0, 1, 0, 0, Cost::from_int(1)).unwrap();
        assert_eq!(solve_vcsp(&p, &opts(Method::Auto)).unwrap().method, Method::Brute);
    }

    #[test]
    fn flow_on_non_jwp_is_a_precondition_error() {
        let mut p = VcspInstance::uniform(3, 1).unwrap();
        p.set_binary(0, 2, 0, 0, Cost::Infinite).unwrap();
        p.set_binary(1, 2, 0, 0, Cost::Infinite).unwrap();
        let e = solve_vcsp(&p, &opts(Method::Flow)).unwrap_err();
        assert!(is_precondition_error(&e));
    }

    #[test]
    fn noc_files_route_to_noc() {
        let f = parse("noc 1\ndom 1 2\nset A (1,0)\nfn A 0 4\n").unwrap();
        let r = solve_file(&f, &opts(Method::Auto)).unwrap();
        assert_eq!((r.assignment.0, r.cost, r.method), (vec![1], Cost::zero(), Method::Noc));
        assert!(is_precondition_error(&solve_file(&f, &opts(Method::Flow)).unwrap_err()));
        assert_eq!(solve_file(&f, &opts(Method::Brute)).unwrap().cost, Cost::zero());
    }
}
