use std::collections::BTreeSet;
use std::fmt;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::instance::VcspInstance;
use crate::jwp::check_jwp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    /// The value (0 or 1) of its variable that makes the literal false.
    pub fn falsifying_value(self) -> usize {
        usize::from(!self.positive)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var + 1)
        } else {
            write!(f, "!x{}", self.var + 1)
        }
    }
}

/// A two-literal clause over distinct variables.
pub type Clause = (Literal, Literal);

#[derive(Clone, Debug)]
pub struct Max2SatCheck {
    /// Literals `l, l1, l2` with `l | l1` and `l | l2` present but `l1 | l2`
    /// absent, or `None` if the formula is closed under that rule.
    pub violation: Option<(Literal, Literal, Literal)>,
    /// Boolean VCSP charging 1 for each falsified clause.
    pub encoding: VcspInstance,
}

fn key(a: Literal, b: Literal) -> (Literal, Literal) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Decides whether a MAX-2SAT formula yields a joint-winner instance.
///
/// The closure test is run on the clause set, and its verdict is compared
/// against [`check_jwp`] on the Boolean encoding; a disagreement is reported
/// as an internal error.
pub fn check_max2sat_jwp(num_vars: usize, clauses: &[Clause]) -> Result<Max2SatCheck> {
    let mut set = BTreeSet::new();
    for &(a, b) in clauses {
        if a.var >= num_vars || b.var >= num_vars {
            return Err(Error::OutOfRange(format!("clause ({a} | {b}) with {num_vars} variables")));
        }
        if a.var == b.var {
            return Err(Error::InvalidInput(format!("clause ({a} | {b}) repeats a variable")));
        }
        if !set.insert(key(a, b)) {
            return Err(Error::InvalidInput(format!("clause ({a} | {b}) appears twice")));
        }
    }
    let mut encoding = VcspInstance::uniform(num_vars, 2)?;
    for &(a, b) in &set {
        encoding.set_binary(a.var, b.var, a.falsifying_value(), b.falsifying_value(), Cost::from_int(1))?;
    }

    let mut partners: Vec<Vec<Literal>> = vec![Vec::new(); 2 * num_vars];
    let slot = |l: Literal| 2 * l.var + usize::from(!l.positive);
    for &(a, b) in &set {
        partners[slot(a)].push(b);
        partners[slot(b)].push(a);
    }
    let mut violation = None;
    'outer: for var in 0..num_vars {
        for l in [Literal::pos(var), Literal::neg(var)] {
            let ps = &partners[slot(l)];
            for (x, &l1) in ps.iter().enumerate() {
                for &l2 in &ps[x + 1..] {
                    if l1.var != l2.var && !set.contains(&key(l1, l2)) {
                        violation = Some((l, l1, l2));
                        break 'outer;
                    }
                }
            }
        }
    }
    if violation.is_none() != check_jwp(&encoding).is_none() {
        return Err(Error::InternalConsistency("clause closure and cost-triangle check disagree".into()));
    }
    Ok(Max2SatCheck { violation, encoding })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_triangle_is_jwp() {
        let (a, b, c) = (Literal::pos(0), Literal::pos(1), Literal::pos(2));
        let r = check_max2sat_jwp(3, &[(a, b), (a, c), (b, c)]).unwrap();
        assert_eq!(r.violation, None);
    }

    #[test]
    fn open_pair_is_not() {
        let (a, b, c) = (Literal::pos(0), Literal::pos(1), Literal::neg(2));
        let r = check_max2sat_jwp(3, &[(a, b), (a, c)]).unwrap();
        assert_eq!(r.violation, Some((a, b, c)));
    }

    #[test]
    fn same_variable_partners_are_fine() {
        let r = check_max2sat_jwp(2, &[(Literal::pos(0), Literal::pos(1)), (Literal::pos(0), Literal::neg(1))]).unwrap();
        assert_eq!(r.violation, None);
    }

    #[test]
    fn repeated_clause_rejected() {
        let c = (Literal::pos(0), Literal::neg(1));
        let flipped = (c.1, c.0);
        assert!(matches!(check_max2sat_jwp(2, &[c, flipped]), Err(Error::InvalidInput(_))));
    }
}
