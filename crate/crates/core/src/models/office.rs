use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::noc::NocInstance;

/// Staff-to-office assignment: offices have capacities, members of a group
/// want to share an office, and each person may have per-office costs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OfficeSpec {
    pub staff: usize,
    pub capacities: Vec<usize>,
    /// Disjoint groups of staff.
    pub groups: Vec<Vec<usize>>,
    /// `preferences[p][o]`; an empty list means no preferences.
    pub preferences: Vec<Vec<Cost>>,
}

/// Builds the office instance: `staff` variables over the offices, one
/// capacity set per office (`0` up to the capacity, then `inf`), one set per
/// group and office charging `t - 1` when `t >= 1` group members share it, and
/// a singleton per non-zero preference.
pub fn gen_office(spec: &OfficeSpec) -> Result<NocInstance> {
    let (n, m) = (spec.staff, spec.capacities.len());
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput("need at least one person and one office".into()));
    }
    check_preferences(&spec.preferences, n, m)?;
    let mut seen = vec![false; n];
    for (g, members) in spec.groups.iter().enumerate() {
        for &p in members {
            if p >= n {
                return Err(Error::OutOfRange(format!("group {} names person {}", g + 1, p + 1)));
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidFamily(format!("person {} is in two groups or listed twice", p + 1)));
            }
        }
    }
    let mut out = NocInstance::new(vec![m; n])?;
    for (o, &cap) in spec.capacities.iter().enumerate() {
        let f = (0..=n).map(|k| if k <= cap { Cost::zero() } else { Cost::Infinite }).collect();
        out.add_set(format!("office{}", o + 1), (0..n).map(|p| (p, o)).collect(), f)?;
    }
    for (g, members) in spec.groups.iter().enumerate() {
        if members.len() < 2 {
            continue;
        }
        for o in 0..m {
            let f = (0..=members.len()).map(|t| Cost::from_int(t.saturating_sub(1) as u64)).collect();
            out.add_set(format!("group{}_office{}", g + 1, o + 1), members.iter().map(|&p| (p, o)).collect(), f)?;
        }
    }
    add_preferences(&mut out, &spec.preferences)?;
    Ok(out)
}

/// Course-to-teacher assignment with overtime pay and one course per
/// teacher per time slot.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoursesSpec {
    /// Time slot of each course.
    pub slots: Vec<usize>,
    pub teachers: usize,
    /// Courses each teacher gives before overtime starts.
    pub threshold: Vec<usize>,
    /// Overtime cost per extra course, per teacher.
    pub rate: Vec<Cost>,
    /// `preferences[c][t]`; an empty list means no preferences.
    pub preferences: Vec<Vec<Cost>>,
}

/// Builds the course instance: one set per teacher with
/// `f(k) = rate * max(0, k - threshold)`, one set per teacher and slot that
/// forbids two courses at once, and a singleton per non-zero preference.
pub fn gen_courses(spec: &CoursesSpec) -> Result<NocInstance> {
    let (n, m) = (spec.slots.len(), spec.teachers);
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput("need at least one course and one teacher".into()));
    }
    if spec.threshold.len() != m || spec.rate.len() != m {
        return Err(Error::InvalidInput(format!("need a threshold and a rate for each of {m} teachers")));
    }
    check_preferences(&spec.preferences, n, m)?;
    let mut out = NocInstance::new(vec![m; n])?;
    for t in 0..m {
        let f = (0..=n).map(|k| spec.rate[t].scale(k.saturating_sub(spec.threshold[t]) as u64)).collect();
        out.add_set(format!("teacher{}", t + 1), (0..n).map(|c| (c, t)).collect(), f)?;
    }
    let mut slots = spec.slots.clone();
    slots.sort_unstable();
    slots.dedup();
    for &s in &slots {
        let courses: Vec<usize> = (0..n).filter(|&c| spec.slots[c] == s).collect();
        if courses.len() < 2 {
            continue;
        }
        for t in 0..m {
            let f = (0..=courses.len()).map(|k| if k <= 1 { Cost::zero() } else { Cost::Infinite }).collect();
            out.add_set(format!("teacher{}_slot{s}", t + 1), courses.iter().map(|&c| (c, t)).collect(), f)?;
        }
    }
    add_preferences(&mut out, &spec.preferences)?;
    Ok(out)
}

fn check_preferences(prefs: &[Vec<Cost>], n: usize, m: usize) -> Result<()> {
    if prefs.is_empty() {
        return Ok(());
    }
    if prefs.len() != n || prefs.iter().any(|row| row.len() != m) {
        return Err(Error::InvalidInput(format!("preferences must be a {n} x {m} table")));
    }
    Ok(())
}

fn add_preferences(out: &mut NocInstance, prefs: &[Vec<Cost>]) -> Result<()> {
    for (i, row) in prefs.iter().enumerate() {
        for (a, c) in row.iter().enumerate() {
            if !c.is_zero() {
                out.add_set(format!("pref{}_{}", i + 1, a + 1), vec![(i, a)], vec![Cost::zero(), c.clone()])?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noc::{solve_noc, validate_noc};

    #[test]
    fn split_couple_pays_nothing() {
        let spec = OfficeSpec { staff: 2, capacities: vec![2, 2], groups: vec![vec![0, 1]], preferences: vec![] };
        let p = gen_office(&spec).unwrap();
        assert_eq!(validate_noc(&p), None);
        assert!(solve_noc(&p).unwrap().1.is_zero());
    }

    #[test]
    fn forced_couple_pays_one() {
        let spec = OfficeSpec { staff: 2, capacities: vec![2], groups: vec![vec![0, 1]], preferences: vec![] };
        assert_eq!(solve_noc(&gen_office(&spec).unwrap()).unwrap().1, Cost::from_int(1));
    }

    #[test]
    fn over_capacity_is_infinite() {
        let spec = OfficeSpec { staff: 3, capacities: vec![1, 1], ..Default::default() };
        assert!(solve_noc(&gen_office(&spec).unwrap()).unwrap().1.is_infinite());
    }

    #[test]
    fn clashing_courses_need_two_teachers() {
        let one = CoursesSpec {
            slots: vec![0, 0],
            teachers: 1,
            threshold: vec![5],
            rate: vec![Cost::from_int(1)],
            preferences: vec![],
        };
        assert!(solve_noc(&gen_courses(&one).unwrap()).unwrap().1.is_infinite());
        let two = CoursesSpec { teachers: 2, threshold: vec![5, 5], rate: vec![Cost::from_int(1); 2], ..one };
        assert!(solve_noc(&gen_courses(&two).unwrap()).unwrap().1.is_zero());
    }

    #[test]
    fn overtime_is_charged() {
        let spec = CoursesSpec {
            slots: vec![0, 1, 2],
            teachers: 1,
            threshold: vec![1],
            rate: vec![Cost::from_int(3)],
            preferences: vec![],
        };
        assert_eq!(solve_noc(&gen_courses(&spec).unwrap()).unwrap().1, Cost::from_int(6));
    }

    #[test]
    fn overlapping_groups_rejected() {
        let spec = OfficeSpec { staff: 3, capacities: vec![3], groups: vec![vec![0, 1], vec![1, 2]], preferences: vec![] };
        assert!(matches!(gen_office(&spec), Err(Error::InvalidFamily(_))));
    }
}
