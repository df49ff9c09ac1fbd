//! Lexicographic intervals of assignments and their decomposition into boxes.

use crate::error::{Error, Result};

/// A per-variable list of allowed values; the assignments it describes are
/// the Cartesian product of the lists.
pub type Descriptor = Vec<Vec<usize>>;

/// All assignments between `lower` and `upper` inclusive, in the
/// lexicographic order with values compared by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexInterval {
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
}

impl LexInterval {
    pub fn new(domains: &[usize], lower: Vec<usize>, upper: Vec<usize>) -> Result<Self> {
        for x in [&lower, &upper] {
            if x.len() != domains.len() || x.iter().zip(domains).any(|(&a, &d)| a >= d) {
                return Err(Error::InvalidArgument(format!("{x:?} does not fit domains {domains:?}")));
            }
        }
        if lower > upper {
            return Err(Error::InvalidArgument(format!("{lower:?} > {upper:?}")));
        }
        Ok(LexInterval { lower, upper })
    }

    pub fn contains(&self, x: &[usize]) -> bool {
        self.lower.as_slice() <= x && x <= self.upper.as_slice()
    }
}

/// Next assignment in lexicographic order, `None` after the last one.
pub fn successor(x: &[usize], domains: &[usize]) -> Option<Vec<usize>> {
    let mut y = x.to_vec();
    for i in (0..y.len()).rev() {
        if y[i] + 1 < domains[i] {
            y[i] += 1;
            return Some(y);
        }
        y[i] = 0;
    }
    None
}

/// Previous assignment in lexicographic order, `None` before the first one.
pub fn predecessor(x: &[usize], domains: &[usize]) -> Option<Vec<usize>> {
    let mut y = x.to_vec();
    for i in (0..y.len()).rev() {
        if y[i] > 0 {
            y[i] -= 1;
            return Some(y);
        }
        y[i] = domains[i] - 1;
    }
    None
}

/// Splits an interval into pairwise disjoint boxes whose union is the interval.
///
/// With `k` the length of the common prefix of the endpoints, the boxes are
/// the endpoints themselves, the assignments that leave the lower endpoint
/// upwards at some position after `k`, those strictly between the endpoints
/// at position `k`, and those that leave the upper endpoint downwards at some
/// position after `k`. Empty boxes are omitted.
pub fn decompose_interval(domains: &[usize], iv: &LexInterval) -> Vec<Descriptor> {
    let n = domains.len();
    let (a, b) = (&iv.lower, &iv.upper);
    let fixed = |x: &[usize]| -> Descriptor { x.iter().map(|&v| vec![v]).collect() };
    let k = a.iter().zip(b).take_while(|(x, y)| x == y).count();
    if k == n {
        return vec![fixed(a)];
    }
    let free = |i: usize| -> Vec<usize> { (0..domains[i]).collect() };
    let boxed = |prefix: &[usize], r: usize, values: Vec<usize>| -> Option<Descriptor> {
        if values.is_empty() {
            return None;
        }
        let mut d: Descriptor = prefix[..r].iter().map(|&v| vec![v]).collect();
        d.push(values);
        d.extend((r + 1..n).map(free));
        Some(d)
    };
    let mut out = vec![fixed(a)];
    for r in (k + 1..n).rev() {
        out.extend(boxed(a, r, (a[r] + 1..domains[r]).collect()));
    }
    out.extend(boxed(a, k, (a[k] + 1..b[k]).collect()));
    for r in k + 1..n {
        out.extend(boxed(b, r, (0..b[r]).collect()));
    }
    out.push(fixed(b));
    out
}

/// Sorts and merges intervals that overlap or touch.
pub fn union_intervals(domains: &[usize], mut intervals: Vec<LexInterval>) -> Vec<LexInterval> {
    intervals.sort_by(|x, y| x.lower.cmp(&y.lower));
    let mut out: Vec<LexInterval> = Vec::with_capacity(intervals.len());
    for iv in intervals {
        if let Some(last) = out.last_mut() {
            let touches = match successor(&last.upper, domains) {
                None => true,
                Some(next) => iv.lower <= next,
            };
            if touches {
                if iv.upper > last.upper {
                    last.upper = iv.upper;
                }
                continue;
            }
        }
        out.push(iv);
    }
    out
}

/// The gaps of a merged, sorted interval list within the whole space.
pub fn complement_intervals(domains: &[usize], merged: &[LexInterval]) -> Vec<LexInterval> {
    let first = vec![0; domains.len()];
    let last: Vec<usize> = domains.iter().map(|&d| d - 1).collect();
    let mut out = Vec::new();
    let mut start = Some(first);
    for iv in merged {
        if let Some(s) = start.take() {
            if s < iv.lower {
                let end = predecessor(&iv.lower, domains).expect("lower above start");
                out.push(LexInterval { lower: s, upper: end });
            }
        }
        start = successor(&iv.upper, domains);
    }
    if let Some(s) = start {
        out.push(LexInterval { lower: s, upper: last });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::next_assignment;

    fn expand(d: &Descriptor) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for values in d {
            out = out
                .into_iter()
                .flat_map(|p: Vec<usize>| {
                    values.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn single_point() {
        let iv = LexInterval::new(&[2, 3], vec![1, 2], vec![1, 2]).unwrap();
        assert_eq!(decompose_interval(&[2, 3], &iv), vec![vec![vec![1], vec![2]]]);
    }

    #[test]
    fn small_interval_union() {
        let iv = LexInterval::new(&[2, 2], vec![0, 0], vec![1, 0]).unwrap();
        let mut pts: Vec<Vec<usize>> = decompose_interval(&[2, 2], &iv).iter().flat_map(expand).collect();
        pts.sort();
        assert_eq!(pts, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn full_space() {
        let domains = [3, 2, 3];
        let iv = LexInterval::new(&domains, vec![0, 0, 0], vec![2, 1, 2]).unwrap();
        let mut pts: Vec<Vec<usize>> = decompose_interval(&domains, &iv).iter().flat_map(expand).collect();
        pts.sort();
        let mut all = Vec::new();
        let mut x = vec![0; 3];
        loop {
            all.push(x.clone());
            if !next_assignment(&mut x, &domains) {
                break;
            }
        }
        assert_eq!(pts, all);
    }

    #[test]
    fn successor_and_predecessor() {
        assert_eq!(successor(&[0, 1], &[2, 2]), Some(vec![1, 0]));
        assert_eq!(successor(&[1, 1], &[2, 2]), None);
        assert_eq!(predecessor(&[1, 0], &[2, 2]), Some(vec![0, 1]));
        assert_eq!(predecessor(&[0, 0], &[2, 2]), None);
    }

    #[test]
    fn union_and_complement() {
        let d = [2, 2];
        let ivs = vec![
            LexInterval { lower: vec![1, 0], upper: vec![1, 0] },
            LexInterval { lower: vec![0, 0], upper: vec![0, 0] },
            LexInterval { lower: vec![0, 1], upper: vec![0, 1] },
        ];
        let merged = union_intervals(&d, ivs);
        assert_eq!(merged, vec![LexInterval { lower: vec![0, 0], upper: vec![1, 0] }]);
        assert_eq!(complement_intervals(&d, &merged), vec![LexInterval { lower: vec![1, 1], upper: vec![1, 1] }]);
        assert_eq!(complement_intervals(&d, &[]).len(), 1);
    }
}
