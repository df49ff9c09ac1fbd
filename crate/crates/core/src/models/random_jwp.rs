use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::instance::VcspInstance;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomJwpParams {
    pub n: usize,
    pub d: usize,
    /// Strictly increasing positive costs; nested sets at depth `t` get `levels[t]`.
    pub levels: Vec<Cost>,
    /// Number of Z-configurations to plant.
    pub plants: usize,
    pub seed: u64,
}

/// A member of the generated laminar family, as flat vertex ids
/// (`offset(var) + value`), with the cost shared by its cross pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlantedSet {
    pub members: Vec<usize>,
    pub level: Cost,
}

#[derive(Clone, Debug)]
pub struct RandomJwp {
    pub instance: VcspInstance,
    pub family: Vec<PlantedSet>,
}

/// Random joint-winner instance built from a laminar family of vertex sets.
///
/// Each binary cost is the level of the deepest set holding both endpoints
/// (0 if none), which is an ultrametric and so free of violating triangles
/// and Z-configurations. Each plant merges two values of one variable and two
/// of another into a single point of the family and gives its 2x2 block a
/// Z-configuration priced at or above that point's deepest shared level.
/// Unary costs are random integers in `0..=3`.
pub fn gen_random_jwp(params: &RandomJwpParams) -> Result<RandomJwp> {
    let RandomJwpParams { n, d, ref levels, plants, seed } = *params;
    if n == 0 || d == 0 {
        return Err(Error::InvalidArgument("n and d must be positive".into()));
    }
    if levels.first().is_some_and(Cost::is_zero) || levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("levels must be positive and strictly increasing".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = n * d;

    // Points of the family; each vertex maps to one, planted blocks share one.
    let mut point_of: Vec<usize> = (0..nv).collect();
    let mut blocks = Vec::new();
    let mut free: Vec<Vec<usize>> = (0..n).map(|_| (0..d).collect()).collect();
    for _ in 0..plants {
        let candidates: Vec<usize> = (0..n).filter(|&i| free[i].len() >= 2).collect();
        if candidates.len() < 2 {
            return Err(Error::InvalidArgument(format!("cannot plant {plants} Z-configurations with n={n}, d={d}")));
        }
        let pair: Vec<usize> = candidates.choose_multiple(&mut rng, 2).copied().collect();
        let (i, j) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        let mut take = |v: usize, rng: &mut ChaCha8Rng| {
            free[v].shuffle(rng);
            let (x, y) = (free[v].pop().unwrap(), free[v].pop().unwrap());
            (x.min(y), x.max(y))
        };
        let (a, b) = take(i, &mut rng);
        let (c, e) = take(j, &mut rng);
        let p = i * d + a;
        for v in [i * d + b, j * d + c, j * d + e] {
            point_of[v] = p;
        }
        blocks.push((i, a, b, j, c, e));
    }
    let mut points: Vec<usize> = point_of.clone();
    points.sort_unstable();
    points.dedup();

    // chain[p] lists the family sets containing point p, outermost first.
    let mut chain: Vec<Vec<usize>> = vec![Vec::new(); nv];
    let mut sets: Vec<(Vec<usize>, usize)> = Vec::new();
    let mut start = points.clone();
    start.retain(|_| rng.gen_bool(0.9));
    grow(start, 0, false, levels.len(), &mut rng, &mut sets, &mut chain);

    let shared = |p: usize, q: usize| -> Cost {
        let depth = chain[p].iter().zip(&chain[q]).take_while(|(x, y)| x == y).count();
        match depth {
            0 => Cost::zero(),
            t => levels[sets[chain[p][t - 1]].1].clone(),
        }
    };

    let mut inst = VcspInstance::uniform(n, d)?;
    for i in 0..n {
        for a in 0..d {
            inst.set_unary(i, a, Cost::from_int(rng.gen_range(0..=3)))?;
            for j in i + 1..n {
                for b in 0..d {
                    let (p, q) = (point_of[i * d + a], point_of[j * d + b]);
                    if p != q {
                        inst.set_binary(i, j, a, b, shared(p, q))?;
                    }
                }
            }
        }
    }
    for &(i, a, b, j, c, e) in &blocks {
        let p = point_of[i * d + a];
        let lambda = points.iter().filter(|&&q| q != p).map(|&q| shared(p, q)).max().unwrap_or_default();
        let low = &lambda + &Cost::from_int(rng.gen_range(0..=1));
        inst.set_binary(i, j, a, e, low.clone())?;
        for (x, y) in [(a, c), (b, c), (b, e)] {
            inst.set_binary(i, j, x, y, &low + &Cost::from_int(rng.gen_range(1..=3)))?;
        }
    }

    let point_of = &point_of;
    let family = sets
        .iter()
        .map(|(pts, level)| {
            let mut members: Vec<usize> = (0..nv).filter(|&v| pts.contains(&point_of[v])).collect();
            members.sort_unstable();
            PlantedSet { members, level: levels[*level].clone() }
        })
        .collect();
    Ok(RandomJwp { instance: inst, family })
}

// Splits `points` into random parts; some parts become sets at `depth`, and
// every part is split again one level deeper. A part that is itself a set is
// always split into at least two pieces so no set repeats its parent.
fn grow(
    mut points: Vec<usize>,
    depth: usize,
    is_set: bool,
    max_depth: usize,
    rng: &mut ChaCha8Rng,
    sets: &mut Vec<(Vec<usize>, usize)>,
    chain: &mut [Vec<usize>],
) {
    if depth == max_depth || points.len() < 2 {
        return;
    }
    points.shuffle(rng);
    let lo = if is_set { 2 } else { 1 };
    let k = rng.gen_range(lo..=3.max(lo)).min(points.len());
    let mut cuts: Vec<usize> = (1..points.len()).collect();
    cuts.shuffle(rng);
    cuts.truncate(k - 1);
    cuts.sort_unstable();
    let mut parts = Vec::with_capacity(k);
    let mut prev = 0;
    for c in cuts.into_iter().chain([points.len()]) {
        let mut part = points[prev..c].to_vec();
        part.sort_unstable();
        parts.push(part);
        prev = c;
    }
    for part in parts {
        let make = part.len() >= 2 && rng.gen_bool(0.7);
        if make {
            for &p in &part {
                chain[p].push(sets.len());
            }
            sets.push((part.clone(), depth));
        }
        grow(part, depth + 1, make, max_depth, rng, sets, chain);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jwp::{check_jwp, eliminate_z, find_z_configurations};

    fn params(plants: usize, seed: u64) -> RandomJwpParams {
        RandomJwpParams { n: 5, d: 3, levels: vec![Cost::from_int(1), Cost::from_int(2), Cost::from_int(4)], plants, seed }
    }

    #[test]
    fn unplanted_instances_are_jwp_and_z_free() {
        for seed in 0..20 {
            let r = gen_random_jwp(&params(0, seed)).unwrap();
            assert_eq!(check_jwp(&r.instance), None);
            assert!(find_z_configurations(&r.instance).is_empty());
        }
    }

    #[test]
    fn planted_instances_stay_jwp() {
        for seed in 0..20 {
            let r = gen_random_jwp(&params(2, seed)).unwrap();
            assert_eq!(check_jwp(&r.instance), None, "seed {seed}");
            assert!(!find_z_configurations(&r.instance).is_empty(), "seed {seed}");
            let (reduced, _) = eliminate_z(&r.instance).unwrap();
            assert!(find_z_configurations(&reduced).is_empty());
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let a = gen_random_jwp(&params(1, 7)).unwrap();
        let b = gen_random_jwp(&params(1, 7)).unwrap();
        assert_eq!(a.instance, b.instance);
        assert_eq!(a.family, b.family);
    }

    #[test]
    fn bad_levels_rejected() {
        let mut p = params(0, 0);
        p.levels = vec![Cost::from_int(2), Cost::from_int(2)];
        assert!(gen_random_jwp(&p).is_err());
    }
}
