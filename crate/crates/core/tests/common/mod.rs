//! Independent oracles and instance generators shared by the integration tests.
//!
//! Nothing here calls the solvers under test; checks are written from the
//! definitions.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use vcsp_core::models::{gen_random_jwp, RandomJwpParams};
use vcsp_core::noc::NocInstance;
use vcsp_core::{Cost, VcspInstance};

pub fn c(v: u64) -> Cost {
    Cost::from_int(v)
}

/// Joint-winner property straight from its definition: in every triangle
/// each cost is at least the smaller of the other two.
pub fn jwp_by_definition(p: &VcspInstance) -> bool {
    triangles(p).all(|[x, y, z]| x >= y.clone().min(z.clone()) && y >= x.clone().min(z.clone()) && z >= x.min(y))
}

/// Every triangle's two smallest costs are equal.
pub fn isosceles_everywhere(p: &VcspInstance) -> bool {
    triangles(p).all(|mut t| {
        t.sort();
        t[0] == t[1]
    })
}

pub fn triangles(p: &VcspInstance) -> impl Iterator<Item = [Cost; 3]> + '_ {
    let n = p.num_vars();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for a in 0..p.domain_size(i) {
                    for b in 0..p.domain_size(j) {
                        for cc in 0..p.domain_size(k) {
                            out.push([p.binary(i, j, a, b).clone(), p.binary(i, k, a, cc).clone(), p.binary(j, k, b, cc).clone()]);
                        }
                    }
                }
            }
        }
    }
    out.into_iter()
}

/// Every assignment of `domains`, lexicographic.
pub fn all_assignments(domains: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in domains {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..d).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

/// Sum of unary and binary costs, written out independently of `evaluate`.
pub fn cost_of(p: &VcspInstance, x: &[usize]) -> Cost {
    let n = p.num_vars();
    let mut total = Cost::zero();
    for i in 0..n {
        total += p.unary(i, x[i]);
        for j in i + 1..n {
            total += p.binary(i, j, x[i], x[j]);
        }
    }
    total
}

pub fn exhaustive_min(p: &VcspInstance) -> Cost {
    all_assignments(p.domains()).iter().map(|x| cost_of(p, x)).min().unwrap_or_else(Cost::zero)
}

/// Random instance over `{0, ..., max}` plus occasional `inf`; `inf_rate` is
/// the chance of an infinite entry.
pub fn random_instance(rng: &mut ChaCha8Rng, n: usize, d: usize, max: u64, inf_rate: f64) -> VcspInstance {
    let mut p = VcspInstance::uniform(n, d).unwrap();
    let draw = |rng: &mut ChaCha8Rng| if rng.gen_bool(inf_rate) { Cost::Infinite } else { c(rng.gen_range(0..=max)) };
    for i in 0..n {
        for a in 0..d {
            p.set_unary(i, a, draw(rng)).unwrap();
            for j in i + 1..n {
                for b in 0..d {
                    p.set_binary(i, j, a, b, draw(rng)).unwrap();
                }
            }
        }
    }
    p
}

/// Random strictly increasing positive levels, sometimes ending in `inf`.
pub fn random_levels(rng: &mut ChaCha8Rng) -> Vec<Cost> {
    let k = rng.gen_range(1..=4);
    let mut v = 0;
    let mut levels: Vec<Cost> = (0..k)
        .map(|_| {
            v += rng.gen_range(1..=3);
            c(v)
        })
        .collect();
    if rng.gen_bool(0.2) {
        levels.push(Cost::Infinite);
    }
    levels
}

/// A random joint-winner instance with `n <= max_n`, `d <= max_d`, drawn
/// either from the laminar generator or by rejection from uniform noise.
pub fn random_jwp(rng: &mut ChaCha8Rng, max_n: usize, max_d: usize, plants: bool) -> VcspInstance {
    loop {
        let n = rng.gen_range(1..=max_n);
        let d = rng.gen_range(1..=max_d);
        if !plants && rng.gen_bool(0.25) {
            let p = random_instance(rng, n, d, 2, 0.1);
            if jwp_by_definition(&p) {
                return p;
            }
            continue;
        }
        let max_plants = if n >= 2 && d >= 2 { (n * (d / 2)) / 2 } else { 0 };
        let k = if plants {
            if max_plants == 0 {
                continue;
            }
            rng.gen_range(1..=max_plants.min(3))
        } else {
            0
        };
        let params = RandomJwpParams { n, d, levels: random_levels(rng), plants: k, seed: rng.gen() };
        if let Ok(r) = gen_random_jwp(&params) {
            return r.instance;
        }
    }
}

/// Random laminar NOC instance with at most `max_sets` sets.
pub fn random_noc(rng: &mut ChaCha8Rng, n: usize, d: usize, max_sets: usize) -> NocInstance {
    let mut inst = NocInstance::new(vec![d; n]).unwrap();
    let mut vertices: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..d).map(move |a| (i, a))).collect();
    vertices.shuffle(rng);
    let mut sets = Vec::new();
    split(rng, vertices, &mut sets, max_sets);
    for (k, set) in sets.into_iter().enumerate() {
        let mut vars: Vec<usize> = set.iter().map(|&(i, _)| i).collect();
        vars.sort_unstable();
        vars.dedup();
        let f = random_convex(rng, vars.len());
        inst.add_set(format!("S{k}"), set, f).unwrap();
    }
    inst
}

fn split(rng: &mut ChaCha8Rng, mut pool: Vec<(usize, usize)>, sets: &mut Vec<Vec<(usize, usize)>>, max_sets: usize) {
    if pool.is_empty() || sets.len() >= max_sets {
        return;
    }
    pool.shuffle(rng);
    let keep = rng.gen_range(1..=pool.len());
    let set: Vec<(usize, usize)> = pool[..keep].to_vec();
    sets.push(set.clone());
    if set.len() > 1 {
        let cut = rng.gen_range(1..set.len());
        split(rng, set[..cut].to_vec(), sets, max_sets);
        split(rng, set[cut..].to_vec(), sets, max_sets);
    }
    split(rng, pool[keep..].to_vec(), sets, max_sets);
}

/// Non-negative, non-decreasing, convex `f(0..=s)`, sometimes with an
/// infinite tail.
pub fn random_convex(rng: &mut ChaCha8Rng, s: usize) -> Vec<Cost> {
    let mut f = vec![c(rng.gen_range(0..=2))];
    let mut step = 0;
    let cutoff = if rng.gen_bool(0.2) { rng.gen_range(1..=s.max(1)) } else { usize::MAX };
    for m in 1..=s {
        if m >= cutoff {
            f.push(Cost::Infinite);
            continue;
        }
        step += rng.gen_range(0..=2);
        let next = &f[m - 1] + &c(step);
        f.push(next);
    }
    f
}

/// `sum_i f_i(N(x, C_i))` written from the definition.
pub fn noc_objective(inst: &NocInstance, x: &[usize]) -> Cost {
    (0..inst.num_sets())
        .map(|k| {
            let count = (0..inst.num_vars()).filter(|&i| inst.set(k).contains(&(i, x[i]))).count();
            inst.function(k)[count].clone()
        })
        .sum()
}

/// Whether `set` is independent in the graph given by `adjacent`.
pub fn independent(set: &[usize], adjacent: impl Fn(usize, usize) -> bool) -> bool {
    set.iter().enumerate().all(|(k, &u)| set[k + 1..].iter().all(|&w| !adjacent(u, w)))
}

/// Size of a maximum independent set, by subset enumeration.
pub fn max_independent_set(n: usize, edges: &[(usize, usize)]) -> usize {
    (0u32..1 << n)
        .filter(|&mask| edges.iter().all(|&(u, v)| mask & (1 << u) == 0 || mask & (1 << v) == 0))
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
