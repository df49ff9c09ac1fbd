//! The `vcsp` command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::flow::build_network;
use crate::format::{parse, serialize_noc, serialize_vcsp, InstanceFile};
use crate::graph::SimpleGraph;
use crate::instance::VcspInstance;
use crate::jwp::{check_jwp, eliminate_z, extract_clique_hierarchy, find_z_configurations};
use crate::microstructure::{build_microstructure, check_btp, find_induced_substructure, named_pattern, Mode};
use crate::models::{
    gen_btp_independent_set, gen_courses, gen_office, gen_random_jwp, gen_scheduling, gen_softalldiff, CoursesSpec,
    OfficeSpec, RandomJwpParams, SchedulingSpec, SoftAllDiffVariant,
};
use crate::noc::validate_noc;
use crate::solve::{is_precondition_error, solve_file, Method, SolveOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_INAPPLICABLE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "vcsp", version, about = "Recognise and solve tractable binary valued CSPs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

// Parsed once per run, so variant size does not matter.
#[allow(clippy::large_enum_variant)]
#[derive(Subcommand, Debug)]
enum Command {
    /// Classify an instance: joint-winner, Z-freeness, broken triangles, patterns.
    Check {
        file: PathBuf,
        /// Variable ordering for the broken-triangle check, 1-based, comma separated.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
        /// Patterns to search for in the crisp micro-structure.
        #[arg(long, value_delimiter = ',')]
        patterns: Vec<String>,
    },
    /// Find an optimal assignment.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Largest search space brute force may enumerate.
        #[arg(long, default_value_t = crate::oracle::DEFAULT_BUDGET)]
        max_brute: u128,
    },
    /// Write a generated instance.
    Generate(GenerateArgs),
    /// Print the micro-structure or flow network in DOT.
    ExportDot {
        file: PathBuf,
        /// Micro-structure complement (forbidden pairs) instead of allowed pairs.
        #[arg(long, conflicts_with = "network")]
        complement: bool,
        /// Min-cost flow network of a joint-winner instance.
        #[arg(long)]
        network: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Auto,
    Flow,
    Noc,
    Brute,
    Mwis,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Flow => Method::Flow,
            MethodArg::Noc => Method::Noc,
            MethodArg::Brute => Method::Brute,
            MethodArg::Mwis => Method::Mwis,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Model {
    Softalldiff,
    Scheduling,
    Btp,
    RandomJwp,
    Office,
    Courses,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(value_enum)]
    model: Model,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Variables (softalldiff, random-jwp) or graph vertices (btp).
    #[arg(long)]
    n: Option<usize>,
    /// Domain size (softalldiff, random-jwp).
    #[arg(long)]
    d: Option<usize>,
    /// softalldiff: give every variable the single value 0.
    #[arg(long)]
    shared: bool,
    /// softalldiff: use the variable-based encoding.
    #[arg(long)]
    variable_based: bool,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    machines: Option<usize>,
    /// scheduling: job-major processing times; random in 1..=9 if omitted.
    #[arg(long, value_delimiter = ',')]
    lengths: Option<Vec<String>>,
    /// btp: edges as `u-v`, 1-based; random if omitted.
    #[arg(long, value_delimiter = ',')]
    edges: Option<Vec<String>>,
    /// btp: edge probability for random graphs.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// random-jwp: nested cost levels.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    levels: Vec<String>,
    /// random-jwp: planted Z-configurations.
    #[arg(long, default_value_t = 0)]
    plants: usize,
    /// office: number of people.
    #[arg(long)]
    staff: Option<usize>,
    /// office: capacity of each office.
    #[arg(long, value_delimiter = ',')]
    capacities: Vec<usize>,
    /// office: groups as `1+2`, 1-based.
    #[arg(long, value_delimiter = ',')]
    groups: Vec<String>,
    /// courses: time slot of each course.
    #[arg(long, value_delimiter = ',')]
    slots: Vec<usize>,
    #[arg(long)]
    teachers: Option<usize>,
    /// courses: courses per teacher before overtime.
    #[arg(long, default_value_t = 1)]
    threshold: usize,
    /// courses: overtime cost per extra course.
    #[arg(long, default_value = "1")]
    rate: String,
}

/// Runs the command line with `args` (including the program name) and
/// returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Check { file, order, patterns } => cmd_check(&file, order, &patterns, out),
        Command::Solve { file, method, max_brute } => cmd_solve(&file, method.into(), max_brute, out),
        Command::Generate(g) => cmd_generate(&g, out),
        Command::ExportDot { file, complement, network, output } => {
            cmd_export_dot(&file, complement, network, output.as_deref(), out)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        e if is_precondition_error(e) => EXIT_INAPPLICABLE,
        _ => EXIT_USAGE,
    }
}

fn load(path: &Path) -> Result<InstanceFile> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn io(e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("write failed: {e}"))
}

fn cmd_check(path: &Path, order: Option<Vec<usize>>, patterns: &[String], out: &mut dyn Write) -> Result<i32> {
    let inst = match load(path)? {
        InstanceFile::Vcsp(p) => p,
        InstanceFile::Noc(p) => {
            let v = validate_noc(&p);
            writeln!(out, "noc: {}", yes_no(v.is_none())).map_err(io)?;
            if let Some(v) = v {
                writeln!(out, "noc-violation: {v}").map_err(io)?;
            }
            return Ok(EXIT_OK);
        }
    };
    let n = inst.num_vars();
    let w = check_jwp(&inst);
    writeln!(out, "jwp: {}", yes_no(w.is_none())).map_err(io)?;
    if let Some(w) = w {
        writeln!(
            out,
            "jwp-witness: {}={} {}={} {}={} costs {} {} {}",
            w.i + 1,
            w.a,
            w.j + 1,
            w.b,
            w.k + 1,
            w.c,
            w.cost_ij,
            w.cost_ik,
            w.cost_jk
        )
        .map_err(io)?;
    }
    let zs = find_z_configurations(&inst);
    writeln!(out, "zfree: {}", yes_no(zs.is_empty())).map_err(io)?;
    if let Some(z) = zs.first() {
        writeln!(out, "z-configuration: vars {} {} values {},{} x {},{}", z.i + 1, z.j + 1, z.a, z.b, z.c, z.d)
            .map_err(io)?;
    }
    let ordering: Vec<usize> = match order {
        Some(o) => o.iter().map(|&v| v.checked_sub(1).unwrap_or(usize::MAX)).collect(),
        None => (0..n).collect(),
    };
    let label: Vec<String> = ordering.iter().map(|v| v.wrapping_add(1).to_string()).collect();
    let btp = check_btp(&inst, &ordering).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    writeln!(out, "btp({}): {}", label.join(","), yes_no(btp.is_none())).map_err(io)?;
    for name in patterns {
        let p = named_pattern(name).ok_or_else(|| Error::InvalidArgument(format!("unknown pattern `{name}`")))?;
        let g = build_microstructure(&inst, p.host() == Mode::Complement, true);
        match find_induced_substructure(&g, &p)? {
            Some(map) => {
                let hits: Vec<String> =
                    map.iter().map(|&v| g.vertices()[v]).map(|v| format!("{}={}", v.var + 1, v.value)).collect();
                writeln!(out, "pattern {name}: yes {}", hits.join(" ")).map_err(io)?;
            }
            None => writeln!(out, "pattern {name}: no").map_err(io)?,
        }
    }
    Ok(EXIT_OK)
}

fn cmd_solve(path: &Path, method: Method, max_brute: u128, out: &mut dyn Write) -> Result<i32> {
    let file = load(path)?;
    let r = solve_file(&file, &SolveOptions { method, max_brute, ..Default::default() })?;
    let values: Vec<String> = r.assignment.iter().enumerate().map(|(i, a)| format!("{}={a}", i + 1)).collect();
    writeln!(out, "cost: {}", r.cost).map_err(io)?;
    writeln!(out, "assignment: {}", values.join(" ")).map_err(io)?;
    writeln!(out, "method: {}", r.method).map_err(io)?;
    Ok(if r.cost.is_infinite() { EXIT_INFEASIBLE } else { EXIT_OK })
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", p.display())))?,
        None => out.write_all(text.as_bytes()).map_err(io)?,
    }
    Ok(EXIT_OK)
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidArgument(format!("--{flag} is required for this model")))
}

fn costs(tokens: &[String]) -> Result<Vec<Cost>> {
    tokens.iter().map(|t| t.parse()).collect()
}

fn cmd_generate(g: &GenerateArgs, out: &mut dyn Write) -> Result<i32> {
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let text = match g.model {
        Model::Softalldiff => {
            let n = need(g.n, "n")?;
            let labels: Vec<Vec<u32>> = if g.shared {
                vec![vec![0]; n]
            } else {
                let d = g.d.unwrap_or(n);
                let pool = (d as u32 * 2).max(1);
                (0..n)
                    .map(|_| {
                        let mut vals: Vec<u32> = rand::seq::index::sample(&mut rng, pool as usize, d.min(pool as usize))
                            .into_iter()
                            .map(|v| v as u32)
                            .collect();
                        vals.sort_unstable();
                        vals
                    })
                    .collect()
            };
            let variant = if g.variable_based { SoftAllDiffVariant::VariableBased } else { SoftAllDiffVariant::Graph };
            serialize_vcsp(&gen_softalldiff(&labels, variant)?)
        }
        Model::Scheduling => {
            let (n, m) = (need(g.jobs, "jobs")?, need(g.machines, "machines")?);
            let flat = match &g.lengths {
                Some(t) => costs(t)?,
                None => (0..n * m).map(|_| Cost::from_int(rng.gen_range(1..=9))).collect(),
            };
            if flat.len() != n * m {
                return Err(Error::InvalidArgument(format!("--lengths needs {} values", n * m)));
            }
            let lengths = flat.chunks(m.max(1)).map(<[Cost]>::to_vec).collect();
            serialize_vcsp(&gen_scheduling(&SchedulingSpec { lengths })?)
        }
        Model::Btp => {
            let n = need(g.n, "n")?;
            let mut graph = SimpleGraph::new(n);
            match &g.edges {
                Some(edges) => {
                    for e in edges {
                        let (u, v) = parse_pair(e, '-', n)?;
                        graph.add_edge(u, v);
                    }
                }
                None => {
                    let p = g.density.clamp(0.0, 1.0);
                    for u in 0..n {
                        for v in u + 1..n {
                            if rng.gen_bool(p) {
                                graph.add_edge(u, v);
                            }
                        }
                    }
                }
            }
            serialize_vcsp(&gen_btp_independent_set(&graph)?)
        }
        Model::RandomJwp => {
            let params = RandomJwpParams {
                n: need(g.n, "n")?,
                d: need(g.d, "d")?,
                levels: costs(&g.levels)?,
                plants: g.plants,
                seed: g.seed,
            };
            serialize_vcsp(&gen_random_jwp(&params)?.instance)
        }
        Model::Office => {
            let staff = need(g.staff, "staff")?;
            let groups = g
                .groups
                .iter()
                .map(|grp| grp.split('+').map(|t| parse_index(t, staff)).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?;
            let spec = OfficeSpec { staff, capacities: g.capacities.clone(), groups, preferences: Vec::new() };
            serialize_noc(&gen_office(&spec)?)
        }
        Model::Courses => {
            let teachers = need(g.teachers, "teachers")?;
            let rate: Cost = g.rate.parse()?;
            let spec = CoursesSpec {
                slots: g.slots.clone(),
                teachers,
                threshold: vec![g.threshold; teachers],
                rate: vec![rate; teachers],
                preferences: Vec::new(),
            };
            serialize_noc(&gen_courses(&spec)?)
        }
    };
    emit(&text, g.output.as_deref(), out)
}

fn parse_index(t: &str, n: usize) -> Result<usize> {
    match t.trim().parse::<usize>() {
        Ok(i) if (1..=n).contains(&i) => Ok(i - 1),
        _ => Err(Error::InvalidArgument(format!("`{t}` is not an index in 1..={n}"))),
    }
}

fn parse_pair(t: &str, sep: char, n: usize) -> Result<(usize, usize)> {
    let (a, b) = t.split_once(sep).ok_or_else(|| Error::InvalidArgument(format!("expected `u{sep}v`, got `{t}`")))?;
    Ok((parse_index(a, n)?, parse_index(b, n)?))
}

fn cmd_export_dot(path: &Path, complement: bool, network: bool, output: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let inst: VcspInstance = match load(path)? {
        InstanceFile::Vcsp(p) => p,
        InstanceFile::Noc(_) => return Err(Error::UnsupportedPattern("DOT export needs a VCSP file".into())),
    };
    let text = if network {
        if let Some(w) = check_jwp(&inst) {
            return Err(Error::JwpPreconditionViolated(format!("variables {}, {}, {}", w.i + 1, w.j + 1, w.k + 1)));
        }
        let (reduced, _) = eliminate_z(&inst)?;
        let h = extract_clique_hierarchy(&reduced)?;
        build_network(&reduced, &h)?.to_dot()
    } else {
        build_microstructure(&inst, complement, false).to_dot()
    };
    emit(&text, output, out)
}

