//! Line-oriented text format for VCSP and NOC instances.
//!
//! ```text
//! # comment
//! vcsp 3
//! dom 1 2
//! dom 2 2
//! dom 3 1
//! unary 1 0 5
//! binary 1 2 0 0 2
//! ```
//!
//! Variables are 1-based, values 0-based, and costs are integers, `p/q` or
//! `inf`. NOC files start with `noc <n>`, reuse `dom`, and describe each set
//! with `set <id> (<i>,<a>) ...` and `fn <id> <f0> ... <fs>`.

use std::collections::HashMap;
use std::fmt::Write;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::instance::VcspInstance;
use crate::noc::NocInstance;

#[derive(Clone, Debug)]
pub enum InstanceFile {
    Vcsp(VcspInstance),
    Noc(NocInstance),
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

struct Lines<'a> {
    rows: Vec<(usize, Vec<&'a str>)>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let rows = text
            .lines()
            .enumerate()
            .filter_map(|(k, raw)| {
                let body = raw.split('#').next().unwrap_or("");
                let toks: Vec<&str> = body.split_whitespace().collect();
                (!toks.is_empty()).then_some((k + 1, toks))
            })
            .collect();
        Lines { rows }
    }
}

fn num(line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| err(line, format!("expected {what}, found `{tok}`")))
}

fn var(line: usize, tok: &str, n: usize) -> Result<usize> {
    let i = num(line, tok, "a variable index")?;
    if i == 0 || i > n {
        return Err(err(line, format!("variable {i} outside 1..={n}")));
    }
    Ok(i - 1)
}

fn cost(line: usize, tok: &str) -> Result<Cost> {
    tok.parse().map_err(|e: Error| err(line, e.to_string()))
}

fn arity(line: usize, toks: &[&str], expect: usize) -> Result<()> {
    if toks.len() != expect {
        return Err(err(line, format!("`{}` takes {} fields, found {}", toks[0], expect - 1, toks.len() - 1)));
    }
    Ok(())
}

// Reads the header and all `dom` lines; returns the domains and the
// remaining rows.
fn header<'a>(lines: &'a Lines<'a>, keyword: &str) -> Result<(Vec<usize>, Vec<&'a (usize, Vec<&'a str>)>)> {
    let Some((first, rest)) = lines.rows.split_first() else {
        return Err(err(1, format!("missing `{keyword} <n>` header")));
    };
    let (line, toks) = first;
    if toks[0] != keyword {
        return Err(err(*line, format!("expected `{keyword} <n>` header, found `{}`", toks[0])));
    }
    arity(*line, toks, 2)?;
    let n = num(*line, toks[1], "a variable count")?;
    let mut domains: Vec<Option<usize>> = vec![None; n];
    let mut others = Vec::new();
    for row in rest {
        let (line, toks) = row;
        if toks[0] != "dom" {
            others.push(row);
            continue;
        }
        arity(*line, toks, 3)?;
        let i = var(*line, toks[1], n)?;
        let d = num(*line, toks[2], "a domain size")?;
        if d == 0 {
            return Err(err(*line, format!("variable {} has an empty domain", i + 1)));
        }
        match domains[i] {
            Some(old) if old != d => return Err(err(*line, format!("variable {} declared with sizes {old} and {d}", i + 1))),
            _ => domains[i] = Some(d),
        }
    }
    let domains = domains
        .into_iter()
        .enumerate()
        .map(|(i, d)| d.ok_or_else(|| err(*line, format!("variable {} has no `dom` line", i + 1))))
        .collect::<Result<_>>()?;
    Ok((domains, others))
}

fn value(line: usize, tok: &str, i: usize, domains: &[usize]) -> Result<usize> {
    let a = num(line, tok, "a value index")?;
    if a >= domains[i] {
        return Err(err(line, format!("value {a} outside the domain of variable {}", i + 1)));
    }
    Ok(a)
}

/// Parses either kind of file, dispatching on the header keyword.
pub fn parse(text: &str) -> Result<InstanceFile> {
    let lines = Lines::new(text);
    match lines.rows.first().map(|(_, t)| t[0]) {
        Some("noc") => parse_noc(text).map(InstanceFile::Noc),
        _ => parse_vcsp(text).map(InstanceFile::Vcsp),
    }
}

pub fn parse_vcsp(text: &str) -> Result<VcspInstance> {
    let lines = Lines::new(text);
    let (domains, rows) = header(&lines, "vcsp")?;
    let mut inst = VcspInstance::new(domains.clone()).map_err(|e| err(1, e.to_string()))?;
    let mut seen: HashMap<(usize, usize, usize, usize), Cost> = HashMap::new();
    for (line, toks) in rows {
        let line = *line;
        let (key, c) = match toks[0] {
            "unary" => {
                arity(line, toks, 4)?;
                let i = var(line, toks[1], domains.len())?;
                let a = value(line, toks[2], i, &domains)?;
                ((i, i, a, a), cost(line, toks[3])?)
            }
            "binary" => {
                arity(line, toks, 6)?;
                let i = var(line, toks[1], domains.len())?;
                let j = var(line, toks[2], domains.len())?;
                if i == j {
                    return Err(err(line, format!("binary scope repeats variable {}", i + 1)));
                }
                let a = value(line, toks[3], i, &domains)?;
                let b = value(line, toks[4], j, &domains)?;
                let key = if i < j { (i, j, a, b) } else { (j, i, b, a) };
                (key, cost(line, toks[5])?)
            }
            "vcsp" | "noc" => return Err(err(line, "repeated header")),
            other => return Err(err(line, format!("unknown directive `{other}`"))),
        };
        if let Some(old) = seen.get(&key) {
            if *old != c {
                return Err(err(line, format!("conflicting costs {old} and {c} for the same entry")));
            }
            continue;
        }
        let (i, j, a, b) = key;
        if i == j {
            inst.set_unary(i, a, c.clone())
        } else {
            inst.set_binary(i, j, a, b, c.clone())
        }
        .map_err(|e| err(line, e.to_string()))?;
        seen.insert(key, c);
    }
    Ok(inst)
}

fn pairs(line: usize, toks: &[&str], domains: &[usize]) -> Result<Vec<(usize, usize)>> {
    let joined: String = toks.concat();
    let mut out = Vec::new();
    let mut rest = joined.as_str();
    while !rest.is_empty() {
        let bad = || err(line, format!("expected `(<i>,<a>)` near `{rest}`"));
        let inner = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = inner.find(')').ok_or_else(bad)?;
        let (i, a) = inner[..close].split_once(',').ok_or_else(bad)?;
        let i = var(line, i, domains.len())?;
        out.push((i, value(line, a, i, domains)?));
        rest = &inner[close + 1..];
    }
    Ok(out)
}

pub fn parse_noc(text: &str) -> Result<NocInstance> {
    let lines = Lines::new(text);
    let (domains, rows) = header(&lines, "noc")?;
    let mut order: Vec<&str> = Vec::new();
    let mut sets: HashMap<&str, (usize, Vec<(usize, usize)>)> = HashMap::new();
    let mut fns: HashMap<&str, (usize, Vec<Cost>)> = HashMap::new();
    for (line, toks) in rows {
        let line = *line;
        match toks[0] {
            "set" | "fn" if toks.len() < 2 => return Err(err(line, format!("`{}` needs an id", toks[0]))),
            "set" => {
                let id = toks[1];
                if sets.insert(id, (line, pairs(line, &toks[2..], &domains)?)).is_some() {
                    return Err(err(line, format!("set {id} defined twice")));
                }
                order.push(id);
            }
            "fn" => {
                let f = toks[2..].iter().map(|t| cost(line, t)).collect::<Result<Vec<_>>>()?;
                if fns.insert(toks[1], (line, f)).is_some() {
                    return Err(err(line, format!("function for {} given twice", toks[1])));
                }
            }
            "vcsp" | "noc" => return Err(err(line, "repeated header")),
            other => return Err(err(line, format!("unknown directive `{other}`"))),
        }
    }
    if let Some((id, (line, _))) = fns.iter().find(|(id, _)| !sets.contains_key(*id)) {
        return Err(err(*line, format!("function for unknown set {id}")));
    }
    let mut inst = NocInstance::new(domains).map_err(|e| err(1, e.to_string()))?;
    for id in order {
        let (line, members) = sets.remove(id).expect("recorded set");
        let (_, f) = fns.remove(id).ok_or_else(|| err(line, format!("set {id} has no `fn` line")))?;
        inst.add_set(id, members, f).map_err(|e| err(line, e.to_string()))?;
    }
    Ok(inst)
}

/// Canonical text: header, domains, then non-zero unary and binary entries
/// in index order.
pub fn serialize_vcsp(inst: &VcspInstance) -> String {
    let n = inst.num_vars();
    let mut s = format!("vcsp {n}\n");
    for (i, d) in inst.domains().iter().enumerate() {
        let _ = writeln!(s, "dom {} {d}", i + 1);
    }
    for i in 0..n {
        for a in 0..inst.domain_size(i) {
            let c = inst.unary(i, a);
            if !c.is_zero() {
                let _ = writeln!(s, "unary {} {a} {c}", i + 1);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for a in 0..inst.domain_size(i) {
                for b in 0..inst.domain_size(j) {
                    let c = inst.binary(i, j, a, b);
                    if !c.is_zero() {
                        let _ = writeln!(s, "binary {} {} {a} {b} {c}", i + 1, j + 1);
                    }
                }
            }
        }
    }
    s
}

pub fn serialize_noc(inst: &NocInstance) -> String {
    let mut s = format!("noc {}\n", inst.num_vars());
    for (i, d) in inst.domains().iter().enumerate() {
        let _ = writeln!(s, "dom {} {d}", i + 1);
    }
    for k in 0..inst.num_sets() {
        let id = inst.name(k);
        let _ = write!(s, "set {id}");
        for &(i, a) in inst.set(k) {
            let _ = write!(s, " ({},{a})", i + 1);
        }
        let _ = write!(s, "\nfn {id}");
        for c in inst.function(k) {
            let _ = write!(s, " {c}");
        }
        s.push('\n');
    }
    s
}

pub fn serialize(file: &InstanceFile) -> String {
    match file {
        InstanceFile::Vcsp(p) => serialize_vcsp(p),
        InstanceFile::Noc(p) => serialize_noc(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const THREE_VAR: &str = "\
# three variables, two values on the first two
vcsp 3
dom 1 2
dom 2 2
dom 3 1
binary 1 2 0 0 2
binary 1 3 0 0 1
binary 2 3 0 0 1
binary 2 1 1 1 1
";

    #[test]
    fn round_trip() {
        let p = parse_vcsp(THREE_VAR).unwrap();
        assert_eq!(p.binary(0, 1, 1, 1), &Cost::from_int(1));
        let text = serialize_vcsp(&p);
        assert_eq!(parse_vcsp(&text).unwrap(), p);
        assert_eq!(serialize_vcsp(&parse_vcsp(&text).unwrap()), text);
    }

    #[test]
    fn empty_instance() {
        let p = parse_vcsp("vcsp 0\n").unwrap();
        assert_eq!(p.num_vars(), 0);
    }

    #[test]
    fn rejects_repeated_scope_variable() {
        let e = parse_vcsp("vcsp 1\ndom 1 1\nbinary 1 1 0 0 3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn duplicate_entries() {
        let ok = "vcsp 2\ndom 1 2\ndom 2 2\nbinary 1 2 0 1 3\nbinary 2 1 1 0 3\n";
        assert!(parse_vcsp(ok).is_ok());
        let bad = "vcsp 2\ndom 1 2\ndom 2 2\nbinary 1 2 0 1 3\nbinary 2 1 1 0 1/2\n";
        assert!(matches!(parse_vcsp(bad).unwrap_err(), Error::Parse { line: 5, .. }));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(parse_vcsp("vcsp 1\ndom 1 2\nunary 1 2 0\n").unwrap_err(), Error::Parse { line: 3, .. }));
        assert!(matches!(parse_vcsp("vcsp 1\n\ndom 1 2\nunary 1 0 x\n").unwrap_err(), Error::Parse { line: 4, .. }));
        assert!(matches!(parse_vcsp("vcsp 2\ndom 1 2\n").unwrap_err(), Error::Parse { .. }));
        assert!(matches!(parse_vcsp("dom 1 2\n").unwrap_err(), Error::Parse { line: 1, .. }));
    }

    #[test]
    fn noc_round_trip() {
        let text = "noc 2\ndom 1 2\ndom 2 2\nset A (1,0) (2,0)\nfn A 0 0 5\nset B (1,0)\nfn B 0 1/2\n";
        let p = parse_noc(text).unwrap();
        assert_eq!(p.num_sets(), 2);
        assert_eq!(p.function(1), &[Cost::zero(), Cost::ratio(1, 2).unwrap()]);
        assert_eq!(serialize_noc(&p), text);
        assert!(matches!(parse(text).unwrap(), InstanceFile::Noc(_)));
    }

    #[test]
    fn noc_set_without_function() {
        assert!(matches!(parse_noc("noc 1\ndom 1 1\nset A (1,0)\n").unwrap_err(), Error::Parse { line: 3, .. }));
    }
}
