use std::fmt::Write as _;

use serde_json::{json, Value};
use sms_core::brauer::{count_brauer_trees, count_brauer_trees_marked_leaf};
use sms_core::checks::{run_criterion, CRITERIA};
use sms_core::config::{enumerate_with_homs, orbit_decomposition, Configuration};
use sms_core::dynkin::{num_simples, validate_rfs_type, RfsType};
use sms_core::meshcat::QuotientHoms;
use sms_core::mutation::{build_mutation_quiver, nu_orbit_partition, Directions, QuiverOptions};
use sms_core::nakayama::{all_sms, is_sms, mutate_left, mutate_right, NakayamaAlgebra, SerialModule, SmsCandidate};
use sms_core::ztquiver::{automorphisms, quotient, StableTranslationQuiver, ZVertex};

use crate::{CliError, Command, Dir, Dirs, Format};

type Out = Result<String, CliError>;

fn usage(m: impl Into<String>) -> CliError {
    CliError::Usage(m.into())
}

fn pretty(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn only(format: Format, allowed: &[Format], cmd: &str) -> Result<(), CliError> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(usage(format!("{cmd} does not support --format {format:?}").to_lowercase()))
    }
}

fn parse_type(s: &str) -> Result<RfsType, CliError> {
    s.parse().map_err(|e: sms_core::Error| usage(e.to_string()))
}

fn valid_type(s: &str) -> Result<RfsType, CliError> {
    let t = parse_type(s)?;
    let v = validate_rfs_type(&t);
    if !v.valid {
        return Err(usage(format!("invalid RFS type {t}: {}", v.reason)));
    }
    Ok(t)
}

fn parse_algebra(s: &str) -> Result<NakayamaAlgebra, CliError> {
    s.parse().map_err(|e: sms_core::Error| usage(e.to_string()))
}

/// `simples` or `top:length,top:length,...`.
fn parse_sms(alg: &NakayamaAlgebra, s: &str) -> Result<SmsCandidate, CliError> {
    if s == "simples" {
        return Ok(SmsCandidate::new(alg.simples()));
    }
    let mut modules = Vec::new();
    for part in s.split(',') {
        let (t, l) = part.split_once(':').ok_or_else(|| usage(format!("expected top:length, got {part:?}")))?;
        let t: i64 = t.trim().parse().map_err(|_| usage(format!("bad top in {part:?}")))?;
        let l: usize = l.trim().parse().map_err(|_| usage(format!("bad length in {part:?}")))?;
        let m = alg.module(t, l).map_err(|e| usage(e.to_string()))?;
        if alg.is_projective(m) {
            return Err(usage(format!("{m} is projective")));
        }
        modules.push(m);
    }
    let c = SmsCandidate::new(modules);
    if c.len() != s.split(',').count() {
        return Err(usage("repeated module in sms"));
    }
    Ok(c)
}

fn pair(v: ZVertex) -> Value {
    json!([v.p, v.q])
}

fn coords(gamma: &StableTranslationQuiver, c: &Configuration) -> Vec<ZVertex> {
    c.coordinates(gamma)
}

fn coords_text(vs: &[ZVertex]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn module_json(alg: &NakayamaAlgebra, m: SerialModule) -> Value {
    json!({ "top": m.top.to_string(), "length": m.length.to_string(), "column": alg.column(m) })
}

fn module_line(alg: &NakayamaAlgebra, m: SerialModule) -> String {
    format!("{}\t{}\n", m, alg.column(m))
}

pub fn run(cmd: Command, format: Format) -> Out {
    match cmd {
        Command::Classify { rfs_type } => classify(&rfs_type, format),
        Command::Hom(a) => hom(&a.rfs_type, format),
        Command::Enumerate(a) => enumerate(&a.rfs_type, format),
        Command::Orbits(a) => orbits(&a.rfs_type, format),
        Command::Brauer { edges, multiplicity, marked_leaf } => brauer(edges, multiplicity, marked_leaf, format),
        Command::Sms { algebra, list, bound } => sms(&algebra.algebra, list, bound, format),
        Command::Mutate { algebra, sms, at, dir, allow_composite } => mutate(&algebra.algebra, &sms, &at, dir, allow_composite, format),
        Command::Quiver { algebra, start, dir, allow_composite, max_depth } => quiver(&algebra.algebra, &start, dir, allow_composite, max_depth, format),
        Command::Check { only: ids } => check(&ids, format),
    }
}

fn classify(s: &str, format: Format) -> Out {
    only(format, &[Format::Tsv, Format::Json], "classify")?;
    let t = parse_type(s)?;
    let v = validate_rfs_type(&t);
    if format == Format::Json {
        let mut obj = json!({ "schema": 1, "type": t, "valid": v.valid });
        if v.valid {
            obj["family"] = json!(v.family.expect("valid types have a family").to_string());
            obj["simples"] = json!(num_simples(&t)?.to_string());
            obj["r"] = json!(t.r().expect("valid").to_string());
        } else {
            obj["reason"] = json!(v.reason);
        }
        return Ok(pretty(obj));
    }
    if v.valid {
        Ok(format!("valid, family {}, simples={}, r={}\n", v.family.expect("valid types have a family"), num_simples(&t)?, t.r().expect("valid")))
    } else {
        Ok(format!("invalid, {}\n", v.reason))
    }
}

fn hom(s: &str, format: Format) -> Out {
    only(format, &[Format::Tsv, Format::Json], "hom")?;
    let t = valid_type(s)?;
    let gamma = quotient(&t)?;
    let homs = QuotientHoms::compute(&gamma);
    let n = gamma.len();
    if format == Format::Json {
        let dims: Vec<Vec<String>> = (0..n).map(|e| (0..n).map(|f| homs.get(e, f).to_string()).collect()).collect();
        return Ok(pretty(json!({ "schema": 1, "type": t, "vertices": gamma.vertices.iter().map(|&v| pair(v)).collect::<Vec<_>>(), "dims": dims })));
    }
    let mut out = String::from("hom");
    for v in &gamma.vertices {
        let _ = write!(out, "\t{v}");
    }
    out.push('\n');
    for e in 0..n {
        let _ = write!(out, "{}", gamma.vertices[e]);
        for f in 0..n {
            let _ = write!(out, "\t{}", homs.get(e, f));
        }
        out.push('\n');
    }
    Ok(out)
}

struct Enumerated {
    t: RfsType,
    gamma: StableTranslationQuiver,
    configs: Vec<Configuration>,
    group_order: usize,
    orbits: Vec<sms_core::config::Orbit>,
    orbit_of: Vec<usize>,
}

fn enumerated(s: &str) -> Result<Enumerated, CliError> {
    let t = valid_type(s)?;
    let gamma = quotient(&t)?;
    let homs = QuotientHoms::compute(&gamma);
    let configs = enumerate_with_homs(&gamma, &homs)?;
    let auts = automorphisms(&gamma);
    let orbits = orbit_decomposition(&configs, &auts);
    let orbit_of = configs
        .iter()
        .map(|c| {
            let min = auts.iter().map(|a| c.image(a)).min().unwrap_or_else(|| c.clone());
            orbits.iter().position(|o| o.representative == min).expect("every configuration lies in an orbit")
        })
        .collect();
    Ok(Enumerated { t, gamma, configs, group_order: auts.len(), orbits, orbit_of })
}

fn enumerate(s: &str, format: Format) -> Out {
    only(format, &[Format::Tsv, Format::Json], "enumerate")?;
    let en = enumerated(s)?;
    if format == Format::Json {
        let configs: Vec<Value> = en
            .configs
            .iter()
            .zip(&en.orbit_of)
            .map(|(c, &o)| json!({ "vertices": coords(&en.gamma, c).into_iter().map(pair).collect::<Vec<_>>(), "orbit": o.to_string() }))
            .collect();
        let orbits: Vec<Value> = en.orbits.iter().map(|o| json!({ "size": o.size.to_string(), "representative": coords(&en.gamma, &o.representative).into_iter().map(pair).collect::<Vec<_>>() })).collect();
        return Ok(pretty(json!({
            "schema": 1,
            "type": en.t,
            "count": en.configs.len().to_string(),
            "group_order": en.group_order.to_string(),
            "configurations": configs,
            "orbits": orbits,
        })));
    }
    let mut out = String::new();
    for (c, o) in en.configs.iter().zip(&en.orbit_of) {
        let _ = writeln!(out, "{o}\t{}", coords_text(&coords(&en.gamma, c)));
    }
    Ok(out)
}

fn orbits(s: &str, format: Format) -> Out {
    only(format, &[Format::Tsv, Format::Json], "orbits")?;
    let en = enumerated(s)?;
    if format == Format::Json {
        let orbits: Vec<Value> = en.orbits.iter().map(|o| json!({ "size": o.size.to_string(), "representative": coords(&en.gamma, &o.representative).into_iter().map(pair).collect::<Vec<_>>() })).collect();
        return Ok(pretty(json!({
            "schema": 1,
            "type": en.t,
            "configurations": en.configs.len().to_string(),
            "group_order": en.group_order.to_string(),
            "orbits": orbits,
        })));
    }
    let k = en.orbits.len();
    let mut out = format!("{k} orbit{}\n", if k == 1 { "" } else { "s" });
    for o in &en.orbits {
        let _ = writeln!(out, "{}\t{}", o.size, coords_text(&coords(&en.gamma, &o.representative)));
    }
    Ok(out)
}

fn brauer(edges: usize, multiplicity: usize, marked_leaf: bool, format: Format) -> Out {
    only(format, &[Format::Tsv, Format::Json], "brauer")?;
    if edges == 0 || multiplicity == 0 {
        return Err(usage("edges and multiplicity must be positive"));
    }
    if marked_leaf && multiplicity != 1 {
        return Err(usage("--marked-leaf counts multiplicity-one trees"));
    }
    let count = if marked_leaf { count_brauer_trees_marked_leaf(edges) } else { count_brauer_trees(edges, multiplicity) };
    if format == Format::Json {
        return Ok(pretty(json!({ "schema": 1, "edges": edges.to_string(), "multiplicity": multiplicity.to_string(), "marked_leaf": marked_leaf, "count": count.to_string() })));
    }
    Ok(format!("{count}\n"))
}

fn sms(a: &str, list: bool, bound: usize, format: Format) -> Out {
    only(format, &[Format::Tsv, Format::Json], "sms")?;
    let alg = parse_algebra(a)?;
    let all = all_sms(&alg, bound)?;
    if format == Format::Json {
        let items: Vec<Value> = all.iter().map(|s| Value::Array(s.modules.iter().map(|&m| module_json(&alg, m)).collect())).collect();
        let mut obj = json!({ "schema": 1, "algebra": alg.to_string(), "count": all.len().to_string() });
        if list {
            obj["sms"] = Value::Array(items);
        }
        return Ok(pretty(obj));
    }
    let mut out = format!("{} sms\n", all.len());
    if list {
        for s in &all {
            let pairs: Vec<String> = s.modules.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "{}\t{}", pairs.join(" "), s.columns(&alg).join(" "));
        }
    }
    Ok(out)
}

fn mutate(a: &str, s: &str, at: &[usize], dir: Dir, allow_composite: bool, format: Format) -> Out {
    only(format, &[Format::Tsv, Format::Json], "mutate")?;
    let alg = parse_algebra(a)?;
    let start = parse_sms(&alg, s)?;
    let mut x = Vec::with_capacity(at.len());
    for &i in at {
        let m = *start.modules.get(i.wrapping_sub(1)).ok_or_else(|| usage(format!("position {i} is outside 1..={}", start.len())))?;
        if !x.contains(&m) {
            x.push(m);
        }
    }
    x.sort_unstable();
    if x.iter().any(|m| !x.contains(&alg.nu(*m))) {
        return Err(usage("mutation site is not Nakayama-stable"));
    }
    if !allow_composite && !nu_orbit_partition(&alg, &start)?.contains(&x) {
        return Err(usage("mutation site is not a single ν-orbit (pass --allow-composite)"));
    }
    if !is_sms(&alg, &start) {
        return Err(usage(format!("{start} is not a simple-minded system")));
    }
    let result = match dir {
        Dir::Left => mutate_left(&alg, &start, &x)?,
        Dir::Right => mutate_right(&alg, &start, &x)?,
    };
    if format == Format::Json {
        return Ok(pretty(json!({
            "schema": 1,
            "algebra": alg.to_string(),
            "direction": if dir == Dir::Left { "left" } else { "right" },
            "input": start.modules.iter().map(|&m| module_json(&alg, m)).collect::<Vec<_>>(),
            "at": x.iter().map(|&m| module_json(&alg, m)).collect::<Vec<_>>(),
            "result": result.modules.iter().map(|&m| module_json(&alg, m)).collect::<Vec<_>>(),
        })));
    }
    Ok(result.modules.iter().map(|&m| module_line(&alg, m)).collect())
}

fn quiver(a: &str, start: &str, dir: Dirs, allow_composite: bool, max_depth: usize, format: Format) -> Out {
    let alg = parse_algebra(a)?;
    let start = parse_sms(&alg, start)?;
    if !is_sms(&alg, &start) {
        return Err(usage(format!("{start} is not a simple-minded system")));
    }
    let directions = match dir {
        Dirs::Left => Directions::Left,
        Dirs::Right => Directions::Right,
        Dirs::Both => Directions::Both,
    };
    let q = build_mutation_quiver(&alg, &start, &QuiverOptions { directions, allow_composite, max_depth })?;
    Ok(match format {
        Format::Dot => q.to_dot(&alg),
        Format::Json => q.to_json() + "\n",
        Format::Tsv => {
            let mut out = format!("{} vertices, {} arrows\n", q.vertices.len(), q.arrows.len());
            for (i, v) in q.vertices.iter().enumerate() {
                let _ = writeln!(out, "vertex\t{i}\t{}", v.columns(&alg).join(" "));
            }
            for x in &q.arrows {
                let d = match x.direction {
                    sms_core::mutation::Direction::Left => "left",
                    sms_core::mutation::Direction::Right => "right",
                };
                let _ = writeln!(out, "arrow\t{}\t{}\t{d}\t{}", x.source, x.target, x.orbit);
            }
            out
        }
    })
}

fn check(ids: &[usize], format: Format) -> Out {
    only(format, &[Format::Tsv, Format::Json], "check")?;
    if let Some(&bad) = ids.iter().find(|&&i| i == 0 || i > CRITERIA.len()) {
        return Err(usage(format!("no criterion {bad}; criteria are 1..={}", CRITERIA.len())));
    }
    let ids: Vec<usize> = if ids.is_empty() { (1..=CRITERIA.len()).collect() } else { ids.to_vec() };
    let mut reports = Vec::new();
    for &id in &ids {
        let r = run_criterion(id);
        if format == Format::Tsv {
            println!("{}", r.line());
        }
        reports.push(r);
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    let out = if format == Format::Json {
        let items: Vec<Value> = reports
            .iter()
            .map(|r| json!({ "id": r.id.to_string(), "title": r.title, "passed": r.passed, "detail": r.detail, "elapsed_ms": r.elapsed.as_millis().to_string(), "limit_s": r.limit.as_secs().to_string() }))
            .collect();
        pretty(json!({ "schema": 1, "passed": passed.to_string(), "total": reports.len().to_string(), "criteria": items }))
    } else {
        format!("{passed} of {} criteria passed\n", reports.len())
    };
    if passed == reports.len() {
        Ok(out)
    } else {
        print!("{out}");
        Err(CliError::Compute(format!("{} criteria failed", reports.len() - passed)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sms_arguments() {
        let a = NakayamaAlgebra::new(4, 5).unwrap();
        assert_eq!(parse_sms(&a, "simples").unwrap().modules, a.simples());
        let s = parse_sms(&a, "2:4,1:3").unwrap();
        assert_eq!(s.modules, vec![a.module(1, 3).unwrap(), a.module(2, 4).unwrap()]);
        assert!(parse_sms(&a, "1:5").is_err());
        assert!(parse_sms(&a, "1:1,1:1").is_err());
        assert!(parse_sms(&a, "1").is_err());
    }

    #[test]
    fn unsupported_formats() {
        assert!(only(Format::Dot, &[Format::Tsv], "hom").is_err());
        assert!(only(Format::Tsv, &[Format::Tsv], "hom").is_ok());
    }
}
