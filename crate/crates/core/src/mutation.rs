//! The sms mutation quiver of a Nakayama algebra.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nakayama::{is_sms, mutate_left, mutate_right, NakayamaAlgebra, SerialModule, SmsCandidate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Directions {
    Left,
    Right,
    Both,
}

impl Directions {
    fn list(self) -> &'static [Direction] {
        match self {
            Directions::Left => &[Direction::Left],
            Directions::Right => &[Direction::Right],
            Directions::Both => &[Direction::Left, Direction::Right],
        }
    }
}

impl std::str::FromStr for Directions {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Directions::Left),
            "right" => Ok(Directions::Right),
            "both" => Ok(Directions::Both),
            _ => Err(Error::Parse(format!("unknown direction {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MutationArrow {
    pub source: usize,
    pub target: usize,
    pub orbit: String,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationQuiver {
    pub schema: u32,
    pub algebra: String,
    pub vertices: Vec<SmsCandidate>,
    pub arrows: Vec<MutationArrow>,
}

#[derive(Debug, Clone, Copy)]
pub struct QuiverOptions {
    pub directions: Directions,
    /// Mutate at every non-empty Nakayama-stable subset, not only at
    /// single ν-orbits.
    pub allow_composite: bool,
    /// Largest number of BFS rounds before giving up with an error.
    pub max_depth: usize,
}

impl Default for QuiverOptions {
    fn default() -> Self {
        QuiverOptions { directions: Directions::Left, allow_composite: false, max_depth: 256 }
    }
}

/// The ν-orbits of the members of `s`, each sorted, in order of their
/// smallest member.
pub fn nu_orbit_partition(alg: &NakayamaAlgebra, s: &SmsCandidate) -> Result<Vec<Vec<SerialModule>>> {
    let mut seen = BTreeSet::new();
    let mut parts = Vec::new();
    for &m in &s.modules {
        if seen.contains(&m) {
            continue;
        }
        let mut orbit = vec![m];
        let mut x = alg.nu(m);
        while x != m {
            if !s.contains(&x) {
                return Err(Error::NotNakayamaStable);
            }
            orbit.push(x);
            x = alg.nu(x);
        }
        orbit.sort_unstable();
        seen.extend(orbit.iter().copied());
        parts.push(orbit);
    }
    Ok(parts)
}

/// Label of a set of modules by their `top-socle` pairs.
pub fn orbit_label(alg: &NakayamaAlgebra, orbit: &[SerialModule]) -> String {
    orbit.iter().map(|&m| format!("{}-{}", m.top, alg.socle(m))).collect::<Vec<_>>().join(",")
}

fn mutation_sites(alg: &NakayamaAlgebra, s: &SmsCandidate, composite: bool) -> Result<Vec<Vec<SerialModule>>> {
    let parts = nu_orbit_partition(alg, s)?;
    if !composite {
        return Ok(parts);
    }
    if parts.len() > 16 {
        return Err(Error::BoundExceeded(format!("{} ν-orbits", parts.len())));
    }
    Ok((1..1u32 << parts.len())
        .map(|mask| {
            let mut x: Vec<SerialModule> = (0..parts.len()).filter(|i| mask >> i & 1 == 1).flat_map(|i| parts[i].iter().copied()).collect();
            x.sort_unstable();
            x
        })
        .collect())
}

/// A mutation: its direction, the site it was made at and the result.
pub type Neighbour = (Direction, Vec<SerialModule>, SmsCandidate);

/// Mutations of `s` in the given directions.
pub fn neighbours(alg: &NakayamaAlgebra, s: &SmsCandidate, opts: &QuiverOptions) -> Result<Vec<Neighbour>> {
    let mut out = Vec::new();
    for x in mutation_sites(alg, s, opts.allow_composite)? {
        for &dir in opts.directions.list() {
            let t = match dir {
                Direction::Left => mutate_left(alg, s, &x)?,
                Direction::Right => mutate_right(alg, s, &x)?,
            };
            out.push((dir, x.clone(), t));
        }
    }
    Ok(out)
}

/// Breadth-first closure of `start` under mutation. Mutations that return
/// their input are not recorded as arrows.
pub fn build_mutation_quiver(alg: &NakayamaAlgebra, start: &SmsCandidate, opts: &QuiverOptions) -> Result<MutationQuiver> {
    if !is_sms(alg, start) {
        return Err(Error::NotSms);
    }
    let mut visited: BTreeSet<SmsCandidate> = BTreeSet::from([start.clone()]);
    let mut edges: BTreeSet<(SmsCandidate, SmsCandidate, String, Direction)> = BTreeSet::new();
    let mut frontier = vec![start.clone()];
    let mut depth = 0;
    while !frontier.is_empty() {
        if depth == opts.max_depth {
            return Err(Error::BoundExceeded(format!("mutation quiver not closed after {depth} rounds")));
        }
        depth += 1;
        let expanded: Vec<(SmsCandidate, Vec<Neighbour>)> =
            frontier.par_iter().map(|s| neighbours(alg, s, opts).map(|n| (s.clone(), n))).collect::<Result<_>>()?;
        let mut next = BTreeSet::new();
        for (s, ns) in expanded {
            for (dir, x, t) in ns {
                if t == s {
                    continue;
                }
                edges.insert((s.clone(), t.clone(), orbit_label(alg, &x), dir));
                if visited.insert(t.clone()) {
                    next.insert(t);
                }
            }
        }
        frontier = next.into_iter().collect();
    }
    let vertices: Vec<SmsCandidate> = visited.into_iter().collect();
    let index: BTreeMap<&SmsCandidate, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut arrows: Vec<MutationArrow> = edges.iter().map(|(s, t, orbit, direction)| MutationArrow { source: index[s], target: index[t], orbit: orbit.clone(), direction: *direction }).collect();
    arrows.sort();
    Ok(MutationQuiver { schema: 1, algebra: alg.to_string(), vertices, arrows })
}

impl MutationQuiver {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let q: MutationQuiver = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if q.schema != 1 {
            return Err(Error::Parse(format!("unsupported schema {}", q.schema)));
        }
        Ok(q)
    }

    pub fn to_dot(&self, alg: &NakayamaAlgebra) -> String {
        let mut s = String::from("digraph sms_mutation {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  s{i} [label=\"{}\"];", v.columns(alg).join(" "));
        }
        for a in &self.arrows {
            let style = match a.direction {
                Direction::Left => "solid",
                Direction::Right => "dashed",
            };
            let _ = writeln!(s, "  s{} -> s{} [label=\"{}\", style={style}];", a.source, a.target, a.orbit);
        }
        s.push_str("}\n");
        s
    }

    /// Whether every vertex is reachable from every other along arrows.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(v) = stack.pop() {
                for a in &self.arrows {
                    let (from, to) = if forward { (a.source, a.target) } else { (a.target, a.source) };
                    if from == v && !seen[to] {
                        seen[to] = true;
                        stack.push(to);
                    }
                }
            }
            seen.into_iter().all(|b| b)
        };
        reach(true) && reach(false)
    }
}
