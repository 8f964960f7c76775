//! Combinatorial configurations of stable translation quivers and their
//! orbits under the automorphism group.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::Bits;
use crate::dynkin::{num_simples, DynkinGraph, Family, RfsType, TypeFamily};
use crate::error::Result;
use crate::meshcat::QuotientHoms;
use crate::ztquiver::{automorphisms, quotient, QuiverAutomorphism, StableTranslationQuiver, ZVertex};

/// A configuration: a sorted set of quotient vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Configuration {
    pub vertices: Vec<usize>,
}

impl Configuration {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Configuration { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn coordinates(&self, gamma: &StableTranslationQuiver) -> Vec<ZVertex> {
        self.vertices.iter().map(|&v| gamma.vertices[v]).collect()
    }

    pub fn image(&self, a: &QuiverAutomorphism) -> Configuration {
        Configuration::new(self.vertices.iter().map(|&v| a.apply(v)).collect())
    }

    /// Preimage under the covering restricted to slices `p_min..=p_max`.
    pub fn lift_window(&self, gamma: &StableTranslationQuiver, p_min: i64, p_max: i64) -> Vec<ZVertex> {
        let mut out = Vec::new();
        for p in p_min..=p_max {
            for q in gamma.graph().nodes() {
                let v = ZVertex::new(p, q);
                if self.vertices.binary_search(&gamma.project(v)).is_ok() {
                    out.push(v);
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigCheck {
    Valid,
    NotSchurian { vertex: usize, dim: u32 },
    NotOrthogonal { from: usize, to: usize, dim: u32 },
    NotCovered { vertex: usize },
}

impl ConfigCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, ConfigCheck::Valid)
    }
}

pub fn is_configuration(homs: &QuotientHoms, set: &[usize]) -> ConfigCheck {
    for &e in set {
        let d = homs.get(e, e);
        if d != 1 {
            return ConfigCheck::NotSchurian { vertex: e, dim: d };
        }
    }
    for &e in set {
        for &f in set {
            if e != f && homs.get(e, f) != 0 {
                return ConfigCheck::NotOrthogonal { from: e, to: f, dim: homs.get(e, f) };
            }
        }
    }
    for e in 0..homs.len() {
        if !set.iter().any(|&f| homs.get(e, f) != 0) {
            return ConfigCheck::NotCovered { vertex: e };
        }
    }
    ConfigCheck::Valid
}

struct Search {
    /// position -> vertex index
    order: Vec<usize>,
    size: usize,
    compat: Vec<Bits>,
    covers: Vec<Bits>,
    coverers: Vec<Bits>,
    n: usize,
}

impl Search {
    fn new(gamma: &StableTranslationQuiver, homs: &QuotientHoms, size: usize) -> Self {
        let n = gamma.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (gamma.vertices[v].q, gamma.vertices[v].p));
        let schurian: Vec<bool> = order.iter().map(|&v| homs.get(v, v) == 1).collect();
        let mut compat = vec![Bits::new(n); n];
        let mut covers = vec![Bits::new(n); n];
        let mut coverers = vec![Bits::new(n); n];
        for i in 0..n {
            for j in 0..n {
                let (vi, vj) = (order[i], order[j]);
                if i != j && schurian[j] && homs.get(vi, vj) == 0 && homs.get(vj, vi) == 0 {
                    compat[i].insert(j);
                }
                if homs.get(vi, vj) != 0 && schurian[j] {
                    // choosing j covers i
                    covers[j].insert(i);
                    coverers[i].insert(j);
                }
            }
        }
        Search { order, size, compat, covers, coverers, n }
    }

    fn run_from(&self, first: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if self.size == 0 || !self.coverers[first].contains(first) {
            return out;
        }
        let mut chosen = vec![first];
        let allowed = self.compat[first].above(first);
        let covered = self.covers[first].clone();
        self.dfs(&mut chosen, allowed, covered, &mut out);
        out
    }

    fn dfs(&self, chosen: &mut Vec<usize>, allowed: Bits, covered: Bits, out: &mut Vec<Vec<usize>>) {
        if chosen.len() == self.size {
            if covered.count() == self.n {
                out.push(chosen.iter().map(|&i| self.order[i]).collect());
            }
            return;
        }
        if allowed.count() < self.size - chosen.len() {
            return;
        }
        // every uncovered vertex must keep a compatible coverer
        for e in 0..self.n {
            if !covered.contains(e) && !self.coverers[e].intersects(&allowed) {
                return;
            }
        }
        for v in allowed.iter() {
            chosen.push(v);
            let next = allowed.and(&self.compat[v]).above(v);
            self.dfs(chosen, next, covered.or(&self.covers[v]), out);
            chosen.pop();
        }
    }
}

/// All configurations of `gamma`, sorted.
pub fn enumerate_configurations(gamma: &StableTranslationQuiver) -> Result<Vec<Configuration>> {
    let homs = QuotientHoms::compute(gamma);
    enumerate_with_homs(gamma, &homs)
}

pub fn enumerate_with_homs(gamma: &StableTranslationQuiver, homs: &QuotientHoms) -> Result<Vec<Configuration>> {
    let size = num_simples(&gamma.rfs_type)?;
    let search = Search::new(gamma, homs, size);
    let mut configs: Vec<Configuration> = (0..gamma.len()).into_par_iter().flat_map_iter(|first| search.run_from(first)).map(Configuration::new).collect();
    configs.sort();
    Ok(configs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub representative: Configuration,
    pub size: usize,
}

/// Partition of `configs` under `auts`; representatives are lexicographically
/// minimal and orbits are listed in order of their representatives.
pub fn orbit_decomposition(configs: &[Configuration], auts: &[QuiverAutomorphism]) -> Vec<Orbit> {
    let mut sorted = configs.to_vec();
    sorted.sort();
    let index: HashMap<&Configuration, usize> = sorted.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut seen = vec![false; sorted.len()];
    let mut orbits = Vec::new();
    for i in 0..sorted.len() {
        if seen[i] {
            continue;
        }
        let mut size = 0;
        for a in auts {
            let img = sorted[i].image(a);
            let j = *index.get(&img).expect("automorphism images of configurations are configurations");
            if !seen[j] {
                seen[j] = true;
                size += 1;
            }
        }
        if !seen[i] {
            seen[i] = true;
            size += 1;
        }
        orbits.push(Orbit { representative: sorted[i].clone(), size });
    }
    orbits
}

/// Configurations, automorphism group and orbits of one type.
#[derive(Debug, Clone)]
pub struct OrbitReport {
    pub rfs_type: RfsType,
    pub quiver: StableTranslationQuiver,
    pub configurations: Vec<Configuration>,
    pub group_order: usize,
    pub orbits: Vec<Orbit>,
}

pub fn orbit_report(t: &RfsType) -> Result<OrbitReport> {
    let gamma = quotient(t)?;
    let configurations = enumerate_configurations(&gamma)?;
    let auts = automorphisms(&gamma);
    let orbits = orbit_decomposition(&configurations, &auts);
    Ok(OrbitReport { rfs_type: t.clone(), quiver: gamma, configurations, group_order: auts.len(), orbits })
}

/// Whether a type lies in the single-orbit list: `(A_2, s/2, 1)`,
/// `(A_n, s/n, 1)` with `gcd(s, n) = 1`, `(A_3, s, 2)`, `(D_6, s/3, 1)`
/// with `3 ∤ s`, and `(D_4, s, 3)`.
pub fn predicted_single_orbit(t: &RfsType) -> bool {
    let n = t.graph.rank();
    match (t.family(), n) {
        (Some(TypeFamily::A), 2) => true,
        (Some(TypeFamily::A), _) => {
            let s = (t.frequency * num_rational::Rational64::from_integer(n as i64)).to_integer() as usize;
            num_integer::gcd(s, n) == 1
        }
        (Some(TypeFamily::B), 3) => true,
        (Some(TypeFamily::D | TypeFamily::NonStandard), 6) => true,
        (Some(TypeFamily::F), 4) => true,
        _ => false,
    }
}

#[derive(Debug, Clone, Copy)]
pub struct TransitivityBounds {
    pub max_rank: usize,
    pub max_s: usize,
    /// Skip quotients with more vertices than this.
    pub max_vertices: usize,
}

impl Default for TransitivityBounds {
    fn default() -> Self {
        TransitivityBounds { max_rank: 6, max_s: 3, max_vertices: 40 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TransitivityEntry {
    pub rfs_type: RfsType,
    pub vertices: usize,
    pub configurations: usize,
    pub orbits: usize,
    pub predicted_single: bool,
    pub agrees: bool,
}

/// Candidate types inside the bounds, in a fixed order.
pub fn capped_types(b: &TransitivityBounds) -> Vec<RfsType> {
    let mut out = Vec::new();
    for n in 1..=b.max_rank {
        let g = DynkinGraph::a(n);
        for s in 1..=b.max_s.max(n) {
            if s <= b.max_s || s == n {
                out.push(RfsType::with_frequency(g, s as i64, n as i64, 1));
            }
        }
        if n % 2 == 1 && n >= 3 {
            for s in 1..=b.max_s {
                out.push(RfsType::with_frequency(g, s as i64, 1, 2));
            }
        }
    }
    for n in 4..=b.max_rank.max(4) {
        let g = DynkinGraph::d(n);
        for s in 1..=b.max_s {
            out.push(RfsType::with_frequency(g, s as i64, 1, 1));
            out.push(RfsType::with_frequency(g, s as i64, 1, 2));
            if n == 4 {
                out.push(RfsType::with_frequency(g, s as i64, 1, 3));
            }
            if n % 3 == 0 && s % 3 != 0 {
                out.push(RfsType::with_frequency(g, s as i64, 3, 1));
            }
        }
    }
    if b.max_rank >= 6 {
        out.push(RfsType::with_frequency(DynkinGraph::e(6), 1, 1, 1));
        out.push(RfsType::with_frequency(DynkinGraph::e(6), 1, 1, 2));
    }
    out.retain(|t| t.validate().valid);
    out.dedup();
    out
}

pub fn transitivity_list_check(b: &TransitivityBounds) -> Result<Vec<TransitivityEntry>> {
    let mut out = Vec::new();
    for t in capped_types(b) {
        let vertices = t.graph.rank() * t.r().expect("valid type");
        if vertices > b.max_vertices {
            continue;
        }
        let rep = orbit_report(&t)?;
        let predicted_single = predicted_single_orbit(&t);
        let orbits = rep.orbits.len();
        out.push(TransitivityEntry { rfs_type: t, vertices, configurations: rep.configurations.len(), orbits, predicted_single, agrees: predicted_single == (orbits == 1) });
    }
    Ok(out)
}

/// Whether the full preimage of `c` is stable under `τ^period`, checked
/// on one period window of the covering.
pub fn lift_is_tau_periodic(gamma: &StableTranslationQuiver, c: &Configuration, period: i64) -> bool {
    let span = (gamma.r as i64) * gamma.zeta.order() as i64;
    c.lift_window(gamma, 0, span + period).into_iter().all(|v| c.vertices.binary_search(&gamma.project(v.shift(period))).is_ok())
}

/// The τ-period of ℤQ configurations: `n` for `A_n`, `2n - 3` for `D_n`.
pub fn configuration_period(graph: &DynkinGraph) -> Option<i64> {
    match graph.family() {
        Family::A => Some(graph.rank() as i64),
        Family::D => Some(2 * graph.rank() as i64 - 3),
        Family::E => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> RfsType {
        s.parse().unwrap()
    }

    #[test]
    fn a1_quotients_have_one_configuration() {
        for s in 1..=4 {
            let t = RfsType::with_frequency(DynkinGraph::a(1), s, 1, 1);
            let gamma = quotient(&t).unwrap();
            let configs = enumerate_configurations(&gamma).unwrap();
            assert_eq!(configs, vec![Configuration::new((0..s as usize).collect())]);
        }
    }

    #[test]
    fn empty_set_is_not_a_configuration() {
        let gamma = quotient(&ty("A:3/f=1/t=2")).unwrap();
        let homs = QuotientHoms::compute(&gamma);
        assert!(matches!(is_configuration(&homs, &[]), ConfigCheck::NotCovered { .. }));
    }

    #[test]
    fn orthogonality_violation_is_reported() {
        let gamma = quotient(&ty("A:3/f=1/t=2")).unwrap();
        let homs = QuotientHoms::compute(&gamma);
        // an arrow u -> v gives a nonzero hom between distinct vertices
        let (u, v) = gamma.arrows[0];
        assert!(matches!(is_configuration(&homs, &[u, v]), ConfigCheck::NotOrthogonal { .. }));
    }

    #[test]
    fn enumerated_configurations_are_valid() {
        for s in ["A:3/f=1/t=2", "A:4/f=1/t=1", "D:4/f=1/t=1", "A:4/f=1/2/t=1"] {
            let t = ty(s);
            let gamma = quotient(&t).unwrap();
            let homs = QuotientHoms::compute(&gamma);
            let configs = enumerate_with_homs(&gamma, &homs).unwrap();
            assert!(!configs.is_empty(), "{s}");
            let k = num_simples(&t).unwrap();
            for c in &configs {
                assert_eq!(c.len(), k);
                assert!(is_configuration(&homs, &c.vertices).is_valid());
            }
            for a in automorphisms(&gamma) {
                for c in &configs {
                    assert!(configs.binary_search(&c.image(&a)).is_ok());
                }
            }
        }
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbit_report(&ty("A:3/f=1/t=2")).unwrap().orbits.len(), 1);
        assert_eq!(orbit_report(&ty("A:5/f=1/t=2")).unwrap().orbits.len(), 2);
        assert_eq!(orbit_report(&ty("D:4/f=1/t=1")).unwrap().orbits.len(), 2);
        assert_eq!(orbit_report(&ty("D:4/f=1/t=3")).unwrap().orbits.len(), 1);
    }

    #[test]
    fn orbit_sizes_sum_to_total() {
        let rep = orbit_report(&ty("D:4/f=1/t=1")).unwrap();
        let total: usize = rep.orbits.iter().map(|o| o.size).sum();
        assert_eq!(total, rep.configurations.len());
        for o in &rep.orbits {
            assert_eq!(rep.group_order % o.size, 0);
        }
    }

    #[test]
    fn prediction_table() {
        assert!(predicted_single_orbit(&ty("A:2/f=1/t=1")));
        assert!(!predicted_single_orbit(&ty("A:4/f=1/2/t=1")));
        assert!(predicted_single_orbit(&ty("A:4/f=3/4/t=1")));
        assert!(predicted_single_orbit(&ty("D:4/f=1/t=3")));
        assert!(predicted_single_orbit(&ty("D:6/f=2/3/t=1")));
        assert!(!predicted_single_orbit(&ty("D:5/f=1/t=1")));
        assert!(!predicted_single_orbit(&ty("A:5/f=1/t=2")));
    }
}
