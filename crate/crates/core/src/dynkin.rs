//! Dynkin tree classes, Coxeter numbers, graph automorphisms and the
//! classification of types of representation-finite self-injective algebras.
//!
//! Node numbering: `A_n` runs 1..n along the path; `D_n` has the spine
//! 1..n-2 with the fork tips n-1 and n attached to n-2; `E_n` uses Bourbaki
//! numbering (1-3-4-5-6(-7-8) with 2 attached to 4).

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }

    fn from_letter(c: &str) -> Result<Family> {
        match c.trim() {
            "A" | "a" => Ok(Family::A),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            other => Err(Error::Parse(format!("unknown Dynkin family `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinGraph {
    family: Family,
    rank: usize,
}

impl DynkinGraph {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(DynkinGraph { family, rank })
        } else {
            Err(Error::InvalidGraph { family: family.letter(), rank })
        }
    }

    pub fn a(n: usize) -> Self {
        Self::new(Family::A, n).expect("A_n needs n >= 1")
    }

    pub fn d(n: usize) -> Self {
        Self::new(Family::D, n).expect("D_n needs n >= 4")
    }

    pub fn e(n: usize) -> Self {
        Self::new(Family::E, n).expect("E_n needs n in 6..=8")
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Node labels, 1-based.
    pub fn nodes(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.rank
    }

    /// Undirected edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (1..n).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut e: Vec<_> = (1..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 2, n - 1));
                e.push((n - 2, n));
                e
            }
            Family::E => {
                let mut e = vec![(1, 3), (3, 4), (2, 4), (4, 5), (5, 6)];
                if n >= 7 {
                    e.push((6, 7));
                }
                if n >= 8 {
                    e.push((7, 8));
                }
                e.sort_unstable();
                e
            }
        }
    }

    pub fn neighbors(&self, q: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges()
            .into_iter()
            .filter_map(|(a, b)| match (a == q, b == q) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Bipartite colour: parity of the distance from node 1.
    pub fn color(&self, q: usize) -> u8 {
        let mut dist = vec![usize::MAX; self.rank + 1];
        let mut queue = std::collections::VecDeque::from([1usize]);
        dist[1] = 0;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        (dist[q] % 2) as u8
    }

    /// Oriented edges: colour-0 nodes are sources, colour-1 nodes sinks.
    /// This orientation is invariant under every graph automorphism used
    /// for admissible groups.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        self.edges()
            .into_iter()
            .map(|(a, b)| if self.color(a) == 0 { (a, b) } else { (b, a) })
            .collect()
    }

    pub fn coxeter_number(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::D => 2 * self.rank - 2,
            Family::E => match self.rank {
                6 => 12,
                7 => 18,
                _ => 30,
            },
        }
    }
}

impl fmt::Display for DynkinGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

pub fn coxeter_number(graph: &DynkinGraph) -> usize {
    graph.coxeter_number()
}

/// A permutation of the nodes of a Dynkin graph preserving its edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphAutomorphism {
    /// `image[q - 1]` is the image of node `q`.
    image: Vec<usize>,
}

impl GraphAutomorphism {
    pub fn identity(graph: &DynkinGraph) -> Self {
        GraphAutomorphism { image: graph.nodes().collect() }
    }

    pub fn from_images(graph: &DynkinGraph, image: Vec<usize>) -> Result<Self> {
        let n = graph.rank();
        let mut seen = vec![false; n + 1];
        if image.len() != n || image.iter().any(|&q| q == 0 || q > n || std::mem::replace(&mut seen[q], true)) {
            return Err(Error::Parse("not a permutation of the nodes".into()));
        }
        let aut = GraphAutomorphism { image };
        let mut edges = graph.edges();
        edges.sort_unstable();
        let mut mapped: Vec<_> = edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (aut.apply(a), aut.apply(b));
                (x.min(y), x.max(y))
            })
            .collect();
        mapped.sort_unstable();
        if mapped != edges {
            return Err(Error::Parse("permutation does not preserve edges".into()));
        }
        Ok(aut)
    }

    pub fn apply(&self, q: usize) -> usize {
        self.image[q - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn compose(&self, other: &GraphAutomorphism) -> GraphAutomorphism {
        GraphAutomorphism { image: other.image.iter().map(|&q| self.apply(q)).collect() }
    }

    pub fn power(&self, k: i64) -> GraphAutomorphism {
        let ord = self.order() as i64;
        let k = k.rem_euclid(ord);
        let mut out = GraphAutomorphism { image: (1..=self.image.len()).collect() };
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &q)| q == i + 1)
    }

    pub fn order(&self) -> usize {
        let id = GraphAutomorphism { image: (1..=self.image.len()).collect() };
        let mut cur = self.clone();
        let mut k = 1;
        while cur != id {
            cur = self.compose(&cur);
            k += 1;
        }
        k
    }
}

/// The classification families of RFS types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeFamily {
    /// `(A_n, s/n, 1)`
    A,
    /// `(A_{2p+1}, s, 2)`
    B,
    /// `(D_n, s, 1)`
    C,
    /// `(D_{3m}, s/3, 1)`, `3 ∤ s`
    D,
    /// `(D_n, s, 2)`
    E,
    /// `(D_4, s, 3)`
    F,
    /// `(E_n, s, 1)`
    G,
    /// `(E_6, s, 2)`
    H,
    /// Non-standard `(D_{3m}, 1/3, 1)`
    NonStandard,
}

impl fmt::Display for TypeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeFamily::A => "(a)",
            TypeFamily::B => "(b)",
            TypeFamily::C => "(c)",
            TypeFamily::D => "(d)",
            TypeFamily::E => "(e)",
            TypeFamily::F => "(f)",
            TypeFamily::G => "(g)",
            TypeFamily::H => "(h)",
            TypeFamily::NonStandard => "non-standard",
        };
        f.write_str(s)
    }
}

/// A triple `(Q, f, t)`: tree class, frequency and torsion order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RfsType {
    pub graph: DynkinGraph,
    pub frequency: Rational64,
    pub torsion: u8,
    pub standard: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validation {
    pub valid: bool,
    pub family: Option<TypeFamily>,
    pub reason: String,
}

impl Validation {
    fn accept(family: TypeFamily) -> Self {
        Validation { valid: true, family: Some(family), reason: format!("family {family}") }
    }

    fn reject(reason: impl Into<String>) -> Self {
        Validation { valid: false, family: None, reason: reason.into() }
    }
}

fn is_integer(q: &Rational64) -> bool {
    q.is_integer()
}

impl RfsType {
    pub fn new(graph: DynkinGraph, frequency: Rational64, torsion: u8) -> Self {
        RfsType { graph, frequency, torsion, standard: true }
    }

    pub fn with_frequency(graph: DynkinGraph, num: i64, den: i64, torsion: u8) -> Self {
        Self::new(graph, Rational64::new(num, den), torsion)
    }

    /// The non-standard algebra type `(D_{3m}, 1/3, 1)`.
    pub fn non_standard(m: usize) -> Result<Self> {
        let t = RfsType { graph: DynkinGraph::new(Family::D, 3 * m)?, frequency: Rational64::new(1, 3), torsion: 1, standard: false };
        t.validated()?;
        Ok(t)
    }

    pub fn validate(&self) -> Validation {
        validate_rfs_type(self)
    }

    pub fn validated(&self) -> Result<&Self> {
        let v = self.validate();
        if v.valid {
            Ok(self)
        } else {
            Err(Error::InvalidType(self.to_string(), v.reason))
        }
    }

    pub fn family(&self) -> Option<TypeFamily> {
        self.validate().family
    }

    /// `r = f (h_Q - 1)`; `None` when not a positive integer.
    pub fn r(&self) -> Option<usize> {
        let r = self.frequency * Rational64::from_integer(self.graph.coxeter_number() as i64 - 1);
        (r.is_integer() && r.is_positive()).then(|| r.to_integer() as usize)
    }
}

impl fmt::Display for RfsType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}/f={}/t={}", self.graph.family.letter(), self.graph.rank, self.frequency, self.torsion)?;
        if !self.standard {
            f.write_str("/nonstandard")?;
        }
        Ok(())
    }
}

impl FromStr for RfsType {
    type Err = Error;

    /// Parses `A:5/f=1/t=2`, `D:6/f=1/3/t=1`, optionally suffixed `/nonstandard`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cannot parse RFS type `{s}` (expected e.g. A:5/f=1/t=2)"));
        let s = s.trim();
        let (body, standard) = match s.strip_suffix("/nonstandard") {
            Some(b) => (b, false),
            None => (s, true),
        };
        let (head, rest) = body.split_once("/f=").ok_or_else(bad)?;
        let (freq, tors) = rest.rsplit_once("/t=").ok_or_else(bad)?;
        let (fam, rank) = head.split_once(':').ok_or_else(bad)?;
        let family = Family::from_letter(fam)?;
        let rank: usize = rank.trim().parse().map_err(|_| bad())?;
        let graph = DynkinGraph::new(family, rank)?;
        let frequency = parse_rational(freq).ok_or_else(bad)?;
        let torsion: u8 = tors.trim().parse().map_err(|_| bad())?;
        if !frequency.is_positive() {
            return Err(bad());
        }
        Ok(RfsType { graph, frequency, torsion, standard })
    }
}

pub fn parse_rational(s: &str) -> Option<Rational64> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d): (i64, i64) = (n.trim().parse().ok()?, d.trim().parse().ok()?);
            (d != 0).then(|| Rational64::new(n, d))
        }
        None => s.parse::<i64>().ok().map(Rational64::from_integer),
    }
}

#[derive(Serialize, Deserialize)]
struct RfsTypeJson {
    family: Family,
    rank: usize,
    frequency: String,
    torsion: u8,
    #[serde(default = "default_true", skip_serializing_if = "is_true")]
    standard: bool,
}

fn default_true() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

impl Serialize for RfsType {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        RfsTypeJson {
            family: self.graph.family,
            rank: self.graph.rank,
            frequency: self.frequency.to_string(),
            torsion: self.torsion,
            standard: self.standard,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for RfsType {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = RfsTypeJson::deserialize(de)?;
        let graph = DynkinGraph::new(j.family, j.rank).map_err(D::Error::custom)?;
        let frequency = parse_rational(&j.frequency).ok_or_else(|| D::Error::custom("bad frequency"))?;
        Ok(RfsType { graph, frequency, torsion: j.torsion, standard: j.standard })
    }
}

/// Decides membership in the classification list.
pub fn validate_rfs_type(t: &RfsType) -> Validation {
    let g = t.graph;
    let n = g.rank() as i64;
    let f = t.frequency;
    if !f.is_positive() {
        return Validation::reject("frequency must be positive");
    }
    let nf = f * Rational64::from_integer(n);
    if !is_integer(&nf) {
        return Validation::reject(format!("n·f = {nf} is not an integer"));
    }
    if t.r().is_none() {
        return Validation::reject("f·(h_Q - 1) is not an integer");
    }
    if !t.standard {
        return match (g.family(), t.torsion) {
            (Family::D, 1) if n % 3 == 0 && n >= 6 && f == Rational64::new(1, 3) => Validation::accept(TypeFamily::NonStandard),
            _ => Validation::reject("non-standard types are (D_{3m}, 1/3, 1) with m >= 2"),
        };
    }
    let integral = is_integer(&f);
    match (g.family(), t.torsion) {
        (Family::A, 1) => Validation::accept(TypeFamily::A),
        (Family::A, 2) => {
            if n % 2 == 0 || n < 3 {
                Validation::reject("torsion 2 on A_n requires n = 2p+1 with p >= 1 (n odd)")
            } else if !integral {
                Validation::reject("torsion-2 A-types need integral frequency")
            } else {
                Validation::accept(TypeFamily::B)
            }
        }
        (Family::D, 1) => {
            if integral {
                Validation::accept(TypeFamily::C)
            } else {
                let three_f = f * Rational64::from_integer(3);
                if !is_integer(&three_f) {
                    Validation::reject("D-type frequency must be s or s/3")
                } else if n % 3 != 0 || n < 6 {
                    Validation::reject("frequency s/3 requires rank 3m with m >= 2")
                } else if three_f.to_integer() % 3 == 0 {
                    Validation::reject("3 ∤ s violated")
                } else {
                    Validation::accept(TypeFamily::D)
                }
            }
        }
        (Family::D, 2) => {
            if integral {
                Validation::accept(TypeFamily::E)
            } else {
                Validation::reject("torsion-2 D-types need integral frequency")
            }
        }
        (Family::D, 3) => {
            if n != 4 {
                Validation::reject("torsion 3 only occurs for D_4")
            } else if !integral {
                Validation::reject("torsion-3 D_4 types need integral frequency")
            } else {
                Validation::accept(TypeFamily::F)
            }
        }
        (Family::E, 1) => {
            if integral {
                Validation::accept(TypeFamily::G)
            } else {
                Validation::reject("E-types need integral frequency")
            }
        }
        (Family::E, 2) => {
            if n != 6 {
                Validation::reject("torsion 2 among E-types only occurs for E_6")
            } else if !integral {
                Validation::reject("E-types need integral frequency")
            } else {
                Validation::accept(TypeFamily::H)
            }
        }
        (_, t) => Validation::reject(format!("torsion {t} not allowed for {g}")),
    }
}

/// Symmetric types: `(A_n, s/n, 1)` with `s | n`, `(D_{3m}, 1/3, 1)`,
/// `(D_n, 1, 1)` and `(E_n, 1, 1)`.
pub fn is_symmetric_type(t: &RfsType) -> Result<bool> {
    let v = t.validated()?.validate();
    let f = t.frequency;
    let n = t.graph.rank() as i64;
    Ok(match v.family.expect("valid") {
        TypeFamily::A => {
            let s = (f * Rational64::from_integer(n)).to_integer();
            n % s == 0
        }
        TypeFamily::D | TypeFamily::NonStandard => f == Rational64::new(1, 3),
        TypeFamily::C | TypeFamily::G => f.is_one(),
        _ => false,
    })
}

/// `(r, ζ)` with `Π = ⟨ζ τ^{-r}⟩`.
pub fn admissible_group(t: &RfsType) -> Result<(usize, GraphAutomorphism)> {
    t.validated()?;
    let g = t.graph;
    let r = t.r().ok_or_else(|| Error::InvalidType(t.to_string(), "non-integral r".into()))?;
    let n = g.rank();
    let images: Vec<usize> = match (g.family(), t.torsion) {
        (_, 1) => g.nodes().collect(),
        (Family::A, 2) => g.nodes().map(|q| n + 1 - q).collect(),
        (Family::D, 2) => g.nodes().map(|q| if q == n - 1 { n } else if q == n { n - 1 } else { q }).collect(),
        (Family::E, 2) => vec![6, 2, 5, 4, 3, 1],
        // rotation of the three arms 1 -> 3 -> 4 -> 1 around node 2
        (Family::D, 3) => vec![3, 2, 4, 1],
        _ => unreachable!("validated"),
    };
    let zeta = GraphAutomorphism::from_images(&g, images)?;
    debug_assert_eq!(zeta.order(), t.torsion as usize);
    Ok((r, zeta))
}

pub fn num_simples(t: &RfsType) -> Result<usize> {
    t.validated()?;
    let nf = t.frequency * Rational64::from_integer(t.graph.rank() as i64);
    Ok(nf.to_integer() as usize)
}

/// Greatest common divisor helper for callers working with frequencies.
pub fn gcd(a: usize, b: usize) -> usize {
    a.gcd(&b)
}
