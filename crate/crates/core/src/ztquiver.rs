//! Windows of the translation quiver ℤQ and its admissible quotients
//! ℤQ/⟨ζτ^{-r}⟩.
//!
//! Slice `p` of ℤQ is a copy of the oriented tree (`Q` oriented by
//! [`DynkinGraph::arrows`]); every arrow `a -> b` of `Q` gives arrows
//! `(p, a) -> (p, b)` and `(p, b) -> (p + 1, a)`. The translation is
//! `τ(p, q) = (p - 1, q)`.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynkin::{admissible_group, DynkinGraph, GraphAutomorphism, RfsType};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZVertex {
    pub p: i64,
    pub q: usize,
}

impl ZVertex {
    pub fn new(p: i64, q: usize) -> Self {
        ZVertex { p, q }
    }

    pub fn tau(self) -> Self {
        ZVertex { p: self.p - 1, q: self.q }
    }

    pub fn tau_inv(self) -> Self {
        ZVertex { p: self.p + 1, q: self.q }
    }

    pub fn shift(self, k: i64) -> Self {
        ZVertex { p: self.p + k, q: self.q }
    }

    /// Path-length grading: every arrow raises it by exactly one.
    pub fn grade(self, graph: &DynkinGraph) -> i64 {
        2 * self.p + graph.color(self.q) as i64
    }
}

impl std::fmt::Display for ZVertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Arrows of ℤQ leaving `v`.
pub fn successors(graph: &DynkinGraph, v: ZVertex) -> Vec<ZVertex> {
    let mut out = Vec::new();
    for (a, b) in graph.arrows() {
        if a == v.q {
            out.push(ZVertex::new(v.p, b));
        }
        if b == v.q {
            out.push(ZVertex::new(v.p + 1, a));
        }
    }
    out.sort_unstable();
    out
}

/// Arrows of ℤQ entering `v`.
pub fn predecessors(graph: &DynkinGraph, v: ZVertex) -> Vec<ZVertex> {
    let mut out = Vec::new();
    for (a, b) in graph.arrows() {
        if b == v.q {
            out.push(ZVertex::new(v.p, a));
        }
        if a == v.q {
            out.push(ZVertex::new(v.p - 1, b));
        }
    }
    out.sort_unstable();
    out
}

/// The full subquiver of ℤQ on slices `p_min..=p_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub graph: DynkinGraph,
    pub p_min: i64,
    pub p_max: i64,
    pub vertices: Vec<ZVertex>,
    pub arrows: Vec<(ZVertex, ZVertex)>,
}

impl Window {
    pub fn contains(&self, v: ZVertex) -> bool {
        (self.p_min..=self.p_max).contains(&v.p) && (1..=self.graph.rank()).contains(&v.q)
    }

    /// `τ v` when it lies in the window.
    pub fn tau(&self, v: ZVertex) -> Option<ZVertex> {
        let t = v.tau();
        self.contains(t).then_some(t)
    }

    pub fn tau_inv(&self, v: ZVertex) -> Option<ZVertex> {
        let t = v.tau_inv();
        self.contains(t).then_some(t)
    }

    pub fn width(&self) -> i64 {
        self.p_max - self.p_min + 1
    }
}

pub fn build_window(graph: DynkinGraph, p_min: i64, p_max: i64) -> Window {
    assert!(p_min <= p_max, "empty window");
    let mut vertices = Vec::new();
    for p in p_min..=p_max {
        for q in graph.nodes() {
            vertices.push(ZVertex::new(p, q));
        }
    }
    let mut arrows = Vec::new();
    for &v in &vertices {
        for w in successors(&graph, v) {
            if w.p <= p_max {
                arrows.push((v, w));
            }
        }
    }
    arrows.sort_unstable();
    Window { graph, p_min, p_max, vertices, arrows }
}

/// A finite stable translation quiver given by vertex count, arrows (with
/// multiplicity) and the translation permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationQuiver {
    pub n: usize,
    pub arrows: Vec<(usize, usize)>,
    pub tau: Vec<usize>,
}

impl TranslationQuiver {
    fn adjacency(&self) -> Vec<u8> {
        let mut m = vec![0u8; self.n * self.n];
        for &(a, b) in &self.arrows {
            m[a * self.n + b] += 1;
        }
        m
    }

    fn undirected_neighbors(&self) -> Vec<Vec<usize>> {
        let mut nb = vec![Vec::new(); self.n];
        for &(a, b) in &self.arrows {
            nb[a].push(b);
            nb[b].push(a);
        }
        for v in 0..self.n {
            nb[v].push(self.tau[v]);
            let ti = self.tau.iter().position(|&t| t == v).expect("tau is a permutation");
            nb[v].push(ti);
        }
        for l in &mut nb {
            l.sort_unstable();
            l.dedup();
        }
        nb
    }

    /// Checks the mesh symmetry: `u -> v` iff `τv -> u`, with multiplicity.
    pub fn mesh_symmetric(&self) -> bool {
        let adj = self.adjacency();
        (0..self.n).all(|u| (0..self.n).all(|v| adj[u * self.n + v] == adj[self.tau[v] * self.n + u]))
    }
}

/// All arrow-preserving, τ-commuting bijections `a -> b`; if `anchor` is
/// given, only those sending `anchor.0` to `anchor.1`.
pub fn isomorphisms(a: &TranslationQuiver, b: &TranslationQuiver, anchor: Option<(usize, usize)>, first_only: bool) -> Vec<Vec<usize>> {
    if a.n != b.n || a.arrows.len() != b.arrows.len() || a.n == 0 {
        return Vec::new();
    }
    let n = a.n;
    let adj_a = a.adjacency();
    let adj_b = b.adjacency();
    let nb_a = a.undirected_neighbors();
    let nb_b = b.undirected_neighbors();
    let root = anchor.map_or(0, |(x, _)| x);
    // BFS order with a parent for every non-root vertex
    let mut order = vec![root];
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in &nb_a[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    if order.len() != n {
        // disconnected quivers are not handled by this search
        return Vec::new();
    }
    let degree = |q: &TranslationQuiver, v: usize| {
        let out = q.arrows.iter().filter(|&&(x, _)| x == v).count();
        let inn = q.arrows.iter().filter(|&&(_, y)| y == v).count();
        (out, inn)
    };
    let deg_a: Vec<_> = (0..n).map(|v| degree(a, v)).collect();
    let deg_b: Vec<_> = (0..n).map(|v| degree(b, v)).collect();
    let orbit_len = |q: &TranslationQuiver, v: usize| {
        let mut k = 1;
        let mut w = q.tau[v];
        while w != v {
            w = q.tau[w];
            k += 1;
        }
        k
    };
    let orb_a: Vec<_> = (0..n).map(|v| orbit_len(a, v)).collect();
    let orb_b: Vec<_> = (0..n).map(|v| orbit_len(b, v)).collect();
    let ctx = IsoCtx { n, a, b, adj_a: &adj_a, adj_b: &adj_b, nb_b: &nb_b, order: &order, parent: &parent, deg_a: &deg_a, deg_b: &deg_b, orb_a: &orb_a, orb_b: &orb_b, first_only };
    let roots: Vec<usize> = match anchor {
        Some((_, y)) => vec![y],
        None => (0..n).collect(),
    };
    let mut found: Vec<Vec<usize>> = roots
        .into_par_iter()
        .flat_map_iter(|img| {
            let mut out = Vec::new();
            if ctx.compatible(root, img) {
                let mut map = vec![usize::MAX; n];
                let mut used = vec![false; n];
                map[root] = img;
                used[img] = true;
                if ctx.locally_consistent(&map, root, img) {
                    ctx.extend(1, &mut map, &mut used, &mut out);
                }
            }
            out
        })
        .collect();
    found.sort();
    if first_only {
        found.truncate(1);
    }
    found
}

struct IsoCtx<'a> {
    n: usize,
    a: &'a TranslationQuiver,
    b: &'a TranslationQuiver,
    adj_a: &'a [u8],
    adj_b: &'a [u8],
    nb_b: &'a [Vec<usize>],
    order: &'a [usize],
    parent: &'a [usize],
    deg_a: &'a [(usize, usize)],
    deg_b: &'a [(usize, usize)],
    orb_a: &'a [usize],
    orb_b: &'a [usize],
    first_only: bool,
}

impl IsoCtx<'_> {
    fn compatible(&self, v: usize, w: usize) -> bool {
        self.deg_a[v] == self.deg_b[w] && self.orb_a[v] == self.orb_b[w]
    }

    fn locally_consistent(&self, map: &[usize], v: usize, w: usize) -> bool {
        let n = self.n;
        for u in 0..n {
            let fu = map[u];
            if fu == usize::MAX {
                continue;
            }
            if self.adj_a[u * n + v] != self.adj_b[fu * n + w] || self.adj_a[v * n + u] != self.adj_b[w * n + fu] {
                return false;
            }
            if (self.a.tau[u] == v) != (self.b.tau[fu] == w) || (self.a.tau[v] == u) != (self.b.tau[w] == fu) {
                return false;
            }
        }
        true
    }

    fn extend(&self, idx: usize, map: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if self.first_only && !out.is_empty() {
            return;
        }
        if idx == self.n {
            out.push(map.clone());
            return;
        }
        let v = self.order[idx];
        let pw = map[self.parent[v]];
        for &w in &self.nb_b[pw] {
            if used[w] || !self.compatible(v, w) || !self.locally_consistent(map, v, w) {
                continue;
            }
            map[v] = w;
            used[w] = true;
            self.extend(idx + 1, map, used, out);
            map[v] = usize::MAX;
            used[w] = false;
        }
    }
}

/// A vertex permutation of a quotient preserving arrows and commuting with τ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuiverAutomorphism {
    pub perm: Vec<usize>,
}

impl QuiverAutomorphism {
    pub fn apply(&self, v: usize) -> usize {
        self.perm[v]
    }

    pub fn compose(&self, other: &QuiverAutomorphism) -> QuiverAutomorphism {
        QuiverAutomorphism { perm: other.perm.iter().map(|&v| self.perm[v]).collect() }
    }

    pub fn inverse(&self) -> QuiverAutomorphism {
        let mut inv = vec![0; self.perm.len()];
        for (i, &j) in self.perm.iter().enumerate() {
            inv[j] = i;
        }
        QuiverAutomorphism { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// The stable translation quiver ℤQ/⟨ζτ^{-r}⟩ of an RFS type.
#[derive(Debug, Clone)]
pub struct StableTranslationQuiver {
    pub rfs_type: RfsType,
    pub r: usize,
    pub zeta: GraphAutomorphism,
    /// Canonical lifts `(p, q)` with `0 <= p < r`, sorted by `(p, q)`.
    pub vertices: Vec<ZVertex>,
    /// Arrows between vertex indices, sorted; repeated entries are
    /// multiple arrows.
    pub arrows: Vec<(usize, usize)>,
    pub tau: Vec<usize>,
    index: HashMap<ZVertex, usize>,
}

impl StableTranslationQuiver {
    pub fn graph(&self) -> DynkinGraph {
        self.rfs_type.graph
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Applies `(ζτ^{-r})^k`.
    pub fn deck(&self, v: ZVertex, k: i64) -> ZVertex {
        ZVertex::new(v.p + k * self.r as i64, self.zeta.power(k).apply(v.q))
    }

    /// Canonical representative of the orbit of `v` under the deck group.
    pub fn canonical(&self, v: ZVertex) -> ZVertex {
        let k = v.p.div_euclid(self.r as i64);
        self.deck(v, -k)
    }

    /// Index of the residue class of a ℤQ vertex.
    pub fn project(&self, v: ZVertex) -> usize {
        self.index[&self.canonical(v)]
    }

    pub fn index_of(&self, v: ZVertex) -> Option<usize> {
        self.index.get(&self.canonical(v)).copied()
    }

    /// `copies` consecutive preimages of vertex `v`, ascending by level.
    pub fn lift(&self, v: usize, copies: usize) -> Vec<ZVertex> {
        let base = self.vertices[v];
        (0..copies as i64).map(|k| self.deck(base, k)).collect()
    }

    pub fn tau_inv(&self, v: usize) -> usize {
        self.tau.iter().position(|&t| t == v).expect("permutation")
    }

    pub fn translation_quiver(&self) -> TranslationQuiver {
        TranslationQuiver { n: self.len(), arrows: self.arrows.clone(), tau: self.tau.clone() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": 1,
            "type": self.rfs_type,
            "vertices": self.vertices.iter().map(|v| [v.p, v.q as i64]).collect::<Vec<_>>(),
            "arrows": self.arrows,
            "tau": self.tau,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph stable_translation_quiver {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{v}\"];");
        }
        for &(a, b) in &self.arrows {
            let _ = writeln!(s, "  v{a} -> v{b};");
        }
        for (i, &t) in self.tau.iter().enumerate() {
            let _ = writeln!(s, "  v{i} -> v{t} [style=dashed, constraint=false];");
        }
        s.push_str("}\n");
        s
    }
}

pub fn quotient(t: &RfsType) -> Result<StableTranslationQuiver> {
    let (r, zeta) = admissible_group(t)?;
    let graph = t.graph;
    let mut vertices = Vec::with_capacity(graph.rank() * r);
    for p in 0..r as i64 {
        for q in graph.nodes() {
            vertices.push(ZVertex::new(p, q));
        }
    }
    let index: HashMap<ZVertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut quiver = StableTranslationQuiver { rfs_type: t.clone(), r, zeta, vertices, arrows: Vec::new(), tau: Vec::new(), index };
    let mut arrows = Vec::new();
    let mut tau = Vec::with_capacity(quiver.len());
    for (i, &v) in quiver.vertices.iter().enumerate() {
        for w in successors(&graph, v) {
            arrows.push((i, quiver.project(w)));
        }
        tau.push(quiver.project(v.tau()));
    }
    arrows.sort_unstable();
    quiver.arrows = arrows;
    quiver.tau = tau;
    Ok(quiver)
}

/// The group of translation-quiver automorphisms, sorted.
pub fn automorphisms(gamma: &StableTranslationQuiver) -> Vec<QuiverAutomorphism> {
    let tq = gamma.translation_quiver();
    isomorphisms(&tq, &tq, None, false).into_iter().map(|perm| QuiverAutomorphism { perm }).collect()
}
