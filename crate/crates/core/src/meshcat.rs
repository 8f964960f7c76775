//! Hom-space dimensions in mesh categories.
//!
//! Two independent routes compute `dim Hom_{k(ℤQ)}(x, y)`:
//! [`hom_table_oracle`] builds the quotient of the path category by the
//! mesh ideal with exact linear algebra, and [`hom_table_fast`] runs the
//! clamped additive recursion. Quotient dimensions are sums over lifts
//! (the covering formula) of the fast values.

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::dynkin::DynkinGraph;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ztquiver::{predecessors, StableTranslationQuiver, Window, ZVertex};

/// Environment variable naming a directory for memoized hom tables.
pub const CACHE_DIR_ENV: &str = "RFS_HOM_CACHE_DIR";

/// Dimensions of `Hom(source, -)` on every vertex of a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomTable {
    pub source: ZVertex,
    pub dims: BTreeMap<ZVertex, usize>,
    pub p_min: i64,
    pub p_max: i64,
}

impl HomTable {
    pub fn get(&self, y: ZVertex) -> usize {
        self.dims.get(&y).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = (ZVertex, usize)> + '_ {
        self.dims.iter().filter(|(_, &d)| d > 0).map(|(&v, &d)| (v, d))
    }
}

fn check_window(w: &Window, x: ZVertex, y: Option<ZVertex>) -> Result<()> {
    let needed = 2 * w.graph.coxeter_number() as i64 + 2;
    if w.width() < needed {
        return Err(Error::WindowTooSmall { needed, got: w.width() });
    }
    for v in std::iter::once(x).chain(y) {
        if !w.contains(v) {
            return Err(Error::OutsideWindow { p: v.p, q: v.q, p_min: w.p_min, p_max: w.p_max });
        }
    }
    Ok(())
}

/// Window vertices reachable from `x` by grade, in grade order.
fn forward_vertices(w: &Window, x: ZVertex) -> Vec<ZVertex> {
    let g = &w.graph;
    let gx = x.grade(g);
    let mut vs: Vec<ZVertex> = w.vertices.iter().copied().filter(|v| v.grade(g) >= gx).collect();
    vs.sort_by_key(|v| (v.grade(g), v.q));
    vs
}

/// `Hom(x, -)` in the path category of the window modulo the mesh ideal.
///
/// Each `k(x, y)` is the cokernel of `k(x, τy) -> ⊕_{u -> y} k(x, u)`
/// induced by the mesh ending at `y`; the maps induced by arrows are kept
/// explicitly so ranks are exact.
pub fn hom_table_oracle(w: &Window, x: ZVertex) -> Result<HomTable> {
    check_window(w, x, None)?;
    let g = &w.graph;
    // dims and the matrix of every arrow u -> y acting k(x,u) -> k(x,y)
    let mut dim: HashMap<ZVertex, usize> = HashMap::new();
    let mut arrow_map: HashMap<(ZVertex, ZVertex), Matrix> = HashMap::new();
    for y in forward_vertices(w, x) {
        if y == x {
            dim.insert(y, 1);
            continue;
        }
        let preds: Vec<ZVertex> = predecessors(g, y).into_iter().filter(|u| dim.get(u).copied().unwrap_or(0) > 0).collect();
        let total: usize = preds.iter().map(|u| dim[u]).sum();
        if total == 0 {
            dim.insert(y, 0);
            continue;
        }
        let ty = y.tau();
        let dty = dim.get(&ty).copied().unwrap_or(0);
        // relation matrix: block u is the map k(x,τy) -> k(x,u) along τy -> u
        let mut rel = Matrix::zeros(total, dty);
        if dty > 0 {
            let mut off = 0;
            for u in &preds {
                if let Some(m) = arrow_map.get(&(ty, *u)) {
                    for i in 0..m.rows() {
                        for j in 0..m.cols() {
                            rel[(off + i, j)] = m[(i, j)];
                        }
                    }
                }
                off += dim[u];
            }
        }
        let proj = rel.left_nullspace();
        let dy = proj.rows();
        dim.insert(y, dy);
        if dy == 0 {
            continue;
        }
        let mut off = 0;
        for u in &preds {
            let du = dim[u];
            let mut m = Matrix::zeros(dy, du);
            for i in 0..dy {
                for j in 0..du {
                    m[(i, j)] = proj[(i, off + j)];
                }
            }
            arrow_map.insert((*u, y), m);
            off += du;
        }
    }
    let dims = w.vertices.iter().map(|&v| (v, dim.get(&v).copied().unwrap_or(0))).collect();
    Ok(HomTable { source: x, dims, p_min: w.p_min, p_max: w.p_max })
}

/// Clamped additive recursion: `h(x) = 1`, otherwise
/// `h(y) = max(0, Σ_{u -> y} h(u) - h(τy))`.
pub fn hom_table_fast(w: &Window, x: ZVertex) -> Result<HomTable> {
    check_window(w, x, None)?;
    let g = &w.graph;
    let mut h: HashMap<ZVertex, i64> = HashMap::new();
    for y in forward_vertices(w, x) {
        let val = if y == x {
            1
        } else {
            let s: i64 = predecessors(g, y).iter().map(|u| h.get(u).copied().unwrap_or(0)).sum();
            (s - h.get(&y.tau()).copied().unwrap_or(0)).max(0)
        };
        h.insert(y, val);
    }
    let dims = w.vertices.iter().map(|&v| (v, h.get(&v).copied().unwrap_or(0) as usize)).collect();
    Ok(HomTable { source: x, dims, p_min: w.p_min, p_max: w.p_max })
}

pub fn hom_dim_oracle(w: &Window, x: ZVertex, y: ZVertex) -> Result<usize> {
    check_window(w, x, Some(y))?;
    Ok(hom_table_oracle(w, x)?.get(y))
}

pub fn hom_dim_fast(w: &Window, x: ZVertex, y: ZVertex) -> Result<usize> {
    check_window(w, x, Some(y))?;
    Ok(hom_table_fast(w, x)?.get(y))
}

/// τ-equivariant hom tables of ℤQ: `dims[q0-1][dp][q1-1]` is
/// `dim Hom((0, q0), (dp, q1))` for `0 <= dp <= 2 h_Q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeshHoms {
    pub family: char,
    pub rank: usize,
    pub band: i64,
    pub dims: Vec<Vec<Vec<u32>>>,
}

impl MeshHoms {
    pub fn compute(graph: DynkinGraph) -> Self {
        let h = graph.coxeter_number() as i64;
        let band = 2 * h;
        let w = crate::ztquiver::build_window(graph, 0, band + 1);
        let dims = graph
            .nodes()
            .map(|q0| {
                let t = hom_table_fast(&w, ZVertex::new(0, q0)).expect("window sized to band");
                let rows: Vec<Vec<u32>> = (0..=band).map(|dp| graph.nodes().map(|q1| t.get(ZVertex::new(dp, q1)) as u32).collect()).collect();
                // nonzero values must stay in the inner half of the band
                for (dp, row) in rows.iter().enumerate() {
                    assert!(dp as i64 <= h || row.iter().all(|&d| d == 0), "hom support of {graph} escapes h_Q slices at dp={dp}");
                }
                assert!(t.get(ZVertex::new(band + 1, q0)) == 0);
                rows
            })
            .collect();
        MeshHoms { family: graph.family().letter(), rank: graph.rank(), band, dims }
    }

    /// Dimension of `Hom(x, y)` in k(ℤQ); zero outside the band.
    pub fn hom(&self, x: ZVertex, y: ZVertex) -> u32 {
        let dp = y.p - x.p;
        if !(0..=self.band).contains(&dp) {
            return 0;
        }
        self.dims[x.q - 1][dp as usize][y.q - 1]
    }
}

fn cache() -> &'static Mutex<HashMap<DynkinGraph, Arc<MeshHoms>>> {
    static CACHE: OnceLock<Mutex<HashMap<DynkinGraph, Arc<MeshHoms>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn disk_path(graph: DynkinGraph) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_DIR_ENV)?;
    Some(PathBuf::from(dir).join(format!("hom_{graph}.json")))
}

/// Memoized [`MeshHoms`] for a tree class. Concurrent callers may compute
/// the same table twice; the first insert wins.
pub fn mesh_homs(graph: DynkinGraph) -> Arc<MeshHoms> {
    if let Some(t) = cache().lock().expect("hom cache poisoned").get(&graph) {
        return Arc::clone(t);
    }
    let path = disk_path(graph);
    let loaded = path
        .as_ref()
        .and_then(|p| std::fs::read_to_string(p).ok())
        .and_then(|s| serde_json::from_str::<MeshHoms>(&s).ok())
        .filter(|t| t.family == graph.family().letter() && t.rank == graph.rank());
    let table = match loaded {
        Some(t) => t,
        None => {
            let t = MeshHoms::compute(graph);
            if let Some(p) = &path {
                if let Some(dir) = p.parent() {
                    let _ = std::fs::create_dir_all(dir);
                }
                let _ = std::fs::write(p, serde_json::to_string(&t).expect("serializable"));
            }
            t
        }
    };
    let mut guard = cache().lock().expect("hom cache poisoned");
    Arc::clone(guard.entry(graph).or_insert_with(|| Arc::new(table)))
}

/// Hom dimensions between all vertex pairs of a quotient, via the covering
/// formula `Hom(πe, πf) = ⊕_{πh = πf} Hom(e, h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientHoms {
    n: usize,
    dims: Vec<u32>,
}

impl QuotientHoms {
    pub fn compute(gamma: &StableTranslationQuiver) -> Self {
        Self::compute_with_extra(gamma, 0)
    }

    /// Sums over lifts reaching `extra` deck translates past the band on
    /// both sides; the result must not depend on `extra`.
    pub fn compute_with_extra(gamma: &StableTranslationQuiver, extra: i64) -> Self {
        let homs = mesh_homs(gamma.graph());
        let n = gamma.len();
        let r = gamma.r as i64;
        let mut dims = vec![0u32; n * n];
        for (i, &e) in gamma.vertices.iter().enumerate() {
            for (j, &f) in gamma.vertices.iter().enumerate() {
                let k_min = (e.p - f.p).div_euclid(r) - extra;
                let k_max = (e.p + homs.band - f.p).div_euclid(r) + 1 + extra;
                dims[i * n + j] = (k_min..=k_max).map(|k| homs.hom(e, gamma.deck(f, k))).sum();
            }
        }
        QuotientHoms { n, dims }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, e: usize, f: usize) -> u32 {
        self.dims[e * self.n + f]
    }
}

pub fn quotient_hom_dim(gamma: &StableTranslationQuiver, e: usize, f: usize) -> u32 {
    QuotientHoms::compute(gamma).get(e, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::RfsType;
    use crate::ztquiver::{automorphisms, build_window, quotient};

    fn graphs() -> Vec<DynkinGraph> {
        vec![DynkinGraph::a(2), DynkinGraph::a(3), DynkinGraph::a(4), DynkinGraph::d(4)]
    }

    #[test]
    fn window_too_small_is_an_error() {
        let g = DynkinGraph::a(3);
        let w = build_window(g, 0, 5);
        assert!(matches!(hom_dim_oracle(&w, ZVertex::new(0, 1), ZVertex::new(1, 1)), Err(Error::WindowTooSmall { .. })));
        let w = build_window(g, 0, 9);
        assert!(matches!(hom_dim_fast(&w, ZVertex::new(0, 1), ZVertex::new(12, 1)), Err(Error::OutsideWindow { .. })));
    }

    #[test]
    fn identity_and_tau() {
        for g in graphs() {
            let h = g.coxeter_number() as i64;
            let w = build_window(g, -1, 2 * h + 1);
            for q in g.nodes() {
                let x = ZVertex::new(0, q);
                assert_eq!(hom_dim_oracle(&w, x, x).unwrap(), 1);
                assert_eq!(hom_dim_oracle(&w, x, x.tau()).unwrap(), 0);
                assert_eq!(hom_dim_fast(&w, x, x).unwrap(), 1);
            }
        }
    }

    #[test]
    fn a2_hammock() {
        // ℤA_2: Hom((0,1), -) is supported on (0,1) and (0,2) only
        let g = DynkinGraph::a(2);
        let w = build_window(g, 0, 7);
        let t = hom_table_oracle(&w, ZVertex::new(0, 1)).unwrap();
        let support: Vec<_> = t.support().collect();
        assert_eq!(support, vec![(ZVertex::new(0, 1), 1), (ZVertex::new(0, 2), 1)]);
    }

    #[test]
    fn stabilized_lift_sums() {
        for s in ["A:2/f=1/2/t=1", "A:3/f=1/t=2", "D:4/f=1/t=1", "D:4/f=1/t=3", "A:1/f=2/t=1"] {
            let g = quotient(&s.parse::<RfsType>().unwrap()).unwrap();
            assert_eq!(QuotientHoms::compute(&g), QuotientHoms::compute_with_extra(&g, 3), "{s}");
        }
    }

    #[test]
    fn quotient_homs_are_automorphism_invariant() {
        let g = quotient(&"A:3/f=1/t=2".parse::<RfsType>().unwrap()).unwrap();
        let qh = QuotientHoms::compute(&g);
        for a in automorphisms(&g) {
            for e in 0..g.len() {
                for f in 0..g.len() {
                    assert_eq!(qh.get(e, f), qh.get(a.apply(e), a.apply(f)));
                }
            }
        }
    }

    #[test]
    fn quotient_rows_are_finite_and_diagonal_positive() {
        let g = quotient(&"D:4/f=1/t=1".parse::<RfsType>().unwrap()).unwrap();
        let qh = QuotientHoms::compute(&g);
        for e in 0..g.len() {
            assert!(qh.get(e, e) >= 1);
            let row: u32 = (0..g.len()).map(|f| qh.get(e, f)).sum();
            assert!(row > 0 && row < 1000);
        }
    }
}
