//! Representations of the cyclic quiver bounded by paths of length `L`,
//! with exact kernels, cokernels, hom spaces and decomposition into
//! uniserials.

use num_traits::{One, Zero};

use super::{NakayamaAlgebra, SerialModule};
use crate::linalg::{Matrix, Q};

/// A representation: one space per vertex `0..e` and a matrix for every
/// arrow `i -> i+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rep {
    pub dims: Vec<usize>,
    /// `arrows[i]` has shape `dims[i+1] x dims[i]`.
    pub arrows: Vec<Matrix>,
}

/// A morphism of representations, one block per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMap {
    pub blocks: Vec<Matrix>,
}

/// Basis positions of a direct sum of serial modules.
struct Layout {
    e: usize,
    dims: Vec<usize>,
    offsets: Vec<Vec<usize>>,
}

impl Layout {
    fn new(alg: &NakayamaAlgebra, parts: &[SerialModule]) -> Self {
        let e = alg.e();
        let mut dims = vec![0; e];
        let mut offsets = Vec::with_capacity(parts.len());
        for m in parts {
            offsets.push(dims.clone());
            for k in 0..m.length {
                dims[(m.top - 1 + k) % e] += 1;
            }
        }
        Layout { e, dims, offsets }
    }

    fn vertex(&self, m: &SerialModule, k: usize) -> usize {
        (m.top - 1 + k) % self.e
    }

    fn index(&self, parts: &[SerialModule], s: usize, k: usize) -> (usize, usize) {
        let v = self.vertex(&parts[s], k);
        (v, self.offsets[s][v] + k / self.e)
    }
}

impl Rep {
    pub fn serial(alg: &NakayamaAlgebra, m: SerialModule) -> Rep {
        Rep::sum(alg, &[m])
    }

    pub fn sum(alg: &NakayamaAlgebra, parts: &[SerialModule]) -> Rep {
        let lay = Layout::new(alg, parts);
        let e = lay.e;
        let mut arrows: Vec<Matrix> = (0..e).map(|i| Matrix::zeros(lay.dims[(i + 1) % e], lay.dims[i])).collect();
        for (s, m) in parts.iter().enumerate() {
            for k in 0..m.length.saturating_sub(1) {
                let (v, a) = lay.index(parts, s, k);
                let (_, b) = lay.index(parts, s, k + 1);
                arrows[v][(b, a)] = Q::one();
            }
        }
        Rep { dims: lay.dims, arrows }
    }

    pub fn zero(e: usize) -> Rep {
        Rep { dims: vec![0; e], arrows: (0..e).map(|_| Matrix::zeros(0, 0)).collect() }
    }

    pub fn vertices(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// The composite of `k` arrows starting at vertex `t`.
    pub fn path(&self, t: usize, k: usize) -> Matrix {
        let e = self.vertices();
        let mut m = Matrix::identity(self.dims[t]);
        for j in 0..k {
            m = self.arrows[(t + j) % e].mul(&m);
        }
        m
    }

    /// Multiplicities of the uniserial summands, as `(top vertex, length)`.
    pub fn decompose(&self, max_length: usize) -> Vec<(usize, usize, usize)> {
        let e = self.vertices();
        let ranks: Vec<Vec<usize>> = (0..e).map(|t| (0..=max_length + 1).map(|k| self.path(t, k).rank()).collect()).collect();
        // summands with top at `t` and length at least `m`
        let at_least = |t: usize, m: usize| -> usize {
            if m > max_length {
                return 0;
            }
            ranks[t][m - 1] - ranks[(t + e - 1) % e][m]
        };
        let mut out = Vec::new();
        for t in 0..e {
            for m in 1..=max_length {
                let c = at_least(t, m) - at_least(t, m + 1);
                if c > 0 {
                    out.push((t, m, c));
                }
            }
        }
        out
    }

    /// Whether every path of length `loewy` acts as zero.
    pub fn respects_loewy_length(&self, loewy: usize) -> bool {
        (0..self.vertices()).all(|t| self.path(t, loewy).is_zero())
    }
}

impl RepMap {
    pub fn zero(src: &Rep, tgt: &Rep) -> RepMap {
        RepMap { blocks: (0..src.vertices()).map(|i| Matrix::zeros(tgt.dims[i], src.dims[i])).collect() }
    }

    /// The map between sums of serial modules whose `(a, b, d)` entries are
    /// graph maps of depth `d` from source summand `a` to target summand `b`.
    pub fn graph(alg: &NakayamaAlgebra, src: &[SerialModule], tgt: &[SerialModule], entries: &[(usize, usize, usize)]) -> RepMap {
        let ls = Layout::new(alg, src);
        let lt = Layout::new(alg, tgt);
        let mut blocks: Vec<Matrix> = (0..alg.e()).map(|i| Matrix::zeros(lt.dims[i], ls.dims[i])).collect();
        for &(a, b, d) in entries {
            debug_assert!(alg.graph_depths(src[a], tgt[b]).contains(&d), "not a graph map");
            for k in 0..src[a].length {
                if k + d < tgt[b].length {
                    let (v, i) = ls.index(src, a, k);
                    let (w, j) = lt.index(tgt, b, k + d);
                    debug_assert_eq!(v, w);
                    blocks[v][(j, i)] += Q::one();
                }
            }
        }
        RepMap { blocks }
    }

    pub fn compose(&self, first: &RepMap) -> RepMap {
        RepMap { blocks: self.blocks.iter().zip(&first.blocks).map(|(g, f)| g.mul(f)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn flatten(&self) -> Vec<Q> {
        let mut out = Vec::new();
        for b in &self.blocks {
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    out.push(b[(i, j)]);
                }
            }
        }
        out
    }

    /// Whether `self` commutes with the arrows of `src` and `tgt`.
    pub fn is_morphism(&self, src: &Rep, tgt: &Rep) -> bool {
        let e = src.vertices();
        (0..e).all(|i| self.blocks[(i + 1) % e].mul(&src.arrows[i]) == tgt.arrows[i].mul(&self.blocks[i]))
    }
}

pub fn kernel(src: &Rep, f: &RepMap) -> Rep {
    let e = src.vertices();
    let bases: Vec<Matrix> = f.blocks.iter().map(Matrix::nullspace).collect();
    let arrows = (0..e)
        .map(|i| {
            let image = src.arrows[i].mul(&bases[i]);
            bases[(i + 1) % e].solve(&image).expect("kernel is a subrepresentation")
        })
        .collect();
    Rep { dims: bases.iter().map(Matrix::cols).collect(), arrows }
}

pub fn cokernel(tgt: &Rep, f: &RepMap) -> Rep {
    let e = tgt.vertices();
    let quotients: Vec<Matrix> = f.blocks.iter().map(Matrix::left_nullspace).collect();
    let sections: Vec<Matrix> = quotients
        .iter()
        .map(|y| if y.rows() == 0 { Matrix::zeros(y.cols(), 0) } else { y.solve(&Matrix::identity(y.rows())).expect("quotient map has full row rank") })
        .collect();
    let arrows = (0..e).map(|i| quotients[(i + 1) % e].mul(&tgt.arrows[i]).mul(&sections[i])).collect();
    Rep { dims: quotients.iter().map(Matrix::rows).collect(), arrows }
}

/// A basis of `Hom(m, n)`.
pub fn hom_basis(m: &Rep, n: &Rep) -> Vec<RepMap> {
    let e = m.vertices();
    let mut offsets = Vec::with_capacity(e);
    let mut vars = 0;
    for i in 0..e {
        offsets.push(vars);
        vars += n.dims[i] * m.dims[i];
    }
    let var = |i: usize, r: usize, c: usize| offsets[i] + r * m.dims[i] + c;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for i in 0..e {
        let j = (i + 1) % e;
        // f_j * A^m_i - A^n_i * f_i = 0, entry (r, c)
        for r in 0..n.dims[j] {
            for c in 0..m.dims[i] {
                let mut row = vec![Q::zero(); vars];
                for s in 0..m.dims[j] {
                    row[var(j, r, s)] += m.arrows[i][(s, c)];
                }
                for s in 0..n.dims[i] {
                    row[var(i, s, c)] -= n.arrows[i][(r, s)];
                }
                rows.push(row);
            }
        }
    }
    let mut system = Matrix::zeros(rows.len(), vars);
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            system[(i, j)] = *x;
        }
    }
    let null = system.nullspace();
    (0..null.cols())
        .map(|k| {
            let blocks = (0..e)
                .map(|i| {
                    let mut b = Matrix::zeros(n.dims[i], m.dims[i]);
                    for r in 0..n.dims[i] {
                        for c in 0..m.dims[i] {
                            b[(r, c)] = null[(var(i, r, c), k)];
                        }
                    }
                    b
                })
                .collect();
            RepMap { blocks }
        })
        .collect()
}

/// Dimension of the span of the given maps.
pub fn span_dim(maps: &[RepMap]) -> usize {
    let Some(first) = maps.first() else {
        return 0;
    };
    let len = first.flatten().len();
    let cols: Vec<Vec<Q>> = maps.iter().map(RepMap::flatten).collect();
    Matrix::from_columns(len, &cols).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(e: usize, l: usize) -> NakayamaAlgebra {
        NakayamaAlgebra::new(e, l).unwrap()
    }

    #[test]
    fn serial_module_shape() {
        let a = alg(4, 5);
        let r = Rep::serial(&a, a.module(2, 4).unwrap());
        assert_eq!(r.dims, vec![1, 1, 1, 1]);
        assert!(r.respects_loewy_length(5));
        assert_eq!(r.decompose(5), vec![(1, 4, 1)]);
        let p = Rep::serial(&a, a.module(1, 5).unwrap());
        assert_eq!(p.dims, vec![2, 1, 1, 1]);
        assert!(!p.path(0, 4).is_zero());
        assert!(p.path(0, 5).is_zero());
    }

    #[test]
    fn decomposition_of_sums() {
        let a = alg(2, 4);
        let parts = [a.module(1, 3).unwrap(), a.module(2, 1).unwrap(), a.module(1, 3).unwrap(), a.module(2, 4).unwrap()];
        let r = Rep::sum(&a, &parts);
        assert_eq!(r.decompose(4), vec![(0, 3, 2), (1, 1, 1), (1, 4, 1)]);
    }

    #[test]
    fn radical_of_projective_is_a_kernel() {
        let a = alg(4, 5);
        let p = a.module(1, 5).unwrap();
        let s = a.module(1, 1).unwrap();
        let f = RepMap::graph(&a, &[p], &[s], &[(0, 0, 0)]);
        let src = Rep::serial(&a, p);
        assert!(f.is_morphism(&src, &Rep::serial(&a, s)));
        assert_eq!(kernel(&src, &f).decompose(5), vec![(1, 4, 1)]);
        let inc = RepMap::graph(&a, &[a.module(2, 4).unwrap()], &[p], &[(0, 0, 1)]);
        assert_eq!(cokernel(&src, &inc).decompose(5), vec![(0, 1, 1)]);
    }

    #[test]
    fn hom_dims_match_graph_maps() {
        let a = alg(2, 4);
        let mods: Vec<SerialModule> = a.all_modules();
        for &m in &mods {
            for &n in &mods {
                let basis = hom_basis(&Rep::serial(&a, m), &Rep::serial(&a, n));
                assert_eq!(basis.len(), a.graph_depths(m, n).len(), "{m} -> {n}");
            }
        }
    }
}
