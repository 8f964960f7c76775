//! Self-injective Nakayama algebras `N(e, L)`: the cyclic quiver on `e`
//! vertices with arrows `i -> i+1`, bounded by all paths of length `L`.
//!
//! Indecomposable modules are the uniserials `M(t, l)` with top `t` and
//! composition factors `t, t+1, ..., t+l-1` (mod `e`).

pub mod rep;
mod sms;
mod transport;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use rep::{hom_basis, span_dim, Rep, RepMap};

pub use sms::{
    all_sms, ext_closure, is_orthogonal, is_sms, is_wsms, minimal_left_approximation, minimal_right_approximation, mutate_left, mutate_right, orthogonal_candidates,
    Approximation, SmsCandidate, DEFAULT_SMS_BOUND,
};
pub use transport::{ar_quiver, matching_type, transport, Transport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SerialModule {
    pub top: usize,
    pub length: usize,
}

impl fmt::Display for SerialModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{})", self.top, self.length)
    }
}

type SummandKey = (bool, Vec<SerialModule>, Vec<SerialModule>, Vec<(usize, usize, usize)>);

#[derive(Default)]
struct Caches {
    summands: Mutex<HashMap<SummandKey, Vec<SerialModule>>>,
}

/// The algebra `N(e, L)`. Clones share a cache of computed kernels and
/// cokernels.
#[derive(Clone)]
pub struct NakayamaAlgebra {
    e: usize,
    loewy: usize,
    caches: Arc<Caches>,
}

impl fmt::Debug for NakayamaAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N({},{})", self.e, self.loewy)
    }
}

impl fmt::Display for NakayamaAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nakayama:{}:{}", self.e, self.loewy)
    }
}

impl PartialEq for NakayamaAlgebra {
    fn eq(&self, other: &Self) -> bool {
        (self.e, self.loewy) == (other.e, other.loewy)
    }
}

impl Eq for NakayamaAlgebra {}

impl FromStr for NakayamaAlgebra {
    type Err = Error;

    /// Parses `nakayama:E:L`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["nakayama", e, l] => {
                let e = e.parse().map_err(|_| Error::Parse(format!("bad number of simples in {s:?}")))?;
                let l = l.parse().map_err(|_| Error::Parse(format!("bad Loewy length in {s:?}")))?;
                NakayamaAlgebra::new(e, l)
            }
            _ => Err(Error::Parse(format!("expected nakayama:E:L, got {s:?}"))),
        }
    }
}

impl NakayamaAlgebra {
    pub fn new(e: usize, loewy: usize) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidAlgebra("need at least one simple".into()));
        }
        if loewy < 2 {
            return Err(Error::InvalidAlgebra("Loewy length must be at least 2".into()));
        }
        Ok(NakayamaAlgebra { e, loewy, caches: Arc::default() })
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn loewy_length(&self) -> usize {
        self.loewy
    }

    pub fn is_symmetric(&self) -> bool {
        (self.loewy - 1).is_multiple_of(self.e)
    }

    /// The residue of `i` in `1..=e`.
    pub fn residue(&self, i: i64) -> usize {
        (i - 1).rem_euclid(self.e as i64) as usize + 1
    }

    pub fn module(&self, top: i64, length: usize) -> Result<SerialModule> {
        if length == 0 || length > self.loewy {
            return Err(Error::InvalidModule(format!("length {length} outside 1..={}", self.loewy)));
        }
        Ok(SerialModule { top: self.residue(top), length })
    }

    pub fn validate(&self, m: SerialModule) -> Result<SerialModule> {
        if m.top == 0 || m.top > self.e || m.length == 0 || m.length > self.loewy {
            return Err(Error::InvalidModule(format!("{m} is not a module of {self}")));
        }
        Ok(m)
    }

    pub fn is_projective(&self, m: SerialModule) -> bool {
        m.length == self.loewy
    }

    fn non_projective(&self, m: SerialModule) -> Result<SerialModule> {
        self.validate(m)?;
        if self.is_projective(m) {
            return Err(Error::Projective { top: m.top, length: m.length });
        }
        Ok(m)
    }

    pub fn simple(&self, i: i64) -> SerialModule {
        SerialModule { top: self.residue(i), length: 1 }
    }

    pub fn simples(&self) -> Vec<SerialModule> {
        (1..=self.e as i64).map(|i| self.simple(i)).collect()
    }

    pub fn projective(&self, i: i64) -> SerialModule {
        SerialModule { top: self.residue(i), length: self.loewy }
    }

    pub fn all_modules(&self) -> Vec<SerialModule> {
        (1..=self.e).flat_map(|top| (1..=self.loewy).map(move |length| SerialModule { top, length })).collect()
    }

    /// All indecomposable non-projectives, sorted by `(top, length)`.
    pub fn non_projectives(&self) -> Vec<SerialModule> {
        (1..=self.e).flat_map(|top| (1..self.loewy).map(move |length| SerialModule { top, length })).collect()
    }

    pub fn num_non_projectives(&self) -> usize {
        self.e * (self.loewy - 1)
    }

    /// Position of a non-projective in [`Self::non_projectives`].
    pub fn index(&self, m: SerialModule) -> usize {
        (m.top - 1) * (self.loewy - 1) + m.length - 1
    }

    pub fn composition_factors(&self, m: SerialModule) -> Vec<usize> {
        (0..m.length as i64).map(|k| self.residue(m.top as i64 + k)).collect()
    }

    /// Composition factors from top to socle, e.g. `1/2/3`.
    pub fn column(&self, m: SerialModule) -> String {
        self.composition_factors(m).iter().map(ToString::to_string).collect::<Vec<_>>().join("/")
    }

    pub fn socle(&self, m: SerialModule) -> usize {
        self.residue(m.top as i64 + m.length as i64 - 1)
    }

    pub fn injective_envelope(&self, m: SerialModule) -> SerialModule {
        self.projective(m.top as i64 + m.length as i64 - self.loewy as i64)
    }

    /// Kernel of the projective cover: `Ω M(t,l) = M(t+l, L-l)`.
    pub fn omega(&self, m: SerialModule) -> Result<SerialModule> {
        let m = self.non_projective(m)?;
        Ok(SerialModule { top: self.residue((m.top + m.length) as i64), length: self.loewy - m.length })
    }

    /// Cokernel of the injective envelope.
    pub fn omega_inv(&self, m: SerialModule) -> Result<SerialModule> {
        let m = self.non_projective(m)?;
        let length = self.loewy - m.length;
        Ok(SerialModule { top: self.residue(m.top as i64 - length as i64), length })
    }

    /// The Nakayama permutation on isoclasses, from `soc P(i) = S(i+L-1)`.
    pub fn nu(&self, m: SerialModule) -> SerialModule {
        SerialModule { top: self.residue(m.top as i64 - self.loewy as i64 + 1), length: m.length }
    }

    /// The Auslander-Reiten translate `M(t,l) -> M(t+1,l)`.
    pub fn tau(&self, m: SerialModule) -> Result<SerialModule> {
        let m = self.non_projective(m)?;
        Ok(SerialModule { top: self.residue(m.top as i64 + 1), length: m.length })
    }

    /// Depths `d` of the graph maps `M(t,l) -> M(t',l')`, `v_k -> w_{k+d}`;
    /// these form a basis of the hom space.
    pub fn graph_depths(&self, m: SerialModule, n: SerialModule) -> Vec<usize> {
        let shift = m.top as i64 - n.top as i64;
        (0..n.length).filter(|&d| (shift - d as i64).rem_euclid(self.e as i64) == 0 && n.length - d <= m.length).collect()
    }

    /// Graph maps that do not factor through a projective.
    pub fn stable_depths(&self, m: SerialModule, n: SerialModule) -> Vec<usize> {
        if self.is_projective(m) || self.is_projective(n) {
            return Vec::new();
        }
        self.graph_depths(m, n).into_iter().filter(|&d| d + m.length < self.loewy).collect()
    }

    pub fn hom_dim(&self, m: SerialModule, n: SerialModule) -> usize {
        self.graph_depths(m, n).len()
    }

    pub fn stable_hom_dim(&self, m: SerialModule, n: SerialModule) -> Result<usize> {
        self.non_projective(m)?;
        self.non_projective(n)?;
        Ok(self.stable_depths(m, n).len())
    }

    /// Stable hom dimension by linear algebra: `dim Hom(M,N)` minus the
    /// rank of the maps factoring through the projective cover of `N`.
    pub fn stable_hom_dim_linalg(&self, m: SerialModule, n: SerialModule) -> Result<usize> {
        self.non_projective(m)?;
        self.non_projective(n)?;
        let rm = Rep::serial(self, m);
        let rn = Rep::serial(self, n);
        let p = self.projective(n.top as i64);
        let homs = hom_basis(&rm, &rn);
        let cover = RepMap::graph(self, &[p], &[n], &[(0, 0, 0)]);
        let through: Vec<RepMap> = hom_basis(&rm, &Rep::serial(self, p)).iter().map(|h| cover.compose(h)).collect();
        Ok(homs.len() - span_dim(&through))
    }

    /// Stable hom dimensions between all non-projectives.
    pub fn stable_hom_table(&self) -> Vec<Vec<usize>> {
        let np = self.non_projectives();
        np.iter().map(|&m| np.iter().map(|&n| self.stable_depths(m, n).len()).collect()).collect()
    }

    /// Non-projective summands of the kernel (`kernel = true`) or cokernel
    /// of a map between sums of serial modules given by graph-map entries.
    pub(crate) fn stripped(&self, kernel: bool, src: &[SerialModule], tgt: &[SerialModule], entries: &[(usize, usize, usize)]) -> Vec<SerialModule> {
        let key: SummandKey = (kernel, src.to_vec(), tgt.to_vec(), entries.to_vec());
        if let Some(v) = self.caches.summands.lock().expect("cache lock").get(&key) {
            return v.clone();
        }
        let f = RepMap::graph(self, src, tgt, entries);
        let rep = if kernel { rep::kernel(&Rep::sum(self, src), &f) } else { rep::cokernel(&Rep::sum(self, tgt), &f) };
        let mut out = Vec::new();
        for (t, l, c) in rep.decompose(self.loewy) {
            if l < self.loewy {
                out.extend(std::iter::repeat_n(SerialModule { top: t + 1, length: l }, c));
            }
        }
        self.caches.summands.lock().expect("cache lock").insert(key, out.clone());
        out
    }
}
