//! Identification of the stable AR quiver of `N(e, L)` with the quotient
//! `ℤA_{L-1}/⟨τ^e⟩`.

use crate::config::Configuration;
use crate::dynkin::{DynkinGraph, RfsType};
use crate::error::{Error, Result};
use crate::ztquiver::{isomorphisms, quotient, StableTranslationQuiver, TranslationQuiver, ZVertex};

use super::{NakayamaAlgebra, SerialModule, SmsCandidate};

/// The stable AR quiver on the non-projectives, indexed as in
/// [`NakayamaAlgebra::non_projectives`]. Irreducible maps are the
/// quotients `M(t,l) -> M(t,l-1)` and the inclusions `M(t+1,l) -> M(t,l+1)`.
pub fn ar_quiver(alg: &NakayamaAlgebra) -> TranslationQuiver {
    let np = alg.non_projectives();
    let top = alg.loewy_length() - 1;
    let mut arrows = Vec::new();
    for &m in &np {
        if m.length >= 2 {
            arrows.push((alg.index(m), alg.index(SerialModule { top: m.top, length: m.length - 1 })));
        }
        if m.length < top {
            let t = alg.residue(m.top as i64 - 1);
            arrows.push((alg.index(m), alg.index(SerialModule { top: t, length: m.length + 1 })));
        }
    }
    arrows.sort_unstable();
    let tau = np.iter().map(|&m| alg.index(alg.tau(m).expect("non-projective"))).collect();
    TranslationQuiver { n: np.len(), arrows, tau }
}

/// The type `(A_{L-1}, e/(L-1), 1)` of the stable AR quiver.
pub fn matching_type(alg: &NakayamaAlgebra) -> RfsType {
    let n = alg.loewy_length() - 1;
    RfsType::with_frequency(DynkinGraph::a(n), alg.e() as i64, n as i64, 1)
}

/// A translation-quiver isomorphism from the AR quiver to the quotient.
#[derive(Debug, Clone)]
pub struct Transport {
    pub quiver: StableTranslationQuiver,
    /// Quotient vertex of each non-projective, by module index.
    pub map: Vec<usize>,
}

/// Builds the transport, sending `S_1` to the vertex `(0, 1)` when possible.
pub fn transport(alg: &NakayamaAlgebra) -> Result<Transport> {
    let quiver = quotient(&matching_type(alg))?;
    let ar = ar_quiver(alg);
    let tq = quiver.translation_quiver();
    let anchor = quiver.index_of(ZVertex::new(0, 1)).map(|b| (alg.index(alg.simple(1)), b));
    let mut found = isomorphisms(&ar, &tq, anchor, true);
    if found.is_empty() {
        found = isomorphisms(&ar, &tq, None, true);
    }
    let map = found.into_iter().next().ok_or_else(|| Error::InvalidAlgebra(format!("AR quiver of {alg} does not match its quotient")))?;
    Ok(Transport { quiver, map })
}

impl Transport {
    pub fn vertex(&self, alg: &NakayamaAlgebra, m: SerialModule) -> usize {
        self.map[alg.index(m)]
    }

    pub fn configuration(&self, alg: &NakayamaAlgebra, s: &SmsCandidate) -> Configuration {
        Configuration::new(s.modules.iter().map(|&m| self.vertex(alg, m)).collect())
    }

    pub fn coordinates(&self, alg: &NakayamaAlgebra, m: SerialModule) -> ZVertex {
        self.quiver.vertices[self.vertex(alg, m)]
    }
}
