//! Simple-minded systems over `N(e, L)`: orthogonality, the layered
//! generating closure, extension closures, approximations and mutation.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{NakayamaAlgebra, SerialModule};
use crate::error::{Error, Result};

/// Largest `e (L - 1)` accepted by [`all_sms`] by default.
pub const DEFAULT_SMS_BOUND: usize = 16;

/// A finite set of non-projective serial modules, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SmsCandidate {
    pub modules: Vec<SerialModule>,
}

impl SmsCandidate {
    pub fn new(mut modules: Vec<SerialModule>) -> Self {
        modules.sort_unstable();
        modules.dedup();
        SmsCandidate { modules }
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn contains(&self, m: &SerialModule) -> bool {
        self.modules.binary_search(m).is_ok()
    }

    pub fn columns(&self, alg: &NakayamaAlgebra) -> Vec<String> {
        self.modules.iter().map(|&m| alg.column(m)).collect()
    }
}

impl fmt::Display for SmsCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.modules.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn check_members(alg: &NakayamaAlgebra, set: &[SerialModule]) -> Result<()> {
    for &m in set {
        alg.non_projective(m)?;
    }
    Ok(())
}

/// Stable endomorphisms are one-dimensional and stable homs between
/// distinct members vanish.
pub fn is_orthogonal(alg: &NakayamaAlgebra, set: &[SerialModule]) -> bool {
    if set.iter().any(|&m| alg.validate(m).is_err() || alg.is_projective(m)) {
        return false;
    }
    set.iter().enumerate().all(|(i, &m)| set.iter().enumerate().all(|(j, &n)| alg.stable_depths(m, n).len() == usize::from(i == j)))
}

pub fn is_wsms(alg: &NakayamaAlgebra, s: &SmsCandidate) -> bool {
    is_orthogonal(alg, &s.modules) && alg.non_projectives().into_iter().all(|x| s.modules.iter().any(|&t| !alg.stable_depths(x, t).is_empty()))
}

/// Largest number of stable maps `Y -> Z` tried jointly in one sequence.
const MAX_JOINT_MAPS: usize = 14;

/// Least set of indecomposables containing `gens` and closed under the
/// step `Y ∈ ⟨C⟩ * ⟨gens⟩`: some short exact sequence
/// `0 -> X -> Y ⊕ P -> Z -> 0` with `X ∈ add C` and `Z ∈ add gens`.
///
/// The map `Y -> Z` runs over sums of graph maps `Y -> G` into the
/// generators; `P` is the projective cover of `Z`.
fn generated(alg: &NakayamaAlgebra, gens: &[SerialModule]) -> Vec<bool> {
    let np = alg.non_projectives();
    let mut inside = vec![false; np.len()];
    for &g in gens {
        inside[alg.index(g)] = true;
    }
    let mut changed = true;
    while changed {
        changed = false;
        for &y in &np {
            if inside[alg.index(y)] {
                continue;
            }
            let maps: Vec<(SerialModule, usize)> = gens.iter().flat_map(|&g| alg.stable_depths(y, g).into_iter().map(move |d| (g, d))).collect();
            let k = maps.len().min(MAX_JOINT_MAPS);
            let mut masks: Vec<u32> = (1..1u32 << k).collect();
            masks.sort_by_key(|m| m.count_ones());
            for mask in masks {
                let chosen: Vec<(SerialModule, usize)> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| maps[i]).collect();
                let x = sequence_kernel(alg, y, &chosen);
                if x.iter().all(|&m| inside[alg.index(m)]) {
                    inside[alg.index(y)] = true;
                    changed = true;
                    break;
                }
            }
        }
    }
    inside
}

/// Non-projective part of `ker((g, π): Y ⊕ P(Z) -> Z)` where `g` is given
/// by graph maps into the summands of `Z`.
fn sequence_kernel(alg: &NakayamaAlgebra, y: SerialModule, maps: &[(SerialModule, usize)]) -> Vec<SerialModule> {
    let mut src = vec![y];
    src.extend(maps.iter().map(|&(z, _)| alg.projective(z.top as i64)));
    let tgt: Vec<SerialModule> = maps.iter().map(|&(z, _)| z).collect();
    let mut entries = Vec::with_capacity(2 * maps.len());
    for (j, &(_, d)) in maps.iter().enumerate() {
        entries.push((0, j, d));
        entries.push((j + 1, j, 0));
    }
    alg.stripped(true, &src, &tgt, &entries)
}

pub fn is_sms(alg: &NakayamaAlgebra, s: &SmsCandidate) -> bool {
    is_orthogonal(alg, &s.modules) && generated(alg, &s.modules).into_iter().all(|b| b)
}

/// Indecomposables of the smallest extension-closed subcategory of the
/// stable category containing `x`.
pub fn ext_closure(alg: &NakayamaAlgebra, x: &[SerialModule]) -> Result<Vec<SerialModule>> {
    check_members(alg, x)?;
    let mut gens = x.to_vec();
    gens.sort_unstable();
    gens.dedup();
    let inside = generated(alg, &gens);
    Ok(alg.non_projectives().into_iter().filter(|&m| inside[alg.index(m)]).collect())
}

/// A minimal approximation of `module` by a sum of members of a
/// subcategory, each summand paired with the depth of its graph map (from
/// `module` for left approximations, to `module` for right ones).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Approximation {
    pub module: SerialModule,
    pub summands: Vec<(SerialModule, usize)>,
}

impl Approximation {
    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn total_length(&self) -> usize {
        self.summands.iter().map(|(m, _)| m.length).sum()
    }
}

fn left_covers(alg: &NakayamaAlgebra, m: SerialModule, chosen: &[(SerialModule, usize)], f: &[SerialModule]) -> bool {
    f.iter().all(|&target| {
        alg.stable_depths(m, target).into_iter().all(|d| chosen.iter().any(|&(x, dx)| dx <= d && alg.graph_depths(x, target).contains(&(d - dx))))
    })
}

fn right_covers(alg: &NakayamaAlgebra, n: SerialModule, chosen: &[(SerialModule, usize)], f: &[SerialModule]) -> bool {
    f.iter().all(|&source| {
        alg.stable_depths(source, n).into_iter().all(|d| chosen.iter().any(|&(x, dx)| dx <= d && alg.graph_depths(source, x).contains(&(d - dx))))
    })
}

/// Searches subsets of `candidates` by increasing total length for the
/// first one satisfying `covers`.
fn smallest_cover(candidates: &[(SerialModule, usize)], covers: impl Fn(&[(SerialModule, usize)]) -> bool) -> Result<Vec<(SerialModule, usize)>> {
    if candidates.len() > 20 {
        return Err(Error::BoundExceeded(format!("{} approximation candidates", candidates.len())));
    }
    let mut masks: Vec<u32> = (0..1u32 << candidates.len()).collect();
    let weight = |mask: u32| -> usize { (0..candidates.len()).filter(|i| mask >> i & 1 == 1).map(|i| candidates[i].0.length).sum() };
    masks.sort_by_key(|&m| (weight(m), m.count_ones(), m));
    for mask in masks {
        let chosen: Vec<(SerialModule, usize)> = (0..candidates.len()).filter(|i| mask >> i & 1 == 1).map(|i| candidates[i]).collect();
        if covers(&chosen) {
            return Ok(chosen);
        }
    }
    Err(Error::Mutation("no approximation exists".into()))
}

/// Minimal left approximation `m -> X'` with `X'` in `add f`.
///
/// Hom spaces between serial modules have bases of graph maps, composites
/// of graph maps are graph maps, and a deeper map factors through a
/// shallower one with the same endpoints. So it suffices to consider the
/// shallowest stable map into each member, with multiplicity one.
pub fn minimal_left_approximation(alg: &NakayamaAlgebra, m: SerialModule, f: &[SerialModule]) -> Result<Approximation> {
    alg.non_projective(m)?;
    check_members(alg, f)?;
    let candidates: Vec<(SerialModule, usize)> = f.iter().filter_map(|&x| alg.stable_depths(m, x).first().map(|&d| (x, d))).collect();
    let summands = smallest_cover(&candidates, |c| left_covers(alg, m, c, f))?;
    debug_assert!((0..summands.len()).all(|i| !left_covers(alg, m, &without(&summands, i), f)));
    Ok(Approximation { module: m, summands })
}

/// Minimal right approximation `X' -> n` with `X'` in `add f`.
pub fn minimal_right_approximation(alg: &NakayamaAlgebra, n: SerialModule, f: &[SerialModule]) -> Result<Approximation> {
    alg.non_projective(n)?;
    check_members(alg, f)?;
    let candidates: Vec<(SerialModule, usize)> = f.iter().filter_map(|&x| alg.stable_depths(x, n).first().map(|&d| (x, d))).collect();
    let summands = smallest_cover(&candidates, |c| right_covers(alg, n, c, f))?;
    debug_assert!((0..summands.len()).all(|i| !right_covers(alg, n, &without(&summands, i), f)));
    Ok(Approximation { module: n, summands })
}

fn without(v: &[(SerialModule, usize)], i: usize) -> Vec<(SerialModule, usize)> {
    v.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect()
}

fn check_mutation_input(alg: &NakayamaAlgebra, s: &SmsCandidate, x: &[SerialModule]) -> Result<()> {
    check_members(alg, &s.modules)?;
    for m in x {
        if !s.contains(m) {
            return Err(Error::Mutation(format!("{m} is not a member of the sms")));
        }
    }
    if x.iter().any(|&m| !x.contains(&alg.nu(m))) {
        return Err(Error::NotNakayamaStable);
    }
    if !is_sms(alg, s) {
        return Err(Error::NotSms);
    }
    Ok(())
}

fn single(v: Vec<SerialModule>, of: SerialModule) -> Result<SerialModule> {
    match v.as_slice() {
        [m] => Ok(*m),
        _ => Err(Error::Mutation(format!("triangle at {of} has {} non-projective summands", v.len()))),
    }
}

/// Left mutation at a Nakayama-stable subset `x` of the sms `s`.
pub fn mutate_left(alg: &NakayamaAlgebra, s: &SmsCandidate, x: &[SerialModule]) -> Result<SmsCandidate> {
    check_mutation_input(alg, s, x)?;
    let f = ext_closure(alg, x)?;
    let mut out = Vec::with_capacity(s.len());
    for &sj in &s.modules {
        if x.contains(&sj) {
            out.push(alg.omega_inv(sj)?);
            continue;
        }
        // cone of Ω(sj) -> X' via the cokernel of (f, ι): Ω(sj) -> X' ⊕ I
        let m = alg.omega(sj)?;
        let approx = minimal_left_approximation(alg, m, &f)?;
        let mut tgt: Vec<SerialModule> = approx.summands.iter().map(|&(t, _)| t).collect();
        let mut entries: Vec<(usize, usize, usize)> = approx.summands.iter().enumerate().map(|(i, &(_, d))| (0, i, d)).collect();
        entries.push((0, tgt.len(), alg.loewy_length() - m.length));
        tgt.push(alg.injective_envelope(m));
        out.push(single(alg.stripped(false, &[m], &tgt, &entries), sj)?);
    }
    Ok(SmsCandidate::new(out))
}

/// Right mutation at a Nakayama-stable subset `x` of the sms `s`.
pub fn mutate_right(alg: &NakayamaAlgebra, s: &SmsCandidate, x: &[SerialModule]) -> Result<SmsCandidate> {
    check_mutation_input(alg, s, x)?;
    let f = ext_closure(alg, x)?;
    let mut out = Vec::with_capacity(s.len());
    for &sj in &s.modules {
        if x.contains(&sj) {
            out.push(alg.omega(sj)?);
            continue;
        }
        // cocone of X' -> Ω⁻¹(sj) via the kernel of (g, π): X' ⊕ P -> Ω⁻¹(sj)
        let n = alg.omega_inv(sj)?;
        let approx = minimal_right_approximation(alg, n, &f)?;
        let mut src: Vec<SerialModule> = approx.summands.iter().map(|&(t, _)| t).collect();
        let mut entries: Vec<(usize, usize, usize)> = approx.summands.iter().enumerate().map(|(i, &(_, d))| (i, 0, d)).collect();
        entries.push((src.len(), 0, 0));
        src.push(alg.projective(n.top as i64));
        out.push(single(alg.stripped(true, &src, &[n], &entries), sj)?);
    }
    Ok(SmsCandidate::new(out))
}

/// All `size`-element orthogonal sets of non-projectives, sorted.
pub fn orthogonal_candidates(alg: &NakayamaAlgebra, size: usize) -> Vec<SmsCandidate> {
    let np = alg.non_projectives();
    let table = alg.stable_hom_table();
    let n = np.len();
    let schurian: Vec<bool> = (0..n).map(|i| table[i][i] == 1).collect();
    let compatible = |i: usize, j: usize| table[i][j] == 0 && table[j][i] == 0;
    fn extend(chosen: &mut Vec<usize>, size: usize, n: usize, ok: &dyn Fn(usize, &[usize]) -> bool, out: &mut Vec<Vec<usize>>) {
        if chosen.len() == size {
            out.push(chosen.clone());
            return;
        }
        let start = chosen.last().map_or(0, |&l| l + 1);
        for v in start..n {
            if n - v < size - chosen.len() {
                break;
            }
            if ok(v, chosen) {
                chosen.push(v);
                extend(chosen, size, n, ok, out);
                chosen.pop();
            }
        }
    }
    let ok = |v: usize, chosen: &[usize]| schurian[v] && chosen.iter().all(|&c| compatible(c, v));
    if size == 0 {
        return vec![SmsCandidate::new(Vec::new())];
    }
    let mut out: Vec<SmsCandidate> = (0..n)
        .into_par_iter()
        .filter(|&first| schurian[first])
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            extend(&mut vec![first], size, n, &ok, &mut found);
            found
        })
        .map(|ids| SmsCandidate::new(ids.into_iter().map(|i| np[i]).collect()))
        .collect();
    out.sort();
    out
}

/// All simple-minded systems, sorted; `bound` caps `e (L - 1)`.
pub fn all_sms(alg: &NakayamaAlgebra, bound: usize) -> Result<Vec<SmsCandidate>> {
    let size = alg.num_non_projectives();
    if size > bound {
        return Err(Error::BoundExceeded(format!("{alg} has {size} non-projectives, bound is {bound}")));
    }
    let mut out: Vec<SmsCandidate> = orthogonal_candidates(alg, alg.e()).into_par_iter().filter(|s| is_sms(alg, s)).collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n45() -> NakayamaAlgebra {
        NakayamaAlgebra::new(4, 5).unwrap()
    }

    fn set(alg: &NakayamaAlgebra, mods: &[(i64, usize)]) -> SmsCandidate {
        SmsCandidate::new(mods.iter().map(|&(t, l)| alg.module(t, l).unwrap()).collect())
    }

    #[test]
    fn simples_form_an_sms() {
        let a = n45();
        let s = SmsCandidate::new(a.simples());
        assert!(is_wsms(&a, &s));
        assert!(is_sms(&a, &s));
        assert!(generated(&a, &s.modules).iter().all(|&b| b));
    }

    #[test]
    fn three_simples_are_not_enough() {
        let a = n45();
        let s = set(&a, &[(1, 1), (2, 1), (3, 1)]);
        assert!(!is_wsms(&a, &s));
        assert!(!is_sms(&a, &s));
    }

    #[test]
    fn closure_of_two_simples() {
        let a = n45();
        let c = ext_closure(&a, &[a.simple(2), a.simple(3)]).unwrap();
        assert_eq!(c, vec![a.simple(2), a.module(2, 2).unwrap(), a.simple(3)]);
        assert_eq!(ext_closure(&a, &c).unwrap(), c);
        assert!(ext_closure(&a, &[]).unwrap().is_empty());
    }

    #[test]
    fn worked_mutation() {
        let a = n45();
        let s = SmsCandidate::new(a.simples());
        let m = mutate_left(&a, &s, &[a.simple(2), a.simple(3)]).unwrap();
        assert_eq!(m, set(&a, &[(1, 3), (2, 4), (3, 4), (4, 1)]));
        assert_eq!(m.columns(&a), vec!["1/2/3", "2/3/4/1", "3/4/1/2", "4"]);
        assert!(is_sms(&a, &m));
        assert_eq!(mutate_right(&a, &m, &[a.module(2, 4).unwrap(), a.module(3, 4).unwrap()]).unwrap(), s);
    }

    #[test]
    fn approximation_in_worked_example() {
        let a = n45();
        let f = ext_closure(&a, &[a.simple(2), a.simple(3)]).unwrap();
        let approx = minimal_left_approximation(&a, a.module(2, 4).unwrap(), &f).unwrap();
        assert_eq!(approx.summands, vec![(a.module(2, 2).unwrap(), 0)]);
        assert!(minimal_left_approximation(&a, a.module(1, 4).unwrap(), &f).unwrap().is_zero());
    }

    #[test]
    fn mutating_everything_is_a_shift() {
        let a = n45();
        let s = SmsCandidate::new(a.simples());
        let m = mutate_left(&a, &s, &s.modules).unwrap();
        let shifted = SmsCandidate::new(s.modules.iter().map(|&x| a.omega_inv(x).unwrap()).collect());
        assert_eq!(m, shifted);
    }

    #[test]
    fn mutation_input_errors() {
        let b = NakayamaAlgebra::new(3, 3).unwrap();
        let s = SmsCandidate::new(b.simples());
        assert_eq!(mutate_left(&b, &s, &[b.simple(1)]), Err(Error::NotNakayamaStable));
        let a = n45();
        let bad = set(&a, &[(1, 1), (2, 1), (3, 1)]);
        assert_eq!(mutate_left(&a, &bad, &[a.simple(1)]), Err(Error::NotSms));
    }

    #[test]
    fn all_sms_small_cases() {
        let a = NakayamaAlgebra::new(2, 3).unwrap();
        let all = all_sms(&a, DEFAULT_SMS_BOUND).unwrap();
        assert!(all.contains(&SmsCandidate::new(a.simples())));
        for s in &all {
            assert_eq!(s.len(), 2);
            assert!(is_wsms(&a, s));
        }
        assert!(all_sms(&NakayamaAlgebra::new(5, 5).unwrap(), DEFAULT_SMS_BOUND).is_err());
    }
}
