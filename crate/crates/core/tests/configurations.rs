use proptest::prelude::*;
use sms_core::brauer::{count_brauer_trees, count_brauer_trees_marked_leaf};
use sms_core::config::{
    capped_types, configuration_period, enumerate_configurations, is_configuration, lift_is_tau_periodic, orbit_report, transitivity_list_check,
    Configuration, TransitivityBounds,
};
use sms_core::dynkin::{num_simples, DynkinGraph, RfsType};
use sms_core::meshcat::{mesh_homs, QuotientHoms};
use sms_core::ztquiver::{automorphisms, quotient, ZVertex};

fn ty(s: &str) -> RfsType {
    s.parse().unwrap()
}

fn a_type(n: usize, s: i64) -> RfsType {
    RfsType::with_frequency(DynkinGraph::a(n), s, n as i64, 1)
}

// ℤA₃ with linear orientation 1 -> 2 -> 3 has arrows (p,q) -> (p,q+1) and
// (p,q+1) -> (p+1,q). Ours is bipartite with 2 as the sink, so the two
// agree after moving the third row one step to the right.
fn from_linear_a3(v: ZVertex) -> ZVertex {
    if v.q == 3 {
        v.shift(1)
    } else {
        v
    }
}

#[test]
fn linear_representative_is_a_configuration() {
    let gamma = quotient(&ty("A:3/f=1/t=2")).unwrap();
    let homs = QuotientHoms::compute(&gamma);
    let shape = [ZVertex::new(0, 1), ZVertex::new(1, 2), ZVertex::new(2, 3)];
    // ℤA₃ configurations are τ³-periodic, so the shape determines its lift
    let lifted: Vec<usize> = (-2..=2).flat_map(|k| shape.iter().map(move |v| v.shift(3 * k))).map(|v| gamma.project(from_linear_a3(v))).collect();
    let c = Configuration::new(lifted);
    assert_eq!(c.len(), 3);
    assert!(is_configuration(&homs, &c.vertices).is_valid());
    assert_eq!(c.coordinates(&gamma), vec![ZVertex::new(0, 1), ZVertex::new(0, 3), ZVertex::new(1, 2)]);
}

#[test]
fn self_hom_pair_is_rejected() {
    // a vertex and its τ-inverse are joined by a path of length two
    let gamma = quotient(&ty("A:4/f=1/t=1")).unwrap();
    let homs = QuotientHoms::compute(&gamma);
    let x = gamma.index_of(ZVertex::new(0, 2)).unwrap();
    let y = gamma.tau_inv(x);
    assert!(homs.get(x, y) > 0);
    assert!(!is_configuration(&homs, &[x, y]).is_valid());
}

#[test]
fn a1_brute_force() {
    for s in 1..=4usize {
        let gamma = quotient(&RfsType::with_frequency(DynkinGraph::a(1), s as i64, 1, 1)).unwrap();
        let homs = QuotientHoms::compute(&gamma);
        let brute: Vec<Configuration> = (1u32..1 << s)
            .map(|mask| (0..s).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|set| is_configuration(&homs, set).is_valid())
            .map(Configuration::new)
            .collect();
        assert_eq!(brute, vec![Configuration::new((0..s).collect())]);
        assert_eq!(enumerate_configurations(&gamma).unwrap(), brute);
    }
}

#[test]
fn a_type_counts_match_brauer_trees() {
    for n in 1..=4 {
        let gamma = quotient(&a_type(n, n as i64)).unwrap();
        let configs = enumerate_configurations(&gamma).unwrap();
        let orbits = orbit_report(&a_type(n, n as i64)).unwrap().orbits.len();
        assert_eq!(orbits, count_brauer_trees(n, 1), "A{n}");
        assert_eq!(configs.len(), [1, 2, 5, 14][n - 1]);
    }
}

#[test]
fn a4_counts_depend_on_gcd() {
    let count = |s| enumerate_configurations(&quotient(&a_type(4, s)).unwrap()).unwrap().len();
    assert_eq!(count(2), count(6));
    assert_eq!(count(1), count(3));
    assert_ne!(count(1), count(2));
}

#[test]
fn brauer_examples() {
    for m in 1..=5 {
        assert_eq!(count_brauer_trees(1, m), 1);
    }
    assert_eq!(count_brauer_trees(2, 1), 1);
    assert!(count_brauer_trees(2, 2) >= 2);
    assert_eq!(count_brauer_trees_marked_leaf(1), 1);
}

#[test]
fn transitivity_examples() {
    assert_eq!(orbit_report(&ty("A:2/f=1/t=1")).unwrap().orbits.len(), 1);
    assert!(orbit_report(&ty("A:4/f=1/2/t=1")).unwrap().orbits.len() > 1);
    assert_eq!(orbit_report(&ty("D:4/f=1/t=3")).unwrap().orbits.len(), 1);
}

#[test]
fn transitivity_list_agrees_within_small_bounds() {
    let b = TransitivityBounds { max_rank: 5, max_s: 2, max_vertices: 30 };
    let report = transitivity_list_check(&b).unwrap();
    assert!(report.len() > 10);
    for entry in &report {
        assert!(entry.agrees, "{} has {} orbits", entry.rfs_type, entry.orbits);
    }
}

#[test]
fn e6_has_several_orbits() {
    for t in ["E:6/f=1/t=1", "E:6/f=1/t=2"] {
        assert!(orbit_report(&ty(t)).unwrap().orbits.len() > 1, "{t}");
    }
}

fn small_types() -> Vec<RfsType> {
    let b = TransitivityBounds { max_rank: 5, max_s: 2, max_vertices: 24 };
    capped_types(&b).into_iter().filter(|t| t.graph.rank() * t.r().unwrap() <= b.max_vertices).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn enumerated_configurations_satisfy_invariants(i in 0usize..64) {
        let types = small_types();
        let t = &types[i % types.len()];
        let gamma = quotient(t).unwrap();
        let homs = QuotientHoms::compute(&gamma);
        let configs = enumerate_configurations(&gamma).unwrap();
        prop_assert!(!configs.is_empty());
        let k = num_simples(t).unwrap();
        let auts = automorphisms(&gamma);
        for c in &configs {
            prop_assert_eq!(c.len(), k);
            prop_assert!(is_configuration(&homs, &c.vertices).is_valid());
            for a in &auts {
                prop_assert!(configs.binary_search(&c.image(a)).is_ok());
            }
            if let Some(period) = configuration_period(&t.graph) {
                prop_assert!(lift_is_tau_periodic(&gamma, c, period));
            }
        }
    }

    #[test]
    fn lifts_are_orthogonal_in_every_window(i in 0usize..64, start in -6i64..6) {
        let types = small_types();
        let t = &types[i % types.len()];
        let gamma = quotient(t).unwrap();
        let mesh = mesh_homs(t.graph);
        let h = t.graph.coxeter_number() as i64;
        for c in enumerate_configurations(&gamma).unwrap() {
            let lift = c.lift_window(&gamma, start, start + h);
            for &x in &lift {
                for &y in &lift {
                    let expected = u32::from(x == y);
                    prop_assert_eq!(mesh.hom(x, y), expected, "{} -> {} in {}", x, y, t);
                }
            }
        }
    }
}
