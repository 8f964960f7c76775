use proptest::prelude::*;
use sms_core::dynkin::{DynkinGraph, RfsType};
use sms_core::meshcat::{hom_dim_fast, hom_dim_oracle, hom_table_fast, hom_table_oracle, mesh_homs, MeshHoms, QuotientHoms};
use sms_core::nakayama::NakayamaAlgebra;
use sms_core::ztquiver::{automorphisms, build_window, quotient, ZVertex};

fn graphs() -> Vec<DynkinGraph> {
    vec![DynkinGraph::a(1), DynkinGraph::a(2), DynkinGraph::a(3), DynkinGraph::a(4), DynkinGraph::a(5), DynkinGraph::d(4), DynkinGraph::d(5), DynkinGraph::e(6)]
}

#[test]
fn endomorphisms_are_scalars() {
    for n in 1..=4 {
        let g = DynkinGraph::a(n);
        let h = g.coxeter_number() as i64;
        let w = build_window(g, 0, 2 * h + 1);
        for q in g.nodes() {
            let x = ZVertex::new(1, q);
            assert_eq!(hom_dim_oracle(&w, x, x).unwrap(), 1);
        }
    }
}

#[test]
fn no_maps_to_the_translate() {
    for g in [DynkinGraph::a(2), DynkinGraph::a(3), DynkinGraph::d(4)] {
        let h = g.coxeter_number() as i64;
        let w = build_window(g, 0, 2 * h + 1);
        for &x in w.vertices.iter().filter(|v| v.p > 0) {
            assert_eq!(hom_dim_oracle(&w, x, x.tau()).unwrap(), 0);
        }
    }
}

#[test]
fn seed_slice_matches_oracle() {
    for g in graphs() {
        let h = g.coxeter_number() as i64;
        let w = build_window(g, 0, 2 * h + 1);
        for q in g.nodes() {
            let x = ZVertex::new(0, q);
            let (o, f) = (hom_table_oracle(&w, x).unwrap(), hom_table_fast(&w, x).unwrap());
            for q1 in g.nodes() {
                assert_eq!(o.get(ZVertex::new(0, q1)), f.get(ZVertex::new(0, q1)));
            }
        }
    }
}

#[test]
fn a2_over_tau_matches_truncated_polynomial_ring() {
    let t: RfsType = "A:2/f=1/2/t=1".parse().unwrap();
    let gamma = quotient(&t).unwrap();
    let homs = QuotientHoms::compute(&gamma);
    let a = NakayamaAlgebra::new(1, 3).unwrap();
    let end: Vec<u32> = a.non_projectives().into_iter().map(|m| a.stable_hom_dim(m, m).unwrap() as u32).collect();
    let mut diag: Vec<u32> = (0..gamma.len()).map(|v| homs.get(v, v)).collect();
    let mut end_sorted = end.clone();
    diag.sort();
    end_sorted.sort();
    assert_eq!(diag, end_sorted);
}

#[test]
fn cached_tables_round_trip_through_json() {
    let t = mesh_homs(DynkinGraph::d(5));
    let back: MeshHoms = serde_json::from_str(&serde_json::to_string(&*t).unwrap()).unwrap();
    assert_eq!(&back, &*t);
    assert_eq!(back, MeshHoms::compute(DynkinGraph::d(5)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fast_agrees_with_oracle(gi in 0usize..8, qx in 1usize..7, px in 0i64..3, qy in 1usize..7, dp in 0i64..14) {
        let g = graphs()[gi];
        let (qx, qy) = ((qx - 1) % g.rank() + 1, (qy - 1) % g.rank() + 1);
        let h = g.coxeter_number() as i64;
        let w = build_window(g, 0, 2 * h + 4);
        let x = ZVertex::new(px, qx);
        let y = ZVertex::new((px + dp).min(2 * h + 4), qy);
        let d = hom_dim_oracle(&w, x, y).unwrap();
        prop_assert_eq!(d, hom_dim_fast(&w, x, y).unwrap());
        prop_assert_eq!(d as u32, mesh_homs(g).hom(x, y));
        prop_assert_eq!(mesh_homs(g).hom(x.tau(), y.tau()), d as u32);
    }

    #[test]
    fn quotient_homs_are_stable_and_invariant(i in 0usize..12) {
        let types = ["A:2/f=1/t=1", "A:3/f=1/t=2", "A:4/f=1/2/t=1", "A:5/f=1/t=2", "D:4/f=1/t=1", "D:4/f=1/t=2",
                     "D:4/f=1/t=3", "D:5/f=1/t=1", "D:6/f=1/3/t=1", "E:6/f=1/t=1", "E:6/f=1/t=2", "A:1/f=3/t=1"];
        let t: RfsType = types[i].parse().unwrap();
        let gamma = quotient(&t).unwrap();
        let homs = QuotientHoms::compute(&gamma);
        prop_assert_eq!(&homs, &QuotientHoms::compute_with_extra(&gamma, 2));
        for a in automorphisms(&gamma) {
            for e in 0..gamma.len() {
                for f in 0..gamma.len() {
                    prop_assert_eq!(homs.get(e, f), homs.get(a.apply(e), a.apply(f)));
                }
            }
        }
        for e in 0..gamma.len() {
            prop_assert!(homs.get(e, e) >= 1);
        }
    }
}
