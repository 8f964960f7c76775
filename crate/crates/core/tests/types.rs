use proptest::prelude::*;
use sms_core::dynkin::{num_simples, validate_rfs_type, DynkinGraph, RfsType};
use sms_core::ztquiver::quotient;

fn graph(family: u8, rank: usize) -> Option<DynkinGraph> {
    match family {
        0 => Some(DynkinGraph::a(rank)),
        1 if rank >= 4 => Some(DynkinGraph::d(rank)),
        2 if (6..=8).contains(&rank) => Some(DynkinGraph::e(rank)),
        _ => None,
    }
}

#[test]
fn coxeter_numbers() {
    assert_eq!(DynkinGraph::a(5).coxeter_number(), 6);
    assert_eq!(DynkinGraph::d(4).coxeter_number(), 6);
    assert_eq!(DynkinGraph::d(7).coxeter_number(), 12);
    assert_eq!([6, 7, 8].map(|n| DynkinGraph::e(n).coxeter_number()), [12, 18, 30]);
}

#[test]
fn family_b_example() {
    let t: RfsType = "A:5/f=1/t=2".parse().unwrap();
    let v = validate_rfs_type(&t);
    assert!(v.valid);
    assert_eq!(v.family.unwrap().to_string(), "(b)");
    assert_eq!(num_simples(&t).unwrap(), 5);
    assert_eq!(t.r(), Some(5));
    assert!(!validate_rfs_type(&"A:4/f=1/t=2".parse().unwrap()).valid);
    assert!(!validate_rfs_type(&"D:5/f=1/3/t=1".parse().unwrap()).valid);
    assert!(validate_rfs_type(&"D:6/f=1/3/t=1/nonstandard".parse().unwrap()).valid);
}

proptest! {
    #[test]
    fn text_and_json_round_trip(family in 0u8..3, rank in 1usize..13, num in 1i64..7, den in 1i64..4, torsion in 1u8..4, standard: bool) {
        let Some(g) = graph(family, rank) else { return Ok(()) };
        let t = RfsType { standard, ..RfsType::with_frequency(g, num, den, torsion) };
        prop_assert_eq!(t.to_string().parse::<RfsType>().unwrap(), t.clone());
        let json = serde_json::to_string(&t).unwrap();
        prop_assert_eq!(serde_json::from_str::<RfsType>(&json).unwrap(), t);
    }

    #[test]
    fn valid_types_build_quotients_of_the_right_size(family in 0u8..3, rank in 1usize..9, num in 1i64..5, den in 1i64..4, torsion in 1u8..4) {
        let Some(g) = graph(family, rank) else { return Ok(()) };
        let t = RfsType::with_frequency(g, num, den, torsion);
        if validate_rfs_type(&t).valid {
            let gamma = quotient(&t).unwrap();
            prop_assert_eq!(gamma.len(), rank * t.r().unwrap());
            prop_assert!(gamma.translation_quiver().mesh_symmetric());
            prop_assert_eq!(num_simples(&t).unwrap() as i64 * den, num * rank as i64);
        } else {
            prop_assert!(quotient(&t).is_err());
        }
    }
}
