use proptest::prelude::*;

use tsgreen::classify::{
    dress_verdict, galois_index_set, in_dr_p_star, is_k_dress, is_k_elementary, is_q_dress, is_q_hyperelementary,
    is_r_hypoelementary, minimal_non_k_dress_shape,
};
use tsgreen::field::FieldSpec;
use tsgreen::group::{GroupSpec, PermGroup};
use tsgreen::Error;

fn build(s: &str) -> PermGroup {
    GroupSpec::parse(s).unwrap().build(200).unwrap()
}

fn k(s: &str) -> FieldSpec {
    FieldSpec::parse(s).unwrap()
}

#[test]
fn index_sets() {
    assert_eq!(galois_index_set(&k("GF(2)"), 7).unwrap().members, vec![1, 2, 4]);
    assert_eq!(galois_index_set(&k("GF(3)"), 13).unwrap().members, vec![1, 3, 9]);
    assert_eq!(galois_index_set(&k("GF(4)"), 3).unwrap().members, vec![1]);
    assert!(matches!(galois_index_set(&k("GF(2)"), 6), Err(Error::CharacteristicDividesM { .. })));
}

#[test]
fn hyperelementary_examples() {
    assert!(is_q_hyperelementary(&build("D7"), 2));
    assert!(!is_q_hyperelementary(&build("S3"), 3));
    assert!(is_r_hypoelementary(&build("S3"), 3));
    let h = build("C13:C4@5");
    assert!(is_q_dress(&h, 2, 3));
    assert!(!is_k_dress(&h, &k("GF(3)")).unwrap());
    assert!(is_k_dress(&h, &k("GF(2)")).unwrap());
    assert!(is_k_dress(&build("S3"), &k("GF(2)")).unwrap());
    assert!(!is_k_dress(&build("S3"), &k("GF(4)")).unwrap());
    assert!(!in_dr_p_star(&build("C1"), &k("GF(2)")).unwrap());
}

#[test]
fn minimal_counterexample_shapes() {
    let s = minimal_non_k_dress_shape(&build("D7"), &k("GF(2)")).unwrap();
    assert_eq!((s.r, s.q, s.n, s.a), (7, 2, 1, 6));
    let s = minimal_non_k_dress_shape(&build("C13:C2@12"), &k("GF(3)")).unwrap();
    assert_eq!((s.r, s.q, s.n, s.a), (13, 2, 1, 12));
    assert!(minimal_non_k_dress_shape(&build("S3"), &k("GF(2)")).is_err());
}

#[test]
fn verdict_is_consistent() {
    let v = dress_verdict(&build("D7"), &k("GF(2)")).unwrap();
    assert!(!v.is_k_dress && v.is_q_dress[&2] && !v.is_k_elementary);
    assert_eq!(v.order, 14);
}

proptest! {
    #[test]
    fn index_set_is_the_power_orbit(m in 1u64..60, fi in 0usize..4) {
        let f = k(["GF(2)", "GF(3)", "GF(4)", "GF(9)"][fi]);
        prop_assume!(m % f.characteristic() != 0);
        let set = galois_index_set(&f, m).unwrap();
        let mut orbit = vec![];
        let mut x = 1 % m;
        loop {
            orbit.push(x);
            x = x * f.order() % m;
            if x == 1 % m {
                break;
            }
        }
        orbit.sort();
        prop_assert_eq!(set.members, orbit);
    }

    #[test]
    fn cyclic_groups_are_k_elementary(n in 1u64..40, fi in 0usize..4) {
        let f = k(["GF(2)", "GF(3)", "GF(4)", "GF(9)"][fi]);
        let g = build(&format!("C{n}"));
        prop_assert!(is_k_dress(&g, &f).unwrap());
        if n % f.characteristic() != 0 {
            prop_assert!(is_k_elementary(&g, &f).unwrap());
        }
    }
}
