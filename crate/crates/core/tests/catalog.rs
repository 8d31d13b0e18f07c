use nearring_core::regularity::{is_p_regular, UnityMode};
use nearring_core::substructures::{enumerate_subgroups, is_bi_ideal};
use nearring_core::{standard_catalog, validate_nearring, OrderCap};

#[test]
fn every_entry_validates_and_matches_its_flags() {
    let all = standard_catalog(27);
    assert_eq!(all.len(), 17);
    for e in &all {
        let n = &e.nearring;
        let again = validate_nearring(&n.add_table(), &n.mul_table()).unwrap();
        assert_eq!(&again, n, "{}", e.name);
        assert!(e.flags_match(), "{}", e.name);
        assert!(e.expected.is_some());
        assert!((0..n.order()).all(|a| n.mul(0, a) == 0));
    }
}

#[test]
fn transformation_nearrings_have_unity_and_are_not_distributive() {
    for e in standard_catalog(27).iter().filter(|e| e.name.starts_with("M(")) {
        assert!(e.nearring.unity().is_some(), "{}", e.name);
        assert!(!e.nearring.is_distributive(), "{}", e.name);
    }
}

#[test]
fn zero_multiplication_subgroups_are_bi_ideals() {
    for e in standard_catalog(27).iter().filter(|e| e.name.starts_with("zero(")) {
        for g in enumerate_subgroups(&e.nearring, OrderCap::DEFAULT).unwrap().iter() {
            assert!(is_bi_ideal(&e.nearring, g), "{} {g}", e.name);
        }
    }
}

#[test]
fn unity_modes_agree_when_unity_exists() {
    for e in standard_catalog(27).iter().filter(|e| e.nearring.unity().is_some()) {
        let n = &e.nearring;
        let p = n.full();
        let lenient = is_p_regular(n, &p, UnityMode::Lenient).unwrap();
        let strict = is_p_regular(n, &p, UnityMode::Strict).unwrap();
        assert_eq!(
            lenient.certificate().unwrap().witnesses(),
            strict.certificate().unwrap().witnesses()
        );
    }
}
