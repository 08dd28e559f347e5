//! The rule set is confluent on consistent profiles: any rule order reaches
//! the same assignments.

use proptest::prelude::*;
use spectral_chain::catalog::catalog_entries;
use spectral_chain::derive::{derive, derive_with, standard_rules, SpectrumKind};

fn permuted_order() -> impl Strategy<Value = Vec<usize>> {
    let n = standard_rules().len();
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn rule_order_does_not_change_the_result(order in permuted_order()) {
        let base = standard_rules();
        let rules: Vec<_> = order.iter().map(|&i| base[i].clone()).collect();
        for entry in catalog_entries() {
            let reference = derive(&entry.given).unwrap().profile;
            let shuffled = derive_with(&entry.given, &rules).unwrap().profile;
            for k in SpectrumKind::ALL {
                match (reference.get(k), shuffled.get(k)) {
                    (None, None) => {}
                    (Some(a), Some(b)) => prop_assert!(a.set_eq(b).unwrap(), "{}: σ_{} differs", entry.name, k),
                    _ => prop_assert!(false, "{}: σ_{} reached in only one order", entry.name, k),
                }
            }
        }
    }
}

#[test]
fn reversed_order_agrees() {
    let mut rules = standard_rules();
    rules.reverse();
    for entry in catalog_entries() {
        let a = derive(&entry.given).unwrap().profile;
        let b = derive_with(&entry.given, &rules).unwrap().profile;
        assert_eq!(a.len(), b.len(), "{}", entry.name);
    }
}
