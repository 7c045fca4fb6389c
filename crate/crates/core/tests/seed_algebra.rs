use proptest::prelude::*;

use rcgraph::catalog::{Added, Catalog, CatalogRecord};
use rcgraph::constructions::{cartesian_product_with_cap, complement_signature, complement_transform};
use rcgraph::{RcSignature, SmallGraph};

fn seed_graphs() -> Vec<SmallGraph> {
    Catalog::seed().records().iter().map(|r| r.graph()).filter(|g| g.order() <= 24).collect()
}

fn shuffled(g: &SmallGraph, keys: &[u32]) -> SmallGraph {
    let mut perm: Vec<usize> = (0..g.order()).collect();
    perm.sort_by_key(|&v| (keys[v % keys.len()].wrapping_mul(v as u32 + 1), v));
    g.permuted(&perm)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_signatures_add(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let graphs = seed_graphs();
        let (a, b) = (i.get(&graphs), j.get(&graphs));
        let (sa, sb) = (a.rc_signature().unwrap(), b.rc_signature().unwrap());
        let p = cartesian_product_with_cap(a, b, 1024).unwrap();
        prop_assert_eq!(p.order(), a.order() * b.order());
        prop_assert_eq!(p.rc_signature(), Some(RcSignature { r: sa.r + sb.r, c: sa.c + sb.c }));
    }

    #[test]
    fn complement_signature_formula(i in any::<prop::sample::Index>()) {
        let graphs = seed_graphs();
        let g = i.get(&graphs);
        let want = complement_signature(g.order(), g.rc_signature().unwrap());
        prop_assert_eq!(complement_transform(g).rc_signature(), Some(want));
    }

    #[test]
    fn relabelled_seed_graphs_are_duplicates(i in any::<prop::sample::Index>(), keys in prop::collection::vec(any::<u32>(), 1..32)) {
        let mut cat = Catalog::seed();
        let before = cat.len();
        let g = shuffled(i.get(&seed_graphs()), &keys);
        let rec = CatalogRecord::from_graph(&g, "relabelled").unwrap();
        prop_assert!(matches!(cat.add_record(rec).unwrap(), Ok(Added::Duplicate(_))));
        prop_assert_eq!(cat.len(), before);
    }
}

#[test]
fn every_seed_record_verifies() {
    let cat = Catalog::seed();
    assert!(cat.len() >= 40);
    assert!(cat.quarantined().is_empty());
    for rec in cat.records() {
        rec.verify().unwrap();
    }
}
