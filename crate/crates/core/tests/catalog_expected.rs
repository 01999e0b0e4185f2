//! Every catalog entry's documented values against the engine.

use ihf2::catalog::{catalog, catalog_space, CATALOG_NAMES};
use ihf2::characteristic::top_sw_number;
use ihf2::complex::validate_pseudomanifold;
use ihf2::homology::{ih, simplicial_homology, witt_check};
use ihf2::stratified::Perversity;

#[test]
fn documented_values_match_engine() {
    for name in CATALOG_NAMES {
        let x = catalog_space(name).unwrap();
        let k = x.complex();
        let e = catalog(name).unwrap().expected.unwrap();
        assert_eq!(e.kind, Some(validate_pseudomanifold(k).kind), "{name}");
        assert_eq!(e.euler, Some(k.euler_characteristic()), "{name}");
        assert_eq!(e.homology, Some(simplicial_homology(k).ranks), "{name}");
        for (p, want) in &e.ih {
            let p = Perversity::parse(p, x.dim()).unwrap();
            assert_eq!(&ih(&x, &p).unwrap().ranks, want, "{name} {}", p.label());
        }
        let w = witt_check(&x).unwrap();
        assert_eq!(e.witt, Some(w.is_witt), "{name}");
        let ranks: Vec<usize> = w.entries.iter().map(|e| e.link_rank).collect();
        assert_eq!(e.witt_link_ranks, Some(ranks), "{name}");
        if let Some(t) = e.top_sw {
            assert_eq!(top_sw_number(k).unwrap(), t, "{name}");
        }
    }
}

#[test]
fn unknown_name_lists_catalog() {
    let msg = catalog("moebius").unwrap_err().to_string();
    for name in CATALOG_NAMES {
        assert!(msg.contains(name));
    }
}
