use ihf2::catalog::{catalog_space, shapes, CATALOG_NAMES};
use ihf2::complex::{
    barycentric_subdivision, suspension, validate_pseudomanifold, PseudomanifoldKind,
    SimplicialComplex,
};
use ihf2::homology::{ih, omega_rank, simplicial_homology};
use ihf2::linalg::{intersect_dim, span_dim, BitVec, MatrixF2};
use ihf2::spacefile::{parse_space_file, ParseMode, SpaceFile};
use ihf2::stratified::{trivial_filtration, Perversity, PerversityKind};
use proptest::prelude::*;

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = MatrixF2> {
    (0..=max_rows, 0..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), c), r).prop_map(move |rows| {
            let rows = rows.iter().map(|b| BitVec::from_bools(b)).collect();
            MatrixF2::from_rows(c, rows).unwrap()
        })
    })
}

fn vectors(len: usize, max: usize) -> impl Strategy<Value = Vec<BitVec>> {
    prop::collection::vec(prop::collection::vec(any::<bool>(), len), 0..=max)
        .prop_map(|vs| vs.iter().map(|b| BitVec::from_bools(b)).collect())
}

/// Random pure 2-complexes on at most 8 vertices.
fn small_complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::btree_set(prop::collection::btree_set(0u32..8, 3), 1..12).prop_map(|facets| {
        let facets: Vec<Vec<u32>> = facets
            .into_iter()
            .map(|f| f.into_iter().collect())
            .collect();
        SimplicialComplex::from_facets(&facets).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in matrix(200, 200)) {
        let null = m.nullspace_basis();
        prop_assert_eq!(m.rank() + null.len(), m.cols());
        for v in &null {
            prop_assert!(m.mul_vec(v).unwrap().is_zero());
        }
    }

    #[test]
    fn rank_is_stable_under_row_operations(m in matrix(40, 40), ops in prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>(), any::<bool>()), 0..30)) {
        let mut n = m.clone();
        if n.rows() > 1 {
            for (a, b, swap) in ops {
                let (a, b) = (a.index(n.rows()), b.index(n.rows()));
                if swap {
                    n.swap_rows(a, b);
                } else if a != b {
                    n.add_row(a, b);
                }
            }
        }
        prop_assert_eq!(n.rank(), m.rank());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn intersection_dimension(u in vectors(24, 10), v in vectors(24, 10)) {
        prop_assert_eq!(intersect_dim(&u, &v).unwrap(), intersect_dim(&v, &u).unwrap());
        prop_assert_eq!(intersect_dim(&u, &u).unwrap(), span_dim(24, &u).unwrap());
        let i = intersect_dim(&u, &v).unwrap();
        prop_assert!(i <= span_dim(24, &u).unwrap().min(span_dim(24, &v).unwrap()));
    }

    #[test]
    fn euler_characteristic_of_homology(k in small_complex()) {
        let h = simplicial_homology(&k);
        prop_assert_eq!(h.euler_characteristic(), k.euler_characteristic());
    }

    #[test]
    fn euler_characteristic_survives_subdivision(k in small_complex()) {
        let sd = barycentric_subdivision(&k);
        prop_assert_eq!(sd.complex.euler_characteristic(), k.euler_characteristic());
        prop_assert_eq!(simplicial_homology(&sd.complex).ranks, simplicial_homology(&k).ranks);
    }

    #[test]
    fn trivial_filtration_gives_ordinary_homology(k in small_complex(), which in 0usize..4) {
        let x = trivial_filtration(&k).unwrap();
        let p = Perversity::builtin(PerversityKind::ALL[which], 2);
        prop_assert_eq!(ih(&x, &p).unwrap().ranks, simplicial_homology(&k).ranks);
    }

    #[test]
    fn space_file_round_trip(k in small_complex(), name in "[a-z][a-z0-9_]{0,12}") {
        let file = SpaceFile::from_parts(&name, &k, vec![]);
        let json = file.to_json();
        let parsed = parse_space_file(json.as_bytes(), ParseMode::Strict).unwrap();
        prop_assert_eq!(&parsed.file, &file);
        prop_assert_eq!(parsed.complex, k);
        prop_assert_eq!(parsed.file.to_json(), json);
    }
}

#[test]
fn suspension_preserves_closedness() {
    for k in [
        shapes::circle(),
        shapes::sphere2(),
        shapes::torus7(),
        shapes::rp2_6(),
        shapes::klein(),
    ] {
        let (s, _) = suspension(&k);
        assert_eq!(validate_pseudomanifold(&s).kind, PseudomanifoldKind::Closed);
        assert_eq!(s.euler_characteristic(), 2 - k.euler_characteristic());
    }
}

#[test]
fn omega_rank_is_bounded() {
    for name in CATALOG_NAMES {
        let x = catalog_space(name).unwrap();
        for kind in PerversityKind::ALL {
            let p = Perversity::builtin(kind, x.dim());
            for i in 0..=x.dim() {
                let o = omega_rank(&x, &p, i).unwrap();
                assert!(
                    o.map_rank <= o.ih_rank.min(o.h_rank),
                    "{name} {kind:?} {i}: {o:?}"
                );
            }
        }
    }
}
