//! Built-in spaces with their known invariants.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::complex::{PseudomanifoldKind, SimplicialComplex, Vertex};
use crate::spacefile::{Expected, SpaceFile};
use crate::stratified::{suspend_filtered, trivial_filtration, FilteredComplex};

pub const CATALOG_NAMES: [&str; 10] = [
    "circle",
    "sphere2",
    "torus7",
    "rp2_6",
    "klein",
    "disk_cone",
    "pinched_torus",
    "susp_torus",
    "susp_sphere2",
    "susp_rp2",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown catalog space `{name}`; available: {}", CATALOG_NAMES.join(", "))]
pub struct UnknownSpace {
    pub name: String,
}

/// Constructors for the underlying complexes.
pub mod shapes {
    use super::*;
    use crate::stratified::{build_filtration, SkeletonSpec};

    fn from(facets: Vec<Vec<Vertex>>) -> SimplicialComplex {
        SimplicialComplex::from_facets(&facets).expect("catalog facets are valid")
    }

    /// Boundary of the triangle `[0,1,2]`.
    pub fn circle() -> SimplicialComplex {
        from(vec![vec![0, 1], vec![0, 2], vec![1, 2]])
    }

    /// Octahedron: square `0-1-2-3` suspended by `4` and `5`.
    pub fn sphere2() -> SimplicialComplex {
        from(
            (0..4)
                .flat_map(|i| [4, 5].map(|apex| vec![i, (i + 1) % 4, apex]))
                .collect(),
        )
    }

    /// Seven-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
    pub fn torus7() -> SimplicialComplex {
        from(
            (0..7)
                .flat_map(|i| {
                    [
                        vec![i, (i + 1) % 7, (i + 3) % 7],
                        vec![i, (i + 2) % 7, (i + 3) % 7],
                    ]
                })
                .collect(),
        )
    }

    /// Six-vertex real projective plane (half of the icosahedron).
    pub fn rp2_6() -> SimplicialComplex {
        from(vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 5],
            vec![0, 1, 5],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![1, 3, 4],
            vec![2, 4, 5],
            vec![1, 3, 5],
        ])
    }

    /// Triangulated `n × m` grid with its sides identified; `twist` reverses
    /// the second coordinate across the first seam.
    pub fn grid_surface(n: u32, m: u32, twist: bool) -> SimplicialComplex {
        let wrap = |x: u32, y: u32| -> Vertex {
            let (x, y) = if x == n {
                (0, if twist { (m - y % m) % m } else { y % m })
            } else {
                (x, y % m)
            };
            x * m + y
        };
        let mut facets = Vec::new();
        for i in 0..n {
            for j in 0..m {
                let a = wrap(i, j);
                let b = wrap(i + 1, j);
                let c = wrap(i, j + 1);
                let d = wrap(i + 1, j + 1);
                facets.push(vec![a, b, d]);
                facets.push(vec![a, c, d]);
            }
        }
        from(facets)
    }

    /// Klein bottle on a 4 × 4 grid.
    pub fn klein() -> SimplicialComplex {
        grid_surface(4, 4, true)
    }

    /// A sphere built from three stacked triangular rings (`3r + j`), with
    /// both caps coned to the single vertex `9`: a sphere with its two poles
    /// identified, which is a torus with a meridian collapsed to a point.
    pub fn pinched_torus() -> SimplicialComplex {
        let mut facets = Vec::new();
        for r in 0..2 {
            for j in 0..3 {
                let (a, b) = (3 * r + j, 3 * r + (j + 1) % 3);
                let (c, d) = (3 * (r + 1) + j, 3 * (r + 1) + (j + 1) % 3);
                facets.push(vec![a, b, c]);
                facets.push(vec![b, c, d]);
            }
        }
        for j in 0..3 {
            facets.push(vec![9, j, (j + 1) % 3]);
            facets.push(vec![9, 6 + j, 6 + (j + 1) % 3]);
        }
        from(facets)
    }

    pub const PINCH_VERTEX: Vertex = 9;

    pub fn pinched_torus_filtered() -> FilteredComplex {
        build_filtration(
            &pinched_torus(),
            &[SkeletonSpec {
                dim: 0,
                vertices: vec![PINCH_VERTEX],
            }],
        )
        .expect("pinch vertex spans a point")
    }

    pub const DISK_CONE_APEX: Vertex = 3;

    /// Cone over `circle()` with apex `3` as a codimension-two point stratum.
    pub fn disk_cone_filtered() -> FilteredComplex {
        let (c, apex) = crate::complex::cone(&circle());
        debug_assert_eq!(apex, DISK_CONE_APEX);
        build_filtration(
            &c,
            &[SkeletonSpec {
                dim: 0,
                vertices: vec![apex],
            }],
        )
        .expect("apex spans a point")
    }
}

fn trivial(k: SimplicialComplex) -> FilteredComplex {
    trivial_filtration(&k).expect("catalog complexes are pure")
}

fn suspended(k: SimplicialComplex) -> FilteredComplex {
    suspend_filtered(&trivial(k)).expect("suspension filtration is valid")
}

/// The filtered complex behind a catalog name.
pub fn catalog_space(name: &str) -> Result<FilteredComplex, UnknownSpace> {
    Ok(match name {
        "circle" => trivial(shapes::circle()),
        "sphere2" => trivial(shapes::sphere2()),
        "torus7" => trivial(shapes::torus7()),
        "rp2_6" => trivial(shapes::rp2_6()),
        "klein" => trivial(shapes::klein()),
        "disk_cone" => shapes::disk_cone_filtered(),
        "pinched_torus" => shapes::pinched_torus_filtered(),
        "susp_torus" => suspended(shapes::torus7()),
        "susp_sphere2" => suspended(shapes::sphere2()),
        "susp_rp2" => suspended(shapes::rp2_6()),
        _ => {
            return Err(UnknownSpace {
                name: name.to_string(),
            })
        }
    })
}

struct Known {
    recipe: &'static str,
    kind: PseudomanifoldKind,
    euler: i64,
    homology: &'static [usize],
    ih: &'static [(&'static str, &'static [usize])],
    witt: bool,
    witt_link_ranks: &'static [usize],
    top_sw: Option<u8>,
    basis: &'static [(&'static str, &'static str)],
}

fn known(name: &str) -> Known {
    use PseudomanifoldKind::*;
    const COUNT: (&str, &str) = ("euler", "direct count of the f-vector");
    match name {
        "circle" => Known {
            recipe: "boundary of a triangle",
            kind: Closed,
            euler: 0,
            homology: &[1, 1],
            ih: &[("m", &[1, 1])],
            witt: true,
            witt_link_ranks: &[],
            top_sw: Some(0),
            basis: &[
                COUNT,
                ("homology", "circle"),
                ("ih", "trivial filtration: IC = C"),
            ],
        },
        "sphere2" => Known {
            recipe: "octahedron (suspension of a 4-cycle)",
            kind: Closed,
            euler: 2,
            homology: &[1, 0, 1],
            ih: &[("m", &[1, 0, 1])],
            witt: true,
            witt_link_ranks: &[],
            top_sw: Some(0),
            basis: &[
                COUNT,
                ("homology", "2-sphere"),
                ("top_sw", "euler characteristic mod 2"),
            ],
        },
        "torus7" => Known {
            recipe: "7-vertex torus, triangles {i,i+1,i+3} and {i,i+2,i+3} mod 7",
            kind: Closed,
            euler: 0,
            homology: &[1, 2, 1],
            ih: &[("m", &[1, 2, 1])],
            witt: true,
            witt_link_ranks: &[],
            top_sw: Some(0),
            basis: &[
                COUNT,
                ("homology", "rank computation on the standard triangulation"),
            ],
        },
        "rp2_6" => Known {
            recipe: "6-vertex projective plane (antipodal quotient of the icosahedron)",
            kind: Closed,
            euler: 1,
            homology: &[1, 1, 1],
            ih: &[("m", &[1, 1, 1])],
            witt: true,
            witt_link_ranks: &[],
            top_sw: Some(1),
            basis: &[
                COUNT,
                ("homology", "rank computation on the standard triangulation"),
                ("top_sw", "euler characteristic mod 2"),
            ],
        },
        "klein" => Known {
            recipe: "4x4 grid with one twisted seam",
            kind: Closed,
            euler: 0,
            homology: &[1, 2, 1],
            ih: &[("m", &[1, 2, 1])],
            witt: true,
            witt_link_ranks: &[],
            top_sw: Some(0),
            basis: &[COUNT, ("homology", "mod-2 homology of the Klein bottle")],
        },
        "disk_cone" => Known {
            recipe: "cone over the triangle boundary, apex as a point stratum",
            kind: WithBoundary,
            euler: 1,
            homology: &[1, 0, 0],
            ih: &[("0", &[1, 0, 0]), ("m", &[1, 0, 0])],
            witt: true,
            witt_link_ranks: &[],
            top_sw: None,
            basis: &[
                COUNT,
                (
                    "ih",
                    "hand computation: rim edges only, sum of triangles kills the rim",
                ),
            ],
        },
        "pinched_torus" => Known {
            recipe: "sphere of three stacked rings with both poles coned to one vertex",
            kind: Closed,
            euler: 1,
            homology: &[1, 1, 1],
            ih: &[("m", &[1, 0, 1]), ("n", &[1, 0, 1])],
            witt: true,
            witt_link_ranks: &[],
            top_sw: None,
            basis: &[
                COUNT,
                ("ih", "hand computation: 1-cycles avoid the pinch and bound"),
                ("witt", "no odd-codimension strata"),
            ],
        },
        "susp_torus" => Known {
            recipe: "suspension of torus7, apexes 7 and 8 as point strata",
            kind: Closed,
            euler: 2,
            homology: &[1, 0, 2, 1],
            ih: &[("m", &[1, 2, 0, 1]), ("n", &[1, 0, 2, 1])],
            witt: false,
            witt_link_ranks: &[2, 2],
            top_sw: None,
            basis: &[
                COUNT,
                (
                    "ih",
                    "hand computation via apex allowability (Mayer-Vietoris over the cone points)",
                ),
                ("witt", "link is the torus, H_1 rank 2"),
            ],
        },
        "susp_sphere2" => Known {
            recipe: "suspension of the octahedron, apexes 6 and 7 as point strata",
            kind: Closed,
            euler: 0,
            homology: &[1, 0, 0, 1],
            ih: &[("m", &[1, 0, 0, 1]), ("n", &[1, 0, 0, 1])],
            witt: true,
            witt_link_ranks: &[0, 0],
            top_sw: None,
            basis: &[
                COUNT,
                ("ih", "stratified 3-sphere"),
                ("witt", "link is the 2-sphere, H_1 = 0"),
            ],
        },
        "susp_rp2" => Known {
            recipe: "suspension of rp2_6, apexes 6 and 7 as point strata",
            kind: Closed,
            euler: 1,
            homology: &[1, 0, 1, 1],
            ih: &[("m", &[1, 1, 0, 1]), ("n", &[1, 0, 1, 1])],
            witt: false,
            witt_link_ranks: &[1, 1],
            top_sw: None,
            basis: &[
                COUNT,
                (
                    "ih",
                    "hand computation (Mayer-Vietoris over the cone points)",
                ),
                ("witt", "link is the projective plane, H_1 rank 1"),
            ],
        },
        _ => unreachable!("names are checked by catalog_space"),
    }
}

/// Emits the canonical space file for a catalog name, including the
/// expected values `selftest` checks.
pub fn catalog(name: &str) -> Result<SpaceFile, UnknownSpace> {
    let x = catalog_space(name)?;
    let k = known(name);
    let expected = Expected {
        recipe: Some(k.recipe.to_string()),
        kind: Some(k.kind),
        euler: Some(k.euler),
        homology: Some(k.homology.to_vec()),
        ih: k
            .ih
            .iter()
            .map(|(p, r)| (p.to_string(), r.to_vec()))
            .collect::<BTreeMap<_, _>>(),
        witt: Some(k.witt),
        witt_link_ranks: Some(k.witt_link_ranks.to_vec()),
        top_sw: k.top_sw,
        basis: k
            .basis
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    };
    let mut file = SpaceFile::from_filtered(name, &x);
    file.expected = Some(expected);
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{euler_characteristic, validate_pseudomanifold};

    #[test]
    fn every_entry_builds_and_validates() {
        for name in CATALOG_NAMES {
            let f = catalog(name).unwrap();
            let x = catalog_space(name).unwrap();
            let exp = f.expected.unwrap();
            assert_eq!(
                Some(validate_pseudomanifold(x.complex()).kind),
                exp.kind,
                "{name}"
            );
            assert_eq!(Some(euler_characteristic(x.complex())), exp.euler, "{name}");
        }
    }

    #[test]
    fn unknown_name_lists_options() {
        let err = catalog("moebius").unwrap_err();
        assert!(err.to_string().contains("susp_rp2"));
    }

    #[test]
    fn grid_surfaces_are_simplicial() {
        let t = shapes::grid_surface(3, 3, false);
        assert_eq!(t.f_vector(), vec![9, 27, 18]);
        let k = shapes::klein();
        assert_eq!(k.f_vector(), vec![16, 48, 32]);
    }

    #[test]
    fn pinched_torus_counts() {
        let k = shapes::pinched_torus();
        assert_eq!(k.f_vector(), vec![10, 27, 18]);
        assert_eq!(k.euler_characteristic(), 1);
    }

    #[test]
    fn suspension_apex_ids() {
        let f = catalog("susp_torus").unwrap();
        assert_eq!(f.skeleta.len(), 1);
        assert_eq!(f.skeleta[0].vertices, vec![7, 8]);
        assert_eq!(f.dimension, 3);
    }
}
