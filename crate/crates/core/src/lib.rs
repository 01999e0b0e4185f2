//! Intersection homology of filtered simplicial pseudomanifolds over GF(2).
//!
//! The pipeline is: build a [`SimplicialComplex`](complex::SimplicialComplex)
//! from facets, attach a filtration by full subcomplexes
//! ([`build_filtration`](stratified::build_filtration)), pick a
//! [`Perversity`](stratified::Perversity), then compute
//! [`ih`](homology::ih), the [`omega_rank`](homology::omega_rank) of the
//! inclusion `IC ↪ C`, the [`witt_check`](homology::witt_check) on links of
//! odd-codimension strata, and the rank-level
//! [`duality_check`](homology::duality_check).
//!
//! ```
//! use ihf2::catalog::catalog_space;
//! use ihf2::homology::ih;
//! use ihf2::stratified::Perversity;
//!
//! let x = catalog_space("susp_torus").unwrap();
//! let ranks = ih(&x, &Perversity::lower_middle(3)).unwrap().ranks;
//! assert_eq!(ranks, vec![1, 2, 0, 1]);
//! ```
//!
//! For closed triangulated manifolds, [`characteristic`] computes mod-2
//! Stiefel-Whitney homology classes from the barycentric subdivision and
//! the top Stiefel-Whitney number.

pub mod catalog;
pub mod characteristic;
pub mod complex;
pub mod homology;
pub mod linalg;
pub mod spacefile;
pub mod stratified;

pub use complex::{Simplex, SimplicialComplex, Vertex};
pub use homology::{HomologyError, HomologyResult};
pub use linalg::{BitVec, MatrixF2};
pub use stratified::{FilteredComplex, Perversity, PerversityKind};
