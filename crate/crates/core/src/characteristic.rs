//! Fundamental classes and mod-2 Stiefel-Whitney homology classes of
//! closed triangulated manifolds.
//!
//! The degree-`i` class is represented by the sum of all `i`-simplices of
//! the first barycentric subdivision. Only the closed-manifold case is
//! handled; the input is not checked to be a manifold, but cycle failures
//! are reported.

use serde::Serialize;

use crate::complex::{
    barycentric_subdivision, validate_pseudomanifold, PseudomanifoldKind, SimplicialComplex,
    Subdivision,
};
use crate::homology::{ChainComplexF2, HomologyError};
use crate::linalg::{BitVec, EchelonBasis};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FundamentalClass {
    pub dimension: usize,
    /// Sum of all top simplices.
    pub chain: BitVec,
}

fn require_closed(k: &SimplicialComplex) -> Result<(), HomologyError> {
    let kind = validate_pseudomanifold(k).kind;
    if kind != PseudomanifoldKind::Closed {
        return Err(HomologyError::NotClosed { kind });
    }
    Ok(())
}

pub fn fundamental_class(k: &SimplicialComplex) -> Result<FundamentalClass, HomologyError> {
    require_closed(k)?;
    let a = k.dim();
    Ok(FundamentalClass {
        dimension: a,
        chain: BitVec::ones_vector(k.count(a)),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwClass {
    pub degree: usize,
    #[serde(skip)]
    pub chain: BitVec,
    pub simplex_count: usize,
    pub is_cycle: bool,
    /// Cycle that bounds in the subdivision (zero class).
    pub is_boundary: bool,
}

impl SwClass {
    /// A cycle that does not bound.
    pub fn is_nonzero(&self) -> bool {
        self.is_cycle && !self.is_boundary
    }
}

#[derive(Debug, Clone)]
pub struct SwClassSet {
    pub subdivision: Subdivision,
    pub classes: Vec<SwClass>,
}

impl SwClassSet {
    pub fn class(&self, degree: usize) -> &SwClass {
        &self.classes[degree]
    }
}

/// Builds `K'` and, for each degree, the sum of all simplices there, with
/// its cycle and boundary status in `K'`.
pub fn sw_homology_classes(k: &SimplicialComplex) -> SwClassSet {
    let sd = barycentric_subdivision(k);
    let kp = &sd.complex;
    let chains = ChainComplexF2::simplicial(kp);
    let classes = (0..=kp.dim())
        .map(|i| {
            let w = BitVec::ones_vector(kp.count(i));
            let is_cycle = kp.chain_boundary(i, &w).is_zero();
            let bounds = chains.boundary_images(i);
            let is_boundary = is_cycle
                && EchelonBasis::from_vectors(kp.count(i), &bounds)
                    .expect("boundary images have the chain length")
                    .contains(&w);
            SwClass {
                degree: i,
                simplex_count: kp.count(i),
                chain: w,
                is_cycle,
                is_boundary,
            }
        })
        .collect();
    SwClassSet {
        subdivision: sd,
        classes,
    }
}

/// `⟨w^a, [K]⟩`, which equals `χ(K) mod 2`.
pub fn top_sw_number(k: &SimplicialComplex) -> Result<u8, HomologyError> {
    require_closed(k)?;
    Ok(k.euler_characteristic().rem_euclid(2) as u8)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShadowVerdict {
    /// Some computed Stiefel-Whitney number is nonzero.
    CannotBound,
    /// Every computed number vanishes; nothing is claimed about bounding.
    NoObstructionFound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BordismShadow {
    pub top_number: u8,
    /// Per degree: the class is a boundary in the subdivision.
    pub class_vanishing: Vec<bool>,
    /// Per degree: the representative is a cycle.
    pub class_is_cycle: Vec<bool>,
    pub obstructed: bool,
    pub verdict: ShadowVerdict,
}

/// Top number plus per-degree class data. Only the degree-0 class is a
/// Stiefel-Whitney number by itself (it pairs `w^a` with `[K]`), so only it
/// and the top number decide `obstructed`; nonzero classes in other degrees
/// are listed but do not obstruct (the Klein bottle bounds with `w_1 ≠ 0`).
pub fn bordism_shadow_report(k: &SimplicialComplex) -> Result<BordismShadow, HomologyError> {
    let top_number = top_sw_number(k)?;
    let set = sw_homology_classes(k);
    let class_vanishing: Vec<bool> = set.classes.iter().map(|c| c.is_boundary).collect();
    let class_is_cycle: Vec<bool> = set.classes.iter().map(|c| c.is_cycle).collect();
    let obstructed = top_number == 1 || set.class(0).is_nonzero();
    Ok(BordismShadow {
        top_number,
        class_vanishing,
        class_is_cycle,
        obstructed,
        verdict: if obstructed {
            ShadowVerdict::CannotBound
        } else {
            ShadowVerdict::NoObstructionFound
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::shapes;

    #[test]
    fn fundamental_classes() {
        let c = shapes::circle();
        let f = fundamental_class(&c).unwrap();
        assert_eq!(f.chain.count_ones(), 3);
        assert!(c.chain_boundary(1, &f.chain).is_zero());

        let rp2 = shapes::rp2_6();
        let f = fundamental_class(&rp2).unwrap();
        assert_eq!(f.chain.count_ones(), 10);
        assert!(rp2.chain_boundary(2, &f.chain).is_zero());

        let tri = SimplicialComplex::from_facets(&[vec![0, 1, 2]]).unwrap();
        assert!(matches!(
            fundamental_class(&tri),
            Err(HomologyError::NotClosed {
                kind: PseudomanifoldKind::WithBoundary
            })
        ));
    }

    #[test]
    fn circle_classes() {
        let set = sw_homology_classes(&shapes::circle());
        assert_eq!(set.class(0).simplex_count, 6);
        assert!(set.class(0).is_cycle && set.class(0).is_boundary);
        assert!(set.class(1).is_nonzero());
    }

    #[test]
    fn projective_plane_has_nonzero_w1() {
        let set = sw_homology_classes(&shapes::rp2_6());
        assert!(set.class(1).is_cycle);
        assert!(!set.class(1).is_boundary);
        assert!(set.class(0).is_nonzero());
        assert_eq!(top_sw_number(&shapes::rp2_6()).unwrap(), 1);
    }

    #[test]
    fn torus_classes_vanish() {
        let set = sw_homology_classes(&shapes::torus7());
        assert!(set.class(1).is_cycle && set.class(1).is_boundary);
        assert!(set.class(0).is_boundary);
        let r = bordism_shadow_report(&shapes::torus7()).unwrap();
        assert!(!r.obstructed);
        assert_eq!(r.verdict, ShadowVerdict::NoObstructionFound);
    }

    #[test]
    fn top_class_is_subdivision_fundamental_class() {
        for k in [
            shapes::torus7(),
            shapes::rp2_6(),
            shapes::klein(),
            shapes::sphere2(),
        ] {
            let set = sw_homology_classes(&k);
            let top = set.class(k.dim());
            let f = fundamental_class(&set.subdivision.complex).unwrap();
            assert_eq!(top.chain, f.chain);
            assert!(set.classes.iter().all(|c| c.is_cycle));
            assert_eq!(
                top_sw_number(&k).unwrap(),
                top_sw_number(&set.subdivision.complex).unwrap()
            );
        }
    }

    #[test]
    fn klein_bottle_makes_no_claim() {
        let r = bordism_shadow_report(&shapes::klein()).unwrap();
        assert_eq!(r.top_number, 0);
        assert!(!r.obstructed);
        // w_1 of the Klein bottle is nonzero but is not a number by itself
        assert!(!r.class_vanishing[1]);
        assert!(r.class_is_cycle[1]);
    }

    #[test]
    fn sphere_top_number() {
        assert_eq!(top_sw_number(&shapes::sphere2()).unwrap(), 0);
    }
}
