//! Homology of GF(2) chain complexes: ordinary simplicial homology,
//! intersection homology, the map induced by `IC ↪ C`, the Witt condition
//! and the rank-level duality checks.

use serde::Serialize;
use thiserror::Error;

use crate::complex::{validate_pseudomanifold, PseudomanifoldKind, Simplex, SimplicialComplex};
use crate::linalg::{intersect_dim, BitVec, EchelonBasis, LinalgError, MatrixF2, TrackedEchelon};
use crate::stratified::{
    self, allowable_indices, ic_basis, FilteredComplex, FiltrationError, Perversity, PerversityKind,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("boundary of boundary is nonzero at degree {degree}")]
    BoundarySquare { degree: usize },
    #[error("boundary matrix at degree {degree} is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    Shape {
        degree: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("the space is not a closed pseudomanifold ({kind})")]
    NotClosed { kind: PseudomanifoldKind },
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Chain groups `C_0 … C_n` with boundary maps; `boundaries[i]` maps
/// degree `i` to degree `i-1` (`boundaries[0]` has no rows).
#[derive(Debug, Clone)]
pub struct ChainComplexF2 {
    dims: Vec<usize>,
    boundaries: Vec<MatrixF2>,
}

impl ChainComplexF2 {
    pub fn new(boundaries: Vec<MatrixF2>) -> Result<Self, HomologyError> {
        let dims: Vec<usize> = boundaries.iter().map(MatrixF2::cols).collect();
        for (i, d) in boundaries.iter().enumerate() {
            let expected_rows = if i == 0 { 0 } else { dims[i - 1] };
            if d.rows() != expected_rows {
                return Err(HomologyError::Shape {
                    degree: i,
                    rows: d.rows(),
                    cols: d.cols(),
                    expected_rows,
                    expected_cols: dims[i],
                });
            }
        }
        let c = Self { dims, boundaries };
        c.check_boundary_square()?;
        Ok(c)
    }

    pub fn simplicial(k: &SimplicialComplex) -> Self {
        let top = if k.is_empty() { 0 } else { k.dim() + 1 };
        Self {
            dims: (0..top).map(|i| k.count(i)).collect(),
            boundaries: (0..top).map(|i| k.boundary_matrix(i)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims.get(i).copied().unwrap_or(0)
    }

    pub fn boundary(&self, i: usize) -> &MatrixF2 {
        &self.boundaries[i]
    }

    fn check_boundary_square(&self) -> Result<(), HomologyError> {
        for i in 2..self.boundaries.len() {
            if !self.boundaries[i - 1].mul(&self.boundaries[i])?.is_zero() {
                return Err(HomologyError::BoundarySquare { degree: i });
            }
        }
        Ok(())
    }

    /// Cycle basis at degree `i`.
    pub fn cycles(&self, i: usize) -> Vec<BitVec> {
        self.boundaries[i].nullspace_basis()
    }

    /// Images of the basis elements of degree `i+1` (spanning `B_i`).
    pub fn boundary_images(&self, i: usize) -> Vec<BitVec> {
        match self.boundaries.get(i + 1) {
            Some(d) => d.transpose().row_data().to_vec(),
            None => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub ranks: Vec<usize>,
    /// Cycle representatives per degree, in the complex's own coordinates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<BitVec>>>,
}

impl HomologyResult {
    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

/// `rank H_i = dim ker ∂_i − rank ∂_{i+1}`. With `generators`, also returns
/// cycles completing a basis of the boundaries, taken in elimination order.
pub fn homology(c: &ChainComplexF2, generators: bool) -> Result<HomologyResult, HomologyError> {
    c.check_boundary_square()?;
    let mut ranks = Vec::with_capacity(c.len());
    let mut gens = Vec::new();
    for i in 0..c.len() {
        let cycles = c.cycles(i);
        let bounds = c.boundary_images(i);
        let mut basis = EchelonBasis::from_vectors(c.dim(i), &bounds)?;
        let b = basis.dim();
        ranks.push(cycles.len() - b);
        if generators {
            let reps: Vec<BitVec> = cycles
                .into_iter()
                .filter(|z| basis.insert(z.clone()))
                .collect();
            gens.push(reps);
        }
    }
    Ok(HomologyResult {
        ranks,
        generators: generators.then_some(gens),
    })
}

pub fn simplicial_homology(k: &SimplicialComplex) -> HomologyResult {
    homology(&ChainComplexF2::simplicial(k), false).expect("simplicial boundaries square to zero")
}

/// The intersection chain complex: bases of `IC_i` (in simplicial
/// coordinates) and the boundary maps written in those bases.
#[derive(Debug, Clone)]
pub struct IntersectionComplex {
    pub bases: Vec<Vec<BitVec>>,
    pub chains: ChainComplexF2,
}

pub fn intersection_chain_complex(
    x: &FilteredComplex,
    p: &Perversity,
) -> Result<IntersectionComplex, HomologyError> {
    let k = x.complex();
    let a = x.dim();
    let bases: Vec<Vec<BitVec>> = (0..=a)
        .map(|i| ic_basis(x, p, i))
        .collect::<Result<_, _>>()?;
    let mut boundaries = vec![MatrixF2::zeros(0, bases[0].len())];
    for i in 1..=a {
        let below = TrackedEchelon::new(k.count(i - 1), &bases[i - 1])?;
        let mut columns = Vec::with_capacity(bases[i].len());
        for xi in &bases[i] {
            let d = k.chain_boundary(i, xi);
            let coords = below
                .solve(&d)?
                .expect("boundary of an intersection chain is an intersection chain");
            columns.push(coords);
        }
        boundaries.push(MatrixF2::from_columns(bases[i - 1].len(), &columns)?);
    }
    Ok(IntersectionComplex {
        bases,
        chains: ChainComplexF2::new(boundaries)?,
    })
}

/// `IH_i^p̄(X)`; generators are returned as simplicial chains.
pub fn ih_with_generators(
    x: &FilteredComplex,
    p: &Perversity,
    generators: bool,
) -> Result<HomologyResult, HomologyError> {
    let ic = intersection_chain_complex(x, p)?;
    let mut res = homology(&ic.chains, generators)?;
    if let Some(gens) = res.generators.as_mut() {
        for (i, g) in gens.iter_mut().enumerate() {
            let n = x.complex().count(i);
            *g = g
                .iter()
                .map(|coords| {
                    let mut chain = BitVec::zeros(n);
                    for j in coords.ones() {
                        chain.xor_assign(&ic.bases[i][j]);
                    }
                    chain
                })
                .collect();
        }
    }
    Ok(res)
}

pub fn ih(x: &FilteredComplex, p: &Perversity) -> Result<HomologyResult, HomologyError> {
    ih_with_generators(x, p, false)
}

/// Ranks of `IH_i`, `H_i`, and the map `IH_i → H_i` induced by inclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OmegaRank {
    pub ih_rank: usize,
    pub h_rank: usize,
    pub map_rank: usize,
}

impl OmegaRank {
    pub fn as_tuple(&self) -> (usize, usize, usize) {
        (self.ih_rank, self.h_rank, self.map_rank)
    }
}

/// The image of `IH_i → H_i` is `(Z_i^IC + B_i) / B_i`, so its rank is
/// `dim Z_i^IC − dim(Z_i^IC ∩ B_i)`.
pub fn omega_rank(
    x: &FilteredComplex,
    p: &Perversity,
    i: usize,
) -> Result<OmegaRank, HomologyError> {
    let k = x.complex();
    let cols = allowable_indices(x, p, i)?;
    let full = k.boundary_matrix(i);
    let restricted = MatrixF2::from_columns(
        full.rows(),
        &cols.iter().map(|&c| full.column(c)).collect::<Vec<_>>(),
    )?;
    let ic_cycles: Vec<BitVec> = restricted
        .nullspace_basis()
        .into_iter()
        .map(|v| BitVec::from_indices(k.count(i), v.ones().map(|j| cols[j])))
        .collect::<Result<_, _>>()?;
    let chains = ChainComplexF2::simplicial(k);
    let bounds = chains.boundary_images(i);
    let map_rank = ic_cycles.len() - intersect_dim(&ic_cycles, &bounds)?;
    let ih_rank = ih(x, p)?.rank(i);
    let h_rank = homology(&chains, false)?.rank(i);
    Ok(OmegaRank {
        ih_rank,
        h_rank,
        map_rank,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WittEntry {
    pub stratum_dimension: usize,
    pub codimension: usize,
    pub component: usize,
    /// Representative simplex whose link was examined.
    pub link_of: Simplex,
    pub link_f_vector: Vec<usize>,
    /// `k` with `codimension = 2k + 1`.
    pub degree: usize,
    /// `rank IH_k^n̄(L)`.
    pub link_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WittReport {
    pub is_witt: bool,
    pub entries: Vec<WittEntry>,
    pub failures: Vec<WittEntry>,
}

/// For each component of each odd-codimension stratum, computes
/// `IH_k^n̄(L)` of the link of one representative simplex.
pub fn witt_check(x: &FilteredComplex) -> Result<WittReport, HomologyError> {
    let mut entries = Vec::new();
    for st in stratified::strata(x) {
        if !st.is_singular() || st.codimension % 2 == 0 {
            continue;
        }
        let degree = (st.codimension - 1) / 2;
        for (component, comp) in st.components.iter().enumerate() {
            let l = stratified::stratum_link(x, &st, component)?;
            let n = Perversity::builtin(PerversityKind::UpperMiddle, l.dim());
            let rank = ih(&l, &n)?.rank(degree);
            entries.push(WittEntry {
                stratum_dimension: st.dimension,
                codimension: st.codimension,
                component,
                link_of: comp.representative.clone().expect("stratum_link succeeded"),
                link_f_vector: l.complex().f_vector(),
                degree,
                link_rank: rank,
            });
        }
    }
    let failures: Vec<WittEntry> = entries
        .iter()
        .filter(|e| e.link_rank > 0)
        .cloned()
        .collect();
    Ok(WittReport {
        is_witt: failures.is_empty(),
        entries,
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub dimension: usize,
    /// Ranks of `IH^m̄`.
    pub lower_middle: Vec<usize>,
    /// Ranks of `IH^n̄`.
    pub upper_middle: Vec<usize>,
    /// `(rank IH_i^m̄, rank IH_{a-i}^m̄)` for each `i`.
    pub duality_pairs: Vec<(usize, usize)>,
    pub symmetric: bool,
    pub middle_agreement: bool,
    pub pass: bool,
}

/// Rank symmetry `IH_i^m̄ = IH_{a-i}^m̄` and agreement `IH^m̄ = IH^n̄`.
/// Over a field these are the rank shadows of duality and of the m̄/n̄ lift.
pub fn duality_check(x: &FilteredComplex) -> Result<DualityReport, HomologyError> {
    let kind = validate_pseudomanifold(x.complex()).kind;
    if kind != PseudomanifoldKind::Closed {
        return Err(HomologyError::NotClosed { kind });
    }
    let a = x.dim();
    let lower = ih(x, &Perversity::lower_middle(a))?.ranks;
    let upper = ih(x, &Perversity::upper_middle(a))?.ranks;
    let duality_pairs: Vec<(usize, usize)> = (0..=a).map(|i| (lower[i], lower[a - i])).collect();
    let symmetric = duality_pairs.iter().all(|(l, r)| l == r);
    let middle_agreement = lower == upper;
    Ok(DualityReport {
        dimension: a,
        lower_middle: lower,
        upper_middle: upper,
        duality_pairs,
        symmetric,
        middle_agreement,
        pass: symmetric && middle_agreement,
    })
}
