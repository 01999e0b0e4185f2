//! Filtered complexes, perversities and intersection chains.
//!
//! A filtration `X_0 ⊆ X_1 ⊆ … ⊆ X_{a-2} ⊆ X_a = X` is given by vertex sets:
//! each `X_k` is the full subcomplex spanned by its vertex set. Because the
//! skeleta are full, the largest face of a simplex `σ` lying in `X_k` is
//! spanned by `σ`'s vertices in that set, so allowability is a vertex count.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{self, validate_pseudomanifold, Simplex, SimplicialComplex, Vertex};
use crate::linalg::{BitVec, MatrixF2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PerversityError {
    #[error("perversity needs at least one value (for codimension 2)")]
    Empty,
    #[error("perversity must vanish at codimension 2, got p(2) = {value}")]
    NonZeroAtTwo { value: i64 },
    #[error("perversity decreases at codimension {codim}")]
    Decreasing { codim: usize },
    #[error("perversity grows by more than one at codimension {codim}")]
    JumpTooLarge { codim: usize },
    #[error(
        "perversity is defined up to codimension {available}, but codimension {needed} is required"
    )]
    TooShort { needed: usize, available: usize },
    #[error("unknown perversity `{0}` (expected 0, t, m, n or a comma list)")]
    Unparseable(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiltrationError {
    #[error("the complex is not pure; filtrations need a pure complex")]
    NotPure,
    #[error("skeleton dimensions must be strictly increasing (got {dim} after {previous})")]
    NotIncreasing { previous: usize, dim: usize },
    #[error(
        "skeleton X_{dim} would create a codimension-one stratum in a {ambient}-dimensional space"
    )]
    CodimensionOne { dim: usize, ambient: usize },
    #[error("skeleton dimension {dim} is out of range for a {ambient}-dimensional space")]
    DimensionOutOfRange { dim: usize, ambient: usize },
    #[error("skeleton X_{dim} uses vertex {vertex}, which is not in the complex")]
    UnknownVertex { dim: usize, vertex: Vertex },
    #[error("skeleta are not nested: vertex {vertex} of X_{lower} is missing from X_{upper}")]
    NotNested {
        lower: usize,
        upper: usize,
        vertex: Vertex,
    },
    #[error("skeleton X_{dim} contains the {}-simplex {witness}; dimension exceeds {dim} (try a finer triangulation)", witness.dim())]
    TooLarge { dim: usize, witness: Simplex },
    #[error("skeleton X_{dim} is not a full subcomplex: {witness} has all its vertices in X_{dim} but is missing (subdivide first)")]
    NotFull { dim: usize, witness: Simplex },
    #[error("skeleton X_{dim} is not closed under faces: {witness} is missing")]
    NotClosed { dim: usize, witness: Simplex },
    #[error("stratum of dimension {dim} (component {component}) contains no {dim}-simplex; its link is not computable in this triangulation (subdivide first)")]
    NoRepresentative { dim: usize, component: usize },
    #[error("{0}")]
    Perversity(#[from] PerversityError),
    #[error("degree {degree} is out of range for dimension {ambient}")]
    DegreeOutOfRange { degree: usize, ambient: usize },
    #[error("simplex {simplex} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        simplex: Simplex,
        expected: usize,
        found: usize,
    },
    #[error("{0}")]
    Complex(#[from] complex::ComplexError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PerversityKind {
    Zero,
    Total,
    LowerMiddle,
    UpperMiddle,
}

impl PerversityKind {
    pub fn value(self, codim: usize) -> i64 {
        let c = codim as i64;
        match self {
            Self::Zero => 0,
            Self::Total => c - 2,
            Self::LowerMiddle => (c - 2).div_euclid(2),
            Self::UpperMiddle => (c - 1).div_euclid(2),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Self::Zero => "0",
            Self::Total => "t",
            Self::LowerMiddle => "m",
            Self::UpperMiddle => "n",
        }
    }

    pub const ALL: [PerversityKind; 4] = [
        Self::Zero,
        Self::LowerMiddle,
        Self::UpperMiddle,
        Self::Total,
    ];
}

/// A perversity `p(c)` for `2 ≤ c ≤ max_codim`, with `p(2) = 0` and steps
/// of 0 or 1. Such a sequence automatically lies between `0̄` and `t̄`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Perversity {
    values: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<PerversityKind>,
}

impl Perversity {
    /// `values[0]` is `p(2)`, `values[1]` is `p(3)`, and so on.
    pub fn new(values: Vec<i64>) -> Result<Self, PerversityError> {
        let first = *values.first().ok_or(PerversityError::Empty)?;
        if first != 0 {
            return Err(PerversityError::NonZeroAtTwo { value: first });
        }
        for (k, w) in values.windows(2).enumerate() {
            let codim = k + 3;
            if w[1] < w[0] {
                return Err(PerversityError::Decreasing { codim });
            }
            if w[1] > w[0] + 1 {
                return Err(PerversityError::JumpTooLarge { codim });
            }
        }
        Ok(Self { values, kind: None })
    }

    pub fn builtin(kind: PerversityKind, max_codim: usize) -> Self {
        Self {
            values: (2..=max_codim.max(2)).map(|c| kind.value(c)).collect(),
            kind: Some(kind),
        }
    }

    pub fn zero(max_codim: usize) -> Self {
        Self::builtin(PerversityKind::Zero, max_codim)
    }

    pub fn total(max_codim: usize) -> Self {
        Self::builtin(PerversityKind::Total, max_codim)
    }

    pub fn lower_middle(max_codim: usize) -> Self {
        Self::builtin(PerversityKind::LowerMiddle, max_codim)
    }

    pub fn upper_middle(max_codim: usize) -> Self {
        Self::builtin(PerversityKind::UpperMiddle, max_codim)
    }

    /// Named (`0`, `t`, `m`, `n`) or a comma list of values for `c = 2, 3, …`.
    /// Named perversities are generated up to `max_codim`.
    pub fn parse(spec: &str, max_codim: usize) -> Result<Self, PerversityError> {
        let spec = spec.trim();
        let kind = match spec {
            "0" | "zero" => Some(PerversityKind::Zero),
            "t" | "total" => Some(PerversityKind::Total),
            "m" | "lower_middle" => Some(PerversityKind::LowerMiddle),
            "n" | "upper_middle" => Some(PerversityKind::UpperMiddle),
            _ => None,
        };
        if let Some(kind) = kind {
            return Ok(Self::builtin(kind, max_codim));
        }
        let values = spec
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PerversityError::Unparseable(spec.to_string()))?;
        Self::new(values)
    }

    pub fn kind(&self) -> Option<PerversityKind> {
        self.kind
    }

    pub fn max_codim(&self) -> usize {
        self.values.len() + 1
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn at(&self, codim: usize) -> Option<i64> {
        if codim < 2 {
            return None;
        }
        match self.kind {
            Some(kind) => Some(kind.value(codim)),
            None => self.values.get(codim - 2).copied(),
        }
    }

    /// Checks the perversity covers every codimension of an `ambient`-dimensional space.
    pub fn ensure_covers(&self, ambient: usize) -> Result<(), PerversityError> {
        if ambient >= 2 && self.kind.is_none() && self.max_codim() < ambient {
            return Err(PerversityError::TooShort {
                needed: ambient,
                available: self.max_codim(),
            });
        }
        Ok(())
    }

    /// Pointwise `self ≤ other` on the codimensions both define.
    pub fn le(&self, other: &Perversity, up_to: usize) -> bool {
        (2..=up_to).all(|c| match (self.at(c), other.at(c)) {
            (Some(a), Some(b)) => a <= b,
            _ => false,
        })
    }

    /// Label used in reports: the builtin symbol or the value list.
    pub fn label(&self) -> String {
        match self.kind {
            Some(k) => k.symbol().to_string(),
            None => self
                .values
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(","),
        }
    }
}

impl fmt::Display for Perversity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// One declared skeleton: `X_dim` is the full subcomplex on `vertices`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonSpec {
    pub dim: usize,
    pub vertices: Vec<Vertex>,
}

/// A pure complex with a filtration by full subcomplexes and no
/// codimension-one stratum.
#[derive(Debug, Clone)]
pub struct FilteredComplex {
    complex: SimplicialComplex,
    /// `skeleta[k]` is the vertex set of `X_k`, for `0 ≤ k ≤ a-2`.
    skeleta: Vec<BTreeSet<Vertex>>,
}

impl FilteredComplex {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    /// Vertex set of `X_k`; `X_{a-1} = X_{a-2}` and `X_a` is every vertex.
    pub fn skeleton_vertices(&self, k: usize) -> BTreeSet<Vertex> {
        if k >= self.dim() {
            return self.complex.vertices().into_iter().collect();
        }
        self.skeleta
            .get(k.min(self.skeleta.len().saturating_sub(1)))
            .cloned()
            .unwrap_or_default()
    }

    fn skeleton_ref(&self, k: usize) -> Option<&BTreeSet<Vertex>> {
        self.skeleta.get(k)
    }

    pub fn is_trivial(&self) -> bool {
        self.skeleta.iter().all(BTreeSet::is_empty)
    }

    pub fn singular_vertices(&self) -> BTreeSet<Vertex> {
        self.skeleta.last().cloned().unwrap_or_default()
    }

    /// Compact description: one entry per level where the vertex set grows.
    pub fn skeleton_specs(&self) -> Vec<SkeletonSpec> {
        let mut out = Vec::new();
        let mut prev: Option<&BTreeSet<Vertex>> = None;
        for (k, set) in self.skeleta.iter().enumerate() {
            if !set.is_empty() && prev != Some(set) {
                out.push(SkeletonSpec {
                    dim: k,
                    vertices: set.iter().copied().collect(),
                });
            }
            prev = Some(set);
        }
        out
    }

    /// The full subcomplex `X_k`.
    pub fn skeleton(&self, k: usize) -> SimplicialComplex {
        let v = self.skeleton_vertices(k);
        if v.is_empty() {
            SimplicialComplex::empty()
        } else {
            self.complex.full_subcomplex(&v)
        }
    }

    /// `dim(σ ∩ X_k)`, with `None` standing for the empty intersection.
    pub fn meet_dim(&self, sigma: &Simplex, k: usize) -> Option<usize> {
        sigma.count_in(self.skeleton_ref(k)?).checked_sub(1)
    }
}

/// Validates a filtration given by nested vertex sets.
pub fn build_filtration(
    k: &SimplicialComplex,
    skeleta: &[SkeletonSpec],
) -> Result<FilteredComplex, FiltrationError> {
    let report = validate_pseudomanifold(k);
    if !report.is_pure {
        return Err(FiltrationError::NotPure);
    }
    let a = k.dim();
    let vertices: BTreeSet<Vertex> = k.vertices().into_iter().collect();
    let levels = a.saturating_sub(1);
    let mut declared: BTreeMap<usize, BTreeSet<Vertex>> = BTreeMap::new();
    let mut previous: Option<usize> = None;
    for spec in skeleta {
        if let Some(p) = previous {
            if spec.dim <= p {
                return Err(FiltrationError::NotIncreasing {
                    previous: p,
                    dim: spec.dim,
                });
            }
        }
        previous = Some(spec.dim);
        if a >= 1 && spec.dim == a - 1 {
            return Err(FiltrationError::CodimensionOne {
                dim: spec.dim,
                ambient: a,
            });
        }
        if spec.dim + 2 > a {
            return Err(FiltrationError::DimensionOutOfRange {
                dim: spec.dim,
                ambient: a,
            });
        }
        let set: BTreeSet<Vertex> = spec.vertices.iter().copied().collect();
        if let Some(&v) = set.iter().find(|v| !vertices.contains(v)) {
            return Err(FiltrationError::UnknownVertex {
                dim: spec.dim,
                vertex: v,
            });
        }
        declared.insert(spec.dim, set);
    }
    // carry each level forward until the next declared one
    let mut levels_vec: Vec<BTreeSet<Vertex>> = Vec::with_capacity(levels);
    let mut current = BTreeSet::new();
    for level in 0..levels {
        if let Some(set) = declared.get(&level) {
            if let Some(&v) = current.iter().find(|v| !set.contains(*v)) {
                let lower = (0..level)
                    .rev()
                    .find(|l| declared.contains_key(l))
                    .unwrap_or(0);
                return Err(FiltrationError::NotNested {
                    lower,
                    upper: level,
                    vertex: v,
                });
            }
            current = set.clone();
        }
        levels_vec.push(current.clone());
    }
    for (level, set) in levels_vec.iter().enumerate() {
        if set.is_empty() {
            continue;
        }
        let sub = k.full_subcomplex(set);
        if sub.dim() > level {
            let witness = sub.simplices(level + 1)[0].clone();
            return Err(FiltrationError::TooLarge {
                dim: level,
                witness,
            });
        }
    }
    Ok(FilteredComplex {
        complex: k.clone(),
        skeleta: levels_vec,
    })
}

/// Builds a filtration from explicit subcomplexes (simplex lists), checking
/// that each is closed and full before reducing it to its vertex set.
pub fn build_filtration_from_subcomplexes(
    k: &SimplicialComplex,
    skeleta: &[(usize, Vec<Simplex>)],
) -> Result<FilteredComplex, FiltrationError> {
    let mut specs = Vec::with_capacity(skeleta.len());
    for (dim, simplices) in skeleta {
        let given: BTreeSet<&Simplex> = simplices.iter().collect();
        for s in simplices {
            if !k.contains(s) {
                return Err(complex::ComplexError::SimplexNotFound(s.clone()).into());
            }
            if let Some(f) = s.all_faces().into_iter().find(|f| !given.contains(f)) {
                return Err(FiltrationError::NotClosed {
                    dim: *dim,
                    witness: f,
                });
            }
        }
        let verts: BTreeSet<Vertex> = simplices
            .iter()
            .flat_map(|s| s.vertices().iter().copied())
            .collect();
        if !verts.is_empty() {
            let full = k.full_subcomplex(&verts);
            let missing = full.all_simplices().find(|s| !given.contains(s)).cloned();
            if let Some(witness) = missing {
                return Err(FiltrationError::NotFull { dim: *dim, witness });
            }
        }
        specs.push(SkeletonSpec {
            dim: *dim,
            vertices: verts.into_iter().collect(),
        });
    }
    build_filtration(k, &specs)
}

/// The trivial filtration (no singular strata).
pub fn trivial_filtration(k: &SimplicialComplex) -> Result<FilteredComplex, FiltrationError> {
    build_filtration(k, &[])
}

fn check_degree(x: &FilteredComplex, i: usize) -> Result<(), FiltrationError> {
    if i > x.dim() {
        return Err(FiltrationError::DegreeOutOfRange {
            degree: i,
            ambient: x.dim(),
        });
    }
    Ok(())
}

/// Tests `dim(σ ∩ X_{a-c}) ≤ i - c + p(c)` for every `2 ≤ c ≤ a`.
pub fn simplex_allowable(
    x: &FilteredComplex,
    p: &Perversity,
    i: usize,
    sigma: &Simplex,
) -> Result<bool, FiltrationError> {
    if sigma.dim() != i {
        return Err(FiltrationError::DimensionMismatch {
            simplex: sigma.clone(),
            expected: i,
            found: sigma.dim(),
        });
    }
    p.ensure_covers(x.dim())?;
    Ok(allowable_unchecked(x, p, i, sigma))
}

fn allowable_unchecked(x: &FilteredComplex, p: &Perversity, i: usize, sigma: &Simplex) -> bool {
    let a = x.dim();
    (2..=a).all(|c| match x.meet_dim(sigma, a - c) {
        None => true,
        Some(d) => {
            let bound = i as i64 - c as i64 + p.at(c).expect("perversity covers ambient dimension");
            d as i64 <= bound
        }
    })
}

/// Indices (into the canonical `i`-simplex order) of the allowable `i`-simplices.
pub fn allowable_indices(
    x: &FilteredComplex,
    p: &Perversity,
    i: usize,
) -> Result<Vec<usize>, FiltrationError> {
    check_degree(x, i)?;
    p.ensure_covers(x.dim())?;
    Ok(x.complex
        .simplices(i)
        .iter()
        .enumerate()
        .filter(|(_, s)| allowable_unchecked(x, p, i, s))
        .map(|(k, _)| k)
        .collect())
}

/// The allowable `i`-simplices in canonical order. Over GF(2) an `i`-chain
/// is allowable exactly when its support consists of these.
pub fn allowable_simplices(
    x: &FilteredComplex,
    p: &Perversity,
    i: usize,
) -> Result<Vec<Simplex>, FiltrationError> {
    let idx = allowable_indices(x, p, i)?;
    Ok(idx
        .into_iter()
        .map(|k| x.complex.simplices(i)[k].clone())
        .collect())
}

/// Basis of `IC_i`: chains on allowable `i`-simplices whose boundary is
/// supported on allowable `(i-1)`-simplices. Computed as the kernel of the
/// boundary restricted to allowable columns and projected onto the
/// non-allowable rows; vectors are returned in full `C_i` coordinates.
pub fn ic_basis(
    x: &FilteredComplex,
    p: &Perversity,
    i: usize,
) -> Result<Vec<BitVec>, FiltrationError> {
    let cols = allowable_indices(x, p, i)?;
    let k = &x.complex;
    let n_i = k.count(i);
    if i == 0 {
        return Ok(cols.into_iter().map(|c| BitVec::unit(n_i, c)).collect());
    }
    let below = allowable_indices(x, p, i - 1)?;
    let mut is_allowed_below = vec![false; k.count(i - 1)];
    for r in below {
        is_allowed_below[r] = true;
    }
    let forbidden_rows: Vec<usize> = (0..k.count(i - 1))
        .filter(|&r| !is_allowed_below[r])
        .collect();
    let mut row_pos = vec![usize::MAX; k.count(i - 1)];
    for (pos, &r) in forbidden_rows.iter().enumerate() {
        row_pos[r] = pos;
    }
    let mut projected = MatrixF2::zeros(forbidden_rows.len(), cols.len());
    for (j, &c) in cols.iter().enumerate() {
        for f in k.simplices(i)[c].boundary_faces() {
            let r = k.index_of(&f).expect("faces are present");
            if row_pos[r] != usize::MAX {
                let cur = projected.get(row_pos[r], j);
                projected.set(row_pos[r], j, !cur);
            }
        }
    }
    Ok(projected
        .nullspace_basis()
        .into_iter()
        .map(|v| BitVec::from_indices(n_i, v.ones().map(|j| cols[j])).expect("in range"))
        .collect())
}

/// One connected piece of a stratum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumComponent {
    pub simplices: Vec<Simplex>,
    /// Smallest top-dimensional simplex of the component, when one exists.
    pub representative: Option<Simplex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumInfo {
    /// Filtration index `k` (equal to the stratum's dimension).
    pub index: usize,
    pub dimension: usize,
    pub codimension: usize,
    pub components: Vec<StratumComponent>,
}

impl StratumInfo {
    pub fn is_singular(&self) -> bool {
        self.codimension > 0
    }
}

/// Strata `X_k \ X_{k-1}` for every nonempty level, singular ones first
/// (by increasing dimension), then the regular stratum `X \ X_{a-2}`.
pub fn strata(x: &FilteredComplex) -> Vec<StratumInfo> {
    let a = x.dim();
    let k = &x.complex;
    let mut out = Vec::new();
    let empty = BTreeSet::new();
    let mut levels: Vec<(usize, &BTreeSet<Vertex>, &BTreeSet<Vertex>)> = Vec::new();
    for level in 0..x.skeleta.len() {
        let lower = if level == 0 {
            &empty
        } else {
            &x.skeleta[level - 1]
        };
        levels.push((level, &x.skeleta[level], lower));
    }
    let all: BTreeSet<Vertex> = k.vertices().into_iter().collect();
    let top_singular = x.skeleta.last().unwrap_or(&empty);
    levels.push((a, &all, top_singular));

    for (level, upper, lower) in levels {
        let members: Vec<Simplex> = k
            .all_simplices()
            .filter(|s| {
                s.count_in(upper) == s.vertices().len() && s.count_in(lower) < s.vertices().len()
            })
            .cloned()
            .collect();
        if members.is_empty() {
            continue;
        }
        let components = split_components(&members)
            .into_iter()
            .map(|simplices| {
                let representative = simplices.iter().filter(|s| s.dim() == level).min().cloned();
                StratumComponent {
                    simplices,
                    representative,
                }
            })
            .collect();
        out.push(StratumInfo {
            index: level,
            dimension: level,
            codimension: a - level,
            components,
        });
    }
    out
}

/// Components under the face relation; adjacent codimension-one pairs suffice
/// because every intermediate face of two members is itself a member.
fn split_components(members: &[Simplex]) -> Vec<Vec<Simplex>> {
    let pos: BTreeMap<&Simplex, usize> = members.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut parent: Vec<usize> = (0..members.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, s) in members.iter().enumerate() {
        for f in s.boundary_faces() {
            if let Some(&j) = pos.get(&f) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Simplex>> = BTreeMap::new();
    for (i, s) in members.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(s.clone());
    }
    let mut out: Vec<Vec<Simplex>> = groups.into_values().collect();
    for g in out.iter_mut() {
        g.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
    }
    out.sort();
    out
}

/// Link of a singular stratum component with its induced filtration
/// `L_j = L ∩ X_{k+1+j}`.
pub fn stratum_link(
    x: &FilteredComplex,
    stratum: &StratumInfo,
    component: usize,
) -> Result<FilteredComplex, FiltrationError> {
    let comp = stratum
        .components
        .get(component)
        .ok_or(FiltrationError::NoRepresentative {
            dim: stratum.dimension,
            component,
        })?;
    let sigma = comp
        .representative
        .as_ref()
        .ok_or(FiltrationError::NoRepresentative {
            dim: stratum.dimension,
            component,
        })?;
    simplex_link_filtered(x, sigma)
}

/// Link of a simplex lying in the stratum of dimension `dim σ`, filtered by
/// `L_j = L ∩ X_{dim σ + 1 + j}`.
pub fn simplex_link_filtered(
    x: &FilteredComplex,
    sigma: &Simplex,
) -> Result<FilteredComplex, FiltrationError> {
    let l = complex::link(&x.complex, sigma)?;
    let k = sigma.dim();
    let lverts: BTreeSet<Vertex> = l.vertices().into_iter().collect();
    let ldim = l.dim();
    let specs: Vec<SkeletonSpec> = (0..ldim.saturating_sub(1))
        .filter_map(|j| {
            let level = k + 1 + j;
            let set = x.skeleta.get(level)?;
            let verts: Vec<Vertex> = set.intersection(&lverts).copied().collect();
            (!verts.is_empty()).then_some(SkeletonSpec {
                dim: j,
                vertices: verts,
            })
        })
        .collect();
    build_filtration(&l, &dedup_specs(specs))
}

fn dedup_specs(specs: Vec<SkeletonSpec>) -> Vec<SkeletonSpec> {
    let mut out: Vec<SkeletonSpec> = Vec::new();
    for s in specs {
        if out.last().map(|l| l.vertices == s.vertices) != Some(true) {
            out.push(s);
        }
    }
    out
}

/// Suspension with both apexes in `X_0` and `X'_{k+1} = Σ X_k`.
pub fn suspend_filtered(x: &FilteredComplex) -> Result<FilteredComplex, FiltrationError> {
    let (s, apexes) = complex::suspension(&x.complex);
    let apex_set: BTreeSet<Vertex> = apexes.into_iter().collect();
    lift_filtration(x, &s, &apex_set)
}

/// Cone with the apex in `X_0` and `X'_{k+1} = c X_k`.
pub fn cone_filtered(x: &FilteredComplex) -> Result<FilteredComplex, FiltrationError> {
    let (c, apex) = complex::cone(&x.complex);
    lift_filtration(x, &c, &BTreeSet::from([apex]))
}

fn lift_filtration(
    x: &FilteredComplex,
    target: &SimplicialComplex,
    apexes: &BTreeSet<Vertex>,
) -> Result<FilteredComplex, FiltrationError> {
    let mut specs = vec![SkeletonSpec {
        dim: 0,
        vertices: apexes.iter().copied().collect(),
    }];
    for (k, set) in x.skeleta.iter().enumerate() {
        let mut v: BTreeSet<Vertex> = set.clone();
        v.extend(apexes);
        specs.push(SkeletonSpec {
            dim: k + 1,
            vertices: v.into_iter().collect(),
        });
    }
    build_filtration(target, &dedup_specs(specs))
}

/// Barycentric subdivision with the induced filtration: a barycenter lies
/// in `X'_k` iff its simplex lies in `X_k`.
pub fn subdivide_filtered(
    x: &FilteredComplex,
) -> Result<(FilteredComplex, complex::Subdivision), FiltrationError> {
    let sd = complex::barycentric_subdivision(&x.complex);
    let specs: Vec<SkeletonSpec> = x
        .skeleta
        .iter()
        .enumerate()
        .filter(|(_, set)| !set.is_empty())
        .map(|(k, set)| SkeletonSpec {
            dim: k,
            vertices: sd
                .origin
                .iter()
                .enumerate()
                .filter(|(_, s)| s.count_in(set) == s.vertices().len())
                .map(|(v, _)| v as Vertex)
                .collect(),
        })
        .collect();
    let f = build_filtration(&sd.complex, &dedup_specs(specs))?;
    Ok((f, sd))
}
