//! Finite abstract simplicial complexes and the constructions used on them:
//! pseudomanifold validation, links, barycentric subdivision, cones and
//! suspensions.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{BitVec, MatrixF2};

pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("no facets given")]
    Empty,
    #[error("facet {index} is empty")]
    EmptyFacet { index: usize },
    #[error("facet {index} repeats vertex {vertex}")]
    RepeatedVertex { index: usize, vertex: Vertex },
    #[error("simplex {0} is not in the complex")]
    SimplexNotFound(Simplex),
}

/// A simplex as its strictly increasing vertex list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Sorts the vertices; rejects empty input and repeats.
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::EmptyFacet { index: 0 });
        }
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::RepeatedVertex {
                index: 0,
                vertex: w[0],
            });
        }
        Ok(Self(vertices))
    }

    fn from_sorted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self(vertices)
    }

    pub fn vertex(v: Vertex) -> Self {
        Self(vec![v])
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    pub fn is_disjoint_from(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains_vertex(*v))
    }

    /// Codimension-one faces, the `k`-th omitting the `k`-th vertex.
    pub fn boundary_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (0..if n > 1 { n } else { 0 }).map(move |k| {
            let mut f = self.0.clone();
            f.remove(k);
            Simplex(f)
        })
    }

    /// Every nonempty face, including the simplex itself.
    pub fn all_faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u64..1 << n)
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|&k| mask >> k & 1 == 1)
                        .map(|k| self.0[k])
                        .collect(),
                )
            })
            .collect()
    }

    /// The join `self ∪ other` of two disjoint simplices.
    pub fn join(&self, other: &Simplex) -> Simplex {
        let mut v: Vec<Vertex> = self.0.iter().chain(&other.0).copied().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    pub fn with_vertex(&self, v: Vertex) -> Simplex {
        self.join(&Simplex::vertex(v))
    }

    /// Number of vertices lying in `set`.
    pub fn count_in(&self, set: &BTreeSet<Vertex>) -> usize {
        self.0.iter().filter(|v| set.contains(v)).count()
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// A finite simplicial complex generated by its facets.
///
/// Simplices of each dimension are kept in lexicographic order; that order
/// fixes the coordinates of chain vectors and boundary matrices.
#[derive(Clone)]
pub struct SimplicialComplex {
    facets: Vec<Simplex>,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("f_vector", &self.f_vector())
            .field("facets", &self.facets)
            .finish()
    }
}

impl SimplicialComplex {
    /// Face closure of the given facets. Non-maximal facets are dropped.
    pub fn from_facets(facets: &[Vec<Vertex>]) -> Result<Self, ComplexError> {
        if facets.is_empty() {
            return Err(ComplexError::Empty);
        }
        let mut simplices = Vec::with_capacity(facets.len());
        for (index, f) in facets.iter().enumerate() {
            if f.is_empty() {
                return Err(ComplexError::EmptyFacet { index });
            }
            let s = Simplex::new(f.clone()).map_err(|e| match e {
                ComplexError::RepeatedVertex { vertex, .. } => {
                    ComplexError::RepeatedVertex { index, vertex }
                }
                other => other,
            })?;
            simplices.push(s);
        }
        Ok(Self::from_simplices(simplices))
    }

    /// The empty complex.
    pub fn empty() -> Self {
        Self {
            facets: Vec::new(),
            simplices: Vec::new(),
            index: Vec::new(),
        }
    }

    /// Closure of an arbitrary collection of simplices.
    pub fn from_simplices<I: IntoIterator<Item = Simplex>>(generators: I) -> Self {
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        let mut tops: BTreeSet<Simplex> = BTreeSet::new();
        for s in generators {
            tops.insert(s);
        }
        for s in &tops {
            for f in s.all_faces() {
                let d = f.dim();
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, BTreeSet::new);
                }
                by_dim[d].insert(f);
            }
        }
        let simplices: Vec<Vec<Simplex>> = by_dim
            .into_iter()
            .map(|set| set.into_iter().collect())
            .collect();
        let index: Vec<HashMap<Simplex, usize>> = simplices
            .iter()
            .map(|list| {
                list.iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, s)| (s, i))
                    .collect()
            })
            .collect();
        let mut k = Self {
            facets: Vec::new(),
            simplices,
            index,
        };
        k.facets = k.compute_facets();
        k
    }

    fn compute_facets(&self) -> Vec<Simplex> {
        let mut is_face = BTreeSet::new();
        for list in self.simplices.iter().skip(1) {
            for s in list {
                for f in s.boundary_faces() {
                    is_face.insert(f);
                }
            }
        }
        let mut facets: Vec<Simplex> = self
            .simplices
            .iter()
            .flatten()
            .filter(|s| !is_face.contains(*s))
            .cloned()
            .collect();
        facets.sort();
        facets
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Top dimension; 0 for the empty complex (check [`Self::is_empty`]).
    pub fn dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// The `i`-simplices in canonical order (empty slice above the top dimension).
    pub fn simplices(&self, i: usize) -> &[Simplex] {
        self.simplices.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, i: usize) -> usize {
        self.simplices(i).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.simplices(0).iter().map(|s| s.vertices()[0]).collect()
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.simplices(0).last().map(|s| s.vertices()[0])
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().flatten()
    }

    /// Boundary map from `i`-chains to `(i-1)`-chains: rows are
    /// `(i-1)`-simplices, columns `i`-simplices. `∂_0` is the `0 × n_0` zero map.
    pub fn boundary_matrix(&self, i: usize) -> MatrixF2 {
        let cols = self.count(i);
        if i == 0 {
            return MatrixF2::zeros(0, cols);
        }
        let rows = self.count(i - 1);
        let mut m = MatrixF2::zeros(rows, cols);
        for (j, s) in self.simplices(i).iter().enumerate() {
            for f in s.boundary_faces() {
                let r = self.index[i - 1][&f];
                m.set(r, j, true);
            }
        }
        m
    }

    /// Boundary of one `i`-simplex as an `(i-1)`-chain.
    pub fn simplex_boundary(&self, s: &Simplex) -> BitVec {
        let i = s.dim();
        if i == 0 {
            return BitVec::zeros(0);
        }
        let mut v = BitVec::zeros(self.count(i - 1));
        for f in s.boundary_faces() {
            v.flip(self.index[i - 1][&f]);
        }
        v
    }

    /// Boundary of an `i`-chain.
    pub fn chain_boundary(&self, i: usize, chain: &BitVec) -> BitVec {
        if i == 0 {
            return BitVec::zeros(0);
        }
        let mut out = BitVec::zeros(self.count(i - 1));
        for j in chain.ones() {
            out.xor_assign(&self.simplex_boundary(&self.simplices[i][j]));
        }
        out
    }

    /// The `i`-chain with the given simplices.
    pub fn chain_of<'a, I>(&self, i: usize, simplices: I) -> Result<BitVec, ComplexError>
    where
        I: IntoIterator<Item = &'a Simplex>,
    {
        let mut v = BitVec::zeros(self.count(i));
        for s in simplices {
            match self.index.get(i).and_then(|m| m.get(s)) {
                Some(&k) => v.flip(k),
                None => return Err(ComplexError::SimplexNotFound(s.clone())),
            }
        }
        Ok(v)
    }

    /// Support of an `i`-chain.
    pub fn support(&self, i: usize, chain: &BitVec) -> Vec<Simplex> {
        chain.ones().map(|k| self.simplices[i][k].clone()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(i, l)| {
                if i % 2 == 0 {
                    l.len() as i64
                } else {
                    -(l.len() as i64)
                }
            })
            .sum()
    }

    /// Number of `(i+1)`-simplices having each `i`-simplex as a face.
    pub fn cofacet_counts(&self, i: usize) -> Vec<usize> {
        let mut counts = vec![0; self.count(i)];
        for s in self.simplices(i + 1) {
            for f in s.boundary_faces() {
                counts[self.index[i][&f]] += 1;
            }
        }
        counts
    }

    /// Full subcomplex on a vertex set.
    pub fn full_subcomplex(&self, vertices: &BTreeSet<Vertex>) -> SimplicialComplex {
        let gens = self
            .facets
            .iter()
            .filter_map(|f| {
                let kept: Vec<Vertex> = f
                    .vertices()
                    .iter()
                    .copied()
                    .filter(|v| vertices.contains(v))
                    .collect();
                (!kept.is_empty()).then(|| Simplex::from_sorted(kept))
            })
            .collect::<Vec<_>>();
        SimplicialComplex::from_simplices(gens)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PseudomanifoldKind {
    Closed,
    WithBoundary,
    NotPseudomanifold,
}

impl fmt::Display for PseudomanifoldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Closed => "closed",
            Self::WithBoundary => "with_boundary",
            Self::NotPseudomanifold => "not_pseudomanifold",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PseudomanifoldReport {
    pub dimension: usize,
    pub is_pure: bool,
    pub kind: PseudomanifoldKind,
    /// Codimension-one simplices lying in exactly one top simplex.
    pub boundary_facets: Vec<Simplex>,
    /// Lower-dimensional facets (purity failures) and codimension-one
    /// simplices lying in three or more top simplices.
    pub offending_simplices: Vec<Simplex>,
}

/// Checks purity and the one-or-two cofacet condition on codimension-one
/// simplices. No connectivity condition is imposed.
pub fn validate_pseudomanifold(k: &SimplicialComplex) -> PseudomanifoldReport {
    let a = k.dim();
    if k.is_empty() {
        return PseudomanifoldReport {
            dimension: 0,
            is_pure: false,
            kind: PseudomanifoldKind::NotPseudomanifold,
            boundary_facets: vec![],
            offending_simplices: vec![],
        };
    }
    let mut offending: Vec<Simplex> = k.facets().iter().filter(|f| f.dim() < a).cloned().collect();
    let is_pure = offending.is_empty();
    let mut boundary_facets = Vec::new();
    if a > 0 {
        let counts = k.cofacet_counts(a - 1);
        for (s, &n) in k.simplices(a - 1).iter().zip(&counts) {
            match n {
                1 => boundary_facets.push(s.clone()),
                2 => {}
                // n == 0 only for non-maximal-dimension facets, already listed
                0 => {}
                _ => offending.push(s.clone()),
            }
        }
    }
    let kind = if !offending.is_empty() {
        PseudomanifoldKind::NotPseudomanifold
    } else if boundary_facets.is_empty() {
        PseudomanifoldKind::Closed
    } else {
        PseudomanifoldKind::WithBoundary
    };
    PseudomanifoldReport {
        dimension: a,
        is_pure,
        kind,
        boundary_facets,
        offending_simplices: offending,
    }
}

/// `{τ : τ ∩ σ = ∅, τ ∪ σ ∈ K}`.
pub fn link(k: &SimplicialComplex, sigma: &Simplex) -> Result<SimplicialComplex, ComplexError> {
    if !k.contains(sigma) {
        return Err(ComplexError::SimplexNotFound(sigma.clone()));
    }
    let gens = k
        .facets()
        .iter()
        .filter(|f| sigma.is_face_of(f))
        .filter_map(|f| {
            let rest: Vec<Vertex> = f
                .vertices()
                .iter()
                .copied()
                .filter(|v| !sigma.contains_vertex(*v))
                .collect();
            (!rest.is_empty()).then(|| Simplex::from_sorted(rest))
        });
    Ok(SimplicialComplex::from_simplices(gens.collect::<Vec<_>>()))
}

/// Closed star of a simplex: all facets containing it, with their faces.
pub fn star(k: &SimplicialComplex, sigma: &Simplex) -> Result<SimplicialComplex, ComplexError> {
    if !k.contains(sigma) {
        return Err(ComplexError::SimplexNotFound(sigma.clone()));
    }
    Ok(SimplicialComplex::from_simplices(
        k.facets()
            .iter()
            .filter(|f| sigma.is_face_of(f))
            .cloned()
            .collect::<Vec<_>>(),
    ))
}

/// First barycentric subdivision together with the simplex of the original
/// complex each new vertex stands for.
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    /// `origin[v]` is the simplex whose barycenter is vertex `v`.
    pub origin: Vec<Simplex>,
}

impl Subdivision {
    /// New vertex id of the barycenter of `s`.
    pub fn barycenter_of(&self, s: &Simplex) -> Option<Vertex> {
        self.origin
            .binary_search_by(|o| cmp_dim_lex(o, s))
            .ok()
            .map(|i| i as Vertex)
    }
}

fn cmp_dim_lex(a: &Simplex, b: &Simplex) -> std::cmp::Ordering {
    a.dim().cmp(&b.dim()).then_with(|| a.cmp(b))
}

/// Vertices of the subdivision are the simplices of `k`, numbered by
/// dimension then lexicographically; facets are maximal flags.
pub fn barycentric_subdivision(k: &SimplicialComplex) -> Subdivision {
    let origin: Vec<Simplex> = k.all_simplices().cloned().collect();
    let id: HashMap<&Simplex, Vertex> = origin
        .iter()
        .enumerate()
        .map(|(i, s)| (s, i as Vertex))
        .collect();
    let mut flags = Vec::new();
    for f in k.facets() {
        let mut perm: Vec<Vertex> = f.vertices().to_vec();
        for_each_permutation(&mut perm, &mut |p| {
            let mut flag: Vec<Vertex> = (1..=p.len())
                .map(|n| {
                    let mut face = p[..n].to_vec();
                    face.sort_unstable();
                    id[&Simplex::from_sorted(face)]
                })
                .collect();
            flag.sort_unstable();
            flags.push(Simplex::from_sorted(flag));
        });
    }
    Subdivision {
        complex: SimplicialComplex::from_simplices(flags),
        origin,
    }
}

fn for_each_permutation(items: &mut [Vertex], visit: &mut impl FnMut(&[Vertex])) {
    fn heap(n: usize, items: &mut [Vertex], visit: &mut impl FnMut(&[Vertex])) {
        if n <= 1 {
            visit(items);
            return;
        }
        for i in 0..n - 1 {
            heap(n - 1, items, visit);
            if n.is_multiple_of(2) {
                items.swap(i, n - 1);
            } else {
                items.swap(0, n - 1);
            }
        }
        heap(n - 1, items, visit);
    }
    let n = items.len();
    heap(n, items, visit);
}

/// Cone with a fresh apex (one more than the largest vertex id).
pub fn cone(k: &SimplicialComplex) -> (SimplicialComplex, Vertex) {
    let apex = k.max_vertex().map_or(0, |m| m + 1);
    let gens: Vec<Simplex> = k.facets().iter().map(|f| f.with_vertex(apex)).collect();
    let c = if gens.is_empty() {
        SimplicialComplex::from_simplices([Simplex::vertex(apex)])
    } else {
        SimplicialComplex::from_simplices(gens)
    };
    (c, apex)
}

/// Suspension with two fresh apexes, not joined to each other.
pub fn suspension(k: &SimplicialComplex) -> (SimplicialComplex, [Vertex; 2]) {
    let n = k.max_vertex().map_or(0, |m| m + 1);
    let apexes = [n, n + 1];
    let gens: Vec<Simplex> = apexes
        .iter()
        .flat_map(|&a| k.facets().iter().map(move |f| f.with_vertex(a)))
        .collect();
    let s = if gens.is_empty() {
        SimplicialComplex::from_simplices(apexes.map(Simplex::vertex))
    } else {
        SimplicialComplex::from_simplices(gens)
    };
    (s, apexes)
}

pub fn euler_characteristic(k: &SimplicialComplex) -> i64 {
    k.euler_characteristic()
}

/// Connected components of the 1-skeleton, as sorted vertex lists.
pub fn vertex_components(k: &SimplicialComplex) -> Vec<Vec<Vertex>> {
    let verts = k.vertices();
    let pos: BTreeMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in k.simplices(1) {
        let (a, b) = (pos[&e.vertices()[0]], pos[&e.vertices()[1]]);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut comps: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
    for (i, &v) in verts.iter().enumerate() {
        let r = find(&mut parent, i);
        comps.entry(r).or_default().push(v);
    }
    comps.into_values().collect()
}
