//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ihf2::catalog::{catalog_space, shapes, CATALOG_NAMES};
use ihf2::characteristic::{bordism_shadow_report, sw_homology_classes, top_sw_number};
use ihf2::complex::{validate_pseudomanifold, PseudomanifoldKind, Simplex};
use ihf2::homology::{duality_check, ih, omega_rank, simplicial_homology, witt_check};
use ihf2::linalg::{BitVec, MatrixF2};
use ihf2::stratified::{
    allowable_simplices, ic_basis, subdivide_filtered, trivial_filtration, FilteredComplex,
    Perversity, PerversityKind,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Check {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn space(name: &str) -> FilteredComplex {
    catalog_space(name).expect("catalog name")
}

fn ranks(x: &FilteredComplex, kind: PerversityKind) -> Vec<usize> {
    ih(x, &Perversity::builtin(kind, x.dim()))
        .expect("ih")
        .ranks
}

fn pseudomanifold_validation() -> Check {
    let start = Instant::now();
    let closed = [
        "circle",
        "sphere2",
        "torus7",
        "rp2_6",
        "klein",
        "susp_torus",
        "susp_sphere2",
        "susp_rp2",
    ];
    for name in closed {
        let kind = validate_pseudomanifold(space(name).complex()).kind;
        ensure(kind == PseudomanifoldKind::Closed, || {
            format!("{name}: {kind}")
        })?;
    }
    let kind = validate_pseudomanifold(space("disk_cone").complex()).kind;
    ensure(kind == PseudomanifoldKind::WithBoundary, || {
        format!("disk_cone: {kind}")
    })?;
    within(start, Duration::from_secs(1))
}

fn ordinary_homology() -> Check {
    let start = Instant::now();
    let cases: [(&str, &[usize]); 4] = [
        ("torus7", &[1, 2, 1]),
        ("rp2_6", &[1, 1, 1]),
        ("klein", &[1, 2, 1]),
        ("sphere2", &[1, 0, 1]),
    ];
    for (name, want) in cases {
        let got = simplicial_homology(space(name).complex()).ranks;
        ensure(got == want, || format!("{name}: {got:?} != {want:?}"))?;
    }
    within(start, Duration::from_secs(1))
}

/// Brute-force allowability straight from the inequality, using only the
/// skeleton vertex sets.
fn allowable_by_inequality(x: &FilteredComplex, p: &Perversity, sigma: &Simplex) -> bool {
    let a = x.dim() as i64;
    let i = sigma.dim() as i64;
    (2..=a).all(|c| {
        let verts = x.skeleton_vertices((a - c) as usize);
        let meet = sigma
            .vertices()
            .iter()
            .filter(|v| verts.contains(v))
            .count() as i64;
        meet == 0 || meet - 1 <= i - c + p.at(c as usize).unwrap()
    })
}

fn allowability_core() -> Check {
    let x = space("disk_cone");
    let k = x.complex();
    let zero = Perversity::zero(2);
    let edges = allowable_simplices(&x, &zero, 1).map_err(|e| e.to_string())?;
    let rim: Vec<Simplex> = k
        .simplices(1)
        .iter()
        .filter(|e| !e.contains_vertex(shapes::DISK_CONE_APEX))
        .cloned()
        .collect();
    ensure(edges == rim && rim.len() == 3, || {
        format!("allowable edges {edges:?}")
    })?;

    // Every 2-chain, enumerated: keep those with allowable support and boundary.
    let n2 = k.count(2);
    let mut ic2 = Vec::new();
    for mask in 1u32..(1 << n2) {
        let chain = BitVec::from_indices(n2, (0..n2).filter(|j| mask >> j & 1 == 1)).unwrap();
        let ok_support = k
            .support(2, &chain)
            .iter()
            .all(|s| allowable_by_inequality(&x, &zero, s));
        let bd = k.chain_boundary(2, &chain);
        let ok_boundary = k
            .support(1, &bd)
            .iter()
            .all(|s| allowable_by_inequality(&x, &zero, s));
        if ok_support && ok_boundary {
            ic2.push(chain);
        }
    }
    ensure(ic2 == vec![BitVec::ones_vector(n2)], || {
        format!("enumerated IC_2: {ic2:?}")
    })?;
    let basis = ic_basis(&x, &zero, 2).map_err(|e| e.to_string())?;
    ensure(basis == ic2, || format!("ic_basis: {basis:?}"))?;

    // The engine agrees with the inequality on every simplex of every
    // filtered catalog space, for each builtin perversity.
    for name in [
        "disk_cone",
        "pinched_torus",
        "susp_torus",
        "susp_sphere2",
        "susp_rp2",
    ] {
        let x = space(name);
        for kind in PerversityKind::ALL {
            let p = Perversity::builtin(kind, x.dim());
            for i in 0..=x.dim() {
                let got: BTreeSet<Simplex> = allowable_simplices(&x, &p, i)
                    .unwrap()
                    .into_iter()
                    .collect();
                let want: BTreeSet<Simplex> = x
                    .complex()
                    .simplices(i)
                    .iter()
                    .filter(|s| allowable_by_inequality(&x, &p, s))
                    .cloned()
                    .collect();
                ensure(got == want, || format!("{name} {} degree {i}", p.label()))?;
            }
        }
    }
    Ok(())
}

fn intersection_homology() -> Check {
    let start = Instant::now();
    let pt = ranks(&space("pinched_torus"), PerversityKind::LowerMiddle);
    ensure(pt == [1, 0, 1], || format!("pinched_torus m: {pt:?}"))?;
    let st = space("susp_torus");
    let m = ranks(&st, PerversityKind::LowerMiddle);
    ensure(m[1] == 2 && m[2] == 0, || format!("susp_torus m: {m:?}"))?;
    let n = ranks(&st, PerversityKind::UpperMiddle);
    ensure(n[1] == 0, || format!("susp_torus n: {n:?}"))?;
    within(start, Duration::from_secs(5))
}

fn witt_verifier() -> Check {
    for name in ["pinched_torus", "susp_sphere2"] {
        let r = witt_check(&space(name)).map_err(|e| e.to_string())?;
        ensure(r.is_witt, || format!("{name} reported not Witt"))?;
    }
    let r = witt_check(&space("pinched_torus")).unwrap();
    ensure(r.entries.is_empty(), || {
        "pinched_torus has odd-codimension entries".into()
    })?;
    for (name, rank) in [("susp_torus", 2), ("susp_rp2", 1)] {
        let r = witt_check(&space(name)).map_err(|e| e.to_string())?;
        ensure(!r.is_witt, || format!("{name} reported Witt"))?;
        ensure(
            !r.failures.is_empty()
                && r.failures
                    .iter()
                    .all(|f| f.link_rank == rank && f.degree == 1),
            || format!("{name} failures {:?}", r.failures),
        )?;
    }
    Ok(())
}

fn duality_suite() -> Check {
    for name in CATALOG_NAMES {
        let x = space(name);
        let closed = validate_pseudomanifold(x.complex()).kind == PseudomanifoldKind::Closed;
        let witt = witt_check(&x).map_err(|e| e.to_string())?.is_witt;
        if witt && closed {
            let d = duality_check(&x).map_err(|e| e.to_string())?;
            ensure(d.pass, || format!("{name}: {d:?}"))?;
        }
        if witt {
            let (m, n) = (
                ranks(&x, PerversityKind::LowerMiddle),
                ranks(&x, PerversityKind::UpperMiddle),
            );
            ensure(m == n, || format!("{name}: m {m:?} n {n:?}"))?;
        }
    }
    let d = duality_check(&space("susp_torus")).map_err(|e| e.to_string())?;
    ensure(!d.pass && !d.symmetric && !d.middle_agreement, || {
        format!("susp_torus: {d:?}")
    })?;
    ensure(
        d.duality_pairs[1] == (2, 0) && d.duality_pairs[2] == (0, 2),
        || format!("susp_torus pairs {:?}", d.duality_pairs),
    )
}

fn subdivision_invariance() -> Check {
    let start = Instant::now();
    for name in CATALOG_NAMES {
        let x = space(name);
        let (sd, _) = subdivide_filtered(&x).map_err(|e| e.to_string())?;
        for kind in PerversityKind::ALL {
            let (before, after) = (ranks(&x, kind), ranks(&sd, kind));
            ensure(before == after, || {
                format!("{name} {}: {before:?} vs {after:?}", kind.symbol())
            })?;
        }
    }
    within(start, Duration::from_secs(60))
}

fn omega_factorization() -> Check {
    let x = space("pinched_torus");
    let m = Perversity::lower_middle(2);
    let o1 = omega_rank(&x, &m, 1).map_err(|e| e.to_string())?.as_tuple();
    ensure(o1 == (0, 1, 0), || format!("degree 1: {o1:?}"))?;
    let o2 = omega_rank(&x, &m, 2).map_err(|e| e.to_string())?.as_tuple();
    ensure(o2 == (1, 1, 1), || format!("degree 2: {o2:?}"))?;
    for k in [
        shapes::sphere2(),
        shapes::torus7(),
        shapes::rp2_6(),
        shapes::klein(),
    ] {
        let t = trivial_filtration(&k).unwrap();
        let h = simplicial_homology(&k).ranks;
        for kind in PerversityKind::ALL {
            let p = Perversity::builtin(kind, 2);
            for (i, &r) in h.iter().enumerate() {
                let o = omega_rank(&t, &p, i).unwrap().as_tuple();
                ensure(o == (r, r, r), || {
                    format!("trivial {kind:?} degree {i}: {o:?}")
                })?;
            }
        }
    }
    Ok(())
}

fn bordism_shadow() -> Check {
    let rp2 = shapes::rp2_6();
    let t2 = shapes::torus7();
    ensure(top_sw_number(&rp2).unwrap() == 1, || {
        "top number of rp2 is not 1".into()
    })?;
    ensure(bordism_shadow_report(&rp2).unwrap().obstructed, || {
        "rp2 not obstructed".into()
    })?;
    ensure(top_sw_number(&t2).unwrap() == 0, || {
        "top number of torus is not 0".into()
    })?;
    let r = bordism_shadow_report(&t2).unwrap();
    ensure(!r.obstructed, || "torus obstructed".into())?;
    // The top-degree class is the fundamental class, nonzero in every closed
    // manifold; it is carried by the top number rather than by vanishing.
    ensure(r.class_vanishing[..2].iter().all(|&v| v), || {
        format!("torus classes {:?}", r.class_vanishing)
    })?;
    let w1 = sw_homology_classes(&rp2).classes[1].clone();
    ensure(w1.is_cycle && !w1.is_boundary, || format!("w1(rp2) {w1:?}"))?;
    let w1 = sw_homology_classes(&t2).classes[1].clone();
    ensure(w1.is_cycle && w1.is_boundary, || {
        format!("w1(torus) {w1:?}")
    })
}

/// One pass over the random matrices; returns a digest of every rank and
/// nullspace for the determinism check.
fn kernel_pass(seed: u64, count: usize) -> Result<Vec<(usize, Vec<BitVec>)>, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut digest = Vec::with_capacity(count);
    for n in 0..count {
        let rows = rng.gen_range(0..=200);
        let cols = rng.gen_range(0..=200);
        let density: f64 = rng.gen_range(0.02..0.6);
        let mut m = MatrixF2::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if rng.gen_bool(density) {
                    m.set(r, c, true);
                }
            }
        }
        let rank = m.rank();
        let null = m.nullspace_basis();
        ensure(rank + null.len() == cols, || {
            format!("matrix {n}: rank-nullity")
        })?;
        for v in &null {
            ensure(m.mul_vec(v).unwrap().is_zero(), || {
                format!("matrix {n}: Mv != 0")
            })?;
        }
        let independent = MatrixF2::from_rows(cols, null.clone()).unwrap().rank();
        ensure(independent == null.len(), || {
            format!("matrix {n}: dependent kernel basis")
        })?;
        ensure(m.transpose().rank() == rank, || {
            format!("matrix {n}: row rank != column rank")
        })?;
        digest.push((rank, null));
    }
    Ok(digest)
}

fn linear_algebra_kernel() -> Check {
    let first = kernel_pass(0x1f2, 500)?;
    let second = kernel_pass(0x1f2, 500)?;
    ensure(first == second, || "outputs differ across runs".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("pseudomanifold validation", pseudomanifold_validation),
        ("ordinary homology over GF(2)", ordinary_homology),
        ("allowability core", allowability_core),
        ("intersection homology", intersection_homology),
        ("Witt verifier", witt_verifier),
        ("duality property suite", duality_suite),
        ("subdivision invariance", subdivision_invariance),
        ("omega-map factorization", omega_factorization),
        ("bordism shadow", bordism_shadow),
        ("linear-algebra kernel properties", linear_algebra_kernel),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("PASS {:>2} {name} ({:.2?})", n + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", n + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
