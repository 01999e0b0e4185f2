//! Command dispatch for the `ihf2` binary. [`run`] takes the argument list
//! and returns the exit code and the text for stdout and stderr, so tests
//! can drive it without spawning a process.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use ihf2::catalog::{catalog, catalog_space, CATALOG_NAMES};
use ihf2::characteristic::{bordism_shadow_report, sw_homology_classes, top_sw_number};
use ihf2::complex::{
    barycentric_subdivision, validate_pseudomanifold, PseudomanifoldKind, SimplicialComplex,
};
use ihf2::homology::{duality_check, ih, omega_rank, simplicial_homology, witt_check};
use ihf2::spacefile::{parse_space_file, ParseMode, SpaceFile};
use ihf2::stratified::{strata, subdivide_filtered, FilteredComplex, Perversity};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ihf2",
    version,
    about = "Intersection homology over GF(2) for filtered simplicial pseudomanifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Catalog name or path to a space file.
    #[arg(long, global = true, value_name = "NAME|PATH")]
    space: Option<String>,

    /// 0, t, m, n, or a comma list of values for codimension 2, 3, ...
    #[arg(long, global = true, value_name = "SPEC")]
    perversity: Option<String>,

    /// Report only this degree.
    #[arg(long, global = true, value_name = "I")]
    degree: Option<usize>,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Apply this many barycentric subdivisions first.
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    subdivide: usize,

    /// With `witt`: exit 1 if the space is not Witt.
    #[arg(long, global = true)]
    expect_witt: bool,

    /// Accept unknown fields and unsorted facets in space files, with warnings.
    #[arg(long, global = true)]
    lenient: bool,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Pseudomanifold and filtration report.
    Validate,
    /// Ordinary homology ranks over GF(2).
    Homology,
    /// Intersection homology ranks and the rank of IH -> H.
    Ih,
    /// Link condition on odd-codimension strata.
    Witt,
    /// Rank symmetry and middle-perversity agreement.
    Duality,
    /// Stiefel-Whitney homology classes and the top number.
    Sw,
    /// Emit the subdivided space file (once unless --subdivide is given).
    Subdivide,
    /// List catalog names, or emit one with --space.
    Catalog,
    /// Check every catalog entry against its documented values.
    Selftest,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self::with_code(EXIT_OK, stdout)
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(message: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

struct Loaded {
    name: String,
    complex: SimplicialComplex,
    filtration: Option<FilteredComplex>,
    warnings: Vec<String>,
}

impl Loaded {
    fn filtered(&self) -> Result<&FilteredComplex, Outcome> {
        self.filtration.as_ref().ok_or_else(|| {
            Outcome::input_error(format!(
                "{}: no filtration (the complex is not pure)",
                self.name
            ))
        })
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let mut out = match dispatch(&cli) {
        Ok(o) | Err(o) => o,
    };
    if out.code != EXIT_INPUT && !out.stdout.ends_with('\n') {
        out.stdout.push('\n');
    }
    out
}

fn dispatch(cli: &Cli) -> Result<Outcome, Outcome> {
    // Perversity syntax is checked before anything else is loaded.
    if let Some(spec) = &cli.perversity {
        Perversity::parse(spec, 2)
            .map_err(|e| Outcome::input_error(format!("--perversity: {e}")))?;
    }
    match cli.command {
        Command::Catalog => return cmd_catalog(cli),
        Command::Selftest => return Ok(cmd_selftest(cli)),
        _ => {}
    }
    let loaded = load(cli)?;
    let mut out = match cli.command {
        Command::Validate => cmd_validate(cli, &loaded),
        Command::Homology => cmd_homology(cli, &loaded),
        Command::Ih => cmd_ih(cli, &loaded),
        Command::Witt => cmd_witt(cli, &loaded),
        Command::Duality => cmd_duality(cli, &loaded),
        Command::Sw => cmd_sw(cli, &loaded),
        Command::Subdivide => cmd_subdivide(cli, &loaded),
        Command::Catalog | Command::Selftest => unreachable!("handled above"),
    }?;
    for w in &loaded.warnings {
        let _ = writeln!(out.stderr, "warning: {w}");
    }
    Ok(out)
}

fn load(cli: &Cli) -> Result<Loaded, Outcome> {
    let spec = cli.space.as_deref().ok_or_else(|| {
        Outcome::input_error("--space is required (a catalog name or a file path)")
    })?;
    let mut loaded = if CATALOG_NAMES.contains(&spec) {
        let x = catalog_space(spec).expect("listed name");
        Loaded {
            name: spec.to_string(),
            complex: x.complex().clone(),
            filtration: Some(x),
            warnings: vec![],
        }
    } else {
        let path = Path::new(spec);
        if !path.exists() {
            return Err(Outcome::input_error(format!(
                "`{spec}` is neither a file nor a catalog name (available: {})",
                CATALOG_NAMES.join(", ")
            )));
        }
        let bytes =
            std::fs::read(path).map_err(|e| Outcome::input_error(format!("{spec}: {e}")))?;
        let mode = if cli.lenient {
            ParseMode::Lenient
        } else {
            ParseMode::Strict
        };
        let parsed = parse_space_file(&bytes, mode)
            .map_err(|e| Outcome::input_error(format!("{spec}: {e}")))?;
        Loaded {
            name: parsed.file.name,
            complex: parsed.complex,
            filtration: parsed.filtration,
            warnings: parsed.warnings,
        }
    };
    // `subdivide` applies its own count.
    let rounds = if matches!(cli.command, Command::Subdivide) {
        0
    } else {
        cli.subdivide
    };
    subdivide_loaded(&mut loaded, rounds)?;
    Ok(loaded)
}

fn subdivide_loaded(loaded: &mut Loaded, rounds: usize) -> Result<(), Outcome> {
    for _ in 0..rounds {
        match &loaded.filtration {
            Some(x) => {
                let (sd, _) = subdivide_filtered(x).map_err(Outcome::input_error)?;
                loaded.complex = sd.complex().clone();
                loaded.filtration = Some(sd);
            }
            None => loaded.complex = barycentric_subdivision(&loaded.complex).complex,
        }
    }
    Ok(())
}

fn perversity_for(cli: &Cli, dim: usize) -> Result<Perversity, Outcome> {
    let spec = cli.perversity.as_deref().unwrap_or("m");
    let p = Perversity::parse(spec, dim)
        .map_err(|e| Outcome::input_error(format!("--perversity: {e}")))?;
    p.ensure_covers(dim)
        .map_err(|e| Outcome::input_error(format!("--perversity: {e}")))?;
    Ok(p)
}

fn degrees(cli: &Cli, dim: usize) -> Result<Vec<usize>, Outcome> {
    match cli.degree {
        Some(d) if d > dim => Err(Outcome::input_error(format!(
            "--degree {d} is out of range for a {dim}-dimensional space"
        ))),
        Some(d) => Ok(vec![d]),
        None => Ok((0..=dim).collect()),
    }
}

fn render(cli: &Cli, value: Value, text: String) -> String {
    if cli.json {
        let mut s = serde_json::to_string_pretty(&value).expect("reports serialize");
        s.push('\n');
        s
    } else {
        text
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_validate(cli: &Cli, l: &Loaded) -> Result<Outcome, Outcome> {
    let report = validate_pseudomanifold(&l.complex);
    let mut text = String::new();
    let _ = writeln!(text, "space: {}", l.name);
    let _ = writeln!(text, "dimension: {}", report.dimension);
    let _ = writeln!(text, "f-vector: {}", join(l.complex.f_vector()));
    let _ = writeln!(
        text,
        "euler characteristic: {}",
        l.complex.euler_characteristic()
    );
    let _ = writeln!(text, "pure: {}", if report.is_pure { "yes" } else { "no" });
    let _ = writeln!(text, "kind: {}", report.kind);
    if !report.boundary_facets.is_empty() {
        let _ = writeln!(text, "boundary facets: {}", join(&report.boundary_facets));
    }
    if !report.offending_simplices.is_empty() {
        let _ = writeln!(
            text,
            "offending simplices: {}",
            join(&report.offending_simplices)
        );
    }
    let mut strata_json = Vec::new();
    if let Some(x) = &l.filtration {
        let specs = x.skeleton_specs();
        if specs.is_empty() {
            let _ = writeln!(text, "filtration: trivial");
        }
        for s in &specs {
            let _ = writeln!(text, "filtration: X_{} = {{{}}}", s.dim, join(&s.vertices));
        }
        for st in strata(x).iter().filter(|s| s.is_singular()) {
            let _ = writeln!(
                text,
                "stratum: dimension {} codimension {} components {}",
                st.dimension,
                st.codimension,
                st.components.len()
            );
            strata_json.push(json!({
                "dimension": st.dimension,
                "codimension": st.codimension,
                "components": st.components.len(),
            }));
        }
    }
    let value = json!({
        "space": l.name,
        "f_vector": l.complex.f_vector(),
        "euler": l.complex.euler_characteristic(),
        "pseudomanifold": report,
        "filtration": l.filtration.as_ref().map(|x| x.skeleton_specs()),
        "strata": strata_json,
    });
    let code = if report.kind == PseudomanifoldKind::NotPseudomanifold {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    };
    Ok(Outcome::with_code(code, render(cli, value, text)))
}

fn cmd_homology(cli: &Cli, l: &Loaded) -> Result<Outcome, Outcome> {
    let h = simplicial_homology(&l.complex);
    let ds = degrees(cli, l.complex.dim())?;
    let mut text = format!("space: {}\n", l.name);
    for &d in &ds {
        let _ = writeln!(text, "H_{d} = {}", h.rank(d));
    }
    let _ = writeln!(text, "euler characteristic: {}", h.euler_characteristic());
    let value = json!({
        "space": l.name,
        "degrees": ds,
        "ranks": ds.iter().map(|&d| h.rank(d)).collect::<Vec<_>>(),
        "euler": h.euler_characteristic(),
    });
    Ok(Outcome::ok(render(cli, value, text)))
}

fn cmd_ih(cli: &Cli, l: &Loaded) -> Result<Outcome, Outcome> {
    let x = l.filtered()?;
    let p = perversity_for(cli, x.dim())?;
    let ds = degrees(cli, x.dim())?;
    let mut text = format!("space: {}\nperversity: {}\n", l.name, p.label());
    let _ = writeln!(text, "degree  IH  H  IH->H");
    let mut rows = Vec::new();
    for &d in &ds {
        let o = omega_rank(x, &p, d).map_err(Outcome::input_error)?;
        let _ = writeln!(
            text,
            "{d:>6}  {:>2}  {:>1}  {:>5}",
            o.ih_rank, o.h_rank, o.map_rank
        );
        rows.push(json!({"degree": d, "ih": o.ih_rank, "h": o.h_rank, "omega": o.map_rank}));
    }
    let value = json!({"space": l.name, "perversity": p.label(), "degrees": rows});
    Ok(Outcome::ok(render(cli, value, text)))
}

fn cmd_witt(cli: &Cli, l: &Loaded) -> Result<Outcome, Outcome> {
    let x = l.filtered()?;
    let r = witt_check(x).map_err(Outcome::input_error)?;
    let mut text = format!("space: {}\n", l.name);
    if r.entries.is_empty() {
        let _ = writeln!(text, "no odd-codimension strata");
    }
    for e in &r.entries {
        let _ = writeln!(
            text,
            "stratum dim {} codim {} component {}: link of {} (f-vector {}), IH_{}^n = {}{}",
            e.stratum_dimension,
            e.codimension,
            e.component,
            e.link_of,
            join(&e.link_f_vector),
            e.degree,
            e.link_rank,
            if e.link_rank > 0 { "  FAIL" } else { "" }
        );
    }
    let _ = writeln!(text, "witt: {}", r.is_witt);
    let code = if cli.expect_witt && !r.is_witt {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    };
    let value = json!({"space": l.name, "report": r});
    Ok(Outcome::with_code(code, render(cli, value, text)))
}

fn cmd_duality(cli: &Cli, l: &Loaded) -> Result<Outcome, Outcome> {
    let x = l.filtered()?;
    let d = duality_check(x).map_err(Outcome::input_error)?;
    let mut text = format!("space: {}\n", l.name);
    let _ = writeln!(text, "IH^m: {}", join(&d.lower_middle));
    let _ = writeln!(text, "IH^n: {}", join(&d.upper_middle));
    for (i, (a, b)) in d.duality_pairs.iter().enumerate() {
        let mark = if a == b { "" } else { "  mismatch" };
        let _ = writeln!(text, "IH_{i}^m = {a}, IH_{}^m = {b}{mark}", d.dimension - i);
    }
    let _ = writeln!(text, "symmetric: {}", d.symmetric);
    let _ = writeln!(text, "middle agreement: {}", d.middle_agreement);
    let _ = writeln!(text, "duality: {}", if d.pass { "pass" } else { "fail" });
    let code = if d.pass { EXIT_OK } else { EXIT_CHECK_FAILED };
    let value = json!({"space": l.name, "report": d});
    Ok(Outcome::with_code(code, render(cli, value, text)))
}

fn cmd_sw(cli: &Cli, l: &Loaded) -> Result<Outcome, Outcome> {
    let shadow = bordism_shadow_report(&l.complex).map_err(Outcome::input_error)?;
    let set = sw_homology_classes(&l.complex);
    let a = l.complex.dim();
    let ds = degrees(cli, a)?;
    let mut text = format!("space: {}\n", l.name);
    let _ = writeln!(
        text,
        "subdivision f-vector: {}",
        join(set.subdivision.complex.f_vector())
    );
    for &d in &ds {
        let c = set.class(d);
        let status = match (c.is_cycle, c.is_boundary) {
            (false, _) => "not a cycle",
            (true, true) => "zero",
            (true, false) => "nonzero",
        };
        let _ = writeln!(
            text,
            "w_{} (degree {d}, {} simplices): {status}",
            a - d,
            c.simplex_count
        );
    }
    let _ = writeln!(text, "top number: {}", shadow.top_number);
    let verdict = if shadow.obstructed {
        "cannot bound"
    } else {
        "no obstruction found"
    };
    let _ = writeln!(text, "verdict: {verdict}");
    let classes: Vec<_> = ds.iter().map(|&d| set.class(d)).collect();
    let value = json!({"space": l.name, "classes": classes, "shadow": shadow});
    Ok(Outcome::ok(render(cli, value, text)))
}

fn cmd_subdivide(cli: &Cli, l: &Loaded) -> Result<Outcome, Outcome> {
    let mut l = Loaded {
        name: l.name.clone(),
        complex: l.complex.clone(),
        filtration: l.filtration.clone(),
        warnings: vec![],
    };
    subdivide_loaded(&mut l, cli.subdivide.max(1))?;
    let file = match &l.filtration {
        Some(x) => SpaceFile::from_filtered(&l.name, x),
        None => SpaceFile::from_parts(&l.name, &l.complex, vec![]),
    };
    Ok(Outcome::ok(file.to_json()))
}

fn cmd_catalog(cli: &Cli) -> Result<Outcome, Outcome> {
    match &cli.space {
        None if cli.json => Ok(Outcome::ok(render(
            cli,
            json!(CATALOG_NAMES),
            String::new(),
        ))),
        None => Ok(Outcome::ok(CATALOG_NAMES.join("\n") + "\n")),
        Some(name) => {
            let file = catalog(name).map_err(Outcome::input_error)?;
            Ok(Outcome::ok(file.to_json()))
        }
    }
}

/// Mismatches between an entry's documented values and the engine.
fn selftest_entry(name: &str) -> Vec<String> {
    let file = catalog(name).expect("listed name");
    let mut problems = Vec::new();
    let json = file.to_json();
    let parsed = match parse_space_file(json.as_bytes(), ParseMode::Strict) {
        Ok(p) => p,
        Err(e) => return vec![format!("emitted file does not parse: {e}")],
    };
    if parsed.file != file {
        problems.push("emit/parse round trip changed the file".to_string());
    }
    let Some(x) = parsed.filtration else {
        return vec!["parsed file has no filtration".to_string()];
    };
    let k = x.complex();
    let e = file.expected.unwrap_or_default();
    let mut check = |what: &str, want: String, got: String| {
        if want != got {
            problems.push(format!("{what}: expected {want}, got {got}"));
        }
    };
    if let Some(kind) = e.kind {
        check(
            "kind",
            kind.to_string(),
            validate_pseudomanifold(k).kind.to_string(),
        );
    }
    if let Some(chi) = e.euler {
        check(
            "euler",
            chi.to_string(),
            k.euler_characteristic().to_string(),
        );
    }
    if let Some(h) = &e.homology {
        check(
            "homology",
            format!("{h:?}"),
            format!("{:?}", simplicial_homology(k).ranks),
        );
    }
    for (spec, want) in &e.ih {
        let got = Perversity::parse(spec, x.dim())
            .map_err(|e| e.to_string())
            .and_then(|p| {
                ih(&x, &p)
                    .map(|r| format!("{:?}", r.ranks))
                    .map_err(|e| e.to_string())
            });
        check(
            &format!("ih {spec}"),
            format!("{want:?}"),
            got.unwrap_or_else(|e| e),
        );
    }
    match witt_check(&x) {
        Ok(r) => {
            if let Some(w) = e.witt {
                check("witt", w.to_string(), r.is_witt.to_string());
            }
            if let Some(ranks) = &e.witt_link_ranks {
                let got: Vec<usize> = r.entries.iter().map(|e| e.link_rank).collect();
                check("witt link ranks", format!("{ranks:?}"), format!("{got:?}"));
            }
        }
        Err(err) => check("witt", "a report".to_string(), err.to_string()),
    }
    if let Some(t) = e.top_sw {
        let got = top_sw_number(k)
            .map(|v| v.to_string())
            .unwrap_or_else(|e| e.to_string());
        check("top sw number", t.to_string(), got);
    }
    problems
}

fn cmd_selftest(cli: &Cli) -> Outcome {
    let mut text = String::new();
    let mut entries = Vec::new();
    let mut failed = 0;
    for name in CATALOG_NAMES {
        let problems = selftest_entry(name);
        if problems.is_empty() {
            let _ = writeln!(text, "ok    {name}");
        } else {
            failed += 1;
            let _ = writeln!(text, "FAIL  {name}");
            for p in &problems {
                let _ = writeln!(text, "      {p}");
            }
        }
        entries.push(json!({"name": name, "ok": problems.is_empty(), "problems": problems}));
    }
    let _ = writeln!(
        text,
        "{} of {} entries ok",
        CATALOG_NAMES.len() - failed,
        CATALOG_NAMES.len()
    );
    let value = json!({"entries": entries, "failed": failed});
    let code = if failed == 0 {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    Outcome::with_code(code, render(cli, value, text))
}
