use std::path::PathBuf;
use std::sync::LazyLock;

use ihf2_cli::{run, Outcome, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_OK};

fn ihf2(args: &str) -> Outcome {
    run(std::iter::once("ihf2").chain(args.split_whitespace()))
}

static DIR: LazyLock<tempfile::TempDir> = LazyLock::new(|| tempfile::tempdir().unwrap());

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = DIR.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn ih_on_suspended_torus() {
    let out = ihf2("ih --space susp_torus --perversity m");
    assert_eq!(out.code, EXIT_OK);
    assert!(
        out.stdout.contains("     1   2  0      0\n"),
        "{}",
        out.stdout
    );

    let out = ihf2("ih --space susp_torus --perversity n --degree 1 --json");
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["degrees"][0]["ih"], 0);
}

#[test]
fn witt_exit_codes() {
    assert_eq!(ihf2("witt --space susp_sphere2").code, EXIT_OK);
    assert_eq!(
        ihf2("witt --space susp_sphere2 --expect-witt").code,
        EXIT_OK
    );
    assert_eq!(ihf2("witt --space susp_torus").code, EXIT_OK);
    let out = ihf2("witt --space susp_torus --expect-witt");
    assert_eq!(out.code, EXIT_CHECK_FAILED);
    assert!(out.stdout.contains("IH_1^n = 2"));
}

#[test]
fn bad_perversity_is_an_input_error() {
    let out = ihf2("ih --perversity 0,0,2");
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("codimension 4"), "{}", out.stderr);
    assert_eq!(ihf2("ih --space susp_torus --perversity 0").code, EXIT_OK);
    assert_eq!(ihf2("ih --space susp_torus --perversity 0,0").code, EXIT_OK);
    assert_eq!(ihf2("ih --space susp_torus --perversity 0,1").code, EXIT_OK);
}

#[test]
fn input_errors() {
    assert_eq!(ihf2("ih").code, EXIT_INPUT);
    assert_eq!(ihf2("homology --space nowhere").code, EXIT_INPUT);
    assert_eq!(ihf2("frobnicate").code, EXIT_INPUT);
    assert_eq!(ihf2("homology --space torus7 --degree 5").code, EXIT_INPUT);
    assert_eq!(ihf2("duality --space disk_cone").code, EXIT_INPUT);
    assert_eq!(ihf2("sw --space disk_cone").code, EXIT_INPUT);
    assert_eq!(ihf2("catalog --space moebius").code, EXIT_INPUT);
}

#[test]
fn duality_reports_asymmetry() {
    let out = ihf2("duality --space susp_torus");
    assert_eq!(out.code, EXIT_CHECK_FAILED);
    assert!(out.stdout.contains("IH_1^m = 2, IH_2^m = 0  mismatch"));
    assert_eq!(ihf2("duality --space susp_sphere2").code, EXIT_OK);
    assert_eq!(ihf2("duality --space pinched_torus").code, EXIT_OK);
}

#[test]
fn space_files_from_disk() {
    let circle = scratch(
        "circle.json",
        r#"{"name":"circle","dimension":1,"facets":[[0,1],[0,2],[1,2]],"skeleta":[]}"#,
    );
    let out = ihf2(&format!("homology --space {}", circle.display()));
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("H_1 = 1"));

    let bad = scratch(
        "bad.json",
        r#"{"name":"bad","dimension":2,"facets":[[0,0,1]]}"#,
    );
    let out = ihf2(&format!("validate --space {}", bad.display()));
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("facets[0]"), "{}", out.stderr);

    let extra = scratch(
        "extra.json",
        r#"{"name":"c","dimension":1,"facets":[[0,1],[0,2],[1,2]],"note":"hi"}"#,
    );
    assert_eq!(
        ihf2(&format!("validate --space {}", extra.display())).code,
        EXIT_INPUT
    );
    let out = ihf2(&format!("validate --space {} --lenient", extra.display()));
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stderr.contains("warning: note"));

    let bowtie = scratch(
        "bowtie.json",
        r#"{"name":"bowtie","dimension":2,"facets":[[0,1,2],[0,1,3],[0,1,4]]}"#,
    );
    assert_eq!(
        ihf2(&format!("validate --space {}", bowtie.display())).code,
        EXIT_CHECK_FAILED
    );
}

#[test]
fn catalog_emit_and_reload() {
    let out = ihf2("catalog");
    assert_eq!(out.stdout.lines().count(), 10);
    let json = ihf2("catalog --space susp_torus").stdout;
    let path = scratch("susp_torus.json", &json);
    let out = ihf2(&format!(
        "ih --space {} --perversity m --json",
        path.display()
    ));
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let ranks: Vec<u64> = v["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["ih"].as_u64().unwrap())
        .collect();
    assert_eq!(ranks, [1, 2, 0, 1]);
}

#[test]
fn subdivide_round_trip() {
    let json = ihf2("subdivide --space pinched_torus").stdout;
    let path = scratch("pinched_sd.json", &json);
    let out = ihf2(&format!("ih --space {} --perversity m", path.display()));
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(
        out.stdout.lines().skip(3).collect::<Vec<_>>(),
        ihf2("ih --space pinched_torus --perversity m")
            .stdout
            .lines()
            .skip(3)
            .collect::<Vec<_>>()
    );
    let out = ihf2("ih --space susp_rp2 --subdivide 1 --perversity n");
    assert!(out.stdout.contains("     2   1  1"), "{}", out.stdout);
}

#[test]
fn sw_report() {
    let out = ihf2("sw --space rp2_6");
    assert!(out.stdout.contains("w_1 (degree 1, 90 simplices): nonzero"));
    assert!(out.stdout.contains("verdict: cannot bound"));
    let out = ihf2("sw --space torus7");
    assert!(
        out.stdout.contains("w_1 (degree 1, 126 simplices): zero"),
        "{}",
        out.stdout
    );
    assert!(out.stdout.contains("verdict: no obstruction found"));
}

#[test]
fn selftest_passes() {
    let out = ihf2("selftest");
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.ends_with("10 of 10 entries ok\n"));
}

#[test]
fn reports_are_deterministic() {
    for cmd in [
        "validate --space susp_torus --json",
        "witt --space susp_rp2 --json",
        "sw --space klein",
        "catalog --space klein",
        "selftest --json",
    ] {
        assert_eq!(ihf2(cmd), ihf2(cmd), "{cmd}");
    }
}
