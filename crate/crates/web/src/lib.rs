//! Browser bindings. Every export takes plain strings and numbers and
//! returns a JSON string; the page in `www/` renders it.
//!
//! `space` is either a catalog name or the text of a space file.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use ihf2::catalog::{catalog_space, CATALOG_NAMES};
use ihf2::characteristic::{bordism_shadow_report, sw_homology_classes};
use ihf2::complex::{validate_pseudomanifold, PseudomanifoldKind};
use ihf2::homology::{duality_check, omega_rank, witt_check};
use ihf2::spacefile::{parse_space_file, ParseMode};
use ihf2::stratified::{subdivide_filtered, FilteredComplex, Perversity};

const MAX_SUBDIVISIONS: u32 = 1;

fn load(space: &str, subdivisions: u32) -> Result<FilteredComplex, String> {
    if subdivisions > MAX_SUBDIVISIONS {
        return Err(format!(
            "at most {MAX_SUBDIVISIONS} subdivisions in the browser"
        ));
    }
    let mut x = if space.trim_start().starts_with('{') {
        parse_space_file(space.as_bytes(), ParseMode::Lenient)
            .map_err(|e| e.to_string())?
            .filtration
            .ok_or("the complex is not pure")?
    } else {
        catalog_space(space.trim()).map_err(|e| e.to_string())?
    };
    for _ in 0..subdivisions {
        x = subdivide_filtered(&x).map_err(|e| e.to_string())?.0;
    }
    Ok(x)
}

pub fn catalog_names_json() -> String {
    json!(CATALOG_NAMES).to_string()
}

pub fn ih_json(space: &str, perversity: &str, subdivisions: u32) -> Result<String, String> {
    let x = load(space, subdivisions)?;
    let p = Perversity::parse(perversity, x.dim()).map_err(|e| e.to_string())?;
    p.ensure_covers(x.dim()).map_err(|e| e.to_string())?;
    let rows = (0..=x.dim())
        .map(|i| {
            omega_rank(&x, &p, i)
                .map(|o| json!({"degree": i, "ih": o.ih_rank, "h": o.h_rank, "omega": o.map_rank}))
                .map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<Value>, String>>()?;
    Ok(json!({
        "perversity": p.label(),
        "f_vector": x.complex().f_vector(),
        "skeleta": x.skeleton_specs(),
        "degrees": rows,
    })
    .to_string())
}

pub fn checks_json(space: &str) -> Result<String, String> {
    let x = load(space, 0)?;
    let pm = validate_pseudomanifold(x.complex());
    let witt = witt_check(&x).map_err(|e| e.to_string())?;
    let duality = if pm.kind == PseudomanifoldKind::Closed {
        Some(duality_check(&x).map_err(|e| e.to_string())?)
    } else {
        None
    };
    Ok(json!({
        "kind": pm.kind,
        "euler": x.complex().euler_characteristic(),
        "witt": witt,
        "duality": duality,
    })
    .to_string())
}

pub fn sw_json(space: &str) -> Result<String, String> {
    let x = load(space, 0)?;
    let shadow = bordism_shadow_report(x.complex()).map_err(|e| e.to_string())?;
    let set = sw_homology_classes(x.complex());
    Ok(json!({
        "subdivision_f_vector": set.subdivision.complex.f_vector(),
        "classes": set.classes,
        "shadow": shadow,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn catalog_names() -> String {
    catalog_names_json()
}

/// IH, H and the rank of IH -> H in every degree.
#[wasm_bindgen]
pub fn intersection_homology(
    space: &str,
    perversity: &str,
    subdivisions: u32,
) -> Result<String, JsError> {
    ih_json(space, perversity, subdivisions).map_err(|e| JsError::new(&e))
}

/// Pseudomanifold kind, Witt report and (for closed spaces) the duality check.
#[wasm_bindgen]
pub fn stratified_checks(space: &str) -> Result<String, JsError> {
    checks_json(space).map_err(|e| JsError::new(&e))
}

/// Stiefel-Whitney homology classes and the top number.
#[wasm_bindgen]
pub fn stiefel_whitney(space: &str) -> Result<String, JsError> {
    sw_json(space).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn names() {
        assert_eq!(parse(&catalog_names_json()).as_array().unwrap().len(), 10);
    }

    #[test]
    fn ih_explorer() {
        let v = parse(&ih_json("susp_torus", "m", 0).unwrap());
        let ih: Vec<u64> = v["degrees"]
            .as_array()
            .unwrap()
            .iter()
            .map(|d| d["ih"].as_u64().unwrap())
            .collect();
        assert_eq!(ih, [1, 2, 0, 1]);
        let v = parse(&ih_json("pinched_torus", "m", 1).unwrap());
        assert_eq!(v["degrees"][1]["h"], 1);
        assert_eq!(v["degrees"][1]["ih"], 0);
        assert!(ih_json("susp_torus", "0,0,2", 0)
            .unwrap_err()
            .contains("codimension 4"));
        assert!(ih_json("nothing", "m", 0).is_err());
        assert!(ih_json("circle", "m", 2).is_err());
    }

    #[test]
    fn custom_space_text() {
        let src = r#"{"name":"c","dimension":1,"facets":[[0,1],[0,2],[1,2]]}"#;
        let v = parse(&ih_json(src, "0", 0).unwrap());
        assert_eq!(v["degrees"][1]["ih"], 1);
    }

    #[test]
    fn checks() {
        let v = parse(&checks_json("susp_torus").unwrap());
        assert_eq!(v["witt"]["is_witt"], false);
        assert_eq!(v["duality"]["pass"], false);
        let v = parse(&checks_json("disk_cone").unwrap());
        assert_eq!(v["kind"], "with_boundary");
        assert!(v["duality"].is_null());
    }

    #[test]
    fn stiefel_whitney_classes() {
        let v = parse(&sw_json("rp2_6").unwrap());
        assert_eq!(v["shadow"]["verdict"], "cannot_bound");
        assert_eq!(v["classes"][1]["is_boundary"], false);
        assert!(sw_json("disk_cone").is_err());
    }
}
