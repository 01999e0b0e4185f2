//! The JSON space-file format.
//!
//! ```json
//! {"format": 1, "name": "circle", "dimension": 1,
//!  "facets": [[0,1],[0,2],[1,2]], "skeleta": []}
//! ```
//!
//! Facets are sorted ascending within and lexicographically across;
//! `skeleta` entries `{"dim": k, "vertices": [...]}` have strictly
//! increasing `dim ≤ dimension - 2`. An optional `expected` object carries
//! known invariants used by self-tests.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::complex::{
    validate_pseudomanifold, ComplexError, PseudomanifoldKind, SimplicialComplex, Vertex,
};
use crate::stratified::{build_filtration, FilteredComplex, FiltrationError, SkeletonSpec};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum SpaceFileError {
    #[error("input is not valid UTF-8")]
    Utf8,
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("{path}: unknown field (use --lenient to ignore)")]
    UnknownField { path: String },
    #[error("{path}: {source}")]
    Complex { path: String, source: ComplexError },
    #[error("skeleta: {0}")]
    Filtration(#[from] FiltrationError),
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> SpaceFileError {
    SpaceFileError::Schema {
        path: path.into(),
        message: message.into(),
    }
}

/// Known invariants attached to a space.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recipe: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<PseudomanifoldKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homology: Option<Vec<usize>>,
    /// Perversity label (`0`, `m`, `n`, `t` or a value list) → ranks.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ih: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witt: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witt_link_ranks: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top_sw: Option<u8>,
    /// How each value was obtained.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub basis: BTreeMap<String, String>,
}

fn default_format() -> u32 {
    FORMAT_VERSION
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceFile {
    #[serde(default = "default_format")]
    pub format: u32,
    pub name: String,
    pub dimension: usize,
    pub facets: Vec<Vec<Vertex>>,
    #[serde(default)]
    pub skeleta: Vec<SkeletonSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

impl SpaceFile {
    pub fn from_filtered(name: &str, x: &FilteredComplex) -> Self {
        Self::from_parts(name, x.complex(), x.skeleton_specs())
    }

    pub fn from_parts(name: &str, k: &SimplicialComplex, skeleta: Vec<SkeletonSpec>) -> Self {
        Self {
            format: FORMAT_VERSION,
            name: name.to_string(),
            dimension: k.dim(),
            facets: k.facets().iter().map(|f| f.vertices().to_vec()).collect(),
            skeleta,
            expected: None,
        }
    }

    /// Pretty JSON with a trailing newline. Field order is fixed, so the
    /// output is byte-stable.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("space files serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    #[default]
    Strict,
    Lenient,
}

#[derive(Debug, Clone)]
pub struct ParsedSpace {
    pub file: SpaceFile,
    pub complex: SimplicialComplex,
    /// Present when skeleta were given, or the complex is pure (trivial filtration).
    pub filtration: Option<FilteredComplex>,
    /// Problems tolerated in lenient mode.
    pub warnings: Vec<String>,
}

const TOP_FIELDS: &[&str] = &[
    "format",
    "name",
    "dimension",
    "facets",
    "skeleta",
    "expected",
];
const SKELETON_FIELDS: &[&str] = &["dim", "vertices"];
const EXPECTED_FIELDS: &[&str] = &[
    "recipe",
    "kind",
    "euler",
    "homology",
    "ih",
    "witt",
    "witt_link_ranks",
    "top_sw",
    "basis",
];

fn unknown_fields(root: &Value) -> Vec<String> {
    fn scan(obj: &Value, allowed: &[&str], prefix: &str, out: &mut Vec<String>) {
        if let Value::Object(map) = obj {
            for key in map.keys() {
                if !allowed.contains(&key.as_str()) {
                    out.push(if prefix.is_empty() {
                        key.clone()
                    } else {
                        format!("{prefix}.{key}")
                    });
                }
            }
        }
    }
    let mut out = Vec::new();
    scan(root, TOP_FIELDS, "", &mut out);
    if let Some(Value::Array(items)) = root.get("skeleta") {
        for (i, item) in items.iter().enumerate() {
            scan(item, SKELETON_FIELDS, &format!("skeleta[{i}]"), &mut out);
        }
    }
    if let Some(e) = root.get("expected") {
        scan(e, EXPECTED_FIELDS, "expected", &mut out);
    }
    out
}

/// Parses and validates a space file.
pub fn parse_space_file(bytes: &[u8], mode: ParseMode) -> Result<ParsedSpace, SpaceFileError> {
    let text = std::str::from_utf8(bytes).map_err(|_| SpaceFileError::Utf8)?;
    let value: Value = serde_json::from_str(text).map_err(|e| SpaceFileError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut warnings = Vec::new();
    for path in unknown_fields(&value) {
        match mode {
            ParseMode::Strict => return Err(SpaceFileError::UnknownField { path }),
            ParseMode::Lenient => warnings.push(format!("{path}: unknown field ignored")),
        }
    }
    let file: SpaceFile = serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        schema(
            if path == "." {
                "<root>".to_string()
            } else {
                path
            },
            e.into_inner().to_string(),
        )
    })?;
    if file.format != FORMAT_VERSION {
        return Err(schema(
            "format",
            format!(
                "unsupported format {} (expected {FORMAT_VERSION})",
                file.format
            ),
        ));
    }
    if file.facets.is_empty() {
        return Err(schema("facets", "at least one facet is required"));
    }
    for (i, f) in file.facets.iter().enumerate() {
        if f.is_empty() {
            return Err(SpaceFileError::Complex {
                path: format!("facets[{i}]"),
                source: ComplexError::EmptyFacet { index: i },
            });
        }
        if let Some(w) = f.windows(2).find(|w| w[0] == w[1]) {
            return Err(SpaceFileError::Complex {
                path: format!("facets[{i}]"),
                source: ComplexError::RepeatedVertex {
                    index: i,
                    vertex: w[0],
                },
            });
        }
        if !f.windows(2).all(|w| w[0] < w[1]) {
            let msg = format!("facets[{i}]: vertices are not sorted ascending");
            match mode {
                ParseMode::Strict => {
                    return Err(schema(
                        format!("facets[{i}]"),
                        "vertices are not sorted ascending",
                    ))
                }
                ParseMode::Lenient => warnings.push(msg),
            }
        }
    }
    if mode == ParseMode::Strict {
        if let Some(i) = file.facets.windows(2).position(|w| w[0] >= w[1]) {
            return Err(schema(
                format!("facets[{}]", i + 1),
                "facets are not sorted lexicographically (or repeat)",
            ));
        }
    }
    let complex = SimplicialComplex::from_facets(&file.facets).map_err(|e| {
        let index = match &e {
            ComplexError::EmptyFacet { index } | ComplexError::RepeatedVertex { index, .. } => {
                *index
            }
            _ => 0,
        };
        SpaceFileError::Complex {
            path: format!("facets[{index}]"),
            source: e,
        }
    })?;
    if complex.dim() != file.dimension {
        return Err(schema(
            "dimension",
            format!(
                "declared {} but the facets span dimension {}",
                file.dimension,
                complex.dim()
            ),
        ));
    }
    if let Some(i) = file.skeleta.windows(2).position(|w| w[0].dim >= w[1].dim) {
        return Err(schema(
            format!("skeleta[{}].dim", i + 1),
            "skeleton dimensions must increase strictly",
        ));
    }
    if let Some((i, s)) = file
        .skeleta
        .iter()
        .enumerate()
        .find(|(_, s)| s.dim + 2 > file.dimension)
    {
        return Err(schema(
            format!("skeleta[{i}].dim"),
            format!(
                "{} exceeds dimension - 2 = {}",
                s.dim,
                file.dimension as i64 - 2
            ),
        ));
    }
    let filtration = if !file.skeleta.is_empty() {
        Some(build_filtration(&complex, &file.skeleta)?)
    } else if validate_pseudomanifold(&complex).is_pure {
        Some(build_filtration(&complex, &[])?)
    } else {
        None
    };
    Ok(ParsedSpace {
        file,
        complex,
        filtration,
        warnings,
    })
}
