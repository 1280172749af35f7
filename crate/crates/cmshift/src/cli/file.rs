//! Algebra files: versioned JSON describing a quiver with relations, an
//! optional field, and optional expected invariants for self-testing.
//!
//! Vertex numbers in files are 1-based; everything internal is 0-based.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::algebra::BasedAlgebra;
use crate::error::Error;
use crate::exactlin::{FieldSpec, Scalar};
use crate::quiver::{build_based_algebra, Arrow, Quiver, RelationCombo, DEFAULT_NILPOTENCY_CAP};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileArrow {
    name: String,
    source: usize,
    target: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileTerm {
    coeff: String,
    path: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRoot {
    version: u32,
    name: String,
    #[serde(default)]
    field: Option<String>,
    vertices: usize,
    arrows: Vec<FileArrow>,
    relations: Vec<Vec<FileTerm>>,
    #[serde(default)]
    expected: Option<BTreeMap<String, serde_json::Value>>,
}

/// A parsed and validated algebra file, not yet committed to a field: the
/// relation coefficients are kept as source strings so the field can be
/// overridden from the command line or the environment.
#[derive(Debug)]
pub struct AlgebraFile {
    pub name: String,
    pub quiver: Quiver,
    /// relation terms as (coefficient literal, arrow names)
    pub relations: Vec<Vec<(String, Vec<String>)>>,
    /// field named inside the file, if any
    pub file_field: Option<String>,
    pub expected: BTreeMap<String, serde_json::Value>,
    /// sha-256 of the raw file bytes, lowercase hex
    pub digest: String,
}

/// Parse "q" (rationals) or "pP" (prime field) into a field spec.
pub fn parse_field(label: &str) -> Result<FieldSpec, Error> {
    if label == "q" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(rest) = label.strip_prefix('p') {
        let p: u64 = rest
            .parse()
            .map_err(|_| Error::BadField(format!("{label:?}: expected q or p<prime>")))?;
        return FieldSpec::prime(p);
    }
    Err(Error::BadField(format!("{label:?}: expected q or p<prime>")))
}

pub fn field_label(f: FieldSpec) -> String {
    match f {
        FieldSpec::Rationals => "q".into(),
        FieldSpec::Prime(p) => format!("p{p}"),
    }
}

pub fn parse_algebra_file(path: &Path) -> Result<AlgebraFile, Error> {
    let bytes = std::fs::read(path)?;
    let loc = |what: &str| format!("{}: {what}", path.display());
    let root: FileRoot = serde_json::from_slice(&bytes).map_err(|e| Error::Parse {
        location: format!("{}:{}:{}", path.display(), e.line(), e.column()),
        message: e.to_string(),
    })?;
    if root.version != 1 {
        return Err(Error::Parse {
            location: loc("version"),
            message: format!("unsupported version {}", root.version),
        });
    }
    let mut arrows = Vec::with_capacity(root.arrows.len());
    for (i, a) in root.arrows.iter().enumerate() {
        for (role, v) in [("source", a.source), ("target", a.target)] {
            if v == 0 || v > root.vertices {
                return Err(Error::Parse {
                    location: loc(&format!("arrows[{i}].{role}")),
                    message: format!("vertex {v} outside 1..={}", root.vertices),
                });
            }
        }
        arrows.push(Arrow {
            name: a.name.clone(),
            source: a.source - 1,
            target: a.target - 1,
        });
    }
    let quiver = Quiver {
        vertex_count: root.vertices,
        arrows,
    };
    quiver.validate()?;
    let relations = root
        .relations
        .iter()
        .map(|combo| {
            combo
                .iter()
                .map(|t| (t.coeff.clone(), t.path.clone()))
                .collect()
        })
        .collect();
    Ok(AlgebraFile {
        name: root.name,
        quiver,
        relations,
        file_field: root.field,
        expected: root.expected.unwrap_or_default(),
        digest: format!("{:x}", Sha256::digest(&bytes)),
    })
}

/// Field precedence: command line, then environment, then the file, then
/// F_101.
pub fn resolve_field(cli: Option<&str>, file: &AlgebraFile) -> Result<FieldSpec, Error> {
    if let Some(f) = cli {
        return parse_field(f);
    }
    if let Ok(f) = std::env::var("CMSHIFT_FIELD") {
        return parse_field(&f);
    }
    if let Some(f) = &file.file_field {
        return parse_field(f);
    }
    Ok(FieldSpec::Prime(101))
}

/// Commit the file to a field and build the bound quiver algebra.
pub fn build(file: &AlgebraFile, field: FieldSpec) -> Result<Arc<BasedAlgebra>, Error> {
    let mut combos = Vec::with_capacity(file.relations.len());
    for combo in &file.relations {
        let terms: Vec<(Scalar, Vec<String>)> = combo
            .iter()
            .map(|(c, path)| Ok((Scalar::parse(c, &field)?, path.clone())))
            .collect::<Result<_, Error>>()?;
        combos.push(RelationCombo::from_names(&file.quiver, &terms, field)?);
    }
    build_based_algebra(&file.quiver, &combos, field, DEFAULT_NILPOTENCY_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_tmp(body: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(body.as_bytes()).unwrap();
        f
    }

    #[test]
    fn parses_a_minimal_file() {
        let f = write_tmp(
            r#"{"version":1,"name":"a2","vertices":2,
                "arrows":[{"name":"a","source":1,"target":2}],"relations":[]}"#,
        );
        let af = parse_algebra_file(f.path()).unwrap();
        assert_eq!(af.name, "a2");
        assert_eq!(af.quiver.arrows[0].source, 0);
        assert_eq!(af.quiver.arrows[0].target, 1);
        let alg = build(&af, FieldSpec::Prime(101)).unwrap();
        assert_eq!(alg.dim(), 3);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_vertices() {
        let f = write_tmp(r#"{"version":1,"name":"x","vertices":1,"arrows":[],"relations":[],"bogus":0}"#);
        assert!(matches!(parse_algebra_file(f.path()), Err(Error::Parse { .. })));
        let f = write_tmp(
            r#"{"version":1,"name":"x","vertices":1,
                "arrows":[{"name":"a","source":1,"target":2}],"relations":[]}"#,
        );
        let err = parse_algebra_file(f.path()).unwrap_err();
        match err {
            Error::Parse { location, .. } => assert!(location.contains("arrows[0].target")),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn field_labels_round_trip() {
        assert_eq!(parse_field("q").unwrap(), FieldSpec::Rationals);
        assert_eq!(parse_field("p7").unwrap(), FieldSpec::Prime(7));
        assert!(parse_field("p6").is_err());
        assert!(parse_field("f7").is_err());
        assert_eq!(field_label(FieldSpec::Prime(101)), "p101");
    }
}
