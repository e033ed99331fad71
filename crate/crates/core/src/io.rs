//! JSON file formats and canonical output.
//!
//! Output objects are built as `serde_json::Value`, whose maps keep keys sorted, and printed
//! pretty with a trailing newline so identical values always give identical bytes.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::develop::Development;
use crate::groups::{BackendTag, RealizedGroup, TableError};
use crate::partial::{GraphError, PartialPermutation, Perm};
use crate::permutoid::{Permutoid, ValidationError};
use crate::pseudogroup::Pseudogroup;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed input: {0}")]
    Json(#[from] serde_json::Error),
    #[error("element {index} ({name}): {source}")]
    Graph { index: usize, name: String, source: GraphError },
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("embedding {0:?} is not supported (only \"identity-prefix\")")]
    Embedding(String),
    #[error("no map given for element {0:?}")]
    MissingMap(String),
    #[error("map given for unknown element {0:?}")]
    UnknownElement(String),
    #[error("map for {0:?} is not a permutation of the target set")]
    NotAPermutation(String),
}

/// Errors from reading a file whose syntax is fine but whose content is rejected.
#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error(transparent)]
    Table(#[from] TableError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementFile {
    name: String,
    map: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PermutoidFile {
    ground_set_size: usize,
    #[serde(alias = "maximal_elements")]
    elements: Vec<ElementFile>,
}

/// Named partial permutations read from a permutoid-shaped file, before any validation beyond
/// each graph being a partial permutation.
#[derive(Debug, Clone)]
pub struct NamedMaps {
    pub ground_size: usize,
    pub names: Vec<String>,
    pub maps: Vec<PartialPermutation>,
}

/// Reads `{"ground_set_size": n, "elements": [{"name": .., "map": [[x, y], ..]}, ..]}`.
/// The key `maximal_elements` is accepted in place of `elements`.
pub fn parse_named_maps(text: &str) -> Result<NamedMaps, FormatError> {
    let file: PermutoidFile = serde_json::from_str(text)?;
    let mut names = Vec::with_capacity(file.elements.len());
    let mut maps = Vec::with_capacity(file.elements.len());
    for (index, e) in file.elements.into_iter().enumerate() {
        if names.contains(&e.name) {
            return Err(FormatError::DuplicateName(e.name));
        }
        let m = PartialPermutation::from_pairs(file.ground_set_size, &e.map)
            .map_err(|source| FormatError::Graph { index, name: e.name.clone(), source })?;
        names.push(e.name);
        maps.push(m);
    }
    Ok(NamedMaps { ground_size: file.ground_set_size, names, maps })
}

/// Reads and validates a permutoid. Graph-level defects are reported as validation errors.
pub fn parse_permutoid(text: &str) -> Result<Permutoid, LoadError> {
    let file: PermutoidFile = serde_json::from_str(text).map_err(FormatError::from)?;
    let graphs: Vec<Vec<(usize, usize)>> = file.elements.iter().map(|e| e.map.clone()).collect();
    let names: Vec<String> = file.elements.into_iter().map(|e| e.name).collect();
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(FormatError::DuplicateName(n.clone()).into());
        }
    }
    let p = crate::permutoid::validate_permutoid(file.ground_set_size, &graphs)?;
    Ok(p.renamed(names))
}

fn element_json(name: &str, m: &PartialPermutation) -> Value {
    json!({ "name": name, "map": m.pairs() })
}

pub fn permutoid_to_json(p: &Permutoid) -> Value {
    let elements: Vec<Value> =
        p.elements().iter().zip(p.names()).map(|(e, n)| element_json(n, e)).collect();
    json!({ "ground_set_size": p.ground_size(), "elements": elements })
}

/// Maximal elements are named `m0, m1, …` in the pseudogroup's sorted order.
pub fn pseudogroup_to_json(h: &Pseudogroup) -> Value {
    let elements: Vec<Value> = h
        .maximal_elements()
        .iter()
        .enumerate()
        .map(|(i, m)| element_json(&format!("m{i}"), m))
        .collect();
    json!({ "ground_set_size": h.ground_size(), "maximal_elements": elements })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DevelopmentFile {
    ground_size: usize,
    embedding: String,
    maps: BTreeMap<String, Vec<usize>>,
}

/// Reads `{"ground_size": m, "embedding": "identity-prefix", "maps": {name: [images]}}`, with
/// maps keyed by the element names of `p`.
pub fn parse_development(text: &str, p: &Permutoid) -> Result<Development, FormatError> {
    let file: DevelopmentFile = serde_json::from_str(text)?;
    if file.embedding != "identity-prefix" {
        return Err(FormatError::Embedding(file.embedding));
    }
    if let Some(name) = file.maps.keys().find(|n| p.index_of_name(n).is_none()) {
        return Err(FormatError::UnknownElement(name.clone()));
    }
    let mut maps = Vec::with_capacity(p.len());
    for name in p.names() {
        let images = file.maps.get(name).ok_or_else(|| FormatError::MissingMap(name.clone()))?;
        if images.len() != file.ground_size {
            return Err(FormatError::NotAPermutation(name.clone()));
        }
        maps.push(Perm::from_images(images.clone()).ok_or_else(|| FormatError::NotAPermutation(name.clone()))?);
    }
    Ok(Development { target_size: file.ground_size, maps })
}

pub fn development_to_json(p: &Permutoid, d: &Development) -> Value {
    let maps: serde_json::Map<String, Value> =
        p.names().iter().zip(&d.maps).map(|(n, f)| (n.clone(), json!(f.images()))).collect();
    json!({ "ground_size": d.target_size, "embedding": "identity-prefix", "maps": maps })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    order: usize,
    table: Vec<Vec<usize>>,
    generator_images: BTreeMap<String, usize>,
}

/// Reads `{"order": n, "table": [[..]], "generator_images": {name: element}}`. Generators are
/// ordered by name.
pub fn parse_table(text: &str) -> Result<RealizedGroup, LoadError> {
    let file: TableFile = serde_json::from_str(text).map_err(FormatError::from)?;
    if file.table.len() != file.order {
        return Err(TableError::NotSquare.into());
    }
    let (names, images): (Vec<String>, Vec<usize>) = file.generator_images.into_iter().unzip();
    Ok(RealizedGroup::from_table(file.table, names, images, BackendTag::ExplicitTable)?)
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const SWAP_PAIR: &str = r#"{"ground_set_size": 2, "elements": [
        {"name": "id", "map": [[0,0],[1,1]]},
        {"name": "p1", "map": [[0,1]]},
        {"name": "p2", "map": [[1,0]]}]}"#;

    #[test]
    fn permutoid_round_trip() {
        let p = parse_permutoid(SWAP_PAIR).unwrap();
        assert_eq!(p.names(), &["id", "p1", "p2"]);
        let text = to_canonical_string(&permutoid_to_json(&p));
        let q = parse_permutoid(&text).unwrap();
        assert_eq!(p, q);
        assert!(text.ends_with("}\n"));
        assert!(text.find("\"elements\"").unwrap() < text.find("\"ground_set_size\"").unwrap());
    }

    #[test]
    fn invalid_permutoids() {
        let bad = r#"{"ground_set_size": 2, "elements": [{"name": "id", "map": [[0,0],[1,1]]}, {"name": "x", "map": [[0,2]]}]}"#;
        assert!(matches!(parse_permutoid(bad), Err(LoadError::Invalid(ValidationError::PointOutOfRange { .. }))));
        assert!(matches!(parse_permutoid("{"), Err(LoadError::Format(FormatError::Json(_)))));
        let dup = r#"{"ground_set_size": 1, "elements": [{"name": "a", "map": [[0,0]]}, {"name": "a", "map": [[0,0]]}]}"#;
        assert!(matches!(parse_permutoid(dup), Err(LoadError::Format(FormatError::DuplicateName(_)))));
    }

    #[test]
    fn development_round_trip() {
        let p = parse_permutoid(SWAP_PAIR).unwrap();
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        let d = Development { target_size: 2, maps: vec![Perm::identity(2), swap.clone(), swap] };
        let text = to_canonical_string(&development_to_json(&p, &d));
        assert_eq!(parse_development(&text, &p).unwrap(), d);
        let missing = r#"{"ground_size": 2, "embedding": "identity-prefix", "maps": {"id": [0,1]}}"#;
        assert!(matches!(parse_development(missing, &p), Err(FormatError::MissingMap(_))));
        let bad = r#"{"ground_size": 2, "embedding": "identity-prefix", "maps": {"id": [0,0], "p1": [1,0], "p2": [1,0]}}"#;
        assert!(matches!(parse_development(bad, &p), Err(FormatError::NotAPermutation(_))));
    }

    #[test]
    fn explicit_table() {
        let text = r#"{"order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]], "generator_images": {"a": 1}}"#;
        let g = parse_table(text).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.backend(), BackendTag::ExplicitTable);
        let bad = r#"{"order": 2, "table": [[0,1],[1,1]], "generator_images": {"a": 1}}"#;
        assert!(matches!(parse_table(bad), Err(LoadError::Table(TableError::NotLatin(_)))));
    }
}
