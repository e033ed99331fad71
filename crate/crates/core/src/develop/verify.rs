//! Independent check of a claimed development.

use thiserror::Error;

use super::Development;
use crate::permutoid::Permutoid;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DevelopmentError {
    #[error("expected {expected} maps, got {found}")]
    MapCount { expected: usize, found: usize },
    #[error("target size {target} is smaller than the source ground set ({ground_size})")]
    TargetTooSmall { target: usize, ground_size: usize },
    #[error("map {0} does not act on the target set")]
    WrongDegree(usize),
    #[error("the identity element is not sent to the identity of the target")]
    IdentityNotFull,
    #[error("map {p} does not extend its element at point {x}")]
    NotExtending { p: usize, x: usize },
    #[error("{r} extends {p}·{q} but the maps disagree at {y}")]
    CompositionBroken { p: usize, q: usize, r: usize, y: usize },
}

/// Checks every defining property of a development of `p`.
///
/// Composition witnesses are recomputed from the graphs here rather than taken from `p`, so
/// this check shares no derived data with the search.
pub fn verify_development(p: &Permutoid, d: &Development) -> Result<(), DevelopmentError> {
    if d.maps.len() != p.len() {
        return Err(DevelopmentError::MapCount { expected: p.len(), found: d.maps.len() });
    }
    if d.target_size < p.ground_size() {
        return Err(DevelopmentError::TargetTooSmall { target: d.target_size, ground_size: p.ground_size() });
    }
    if let Some(i) = d.maps.iter().position(|f| f.degree() != d.target_size) {
        return Err(DevelopmentError::WrongDegree(i));
    }
    if !d.maps[p.identity_index()].is_identity() {
        return Err(DevelopmentError::IdentityNotFull);
    }
    for (i, e) in p.elements().iter().enumerate() {
        if let Some((x, _)) = e.iter().find(|&(x, y)| d.maps[i].apply(x) != y) {
            return Err(DevelopmentError::NotExtending { p: i, x });
        }
    }
    let elems = p.elements();
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            let Some(ab) = a.compose(b).expect("common ground set") else { continue };
            for (k, c) in elems.iter().enumerate() {
                if !c.extends(&ab) {
                    continue;
                }
                let (fi, fj, fk) = (&d.maps[i], &d.maps[j], &d.maps[k]);
                if let Some(y) = (0..d.target_size).find(|&y| fi.apply(fj.apply(y)) != fk.apply(y)) {
                    return Err(DevelopmentError::CompositionBroken { p: i, q: j, r: k, y });
                }
            }
        }
    }
    Ok(())
}
