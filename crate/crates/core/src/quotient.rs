//! Enumeration of partition-induced quotient permutoids, one per isomorphism class.

use std::collections::{BTreeMap, HashMap};

use crate::canon::{canonical_form_with_cap, CanonicalKey, GroundSetTooLarge, DEFAULT_CANON_CAP};
use crate::morphism::Morphism;
use crate::partial::PartialPermutation;
use crate::permutoid::Permutoid;

#[derive(Debug, Clone, Copy)]
pub struct QuotientOptions {
    /// Drop quotients whose only element is the identity.
    pub nontrivial_only: bool,
    pub canon_cap: usize,
}

impl Default for QuotientOptions {
    fn default() -> Self {
        QuotientOptions { nontrivial_only: false, canon_cap: DEFAULT_CANON_CAP }
    }
}

/// A representative quotient together with the quotient map onto it.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub permutoid: Permutoid,
    pub morphism: Morphism,
    pub key: CanonicalKey,
}

/// Lists one representative per isomorphism class of quotients `P → P/~` induced by an
/// equivalence relation `~` on the ground set, sorted by `(ground size, canonical key)`.
///
/// The relation must make every element descend to a well-defined injective map on classes,
/// the descended maps (equal ones merged) must form a permutoid, and the class map together
/// with the element map must be a morphism.
pub fn enumerate_quotients(p: &Permutoid, options: QuotientOptions) -> Result<Vec<Quotient>, GroundSetTooLarge> {
    let n = p.ground_size();
    let cap = options.canon_cap;
    if n > cap {
        return Err(GroundSetTooLarge { size: n, cap });
    }
    let mut found: BTreeMap<(usize, CanonicalKey), Quotient> = BTreeMap::new();
    let mut classes = vec![0usize; n];
    let mut maxima = vec![0usize; n];
    loop {
        if let Some((permutoid, morphism)) = induced_quotient(p, &classes) {
            if !(options.nontrivial_only && permutoid.is_trivial()) {
                let key = canonical_form_with_cap(&permutoid, cap)?;
                found
                    .entry((permutoid.ground_size(), key.clone()))
                    .or_insert(Quotient { permutoid, morphism, key });
            }
        }
        if !next_partition(&mut classes, &mut maxima) {
            break;
        }
    }
    Ok(found.into_values().collect())
}

/// The quotient induced by the class assignment `classes` (a restricted growth string), if valid.
pub fn induced_quotient(p: &Permutoid, classes: &[usize]) -> Option<(Permutoid, Morphism)> {
    let k = classes.iter().max().map_or(0, |m| m + 1);
    let mut index: HashMap<PartialPermutation, usize> = HashMap::new();
    let mut elements = Vec::new();
    let mut names = Vec::new();
    let mut element_map = Vec::with_capacity(p.len());
    for (i, e) in p.elements().iter().enumerate() {
        let mut images = vec![None; k];
        for (x, y) in e.iter() {
            let (cx, cy) = (classes[x], classes[y]);
            match images[cx] {
                Some(prev) if prev != cy => return None,
                _ => images[cx] = Some(cy),
            }
        }
        let induced = PartialPermutation::from_images(images)?;
        let next = elements.len();
        let j = *index.entry(induced.clone()).or_insert_with(|| {
            elements.push(induced);
            names.push(p.name(i).to_string());
            next
        });
        element_map.push(j);
    }
    let quotient = Permutoid::with_names(k, elements, names).ok()?;
    let morphism = Morphism { point_map: classes.to_vec(), element_map };
    morphism.validate(p, &quotient).ok()?;
    Some((quotient, morphism))
}

/// Advances a restricted growth string; `maxima[i]` caches `max(classes[..i])`.
fn next_partition(classes: &mut [usize], maxima: &mut [usize]) -> bool {
    let n = classes.len();
    for i in (1..n).rev() {
        if classes[i] <= maxima[i] {
            classes[i] += 1;
            let m = maxima[i].max(classes[i]);
            for j in i + 1..n {
                classes[j] = 0;
                maxima[j] = m;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutoid::validate_permutoid;

    #[test]
    fn restricted_growth_strings_count_bell_numbers() {
        for (n, bell) in [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52), (6, 203)] {
            let mut classes = vec![0; n];
            let mut maxima = vec![0; n];
            let mut count = 1;
            while next_partition(&mut classes, &mut maxima) {
                count += 1;
            }
            assert_eq!(count, bell, "n = {n}");
        }
    }

    #[test]
    fn trivial_permutoid_quotients() {
        let p = validate_permutoid(2, &[vec![(0, 0), (1, 1)]]).unwrap();
        let all = enumerate_quotients(&p, QuotientOptions::default()).unwrap();
        let sizes: Vec<usize> = all.iter().map(|q| q.permutoid.ground_size()).collect();
        assert_eq!(sizes, vec![1, 2]);
        let nontrivial =
            enumerate_quotients(&p, QuotientOptions { nontrivial_only: true, ..Default::default() }).unwrap();
        assert!(nontrivial.is_empty());
    }

    #[test]
    fn swap_on_two_points() {
        let p = validate_permutoid(2, &[vec![(0, 0), (1, 1)], vec![(0, 1), (1, 0)]]).unwrap();
        let all = enumerate_quotients(&p, QuotientOptions::default()).unwrap();
        assert_eq!(all.len(), 2);
        assert!(all[0].permutoid.is_trivial());
        let nontrivial =
            enumerate_quotients(&p, QuotientOptions { nontrivial_only: true, ..Default::default() }).unwrap();
        assert_eq!(nontrivial.len(), 1);
        assert_eq!(nontrivial[0].permutoid.len(), 2);
    }

    #[test]
    fn quotient_maps_are_partition_induced() {
        let p = validate_permutoid(
            4,
            &[vec![(0, 0), (1, 1), (2, 2), (3, 3)], vec![(0, 1), (1, 2)], vec![(1, 0), (2, 1)]],
        )
        .unwrap();
        for q in enumerate_quotients(&p, QuotientOptions::default()).unwrap() {
            let kind = q.morphism.validate(&p, &q.permutoid).unwrap();
            assert!(kind.is_quotient);
            for (i, e) in p.elements().iter().enumerate() {
                let mut image_dom: Vec<usize> = e.domain().iter().map(|&x| q.morphism.point_map[x]).collect();
                image_dom.sort_unstable();
                image_dom.dedup();
                assert_eq!(q.permutoid.element(q.morphism.element_map[i]).domain(), image_dom);
            }
        }
    }
}
