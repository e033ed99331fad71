//! The universal group of a permutoid.

use super::presentation::Presentation;
use super::word::{Letter, Word};
use crate::permutoid::Permutoid;

/// `⟨Π | p q = r whenever r extends p·q⟩`, one generator `p{i}` per element in index order and
/// one relator `p q r⁻¹` per witness triple.
pub fn universal_group(p: &Permutoid) -> Presentation {
    let names = (0..p.len()).map(|i| format!("p{i}")).collect();
    let relators = p
        .witness_triples()
        .map(|(a, b, c)| Word::new(vec![Letter::pos(a), Letter::pos(b), Letter::neg(c)]))
        .collect();
    Presentation::new(names, relators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cameron_from_presentation, parse_presentation, todd_coxeter, CosetError};
    use crate::permutoid::validate_permutoid;

    #[test]
    fn trivial_permutoid_presents_trivial_group() {
        let p = validate_permutoid(1, &[vec![(0, 0)]]).unwrap();
        let u = universal_group(&p);
        assert_eq!(u.to_string(), "gens: p0\nrels: p0\n");
        assert_eq!(todd_coxeter(&u, 10).unwrap().order(), 1);
    }

    #[test]
    fn cameron_of_cyclic_three() {
        let c = cameron_from_presentation(&parse_presentation("gens: a; rels: a^3").unwrap(), 2, 100).unwrap();
        let u = universal_group(&c.permutoid);
        assert_eq!(u.rank(), 3);
        assert_eq!(todd_coxeter(&u, 1000).unwrap().order(), 3);
    }

    #[test]
    fn restriction_pair_is_infinite_cyclic() {
        let p = validate_permutoid(2, &[vec![(0, 0), (1, 1)], vec![(0, 1)], vec![(1, 0)]]).unwrap();
        let u = universal_group(&p);
        let rels: Vec<String> = u.relators().iter().map(|r| r.display(u.generators()).to_string()).collect();
        assert!(rels.contains(&"p1 p2 p0^-1".to_string()));
        assert!(rels.contains(&"p2 p1 p0^-1".to_string()));
        assert!(matches!(todd_coxeter(&u, 200), Err(CosetError::OutOfBounds { .. })));
    }
}
