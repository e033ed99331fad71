//! Finite presentations `⟨A | R⟩` and their line-oriented text format.
//!
//! ```text
//! gens: a, b
//! rels: a^2, b^3, a b a b
//! ```
//!
//! Sections may also be separated by `;` on one line. Lines starting with `#` are ignored.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use super::word::{free_reduce, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("no generators declared")]
    EmptyGeneratorList,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("bad exponent in `{0}`")]
    BadExponent(String),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    BadName(String),
    #[error("cannot parse `{0}`")]
    Syntax(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    /// A relator that freely reduced to the empty word and was dropped.
    EmptyRelator { index: usize, text: String },
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseWarning::EmptyRelator { index, text } => {
                write!(f, "relator {index} (`{text}`) reduces to the empty word and was dropped")
            }
        }
    }
}

/// Generators and freely reduced, non-empty relators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Reduces the relators and drops those that become empty.
    ///
    /// Panics if a relator mentions a generator index out of range.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Self {
        let rank = generators.len();
        let relators = relators
            .iter()
            .map(|r| {
                assert!(r.letters().iter().all(|l| l.generator < rank), "relator uses unknown generator");
                free_reduce(r)
            })
            .filter(|r| !r.is_empty())
            .collect();
        Presentation { generators, relators }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn max_relator_len(&self) -> usize {
        self.relators.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generators.join(", "))?;
        let rels: Vec<String> = self.relators.iter().map(|r| r.display(&self.generators).to_string()).collect();
        if rels.is_empty() {
            writeln!(f, "rels:")
        } else {
            writeln!(f, "rels: {}", rels.join(", "))
        }
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let (p, warnings) = parse_presentation_with_warnings(text)?;
    for w in warnings {
        log::warn!("{w}");
    }
    Ok(p)
}

pub fn parse_presentation_with_warnings(text: &str) -> Result<(Presentation, Vec<ParseWarning>), ParseError> {
    let mut gens: Option<Vec<String>> = None;
    let mut rels_text: Option<String> = None;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for section in line.split(';') {
            let section = section.trim();
            if section.is_empty() {
                continue;
            }
            if let Some(rest) = section.strip_prefix("gens:") {
                if gens.is_some() {
                    return Err(ParseError::Syntax(section.to_string()));
                }
                gens = Some(parse_generators(rest)?);
            } else if let Some(rest) = section.strip_prefix("rels:") {
                if rels_text.is_some() {
                    return Err(ParseError::Syntax(section.to_string()));
                }
                rels_text = Some(rest.to_string());
            } else {
                return Err(ParseError::Syntax(section.to_string()));
            }
        }
    }
    let gens = gens.ok_or(ParseError::EmptyGeneratorList)?;
    let mut relators = Vec::new();
    let mut warnings = Vec::new();
    if let Some(rels) = rels_text {
        let rels = rels.trim();
        if !rels.is_empty() {
            for (index, chunk) in rels.split(',').enumerate() {
                let chunk = chunk.trim();
                if chunk.is_empty() {
                    return Err(ParseError::Syntax(rels.to_string()));
                }
                let w = free_reduce(&parse_word(chunk, &gens)?);
                if w.is_empty() {
                    warnings.push(ParseWarning::EmptyRelator { index, text: chunk.to_string() });
                } else {
                    relators.push(w);
                }
            }
        }
    }
    Ok((Presentation::new(gens, relators), warnings))
}

fn parse_generators(rest: &str) -> Result<Vec<String>, ParseError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for name in rest.split(',') {
        let name = name.trim();
        if name.is_empty() {
            continue;
        }
        if !is_identifier(name) {
            return Err(ParseError::BadName(name.to_string()));
        }
        if !seen.insert(name.to_string()) {
            return Err(ParseError::DuplicateGenerator(name.to_string()));
        }
        out.push(name.to_string());
    }
    if out.is_empty() {
        return Err(ParseError::EmptyGeneratorList);
    }
    Ok(out)
}

/// `term (space term)*` with `term := name | name^int`.
pub fn parse_word(text: &str, generators: &[String]) -> Result<Word, ParseError> {
    let mut letters = Vec::new();
    for term in text.split_whitespace() {
        let (name, exp) = match term.split_once('^') {
            Some((name, exp)) => {
                let e: i64 = exp.parse().map_err(|_| ParseError::BadExponent(term.to_string()))?;
                (name, e)
            }
            None => (term, 1),
        };
        let g = generators
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| ParseError::UnknownGenerator(name.to_string()))?;
        let letter = if exp < 0 { Letter::neg(g) } else { Letter::pos(g) };
        for _ in 0..exp.unsigned_abs() {
            letters.push(letter);
        }
    }
    Ok(Word::new(letters))
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_five() {
        let p = parse_presentation("gens: a; rels: a^5").unwrap();
        assert_eq!(p.rank(), 1);
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0].len(), 5);
    }

    #[test]
    fn symmetric_three() {
        let p = parse_presentation("gens: a,b; rels: a^2, b^3, a b a b").unwrap();
        let lens: Vec<usize> = p.relators().iter().map(Word::len).collect();
        assert_eq!(lens, vec![2, 3, 4]);
        assert_eq!(p.to_string(), "gens: a, b\nrels: a^2, b^3, a b a b\n");
    }

    #[test]
    fn empty_relator_dropped_with_warning() {
        let (p, warnings) = parse_presentation_with_warnings("gens: a\nrels: a a^-1").unwrap();
        assert!(p.relators().is_empty());
        assert_eq!(warnings, vec![ParseWarning::EmptyRelator { index: 0, text: "a a^-1".into() }]);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_presentation("rels: a a^-1"), Err(ParseError::EmptyGeneratorList));
        assert_eq!(parse_presentation("gens:"), Err(ParseError::EmptyGeneratorList));
        assert_eq!(parse_presentation("gens: a; rels: b"), Err(ParseError::UnknownGenerator("b".into())));
        assert_eq!(parse_presentation("gens: a; rels: a^x"), Err(ParseError::BadExponent("a^x".into())));
        assert_eq!(parse_presentation("gens: a, a"), Err(ParseError::DuplicateGenerator("a".into())));
        assert!(matches!(parse_presentation("gens: a\nfoo"), Err(ParseError::Syntax(_))));
    }

    #[test]
    fn free_group_and_negative_powers() {
        let p = parse_presentation("gens: a, b\nrels:\n").unwrap();
        assert!(p.relators().is_empty());
        let q = parse_presentation("gens: x\nrels: x^-3 x").unwrap();
        assert_eq!(q.relators()[0], Word::new(vec![Letter::neg(0), Letter::neg(0)]));
    }

    #[test]
    fn display_round_trips() {
        let p = parse_presentation("gens: a, b; rels: a^-2 b a, b^3").unwrap();
        assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
    }
}
