//! Signed-letter words and finite group presentations.
//!
//! Text format for presentations: the first non-blank line lists the
//! generator labels separated by whitespace; every following non-blank line
//! is one relator written as whitespace-separated letters. A letter is a
//! generator label (positive), the label followed by `'` (inverse), or the
//! label with its letters upper-cased (inverse). Lines starting with `#` are
//! comments.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("generator index {index} out of range for {count} generators")]
    GeneratorOutOfRange { index: usize, count: usize },
    #[error("presentation has no generators")]
    Empty,
}

/// One letter `s_i^{±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(generator: usize) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn neg(generator: usize) -> Self {
        Letter {
            generator,
            inverse: true,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

/// A word in the free group, stored letter by letter (not freely reduced).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Positive word from generator indices.
    pub fn positive(gens: impl IntoIterator<Item = usize>) -> Self {
        Word {
            letters: gens.into_iter().map(Letter::pos).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, generator_count: usize) -> Vec<i64> {
        let mut sums = vec![0; generator_count];
        for l in &self.letters {
            sums[l.generator] += l.sign();
        }
        sums
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }
}

/// Finite presentation `<s_1..s_n | r_1..r_k>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    labels: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(labels: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        if labels.is_empty() {
            return Err(PresentationError::Empty);
        }
        let count = labels.len();
        for r in &relators {
            if let Some(index) = r.max_generator().filter(|&g| g >= count) {
                return Err(PresentationError::GeneratorOutOfRange { index, count });
            }
        }
        Ok(GroupPresentation { labels, relators })
    }

    /// Free group on `n` generators labelled `x1..xn`.
    pub fn free(n: usize) -> Result<Self, PresentationError> {
        Self::new((1..=n).map(|i| format!("x{i}")).collect(), Vec::new())
    }

    pub fn generator_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Renders a word with trailing-apostrophe inverses; the empty word is `1`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.letters
            .iter()
            .map(|l| {
                let label = &self.labels[l.generator];
                if l.inverse {
                    format!("{label}'")
                } else {
                    label.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(PresentationError::Empty)?;
        let labels: Vec<String> = header.split_whitespace().map(str::to_owned).collect();

        let mut exact = HashMap::new();
        let mut folded = HashMap::new();
        for (i, label) in labels.iter().enumerate() {
            if label.ends_with('\'') {
                return Err(PresentationError::Parse {
                    line: header_line,
                    msg: format!("label `{label}` may not end with an apostrophe"),
                });
            }
            if exact.insert(label.as_str(), i).is_some() {
                return Err(PresentationError::Parse {
                    line: header_line,
                    msg: format!("duplicate generator label `{label}`"),
                });
            }
            if folded.insert(label.to_uppercase(), i).is_some() {
                return Err(PresentationError::Parse {
                    line: header_line,
                    msg: format!("labels collide when upper-cased at `{label}`"),
                });
            }
        }

        let mut relators = Vec::new();
        for (line, body) in lines {
            let mut letters = Vec::new();
            for token in body.split_whitespace() {
                let letter = if let Some(&g) = exact.get(token) {
                    Letter::pos(g)
                } else if let Some(&g) = token.strip_suffix('\'').and_then(|t| exact.get(t)) {
                    Letter::neg(g)
                } else if let Some(&g) = folded.get(token) {
                    Letter::neg(g)
                } else if token == "1" {
                    continue;
                } else {
                    return Err(PresentationError::Parse {
                        line,
                        msg: format!("unknown letter `{token}`"),
                    });
                };
                letters.push(letter);
            }
            relators.push(Word::new(letters));
        }
        Self::new(labels, relators)
    }

    pub fn to_text(&self) -> String {
        let mut out = self.labels.join(" ");
        out.push('\n');
        for r in &self.relators {
            out.push_str(&self.format_word(r));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "< {} | {} >", self.labels.join(", "), rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_inverse_spellings() {
        let p = GroupPresentation::parse("a b\na b A b'\n").unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(
            p.relators()[0].letters,
            vec![Letter::pos(0), Letter::pos(1), Letter::neg(0), Letter::neg(1)]
        );
    }

    #[test]
    fn multi_character_labels() {
        let p = GroupPresentation::parse("# dihedral\na0 a1\n\na0 a1 A0 a1'\n").unwrap();
        assert_eq!(p.labels(), ["a0", "a1"]);
        assert_eq!(p.relators()[0].exponent_sums(2), vec![0, 0]);
    }

    #[test]
    fn header_only_is_free() {
        let p = GroupPresentation::parse("x y z").unwrap();
        assert_eq!(p.generator_count(), 3);
        assert!(p.relators().is_empty());
    }

    #[test]
    fn reports_line_numbers() {
        let err = GroupPresentation::parse("a b\na b\n\nc\n").unwrap_err();
        assert_eq!(
            err,
            PresentationError::Parse {
                line: 4,
                msg: "unknown letter `c`".into()
            }
        );
    }

    #[test]
    fn rejects_bad_headers() {
        assert!(matches!(
            GroupPresentation::parse("a a"),
            Err(PresentationError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            GroupPresentation::parse("a A"),
            Err(PresentationError::Parse { line: 1, .. })
        ));
        assert_eq!(GroupPresentation::parse("\n# x\n"), Err(PresentationError::Empty));
    }

    #[test]
    fn text_is_canonical() {
        let p = GroupPresentation::parse("s t\ns t S T\n").unwrap();
        assert_eq!(p.to_text(), "s t\ns t s' t'\n");
        assert_eq!(GroupPresentation::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn empty_relator_is_written_as_one() {
        let p = GroupPresentation::new(vec!["a".into()], vec![Word::default()]).unwrap();
        assert_eq!(p.to_text(), "a\n1\n");
        assert_eq!(GroupPresentation::parse("a\n1\n").unwrap(), p);
        assert_eq!(GroupPresentation::parse("a\na 1 a\n").unwrap().relators()[0].len(), 2);
    }
}
