//! Propositional claim language: atoms, signed literals and consistency.
//!
//! Claims, premises and rule heads are all literals. The text form of a
//! literal is an optional `!` followed by an atom token; it is the form used
//! by every file format and CLI flag.

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use alloc::collections::BTreeMap;

/// Error produced when a token is not a well-formed literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseLiteralError {
    #[error("empty literal")]
    Empty,
    #[error("invalid character {found:?} at position {position} in literal {text:?}")]
    InvalidChar {
        text: String,
        position: usize,
        found: char,
    },
    #[error("literal {0:?} has no atom after the negation prefix")]
    MissingAtom(String),
}

fn is_atom_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

/// A propositional atom. Names are ASCII letters, digits, `_` and `-`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(String);

impl Atom {
    pub fn new(name: &str) -> Result<Self, ParseLiteralError> {
        if name.is_empty() {
            return Err(ParseLiteralError::Empty);
        }
        if let Some((position, found)) = name.char_indices().find(|(_, c)| !is_atom_char(*c)) {
            return Err(ParseLiteralError::InvalidChar {
                text: name.to_string(),
                position,
                found,
            });
        }
        Ok(Atom(name.to_string()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A signed atom.
///
/// The derived ordering compares polarity first (negative before positive)
/// and then the atom name, which coincides with byte-wise ordering of the
/// text form since `!` sorts below every atom character.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    positive: bool,
    atom: Atom,
}

impl Literal {
    pub fn new(atom: Atom, positive: bool) -> Self {
        Literal { positive, atom }
    }

    pub fn pos(atom: Atom) -> Self {
        Literal::new(atom, true)
    }

    pub fn neg(atom: Atom) -> Self {
        Literal::new(atom, false)
    }

    /// Parses the text form. Surrounding whitespace is ignored; positions in
    /// errors refer to the trimmed token.
    pub fn parse(text: &str) -> Result<Self, ParseLiteralError> {
        let token = text.trim();
        if token.is_empty() {
            return Err(ParseLiteralError::Empty);
        }
        let (positive, body, offset) = match token.strip_prefix('!') {
            Some(rest) => (false, rest, 1),
            None => (true, token, 0),
        };
        if body.is_empty() {
            return Err(ParseLiteralError::MissingAtom(token.to_string()));
        }
        let atom = Atom::new(body).map_err(|e| match e {
            ParseLiteralError::InvalidChar {
                position, found, ..
            } => ParseLiteralError::InvalidChar {
                text: token.to_string(),
                position: position + offset,
                found,
            },
            other => other,
        })?;
        Ok(Literal { positive, atom })
    }

    pub fn atom(&self) -> &Atom {
        &self.atom
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    /// Same atom, opposite polarity.
    pub fn negate(&self) -> Literal {
        Literal {
            positive: !self.positive,
            atom: self.atom.clone(),
        }
    }

    pub fn is_complement_of(&self, other: &Literal) -> bool {
        self.atom == other.atom && self.positive != other.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("!")?;
        }
        f.write_str(self.atom.name())
    }
}

impl FromStr for Literal {
    type Err = ParseLiteralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Literal::parse(s)
    }
}

/// True iff no atom occurs with both polarities.
pub fn consistent<'a, I>(literals: I) -> bool
where
    I: IntoIterator<Item = &'a Literal>,
{
    let mut seen: BTreeMap<&Atom, bool> = BTreeMap::new();
    for lit in literals {
        match seen.get(&lit.atom) {
            Some(&polarity) if polarity != lit.positive => return false,
            Some(_) => {}
            None => {
                seen.insert(&lit.atom, lit.positive);
            }
        }
    }
    true
}
