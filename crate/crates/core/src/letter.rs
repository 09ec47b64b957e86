//! Labels for tails, heads and strands.

use std::fmt;
use std::str::FromStr;

use crate::error::LabelError;

/// Longest label (in bytes) that fits in a packed [`Letter`].
pub const MAX_LABEL_LEN: usize = 16;

/// A label, packed big-endian into a `u128` so that the derived ordering is
/// the lexicographic order on the label text.
///
/// User labels are ASCII alphanumeric (plus `_`). Names starting with a
/// control byte are reserved for internal temporaries and cannot be produced
/// by [`Letter::new`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u128);

impl Letter {
    pub fn new(name: &str) -> Result<Letter, LabelError> {
        if name.is_empty() {
            return Err(LabelError::Empty);
        }
        if name.len() > MAX_LABEL_LEN {
            return Err(LabelError::TooLong(name.to_string()));
        }
        if !name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_') {
            return Err(LabelError::InvalidChar(name.to_string()));
        }
        Ok(Letter::pack(name.as_bytes()))
    }

    /// A reserved temporary letter; never equal to any user label.
    pub fn temporary(index: u8) -> Letter {
        Letter::pack(&[0x01, index])
    }

    pub fn is_temporary(self) -> bool {
        (self.0 >> 120) as u8 == 0x01
    }

    fn pack(bytes: &[u8]) -> Letter {
        let mut v: u128 = 0;
        for (i, b) in bytes.iter().enumerate() {
            v |= (*b as u128) << (8 * (15 - i));
        }
        Letter(v)
    }

    pub fn name(self) -> String {
        if self.is_temporary() {
            return format!("~{}", (self.0 >> 112) as u8);
        }
        let bytes = self.0.to_be_bytes();
        let len = bytes.iter().position(|&b| b == 0).unwrap_or(16);
        String::from_utf8_lossy(&bytes[..len]).into_owned()
    }

    /// Number of characters in the printed name.
    pub fn width(self) -> usize {
        self.name().len()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for Letter {
    type Err = LabelError;
    fn from_str(s: &str) -> Result<Letter, LabelError> {
        Letter::new(s)
    }
}

/// Shorthand used throughout the tests: panics on an invalid label.
pub fn letter(name: &str) -> Letter {
    Letter::new(name).unwrap_or_else(|e| panic!("invalid label {name:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_lexicographic_on_names() {
        let mut names = vec!["v", "u", "uv", "16", "1", "2", "a", "ab", "B"];
        let mut letters: Vec<Letter> = names.iter().map(|n| letter(n)).collect();
        names.sort();
        letters.sort();
        let back: Vec<String> = letters.iter().map(|l| l.name()).collect();
        assert_eq!(back, names);
    }

    #[test]
    fn rejects_bad_labels() {
        assert_eq!(Letter::new(""), Err(LabelError::Empty));
        assert!(matches!(Letter::new("a b"), Err(LabelError::InvalidChar(_))));
        assert!(matches!(Letter::new("abcdefghijklmnopq"), Err(LabelError::TooLong(_))));
        assert!(Letter::new("abcdefghijklmnop").is_ok());
    }

    #[test]
    fn temporaries_never_collide_with_labels() {
        let t = Letter::temporary(0);
        assert!(t.is_temporary());
        assert!(!letter("u").is_temporary());
        assert_ne!(t, letter("u"));
        assert!(t < letter("0"));
    }
}
