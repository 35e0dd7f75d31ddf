use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An interned variable name. Names match `[a-z][a-z0-9_]*` and are
/// ordered lexicographically, which fixes every canonical order downstream.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct VarName(String);

impl VarName {
    pub fn new(text: &str) -> Result<Self> {
        let mut chars = text.chars();
        let ok = match chars.next() {
            Some(c) if c.is_ascii_lowercase() => {
                chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
            }
            _ => false,
        };
        if ok {
            Ok(VarName(text.to_owned()))
        } else {
            Err(Error::InvalidVarName(text.to_owned()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<String> for VarName {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        VarName::new(&s)
    }
}

impl From<VarName> for String {
    fn from(v: VarName) -> String {
        v.0
    }
}

impl std::str::FromStr for VarName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VarName::new(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_identifiers() {
        assert!(VarName::new("x").is_ok());
        assert!(VarName::new("x_1").is_ok());
        assert!(VarName::new("abc9").is_ok());
    }

    #[test]
    fn rejects_bad_names() {
        assert!(VarName::new("").is_err());
        assert!(VarName::new("X").is_err());
        assert!(VarName::new("1x").is_err());
        assert!(VarName::new("x y").is_err());
    }

    #[test]
    fn order_is_lexicographic() {
        let u = VarName::new("u").unwrap();
        let x = VarName::new("x").unwrap();
        let x1 = VarName::new("x1").unwrap();
        assert!(u < x && x < x1);
    }
}
