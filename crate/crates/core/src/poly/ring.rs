use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered list of variable names. Cheap to clone; compared by contents.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Arc<[String]>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Ring> {
        let mut vars: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(Error::InvalidRing(format!("`{n}` is not an identifier")));
            }
            if vars.iter().any(|v| v == n) {
                return Err(Error::VariableCollision(n.to_string()));
            }
            vars.push(n.to_string());
        }
        Ok(Ring { vars: vars.into() })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn names(&self) -> &[String] {
        &self.vars
    }

    pub fn name(&self, index: usize) -> &str {
        &self.vars[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The ring with `name` appended as the last (smallest) variable.
    pub fn with_var(&self, name: &str) -> Result<Ring> {
        if self.index_of(name).is_some() {
            return Err(Error::VariableCollision(name.to_string()));
        }
        let mut names: Vec<String> = self.vars.to_vec();
        names.push(name.to_string());
        Ring::new(&names)
    }

    /// The ring with variable `index` removed.
    pub fn without_var(&self, index: usize) -> Ring {
        let names: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != index)
            .map(|(_, v)| v.clone())
            .collect();
        Ring { vars: names.into() }
    }

    /// A variable name not yet used in this ring, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        (0..)
            .map(|i| format!("{base}{i}"))
            .find(|n| self.index_of(n).is_none())
            .unwrap()
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.vars.join(","))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
