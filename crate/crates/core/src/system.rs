//! Named lists of identities and their text file format.
//!
//! One identity per line as `[name:] LHS = RHS`; `#` starts a comment.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::word::{Identity, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("line {line}: {source}")]
    Parse { line: usize, source: WordError },
    #[error("duplicate identity name {0:?}")]
    DuplicateName(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IdentitySystem {
    pub name: String,
    identities: Vec<Identity>,
}

impl IdentitySystem {
    pub fn new(name: &str) -> IdentitySystem {
        IdentitySystem {
            name: name.to_owned(),
            identities: Vec::new(),
        }
    }

    /// Builds a system, naming unnamed identities `e1`, `e2`, ...
    pub fn from_identities(
        name: &str,
        ids: impl IntoIterator<Item = Identity>,
    ) -> Result<IdentitySystem, SystemError> {
        let mut sys = IdentitySystem::new(name);
        for id in ids {
            sys.push(id)?;
        }
        Ok(sys)
    }

    pub fn push(&mut self, mut id: Identity) -> Result<(), SystemError> {
        let taken: BTreeSet<&str> = self.identities.iter().filter_map(|i| i.name.as_deref()).collect();
        match &id.name {
            Some(n) if taken.contains(n.as_str()) => return Err(SystemError::DuplicateName(n.clone())),
            Some(_) => {}
            None => {
                let fresh = (1..)
                    .map(|k| format!("e{k}"))
                    .find(|n| !taken.contains(n.as_str()))
                    .expect("unbounded");
                id.name = Some(fresh);
            }
        }
        self.identities.push(id);
        Ok(())
    }

    pub fn identities(&self) -> &[Identity] {
        &self.identities
    }

    pub fn len(&self) -> usize {
        self.identities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.identities.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Identity> {
        self.identities.iter().find(|i| i.name.as_deref() == Some(name))
    }

    /// Each identity reversed, keeping its name with a `rev()` wrapper.
    pub fn dual(&self) -> IdentitySystem {
        IdentitySystem {
            name: format!("dual({})", self.name),
            identities: self.identities.iter().map(Identity::reversed).collect(),
        }
    }
}

impl FromStr for IdentitySystem {
    type Err = SystemError;

    fn from_str(text: &str) -> Result<IdentitySystem, SystemError> {
        let mut sys = IdentitySystem::new("file");
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let id = line
                .parse::<Identity>()
                .map_err(|source| SystemError::Parse { line: i + 1, source })?;
            sys.push(id)?;
        }
        Ok(sys)
    }
}

impl fmt::Display for IdentitySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for id in &self.identities {
            writeln!(f, "{id}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    #[test]
    fn parses_files_with_comments() {
        let text = "# sigma2 only\nsigma2: xtyzxy = xtyzyx\n\n  xy = yx # anonymous\n";
        let sys: IdentitySystem = text.parse().unwrap();
        assert_eq!(sys.len(), 2);
        assert_eq!(sys.get("sigma2").unwrap().rhs, w("xtyzyx"));
        assert_eq!(sys.identities()[1].name.as_deref(), Some("e1"));
        let back: IdentitySystem = sys.to_string().parse().unwrap();
        assert_eq!(back.identities(), sys.identities());
    }

    #[test]
    fn reports_line_numbers_and_duplicates() {
        match "a: x = x\nb: x[ = y".parse::<IdentitySystem>() {
            Err(SystemError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            "a: x = x\na: y = y".parse::<IdentitySystem>(),
            Err(SystemError::DuplicateName("a".into()))
        );
    }
}
