use std::fmt;
use std::sync::Arc;

use super::AlgebraError;

/// Ordered list of coordinate names shared by every object built over it.
///
/// Cloning is cheap; two contexts are equal when their names agree in order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Arc<[String]>,
}

impl VarContext {
    pub fn new<I, S>(names: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(AlgebraError::EmptyContext);
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(AlgebraError::InvalidVariableName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(AlgebraError::DuplicateVariable(name.clone()));
            }
        }
        Ok(Self { names: names.into() })
    }

    /// `prefix1, ..., prefixN`.
    pub fn numbered(prefix: &str, n: usize) -> Result<Self, AlgebraError> {
        Self::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub(crate) fn ensure_same(&self, other: &VarContext) -> Result<(), AlgebraError> {
        if self == other {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(", "))
    }
}

impl fmt::Debug for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarContext[{self}]")
    }
}
