//! Ordered variable tables with role tags.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Role of a coordinate in the ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Ambient,
    Exceptional(String),
    Parameter,
}

/// Frozen ordered list of variable names; the term order of every polynomial
/// over this table follows this ordering.
#[derive(Clone, Debug)]
pub struct VarTable {
    names: Vec<String>,
    roles: Vec<Role>,
    index: HashMap<String, usize>,
}

impl PartialEq for VarTable {
    fn eq(&self, o: &Self) -> bool {
        self.names == o.names && self.roles == o.roles
    }
}

impl Eq for VarTable {}

fn valid_name(n: &str) -> bool {
    let mut cs = n.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarTable {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>> {
        let roles = vec![Role::Ambient; names.len()];
        Self::with_roles(names, roles)
    }

    pub fn with_roles<S: AsRef<str>>(names: &[S], roles: Vec<Role>) -> Result<Arc<Self>> {
        if roles.len() != names.len() {
            return Err(Error::invalid("roles and names differ in length"));
        }
        let mut index = HashMap::new();
        let mut out = Vec::new();
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref().to_string();
            if !valid_name(&n) {
                return Err(Error::invalid(format!("invalid variable name `{n}`")));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::invalid(format!("duplicate variable `{n}`")));
            }
            out.push(n);
        }
        Ok(Arc::new(VarTable {
            names: out,
            roles,
            index,
        }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn role(&self, i: usize) -> &Role {
        &self.roles[i]
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn idx(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn indices<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.idx(n.as_ref())).collect()
    }

    /// Indices of all variables.
    pub fn all(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }

    /// Same table with one variable renamed (its position and role kept).
    pub fn renamed(&self, i: usize, new_name: &str) -> Result<Arc<Self>> {
        let mut names = self.names.clone();
        names[i] = new_name.to_string();
        Self::with_roles(&names, self.roles.clone())
    }
}

/// Whether two shared tables describe the same variables.
pub(crate) fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
