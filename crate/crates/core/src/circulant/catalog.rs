//! The catalog of minimal singularities and its neighbour relation.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::classify::{signature, Signature};
use super::form::ProductForm;
use crate::error::{Error, Result};

const CATALOG_JSON: &str = include_str!("../../data/catalog.json");

/// One catalog entry as stored in the data file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub dim: usize,
    pub form: String,
    pub neighbors: Vec<String>,
}

/// Parsed catalog with precomputed normal-form signatures.
#[derive(Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    forms: Vec<ProductForm>,
    signatures: Vec<Signature>,
}

impl Catalog {
    /// Parses a catalog from JSON text and checks that every neighbour resolves.
    pub fn from_json(text: &str) -> Result<Self> {
        let entries: Vec<CatalogEntry> = serde_json::from_str(text).map_err(|e| Error::Load {
            file: "catalog.json".into(),
            message: format!("line {}: {e}", e.line()),
        })?;
        let mut forms = Vec::with_capacity(entries.len());
        let mut signatures = Vec::with_capacity(entries.len());
        for e in &entries {
            let form = ProductForm::parse_infer(&e.form).map_err(|err| Error::Load {
                file: "catalog.json".into(),
                message: format!("entry {}: {err}", e.id),
            })?;
            signatures.push(signature(&form).map_err(|err| Error::Load {
                file: "catalog.json".into(),
                message: format!("entry {}: {err}", e.id),
            })?);
            forms.push(form);
        }
        for e in &entries {
            if entries.iter().filter(|o| o.id == e.id).count() != 1 {
                return Err(Error::Load {
                    file: "catalog.json".into(),
                    message: format!("duplicate id {}", e.id),
                });
            }
            for n in &e.neighbors {
                if !entries.iter().any(|o| &o.id == n) {
                    return Err(Error::Load {
                        file: "catalog.json".into(),
                        message: format!("entry {} names unknown neighbour {n}", e.id),
                    });
                }
            }
        }
        Ok(Catalog {
            entries,
            forms,
            signatures,
        })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// The parsed normal form of an entry.
    pub fn form(&self, id: &str) -> Option<&ProductForm> {
        self.entries
            .iter()
            .position(|e| e.id == id)
            .map(|i| &self.forms[i])
    }

    pub fn by_dim(&self, dim: usize) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| e.dim == dim).collect()
    }

    /// The entry whose normal form has the given signature.
    pub fn lookup(&self, sig: &Signature) -> Option<&CatalogEntry> {
        self.signatures
            .iter()
            .position(|s| s == sig)
            .map(|i| &self.entries[i])
    }
}

/// The built-in catalog shipped with the crate.
pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::from_json(CATALOG_JSON).expect("built-in catalog is valid"))
}
