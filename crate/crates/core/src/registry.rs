//! Moduli registry (degree -> irreducible polynomial) and run manifests.
//!
//! The built-in table holds the numerically least irreducible polynomial of
//! every supported degree, except degree 6 which is `z^6 + z^4 + z^3 + z + 1`.
//! A JSON file of the form `{"12": "0x1053", ...}` overrides entries.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::field::{least_irreducible, FieldCtx, FieldError, FieldSpec, MAX_DEGREE};

/// `z^6 + z^4 + z^3 + z + 1`.
pub const DEGREE6_MODULUS: u64 = 0b101_1011;

/// Environment variable consulted when no registry path is given.
pub const REGISTRY_ENV: &str = "BENTFORGE_REGISTRY";

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("cannot read registry {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("registry is not a JSON object of degree -> hex modulus: {0}")]
    Parse(String),
    #[error("registry entry {entry}: {reason}")]
    Entry { entry: String, reason: String },
    #[error("registry entry for degree {degree}: {source}")]
    Invalid { degree: u32, source: FieldError },
    #[error("no modulus registered for degree {0}")]
    Missing(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldRegistry {
    moduli: BTreeMap<u32, u64>,
}

impl Default for FieldRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

fn parse_hex(text: &str) -> Option<u64> {
    let t = text.trim();
    let t = t
        .strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .unwrap_or(t);
    u64::from_str_radix(t, 16).ok()
}

impl FieldRegistry {
    pub fn builtin() -> Self {
        let mut moduli: BTreeMap<u32, u64> = (1..=MAX_DEGREE)
            .map(|d| {
                (
                    d,
                    least_irreducible(d).expect("every degree has an irreducible"),
                )
            })
            .collect();
        moduli.insert(6, DEGREE6_MODULUS);
        Self { moduli }
    }

    /// Built-ins overridden by the entries of a JSON object. Empty or
    /// whitespace-only input yields the built-ins.
    pub fn from_json_str(text: &str) -> Result<Self, RegistryError> {
        let mut reg = Self::builtin();
        if text.trim().is_empty() {
            return Ok(reg);
        }
        let map: BTreeMap<String, serde_json::Value> =
            serde_json::from_str(text).map_err(|e| RegistryError::Parse(e.to_string()))?;
        for (key, value) in map {
            let entry = format!("{key}: {value}");
            let degree: u32 = key.trim().parse().map_err(|_| RegistryError::Entry {
                entry: entry.clone(),
                reason: "degree is not an integer".into(),
            })?;
            let modulus = value
                .as_str()
                .and_then(parse_hex)
                .ok_or(RegistryError::Entry {
                    entry: entry.clone(),
                    reason: "modulus must be a hex string".into(),
                })?;
            FieldSpec::new(degree, modulus)
                .map_err(|source| RegistryError::Invalid { degree, source })?;
            reg.moduli.insert(degree, modulus);
        }
        Ok(reg)
    }

    pub fn load(path: &Path) -> Result<Self, RegistryError> {
        let text = std::fs::read_to_string(path).map_err(|source| RegistryError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text)
    }

    /// Explicit path, else `$BENTFORGE_REGISTRY`, else built-ins.
    pub fn resolve(path: Option<&Path>) -> Result<Self, RegistryError> {
        match path {
            Some(p) => Self::load(p),
            None => match std::env::var_os(REGISTRY_ENV) {
                Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
                _ => Ok(Self::builtin()),
            },
        }
    }

    pub fn modulus(&self, degree: u32) -> Result<u64, RegistryError> {
        self.moduli
            .get(&degree)
            .copied()
            .ok_or(RegistryError::Missing(degree))
    }

    pub fn spec(&self, degree: u32) -> Result<FieldSpec, RegistryError> {
        let modulus = self.modulus(degree)?;
        FieldSpec::new(degree, modulus).map_err(|source| RegistryError::Invalid { degree, source })
    }

    pub fn ctx(&self, degree: u32) -> Result<Arc<FieldCtx>, RegistryError> {
        Ok(FieldCtx::from_spec(self.spec(degree)?))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map: BTreeMap<String, String> = self
            .moduli
            .iter()
            .map(|(d, m)| (d.to_string(), format!("{m:#x}")))
            .collect();
        serde_json::to_value(map).expect("string map serializes")
    }

    /// SHA-256 over the sorted `(degree, modulus)` list.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        for (d, m) in &self.moduli {
            h.update(d.to_le_bytes());
            h.update(m.to_le_bytes());
        }
        hex::encode(h.finalize())
    }
}

/// One named check with its verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Everything needed to reproduce a run bit-for-bit (wall clock aside).
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub registry_hash: String,
    pub subcommand: String,
    pub parameters: BTreeMap<String, String>,
    pub wall_clock_ms: u128,
    pub checks: Vec<CheckOutcome>,
}

impl RunManifest {
    pub fn new(registry: &FieldRegistry, subcommand: &str) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            registry_hash: registry.content_hash(),
            subcommand: subcommand.to_string(),
            parameters: BTreeMap::new(),
            wall_clock_ms: 0,
            checks: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        let r = FieldRegistry::builtin();
        assert_eq!(r.modulus(6).unwrap(), 0b1011011);
        assert_eq!(r.modulus(12).unwrap(), 0x1009);
        assert_eq!(r.modulus(4).unwrap(), 0b10011);
        assert!(matches!(r.modulus(30), Err(RegistryError::Missing(30))));
    }

    #[test]
    fn empty_text_is_builtin() {
        assert_eq!(
            FieldRegistry::from_json_str("  \n").unwrap(),
            FieldRegistry::builtin()
        );
        assert_eq!(
            FieldRegistry::from_json_str("{}").unwrap(),
            FieldRegistry::builtin()
        );
    }

    #[test]
    fn overrides() {
        let r = FieldRegistry::from_json_str(r#"{"6": "0x5b", "4": "19"}"#).unwrap();
        assert_eq!(r.modulus(6).unwrap(), 0x5b);
        assert_eq!(r.modulus(4).unwrap(), 0x19);
        assert_eq!(
            FieldRegistry::from_json_str(r#"{"6": "0x5b"}"#)
                .unwrap()
                .content_hash(),
            FieldRegistry::builtin().content_hash()
        );
        assert_ne!(r.content_hash(), FieldRegistry::builtin().content_hash());
    }

    #[test]
    fn rejects_bad_entries() {
        let err = FieldRegistry::from_json_str(r#"{"4": "0x15"}"#).unwrap_err();
        assert!(matches!(err, RegistryError::Invalid { degree: 4, .. }));
        assert!(err.to_string().contains("degree 4"));
        assert!(matches!(
            FieldRegistry::from_json_str("[1,2]"),
            Err(RegistryError::Parse(_))
        ));
        assert!(matches!(
            FieldRegistry::from_json_str(r#"{"x": "0x13"}"#),
            Err(RegistryError::Entry { .. })
        ));
        assert!(matches!(
            FieldRegistry::from_json_str(r#"{"4": 19}"#),
            Err(RegistryError::Entry { .. })
        ));
    }

    #[test]
    fn load_from_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("reg.json");
        std::fs::write(&p, r#"{"8": "0x11d"}"#).unwrap();
        let r = FieldRegistry::resolve(Some(&p)).unwrap();
        assert_eq!(r.modulus(8).unwrap(), 0x11d);
        assert!(FieldRegistry::load(&dir.path().join("missing.json")).is_err());
    }
}
