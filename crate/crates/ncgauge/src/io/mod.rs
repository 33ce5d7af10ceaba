//! Configuration, expression parsing and morphism files.

mod config;
mod expr;
mod morphism_file;

pub use config::{SessionConfig, ThetaSpec};
pub use expr::parse_polynomial;
pub use morphism_file::{morphism_from_str, morphism_to_string, read_morphism, write_morphism};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

fn check_schema(value: &serde_json::Value) -> Result<()> {
    let found = value
        .get("schema_version")
        .and_then(serde_json::Value::as_u64)
        .ok_or_else(|| Error::Parse("missing schema_version".into()))?;
    if found != u64::from(SCHEMA_VERSION) {
        return Err(Error::SchemaVersion {
            expected: SCHEMA_VERSION,
            found: found.try_into().unwrap_or(u32::MAX),
        });
    }
    Ok(())
}
