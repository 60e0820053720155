//! File formats and loaders. Monoids, categories and homomorphisms are
//! flat JSON keyed by labels; every loader also understands `fixture:`
//! URIs (for example `fixture:S5` or `fixture:PAIR2`).

use std::path::Path;

use serde::Deserialize;

use crate::category::{CategoryTable, RawCategory};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::monoid::{HomomorphismMap, MonoidTable, RawMonoid};

pub const FIXTURE_SCHEME: &str = "fixture:";

pub fn load_monoid(spec: &str) -> Result<MonoidTable> {
    if let Some(name) = spec.strip_prefix(FIXTURE_SCHEME) {
        return fixtures::monoid_by_name(name)
            .ok_or_else(|| Error::Invalid(format!("unknown monoid fixture `{name}`")));
    }
    let text = std::fs::read_to_string(Path::new(spec))?;
    let raw: RawMonoid = serde_json::from_str(&text)?;
    MonoidTable::from_raw(&raw)
}

pub fn save_monoid(m: &MonoidTable, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(&m.to_raw())?;
    std::fs::write(path, text)?;
    Ok(())
}

pub fn load_category(spec: &str) -> Result<CategoryTable> {
    if let Some(name) = spec.strip_prefix(FIXTURE_SCHEME) {
        return fixtures::category_by_name(name)
            .ok_or_else(|| Error::Invalid(format!("unknown category fixture `{name}`")));
    }
    let text = std::fs::read_to_string(Path::new(spec))?;
    let raw: RawCategory = serde_json::from_str(&text)?;
    CategoryTable::from_raw(&raw)
}

pub fn save_category(c: &CategoryTable, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(&c.to_raw())?;
    std::fs::write(path, text)?;
    Ok(())
}

#[derive(Debug, Clone, Deserialize)]
struct RawHomomorphism {
    source: String,
    target: String,
    map: std::collections::BTreeMap<String, String>,
}

/// Load a homomorphism file: `{"source": <spec>, "target": <spec>,
/// "map": {label: label}}`. The map must be total on the source.
pub fn load_homomorphism(spec: &str) -> Result<HomomorphismMap> {
    let text = std::fs::read_to_string(Path::new(spec))?;
    let raw: RawHomomorphism = serde_json::from_str(&text)?;
    let source = load_monoid(&raw.source)?;
    let target = load_monoid(&raw.target)?;
    let mut map = Vec::with_capacity(source.n());
    for a in 0..source.n() {
        let from = source.label(a);
        let to = raw
            .map
            .get(from)
            .ok_or_else(|| Error::Invalid(format!("map misses source element `{from}`")))?;
        let img = target
            .index_of(to)
            .ok_or_else(|| Error::UnknownLabel(to.clone()))?;
        map.push(img);
    }
    Ok(HomomorphismMap {
        source,
        target,
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monoid_roundtrip_through_files() {
        let dir = std::env::temp_dir().join("stonedual-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("s5.json");
        save_monoid(&fixtures::s5(), &path).unwrap();
        let loaded = load_monoid(path.to_str().unwrap()).unwrap();
        assert_eq!(loaded, fixtures::s5());
    }

    #[test]
    fn category_roundtrip_through_files() {
        let dir = std::env::temp_dir().join("stonedual-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("pair2.json");
        save_category(&fixtures::pair2(), &path).unwrap();
        let loaded = load_category(path.to_str().unwrap()).unwrap();
        assert_eq!(loaded, fixtures::pair2());
    }

    #[test]
    fn fixture_uris_resolve() {
        assert_eq!(load_monoid("fixture:B4").unwrap(), fixtures::b4());
        assert_eq!(load_category("fixture:arrow").unwrap(), fixtures::arrow());
        assert!(load_monoid("fixture:NOPE").is_err());
    }

    #[test]
    fn serialized_schemas_use_the_documented_keys() {
        let m = serde_json::to_value(fixtures::b4().to_raw()).unwrap();
        let mut keys: Vec<&str> = m.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["elements", "mult", "one", "plus", "star", "zero"]);
        assert_eq!(m["mult"][1][3], "e", "mult is row-major by labels");

        let c = serde_json::to_value(fixtures::arrow().to_raw()).unwrap();
        let mut keys: Vec<&str> = c.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["arrows", "compose", "d", "identities", "r"]);
        let composites = c["compose"].as_array().unwrap();
        assert!(composites.iter().all(|t| t.as_array().unwrap().len() == 3));

        let report = crate::report::SuiteReport::new(
            "acceptance",
            vec![crate::report::CheckResult::pass("sample")],
        );
        let r = serde_json::to_value(&report).unwrap();
        let mut keys: Vec<&str> = r.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["checks", "suite", "version"]);
        assert_eq!(r["checks"][0]["status"], "pass");
        assert!(r["checks"][0].get("witness").is_none(), "witness is optional");
    }

    #[test]
    fn corrupted_file_is_an_error() {
        let dir = std::env::temp_dir().join("stonedual-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("broken.json");
        std::fs::write(&path, "{ not json").unwrap();
        assert!(matches!(
            load_monoid(path.to_str().unwrap()),
            Err(Error::Json(_))
        ));
    }
}
