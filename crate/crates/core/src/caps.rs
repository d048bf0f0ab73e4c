//! Size caps for exhaustive constructions.
//!
//! Defaults can be overridden process-wide through `FFG_SIZE_CAPS`, a comma
//! separated list of `key=value` pairs, e.g. `frame=4096,antichains=20000`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeCaps {
    /// Maximum number of elements of any constructed frame.
    pub frame: usize,
    /// Largest poset size accepted by the isomorphism-reduced enumerator.
    pub poset: usize,
    /// Maximum number of subsets `B ⊆ A` evaluated by the closed Fletcher form.
    pub fletcher: usize,
    /// Maximum number of antichains (equivalently downsets) a decider may scan.
    pub antichains: usize,
    /// Maximum number of chains through 0 and 1 in a first part.
    pub chains: usize,
    /// Largest carrier for which set partitions are enumerated by brute force.
    pub partition_oracle: usize,
}

impl Default for SizeCaps {
    fn default() -> Self {
        SizeCaps {
            frame: 1 << 16,
            poset: 6,
            fletcher: 1 << 16,
            antichains: 1 << 16,
            chains: 1 << 16,
            partition_oracle: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad FFG_SIZE_CAPS entry `{0}`")]
pub struct CapsParseError(pub String);

impl SizeCaps {
    /// Parses a `key=value,...` override list on top of the defaults.
    pub fn parse(spec: &str) -> Result<SizeCaps, CapsParseError> {
        let mut caps = SizeCaps::default();
        for entry in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = entry
                .split_once('=')
                .ok_or_else(|| CapsParseError(entry.to_string()))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| CapsParseError(entry.to_string()))?;
            let slot = match key.trim() {
                "frame" => &mut caps.frame,
                "poset" => &mut caps.poset,
                "fletcher" => &mut caps.fletcher,
                "antichains" => &mut caps.antichains,
                "chains" => &mut caps.chains,
                "partition_oracle" => &mut caps.partition_oracle,
                _ => return Err(CapsParseError(entry.to_string())),
            };
            *slot = value;
        }
        Ok(caps)
    }

    pub fn from_env() -> Result<SizeCaps, CapsParseError> {
        match std::env::var("FFG_SIZE_CAPS") {
            Ok(spec) => SizeCaps::parse(&spec),
            Err(_) => Ok(SizeCaps::default()),
        }
    }
}

static CAPS: OnceLock<SizeCaps> = OnceLock::new();

/// Process-wide caps. A malformed `FFG_SIZE_CAPS` falls back to the defaults;
/// the CLI validates the variable up front and reports the error.
pub fn caps() -> SizeCaps {
    *CAPS.get_or_init(|| SizeCaps::from_env().unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_overrides() {
        let caps = SizeCaps::parse("frame=10, poset=4").unwrap();
        assert_eq!(caps.frame, 10);
        assert_eq!(caps.poset, 4);
        assert_eq!(caps.fletcher, SizeCaps::default().fletcher);
        assert!(SizeCaps::parse("bogus=1").is_err());
        assert!(SizeCaps::parse("frame").is_err());
        assert_eq!(SizeCaps::parse("").unwrap(), SizeCaps::default());
    }
}
