//! First counterexample in enumeration order for a handful of properties.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::biframe::Biframe;
use crate::completion::is_ultraparacompact;
use crate::congruence::{chain_closure, clat_frame, congruence_closure, congruence_frame, is_fit};
use crate::order::{downset_frame, FiniteFrame, Poset};

use super::enumerate::enumerate_posets;
use super::WorkbenchError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    NotUltraparacompactFrame,
    NonFitFrame,
    /// Searched over symmetric biframes `(L, L, L)`.
    NonRegularBiframe,
    CongruenceFrameNotUltraparacompact,
    ChainVsSaturationMismatch,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::NotUltraparacompactFrame,
        Property::NonFitFrame,
        Property::NonRegularBiframe,
        Property::CongruenceFrameNotUltraparacompact,
        Property::ChainVsSaturationMismatch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::NotUltraparacompactFrame => "not-ultraparacompact-frame",
            Property::NonFitFrame => "non-fit-frame",
            Property::NonRegularBiframe => "non-regular-biframe",
            Property::CongruenceFrameNotUltraparacompact => "congruence-frame-not-ultraparacompact",
            Property::ChainVsSaturationMismatch => "chain-vs-saturation-mismatch",
        }
    }
}

impl FromStr for Property {
    type Err = WorkbenchError;

    fn from_str(s: &str) -> Result<Property, WorkbenchError> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| WorkbenchError::UnknownProperty(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchWitness {
    /// The poset whose downset frame exhibits the property.
    pub poset: Poset,
    pub frame_size: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub property: Property,
    pub max_poset: usize,
    pub examined: usize,
    pub witness: Option<SearchWitness>,
}

fn exhibits(property: Property, f: &FiniteFrame) -> Result<Option<String>, String> {
    let e = |x: &dyn std::fmt::Display| x.to_string();
    Ok(match property {
        Property::NotUltraparacompactFrame => {
            (!is_ultraparacompact(f).map_err(|x| e(&x))?).then(|| "some cover has no partition refinement".into())
        }
        Property::NonFitFrame => (!is_fit(f).map_err(|x| e(&x))?).then(|| "some congruence is not a join of opens".into()),
        Property::NonRegularBiframe => (!Biframe::symmetric(f).is_regular()).then(|| "symmetric biframe is not regular".into()),
        Property::CongruenceFrameNotUltraparacompact => {
            let cf = congruence_frame(f).map_err(|x| e(&x))?;
            (!is_ultraparacompact(cf.frame()).map_err(|x| e(&x))?).then(|| "congruence frame not ultraparacompact".into())
        }
        Property::ChainVsSaturationMismatch => {
            let clat = clat_frame(f).map_err(|x| e(&x))?;
            let mut found = None;
            for lc in clat.congruences() {
                let c = chain_closure(f, lc).map_err(|x| e(&x))?;
                if c != congruence_closure(f, &lc.spanning_pairs()) {
                    found = Some(format!("lattice congruence {:?}", lc.classes()));
                    break;
                }
            }
            found
        }
    })
}

/// Scans the downset frames of posets with 1 to `max_poset` points in
/// enumeration order and returns the first one with the property.
pub fn search_counterexamples(property: Property, max_poset: usize) -> Result<SearchOutcome, WorkbenchError> {
    let mut examined = 0;
    for n in 1..=max_poset {
        for poset in enumerate_posets(n)? {
            let f = downset_frame(&poset)?;
            examined += 1;
            if let Some(detail) = exhibits(property, &f).map_err(WorkbenchError::Search)? {
                return Ok(SearchOutcome {
                    property,
                    max_poset,
                    examined,
                    witness: Some(SearchWitness {
                        frame_size: f.len(),
                        poset,
                        detail,
                    }),
                });
            }
        }
    }
    Ok(SearchOutcome {
        property,
        max_poset,
        examined,
        witness: None,
    })
}
