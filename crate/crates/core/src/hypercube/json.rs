use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::HypercubeSum;
use crate::error::{Error, Result};
use crate::ring::{parse_rat, MPoly, Symbols, Var};

/// JSON form of a [`HypercubeSum`]; factors are rendered with `symbols`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypercubeJson {
    pub bits: Vec<String>,
    pub pins: BTreeMap<String, u8>,
    pub prefactor: String,
    pub terms: Vec<Vec<String>>,
    /// Variable name to id.
    pub symbols: BTreeMap<String, Var>,
}

impl HypercubeJson {
    pub fn from_sum(h: &HypercubeSum) -> HypercubeJson {
        let s = &h.symbols;
        HypercubeJson {
            bits: h.bits.iter().map(|b| s.name(*b)).collect(),
            pins: h.pins.iter().map(|(v, b)| (s.name(*v), u8::from(*b))).collect(),
            prefactor: h.prefactor.to_string(),
            terms: h.terms.iter().map(|t| t.iter().map(|f| f.render(s)).collect()).collect(),
            symbols: s.iter().map(|(id, name)| (name.to_string(), id)).collect(),
        }
    }

    pub fn to_sum(&self) -> Result<HypercubeSum> {
        let mut syms = Symbols::new();
        for (name, id) in &self.symbols {
            syms.insert(*id, name.clone());
        }
        let var = |name: &String| syms.lookup(name).ok_or_else(|| Error::Invalid(format!("unknown variable {name}")));
        let bits = self.bits.iter().map(var).collect::<Result<Vec<_>>>()?;
        let pins = self
            .pins
            .iter()
            .map(|(n, b)| match b {
                0 | 1 => Ok((var(n)?, *b == 1)),
                _ => Err(Error::Invalid(format!("pin {n} must be 0 or 1"))),
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        let terms = self
            .terms
            .iter()
            .map(|t| t.iter().map(|f| MPoly::parse_with(f, &syms)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(HypercubeSum { bits, pins, prefactor: parse_rat(&self.prefactor)?, terms, symbols: syms })
    }

    pub fn parse(s: &str) -> Result<HypercubeJson> {
        serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))
    }
}
