use serde::{Deserialize, Serialize};

use super::{Perm3, Primitive3, Width3Program};
use crate::error::{Error, Result};
use crate::ring::{parse_rat, AffineForm};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Primitive3Json {
    M { label: String },
    /// Cycle notation on `{1, 2, 3}`, e.g. `(23)` or `(132)`; `()` is the identity.
    Perm { cycle: String },
    Diag { values: [String; 3] },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Width3Json {
    pub primitives: Vec<Primitive3Json>,
    pub length: usize,
}

/// Cycle notation of a permutation of `{0, 1, 2}` (printed 1-based).
pub fn perm_to_cycle(p: &Perm3) -> String {
    let mut out = String::new();
    let mut seen = [false; 3];
    for start in 0..3 {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push(char::from(b'1' + i as u8));
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

pub fn cycle_to_perm(s: &str) -> Result<Perm3> {
    let mut p = [0, 1, 2];
    let bad = || Error::Invalid(format!("bad cycle notation {s:?}"));
    let mut seen = [false; 3];
    for cyc in s.split(')').filter(|c| !c.trim().is_empty()) {
        let digits = cyc.trim().strip_prefix('(').ok_or_else(bad)?;
        let idx: Vec<usize> = digits
            .chars()
            .map(|c| match c {
                '1'..='3' => Ok(c as usize - '1' as usize),
                _ => Err(bad()),
            })
            .collect::<Result<_>>()?;
        for (k, &i) in idx.iter().enumerate() {
            if std::mem::replace(&mut seen[i], true) {
                return Err(bad());
            }
            p[i] = idx[(k + 1) % idx.len()];
        }
    }
    Ok(p)
}

impl Width3Json {
    pub fn from_program(p: &Width3Program) -> Width3Json {
        let primitives = p
            .primitives
            .iter()
            .map(|a| match a {
                Primitive3::M(l) => Primitive3Json::M { label: l.to_string() },
                Primitive3::Perm(pi) => Primitive3Json::Perm { cycle: perm_to_cycle(pi) },
                Primitive3::Diag(d) => Primitive3Json::Diag { values: d.clone().map(|x| x.to_string()) },
            })
            .collect();
        Width3Json { primitives, length: p.len() }
    }

    pub fn to_program(&self) -> Result<Width3Program> {
        let primitives = self
            .primitives
            .iter()
            .map(|a| {
                Ok(match a {
                    Primitive3Json::M { label } => Primitive3::M(AffineForm::parse(label)?),
                    Primitive3Json::Perm { cycle } => Primitive3::Perm(cycle_to_perm(cycle)?),
                    Primitive3Json::Diag { values } => Primitive3::Diag([
                        parse_rat(&values[0])?,
                        parse_rat(&values[1])?,
                        parse_rat(&values[2])?,
                    ]),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if primitives.len() != self.length {
            return Err(Error::Invalid(format!("length {} but {} primitives", self.length, primitives.len())));
        }
        Ok(Width3Program { primitives })
    }

    pub fn parse(s: &str) -> Result<Width3Json> {
        serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))
    }
}
