use serde::{Deserialize, Serialize};

use super::program::{Claim, QProgram};
use crate::error::{Error, Result};
use crate::ring::{AffineForm, MPoly};

/// Certificate block of the program JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertJson {
    pub target: String,
    /// `null` when the value is claimed to equal `Q(target)` exactly.
    pub order: Option<i64>,
    pub verified: bool,
}

/// JSON form of a [`QProgram`]: forms in application order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QProgramJson {
    pub forms: Vec<String>,
    pub length: usize,
    pub error_bound: i64,
    pub cert: Option<CertJson>,
}

impl QProgramJson {
    pub fn from_program(q: &QProgram, verified: bool) -> QProgramJson {
        let mut forms = Vec::with_capacity(q.len());
        q.root().for_each_form(&mut |l| forms.push(l.to_string()));
        QProgramJson {
            forms,
            length: q.len(),
            error_bound: q.tracked_error_bound(),
            cert: q.claim().map(|c| CertJson { target: c.target.to_string(), order: c.order, verified }),
        }
    }

    pub fn to_program(&self) -> Result<QProgram> {
        let forms = self.forms.iter().map(|s| AffineForm::parse(s)).collect::<Result<Vec<_>>>()?;
        if forms.len() != self.length {
            return Err(Error::Invalid(format!("length {} but {} forms", self.length, forms.len())));
        }
        let mut q = QProgram::from_forms_with_bound(forms, self.error_bound);
        if let Some(c) = &self.cert {
            q = q.with_claim(Claim { target: MPoly::parse(&c.target)?, order: c.order });
        }
        Ok(q)
    }

    pub fn parse(s: &str) -> Result<QProgramJson> {
        serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))
    }
}
