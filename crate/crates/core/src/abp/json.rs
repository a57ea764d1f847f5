use serde::{Deserialize, Serialize};

use super::{Abp, LayerMatrix};
use crate::error::{Error, Result};
use crate::ring::{AffineForm, EpsScalar, LabelClass, MPoly};

/// JSON form of an [`Abp`]. `layers[0]` is `M_1`, the layer next to the sink.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbpJson {
    pub layers: Vec<Vec<Vec<String>>>,
    pub source: Vec<String>,
    pub sink: Vec<String>,
    pub width: usize,
    pub class: LabelClass,
}

fn scalar(s: &str) -> Result<EpsScalar> {
    MPoly::parse(s)?.as_scalar().ok_or_else(|| Error::Invalid(format!("boundary entry {s} is not a scalar")))
}

impl AbpJson {
    pub fn from_abp(a: &Abp) -> AbpJson {
        AbpJson {
            layers: a
                .matrices
                .iter()
                .map(|m| (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect())
                .collect(),
            source: a.source.iter().map(|s| s.to_string()).collect(),
            sink: a.sink.iter().map(|s| s.to_string()).collect(),
            width: a.width,
            class: a.class,
        }
    }

    pub fn to_abp(&self) -> Result<Abp> {
        let matrices = self
            .layers
            .iter()
            .map(|rows| {
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(|s| AffineForm::parse(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                LayerMatrix::from_rows(rows)
            })
            .collect::<Result<Vec<_>>>()?;
        let source = self.source.iter().map(|s| scalar(s)).collect::<Result<Vec<_>>>()?;
        let sink = self.sink.iter().map(|s| scalar(s)).collect::<Result<Vec<_>>>()?;
        let mut a = Abp::new(matrices, source, sink, self.class)?;
        a.width = self.width;
        Ok(a)
    }

    pub fn parse(s: &str) -> Result<AbpJson> {
        serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))
    }
}
