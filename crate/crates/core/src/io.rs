//! Instance files.
//!
//! ```json
//! {"format_version":1,"model":"factorized","d":3,"n":2,"factors":[[...],[...],[...]]}
//! {"format_version":1,"model":"uniform-int","d":3,"n":2,"M":5,"weights":[...]}
//! ```
//!
//! Factor `j` omits coordinate `j` and is flattened row-major over the
//! remaining coordinates; `weights` is flattened row-major over all `d`.
//! Floats are written in shortest round-trip form.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{CostModel, FactorizedInstance, IndependentInstance, IndependentModel, Instance};

pub const INSTANCE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    format_version: u32,
    model: CostModel,
    d: usize,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    factors: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    scale: Option<u64>,
}

pub fn instance_to_json(instance: &Instance) -> String {
    use crate::model::CostTensor;
    let file = match instance {
        Instance::Factorized(f) => InstanceFile {
            format_version: INSTANCE_FORMAT_VERSION,
            model: CostModel::Factorized,
            d: f.dim(),
            n: f.side(),
            factors: Some(f.factors().to_vec()),
            weights: None,
            scale: None,
        },
        Instance::Independent(w) => InstanceFile {
            format_version: INSTANCE_FORMAT_VERSION,
            model: w.model().cost_model(),
            d: w.dim(),
            n: w.side(),
            factors: None,
            weights: Some(w.weights().to_vec()),
            scale: match w.model() {
                IndependentModel::UniformInt { scale } => Some(scale),
                IndependentModel::Exp1 => None,
            },
        },
    };
    serde_json::to_string(&file).expect("instance serializes")
}

/// Parses and validates an instance file.
pub fn instance_from_json(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text)?;
    if file.format_version != INSTANCE_FORMAT_VERSION {
        return Err(Error::parse(format!(
            "unsupported instance format_version {}",
            file.format_version
        )));
    }
    let inst = match file.model {
        CostModel::Factorized => {
            if file.weights.is_some() || file.scale.is_some() {
                return Err(Error::parse("factorized instance takes only `factors`"));
            }
            let factors = file
                .factors
                .ok_or_else(|| Error::parse("factorized instance needs `factors`"))?;
            Instance::Factorized(FactorizedInstance::from_factors(file.d, file.n, factors)?)
        }
        model => {
            if file.factors.is_some() {
                return Err(Error::parse(format!("{model} instance takes `weights`, not `factors`")));
            }
            let tag = match (model, file.scale) {
                (CostModel::Exp1, None) => IndependentModel::Exp1,
                (CostModel::Exp1, Some(_)) => return Err(Error::parse("exp1 instance takes no `M`")),
                (_, Some(scale)) => IndependentModel::UniformInt { scale },
                (_, None) => return Err(Error::parse("uniform-int instance needs `M`")),
            };
            let weights = file
                .weights
                .ok_or_else(|| Error::parse(format!("{model} instance needs `weights`")))?;
            Instance::Independent(IndependentInstance::from_weights(file.d, file.n, tag, weights)?)
        }
    };
    Ok(inst)
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance> {
    instance_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_instance(path: impl AsRef<Path>, instance: &Instance) -> Result<()> {
    std::fs::write(path, instance_to_json(instance) + "\n")?;
    Ok(())
}
