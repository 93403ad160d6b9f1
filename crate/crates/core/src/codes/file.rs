//! JSON codebook files.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{
    CodeError, CodeParams, Codebook, CooParams, EcocParams, GaussParams, PolynomialParams,
    RemainderParams, RmpParams, Scheme,
};

pub const FORMAT_VERSION: u32 = 1;

/// On-disk form of a [`Codebook`]. Loading rebuilds and revalidates the code.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodebookFile {
    pub scheme: Scheme,
    pub n_classes: u64,
    pub site_sizes: Vec<u32>,
    pub params: Value,
    pub anti: bool,
    pub version: u32,
}

impl Codebook {
    pub fn to_file(&self) -> CodebookFile {
        let params = match &self.params {
            CodeParams::Polynomial(p) => json!(p),
            CodeParams::Remainder(p) => json!(p),
            CodeParams::Gauss(p) => json!(p),
            CodeParams::Coo(p) => json!(p),
            CodeParams::Rmp(p) => json!(p),
            CodeParams::Ecoc(p) => json!(p),
        };
        CodebookFile {
            scheme: self.scheme(),
            n_classes: self.n_classes,
            site_sizes: self.site_sizes.clone(),
            params,
            anti: self.anti,
            version: FORMAT_VERSION,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("codebook serializes")
    }

    pub fn from_file(file: CodebookFile) -> Result<Self, CodeError> {
        if file.version != FORMAT_VERSION {
            return Err(CodeError::Format(format!(
                "unsupported version {}",
                file.version
            )));
        }
        let n = file.n_classes;
        let cb = match file.scheme {
            Scheme::Polynomial => {
                let p: PolynomialParams = serde_json::from_value(file.params)?;
                Codebook::polynomial(n, p.k, p.p, p.eval_points)?
            }
            Scheme::Remainder => {
                let p: RemainderParams = serde_json::from_value(file.params)?;
                Codebook::remainder(n, p.k, p.moduli)?
            }
            Scheme::Gauss => {
                let p: GaussParams = serde_json::from_value(file.params)?;
                let cb = Codebook::gauss(n, p.k, p.moduli)?;
                if let CodeParams::Gauss(g) = &cb.params {
                    if g.radius_sq != p.radius_sq {
                        return Err(CodeError::Format(format!(
                            "stored disc radius {} does not match {}",
                            p.radius_sq, g.radius_sq
                        )));
                    }
                }
                cb
            }
            Scheme::Coo => {
                let p: CooParams = serde_json::from_value(file.params)?;
                Codebook::coo(n, p.total_bits, p.frequency_order)?
            }
            Scheme::Rmp => {
                let p: RmpParams = serde_json::from_value(file.params)?;
                Codebook::rmp_with_kept(n, p.m, p.seed, p.kept)?
            }
            Scheme::Ecoc => {
                let p: EcocParams = serde_json::from_value(file.params)?;
                Codebook::ecoc_from(n, p.bits, p.codewords, p.seed)?
            }
        };
        if cb.site_sizes != file.site_sizes {
            return Err(CodeError::Format(
                "site_sizes disagree with the parameters".into(),
            ));
        }
        Ok(cb.with_anti(file.anti))
    }

    pub fn from_json(text: &str) -> Result<Self, CodeError> {
        Self::from_file(serde_json::from_str(text)?)
    }
}
