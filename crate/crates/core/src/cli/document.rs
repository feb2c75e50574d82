//! The JSON model document written by `fit` and read by `eval`.

use serde::{Deserialize, Serialize};

use crate::approx::{DegreeVector, FitReport, Model, PolynomialModel, RationalModel};
use crate::error::{Error, Result};
use crate::linalg::TropicalVector;
use crate::rational::Rational;
use crate::semifield::Semifield;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub semifield: String,
    pub kind: String,
    pub numerator: PolynomialPart,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator: Option<PolynomialPart>,
    pub delta_star: f64,
    pub error: f64,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialPart {
    pub degrees: Vec<String>,
    pub coefficients: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub config: ConfigEcho,
    pub tool_version: String,
}

/// The options that produced a model. Thread count is deliberately absent.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigEcho {
    /// `"degrees"` for a fixed class, `"search"` for a random search.
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den_terms: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub best_draw: Option<usize>,
    pub iterations: usize,
    pub termination: String,
}

impl PolynomialPart {
    fn from_model(p: &PolynomialModel) -> Self {
        PolynomialPart {
            degrees: p
                .degrees()
                .as_slice()
                .iter()
                .map(Rational::to_string)
                .collect(),
            coefficients: p.coefficients().to_reals(),
        }
    }

    fn to_model(&self, sf: Semifield) -> Result<PolynomialModel> {
        let bad = |e: Error| Error::MalformedModel(e.to_string());
        let degrees: Vec<Rational> = self
            .degrees
            .iter()
            .map(|d| d.parse())
            .collect::<Result<_>>()
            .map_err(bad)?;
        let degrees = DegreeVector::new(degrees).map_err(bad)?;
        if degrees
            .as_slice()
            .iter()
            .map(Rational::to_string)
            .ne(self.degrees.iter().cloned())
        {
            return Err(Error::MalformedModel(
                "degrees must be reduced and strictly increasing".into(),
            ));
        }
        let coeffs = TropicalVector::from_reals(sf, &self.coefficients).map_err(bad)?;
        PolynomialModel::new(degrees, coeffs).map_err(bad)
    }
}

impl ModelDocument {
    pub fn from_fit(fit: &FitReport, provenance: Provenance) -> Self {
        let sf = fit.model.semifield();
        let (kind, numerator, denominator) = match &fit.model {
            Model::Polynomial(p) => ("polynomial", PolynomialPart::from_model(p), None),
            Model::Rational(r) => (
                "rational",
                PolynomialPart::from_model(r.numerator()),
                Some(PolynomialPart::from_model(r.denominator())),
            ),
        };
        ModelDocument {
            semifield: sf.name().to_string(),
            kind: kind.to_string(),
            numerator,
            denominator,
            delta_star: sf.to_real(fit.delta_star),
            error: sf.to_real(fit.error),
            provenance,
        }
    }

    pub fn semifield(&self) -> Result<Semifield> {
        self.semifield.parse().map_err(Error::MalformedModel)
    }

    pub fn to_model(&self) -> Result<Model> {
        let sf = self.semifield()?;
        let numerator = self.numerator.to_model(sf)?;
        match (self.kind.as_str(), &self.denominator) {
            ("polynomial", None) => Ok(Model::Polynomial(numerator)),
            ("rational", Some(den)) => Ok(Model::Rational(RationalModel::new(
                numerator,
                den.to_model(sf)?,
            )?)),
            (kind, _) => Err(Error::MalformedModel(format!(
                "kind '{kind}' does not match the presence of a denominator"
            ))),
        }
    }

    /// Pretty JSON, UTF-8, LF-terminated.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("model documents serialize");
        s.push('\n');
        s
    }

    /// Parses and validates a document.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ModelDocument =
            serde_json::from_str(text).map_err(|e| Error::MalformedModel(e.to_string()))?;
        doc.to_model()?;
        Ok(doc)
    }
}
