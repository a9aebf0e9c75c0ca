//! Presentation files: a field, variables, ideal generators, optional named
//! ideals and integer parameters.
//!
//! ```toml
//! field = "Q"
//! vars = ["x1", "x2", "x3"]
//! ideal = ["x1*x2", "x2*x3", "x1^2", "x1*x3^2 - x2^L", "x3^3 - x2^L"]
//!
//! [params]
//! L = 4
//!
//! [ideals.a]
//! gens = ["x1", "x2^2"]
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, ArtinianAlgebra, IdealInA};
use crate::arith::{ArithError, FieldSpec};
use crate::poly::{parse_poly, PolyError, Polynomial, RingContext};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("malformed presentation: {0}")]
    Format(String),
    #[error(transparent)]
    Field(#[from] ArithError),
    #[error("parameter `{0}` clashes with a variable name")]
    ParamClash(String),
    #[error("in {location}: {source}")]
    Poly {
        location: String,
        #[source]
        source: PolyError,
    },
    #[error("unknown registered ideal `{0}`")]
    UnknownIdeal(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIdeal {
    gens: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    description: Option<String>,
    field: String,
    vars: Vec<String>,
    ideal: Vec<String>,
    #[serde(default)]
    params: BTreeMap<String, i64>,
    #[serde(default)]
    ideals: BTreeMap<String, RawIdeal>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: Option<String>,
    pub description: Option<String>,
    pub field: FieldSpec,
    pub vars: Vec<String>,
    /// Generators with parameters substituted.
    pub ideal: Vec<String>,
    /// Named ideals of `A`, generators with parameters substituted.
    pub registered: Vec<(String, Vec<String>)>,
    pub params: BTreeMap<String, i64>,
}

/// Replaces identifier tokens that name a parameter by its value.
fn substitute(src: &str, params: &BTreeMap<String, i64>) -> String {
    let mut out = String::with_capacity(src.len());
    let mut ident = String::new();
    let flush = |ident: &mut String, out: &mut String| {
        match params.get(ident.as_str()) {
            Some(v) => out.push_str(&v.to_string()),
            None => out.push_str(ident),
        }
        ident.clear();
    };
    for c in src.chars() {
        let continues = if ident.is_empty() {
            c.is_ascii_alphabetic() || c == '_'
        } else {
            c.is_ascii_alphanumeric() || c == '_'
        };
        if continues {
            ident.push(c);
        } else {
            flush(&mut ident, &mut out);
            out.push(c);
        }
    }
    flush(&mut ident, &mut out);
    out
}

impl Presentation {
    pub fn from_toml_str(src: &str) -> Result<Self, PresentationError> {
        let raw: Raw = toml::from_str(src).map_err(|e| PresentationError::Format(e.message().to_string()))?;
        let field: FieldSpec = raw.field.parse()?;
        if let Some(p) = raw.params.keys().find(|p| raw.vars.contains(p)) {
            return Err(PresentationError::ParamClash(p.clone()));
        }
        let ideal = raw.ideal.iter().map(|g| substitute(g, &raw.params)).collect();
        let registered = raw
            .ideals
            .into_iter()
            .map(|(name, r)| (name, r.gens.iter().map(|g| substitute(g, &raw.params)).collect()))
            .collect();
        let p = Presentation {
            name: raw.name,
            description: raw.description,
            field,
            vars: raw.vars,
            ideal,
            registered,
            params: raw.params,
        };
        p.context()?;
        Ok(p)
    }

    /// The same presentation over another field.
    pub fn with_field(&self, field: FieldSpec) -> Self {
        Presentation { field, ..self.clone() }
    }

    pub fn context(&self) -> Result<Arc<RingContext>, PresentationError> {
        RingContext::new(self.field, self.vars.iter().cloned()).map_err(|e| PresentationError::Poly {
            location: "vars".into(),
            source: e,
        })
    }

    pub fn generators(&self, ctx: &Arc<RingContext>) -> Result<Vec<Polynomial>, PresentationError> {
        self.ideal
            .iter()
            .enumerate()
            .map(|(i, g)| {
                parse_poly(g, ctx).map_err(|e| PresentationError::Poly {
                    location: format!("ideal[{i}] `{g}`"),
                    source: e,
                })
            })
            .collect()
    }

    /// Parses and builds `A = k[x]/I`.
    pub fn build(&self) -> Result<ArtinianAlgebra, BuildError> {
        let ctx = self.context()?;
        let gens = self.generators(&ctx)?;
        Ok(ArtinianAlgebra::new(&ctx, gens)?)
    }

    pub fn registered_names(&self) -> impl Iterator<Item = &str> {
        self.registered.iter().map(|(n, _)| n.as_str())
    }

    /// The named ideal as an ideal of `a`.
    pub fn registered_ideal(&self, a: &ArtinianAlgebra, name: &str) -> Result<IdealInA, BuildError> {
        let (_, gens) = self
            .registered
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| PresentationError::UnknownIdeal(name.to_string()))?;
        let elems = gens
            .iter()
            .map(|g| {
                a.parse_element(g).map_err(|e| match e {
                    AlgebraError::Parse(source) => BuildError::Presentation(PresentationError::Poly {
                        location: format!("ideals.{name} `{g}`"),
                        source,
                    }),
                    other => BuildError::Algebra(other),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(a.ideal_from_generators(&elems))
    }

    pub fn registered_ideals(&self, a: &ArtinianAlgebra) -> Result<Vec<(String, IdealInA)>, BuildError> {
        self.registered
            .iter()
            .map(|(n, _)| Ok((n.clone(), self.registered_ideal(a, n)?)))
            .collect()
    }

    /// Canonical one-line rendering used for digests.
    pub fn canonical(&self) -> String {
        format!(
            "field={};vars=[{}];ideal=[{}]",
            self.field,
            self.vars.join(","),
            self.ideal.join(",")
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[cfg(test)]
mod tests {
    use super::*;

    const SRC: &str = r#"
field = "Q"
vars = ["x1", "x2", "x3"]
ideal = ["x1*x2", "x2*x3", "x1^2", "x1*x3^2 - x2^L", "x3^3 - x2^L"]

[params]
L = 4

[ideals.sq]
gens = ["x2^2", "x3^2"]
"#;

    #[test]
    fn parameters_are_substituted_as_tokens() {
        let mut params = BTreeMap::new();
        params.insert("L".to_string(), 4);
        assert_eq!(substitute("x2^L + xL - L1", &params), "x2^4 + xL - L1");
        let p = Presentation::from_toml_str(SRC).unwrap();
        assert_eq!(p.ideal[3], "x1*x3^2 - x2^4");
        let a = p.build().unwrap();
        assert!(a.is_local());
        assert_eq!(p.registered_ideals(&a).unwrap().len(), 1);
    }

    #[test]
    fn errors_name_the_stage() {
        let bad = SRC.replace("L = 4", "x1 = 4");
        assert_eq!(
            Presentation::from_toml_str(&bad),
            Err(PresentationError::ParamClash("x1".into()))
        );
        let bad = SRC.replace("\"Q\"", "\"F4\"");
        assert!(matches!(
            Presentation::from_toml_str(&bad),
            Err(PresentationError::Field(_))
        ));
        let bad = SRC.replace("x1*x2\"", "x1 x2\"");
        let err = Presentation::from_toml_str(&bad).unwrap().build().unwrap_err();
        assert!(err.to_string().starts_with("in ideal[0]"), "{err}");
        assert!(matches!(
            Presentation::from_toml_str("field = 3"),
            Err(PresentationError::Format(_))
        ));
        let p = Presentation::from_toml_str(SRC).unwrap();
        let a = p.build().unwrap();
        assert!(matches!(
            p.registered_ideal(&a, "nope"),
            Err(BuildError::Presentation(PresentationError::UnknownIdeal(_)))
        ));
    }
}
