//! The JSON code document: one self-contained file describing a tower and
//! a generator matrix.
//!
//! ```json
//! {"tower": {"characteristic": 2, "base_degree": 1, "extension_modulus": [1,1,1],
//!            "generator_name": "w"},
//!  "length": 2, "generators": [["1", "w"]]}
//! ```
//!
//! Moduli are low-to-high coefficient lists over the base. Base coefficients
//! are integers or `"a/b"` strings; over GF(p^a) with `a > 1` an integer is
//! the element code `sum_i c_i p^i`. Elements are polynomial strings in the
//! generator name.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::tower::format_poly;
use crate::field::{BaseField, BaseFieldDescriptor, ExtensionTower, Field, GaloisField, Rationals};
use crate::support::LinearCode;

/// A base-field coefficient in a modulus list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Int(i64),
    Text(String),
}

impl Coefficient {
    fn text(&self) -> String {
        match self {
            Coefficient::Int(i) => i.to_string(),
            Coefficient::Text(s) => s.clone(),
        }
    }

    /// An integer when `s` parses as one, otherwise the text itself.
    pub fn canonical(s: String) -> Self {
        match s.parse::<i64>() {
            Ok(i) => Coefficient::Int(i),
            Err(_) => Coefficient::Text(s),
        }
    }
}

fn default_degree() -> u32 {
    1
}

fn default_name() -> String {
    "w".into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerDoc {
    pub characteristic: u64,
    #[serde(default = "default_degree")]
    pub base_degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_modulus: Option<Vec<u64>>,
    pub extension_modulus: Vec<Coefficient>,
    #[serde(default = "default_name")]
    pub generator_name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDocument {
    pub tower: TowerDoc,
    pub length: usize,
    pub generators: Vec<Vec<String>>,
}

/// A tower over one of the shipped base fields.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyTower {
    Finite(Arc<ExtensionTower<GaloisField>>),
    Rational(Arc<ExtensionTower<Rationals>>),
}

/// A code over one of the shipped base fields.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyCode {
    Finite(LinearCode<GaloisField>),
    Rational(LinearCode<Rationals>),
}

/// Run `$body` with `$c` bound to the concrete code inside an [`AnyCode`].
#[macro_export]
macro_rules! with_code {
    ($any:expr, $c:ident => $body:expr) => {
        match $any {
            $crate::document::AnyCode::Finite($c) => $body,
            $crate::document::AnyCode::Rational($c) => $body,
        }
    };
}

/// Run `$body` with `$t` bound to the concrete tower inside an [`AnyTower`].
#[macro_export]
macro_rules! with_tower {
    ($any:expr, $t:ident => $body:expr) => {
        match $any {
            $crate::document::AnyTower::Finite($t) => $body,
            $crate::document::AnyTower::Rational($t) => $body,
        }
    };
}

fn parse_modulus<F: BaseField>(base: &F, coeffs: &[Coefficient]) -> Result<Vec<F::Elem>> {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            base.parse_elem(&c.text())
                .map_err(|e| Error::parse(format!("tower.extension_modulus[{i}]"), e.to_string()))
        })
        .collect()
}

/// Validate a base field and modulus and build the tower.
pub fn make_tower(
    base: &BaseFieldDescriptor,
    modulus: &[Coefficient],
    generator_name: &str,
) -> Result<AnyTower> {
    if base.characteristic == 0 {
        if base.base_degree != 1 || base.base_modulus.is_some() {
            return Err(Error::parse(
                "tower",
                "characteristic 0 requires base_degree 1 and no base_modulus",
            ));
        }
        let q = Rationals::new();
        let f = parse_modulus(&q, modulus)?;
        return Ok(AnyTower::Rational(Arc::new(ExtensionTower::new(
            q,
            f,
            generator_name,
        )?)));
    }
    let k = GaloisField::from_descriptor(base)?;
    let f = parse_modulus(&k, modulus)?;
    Ok(AnyTower::Finite(Arc::new(ExtensionTower::new(
        k,
        f,
        generator_name,
    )?)))
}

impl TowerDoc {
    pub fn descriptor(&self) -> BaseFieldDescriptor {
        BaseFieldDescriptor {
            characteristic: self.characteristic,
            base_degree: self.base_degree,
            base_modulus: self.base_modulus.clone(),
        }
    }

    pub fn build(&self) -> Result<AnyTower> {
        make_tower(
            &self.descriptor(),
            &self.extension_modulus,
            &self.generator_name,
        )
    }

    pub fn from_tower<F: BaseField>(tower: &ExtensionTower<F>) -> Self {
        let d = tower.base().descriptor();
        TowerDoc {
            characteristic: d.characteristic,
            base_degree: d.base_degree,
            base_modulus: d.base_modulus,
            extension_modulus: tower
                .modulus()
                .iter()
                .map(|c| Coefficient::canonical(tower.base().format_elem(c)))
                .collect(),
            generator_name: tower.generator_name().to_string(),
        }
    }
}

/// Human-readable tower name such as `GF(2)[w]/(w^2+w+1)`.
pub fn describe_tower<F: BaseField>(tower: &ExtensionTower<F>) -> String {
    let d = tower.base().descriptor();
    let base = match (d.characteristic, d.base_degree) {
        (0, _) => "Q".to_string(),
        (p, 1) => format!("GF({p})"),
        (p, a) => format!("GF({p}^{a})"),
    };
    let name = tower.generator_name();
    format!(
        "{base}[{name}]/({})",
        format_poly(tower.base(), tower.modulus(), name)
    )
}

fn build_code<F: BaseField>(
    tower: Arc<ExtensionTower<F>>,
    doc: &CodeDocument,
) -> Result<LinearCode<F>> {
    let n = doc.length;
    let mut rows = Vec::with_capacity(doc.generators.len());
    for (i, row) in doc.generators.iter().enumerate() {
        if row.len() != n {
            return Err(Error::RowLengthMismatch {
                row: i,
                expected: n,
                found: row.len(),
            });
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, s)| {
                tower.parse_elem(s).map_err(|e| match e {
                    Error::UnknownSymbol(_) => e,
                    other => Error::parse(format!("generators[{i}][{j}]"), other.to_string()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(parsed);
    }
    LinearCode::new(tower, n, rows)
}

impl CodeDocument {
    /// The canonical document of a code: reduced generators and canonical
    /// element strings.
    pub fn from_code<F: BaseField>(code: &LinearCode<F>) -> Self {
        let tower = code.tower();
        CodeDocument {
            tower: TowerDoc::from_tower(tower),
            length: code.length(),
            generators: code
                .basis()
                .iter()
                .map(|row| row.iter().map(|x| tower.format_elem(x)).collect())
                .collect(),
        }
    }

    pub fn from_any(code: &AnyCode) -> Self {
        with_code!(code, c => CodeDocument::from_code(c))
    }

    pub fn to_code(&self) -> Result<AnyCode> {
        match self.tower.build()? {
            AnyTower::Finite(t) => build_code(t, self).map(AnyCode::Finite),
            AnyTower::Rational(t) => build_code(t, self).map(AnyCode::Rational),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

/// Parse and validate a code document, returning the canonicalized code.
pub fn parse_code_file(text: &str) -> Result<AnyCode> {
    let doc: CodeDocument = serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    doc.to_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const GF4_SAMPLE: &str = r#"{"tower": {"characteristic": 2, "base_degree": 1, "extension_modulus": [1,1,1], "generator_name": "w"}, "length": 2, "generators": [["1", "w"]]}"#;

    #[test]
    fn sample_document() {
        let AnyCode::Finite(code) = parse_code_file(GF4_SAMPLE).unwrap() else {
            panic!("finite tower expected")
        };
        assert_eq!((code.length(), code.dim()), (2, 1));
        let t = code.tower();
        assert_eq!(code.basis()[0], vec![t.one(), t.generator()]);
        assert_eq!(describe_tower(t), "GF(2)[w]/(w^2+w+1)");
    }

    #[test]
    fn row_length_mismatch() {
        let text = GF4_SAMPLE.replace(r#"[["1", "w"]]"#, r#"[["1", "w", "0"]]"#);
        assert_eq!(
            parse_code_file(&text).unwrap_err(),
            Error::RowLengthMismatch {
                row: 0,
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn reducible_modulus() {
        let text = GF4_SAMPLE.replace("[1,1,1]", "[1,0,1]");
        assert_eq!(parse_code_file(&text).unwrap_err(), Error::NotIrreducible);
    }

    #[test]
    fn unknown_symbol_and_malformed_json() {
        let text = GF4_SAMPLE.replace(r#""w"]]"#, r#""x"]]"#);
        assert_eq!(
            parse_code_file(&text).unwrap_err(),
            Error::UnknownSymbol("x".into())
        );
        let err = parse_code_file("{\"tower\": 3}").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err:?}");
        let err = parse_code_file(&GF4_SAMPLE.replace("\"length\"", "\"len\"")).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn rational_document_roundtrip() {
        let text = r#"{"tower": {"characteristic": 0, "extension_modulus": ["-2", 0, 0, 1], "generator_name": "t"},
                       "length": 3, "generators": [["2", "2t", "1/2*t^2"], ["0", "1/2", "t"]]}"#;
        let code = parse_code_file(text).unwrap();
        let doc = CodeDocument::from_any(&code);
        assert_eq!(doc.tower.extension_modulus[0], Coefficient::Int(-2));
        let again = parse_code_file(&doc.to_json()).unwrap();
        assert_eq!(again, code);
        assert_eq!(CodeDocument::from_any(&again), doc);
    }

    #[test]
    fn characteristic_zero_rejects_base_degree() {
        let text = r#"{"tower": {"characteristic": 0, "base_degree": 2, "extension_modulus": [1, 0, 1]}, "length": 1, "generators": []}"#;
        assert!(matches!(parse_code_file(text), Err(Error::Parse { .. })));
        let text = r#"{"tower": {"characteristic": 6, "extension_modulus": [1, 1]}, "length": 1, "generators": []}"#;
        assert_eq!(parse_code_file(text).unwrap_err(), Error::BadBase(6));
    }
}
