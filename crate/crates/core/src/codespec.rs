//! JSON code specifications and the plain-text sequence format.
//!
//! A code spec looks like
//!
//! ```json
//! {"field":{"p":2,"n":2,"modulus":[1,1,1],"theta_r":1},
//!  "k":1,"n":2,"module_side":"left","G":[[[1,2],[2,3]]]}
//! ```
//!
//! where each polynomial entry lists element integers in ascending powers of
//! `D`. Sequences are written one block per line, symbols separated by
//! whitespace.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{CodeError, SkewConvCode};
use crate::field::{Elem, FiniteField};
use crate::sequence::Sequence;
use crate::skewpoly::SkewPolyMatrix;
use crate::skewtrellis::SkewTrellisCode;
use crate::trellis::{Trellis, TrellisError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("invalid code spec: {0}")]
    Json(String),
    #[error("G has {rows}x{cols} entries but k = {k}, n = {n}")]
    Shape {
        rows: usize,
        cols: usize,
        k: usize,
        n: usize,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleSide {
    #[default]
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    #[serde(default)]
    pub theta_r: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpec {
    pub field: FieldSpec,
    pub k: usize,
    pub n: usize,
    #[serde(default)]
    pub module_side: ModuleSide,
    #[serde(rename = "G")]
    pub g: Vec<Vec<Vec<u32>>>,
}

impl CodeSpec {
    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        serde_json::from_str(text).map_err(|e| SpecError::Json(e.to_string()))
    }

    /// Canonical pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn build_field(&self) -> Result<Arc<FiniteField>, crate::Error> {
        let f = &self.field;
        Ok(Arc::new(FiniteField::new(
            f.p,
            f.n,
            f.modulus.clone(),
            f.theta_r,
        )?))
    }

    pub fn build(&self) -> Result<AnyCode, crate::Error> {
        let rows = self.g.len();
        let cols = self.g.first().map_or(0, Vec::len);
        if rows != self.k || cols != self.n || self.g.iter().any(|r| r.len() != self.n) {
            return Err(SpecError::Shape {
                rows,
                cols,
                k: self.k,
                n: self.n,
            }
            .into());
        }
        let field = self.build_field()?;
        let g = SkewPolyMatrix::from_nested(field, &self.g)?;
        Ok(match self.module_side {
            ModuleSide::Left => AnyCode::Left(SkewConvCode::new(g)?),
            ModuleSide::Right => AnyCode::Right(SkewTrellisCode::new(g)?),
        })
    }

    /// Spec of an existing code; the modulus is always spelled out.
    pub fn from_code(code: &AnyCode) -> CodeSpec {
        let f = code.field();
        CodeSpec {
            field: FieldSpec {
                p: f.characteristic(),
                n: f.degree(),
                modulus: Some(f.modulus().to_vec()),
                theta_r: f.theta_r(),
            },
            k: code.k(),
            n: code.n(),
            module_side: code.side(),
            g: code.generator().to_nested(),
        }
    }
}

/// A left (skew convolutional) or right (skew trellis) code.
#[derive(Clone, Debug)]
pub enum AnyCode {
    Left(SkewConvCode),
    Right(SkewTrellisCode),
}

impl AnyCode {
    pub fn side(&self) -> ModuleSide {
        match self {
            AnyCode::Left(_) => ModuleSide::Left,
            AnyCode::Right(_) => ModuleSide::Right,
        }
    }

    pub fn generator(&self) -> &SkewPolyMatrix {
        match self {
            AnyCode::Left(c) => c.generator(),
            AnyCode::Right(c) => c.generator(),
        }
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        self.generator().field()
    }

    pub fn k(&self) -> usize {
        self.generator().rows()
    }

    pub fn n(&self) -> usize {
        self.generator().cols()
    }

    pub fn memory(&self) -> usize {
        match self {
            AnyCode::Left(c) => c.memory(),
            AnyCode::Right(c) => c.memory(),
        }
    }

    pub fn external_degree(&self) -> usize {
        match self {
            AnyCode::Left(c) => c.external_degree(),
            AnyCode::Right(c) => c.external_degree(),
        }
    }

    /// Period of the encoder coefficients; 1 for right codes.
    pub fn period(&self) -> usize {
        match self {
            AnyCode::Left(c) => c.period(),
            AnyCode::Right(_) => 1,
        }
    }

    pub fn encode(&self, u: &Sequence, terminate: bool) -> Result<Sequence, CodeError> {
        match self {
            AnyCode::Left(c) => c.encode(u, terminate),
            AnyCode::Right(c) => c.encode_right(u, terminate),
        }
    }

    pub fn trellis(&self) -> Result<Trellis, TrellisError> {
        match self {
            AnyCode::Left(c) => Trellis::from_code(c),
            AnyCode::Right(c) => c.build_trellis_right(),
        }
    }
}

/// Parses one block per line. Blank lines are skipped; each other line must
/// hold exactly `block_len` field elements.
pub fn parse_sequence(
    text: &str,
    block_len: usize,
    field: &FiniteField,
) -> Result<Sequence, SpecError> {
    let mut symbols = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens.len() != block_len {
            return Err(SpecError::Parse {
                line: line_no,
                message: format!("expected {block_len} symbols, found {}", tokens.len()),
            });
        }
        for tok in tokens {
            let value: u32 = tok.parse().map_err(|_| SpecError::Parse {
                line: line_no,
                message: format!("not a field element: {tok:?}"),
            })?;
            if !field.contains(Elem(value)) {
                return Err(SpecError::Parse {
                    line: line_no,
                    message: format!("{value} is outside the field of order {}", field.size()),
                });
            }
            symbols.push(Elem(value));
        }
    }
    Ok(Sequence::new(block_len, symbols).expect("every line holds one block"))
}

/// One block per line, symbols separated by single spaces. With `pretty`,
/// symbols are written as powers of the primitive element.
pub fn format_sequence(seq: &Sequence, field: &FiniteField, pretty: bool) -> String {
    let mut out = String::new();
    for block in seq.blocks() {
        let line: Vec<String> = block
            .iter()
            .map(|&e| {
                if pretty {
                    field.pretty(e)
                } else {
                    e.0.to_string()
                }
            })
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"{"field":{"p":2,"n":2,"modulus":[1,1,1],"theta_r":1},"k":1,"n":2,"module_side":"left","G":[[[1,2],[2,3]]]}"#;

    #[test]
    fn round_trip_is_bit_exact() {
        let spec = CodeSpec::from_json(EXAMPLE).unwrap();
        let text = spec.to_json();
        let again = CodeSpec::from_json(&text).unwrap();
        assert_eq!(again, spec);
        assert_eq!(again.to_json(), text);
        let code = spec.build().unwrap();
        assert_eq!(CodeSpec::from_code(&code), spec);
    }

    #[test]
    fn defaults_are_filled_in() {
        let spec =
            CodeSpec::from_json(r#"{"field":{"p":2,"n":2},"k":1,"n":2,"G":[[[1,2],[2,3]]]}"#)
                .unwrap();
        assert_eq!(spec.module_side, ModuleSide::Left);
        let code = spec.build().unwrap();
        let canon = CodeSpec::from_code(&code);
        assert_eq!(canon.field.modulus, Some(vec![1, 1, 1]));
        assert_eq!(canon.field.theta_r, 0);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(CodeSpec::from_json("{"), Err(SpecError::Json(_))));
        let spec = CodeSpec::from_json(&EXAMPLE.replace("\"k\":1", "\"k\":2")).unwrap();
        assert!(matches!(
            spec.build(),
            Err(crate::Error::Spec(SpecError::Shape { .. }))
        ));
        let spec = CodeSpec::from_json(&EXAMPLE.replace("[1,1,1]", "[1,0,1]")).unwrap();
        assert!(matches!(spec.build(), Err(crate::Error::Field(_))));
        let spec = CodeSpec::from_json(&EXAMPLE.replace("[2,3]]]", "[2,9]]]")).unwrap();
        assert!(spec.build().is_err());
        assert!(CodeSpec::from_json(&EXAMPLE.replace("\"left\"", "\"up\"")).is_err());
    }

    #[test]
    fn right_side_dispatch() {
        let spec = CodeSpec::from_json(&EXAMPLE.replace("left", "right")).unwrap();
        let code = spec.build().unwrap();
        assert_eq!(code.side(), ModuleSide::Right);
        let u = Sequence::from_u32_blocks(&[&[2], &[0]]);
        assert_eq!(
            code.encode(&u, false).unwrap(),
            Sequence::from_u32_blocks(&[&[2, 3], &[1, 2]])
        );
        assert_eq!(code.trellis().unwrap().period(), 1);
    }

    #[test]
    fn sequence_text() {
        let f = FiniteField::binary(2, 1).unwrap();
        let s = parse_sequence("1 2\n\n2 3\n", 2, &f).unwrap();
        assert_eq!(s, Sequence::from_u32_blocks(&[&[1, 2], &[2, 3]]));
        assert_eq!(format_sequence(&s, &f, false), "1 2\n2 3\n");
        assert_eq!(format_sequence(&s, &f, true), "1 a\na a^2\n");
        assert!(parse_sequence("", 2, &f).unwrap().is_empty());
        assert_eq!(
            parse_sequence("1 2\n1\n", 2, &f),
            Err(SpecError::Parse {
                line: 2,
                message: "expected 2 symbols, found 1".into()
            })
        );
        assert!(matches!(
            parse_sequence("1 x\n", 2, &f),
            Err(SpecError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_sequence("0 0\n4 0\n", 2, &f),
            Err(SpecError::Parse { line: 2, .. })
        ));
    }
}
