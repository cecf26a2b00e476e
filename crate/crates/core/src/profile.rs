//! Parameter profiles: curve constants plus the nonce bit layout, loaded
//! from JSON files with decimal-string integers.
//!
//! Two profiles ship with the crate: `production` (127-bit Mersenne field,
//! 256-bit wires) and `toy` (13-bit field, exhaustively checkable).

use crate::codec::BitLayout;
use crate::curve::{Curve, CurveError};
use crate::field::{Field, FieldError};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const TOY_PARAMS_JSON: &str = include_str!("../params/toy.json");
pub const PRODUCTION_PARAMS_JSON: &str = include_str!("../params/production.json");

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("malformed parameter file: {0}")]
    Parse(String),
    #[error("bad integer field {field}: {msg}")]
    BadInteger { field: &'static str, msg: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("bit layout invalid: {0}")]
    Layout(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    Toy,
    Production,
}

impl std::str::FromStr for ProfileKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "toy" => Ok(ProfileKind::Toy),
            "production" => Ok(ProfileKind::Production),
            other => Err(format!("unknown profile {other:?} (toy|production)")),
        }
    }
}

/// On-disk parameter file: decimal-string integers.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamsFile {
    pub q: String,
    pub a: String,
    pub b: String,
    pub gen_x: String,
    pub gen_y: String,
    #[serde(default)]
    pub order_hint: Option<String>,
    pub pad_bits: u32,
    pub m_d: u32,
    pub m_i: u32,
    pub m_t: u32,
}

/// A fully validated profile. All operations downstream are pure functions
/// of this shared, read-only state.
#[derive(Debug, Clone)]
pub struct Profile {
    pub kind: ProfileKind,
    pub curve: Curve,
    pub layout: BitLayout,
}

impl Profile {
    pub fn toy() -> Profile {
        Profile::from_json(TOY_PARAMS_JSON, ProfileKind::Toy).expect("embedded toy params")
    }

    pub fn production() -> Profile {
        Profile::from_json(PRODUCTION_PARAMS_JSON, ProfileKind::Production)
            .expect("embedded production params")
    }

    pub fn by_kind(kind: ProfileKind) -> Profile {
        match kind {
            ProfileKind::Toy => Profile::toy(),
            ProfileKind::Production => Profile::production(),
        }
    }

    /// Parse and validate a parameter file. This is the whole of
    /// `validate-params`: every invariant is checked here.
    pub fn from_json(text: &str, kind: ProfileKind) -> Result<Profile, ProfileError> {
        let file: ParamsFile =
            serde_json::from_str(text).map_err(|e| ProfileError::Parse(e.to_string()))?;
        Profile::from_params(&file, kind)
    }

    pub fn from_params(file: &ParamsFile, kind: ProfileKind) -> Result<Profile, ProfileError> {
        let q = parse_int("q", &file.q)?;
        let field = Field::new(q)?;
        let a = field.elem(parse_int("a", &file.a)?);
        let b = field.elem(parse_int("b", &file.b)?);
        let gen_x = field
            .elem_checked(parse_int("gen_x", &file.gen_x)?)
            .map_err(|e| ProfileError::BadInteger {
                field: "gen_x",
                msg: e.to_string(),
            })?;
        let gen_y = field
            .elem_checked(parse_int("gen_y", &file.gen_y)?)
            .map_err(|e| ProfileError::BadInteger {
                field: "gen_y",
                msg: e.to_string(),
            })?;
        let order_hint = match &file.order_hint {
            None => None,
            Some(s) => Some(parse_int("order_hint", s)?),
        };
        let bit_len = field.bit_len();
        let curve = Curve::new(field, a, b, gen_x, gen_y, order_hint, file.pad_bits)?;
        let layout = BitLayout::new(file.m_d, file.m_i, file.m_t, file.pad_bits);
        layout
            .validate(bit_len, kind)
            .map_err(|e| ProfileError::Layout(e.to_string()))?;
        Ok(Profile {
            kind,
            curve,
            layout,
        })
    }

    pub fn bit_len(&self) -> u32 {
        self.curve.field().bit_len()
    }

    /// Serialized ciphertext width: 2 * (bit_len + 1). 256 on production.
    pub fn wire_bits(&self) -> u32 {
        2 * (self.bit_len() + 1)
    }

    /// Symmetric key length in bytes: 128-bit toy, 256-bit production.
    pub fn sym_key_len(&self) -> usize {
        match self.kind {
            ProfileKind::Toy => 16,
            ProfileKind::Production => 32,
        }
    }
}

fn parse_int(field: &'static str, s: &str) -> Result<BigUint, ProfileError> {
    s.parse::<BigUint>().map_err(|e| ProfileError::BadInteger {
        field,
        msg: e.to_string(),
    })
}
