//! The distress nonce codec.
//!
//! `encode` packs an all-ones marker, an identifier and an authentication
//! tag into one integer, embeds it as a curve point and encrypts it; the
//! serialized ciphertext doubles as a TLS client nonce. `decode` is total:
//! every wire of the right width yields a `DecodeResult`, so ordinary
//! handshakes flow through untouched. `prg_nonce` is the other branch of
//! the fixed-length function: plain pseudorandom bits.

use crate::curve::{Curve, CurveError, CurvePoint, MulTally};
use crate::meceg;
use crate::profile::ProfileKind;
use crate::wire::NonceWire;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodecError {
    #[error("payload does not fit the layout: {0}")]
    LayoutViolation(String),
    #[error("d = true requires a payload and d = false forbids one")]
    ContractViolation,
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("message point could not be embedded")]
    EmbeddingFailed,
}

/// Bit budget of the encrypted plaintext: marker | id | tag, plus the
/// embedding pad. The four lengths sum to the field bit length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitLayout {
    pub m_d: u32,
    pub m_i: u32,
    pub m_t: u32,
    pub pad_bits: u32,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LayoutError {
    #[error("m_d + m_i + m_t + pad_bits = {got}, need {want}")]
    BadSum { got: u32, want: u32 },
    #[error("all layout fields must be positive")]
    ZeroField,
    #[error("m_d must be at least 8 outside the toy profile")]
    MarkerTooSmall,
}

impl BitLayout {
    pub fn new(m_d: u32, m_i: u32, m_t: u32, pad_bits: u32) -> Self {
        BitLayout {
            m_d,
            m_i,
            m_t,
            pad_bits,
        }
    }

    pub fn payload_bits(&self) -> u32 {
        self.m_d + self.m_i + self.m_t
    }

    pub fn validate(&self, bit_len: u32, kind: ProfileKind) -> Result<(), LayoutError> {
        if self.m_d == 0 || self.m_i == 0 || self.m_t == 0 || self.pad_bits == 0 {
            return Err(LayoutError::ZeroField);
        }
        let got = self.payload_bits() + self.pad_bits;
        if got != bit_len {
            return Err(LayoutError::BadSum { got, want: bit_len });
        }
        if kind != ProfileKind::Toy && self.m_d < 8 {
            return Err(LayoutError::MarkerTooSmall);
        }
        Ok(())
    }

    fn marker(&self) -> BigUint {
        (BigUint::one() << self.m_d) - BigUint::one()
    }
}

/// (id, tag) pair; both are bit strings of the layout's exact widths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistressPayload {
    pub id: BigUint,
    pub tag: BigUint,
}

impl DistressPayload {
    pub fn new(id: BigUint, tag: BigUint) -> Self {
        DistressPayload { id, tag }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeResult {
    NotDistress,
    Distress { id: BigUint, tag: BigUint },
}

impl DecodeResult {
    pub fn is_distress(&self) -> bool {
        matches!(self, DecodeResult::Distress { .. })
    }
}

/// 1^m_d || id || tag as an integer, MSB first.
pub fn pack_payload(layout: &BitLayout, payload: &DistressPayload) -> Result<BigUint, CodecError> {
    if payload.id.bits() > layout.m_i as u64 {
        return Err(CodecError::LayoutViolation(format!(
            "id needs {} bits, layout allows {}",
            payload.id.bits(),
            layout.m_i
        )));
    }
    if payload.tag.bits() > layout.m_t as u64 {
        return Err(CodecError::LayoutViolation(format!(
            "tag needs {} bits, layout allows {}",
            payload.tag.bits(),
            layout.m_t
        )));
    }
    let mut v = layout.marker();
    v = (v << layout.m_i) | &payload.id;
    v = (v << layout.m_t) | &payload.tag;
    Ok(v)
}

/// Inverse of `pack_payload` when the marker matches; `None` otherwise.
pub fn unpack_payload(layout: &BitLayout, r: &BigUint) -> Option<DistressPayload> {
    let marker = r >> (layout.m_i + layout.m_t);
    if marker != layout.marker() {
        return None;
    }
    let mask_i = (BigUint::one() << layout.m_i) - BigUint::one();
    let mask_t = (BigUint::one() << layout.m_t) - BigUint::one();
    Some(DistressPayload {
        id: (r >> layout.m_t) & mask_i,
        tag: r & mask_t,
    })
}

/// Encrypt the packed payload into a nonce-shaped wire. Randomized.
pub fn encode(
    curve: &Curve,
    layout: &BitLayout,
    payload: &DistressPayload,
    pk: &CurvePoint,
    rng: &mut impl Rng,
) -> Result<NonceWire, CodecError> {
    let packed = pack_payload(layout, payload)?;
    let m_point = curve
        .embed_message(&packed, layout.pad_bits)
        .map_err(|_| CodecError::EmbeddingFailed)?;
    let ct = meceg::encrypt(curve, pk, &m_point, rng);
    Ok(meceg::serialize(curve, &ct))
}

/// Deterministic `encode` with a fixed ephemeral k (golden vectors).
pub fn encode_with_k(
    curve: &Curve,
    layout: &BitLayout,
    payload: &DistressPayload,
    pk: &CurvePoint,
    k: &BigUint,
) -> Result<NonceWire, CodecError> {
    let packed = pack_payload(layout, payload)?;
    let m_point = curve
        .embed_message(&packed, layout.pad_bits)
        .map_err(|_| CodecError::EmbeddingFailed)?;
    let ct = meceg::encrypt_with_k(curve, pk, &m_point, k)
        .map_err(|_| CodecError::EmbeddingFailed)?;
    Ok(meceg::serialize(curve, &ct))
}

/// Total decoder: any input of any shape maps to a `DecodeResult`, never an
/// error, so the carrying handshake always proceeds. Exactly one scalar
/// multiplication is spent when the wire deserializes, zero otherwise.
pub fn decode(
    curve: &Curve,
    layout: &BitLayout,
    wire: &NonceWire,
    sk: &BigUint,
    tally: &mut MulTally,
) -> DecodeResult {
    let ct = match meceg::deserialize(curve, wire) {
        Ok(ct) => ct,
        Err(_) => return DecodeResult::NotDistress,
    };
    let m_point = match meceg::decrypt(curve, sk, &ct, tally) {
        Ok(p) => p,
        Err(_) => return DecodeResult::NotDistress,
    };
    let r = match curve.extract_message(&m_point, layout.pad_bits) {
        Ok(r) => r,
        Err(_) => return DecodeResult::NotDistress, // decrypted to the identity
    };
    match unpack_payload(layout, &r) {
        Some(p) => DecodeResult::Distress {
            id: p.id,
            tag: p.tag,
        },
        None => DecodeResult::NotDistress,
    }
}

/// The d = false branch: width pseudorandom bits from a seedable PRG.
pub fn prg_nonce(width: u32, rng: &mut impl Rng) -> NonceWire {
    NonceWire::random(width, rng)
}

/// The fixed-length function: encode when d is true, PRG output otherwise.
/// The payload must be present exactly when d is true.
pub fn f_n(
    curve: &Curve,
    layout: &BitLayout,
    d: bool,
    payload: Option<&DistressPayload>,
    pk: &CurvePoint,
    rng: &mut impl Rng,
) -> Result<NonceWire, CodecError> {
    match (d, payload) {
        (true, Some(p)) => encode(curve, layout, p, pk, rng),
        (false, None) => Ok(prg_nonce(2 * (curve.field().bit_len() + 1), rng)),
        _ => Err(CodecError::ContractViolation),
    }
}
