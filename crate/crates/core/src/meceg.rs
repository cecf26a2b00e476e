//! Modified Elliptic Curve El Gamal: ciphertexts are a pair of compressed
//! points, serialized bit-exactly into a 2*(bit_len+1)-bit wire (256 bits on
//! the production profile).

use crate::curve::{CompressedPoint, Curve, CurveError, CurvePoint, MulTally};
use crate::wire::NonceWire;
use num_bigint::{BigUint, RandBigInt};
use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum McegError {
    #[error("x slot is not a reduced field element")]
    InvalidFieldElement,
    #[error("x slot is not on the curve")]
    NotOnCurve,
    #[error("wire has the wrong width")]
    BadWireWidth,
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// El Gamal key pair; pk = sk * gen.
#[derive(Debug, Clone)]
pub struct KeyPair {
    pub sk: BigUint,
    pub pk: CurvePoint,
}

/// (c1, c2) = (compress(k*gen), compress(M + k*pk)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ciphertext {
    pub c1: CompressedPoint,
    pub c2: CompressedPoint,
}

/// Uniform scalar in [1, 2^bit_len).
pub fn sample_scalar(curve: &Curve, rng: &mut impl Rng) -> BigUint {
    let bits = curve.field().bit_len() as u64;
    loop {
        let k = rng.gen_biguint(bits);
        if !k.is_zero() {
            return k;
        }
    }
}

pub fn keygen(curve: &Curve, rng: &mut impl Rng) -> KeyPair {
    loop {
        let sk = sample_scalar(curve, rng);
        let pk = curve.scalar_mul(&sk, curve.generator());
        if !pk.is_infinity() {
            return KeyPair { sk, pk };
        }
    }
}

/// Randomized encryption; degenerate intermediate points (probability about
/// 2/q) are handled by resampling k, so the operation is total.
pub fn encrypt(
    curve: &Curve,
    pk: &CurvePoint,
    m_point: &CurvePoint,
    rng: &mut impl Rng,
) -> Ciphertext {
    loop {
        let k = sample_scalar(curve, rng);
        if let Ok(ct) = encrypt_with_k(curve, pk, m_point, &k) {
            return ct;
        }
    }
}

/// Deterministic encryption with a caller-chosen ephemeral k (test hook and
/// golden-vector generation). Fails if either ciphertext point degenerates
/// to the identity.
pub fn encrypt_with_k(
    curve: &Curve,
    pk: &CurvePoint,
    m_point: &CurvePoint,
    k: &BigUint,
) -> Result<Ciphertext, McegError> {
    let c1_point = curve.scalar_mul(k, curve.generator());
    let shared = curve.scalar_mul(k, pk);
    let c2_point = curve.add(m_point, &shared);
    let c1 = curve.compress(&c1_point)?;
    let c2 = curve.compress(&c2_point)?;
    Ok(Ciphertext { c1, c2 })
}

/// M = decompress(c2) - sk * decompress(c1).
///
/// Exactly one variable-base scalar multiplication, recorded in the
/// caller-provided tally.
pub fn decrypt(
    curve: &Curve,
    sk: &BigUint,
    ct: &Ciphertext,
    tally: &mut MulTally,
) -> Result<CurvePoint, McegError> {
    let p1 = curve.decompress(&ct.c1).map_err(|_| McegError::NotOnCurve)?;
    let p2 = curve.decompress(&ct.c2).map_err(|_| McegError::NotOnCurve)?;
    let shared = curve.scalar_mul_counted(sk, &p1, tally);
    Ok(curve.sub(&p2, &shared))
}

/// MSB-first layout: x(c1) | sign(c1) | x(c2) | sign(c2), each x exactly
/// bit_len bits big-endian.
pub fn serialize(curve: &Curve, ct: &Ciphertext) -> NonceWire {
    let bits = curve.field().bit_len();
    let mut v = ct.c1.x.value().clone();
    v = (v << 1u32) | BigUint::from(ct.c1.sign);
    v = (v << bits) | ct.c2.x.value().clone();
    v = (v << 1u32) | BigUint::from(ct.c2.sign);
    NonceWire::from_value(2 * (bits + 1), v).expect("slots fit by construction")
}

/// Structure check without computing square roots: both x slots reduced
/// and on the curve.
pub fn wire_has_point_structure(curve: &Curve, wire: &NonceWire) -> bool {
    split_slots(curve, wire).is_ok()
}

fn split_slots(
    curve: &Curve,
    wire: &NonceWire,
) -> Result<(CompressedPoint, CompressedPoint), McegError> {
    let bits = curve.field().bit_len();
    if wire.width() != 2 * (bits + 1) {
        return Err(McegError::BadWireWidth);
    }
    let field = curve.field();
    let x1 = field
        .elem_checked(wire.bits(0, bits))
        .map_err(|_| McegError::InvalidFieldElement)?;
    let x2 = field
        .elem_checked(wire.bits(bits + 1, bits))
        .map_err(|_| McegError::InvalidFieldElement)?;
    if !curve.is_on_curve_x(&x1) || !curve.is_on_curve_x(&x2) {
        return Err(McegError::NotOnCurve);
    }
    let s1 = u8::try_from(wire.bits(bits, 1)).unwrap_or(1);
    let s2 = u8::try_from(wire.bits(2 * bits + 1, 1)).unwrap_or(1);
    Ok((
        CompressedPoint { x: x1, sign: s1 },
        CompressedPoint { x: x2, sign: s2 },
    ))
}

/// Rejects out-of-range x slots rather than reducing them, so the map from
/// wires to ciphertexts stays injective.
pub fn deserialize(curve: &Curve, wire: &NonceWire) -> Result<Ciphertext, McegError> {
    let (c1, c2) = split_slots(curve, wire)?;
    Ok(Ciphertext { c1, c2 })
}
