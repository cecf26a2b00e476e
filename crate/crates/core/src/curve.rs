//! Short-Weierstrass curve arithmetic: the group law, double-and-add scalar
//! multiplication (Jacobian coordinates internally), x-coordinate point
//! compression, and Koblitz try-and-increment message embedding.

use crate::field::{Field, FieldElement, FieldError};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("curve is singular: 4a^3 + 27b^2 = 0")]
    Singular,
    #[error("generator is not on the curve")]
    GeneratorOffCurve,
    #[error("order_hint does not annihilate the generator")]
    BadOrderHint,
    #[error("x-coordinate is not on the curve")]
    NotOnCurve,
    #[error("the point at infinity has no compressed form")]
    CannotCompressIdentity,
    #[error("no on-curve candidate within the padding window")]
    EmbeddingFailed,
    #[error("operation undefined for the point at infinity")]
    InvalidPoint,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A point of E(F_q): either the identity or an affine pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: FieldElement, y: FieldElement },
}

impl CurvePoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&FieldElement> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&FieldElement> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { y, .. } => Some(y),
        }
    }
}

/// x-coordinate plus one bit selecting which square root is y.
/// Sign bit 0 selects the canonical (numerically smaller) root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedPoint {
    pub x: FieldElement,
    pub sign: u8,
}

/// Tally of variable-base scalar multiplications, owned by the caller.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct MulTally {
    pub scalar_muls: u64,
}

/// Curve parameters; operations are pure given this shared state.
#[derive(Debug, Clone)]
pub struct Curve {
    field: Field,
    a: FieldElement,
    b: FieldElement,
    gen: CurvePoint,
    order_hint: Option<BigUint>,
    pad_bits: u32,
}

impl Curve {
    pub fn new(
        field: Field,
        a: FieldElement,
        b: FieldElement,
        gen_x: FieldElement,
        gen_y: FieldElement,
        order_hint: Option<BigUint>,
        pad_bits: u32,
    ) -> Result<Self, CurveError> {
        // nondegeneracy: 4a^3 + 27b^2 != 0
        let a3 = field.mul(&field.square(&a), &a);
        let disc = field.add(
            &field.mul(&field.elem(4u32), &a3),
            &field.mul(&field.elem(27u32), &field.square(&b)),
        );
        if disc.is_zero() {
            return Err(CurveError::Singular);
        }
        let curve = Curve {
            field,
            a,
            b,
            gen: CurvePoint::Affine { x: gen_x, y: gen_y },
            order_hint: None,
            pad_bits,
        };
        if !curve.contains(&curve.gen) {
            return Err(CurveError::GeneratorOffCurve);
        }
        let curve = Curve { order_hint, ..curve };
        if let Some(n) = &curve.order_hint {
            if !curve.scalar_mul(n, &curve.gen).is_infinity() {
                return Err(CurveError::BadOrderHint);
            }
        }
        Ok(curve)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn b(&self) -> &FieldElement {
        &self.b
    }

    pub fn generator(&self) -> &CurvePoint {
        &self.gen
    }

    pub fn order_hint(&self) -> Option<&BigUint> {
        self.order_hint.as_ref()
    }

    pub fn pad_bits(&self) -> u32 {
        self.pad_bits
    }

    /// x^3 + ax + b
    pub fn rhs(&self, x: &FieldElement) -> FieldElement {
        let f = &self.field;
        let x2 = f.square(x);
        let x3 = f.mul(&x2, x);
        f.add(&f.add(&x3, &f.mul(&self.a, x)), &self.b)
    }

    /// True iff x is the x-coordinate of some curve point.
    pub fn is_on_curve_x(&self, x: &FieldElement) -> bool {
        self.field.is_qr(&self.rhs(x))
    }

    /// True iff the point satisfies the curve equation (or is the identity).
    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => self.field.square(y) == self.rhs(x),
        }
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: self.field.neg(y),
            },
        }
    }

    /// Affine group law; doubling and inverse cases handled internally.
    pub fn add(&self, p: &CurvePoint, r: &CurvePoint) -> CurvePoint {
        let f = &self.field;
        let (x1, y1) = match p {
            CurvePoint::Infinity => return r.clone(),
            CurvePoint::Affine { x, y } => (x, y),
        };
        let (x2, y2) = match r {
            CurvePoint::Infinity => return p.clone(),
            CurvePoint::Affine { x, y } => (x, y),
        };
        let lambda = if x1 == x2 {
            if f.add(y1, y2).is_zero() {
                return CurvePoint::Infinity;
            }
            // tangent: (3x^2 + a) / 2y
            let num = f.add(&f.mul(&f.elem(3u32), &f.square(x1)), &self.a);
            let den = f.mul(&f.elem(2u32), y1);
            f.mul(&num, &f.inv(&den).expect("2y != 0 on the doubling branch"))
        } else {
            let num = f.sub(y2, y1);
            let den = f.sub(x2, x1);
            f.mul(&num, &f.inv(&den).expect("x2 != x1 on the chord branch"))
        };
        let x3 = f.sub(&f.sub(&f.square(&lambda), x1), x2);
        let y3 = f.sub(&f.mul(&lambda, &f.sub(x1, &x3)), y1);
        CurvePoint::Affine { x: x3, y: y3 }
    }

    pub fn sub(&self, p: &CurvePoint, r: &CurvePoint) -> CurvePoint {
        self.add(p, &self.neg(r))
    }

    /// k * p by double-and-add over Jacobian coordinates.
    pub fn scalar_mul(&self, k: &BigUint, p: &CurvePoint) -> CurvePoint {
        let (px, py) = match p {
            CurvePoint::Infinity => return CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => (x, y),
        };
        if k.is_zero() {
            return CurvePoint::Infinity;
        }
        let mut acc: Option<Jacobian> = None;
        let nbits = k.bits();
        for i in (0..nbits).rev() {
            if let Some(j) = acc.as_mut() {
                *j = self.jac_double(j);
            }
            if k.bit(i) {
                acc = Some(match acc {
                    None => Jacobian::from_affine(px.clone(), py.clone()),
                    Some(j) => self.jac_add_affine(&j, px, py),
                });
            }
        }
        match acc {
            None => CurvePoint::Infinity,
            Some(j) => self.jac_to_affine(&j),
        }
    }

    /// Same as `scalar_mul`, bumping the caller's tally by one.
    pub fn scalar_mul_counted(
        &self,
        k: &BigUint,
        p: &CurvePoint,
        tally: &mut MulTally,
    ) -> CurvePoint {
        tally.scalar_muls += 1;
        self.scalar_mul(k, p)
    }

    fn jac_double(&self, p: &Jacobian) -> Jacobian {
        let f = &self.field;
        if p.y.is_zero() || p.z.is_zero() {
            return Jacobian::infinity(f);
        }
        let y2 = f.square(&p.y);
        let s = f.mul(&f.elem(4u32), &f.mul(&p.x, &y2));
        let z2 = f.square(&p.z);
        let m = f.add(
            &f.mul(&f.elem(3u32), &f.square(&p.x)),
            &f.mul(&self.a, &f.square(&z2)),
        );
        let x3 = f.sub(&f.square(&m), &f.add(&s, &s));
        let y3 = f.sub(
            &f.mul(&m, &f.sub(&s, &x3)),
            &f.mul(&f.elem(8u32), &f.square(&y2)),
        );
        let z3 = f.mul(&f.elem(2u32), &f.mul(&p.y, &p.z));
        Jacobian { x: x3, y: y3, z: z3 }
    }

    fn jac_add_affine(&self, p: &Jacobian, qx: &FieldElement, qy: &FieldElement) -> Jacobian {
        let f = &self.field;
        if p.z.is_zero() {
            return Jacobian::from_affine(qx.clone(), qy.clone());
        }
        let z1z1 = f.square(&p.z);
        let u2 = f.mul(qx, &z1z1);
        let s2 = f.mul(qy, &f.mul(&p.z, &z1z1));
        if u2 == p.x {
            if s2 == p.y {
                return self.jac_double(p);
            }
            return Jacobian::infinity(f);
        }
        let h = f.sub(&u2, &p.x);
        let hh = f.square(&h);
        let hhh = f.mul(&h, &hh);
        let r = f.sub(&s2, &p.y);
        let v = f.mul(&p.x, &hh);
        let x3 = f.sub(&f.sub(&f.square(&r), &hhh), &f.add(&v, &v));
        let y3 = f.sub(&f.mul(&r, &f.sub(&v, &x3)), &f.mul(&p.y, &hhh));
        let z3 = f.mul(&p.z, &h);
        Jacobian { x: x3, y: y3, z: z3 }
    }

    fn jac_to_affine(&self, p: &Jacobian) -> CurvePoint {
        let f = &self.field;
        if p.z.is_zero() {
            return CurvePoint::Infinity;
        }
        let zinv = f.inv(&p.z).expect("nonzero z");
        let zinv2 = f.square(&zinv);
        let x = f.mul(&p.x, &zinv2);
        let y = f.mul(&p.y, &f.mul(&zinv2, &zinv));
        CurvePoint::Affine { x, y }
    }

    pub fn compress(&self, p: &CurvePoint) -> Result<CompressedPoint, CurveError> {
        let (x, y) = match p {
            CurvePoint::Infinity => return Err(CurveError::CannotCompressIdentity),
            CurvePoint::Affine { x, y } => (x, y),
        };
        let canonical = self.field.sqrt(&self.rhs(x))?;
        let sign = if *y == canonical { 0 } else { 1 };
        Ok(CompressedPoint { x: x.clone(), sign })
    }

    pub fn decompress(&self, c: &CompressedPoint) -> Result<CurvePoint, CurveError> {
        let rhs = self.rhs(&c.x);
        let canonical = self.field.sqrt(&rhs).map_err(|_| CurveError::NotOnCurve)?;
        let y = if c.sign == 0 {
            canonical
        } else {
            self.field.neg(&canonical)
        };
        Ok(CurvePoint::Affine { x: c.x.clone(), y })
    }

    /// Koblitz try-and-increment: x = (m << pad_bits) + t for the smallest t
    /// with x < q and x on the curve; y is the canonical root.
    pub fn embed_message(&self, m: &BigUint, pad_bits: u32) -> Result<CurvePoint, CurveError> {
        let base = m << pad_bits;
        let mut t = BigUint::zero();
        let limit = BigUint::one() << pad_bits;
        while t < limit {
            let xv = &base + &t;
            if &xv < self.field.modulus() {
                let x = self.field.elem(xv);
                if self.is_on_curve_x(&x) {
                    let y = self.field.sqrt(&self.rhs(&x))?;
                    return Ok(CurvePoint::Affine { x, y });
                }
            }
            t += BigUint::one();
        }
        Err(CurveError::EmbeddingFailed)
    }

    /// Inverse of `embed_message`: drop the padding bits of x.
    pub fn extract_message(&self, p: &CurvePoint, pad_bits: u32) -> Result<BigUint, CurveError> {
        match p {
            CurvePoint::Infinity => Err(CurveError::InvalidPoint),
            CurvePoint::Affine { x, .. } => Ok(x.value() >> pad_bits),
        }
    }

    /// Fixed-width encoding of a finite point: x big-endian plus a sign byte.
    pub fn encode_point(&self, p: &CurvePoint) -> Result<Vec<u8>, CurveError> {
        let c = self.compress(p)?;
        let width = (self.field.bit_len() as usize + 7) / 8;
        let mut out = to_fixed_be(c.x.value(), width);
        out.push(c.sign);
        Ok(out)
    }

    pub fn decode_point(&self, bytes: &[u8]) -> Result<CurvePoint, CurveError> {
        let width = (self.field.bit_len() as usize + 7) / 8;
        if bytes.len() != width + 1 || bytes[width] > 1 {
            return Err(CurveError::NotOnCurve);
        }
        let x = self
            .field
            .elem_checked(BigUint::from_bytes_be(&bytes[..width]))
            .map_err(|_| CurveError::NotOnCurve)?;
        self.decompress(&CompressedPoint {
            x,
            sign: bytes[width],
        })
    }
}

pub(crate) fn to_fixed_be(v: &BigUint, width: usize) -> Vec<u8> {
    let raw = v.to_bytes_be();
    assert!(raw.len() <= width, "value wider than target encoding");
    let mut out = vec![0u8; width - raw.len()];
    out.extend_from_slice(&raw);
    out
}

struct Jacobian {
    x: FieldElement,
    y: FieldElement,
    z: FieldElement,
}

impl Jacobian {
    fn from_affine(x: FieldElement, y: FieldElement) -> Self {
        Jacobian {
            x,
            y,
            z: FieldElement::from_raw(BigUint::one()),
        }
    }

    fn infinity(f: &Field) -> Self {
        Jacobian {
            x: f.one(),
            y: f.one(),
            z: f.zero(),
        }
    }
}
