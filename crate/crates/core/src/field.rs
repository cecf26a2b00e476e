//! Prime-field arithmetic over an arbitrary modulus q with q = 3 (mod 4).
//!
//! The same code path serves the 127-bit production field and tiny
//! brute-forceable test fields; Mersenne moduli get a shift-and-fold
//! reduction, everything else falls back to division.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus is not prime")]
    NotPrime,
    #[error("modulus must be 3 mod 4")]
    BadResidueClass,
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is not a quadratic residue")]
    NotASquare,
    #[error("value out of range for the field")]
    OutOfRange,
}

/// An element of F_q, always reduced to [0, q).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(BigUint);

impl FieldElement {
    pub(crate) fn from_raw(v: BigUint) -> FieldElement {
        FieldElement(v)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_value(self) -> BigUint {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Reduction {
    /// q = 2^k - 1: reduce by folding the high bits back onto the low bits.
    Mersenne { bits: u64, mask: BigUint },
    Generic,
}

/// Validated field parameters: the prime modulus and its bit length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldParams {
    q: BigUint,
    bit_len: u32,
}

impl FieldParams {
    pub fn new(q: BigUint) -> Result<Self, FieldError> {
        if !is_probable_prime(&q) {
            return Err(FieldError::NotPrime);
        }
        if (&q % 4u32) != BigUint::from(3u32) {
            return Err(FieldError::BadResidueClass);
        }
        let bit_len = q.bits() as u32;
        Ok(FieldParams { q, bit_len })
    }

    pub fn modulus(&self) -> &BigUint {
        &self.q
    }

    pub fn bit_len(&self) -> u32 {
        self.bit_len
    }
}

/// A prime field with precomputed exponents for square roots and inversion.
#[derive(Debug, Clone)]
pub struct Field {
    params: FieldParams,
    reduction: Reduction,
    exp_sqrt: BigUint, // (q+1)/4
    exp_inv: BigUint,  // q-2
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params
    }
}
impl Eq for Field {}

impl Field {
    pub fn new(q: BigUint) -> Result<Self, FieldError> {
        let params = FieldParams::new(q)?;
        let q = params.modulus();
        let one = BigUint::one();
        let reduction = if (q + &one).count_ones() == 1 {
            let bits = q.bits();
            Reduction::Mersenne {
                bits,
                mask: q.clone(),
            }
        } else {
            Reduction::Generic
        };
        let exp_sqrt = (q + &one) >> 2;
        let exp_inv = q - BigUint::from(2u32);
        Ok(Field {
            params,
            reduction,
            exp_sqrt,
            exp_inv,
        })
    }

    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    pub fn modulus(&self) -> &BigUint {
        self.params.modulus()
    }

    pub fn bit_len(&self) -> u32 {
        self.params.bit_len()
    }

    fn reduce(&self, mut v: BigUint) -> BigUint {
        let q = self.modulus();
        match &self.reduction {
            Reduction::Mersenne { bits, mask } => {
                while v.bits() > *bits {
                    v = (&v & mask) + (v >> bits);
                }
                if &v >= q {
                    v -= q;
                }
                v
            }
            Reduction::Generic => v % q,
        }
    }

    /// Build an element, reducing mod q.
    pub fn elem(&self, v: impl Into<BigUint>) -> FieldElement {
        let v: BigUint = v.into();
        FieldElement(if &v < self.modulus() {
            v
        } else {
            v % self.modulus()
        })
    }

    /// Build an element from an already-canonical value; rejects v >= q.
    pub fn elem_checked(&self, v: BigUint) -> Result<FieldElement, FieldError> {
        if &v >= self.modulus() {
            return Err(FieldError::OutOfRange);
        }
        Ok(FieldElement(v))
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(BigUint::zero())
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(BigUint::one())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut v = &a.0 + &b.0;
        if &v >= self.modulus() {
            v -= self.modulus();
        }
        FieldElement(v)
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if a.0 >= b.0 {
            FieldElement(&a.0 - &b.0)
        } else {
            FieldElement(self.modulus() - &b.0 + &a.0)
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        if a.0.is_zero() {
            self.zero()
        } else {
            FieldElement(self.modulus() - &a.0)
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(self.reduce(&a.0 * &b.0))
    }

    pub fn square(&self, a: &FieldElement) -> FieldElement {
        FieldElement(self.reduce(&a.0 * &a.0))
    }

    pub fn pow(&self, a: &FieldElement, e: &BigUint) -> FieldElement {
        FieldElement(a.0.modpow(e, self.modulus()))
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if a.0.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, &self.exp_inv))
    }

    /// Quadratic-residue test: true iff some y satisfies y^2 = v.
    ///
    /// Computed with the Jacobi symbol, which for prime q agrees with the
    /// Euler criterion v^((q-1)/2) in {0, 1}.
    pub fn is_qr(&self, v: &FieldElement) -> bool {
        if v.0.is_zero() {
            return true;
        }
        jacobi(&v.0, self.modulus()) == 1
    }

    /// Canonical square root: the numerically smaller of the two roots.
    pub fn sqrt(&self, v: &FieldElement) -> Result<FieldElement, FieldError> {
        if v.0.is_zero() {
            return Ok(self.zero());
        }
        let r = self.pow(v, &self.exp_sqrt);
        if self.square(&r) != *v {
            return Err(FieldError::NotASquare);
        }
        let other = self.neg(&r);
        Ok(if r.0 <= other.0 { r } else { other })
    }
}

/// Jacobi symbol (a/n) for odd n > 0; returns -1, 0 or 1.
fn jacobi(a: &BigUint, n: &BigUint) -> i32 {
    let mut a = a.clone() % n;
    let mut n = n.clone();
    let mut t = 1i32;
    let three = BigUint::from(3u32);
    let five = BigUint::from(5u32);
    let seven = BigUint::from(7u32);
    while !a.is_zero() {
        while (&a & BigUint::one()).is_zero() {
            a >>= 1;
            let r = &n & &seven;
            if r == three || r == five {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a & &three) == three && (&n & &three) == three {
            t = -t;
        }
        a %= &n;
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// Miller-Rabin with a fixed deterministic base set.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    let small: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in small {
        let p = BigUint::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - BigUint::one();
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    // 12 fixed bases suffice below 3.3e24; more rounds added for larger inputs
    let bases: [u32; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    'outer: for a in bases {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s.saturating_sub(1) {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> Field {
        Field::new(BigUint::from(q)).unwrap()
    }

    #[test]
    fn params_reject_composite_and_bad_residue() {
        assert_eq!(Field::new(BigUint::from(15u32)).unwrap_err(), FieldError::NotPrime);
        // 13 is prime but 13 = 1 mod 4
        assert_eq!(
            Field::new(BigUint::from(13u32)).unwrap_err(),
            FieldError::BadResidueClass
        );
    }

    #[test]
    fn bit_len_matches_ceil_log2() {
        assert_eq!(f(7).bit_len(), 3);
        assert_eq!(f(8191).bit_len(), 13);
        let q127 = (BigUint::one() << 127u32) - BigUint::one();
        assert_eq!(Field::new(q127).unwrap().bit_len(), 127);
    }

    #[test]
    fn add_mod_7() {
        let fld = f(7);
        assert_eq!(fld.add(&fld.elem(3u32), &fld.elem(5u32)), fld.elem(1u32));
    }

    #[test]
    fn inv_mod_7_matches_scan() {
        let fld = f(7);
        // independent oracle: scan t in [1,7) for 3t = 1 mod 7
        let mut expected = None;
        for t in 1u64..7 {
            if (3 * t) % 7 == 1 {
                expected = Some(t);
                break;
            }
        }
        assert_eq!(expected, Some(5));
        assert_eq!(fld.inv(&fld.elem(3u32)).unwrap(), fld.elem(5u32));
    }

    #[test]
    fn mul_mersenne_13_bit() {
        let fld = f(8191);
        // 4096 * 2 = 8192 = 1 mod 8191, checked by direct integer arithmetic
        assert_eq!((4096u64 * 2) % 8191, 1);
        assert_eq!(fld.mul(&fld.elem(4096u32), &fld.elem(2u32)), fld.elem(1u32));
    }

    #[test]
    fn inversion_of_zero_fails() {
        let fld = f(7);
        assert_eq!(fld.inv(&fld.zero()).unwrap_err(), FieldError::DivisionByZero);
    }

    #[test]
    fn qr_mod_7() {
        let fld = f(7);
        // squares mod 7 are {0, 1, 2, 4}
        let squares: std::collections::HashSet<u64> = (0u64..7).map(|y| (y * y) % 7).collect();
        assert_eq!(squares, [0u64, 1, 2, 4].into_iter().collect());
        assert!(fld.is_qr(&fld.elem(2u32)));
        assert!(!fld.is_qr(&fld.elem(3u32)));
        assert!(fld.is_qr(&fld.zero()));
    }

    #[test]
    fn qr_matches_euler_criterion_exhaustively() {
        // the contract is the Euler criterion; jacobi is only the fast path
        for q in [7u64, 11, 8191] {
            let fld = f(q);
            let e = (q - 1) / 2;
            for v in 0..q {
                let euler = BigUint::from(v).modpow(&BigUint::from(e), fld.modulus());
                let is_sq = v == 0 || euler.is_one();
                assert_eq!(fld.is_qr(&fld.elem(v)), is_sq, "q={q} v={v}");
            }
        }
    }

    #[test]
    fn sqrt_mod_7_canonical() {
        let fld = f(7);
        // 3^2 = 2 and 4^2 = 2; canonical root is min(3, 4) = 3
        assert_eq!(fld.sqrt(&fld.elem(2u32)).unwrap(), fld.elem(3u32));
        assert_eq!(fld.sqrt(&fld.elem(4u32)).unwrap(), fld.elem(2u32));
    }

    #[test]
    fn sqrt_of_unity_large_field() {
        let fld = f(8191);
        assert_eq!(fld.sqrt(&fld.elem(1u32)).unwrap(), fld.elem(1u32));
    }

    #[test]
    fn sqrt_rejects_non_residue() {
        let fld = f(7);
        assert_eq!(fld.sqrt(&fld.elem(3u32)).unwrap_err(), FieldError::NotASquare);
    }

    #[test]
    fn sqrt_squares_back_exhaustively_toy() {
        let fld = f(8191);
        for v in 0u64..8191 {
            let v = fld.elem(v);
            if fld.is_qr(&v) {
                let r = fld.sqrt(&v).unwrap();
                assert_eq!(fld.square(&r), v);
                // canonical root is the smaller of the pair
                assert!(r.value() <= fld.neg(&r).value() || v.is_zero());
            }
        }
    }

    #[test]
    fn generic_reduction_path() {
        // q = 11 is not Mersenne, exercises the division fallback
        let fld = f(11);
        for a in 0u64..11 {
            for b in 0u64..11 {
                assert_eq!(fld.mul(&fld.elem(a), &fld.elem(b)), fld.elem((a * b) % 11));
                assert_eq!(fld.add(&fld.elem(a), &fld.elem(b)), fld.elem((a + b) % 11));
                assert_eq!(
                    fld.sub(&fld.elem(a), &fld.elem(b)),
                    fld.elem((a + 11 - b) % 11)
                );
            }
        }
    }

    #[test]
    fn elem_checked_rejects_out_of_range() {
        let fld = f(7);
        assert!(fld.elem_checked(BigUint::from(6u32)).is_ok());
        assert_eq!(
            fld.elem_checked(BigUint::from(7u32)).unwrap_err(),
            FieldError::OutOfRange
        );
    }

    #[test]
    fn mersenne_127_arithmetic_spot_checks() {
        let q = (BigUint::one() << 127u32) - BigUint::one();
        let fld = Field::new(q.clone()).unwrap();
        let a = fld.elem(&q - BigUint::from(1u32));
        // q-1 = -1, so its square is 1
        assert_eq!(fld.square(&a), fld.one());
        let b = fld.elem(BigUint::from(3u32));
        let ab = fld.mul(&a, &b);
        assert_eq!(ab, fld.sub(&fld.zero(), &fld.elem(3u32)));
        let inv3 = fld.inv(&b).unwrap();
        assert_eq!(fld.mul(&b, &inv3), fld.one());
    }
}
