//! Fixed-width bit strings carried as TLS client nonces.
//!
//! A wire value is `width` bits, MSB first. The byte form left-aligns the
//! bits: bit 0 of the wire is the most significant bit of byte 0, and any
//! trailing bits of the last byte are zero.

use num_bigint::BigUint;
use num_traits::Zero;
use rand::RngCore;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WireError {
    #[error("value does not fit in {0} bits")]
    Overflow(u32),
    #[error("byte length {got} does not match a {width}-bit wire")]
    BadLength { width: u32, got: usize },
    #[error("trailing pad bits must be zero")]
    DirtyPadding,
    #[error("invalid hex: {0}")]
    BadHex(String),
}

/// An N-bit string; N is fixed per profile (256 on the production profile).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NonceWire {
    width: u32,
    value: BigUint,
}

impl NonceWire {
    pub fn from_value(width: u32, value: BigUint) -> Result<Self, WireError> {
        if value.bits() > width as u64 {
            return Err(WireError::Overflow(width));
        }
        Ok(NonceWire { width, value })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn byte_len(width: u32) -> usize {
        (width as usize + 7) / 8
    }

    /// Uniformly random wire of the given width.
    pub fn random(width: u32, rng: &mut impl RngCore) -> Self {
        let nbytes = Self::byte_len(width);
        let mut buf = vec![0u8; nbytes];
        rng.fill_bytes(&mut buf);
        let excess = (8 * nbytes) as u32 - width;
        let value = BigUint::from_bytes_be(&buf) >> excess;
        NonceWire { width, value }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let nbytes = Self::byte_len(self.width);
        let excess = (8 * nbytes) as u32 - self.width;
        let shifted = &self.value << excess;
        let raw = shifted.to_bytes_be();
        let mut out = vec![0u8; nbytes - raw.len()];
        out.extend_from_slice(&raw);
        out
    }

    pub fn from_bytes(width: u32, bytes: &[u8]) -> Result<Self, WireError> {
        let nbytes = Self::byte_len(width);
        if bytes.len() != nbytes {
            return Err(WireError::BadLength {
                width,
                got: bytes.len(),
            });
        }
        let excess = (8 * nbytes) as u32 - width;
        let raw = BigUint::from_bytes_be(bytes);
        if excess > 0 {
            let mask = (BigUint::from(1u32) << excess) - BigUint::from(1u32);
            if !(&raw & &mask).is_zero() {
                return Err(WireError::DirtyPadding);
            }
        }
        Ok(NonceWire {
            width,
            value: raw >> excess,
        })
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.to_bytes())
    }

    pub fn from_hex(width: u32, s: &str) -> Result<Self, WireError> {
        let bytes = hex::decode(s).map_err(|e| WireError::BadHex(e.to_string()))?;
        Self::from_bytes(width, &bytes)
    }

    /// The `count` bits starting at MSB offset `start`, as an integer.
    pub fn bits(&self, start: u32, count: u32) -> BigUint {
        assert!(start + count <= self.width);
        let shift = self.width - start - count;
        let mask = (BigUint::from(1u32) << count) - BigUint::from(1u32);
        (&self.value >> shift) & mask
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn byte_round_trip_256() {
        let v = BigUint::from_bytes_be(&[0xABu8; 32]);
        let w = NonceWire::from_value(256, v).unwrap();
        let bytes = w.to_bytes();
        assert_eq!(bytes.len(), 32);
        assert_eq!(NonceWire::from_bytes(256, &bytes).unwrap(), w);
    }

    #[test]
    fn byte_round_trip_unaligned_width() {
        // 28-bit wire packs into 4 bytes with 4 zero pad bits
        let w = NonceWire::from_value(28, BigUint::from(0x0ABCDEFu32)).unwrap();
        let bytes = w.to_bytes();
        assert_eq!(bytes.len(), 4);
        assert_eq!(bytes[3] & 0x0F, 0);
        assert_eq!(NonceWire::from_bytes(28, &bytes).unwrap(), w);
    }

    #[test]
    fn rejects_overflow_and_bad_length() {
        assert_eq!(
            NonceWire::from_value(8, BigUint::from(256u32)).unwrap_err(),
            WireError::Overflow(8)
        );
        assert!(matches!(
            NonceWire::from_bytes(256, &[0u8; 31]).unwrap_err(),
            WireError::BadLength { .. }
        ));
    }

    #[test]
    fn rejects_dirty_padding() {
        assert_eq!(
            NonceWire::from_bytes(28, &[0, 0, 0, 1]).unwrap_err(),
            WireError::DirtyPadding
        );
    }

    #[test]
    fn msb_first_bit_extraction() {
        // 0b1011_0001 as an 8-bit wire
        let w = NonceWire::from_value(8, BigUint::from(0b1011_0001u32)).unwrap();
        assert_eq!(w.bits(0, 4), BigUint::from(0b1011u32));
        assert_eq!(w.bits(4, 4), BigUint::from(0b0001u32));
        assert_eq!(w.bits(0, 1), BigUint::from(1u32));
    }

    #[test]
    fn random_has_requested_width() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha20Rng::from_seed([7u8; 32]);
        for width in [28u32, 256] {
            let w = NonceWire::random(width, &mut rng);
            assert_eq!(w.width(), width);
            assert!(w.value().bits() <= width as u64);
        }
    }
}
