//! Covert distress signaling through TLS-client-nonce-shaped values.
//!
//! A 256-bit client nonce either carries ordinary PRG output or a compact
//! El Gamal ciphertext hiding a distress marker, a user identifier and an
//! authentication tag. This crate provides the field and curve arithmetic,
//! the nonce codec, the enrolment and distress protocols among user,
//! webserver and coordination point, and a simulation harness that measures
//! how well the two nonce distributions blend.

pub mod codec;
pub mod crypto;
pub mod curve;
pub mod field;
pub mod harness;
pub mod meceg;
pub mod profile;
pub mod protocol;
pub mod rng;
pub mod wire;

pub use profile::{Profile, ProfileKind};
