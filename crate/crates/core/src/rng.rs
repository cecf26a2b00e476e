//! Deterministic RNG derivation: every randomized run is a pure function of
//! a master seed string and a derivation path, so repeated runs are
//! byte-identical and parallel trials get independent streams.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

/// 32-byte master seed from an arbitrary seed string.
pub fn master_seed(seed: &str) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(b"noncesig/seed/v1");
    h.update((seed.len() as u64).to_be_bytes());
    h.update(seed.as_bytes());
    h.finalize().into()
}

/// Child RNG for a labelled subtask. Distinct paths give independent streams.
pub fn derive_rng(master: &[u8; 32], path: &[&str]) -> ChaCha20Rng {
    derive_rng_indexed(master, path, 0)
}

/// Child RNG for the `index`-th trial of a labelled subtask.
pub fn derive_rng_indexed(master: &[u8; 32], path: &[&str], index: u64) -> ChaCha20Rng {
    let mut h = Sha256::new();
    h.update(b"noncesig/derive/v1");
    h.update(master);
    for part in path {
        h.update((part.len() as u64).to_be_bytes());
        h.update(part.as_bytes());
    }
    h.update(index.to_be_bytes());
    let seed: [u8; 32] = h.finalize().into();
    ChaCha20Rng::from_seed(seed)
}
