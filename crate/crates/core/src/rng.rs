//! Seed derivation.
//!
//! Every random stream in the crate is a ChaCha8 generator keyed with
//! `SHA-256(root_seed as little-endian u64 || purpose label as UTF-8)`.
//! Reimplementations in other languages reproduce a stream from the root seed
//! and the label alone.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Name of the generator algorithm, echoed into run manifests.
pub const RNG_ALGORITHM: &str = "ChaCha8 keyed by SHA-256(seed_le64 || label)";

/// Derive a 32-byte key for `label` from `seed`.
pub fn derive_key(seed: u64, label: &str) -> [u8; 32] {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(label.as_bytes());
    let digest = hasher.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    key
}

/// Derive a 64-bit child seed, for handing to components that take a `u64`.
pub fn derive_seed(seed: u64, label: &str) -> u64 {
    let key = derive_key(seed, label);
    u64::from_le_bytes(key[..8].try_into().expect("8 bytes"))
}

/// A generator for the stream identified by `(seed, label)`.
pub fn stream(seed: u64, label: &str) -> ChaCha8Rng {
    ChaCha8Rng::from_seed(derive_key(seed, label))
}
