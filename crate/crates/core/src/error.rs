//! Error type shared by every fallible operation in this crate.

use thiserror::Error;

/// Everything that can go wrong while generating keystreams, parsing or
/// writing images, embedding, extracting, or comparing images.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The map orbit left the numerically meaningful region: an iterate's
    /// magnitude exceeded [`crate::chaos::DIVERGENCE_BOUND`] or stopped being
    /// finite. `step` is the zero-based iteration at which it happened.
    #[error("orbit diverged at step {step} (|{value:e}| escaped the bound 1e6); pick different initial conditions")]
    Divergence { step: usize, value: f64 },

    /// A keystream was asked to mask more bits than it holds.
    #[error("keystream too short: {keystream_bits} bits cannot mask {message_bits} message bits")]
    KeystreamTooShort {
        message_bits: usize,
        keystream_bits: usize,
    },

    /// The carrier image has fewer pixels than the payload has bits.
    #[error("payload needs {needed_bits} bits but the image holds only {capacity_bits}")]
    Capacity {
        needed_bits: u64,
        capacity_bits: u64,
    },

    /// Extraction decoded a length field that cannot fit in the image, which
    /// means the key is wrong or the image carries no embedded payload.
    #[error("decoded payload length needs {needed_bits} bits but the image holds only {capacity_bits}; wrong key or no hidden payload")]
    LengthField {
        needed_bits: u64,
        capacity_bits: u64,
    },

    /// The byte stream is not a well-formed PGM image. `offset` is the byte
    /// position at which parsing gave up.
    #[error("invalid PGM at byte {offset}: {reason}")]
    Format { offset: usize, reason: String },

    /// Two images that must share dimensions do not.
    #[error("image dimensions differ: {}x{} vs {}x{}", left.0, left.1, right.0, right.1)]
    DimensionMismatch { left: (u32, u32), right: (u32, u32) },
}

pub type Result<T> = std::result::Result<T, Error>;
