//! Hide text in grayscale images by XOR-masking its bits with a keystream
//! drawn from a Hénon-map orbit and writing the result into pixel
//! least-significant bits.
//!
//! The pipeline, end to end:
//!
//! 1. [`chaos`] — iterate the map from a secret starting point, threshold
//!    the x-coordinates against their own mean, and out comes a bit stream
//!    that only the key holder can regenerate.
//! 2. [`codec`] — XOR the message bits with that stream and overwrite the
//!    LSBs of the leading pixels; extraction is the same walk in reverse.
//! 3. [`pgm`] — carrier images are 8-bit grayscale PGM files, read and
//!    written byte-for-byte reproducibly.
//! 4. [`metrics`] — quantify the (tiny) damage done to the carrier.
//!
//! ```
//! use chaostego::{embed, extract, ChaosKey, GrayImage, StegoPayload};
//!
//! let cover = GrayImage::new(16, 16, (0..256).map(|i| i as u8).collect());
//! let key = ChaosKey::new(0.1, 0.1);
//! let (stego, report) = embed(&cover, &StegoPayload::new(b"psst".to_vec()), &key)?;
//! assert_eq!(extract(&stego, &key)?, b"psst");
//! assert!(report.pixels_flipped <= report.bits_embedded);
//! # Ok::<(), chaostego::Error>(())
//! ```

pub mod chaos;
pub mod codec;
pub mod error;
pub mod metrics;
pub mod pgm;

pub use chaos::{
    bifurcation_sweep, binarize, generate_orbit, henon_step, keystream, ChaosKey, ChaosOrbit,
    Keystream, SweepConfig, DIVERGENCE_BOUND,
};
pub use codec::{
    embed, embed_raw, extract, extract_raw, message_to_bits, xor_mask, BitStream, EmbedReport,
    StegoPayload, LENGTH_HEADER_BITS,
};
pub use error::{Error, Result};
pub use metrics::{compare, mse, psnr_paper_formula, psnr_standard, QualityReport};
pub use pgm::{read_pgm, write_pgm, GrayImage, PgmFormat};
