//! Hiding byte payloads in pixel least-significant bits.
//!
//! A payload is serialized to bits most-significant-bit first, XOR-masked
//! with a keystream derived from the secret key, and written into the LSBs
//! of consecutive pixels starting at the top-left corner. Extraction runs
//! the same mask over the stego pixels' LSBs; XOR with the identical
//! keystream restores the original bits.
//!
//! Two layouts are supported. The framed layout (the default) prefixes the
//! body with a 32-bit big-endian byte count so that extraction is
//! self-describing: the first 32 LSBs are unmasked with a keystream derived
//! from a 32-step orbit, the recovered count determines the full payload
//! length, and the body is unmasked with the keystream derived from the
//! full-length orbit. The raw layout embeds the body bits alone, masked with
//! a keystream of exactly the body's length, and the extractor must be told
//! how many bytes to recover.

use crate::chaos::{self, ChaosKey, Keystream};
use crate::error::{Error, Result};
use crate::pgm::GrayImage;

/// Bits occupied by the framed layout's length prefix.
pub const LENGTH_HEADER_BITS: usize = 32;

/// An ordered bit sequence stored one bit per byte (each 0 or 1). This is
/// the common currency between message bytes, keystreams, and pixel LSBs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitStream {
    bits: Vec<u8>,
}

impl BitStream {
    /// Wraps a buffer of 0/1 values.
    ///
    /// Panics if any element is neither 0 nor 1.
    pub fn from_bits(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "bits must be 0 or 1");
        Self { bits }
    }

    /// Unpacks bytes most-significant-bit first, eight bits per byte.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        let mut bits = Vec::with_capacity(bytes.len() * 8);
        for &byte in bytes {
            for shift in (0..8).rev() {
                bits.push((byte >> shift) & 1);
            }
        }
        Self { bits }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Repacks into bytes, most significant bit first.
    ///
    /// Panics if the length is not a multiple of eight.
    pub fn to_bytes(&self) -> Vec<u8> {
        assert!(
            self.bits.len().is_multiple_of(8),
            "bit count must be a multiple of 8"
        );
        self.bits
            .chunks_exact(8)
            .map(|chunk| chunk.iter().fold(0u8, |acc, &b| (acc << 1) | b))
            .collect()
    }
}

/// Unpacks a byte message into its bit stream, first byte first,
/// most significant bit first.
pub fn message_to_bits(message: &[u8]) -> BitStream {
    BitStream::from_bytes(message)
}

/// XORs message bits with the leading bits of a keystream.
///
/// Fails with [`Error::KeystreamTooShort`] when the keystream has fewer bits
/// than the message; extra keystream bits are ignored. Applying the same
/// keystream twice restores the input.
pub fn xor_mask(message_bits: &BitStream, keystream: &Keystream) -> Result<BitStream> {
    if keystream.len() < message_bits.len() {
        return Err(Error::KeystreamTooShort {
            message_bits: message_bits.len(),
            keystream_bits: keystream.len(),
        });
    }
    let bits = message_bits
        .bits()
        .iter()
        .zip(keystream.bits())
        .map(|(&m, &k)| m ^ k)
        .collect();
    Ok(BitStream { bits })
}

/// A byte payload destined for the framed layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StegoPayload {
    body: Vec<u8>,
}

impl StegoPayload {
    /// Panics if the body is longer than a 32-bit length field can describe.
    pub fn new(body: Vec<u8>) -> Self {
        assert!(
            body.len() <= u32::MAX as usize,
            "payload body exceeds the 32-bit length field"
        );
        Self { body }
    }

    pub fn body(&self) -> &[u8] {
        &self.body
    }

    /// The value of the length prefix: the body size in bytes.
    pub fn header(&self) -> u32 {
        self.body.len() as u32
    }

    /// Total bits the framed layout occupies: 32 + 8 × body length.
    pub fn bit_len(&self) -> usize {
        LENGTH_HEADER_BITS + 8 * self.body.len()
    }

    /// Serializes to bits: 32-bit big-endian length, then the body bytes,
    /// each most significant bit first.
    pub fn to_bits(&self) -> BitStream {
        let mut bits = Vec::with_capacity(self.bit_len());
        bits.extend_from_slice(BitStream::from_bytes(&self.header().to_be_bytes()).bits());
        bits.extend_from_slice(BitStream::from_bytes(&self.body).bits());
        BitStream { bits }
    }
}

/// What an embed did to the carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbedReport {
    /// Bits written into pixel LSBs.
    pub bits_embedded: usize,
    /// Pixels whose LSB was overwritten (equal to `bits_embedded`).
    pub pixels_touched: usize,
    /// Pixels whose value actually changed.
    pub pixels_flipped: usize,
}

/// Overwrites the LSBs of the leading pixels with `bits`, returning how many
/// pixels changed value.
fn write_lsbs(pixels: &mut [u8], bits: &[u8]) -> usize {
    let mut flipped = 0;
    for (pixel, &bit) in pixels.iter_mut().zip(bits) {
        let new = (*pixel & 0xfe) | bit;
        if new != *pixel {
            flipped += 1;
        }
        *pixel = new;
    }
    flipped
}

/// Reads the LSBs of `count` leading pixels.
fn read_lsbs(pixels: &[u8], count: usize) -> Vec<u8> {
    pixels[..count].iter().map(|&p| p & 1).collect()
}

fn capacity_check(needed: usize, capacity: usize) -> Result<()> {
    if needed as u64 > capacity as u64 {
        return Err(Error::Capacity {
            needed_bits: needed as u64,
            capacity_bits: capacity as u64,
        });
    }
    Ok(())
}

/// Hides a framed payload in a copy of the cover image.
///
/// The length prefix is masked with the keystream of a 32-step orbit and the
/// body with bits 32.. of the full-length orbit's keystream, both from the
/// same key, so that extraction can decode the prefix before it knows the
/// payload size. Fails with [`Error::Capacity`] when the image has fewer
/// pixels than the payload has bits, and propagates orbit divergence.
pub fn embed(
    cover: &GrayImage,
    payload: &StegoPayload,
    key: &ChaosKey,
) -> Result<(GrayImage, EmbedReport)> {
    let total = payload.bit_len();
    capacity_check(total, cover.pixel_count())?;

    let header_stream = chaos::keystream(key, LENGTH_HEADER_BITS)?;
    let full_stream = chaos::keystream(key, total)?;

    let plain = payload.to_bits();
    let mut masked = Vec::with_capacity(total);
    for (i, &bit) in plain.bits().iter().enumerate() {
        let k = if i < LENGTH_HEADER_BITS {
            header_stream.bits()[i]
        } else {
            full_stream.bits()[i]
        };
        masked.push(bit ^ k);
    }

    let mut stego = cover.clone();
    let flipped = write_lsbs(stego.pixels_mut(), &masked);
    Ok((
        stego,
        EmbedReport {
            bits_embedded: total,
            pixels_touched: total,
            pixels_flipped: flipped,
        },
    ))
}

/// Recovers a framed payload's body bytes.
///
/// Decodes the 32-bit length prefix first; a prefix that promises more bits
/// than the image holds fails with [`Error::LengthField`], which is the
/// usual symptom of a wrong key or an image with nothing embedded.
pub fn extract(stego: &GrayImage, key: &ChaosKey) -> Result<Vec<u8>> {
    let capacity = stego.pixel_count();
    if LENGTH_HEADER_BITS > capacity {
        return Err(Error::LengthField {
            needed_bits: LENGTH_HEADER_BITS as u64,
            capacity_bits: capacity as u64,
        });
    }

    let header_stream = chaos::keystream(key, LENGTH_HEADER_BITS)?;
    let header_lsbs = BitStream {
        bits: read_lsbs(stego.pixels(), LENGTH_HEADER_BITS),
    };
    let header_bits = xor_mask(&header_lsbs, &header_stream)?;
    let body_len = u32::from_be_bytes(header_bits.to_bytes().try_into().unwrap());

    let needed = LENGTH_HEADER_BITS as u64 + 8 * body_len as u64;
    if needed > capacity as u64 {
        return Err(Error::LengthField {
            needed_bits: needed,
            capacity_bits: capacity as u64,
        });
    }
    if body_len == 0 {
        return Ok(Vec::new());
    }

    let total = needed as usize;
    let full_stream = chaos::keystream(key, total)?;
    let body_bits: Vec<u8> = stego.pixels()[LENGTH_HEADER_BITS..total]
        .iter()
        .zip(&full_stream.bits()[LENGTH_HEADER_BITS..])
        .map(|(&pixel, &k)| (pixel & 1) ^ k)
        .collect();
    Ok(BitStream { bits: body_bits }.to_bytes())
}

/// Hides `message` without any length prefix: bit i of the masked message
/// lands in pixel i. The receiver must know the byte count out of band.
pub fn embed_raw(
    cover: &GrayImage,
    message: &[u8],
    key: &ChaosKey,
) -> Result<(GrayImage, EmbedReport)> {
    let total = message.len() * 8;
    capacity_check(total, cover.pixel_count())?;

    let mut stego = cover.clone();
    let flipped = if total == 0 {
        0
    } else {
        let stream = chaos::keystream(key, total)?;
        let masked = xor_mask(&message_to_bits(message), &stream)?;
        write_lsbs(stego.pixels_mut(), masked.bits())
    };
    Ok((
        stego,
        EmbedReport {
            bits_embedded: total,
            pixels_touched: total,
            pixels_flipped: flipped,
        },
    ))
}

/// Recovers `length` bytes hidden by [`embed_raw`] with the same key.
pub fn extract_raw(stego: &GrayImage, key: &ChaosKey, length: usize) -> Result<Vec<u8>> {
    let total = length * 8;
    capacity_check(total, stego.pixel_count())?;
    if total == 0 {
        return Ok(Vec::new());
    }

    let stream = chaos::keystream(key, total)?;
    let lsbs = BitStream {
        bits: read_lsbs(stego.pixels(), total),
    };
    Ok(xor_mask(&lsbs, &stream)?.to_bytes())
}
