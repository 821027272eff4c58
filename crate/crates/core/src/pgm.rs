//! Reading and writing 8-bit grayscale images in the PGM format, both the
//! binary (`P5`) and ASCII (`P2`) variants.
//!
//! The writer produces a canonical byte stream so that embedding the same
//! payload twice yields identical files: `P5` gets the header
//! `P5\n{width} {height}\n255\n` followed by the raw raster, `P2` gets the
//! same header shape with space-separated decimal pixels at no more than 70
//! characters per line.

use crate::error::{Error, Result};

/// An 8-bit grayscale raster in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
}

impl GrayImage {
    /// Wraps a row-major pixel buffer.
    ///
    /// Panics if a dimension is zero or the buffer length is not
    /// `width * height`.
    pub fn new(width: u32, height: u32, pixels: Vec<u8>) -> Self {
        assert!(
            width >= 1 && height >= 1,
            "image dimensions must be positive"
        );
        assert_eq!(
            pixels.len(),
            width as usize * height as usize,
            "pixel buffer does not match dimensions"
        );
        Self {
            width,
            height,
            pixels,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixel_count(&self) -> usize {
        self.pixels.len()
    }

    /// Pixels in row-major order, top-left first.
    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }
}

/// The two PGM encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgmFormat {
    /// Binary raster.
    P5,
    /// ASCII decimal raster.
    P2,
}

/// Parses a PGM byte stream.
///
/// Accepts `P5` and `P2`, `#` comments between header tokens, and any maxval
/// from 1 to 255. Rejects everything else — truncated rasters, pixel values
/// above the maxval range, trailing bytes after a binary raster — with an
/// [`Error::Format`] carrying the byte offset of the problem.
pub fn read_pgm(data: &[u8]) -> Result<GrayImage> {
    let mut cur = Cursor { data, pos: 0 };

    let magic = cur.take_magic()?;
    let width = cur.number("width")?;
    let height = cur.number("height")?;
    let maxval = cur.number("maxval")?;
    if width == 0 {
        return Err(cur.err("width must be at least 1"));
    }
    if height == 0 {
        return Err(cur.err("height must be at least 1"));
    }
    if maxval == 0 || maxval > 255 {
        return Err(cur.err(format!("maxval {maxval} is outside 1..=255")));
    }
    let count = width as u64 * height as u64;

    let pixels = match magic {
        PgmFormat::P5 => cur.binary_raster(count)?,
        PgmFormat::P2 => cur.ascii_raster(count)?,
    };
    Ok(GrayImage::new(width, height, pixels))
}

/// Serializes an image. The output always declares maxval 255.
pub fn write_pgm(image: &GrayImage, format: PgmFormat) -> Vec<u8> {
    match format {
        PgmFormat::P5 => {
            let mut out = format!("P5\n{} {}\n255\n", image.width(), image.height()).into_bytes();
            out.extend_from_slice(image.pixels());
            out
        }
        PgmFormat::P2 => {
            let mut out = format!("P2\n{} {}\n255\n", image.width(), image.height());
            let mut line = String::new();
            for &p in image.pixels() {
                let token = p.to_string();
                if line.is_empty() {
                    line.push_str(&token);
                } else if line.len() + 1 + token.len() <= 70 {
                    line.push(' ');
                    line.push_str(&token);
                } else {
                    out.push_str(&line);
                    out.push('\n');
                    line.clear();
                    line.push_str(&token);
                }
            }
            out.push_str(&line);
            out.push('\n');
            out.into_bytes()
        }
    }
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

fn is_pgm_space(byte: u8) -> bool {
    matches!(byte, b' ' | b'\t' | b'\n' | b'\r' | 0x0b | 0x0c)
}

impl<'a> Cursor<'a> {
    fn err(&self, reason: impl Into<String>) -> Error {
        Error::Format {
            offset: self.pos,
            reason: reason.into(),
        }
    }

    fn take_magic(&mut self) -> Result<PgmFormat> {
        match self.data.get(..2) {
            Some(b"P5") => {
                self.pos = 2;
                Ok(PgmFormat::P5)
            }
            Some(b"P2") => {
                self.pos = 2;
                Ok(PgmFormat::P2)
            }
            _ => Err(self.err("missing P5/P2 magic number")),
        }
    }

    /// Skips whitespace and `#`-to-end-of-line comments.
    fn skip_separators(&mut self) {
        while let Some(&byte) = self.data.get(self.pos) {
            if is_pgm_space(byte) {
                self.pos += 1;
            } else if byte == b'#' {
                while let Some(&c) = self.data.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    /// Reads one whitespace/comment-delimited token.
    fn token(&mut self, what: &str) -> Result<&'a [u8]> {
        self.skip_separators();
        let start = self.pos;
        while self
            .data
            .get(self.pos)
            .is_some_and(|&b| !is_pgm_space(b) && b != b'#')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(format!("unexpected end of data while reading {what}")));
        }
        Ok(&self.data[start..self.pos])
    }

    /// Reads a token and parses it as an unsigned decimal.
    fn number(&mut self, what: &str) -> Result<u32> {
        let start_of_token = {
            self.skip_separators();
            self.pos
        };
        let token = self.token(what)?;
        let mut value: u32 = 0;
        for &byte in token {
            if !byte.is_ascii_digit() {
                return Err(Error::Format {
                    offset: start_of_token,
                    reason: format!("non-numeric {what} {:?}", String::from_utf8_lossy(token)),
                });
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((byte - b'0') as u32))
                .ok_or_else(|| Error::Format {
                    offset: start_of_token,
                    reason: format!("{what} is too large"),
                })?;
        }
        Ok(value)
    }

    /// Everything after the single post-maxval whitespace byte, checked to be
    /// exactly `count` bytes long.
    fn binary_raster(&mut self, count: u64) -> Result<Vec<u8>> {
        match self.data.get(self.pos) {
            Some(&b) if is_pgm_space(b) => self.pos += 1,
            Some(_) => return Err(self.err("expected a single whitespace byte after maxval")),
            None => return Err(self.err("unexpected end of data after maxval")),
        }
        let rest = &self.data[self.pos..];
        if (rest.len() as u64) < count {
            self.pos = self.data.len();
            return Err(self.err(format!(
                "raster truncated: expected {count} pixel bytes, found {}",
                rest.len()
            )));
        }
        if (rest.len() as u64) > count {
            self.pos += count as usize;
            return Err(self.err(format!(
                "{} trailing bytes after the raster",
                rest.len() as u64 - count
            )));
        }
        Ok(rest.to_vec())
    }

    /// `count` decimal tokens, each 0..=255, then nothing but separators.
    fn ascii_raster(&mut self, count: u64) -> Result<Vec<u8>> {
        let mut pixels = Vec::new();
        for index in 0..count {
            self.skip_separators();
            if self.pos == self.data.len() {
                return Err(self.err(format!(
                    "raster truncated: expected {count} pixel values, found {index}"
                )));
            }
            let value = self.number("pixel value")?;
            if value > 255 {
                return Err(self.err(format!("pixel value {value} exceeds 255")));
            }
            pixels.push(value as u8);
        }
        self.skip_separators();
        if self.pos != self.data.len() {
            return Err(self.err("trailing data after the raster"));
        }
        Ok(pixels)
    }
}
