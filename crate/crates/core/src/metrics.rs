//! Distortion metrics between a cover image and its stego counterpart.

use crate::error::{Error, Result};
use crate::pgm::GrayImage;

/// Peak signal value for 8-bit images.
pub const PEAK: f64 = 255.0;

/// Summary of how far apart two equally sized images are.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityReport {
    pub mse: f64,
    /// PSNR computed as `10·log10(PEAK / √MSE)`.
    pub psnr_paper: f64,
    /// PSNR computed as `10·log10(PEAK² / MSE)`, the conventional formula.
    /// Always exactly twice [`QualityReport::psnr_paper`].
    pub psnr_standard: f64,
    pub pixels_different: usize,
    pub max_abs_diff: u8,
}

/// Mean squared error over all pixel pairs, in row-major order.
///
/// Each squared difference is an exact integer; they are accumulated into an
/// `f64` left to right and divided by the pixel count once at the end, so
/// images up to 2³² pixels are summed without rounding.
pub fn mse(original: &GrayImage, restored: &GrayImage) -> Result<f64> {
    if (original.width(), original.height()) != (restored.width(), restored.height()) {
        return Err(Error::DimensionMismatch {
            left: (original.width(), original.height()),
            right: (restored.width(), restored.height()),
        });
    }
    let mut acc = 0.0_f64;
    for (&a, &b) in original.pixels().iter().zip(restored.pixels()) {
        let d = i32::from(a) - i32::from(b);
        acc += f64::from(d * d);
    }
    Ok(acc / original.pixel_count() as f64)
}

/// `10·log10(PEAK / √MSE)` — note the missing square on the peak compared to
/// the conventional definition, which halves the result. Kept because some
/// published measurements use exactly this form. Infinite for MSE 0.
///
/// Panics if `mse` is negative or NaN.
pub fn psnr_paper_formula(mse: f64) -> f64 {
    assert!(mse >= 0.0, "mean squared error cannot be negative");
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (PEAK / mse.sqrt()).log10()
    }
}

/// The conventional `10·log10(PEAK² / MSE)`. Infinite for MSE 0.
///
/// Panics if `mse` is negative or NaN.
pub fn psnr_standard(mse: f64) -> f64 {
    assert!(mse >= 0.0, "mean squared error cannot be negative");
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (PEAK * PEAK / mse).log10()
    }
}

/// Computes the full quality report for two equally sized images.
pub fn compare(original: &GrayImage, restored: &GrayImage) -> Result<QualityReport> {
    let mse = mse(original, restored)?;
    let mut pixels_different = 0;
    let mut max_abs_diff = 0u8;
    for (&a, &b) in original.pixels().iter().zip(restored.pixels()) {
        let d = a.abs_diff(b);
        if d > 0 {
            pixels_different += 1;
        }
        max_abs_diff = max_abs_diff.max(d);
    }
    Ok(QualityReport {
        mse,
        psnr_paper: psnr_paper_formula(mse),
        psnr_standard: psnr_standard(mse),
        pixels_different,
        max_abs_diff,
    })
}
