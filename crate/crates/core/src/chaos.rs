//! Hénon-map orbits, keystream derivation, and bifurcation sweeps.
//!
//! The map is `x' = 1 - a·x² + y`, `y' = b·x`. A secret key is just a point
//! `(x0, y0)` plus the two map parameters; iterating from it yields an orbit
//! whose x-coordinates are thresholded into the bit stream used to mask
//! payloads.

use crate::error::{Error, Result};

/// Orbits whose coordinates exceed this magnitude are treated as divergent.
pub const DIVERGENCE_BOUND: f64 = 1e6;

/// Map parameter `a` used when a key does not specify one.
pub const DEFAULT_A: f64 = 1.5;

/// Map parameter `b` used when a key does not specify one.
pub const DEFAULT_B: f64 = 0.1;

/// Initial conditions and map parameters; the shared secret of the scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChaosKey {
    pub x0: f64,
    pub y0: f64,
    pub a: f64,
    pub b: f64,
}

impl ChaosKey {
    /// Key with the default map parameters.
    ///
    /// Panics if a coordinate is not finite.
    pub fn new(x0: f64, y0: f64) -> Self {
        Self::with_params(x0, y0, DEFAULT_A, DEFAULT_B)
    }

    /// Key with explicit map parameters.
    ///
    /// Panics if any field is not finite.
    pub fn with_params(x0: f64, y0: f64, a: f64, b: f64) -> Self {
        assert!(
            x0.is_finite() && y0.is_finite() && a.is_finite() && b.is_finite(),
            "key fields must be finite"
        );
        Self { x0, y0, a, b }
    }
}

/// One application of the map.
///
/// The x update is evaluated exactly as `1 - (a·(x·x)) + y`; every
/// downstream bit depends on this operation order staying fixed.
#[inline]
pub fn henon_step(x: f64, y: f64, a: f64, b: f64) -> (f64, f64) {
    (1.0 - a * (x * x) + y, b * x)
}

/// A finite run of the map: the i-th entries are the coordinates *after*
/// i+1 applications of the map. The seed itself is not part of the orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct ChaosOrbit {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl ChaosOrbit {
    /// Wraps externally produced coordinate sequences, e.g. to binarize a
    /// trajectory that was recorded elsewhere.
    ///
    /// Panics if the sequences differ in length.
    pub fn from_coordinates(xs: Vec<f64>, ys: Vec<f64>) -> Self {
        assert_eq!(xs.len(), ys.len(), "coordinate sequences must match");
        Self { xs, ys }
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }
}

/// Iterates the map `length` times from the key's initial conditions.
///
/// Fails with [`Error::Divergence`] as soon as an iterate leaves
/// `[-DIVERGENCE_BOUND, DIVERGENCE_BOUND]` or stops being finite.
///
/// Panics if `length` is zero.
pub fn generate_orbit(key: &ChaosKey, length: usize) -> Result<ChaosOrbit> {
    assert!(length >= 1, "orbit length must be at least 1");
    let mut xs = Vec::with_capacity(length);
    let mut ys = Vec::with_capacity(length);
    let (mut x, mut y) = (key.x0, key.y0);
    for step in 0..length {
        let (nx, ny) = henon_step(x, y, key.a, key.b);
        if !within_bound(nx) || !within_bound(ny) {
            let value = if !within_bound(nx) { nx } else { ny };
            return Err(Error::Divergence { step, value });
        }
        xs.push(nx);
        ys.push(ny);
        x = nx;
        y = ny;
    }
    Ok(ChaosOrbit { xs, ys })
}

fn within_bound(v: f64) -> bool {
    v.is_finite() && v.abs() <= DIVERGENCE_BOUND
}

/// A binarized orbit: one bit per x-coordinate, plus the threshold that
/// produced the bits.
#[derive(Debug, Clone, PartialEq)]
pub struct Keystream {
    bits: Vec<u8>,
    threshold: f64,
}

impl Keystream {
    /// Bits as 0/1 bytes, in orbit order.
    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// The mean x value the bits were thresholded against.
    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

/// Thresholds an orbit's x-coordinates against their own mean.
///
/// The mean is accumulated left to right and divided once at the end; a bit
/// is 1 exactly when its x is strictly greater than the mean, so values equal
/// to the mean give 0. Only x-coordinates participate.
///
/// Panics if the orbit is empty.
pub fn binarize(orbit: &ChaosOrbit) -> Keystream {
    assert!(!orbit.is_empty(), "cannot binarize an empty orbit");
    let mut sum = 0.0;
    for &x in orbit.xs() {
        sum += x;
    }
    let threshold = sum / orbit.len() as f64;
    let bits = orbit
        .xs()
        .iter()
        .map(|&x| u8::from(x > threshold))
        .collect();
    Keystream { bits, threshold }
}

/// Orbit generation and binarization in one call.
///
/// The threshold is the mean of exactly the `length` x values generated
/// here, so streams of different lengths from the same key generally do not
/// share a prefix.
pub fn keystream(key: &ChaosKey, length: usize) -> Result<Keystream> {
    Ok(binarize(&generate_orbit(key, length)?))
}

/// Parameters of a bifurcation sweep over `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub a_min: f64,
    pub a_max: f64,
    /// Number of evenly spaced `a` values, endpoints included. Must be >= 2.
    pub a_steps: usize,
    pub b: f64,
    pub x0: f64,
    pub y0: f64,
    /// Iterations discarded before sampling begins.
    pub transient: usize,
    /// Iterations recorded per `a` value. Must be >= 1.
    pub samples: usize,
}

impl Default for SweepConfig {
    /// Covers the fixed-point, period-doubling, and chaotic regimes of the
    /// map at b = 0.1: the first period doubling sits at a = 3(1-b)²/4 =
    /// 0.6075, and broad-band chaos starts near a ≈ 1.3.
    fn default() -> Self {
        Self {
            a_min: 0.2,
            a_max: 1.6,
            a_steps: 600,
            b: 0.1,
            x0: 0.0,
            y0: 0.0,
            transient: 1000,
            samples: 100,
        }
    }
}

/// Samples the long-run x values of the map across a range of `a`.
///
/// For each of the `a_steps` evenly spaced values of `a` (both endpoints
/// exact), the map is iterated `transient` times unrecorded and then
/// `samples` times recorded, producing one `(a, x)` pair per recorded
/// iterate. An `a` whose orbit diverges at any point contributes no pairs at
/// all; the sweep itself never fails.
///
/// Panics if `a_steps < 2`, `samples < 1`, or `a_min >= a_max`.
pub fn bifurcation_sweep(config: &SweepConfig) -> Vec<(f64, f64)> {
    assert!(config.a_steps >= 2, "need at least two a values");
    assert!(config.samples >= 1, "need at least one sample per a");
    assert!(config.a_min < config.a_max, "a_min must be below a_max");

    let mut points = Vec::new();
    for i in 0..config.a_steps {
        let a = if i + 1 == config.a_steps {
            config.a_max
        } else {
            config.a_min + (config.a_max - config.a_min) * i as f64 / (config.a_steps - 1) as f64
        };

        let (mut x, mut y) = (config.x0, config.y0);
        let mut alive = true;
        for _ in 0..config.transient {
            let (nx, ny) = henon_step(x, y, a, config.b);
            if !within_bound(nx) || !within_bound(ny) {
                alive = false;
                break;
            }
            x = nx;
            y = ny;
        }
        if !alive {
            continue;
        }

        let mut run = Vec::with_capacity(config.samples);
        for _ in 0..config.samples {
            let (nx, ny) = henon_step(x, y, a, config.b);
            if !within_bound(nx) || !within_bound(ny) {
                alive = false;
                break;
            }
            x = nx;
            y = ny;
            run.push((a, x));
        }
        if alive {
            points.append(&mut run);
        }
    }
    points
}
