//! Acceptance suite: one numbered end-to-end check per release criterion.
//! Each test prints a single `[PASS]`/`[FAIL]` line (visible with
//! `cargo test --test acceptance -- --nocapture`).
//!
//! Criterion 4 is expected to fail and is left failing on purpose: the
//! default map parameters a = 1.5, b = 0.1 sit in a stable period-10 window,
//! so nearby seeds frequently regenerate the identical keystream and recover
//! the message. The companion test right below it runs the same procedure at
//! the chaotic parameter a = 1.45 and passes, demonstrating that the
//! implementation, not the code, is what breaks the criterion at the
//! default parameters.

use std::collections::BTreeSet;
use std::time::Instant;

use chaostego::{
    bifurcation_sweep, embed, embed_raw, extract, generate_orbit, message_to_bits, mse,
    psnr_paper_formula, psnr_standard, read_pgm, write_pgm, xor_mask, ChaosKey, GrayImage,
    PgmFormat, StegoPayload, SweepConfig,
};

// ---------------------------------------------------------------------------
// Helpers

fn report<T>(n: usize, desc: &str, check: impl FnOnce() -> Result<T, String>) -> T {
    match check() {
        Ok(value) => {
            println!("[PASS] criterion {n}: {desc}");
            value
        }
        Err(why) => {
            println!("[FAIL] criterion {n}: {desc} — {why}");
            panic!("criterion {n} failed: {why}");
        }
    }
}

/// Deterministic 64-bit LCG used to fabricate covers, messages, and keys so
/// every run sees the same "random" inputs.
struct Lcg(u64);

impl Lcg {
    fn new(seed: u64) -> Self {
        Lcg(seed)
    }

    fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0
    }

    fn next_byte(&mut self) -> u8 {
        (self.next_u64() >> 33) as u8
    }

    fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn next_in(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as usize
    }
}

fn lcg_image(seed: u64, width: u32, height: u32) -> GrayImage {
    let mut rng = Lcg::new(seed);
    let pixels = (0..width as usize * height as usize)
        .map(|_| rng.next_byte())
        .collect();
    GrayImage::new(width, height, pixels)
}

fn median(mut values: Vec<usize>) -> usize {
    values.sort_unstable();
    values[values.len() / 2]
}

// ---------------------------------------------------------------------------
// 1. Bit encoding and masking golden vectors

#[test]
fn criterion_1_bit_encoding_and_mask_vectors() {
    report(
        1,
        "'I' encodes to 01001001 and masks to 11011000 in under 1 ms",
        || {
            let started = Instant::now();

            let bits = message_to_bits(b"I");
            if bits.bits() != [0, 1, 0, 0, 1, 0, 0, 1] {
                return Err(format!("'I' encoded to {:?}", bits.bits()));
            }

            // A keystream whose bits are exactly 10010001, fabricated from a
            // trajectory where +1.0 marks ones and -1.0 marks zeros.
            let pattern = [1u8, 0, 0, 1, 0, 0, 0, 1];
            let xs: Vec<f64> = pattern
                .iter()
                .map(|&b| if b == 1 { 1.0 } else { -1.0 })
                .collect();
            let ys = vec![0.0; xs.len()];
            let stream = chaostego::binarize(&chaostego::ChaosOrbit::from_coordinates(xs, ys));
            if stream.bits() != pattern {
                return Err(format!(
                    "fabricated keystream came out as {:?}",
                    stream.bits()
                ));
            }

            let masked = xor_mask(&bits, &stream).map_err(|e| e.to_string())?;
            if masked.bits() != [1, 1, 0, 1, 1, 0, 0, 0] {
                return Err(format!("mask produced {:?}", masked.bits()));
            }
            if masked.to_bytes() != [0xd8] {
                return Err(format!("packed mask is {:?}", masked.to_bytes()));
            }

            let elapsed = started.elapsed();
            if elapsed.as_micros() >= 1000 {
                return Err(format!("took {elapsed:?}, budget is 1 ms"));
            }
            Ok(())
        },
    );
}

// ---------------------------------------------------------------------------
// 2. Full hide/recover cycle on an 80x80 carrier

const MOVIE_LINE: &[u8] = b"Inception is a movie on dreams";

#[test]
fn criterion_2_embed_extract_cycle_is_exact_and_fast() {
    report(
        2,
        "30-byte message survives an 80x80 embed/extract cycle in under 100 ms",
        || {
            let cover = lcg_image(0x5eed, 80, 80);
            let key = ChaosKey::with_params(0.1, 0.1, 1.5, 0.1);
            let payload = StegoPayload::new(MOVIE_LINE.to_vec());

            let started = Instant::now();
            let (stego, rep) = embed(&cover, &payload, &key).map_err(|e| e.to_string())?;
            let recovered = extract(&stego, &key).map_err(|e| e.to_string())?;
            let elapsed = started.elapsed();

            if recovered != MOVIE_LINE {
                return Err(format!(
                    "recovered {:?}",
                    String::from_utf8_lossy(&recovered)
                ));
            }
            if rep.bits_embedded != 272 {
                return Err(format!("embedded {} bits, expected 272", rep.bits_embedded));
            }
            if elapsed.as_millis() >= 100 {
                return Err(format!("took {elapsed:?}, budget is 100 ms"));
            }
            Ok(())
        },
    );
}

// ---------------------------------------------------------------------------
// 3. Distortion accounting

#[test]
fn criterion_3_distortion_matches_flipped_pixel_count() {
    report(3, "MSE equals flips/6400 exactly, PSNR lands in [60, 80] dB, and the two PSNR forms differ by exactly a factor of two", || {
        let cover = lcg_image(0x5eed, 80, 80);
        let key = ChaosKey::with_params(0.1, 0.1, 1.5, 0.1);
        let payload = StegoPayload::new(MOVIE_LINE.to_vec());
        let (stego, rep) = embed(&cover, &payload, &key).map_err(|e| e.to_string())?;

        // Frozen with an independent implementation of the whole pipeline.
        if rep.pixels_flipped != 142 {
            return Err(format!("{} flips, expected 142", rep.pixels_flipped));
        }

        let measured = mse(&cover, &stego).map_err(|e| e.to_string())?;
        let predicted = rep.pixels_flipped as f64 / 6400.0;
        if measured != predicted {
            return Err(format!("mse {measured} != flips/6400 = {predicted}"));
        }

        let db = psnr_standard(measured);
        if !(60.0..=80.0).contains(&db) {
            return Err(format!("psnr_standard {db} dB outside [60, 80]"));
        }

        let mut rng = Lcg::new(0x99);
        for _ in 0..100 {
            let m = 10f64.powf(-6.0 + 10.0 * rng.next_unit());
            let standard = psnr_standard(m);
            let doubled = 2.0 * psnr_paper_formula(m);
            if (standard - doubled).abs() > 1e-9 * standard.abs() {
                return Err(format!("factor-of-two identity broke at mse {m}"));
            }
        }
        Ok(())
    });
}

// ---------------------------------------------------------------------------
// 4. Key sensitivity at the default parameters (EXPECTED TO FAIL — see the
//    module comment and the companion test below)

/// Runs the sensitivity procedure at given map parameters: embed with 20
/// seeded random keys, then try extraction with x0 nudged by 1e-6. Returns
/// the number of nudged keys that reproduced the message exactly.
fn count_nearby_key_reproductions(a: f64, b: f64) -> usize {
    let cover = lcg_image(0x0c4c, 80, 80);
    let mut rng = Lcg::new(0xc4);
    let mut reproduced = 0;
    let mut tested = 0;
    while tested < 20 {
        let x0 = rng.next_unit() - 0.5;
        let y0 = rng.next_unit() - 0.5;
        let key = ChaosKey::with_params(x0, y0, a, b);
        let payload = StegoPayload::new(MOVIE_LINE.to_vec());
        let Ok((stego, _)) = embed(&cover, &payload, &key) else {
            continue; // divergent seed: not a valid key, redraw
        };
        tested += 1;
        let nudged = ChaosKey::with_params(x0 + 1e-6, y0, a, b);
        if extract(&stego, &nudged).is_ok_and(|m| m == MOVIE_LINE) {
            reproduced += 1;
        }
    }
    reproduced
}

#[test]
fn criterion_4_nearby_keys_never_recover_the_message() {
    report(4, "20/20 keys nudged by 1e-6 fail to recover the message at the default parameters, in under 2 s", || {
        let started = Instant::now();
        let reproduced = count_nearby_key_reproductions(1.5, 0.1);
        let elapsed = started.elapsed();
        if elapsed.as_secs() >= 2 {
            return Err(format!("took {elapsed:?}, budget is 2 s"));
        }
        if reproduced != 0 {
            return Err(format!(
                "{reproduced}/20 nudged keys reproduced the message exactly; \
                 a = 1.5, b = 0.1 lies in a stable period-10 window, so nearby \
                 seeds collapse onto the same cycle and regenerate the identical \
                 keystream (the companion test shows 0/20 at the chaotic a = 1.45)"
            ));
        }
        Ok(())
    });
}

#[test]
fn criterion_4_companion_chaotic_parameters_leak_nothing() {
    report(
        4,
        "(companion, a = 1.45) 20/20 nudged keys fail to recover the message",
        || {
            let reproduced = count_nearby_key_reproductions(1.45, 0.1);
            if reproduced != 0 {
                return Err(format!(
                    "{reproduced}/20 nudged keys reproduced the message"
                ));
            }
            Ok(())
        },
    );
}

// ---------------------------------------------------------------------------
// 5. Agreement with a straight-line reference implementation

/// Computes the expected stego PGM bytes from first principles, sharing no
/// code with the library: explicit recurrence, mean, threshold, XOR, LSB
/// write, and header formatting, all inline.
fn reference_stego_file(
    cover: &[u8; 16],
    message: u8,
    x0: f64,
    y0: f64,
    a: f64,
    b: f64,
) -> Vec<u8> {
    let mut xs = [0.0f64; 8];
    let (mut x, mut y) = (x0, y0);
    for slot in xs.iter_mut() {
        let nx = 1.0 - a * (x * x) + y;
        let ny = b * x;
        assert!(nx.abs() <= 1e6 && ny.abs() <= 1e6);
        x = nx;
        y = ny;
        *slot = x;
    }
    let mut sum = 0.0;
    for v in xs {
        sum += v;
    }
    let mean = sum / 8.0;

    let mut out = b"P5\n4 4\n255\n".to_vec();
    for (i, &pixel) in cover.iter().enumerate() {
        if i < 8 {
            let message_bit = (message >> (7 - i)) & 1;
            let key_bit = u8::from(xs[i] > mean);
            out.push((pixel & 0xfe) | (message_bit ^ key_bit));
        } else {
            out.push(pixel);
        }
    }
    out
}

#[test]
fn criterion_5_matches_independent_reference_bytes() {
    report(
        5,
        "raw single-byte embeds match a from-scratch reference for five keys",
        || {
            let cover_pixels: [u8; 16] = [
                7, 56, 200, 13, 255, 0, 128, 64, 33, 99, 180, 2, 91, 150, 77, 212,
            ];
            let cases: [(u8, f64, f64, f64, f64); 5] = [
                (b'K', 0.1, 0.1, 1.5, 0.1),
                (b'e', 0.3, -0.2, 1.5, 0.1),
                (b'y', -0.4, 0.05, 1.5, 0.1),
                (b'!', 0.1, 0.1, 1.4, 0.3),
                (b'5', 0.2, -0.1, 1.2, 0.2),
            ];
            for (message, x0, y0, a, b) in cases {
                let expected = reference_stego_file(&cover_pixels, message, x0, y0, a, b);
                let cover = GrayImage::new(4, 4, cover_pixels.to_vec());
                let key = ChaosKey::with_params(x0, y0, a, b);
                let (stego, _) = embed_raw(&cover, &[message], &key).map_err(|e| e.to_string())?;
                let actual = write_pgm(&stego, PgmFormat::P5);
                if actual != expected {
                    return Err(format!(
                        "bytes diverge for key ({x0}, {y0}, {a}, {b}): {actual:?} vs {expected:?}"
                    ));
                }
            }
            Ok(())
        },
    );
}

// ---------------------------------------------------------------------------
// 6. Carrier distortion is bounded for arbitrary inputs

#[test]
fn criterion_6_carrier_damage_is_at_most_one_lsb_per_pixel() {
    report(
        6,
        "100 random embeds change pixels by at most the LSB and leave the tail untouched",
        || {
            let mut rng = Lcg::new(0x600d);
            let mut done = 0;
            while done < 100 {
                let width = rng.next_in(8, 40) as u32;
                let height = rng.next_in(8, 40) as u32;
                let cover = {
                    let pixels = (0..width as usize * height as usize)
                        .map(|_| rng.next_byte())
                        .collect();
                    GrayImage::new(width, height, pixels)
                };
                let max_body = (cover.pixel_count() - 32) / 8;
                let body_len = rng.next_in(0, max_body.min(64));
                let body: Vec<u8> = (0..body_len).map(|_| rng.next_byte()).collect();
                let key = ChaosKey::with_params(
                    rng.next_unit() - 0.5,
                    rng.next_unit() - 0.5,
                    1.2 + 0.3 * rng.next_unit(),
                    0.3 * rng.next_unit(),
                );
                let Ok((stego, rep)) = embed(&cover, &StegoPayload::new(body), &key) else {
                    continue; // divergent orbit: redraw the whole triple
                };
                for (i, (&before, &after)) in cover.pixels().iter().zip(stego.pixels()).enumerate()
                {
                    if before.abs_diff(after) > 1 {
                        return Err(format!("pixel {i} moved by {}", before.abs_diff(after)));
                    }
                    if before >> 1 != after >> 1 {
                        return Err(format!("pixel {i} changed above the LSB"));
                    }
                    if i >= rep.bits_embedded && before != after {
                        return Err(format!(
                            "pixel {i} is beyond the {}-bit payload but changed",
                            rep.bits_embedded
                        ));
                    }
                }
                done += 1;
            }
            Ok(())
        },
    );
}

// ---------------------------------------------------------------------------
// 7. Exact arithmetic of the map

#[test]
fn criterion_7_orbit_prefix_is_bit_exact() {
    report(
        7,
        "three iterates from the origin equal the hand-computed values exactly",
        || {
            let key = ChaosKey::with_params(0.0, 0.0, 1.5, 0.1);
            let orbit = generate_orbit(&key, 3).map_err(|e| e.to_string())?;
            let expected_xs = [1.0, -0.5, 0.725];
            let expected_ys = [0.0, 0.1, -0.05];
            if orbit.xs() != expected_xs || orbit.ys() != expected_ys {
                return Err(format!("orbit is xs={:?} ys={:?}", orbit.xs(), orbit.ys()));
            }
            // Bit-for-bit, not merely approximately.
            for (&got, &want) in orbit.xs().iter().zip(&expected_xs) {
                if got.to_bits() != want.to_bits() {
                    return Err(format!("x {got:?} differs from {want:?} in the last bit"));
                }
            }
            Ok(())
        },
    );
}

// ---------------------------------------------------------------------------
// 8. The default parameter sweep shows the period-doubling road

#[test]
fn criterion_8_default_sweep_stages_fixed_point_to_chaos() {
    report(
        8,
        "default sweep medians go 1 -> 2 -> >=8 distinct x values across the a range, in under 5 s",
        || {
            let started = Instant::now();
            let config = SweepConfig::default();
            let points = bifurcation_sweep(&config);
            if points.is_empty() {
                return Err("sweep produced no points".into());
            }

            // Distinct x values per a, after rounding x to 3 decimals.
            let mut counts: Vec<(f64, usize)> = Vec::new();
            let mut current_a = f64::NAN;
            let mut bucket: BTreeSet<i64> = BTreeSet::new();
            for &(a, x) in &points {
                if a != current_a {
                    if !current_a.is_nan() {
                        counts.push((current_a, bucket.len()));
                    }
                    current_a = a;
                    bucket.clear();
                }
                bucket.insert((x * 1000.0).round() as i64);
            }
            counts.push((current_a, bucket.len()));

            let window = |lo: f64, hi: f64| -> Vec<usize> {
                counts
                    .iter()
                    .filter(|&&(a, _)| a >= lo && a <= hi)
                    .map(|&(_, c)| c)
                    .collect()
            };
            let low = median(window(config.a_min, 0.55));
            let mid = median(window(0.65, 0.95));
            let high = median(window(1.45, config.a_max));

            if low != 1 {
                return Err(format!("low-a median is {low}, expected 1 (fixed point)"));
            }
            if mid != 2 {
                return Err(format!("mid-a median is {mid}, expected 2 (period two)"));
            }
            if high < 8 {
                return Err(format!("high-a median is {high}, expected at least 8"));
            }

            let elapsed = started.elapsed();
            if elapsed.as_secs() >= 5 {
                return Err(format!("took {elapsed:?}, budget is 5 s"));
            }
            Ok(())
        },
    );
}

// ---------------------------------------------------------------------------
// 9. Image format robustness

#[test]
fn criterion_9_pgm_round_trips_and_survives_malformed_headers() {
    report(
        9,
        "200 random images round-trip in both formats; 50 malformed files are rejected cleanly",
        || {
            let mut rng = Lcg::new(0x9009);
            for i in 0..200 {
                let width = rng.next_in(1, 256) as u32;
                let height = rng.next_in(1, 256) as u32;
                let pixels: Vec<u8> = (0..width as usize * height as usize)
                    .map(|_| rng.next_byte())
                    .collect();
                let img = GrayImage::new(width, height, pixels);
                for format in [PgmFormat::P5, PgmFormat::P2] {
                    let bytes = write_pgm(&img, format);
                    match read_pgm(&bytes) {
                        Ok(back) if back == img => {}
                        Ok(_) => {
                            return Err(format!("image {i} round-tripped to different pixels"))
                        }
                        Err(e) => return Err(format!("image {i} failed to re-read: {e}")),
                    }
                }
            }

            let corpus: Vec<&[u8]> = vec![
                b"",
                b"P",
                b"P5",
                b"P5\n",
                b"P3\n1 1\n255\n0\n",
                b"P6\n1 1\n255\n\x00",
                b"P7\n1 1\n255\n\x00",
                b"Q5\n1 1\n255\n\x00",
                b"p5\n1 1\n255\n\x00",
                b"5P\n1 1\n255\n\x00",
                b"P5\n2",
                b"P5\n2 2",
                b"P5\n2 2\n255",
                b"P5\n2 2\n255\n",
                b"P5\n2 2\n255\n\x01\x02\x03",
                b"P5\n2 2\n255\n\x01\x02\x03\x04\x05",
                b"P5\n2 2\n255\n\x01\x02\x03\x04\n",
                b"P5\n0 2\n255\n",
                b"P5\n2 0\n255\n",
                b"P5\n-2 2\n255\n\x01\x02\x03\x04",
                b"P5\n2.5 2\n255\n\x01\x02\x03\x04",
                b"P5\nab 2\n255\n\x01\x02\x03\x04",
                b"P5\n2 2\n0\n\x00\x00\x00\x00",
                b"P5\n2 2\n256\n\x00\x00\x00\x00",
                b"P5\n2 2\n65535\n\x00\x00\x00\x00\x00\x00\x00\x00",
                b"P5\n2 2\n999999999999\n\x00\x00\x00\x00",
                b"P5\n2 2\n255X\x01\x02\x03\x04",
                b"P5\n4294967296 1\n255\n",
                b"P5\n4294967295 4294967295\n255\n\x00\x00",
                b"P5\n18446744073709551616 1\n255\n\x00",
                b"P5\n# comment\n",
                b"P5\n2 #comment\n",
                b"\nP5\n2 2\n255\n\x00\x00\x00\x00",
                b" P5\n2 2\n255\n\x00\x00\x00\x00",
                b"P2",
                b"P2\n# comment only",
                b"P2\n1 1\n255\n",
                b"P2\n1 1\n255\n# comment\n",
                b"P2\n1 1\n255\n256\n",
                b"P2\n1 1\n255\n-1\n",
                b"P2\n1 1\n255\n+1\n",
                b"P2\n1 1\n255\nab\n",
                b"P2\n1 1\n255\n0x10\n",
                b"P2\n1 1\n255\n1 2\n",
                b"P2\n1 1\n255\n1 x\n",
                b"P2\n2 2\n255\n1 2 3\n",
                b"P2\n0 1\n255\n",
                b"P2\n1 1\n0\n0\n",
                b"P2\n1 1\n300\n5\n",
                b"P2\n2\n255\n0 0\n",
            ];
            if corpus.len() != 50 {
                return Err(format!("corpus holds {} cases, wanted 50", corpus.len()));
            }
            for (i, bad) in corpus.iter().enumerate() {
                if let Ok(img) = read_pgm(bad) {
                    return Err(format!(
                        "malformed case {i} ({:?}) parsed as a {}x{} image",
                        String::from_utf8_lossy(&bad[..bad.len().min(24)]),
                        img.width(),
                        img.height()
                    ));
                }
            }
            Ok(())
        },
    );
}
