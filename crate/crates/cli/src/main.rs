//! `chaostego` — hide and recover text in grayscale PGM images.
//!
//! Every subcommand exits 0 on success and 1 on any failure, with a
//! diagnostic on stderr that names the stage that failed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use chaostego::{
    bifurcation_sweep, compare, embed, embed_raw, extract, extract_raw, read_pgm, write_pgm,
    ChaosKey, GrayImage, PgmFormat, StegoPayload, SweepConfig,
};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "chaostego",
    version,
    about = "Hide and recover text in grayscale PGM images with a chaos-keyed bit mask"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hide a message inside a PGM cover image
    Embed {
        /// Cover image (PGM, binary or ASCII)
        #[arg(long)]
        cover: PathBuf,
        /// Message text given directly on the command line
        #[arg(long, allow_hyphen_values = true)]
        message: Option<String>,
        /// File whose bytes are the message
        #[arg(long)]
        message_file: Option<PathBuf>,
        /// Secret key: "x0,y0" or "x0,y0,a" or "x0,y0,a,b" (defaults a=1.5, b=0.1)
        #[arg(long, value_parser = parse_key, allow_hyphen_values = true)]
        key: ChaosKey,
        /// Where to write the stego image (always binary PGM)
        #[arg(long)]
        out: PathBuf,
        /// Embed the message bits alone, without the self-describing length prefix
        #[arg(long)]
        raw: bool,
    },
    /// Recover a hidden message from a stego image
    Extract {
        /// Stego image produced by `embed`
        #[arg(long)]
        stego: PathBuf,
        /// Secret key used at embed time
        #[arg(long, value_parser = parse_key, allow_hyphen_values = true)]
        key: ChaosKey,
        /// Write the recovered bytes here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// The image was written with `embed --raw`
        #[arg(long)]
        raw: bool,
        /// Number of bytes to recover (raw mode only)
        #[arg(long, requires = "raw")]
        length: Option<usize>,
    },
    /// Measure the distortion between a cover image and its stego twin
    Analyze {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        stego: PathBuf,
        /// Also write a per-value pixel histogram of both images as CSV
        #[arg(long)]
        histogram: Option<PathBuf>,
    },
    /// Sample the long-run behaviour of the keystream map across a range of
    /// its `a` parameter and write the (a, x) pairs as CSV
    Bifurcation {
        #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
        a_min: f64,
        #[arg(long, default_value_t = 1.6, allow_negative_numbers = true)]
        a_max: f64,
        /// Number of evenly spaced a values, endpoints included
        #[arg(long, default_value_t = 600)]
        a_steps: usize,
        #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        x0: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        y0: f64,
        /// Iterations discarded before sampling starts
        #[arg(long, default_value_t = 1000)]
        transient: usize,
        /// Iterations recorded per a value
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parses "x0,y0", "x0,y0,a", or "x0,y0,a,b" with a period as the only
/// accepted decimal separator. Every part must be a finite number.
fn parse_key(spec: &str) -> Result<ChaosKey, String> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() < 2 || parts.len() > 4 {
        return Err(format!(
            "expected 2 to 4 comma-separated numbers (x0,y0[,a[,b]]), got {}",
            parts.len()
        ));
    }
    let mut values = [
        0.0,
        0.0,
        chaostego::chaos::DEFAULT_A,
        chaostego::chaos::DEFAULT_B,
    ];
    for (slot, part) in values.iter_mut().zip(&parts) {
        let number: f64 = part
            .trim()
            .parse()
            .map_err(|_| format!("'{part}' is not a number"))?;
        if !number.is_finite() {
            return Err(format!("'{part}' is not finite"));
        }
        *slot = number;
    }
    Ok(ChaosKey::with_params(
        values[0], values[1], values[2], values[3],
    ))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version arrive as "errors" but are not failures.
            let code = if err.use_stderr() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            };
            let _ = err.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Embed {
            cover,
            message,
            message_file,
            key,
            out,
            raw,
        } => cmd_embed(&cover, message, message_file, &key, &out, raw),
        Command::Extract {
            stego,
            key,
            out,
            raw,
            length,
        } => cmd_extract(&stego, &key, out.as_deref(), raw, length),
        Command::Analyze {
            cover,
            stego,
            histogram,
        } => cmd_analyze(&cover, &stego, histogram.as_deref()),
        Command::Bifurcation {
            a_min,
            a_max,
            a_steps,
            b,
            x0,
            y0,
            transient,
            samples,
            out,
        } => cmd_bifurcation(
            SweepConfig {
                a_min,
                a_max,
                a_steps,
                b,
                x0,
                y0,
                transient,
                samples,
            },
            &out,
        ),
    }
}

fn load_image(path: &Path, role: &str) -> Result<GrayImage> {
    let bytes =
        fs::read(path).with_context(|| format!("reading {role} image {}", path.display()))?;
    read_pgm(&bytes).with_context(|| format!("parsing {role} image {}", path.display()))
}

fn cmd_embed(
    cover_path: &Path,
    message: Option<String>,
    message_file: Option<PathBuf>,
    key: &ChaosKey,
    out: &Path,
    raw: bool,
) -> Result<()> {
    let cover = load_image(cover_path, "cover")?;
    let message: Vec<u8> = match (message, message_file) {
        (Some(text), None) => text.into_bytes(),
        (None, Some(path)) => {
            fs::read(&path).with_context(|| format!("reading message file {}", path.display()))?
        }
        _ => bail!("provide exactly one of --message or --message-file"),
    };

    let (stego, report) = if raw {
        embed_raw(&cover, &message, key).context("embedding message")?
    } else {
        if message.len() > u32::MAX as usize {
            bail!(
                "embedding message: {} bytes exceed the length prefix",
                message.len()
            );
        }
        embed(&cover, &StegoPayload::new(message), key).context("embedding message")?
    };

    fs::write(out, write_pgm(&stego, PgmFormat::P5))
        .with_context(|| format!("writing stego image {}", out.display()))?;

    let capacity = cover.pixel_count();
    println!("bits_embedded: {}", report.bits_embedded);
    println!("pixels_flipped: {}", report.pixels_flipped);
    println!(
        "capacity_used: {}/{} bits ({:.2}%)",
        report.bits_embedded,
        capacity,
        100.0 * report.bits_embedded as f64 / capacity as f64
    );
    Ok(())
}

fn cmd_extract(
    stego_path: &Path,
    key: &ChaosKey,
    out: Option<&Path>,
    raw: bool,
    length: Option<usize>,
) -> Result<()> {
    let stego = load_image(stego_path, "stego")?;
    let message = if raw {
        let Some(length) = length else {
            bail!("raw extraction needs --length, the number of bytes to recover");
        };
        extract_raw(&stego, key, length).context("extracting message")?
    } else {
        extract(&stego, key).context("extracting message")?
    };
    match out {
        Some(path) => fs::write(path, &message)
            .with_context(|| format!("writing recovered message {}", path.display()))?,
        None => std::io::stdout()
            .write_all(&message)
            .context("writing recovered message to stdout")?,
    }
    Ok(())
}

fn cmd_analyze(cover_path: &Path, stego_path: &Path, histogram: Option<&Path>) -> Result<()> {
    let cover = load_image(cover_path, "cover")?;
    let stego = load_image(stego_path, "stego")?;
    let report = compare(&cover, &stego).context("comparing images")?;

    println!("mse: {}", report.mse);
    println!("psnr_paper: {}", report.psnr_paper);
    println!("psnr_standard: {}", report.psnr_standard);
    println!("pixels_different: {}", report.pixels_different);
    println!("max_abs_diff: {}", report.max_abs_diff);

    if let Some(path) = histogram {
        let mut cover_counts = [0u64; 256];
        for &p in cover.pixels() {
            cover_counts[p as usize] += 1;
        }
        let mut stego_counts = [0u64; 256];
        for &p in stego.pixels() {
            stego_counts[p as usize] += 1;
        }
        let mut csv = String::with_capacity(16 * 257);
        csv.push_str("value,cover,stego\n");
        for value in 0..256 {
            csv.push_str(&format!(
                "{},{},{}\n",
                value, cover_counts[value], stego_counts[value]
            ));
        }
        fs::write(path, csv).with_context(|| format!("writing histogram {}", path.display()))?;
    }
    Ok(())
}

fn cmd_bifurcation(config: SweepConfig, out: &Path) -> Result<()> {
    if !config.a_min.is_finite() || !config.a_max.is_finite() {
        bail!("sweep bounds must be finite");
    }
    if config.a_min >= config.a_max {
        bail!(
            "--a-min ({}) must be strictly below --a-max ({})",
            config.a_min,
            config.a_max
        );
    }
    if config.a_steps < 2 {
        bail!("--a-steps must be at least 2 to cover both endpoints");
    }
    if config.samples < 1 {
        bail!("--samples must be at least 1");
    }
    if !config.b.is_finite() || !config.x0.is_finite() || !config.y0.is_finite() {
        bail!("--b, --x0, and --y0 must be finite");
    }

    let points = bifurcation_sweep(&config);
    let mut csv = String::with_capacity(24 * (points.len() + 1));
    csv.push_str("a,x\n");
    for (a, x) in points {
        csv.push_str(&format!("{a},{x}\n"));
    }
    fs::write(out, csv).with_context(|| format!("writing sweep {}", out.display()))?;
    Ok(())
}
