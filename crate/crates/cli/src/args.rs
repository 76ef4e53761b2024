use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

/// Default tolerance of the `verify` checks; `WEYL_TOL` overrides it.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Hamburger,
    Stieltjes,
    Interval,
    Gap,
    Multigap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Verb {
    /// Orthonormal polynomials of both kinds and the recurrence coefficients
    Ortho,
    /// Kernels A, B, C, D at (z, w)
    Kernels,
    /// Circles, vertices and angle of a Weyl region
    Circle,
    /// The region plus membership and tangent cross-checks
    Region,
    /// Kernel identities, Moebius oracle and membership suite
    Verify,
    /// Points along the boundary arcs
    Boundary,
    /// SVG of the circles, vertices and sampled values
    Plot,
}

#[derive(Debug, Parser)]
#[command(name = "weyl", version, about = "Weyl circles and regions of truncated moment problems")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,

    #[arg(long, value_enum, default_value = "hamburger", global = true)]
    pub problem: Problem,

    /// Point in the upper half-plane, written RE+IMi
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, global = true)]
    pub z: Option<Complex64>,

    /// Second kernel argument, written RE+IMi
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, global = true)]
    pub w: Option<Complex64>,

    /// Truncation order n (the index m of the last moment for --problem interval)
    #[arg(long, global = true)]
    pub order: Option<usize>,

    #[arg(long, allow_hyphen_values = true, global = true)]
    pub a: Option<f64>,

    #[arg(long, allow_hyphen_values = true, global = true)]
    pub b: Option<f64>,

    /// Gap list `a1,b1;a2,b2`
    #[arg(long, value_parser = parse_gaps, allow_hyphen_values = true, global = true)]
    pub gaps: Option<Gaps>,

    #[arg(long, global = true)]
    pub samples: Option<usize>,

    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,

    /// Moment sequence JSON; stdin when absent
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    #[arg(long, default_value_t = 1, global = true)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gaps(pub Vec<(f64, f64)>);

/// A fully validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Command {
    pub verb: Verb,
    pub problem: Problem,
    pub z: Option<Complex64>,
    pub w: Option<Complex64>,
    pub order: Option<usize>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub gaps: Vec<(f64, f64)>,
    pub samples: Option<usize>,
    pub format: Format,
    pub input: Option<PathBuf>,
    pub seed: u64,
    pub tolerance: f64,
}

/// `RE+IMi`, e.g. `0+1i`, `-3+0.5i`, `1e-3-2i`.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let bad = || format!("expected RE+IMi, got {text:?}");
    let body = text.trim().strip_suffix('i').ok_or_else(bad)?;
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
        .ok_or_else(bad)?;
    let re: f64 = body[..split].parse().map_err(|_| bad())?;
    let im: f64 = body[split..].trim_start_matches('+').parse().map_err(|_| bad())?;
    if !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

pub fn parse_gaps(text: &str) -> Result<Gaps, String> {
    text.split(';')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let ends: Vec<&str> = part.split(',').collect();
            match ends.as_slice() {
                [a, b] => {
                    let a: f64 = a.trim().parse().map_err(|_| format!("bad gap {part:?}"))?;
                    let b: f64 = b.trim().parse().map_err(|_| format!("bad gap {part:?}"))?;
                    Ok((a, b))
                }
                _ => Err(format!("bad gap {part:?}, expected a,b")),
            }
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Gaps)
}

fn tolerance_from_env() -> Result<f64, String> {
    match std::env::var("WEYL_TOL") {
        Err(_) => Ok(DEFAULT_TOL),
        Ok(raw) => match raw.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
            _ => Err(format!("WEYL_TOL must be a positive number, got {raw:?}")),
        },
    }
}

impl Command {
    /// Check the verb-specific requirements. The point `z` is not checked
    /// here; the library reports a real `z` as `RealAxisZ`.
    pub fn from_cli(cli: Cli) -> Result<Command, String> {
        let verb = cli.verb;
        let format = cli.format.unwrap_or(match verb {
            Verb::Boundary => Format::Csv,
            Verb::Plot => Format::Svg,
            _ => Format::Json,
        });
        let allowed = match verb {
            Verb::Boundary => matches!(format, Format::Csv | Format::Json),
            Verb::Plot => format == Format::Svg,
            _ => format == Format::Json,
        };
        if !allowed {
            return Err(format!("{format:?} output is not available for {verb:?}").to_lowercase());
        }
        let geometric = matches!(verb, Verb::Circle | Verb::Region | Verb::Boundary | Verb::Plot);
        if geometric || verb == Verb::Kernels {
            if cli.z.is_none() {
                return Err("--z is required".into());
            }
            if cli.order.is_none() {
                return Err("--order is required".into());
            }
        }
        if verb == Verb::Kernels && cli.w.is_none() {
            return Err("--w is required".into());
        }
        let mut gaps = cli.gaps.map(|g| g.0).unwrap_or_default();
        if geometric || verb == Verb::Verify {
            match cli.problem {
                Problem::Hamburger => {}
                Problem::Stieltjes if cli.a.is_none() => return Err("--a is required for stieltjes".into()),
                Problem::Interval if cli.a.is_none() || cli.b.is_none() => {
                    return Err("--a and --b are required for interval".into())
                }
                Problem::Gap => match (cli.a, cli.b, gaps.len()) {
                    (Some(a), Some(b), 0) => gaps.push((a, b)),
                    (None, None, 1) => {}
                    _ => return Err("gap needs either --a and --b or a single --gaps entry".into()),
                },
                Problem::Multigap if gaps.is_empty() => return Err("--gaps is required for multigap".into()),
                _ => {}
            }
        }
        if cli.samples == Some(0) {
            return Err("--samples must be positive".into());
        }
        Ok(Command {
            verb,
            problem: cli.problem,
            z: cli.z,
            w: cli.w,
            order: cli.order,
            a: cli.a,
            b: cli.b,
            gaps,
            samples: cli.samples,
            format,
            input: cli.input,
            seed: cli.seed,
            tolerance: tolerance_from_env()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("0+1i"), Ok(Complex64::new(0.0, 1.0)));
        assert_eq!(parse_complex("-3+0.5i"), Ok(Complex64::new(-3.0, 0.5)));
        assert_eq!(parse_complex("2-1i"), Ok(Complex64::new(2.0, -1.0)));
        assert_eq!(parse_complex("1e-3+2E+1i"), Ok(Complex64::new(1e-3, 20.0)));
        assert_eq!(parse_complex("-1e-2-1e-2i"), Ok(Complex64::new(-1e-2, -1e-2)));
        for bad in ["1i", "0+1", "", "i", "a+bi", "0+infi", "1+2j"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn gap_lists() {
        assert_eq!(parse_gaps("-1,1;2,3"), Ok(Gaps(vec![(-1.0, 1.0), (2.0, 3.0)])));
        assert_eq!(parse_gaps("-1, 1"), Ok(Gaps(vec![(-1.0, 1.0)])));
        assert!(parse_gaps("1;2").is_err());
    }
}
