//! Library side of the `weyl` binary: parse a command line, run it against a
//! moment sequence and collect what would go to stdout and stderr.

use std::fmt::Write as _;

use clap::Parser;
use num_complex::Complex64;
use serde::Serialize;
use weyl_core::weyl::{numeric_vertex_angle, validate_membership, MembershipCheck, SELF_CHECK_SAMPLES};
use weyl_core::{
    boundary_samples, gap_circles, hamburger_region, interval_region, kernel_det, kernels_at, multi_gap_region,
    orthonormal_system, stieltjes_region, KernelKind, MomentSequence, OrthoSystem, RegionJson, WeylRegion,
};

pub mod args;
pub mod svg;
pub mod verify;

pub use args::{parse_complex, Cli, Command, Format, Problem, Verb, DEFAULT_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutput {
    fn ok(stdout: String) -> Self {
        RunOutput {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        RunOutput {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

enum Failure {
    Parse(String),
    Library(weyl_core::Error),
}

impl From<weyl_core::Error> for Failure {
    fn from(e: weyl_core::Error) -> Self {
        Failure::Library(e)
    }
}

/// Parse `argv` (program name first) and run it. `input` is used when
/// `--input` is absent.
pub fn run_args<I, T>(argv: I, input: &[u8]) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => RunOutput::ok(text),
                _ => RunOutput::fail(EXIT_PARSE, text),
            };
        }
    };
    match Command::from_cli(cli) {
        Ok(cmd) => run(&cmd, input),
        Err(msg) => RunOutput::fail(EXIT_PARSE, format!("error: {msg}\n")),
    }
}

pub fn run(cmd: &Command, input: &[u8]) -> RunOutput {
    let text = match &cmd.input {
        Some(path) => match std::fs::read(path) {
            Ok(bytes) => bytes,
            Err(e) => return RunOutput::fail(EXIT_PARSE, format!("error: cannot read {}: {e}\n", path.display())),
        },
        None => input.to_vec(),
    };
    let moments: MomentSequence = match serde_json::from_slice(&text) {
        Ok(s) => s,
        Err(e) => return RunOutput::fail(EXIT_PARSE, format!("error: bad moment sequence: {e}\n")),
    };
    let result = match cmd.verb {
        Verb::Ortho => ortho(cmd, &moments),
        Verb::Kernels => kernels(cmd, &moments),
        Verb::Circle => region(cmd, &moments).and_then(|r| to_json(&RegionJson::from(&r))),
        Verb::Region => region(cmd, &moments).and_then(|r| to_json(&RegionReport::new(&r, cmd))),
        Verb::Boundary => boundary(cmd, &moments),
        Verb::Plot => region(cmd, &moments).map(|r| svg::render(&r, cmd.samples.unwrap_or(SELF_CHECK_SAMPLES), cmd.seed)),
        Verb::Verify => {
            return match verify::verify(cmd, &moments) {
                Ok(report) => match to_json(&report) {
                    Ok(out) if report.pass => RunOutput::ok(out),
                    Ok(out) => RunOutput {
                        code: EXIT_VERIFY,
                        stdout: out,
                        stderr: "error: verification failed\n".into(),
                    },
                    Err(f) => failure(f),
                },
                Err(f) => failure(f.into()),
            }
        }
    };
    match result {
        Ok(out) => RunOutput::ok(out),
        Err(f) => failure(f),
    }
}

fn failure(f: Failure) -> RunOutput {
    match f {
        Failure::Parse(msg) => RunOutput::fail(EXIT_PARSE, format!("error: {msg}\n")),
        Failure::Library(e) => RunOutput::fail(EXIT_PRECONDITION, format!("error: {}: {e}\n", e.name())),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut out = serde_json::to_string_pretty(value).map_err(|e| Failure::Parse(e.to_string()))?;
    out.push('\n');
    Ok(out)
}

fn pair(w: Complex64) -> [f64; 2] {
    [w.re + 0.0, w.im + 0.0]
}

#[derive(Serialize)]
struct OrthoJson {
    order: usize,
    p: Vec<Vec<f64>>,
    q: Vec<Vec<f64>>,
    a: Vec<f64>,
    b: Vec<f64>,
    condition_estimate: f64,
}

fn ortho(cmd: &Command, s: &MomentSequence) -> Result<String, Failure> {
    let n = cmd.order.unwrap_or(s.max_order());
    let sys = orthonormal_system(s, n)?;
    let coeffs = |ps: &[weyl_core::Polynomial]| ps.iter().map(|p| p.coeffs().iter().map(|c| c + 0.0).collect()).collect();
    to_json(&OrthoJson {
        order: n,
        p: coeffs(sys.first_kind()),
        q: coeffs(sys.second_kind()),
        a: sys.a().iter().map(|x| x + 0.0).collect(),
        b: sys.b().iter().map(|x| x + 0.0).collect(),
        condition_estimate: sys.condition_estimate(),
    })
}

#[derive(Serialize)]
struct KernelValues {
    #[serde(rename = "A")]
    a: [f64; 2],
    #[serde(rename = "B")]
    b: [f64; 2],
    #[serde(rename = "C")]
    c: [f64; 2],
    #[serde(rename = "D")]
    d: [f64; 2],
}

#[derive(Serialize)]
struct KernelsJson {
    order: usize,
    z: [f64; 2],
    w: [f64; 2],
    sum: KernelValues,
    /// Determinant form; needs one more order than the sum form.
    det: Option<KernelValues>,
}

fn kernels(cmd: &Command, s: &MomentSequence) -> Result<String, Failure> {
    let (n, z, w) = (cmd.order.unwrap_or(0), cmd.z.unwrap_or_default(), cmd.w.unwrap_or_default());
    let with_det = n < s.max_order();
    let sys = orthonormal_system(s, if with_det { n + 1 } else { n })?;
    let k = kernels_at(&sys, n, z, w)?;
    let det = if with_det {
        let v = |kind| kernel_det(&sys, kind, n, z, w).map(pair);
        Some(KernelValues {
            a: v(KernelKind::A)?,
            b: v(KernelKind::B)?,
            c: v(KernelKind::C)?,
            d: v(KernelKind::D)?,
        })
    } else {
        None
    };
    to_json(&KernelsJson {
        order: n,
        z: pair(z),
        w: pair(w),
        sum: KernelValues {
            a: pair(k.a),
            b: pair(k.b),
            c: pair(k.c),
            d: pair(k.d),
        },
        det,
    })
}

/// Orthonormal system of the order a problem needs.
pub fn system_for(problem: Problem, order: usize, s: &MomentSequence) -> weyl_core::Result<OrthoSystem> {
    let n = match problem {
        Problem::Interval => order.div_ceil(2),
        _ => order,
    };
    orthonormal_system(s, n)
}

pub fn build_region(cmd: &Command, sys: &OrthoSystem, order: usize, z: Complex64) -> weyl_core::Result<WeylRegion> {
    let (a, b) = (cmd.a.unwrap_or(f64::NAN), cmd.b.unwrap_or(f64::NAN));
    match cmd.problem {
        Problem::Hamburger => hamburger_region(sys, order, z),
        Problem::Stieltjes => stieltjes_region(sys, order, z, a),
        Problem::Interval => interval_region(sys, order, z, a, b),
        Problem::Gap => {
            let (a, b) = cmd.gaps[0];
            gap_circles(sys, order, z, a, b)
        }
        Problem::Multigap => multi_gap_region(sys, order, z, &cmd.gaps),
    }
}

fn region(cmd: &Command, s: &MomentSequence) -> Result<WeylRegion, Failure> {
    let order = cmd.order.unwrap_or(0);
    let sys = system_for(cmd.problem, order, s)?;
    Ok(build_region(cmd, &sys, order, cmd.z.unwrap_or_default())?)
}

#[derive(Serialize)]
struct RegionReport {
    #[serde(flatten)]
    region: RegionJson,
    numeric_vertex_angle: Option<f64>,
    membership: Option<MembershipCheck>,
}

impl RegionReport {
    fn new(r: &WeylRegion, cmd: &Command) -> Self {
        RegionReport {
            region: RegionJson::from(r),
            numeric_vertex_angle: numeric_vertex_angle(r),
            membership: validate_membership(r, cmd.samples.unwrap_or(SELF_CHECK_SAMPLES), cmd.seed),
        }
    }
}

#[derive(Serialize)]
struct SampleJson {
    arc: usize,
    t: Option<f64>,
    value: [f64; 2],
}

fn boundary(cmd: &Command, s: &MomentSequence) -> Result<String, Failure> {
    let r = region(cmd, s)?;
    let samples = boundary_samples(&r, cmd.samples.unwrap_or(50))?;
    if cmd.format == Format::Json {
        // JSON has no infinity; an endpoint at infinity is written as null
        let rows: Vec<SampleJson> = samples
            .iter()
            .map(|p| SampleJson {
                arc: p.arc,
                t: p.t.is_finite().then_some(p.t),
                value: pair(p.value),
            })
            .collect();
        return to_json(&rows);
    }
    let mut out = String::from("arc,t,re,im\n");
    for p in samples {
        let _ = writeln!(out, "{},{},{},{}", p.arc, p.t, p.value.re + 0.0, p.value.im + 0.0);
    }
    Ok(out)
}
