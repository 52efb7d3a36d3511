//! `mpiso spectral`: joint eigenvalues, the l_p radius sequence, and its
//! extrapolated limit, with optional CSV export of the raw sequence.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;

use mpiso::linalg::norms::lp_norm;
use mpiso::spectral::{extrapolate_radius, joint_eigenvalues, lp_radius_sequence, RadiusMode};
use mpiso::{Error, Exponent, Result};

use crate::report::{emit, fnum, seed_echo, OutputFormat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Weigh each power by its spectral radius
    Eigenvalue,
    /// Weigh each power by its Euclidean operator norm
    Norm,
}

impl From<ModeArg> for RadiusMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Eigenvalue => RadiusMode::Eigenvalue,
            ModeArg::Norm => RadiusMode::EuclideanNorm,
        }
    }
}

#[derive(Args, Debug)]
pub struct SpectralArgs {
    /// Tuple file path, or gallery:NAME[?key=value&...]
    pub source: String,
    /// Radius exponent p: a positive number or "inf"
    #[arg(long, default_value = "2")]
    pub p: String,
    /// Length of the radius sequence (k = 1..=k-max)
    #[arg(long = "k-max", default_value_t = 30)]
    pub k_max: u32,
    /// Power weighting used by the sequence
    #[arg(long, value_enum, default_value_t = ModeArg::Eigenvalue)]
    pub mode: ModeArg,
    /// Also write the sequence as CSV (header "k,s_k", one row per k)
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Serialize)]
struct SpectralReport {
    command: &'static str,
    source: String,
    label: String,
    p: String,
    k_max: u32,
    mode: RadiusMode,
    seed: String,
    attempts: u32,
    triangularization_residual: f64,
    points: Vec<Vec<[f64; 2]>>,
    point_p_norms: Vec<f64>,
    unit_sphere_residual: f64,
    terms: Vec<f64>,
    has_zero_terms: bool,
    extrapolated: f64,
    fit_rms: f64,
    fell_back: bool,
    tail_len: usize,
}

pub fn run(args: &SpectralArgs, seed: u64, output: OutputFormat) -> Result<i32> {
    let (tuple, label) = crate::tuple_file::resolve_source(&args.source)?;
    let p = Exponent::parse(&args.p)?;
    let spectrum = joint_eigenvalues(&tuple)?;
    let point_p_norms: Vec<f64> =
        spectrum.points.iter().map(|l| lp_norm(l, p)).collect();
    let unit_sphere_residual = point_p_norms
        .iter()
        .map(|n| (n - 1.0).abs())
        .fold(0.0, f64::max);
    let seq = lp_radius_sequence(&tuple, p, args.k_max, args.mode.into())?;
    let ex = extrapolate_radius(&seq.terms)?;

    if let Some(path) = &args.csv {
        let mut csv = String::from("k,s_k\n");
        for (i, s) in seq.terms.iter().enumerate() {
            csv.push_str(&format!("{},{s:.12e}\n", i + 1));
        }
        std::fs::write(path, csv)
            .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display())))?;
    }

    let report = SpectralReport {
        command: "spectral",
        source: args.source.clone(),
        label,
        p: p.to_string(),
        k_max: args.k_max,
        mode: seq.mode,
        seed: seed_echo(seed),
        attempts: spectrum.attempts,
        triangularization_residual: spectrum.residual,
        points: spectrum
            .points
            .iter()
            .map(|l| l.iter().map(|c| [c.re, c.im]).collect())
            .collect(),
        point_p_norms,
        unit_sphere_residual,
        terms: seq.terms,
        has_zero_terms: seq.has_zero_terms,
        extrapolated: ex.value,
        fit_rms: ex.fit_rms,
        fell_back: ex.fell_back,
        tail_len: ex.tail_len,
    };
    emit(output, &report, || render(&report));
    Ok(0)
}

fn render(r: &SpectralReport) -> String {
    let mode = match r.mode {
        RadiusMode::Eigenvalue => "eigenvalue",
        RadiusMode::EuclideanNorm => "norm",
    };
    let mut out = format!(
        "spectral {} (p = {}, k-max = {}, mode = {mode}, seed = {})\n",
        r.source, r.p, r.k_max, r.seed
    );
    out.push_str(&format!("label: {}\n", r.label));
    out.push_str(&format!(
        "triangularization residual: {} ({} attempt(s))\n",
        fnum(r.triangularization_residual),
        r.attempts
    ));
    out.push_str("joint eigenvalues:\n");
    for (lambda, norm) in r.points.iter().zip(&r.point_p_norms) {
        let coords: Vec<String> = lambda
            .iter()
            .map(|c| format!("{:.6}{:+.6}i", c[0], c[1]))
            .collect();
        out.push_str(&format!(
            "  ({})  |lambda|_p = {}\n",
            coords.join(", "),
            fnum(*norm)
        ));
    }
    out.push_str(&format!(
        "unit sphere residual: {}\n",
        fnum(r.unit_sphere_residual)
    ));
    if r.has_zero_terms {
        out.push_str("radius sequence: contains zero terms (jointly nilpotent levels)\n");
    }
    out.push_str(&format!(
        "radius sequence: s_1 = {}, s_{} = {}\n",
        fnum(*r.terms.first().unwrap_or(&f64::NAN)),
        r.terms.len(),
        fnum(*r.terms.last().unwrap_or(&f64::NAN))
    ));
    out.push_str(&format!(
        "extrapolated radius: {}{} (tail {}, fit rms {})\n",
        fnum(r.extrapolated),
        if r.fell_back { " [fallback: last raw term]" } else { "" },
        r.tail_len,
        fnum(r.fit_rms)
    ));
    out
}
