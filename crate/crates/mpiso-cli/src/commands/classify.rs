//! `mpiso classify`: minimal order search plus the side reports that
//! situate a tuple (parity verdicts, spherical residuals, semi-norm
//! samples).

use clap::Args;
use serde::Serialize;

use mpiso::calculus::{leading_seminorm, sup_norm_infty};
use mpiso::linalg::matrix::basis_vector;
use mpiso::sampling::unit_probes;
use mpiso::{
    is_minfty_isometry, minimal_m, spherical_isometry_residual, Exponent, IsometryReport,
    NormContext, Result, VerifyOptions, DEFAULT_M_MAX, DEFAULT_SAMPLES,
};

use crate::report::{emit, fnum, order_line, seed_echo, verdict_word, OutputFormat};

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Tuple file path, or gallery:NAME[?key=value&...]
    pub source: String,
    /// Power mean exponent p: a positive number or "inf"
    #[arg(long, default_value = "2")]
    pub p: String,
    /// Norm of the underlying space: a positive number or "inf"
    #[arg(long, default_value = "2")]
    pub q: String,
    /// Largest order tried by the minimal-order search
    #[arg(long = "m-max", default_value_t = DEFAULT_M_MAX)]
    pub m_max: u32,
    /// Random probes per verdict (basis vectors are always included)
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
}

#[derive(Serialize)]
struct SeminormSample {
    probe: String,
    value: f64,
}

#[derive(Serialize)]
struct ClassifyReport {
    command: &'static str,
    source: String,
    label: String,
    p: String,
    q: String,
    m_max: u32,
    samples: usize,
    tol: f64,
    seed: String,
    commutator_residual: f64,
    minimal_m: Option<u32>,
    orders: Vec<IsometryReport>,
    minfty: Vec<IsometryReport>,
    spherical_residual: f64,
    spherical_infty_residual: f64,
    seminorm: Vec<SeminormSample>,
}

pub fn run(
    args: &ClassifyArgs,
    seed: u64,
    tol: f64,
    output: OutputFormat,
) -> Result<i32> {
    let (tuple, label) = crate::tuple_file::resolve_source(&args.source)?;
    let p = Exponent::parse(&args.p)?;
    let q = Exponent::parse(&args.q)?;
    let ctx = NormContext::new(q, p);
    let opts = VerifyOptions { samples: args.samples, tol, seed };

    let order = minimal_m(&tuple, &ctx, args.m_max, &opts)?;
    let minfty: Vec<IsometryReport> = (1..=args.m_max)
        .map(|m| is_minfty_isometry(&tuple, q, m, &opts))
        .collect::<Result<_>>()?;
    let spherical_residual = spherical_isometry_residual(&tuple, &ctx, &opts)?;
    let spherical_infty_residual =
        spherical_isometry_residual(&tuple, &NormContext::new(q, Exponent::Infinity), &opts)?;

    let mut seminorm = Vec::new();
    if let Some(m) = order.minimal {
        let mut probes: Vec<(String, Vec<_>)> = (0..tuple.dim().min(2))
            .map(|i| (format!("e{}", i + 1), basis_vector(tuple.dim(), i)))
            .collect();
        for (i, x) in unit_probes(seed, 2, tuple.dim(), q, tuple.is_real())
            .into_iter()
            .enumerate()
        {
            probes.push((format!("random{}", i + 1), x));
        }
        for (name, x) in probes {
            let value = match p {
                Exponent::Infinity => sup_norm_infty(&tuple, &x, q, m)?,
                Exponent::Finite(_) => leading_seminorm(&tuple, &x, &ctx, m)?,
            };
            seminorm.push(SeminormSample { probe: name, value });
        }
    }

    let report = ClassifyReport {
        command: "classify",
        source: args.source.clone(),
        label,
        p: p.to_string(),
        q: q.to_string(),
        m_max: args.m_max,
        samples: args.samples,
        tol,
        seed: seed_echo(seed),
        commutator_residual: tuple.commutator_residual(),
        minimal_m: order.minimal,
        orders: order.reports,
        minfty,
        spherical_residual,
        spherical_infty_residual,
        seminorm,
    };

    emit(output, &report, || render(&report));
    Ok(if report.minimal_m.is_some() { 0 } else { 3 })
}

fn render(r: &ClassifyReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "classify {} (p = {}, q = {}, m-max = {}, samples = {}, tol = {:e}, seed = {})\n",
        r.source, r.p, r.q, r.m_max, r.samples, r.tol, r.seed
    ));
    out.push_str(&format!("label: {}\n", r.label));
    out.push_str(&format!(
        "commutator residual: {}\n",
        fnum(r.commutator_residual)
    ));
    match r.minimal_m {
        Some(m) => out.push_str(&format!("minimal order: m = {m}\n")),
        None => out.push_str(&format!(
            "minimal order: none found up to m = {}\n",
            r.m_max
        )),
    }
    out.push_str("order search:\n");
    for rep in &r.orders {
        out.push_str(&order_line(rep));
    }
    out.push_str("parity verdicts (p = inf):\n");
    for rep in &r.minfty {
        out.push_str(&format!(
            "  m={}: {} (residual {})\n",
            rep.m,
            verdict_word(rep),
            fnum(rep.max_relative_residual)
        ));
    }
    out.push_str(&format!(
        "spherical residual: {} (p = {}), {} (p = inf)\n",
        fnum(r.spherical_residual),
        r.p,
        fnum(r.spherical_infty_residual)
    ));
    if !r.seminorm.is_empty() {
        out.push_str("semi-norm samples at the minimal order:\n");
        for s in &r.seminorm {
            out.push_str(&format!("  |{}| = {}\n", s.probe, fnum(s.value)));
        }
    }
    out
}
