use clap::{Args, ValueEnum};
use serde_json::json;
use weaksub_core::analytic::{
    afe_weight_table, make_lfunction_data, partial_sum, weight_decay_slope, AfeConfig, LSource,
};
use weaksub_core::bounds::{correlation_products, named_constants};
use weaksub_core::lseries::{adjoint_table, rankin_table, standard_table, zeta_table};
use weaksub_core::modforms::eigenform;

use crate::output::{num, Format, Output};
use crate::{Failure, RunConfig};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKindArg {
    AfeWeights,
    PartialSums,
    CorrelationProducts,
    Constants,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesArg {
    Zeta,
    Standard,
    Adjoint,
    Rankin,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub kind: TableKindArg,
    /// Weight of the form (second form defaults to the same weight).
    #[arg(long, default_value_t = 12)]
    pub k: u32,
    #[arg(long)]
    pub k2: Option<u32>,
    /// Largest n of the weight table.
    #[arg(long, default_value_t = 1000)]
    pub nmax: u64,
    /// Which Dirichlet series the partial sums run over.
    #[arg(long = "series", value_enum, default_value_t = SeriesArg::Rankin)]
    pub series: SeriesArg,
    /// Cutoff of a partial sum or product.
    #[arg(long, default_value_t = 1000.0)]
    pub x: f64,
}

pub fn run(args: &TableArgs, run: &RunConfig, out: &Output) -> Result<(), Failure> {
    match args.kind {
        TableKindArg::AfeWeights => afe_weights(args, out),
        TableKindArg::PartialSums => partial_sums(args, run, out),
        TableKindArg::CorrelationProducts => correlation(args, run, out),
        TableKindArg::Constants => constants(out),
    }
}

fn afe_weights(args: &TableArgs, out: &Output) -> Result<(), Failure> {
    if args.nmax == 0 {
        return Err(Failure::Usage("--nmax must be at least 1".into()));
    }
    let cfg = AfeConfig::gaussian();
    let f = eigenform(args.k, cfg.weight_terms)?;
    let ad = make_lfunction_data(LSource::Adjoint(&f), cfg.weight_terms, 64)?;
    let ns: Vec<u64> = (1..=args.nmax).collect();
    let rows = afe_weight_table(&ns, &ad, &cfg)?;
    // decay diagnostic on [10k², 100k²]
    let k2 = (args.k as u64).pow(2);
    let slope = weight_decay_slope(&ad, &cfg, 10 * k2, 100 * k2, 9)?;
    match out.format {
        Format::Json => out.json(&json!({ "rows": rows, "slope": slope })),
        Format::Csv => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| vec![r.n.to_string(), num(r.w_re), num(r.w_im)])
                .collect();
            let trailer = vec![format!(
                "slope over [{}, {}] = {} (target <= {}, {})",
                slope.n_lo,
                slope.n_hi,
                num(slope.slope),
                num(slope.target),
                if slope.pass { "pass" } else { "fail" }
            )];
            out.csv_with_trailer(&["n", "W_re", "W_im"], &body, &trailer)
        }
    }
}

fn partial_sums(args: &TableArgs, run: &RunConfig, out: &Output) -> Result<(), Failure> {
    if !(args.x >= 1.0) {
        return Err(Failure::Usage("--x must be at least 1".into()));
    }
    let n = args.x.floor() as usize;
    let prec = run.precision;
    let k2 = args.k2.unwrap_or(args.k);
    let table = match args.series {
        SeriesArg::Zeta => zeta_table(n, prec)?,
        SeriesArg::Standard => standard_table(&eigenform(args.k, n)?, n, prec)?,
        SeriesArg::Adjoint => adjoint_table(&eigenform(args.k, n)?, n, prec)?,
        SeriesArg::Rankin => rankin_table(&eigenform(args.k, n)?, &eigenform(k2, n)?, n, prec)?,
    };
    let s = partial_sum(&table, args.x, false)?;
    let sw = partial_sum(&table, args.x, true)?;
    let label = table.kind().label();
    match out.format {
        Format::Json => out.json(&json!({
            "series": label, "x": args.x,
            "S_re": s.re, "S_im": s.im, "S_log_re": sw.re, "S_log_im": sw.im,
        })),
        Format::Csv => out.csv(
            &["series", "x", "S_re", "S_im", "S_log_re", "S_log_im"],
            &[vec![label, num(args.x), num(s.re), num(s.im), num(sw.re), num(sw.im)]],
        ),
    }
}

fn correlation(args: &TableArgs, run: &RunConfig, out: &Output) -> Result<(), Failure> {
    if !(args.x >= 3.0) {
        return Err(Failure::Usage("--x must be at least 3".into()));
    }
    let n = args.x.floor() as usize;
    let f = eigenform(args.k, n)?;
    let g = eigenform(args.k2.unwrap_or(args.k), n)?;
    let r = correlation_products(&f, &g, args.x, run.precision)?;
    match out.format {
        Format::Json => out.json(&r),
        Format::Csv => out.csv(
            &[
                "x",
                "sound_product",
                "holo_product",
                "combined",
                "alpha",
                "interpolated",
                "exponent",
            ],
            &[vec![
                num(r.x),
                num(r.sound_product),
                num(r.holo_product),
                num(r.combined),
                num(r.alpha),
                num(r.interpolated),
                num(r.exponent),
            ]],
        ),
    }
}

fn constants(out: &Output) -> Result<(), Failure> {
    let table = named_constants();
    match out.format {
        Format::Json => out.json(&table),
        Format::Csv => {
            let rows: Vec<Vec<String>> = table
                .iter()
                .map(|c| {
                    vec![
                        c.name.to_string(),
                        format!("\"{}\"", c.expression),
                        c.decimal.clone(),
                        c.digits.to_string(),
                        format!("\"{}\"", c.provenance),
                    ]
                })
                .collect();
            out.csv(&["name", "expression", "decimal", "digits", "provenance"], &rows)
        }
    }
}
