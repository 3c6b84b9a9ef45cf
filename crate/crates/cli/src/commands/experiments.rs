use std::fmt::Write as _;

use clap::{Args, ValueEnum};
use pgrowth::configs::{
    is_alpha_ell_desarguesian, little_desargues_check, ruzsa_verify, DesarguesOutcome, Hypothesis,
    RuzsaConfig, RuzsaReport, SearchMode, Selector,
};
use pgrowth::incidence::{LineId, PointId};
use pgrowth::sampling::substream;
use pgrowth::ProjectivePlane;
use rayon::prelude::*;
use serde::Serialize;

use super::grow::csv_err;
use crate::input::PlaneSource;
use crate::output::{config, csv_unsupported, id_list, CliError, Format, Output};
use crate::GlobalArgs;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Args)]
pub struct DesarguesArgs {
    #[command(flatten)]
    pub source: PlaneSource,
    /// Centre; with --ell, check this single pair instead of every flag.
    #[arg(long, requires = "ell")]
    pub alpha: Option<u32>,
    /// Axis; requires --alpha.
    #[arg(long, requires = "alpha")]
    pub ell: Option<u32>,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    pub mode: ModeArg,
    /// Configurations drawn in sampled mode.
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct DesarguesReport {
    v: usize,
    alpha: Option<PointId>,
    ell: Option<LineId>,
    search: SearchMode,
    outcome: DesarguesOutcome,
}

fn check_pair(
    plane: &ProjectivePlane,
    alpha: u32,
    ell: u32,
) -> Result<(PointId, LineId), CliError> {
    let s = plane.system();
    let (a, l) = (PointId(alpha), LineId(ell));
    if s.check_point(a).is_err() || s.check_line(l).is_err() {
        return config(format!("--alpha {alpha} / --ell {ell} out of range"));
    }
    Ok((a, l))
}

pub fn desargues(args: &DesarguesArgs, g: &GlobalArgs) -> Result<Output, CliError> {
    let plane = args.source.plane()?;
    let search = match (args.mode, g.seed) {
        (ModeArg::Exhaustive, _) => SearchMode::Exhaustive,
        (ModeArg::Sampled, Some(seed)) => SearchMode::Sampled {
            count: args.samples,
            seed,
        },
        (ModeArg::Sampled, None) => return config("sampled mode requires --seed"),
    };
    let pair = match (args.alpha, args.ell) {
        (Some(a), Some(l)) => Some(check_pair(&plane, a, l)?),
        _ => None,
    };
    let outcome = match pair {
        Some((a, l)) => is_alpha_ell_desarguesian(&plane, a, l, search),
        None => little_desargues_check(&plane, search),
    };
    let report = DesarguesReport {
        v: plane.system().num_points(),
        alpha: pair.map(|p| p.0),
        ell: pair.map(|p| p.1),
        search,
        outcome,
    };
    let status = if outcome.holds() { 0 } else { 1 };
    match g.format {
        Format::Json => Ok(Output::json(&report, status)),
        Format::Csv => csv_unsupported("desargues"),
        Format::Text => {
            let scope = match pair {
                Some((a, l)) => format!("centre {a}, axis {l}"),
                None => "every flag".to_string(),
            };
            let body = match outcome {
                DesarguesOutcome::Holds { checked } => {
                    format!("holds ({scope}): {checked} configurations checked\n")
                }
                DesarguesOutcome::Counterexample { pair: p } => format!(
                    "counterexample ({scope}): centre {}, axis {}, triangles {} / {}\n",
                    p.center,
                    p.axis,
                    id_list(&p.first),
                    id_list(&p.second)
                ),
            };
            Ok(Output::new(body, status))
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SelectorArg {
    First,
    Last,
}

#[derive(Debug, Args)]
pub struct RuzsaArgs {
    #[command(flatten)]
    pub source: PlaneSource,
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
    /// Sizes of A, B and C, comma separated.
    #[arg(long, default_value = "3,3,3")]
    pub sizes: String,
    /// Centre. Defaults to (0,0,1) for PG(2,q), else point 0.
    #[arg(long, requires = "ell")]
    pub alpha: Option<u32>,
    /// Axis. Defaults to the line x2 = 0 for PG(2,q), else the first line
    /// missing the centre.
    #[arg(long, requires = "alpha")]
    pub ell: Option<u32>,
    #[arg(long, value_enum, default_value_t = SelectorArg::First)]
    pub selector: SelectorArg,
    /// For plane files: skip the (alpha, ell)-Desargues check and report
    /// conditionally.
    #[arg(long)]
    pub unchecked: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct RuzsaTrial {
    trial: u64,
    config: RuzsaConfig,
    report: RuzsaReport,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct RuzsaAggregate {
    trials: usize,
    inequality_holds: usize,
    iota_injective: usize,
    determination_holds: usize,
    hypothesis_holds: usize,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct RuzsaRun {
    v: usize,
    seed: u64,
    alpha: PointId,
    ell: LineId,
    sizes: [usize; 3],
    results: Vec<RuzsaTrial>,
    aggregate: RuzsaAggregate,
}

fn default_centre(plane: &ProjectivePlane) -> (PointId, LineId) {
    if let Some(c) = plane.coordinates() {
        let f = c.field();
        let t = [f.zero(), f.zero(), f.one()];
        return (
            c.point_id(t).expect("origin"),
            c.line_id(t).expect("line at infinity"),
        );
    }
    let s = plane.system();
    let alpha = PointId(0);
    let ell = s
        .lines()
        .find(|&l| !s.is_incident(alpha, l))
        .expect("planes have such a line");
    (alpha, ell)
}

fn parse_sizes(text: &str) -> Result<[usize; 3], CliError> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|t| t.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Config(format!("bad --sizes `{text}`")))?;
    parts
        .try_into()
        .map_err(|_| CliError::Config("--sizes needs exactly three numbers".into()))
}

pub fn ruzsa(args: &RuzsaArgs, g: &GlobalArgs) -> Result<Output, CliError> {
    let plane = args.source.plane()?;
    if args.trials == 0 {
        return config("--trials must be at least 1");
    }
    let sizes = parse_sizes(&args.sizes)?;
    let (alpha, ell) = match (args.alpha, args.ell) {
        (Some(a), Some(l)) => check_pair(&plane, a, l)?,
        _ => default_centre(&plane),
    };
    let hypothesis = match (plane.coordinates(), args.unchecked) {
        (Some(_), _) => Hypothesis::Coordinatized,
        (None, true) => Hypothesis::Assumed,
        (None, false) => Hypothesis::Checked {
            mode: SearchMode::Exhaustive,
        },
    };
    let selector = match args.selector {
        SelectorArg::First => Selector::FirstFound,
        SelectorArg::Last => Selector::LastFound,
    };
    let seed = g.seed.unwrap_or(0);
    let results: Vec<RuzsaTrial> = (0..args.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = substream(seed, t);
            let config = RuzsaConfig::random(&plane, alpha, ell, sizes, &mut rng)?;
            let report = ruzsa_verify(&plane, &config, hypothesis, selector)?;
            Ok(RuzsaTrial {
                trial: t,
                config,
                report,
            })
        })
        .collect::<Result<_, pgrowth::configs::ConfigError>>()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let count = |f: fn(&RuzsaReport) -> bool| results.iter().filter(|r| f(&r.report)).count();
    let aggregate = RuzsaAggregate {
        trials: results.len(),
        inequality_holds: count(|r| r.inequality_holds),
        iota_injective: count(|r| r.iota_injective),
        determination_holds: count(|r| r.determination_holds),
        hypothesis_holds: count(|r| r.hypothesis_holds),
    };
    let failed = results.iter().any(|r| {
        let x = &r.report;
        x.hypothesis_holds && !(x.inequality_holds && x.iota_injective && x.determination_holds)
    });
    let run = RuzsaRun {
        v: plane.system().num_points(),
        seed,
        alpha,
        ell,
        sizes,
        results,
        aggregate,
    };
    let status = u8::from(failed);
    match g.format {
        Format::Json => Ok(Output::json(&run, status)),
        Format::Csv => Ok(Output::new(ruzsa_csv(&run)?, status)),
        Format::Text => Ok(Output::new(ruzsa_text(&run), status)),
    }
}

fn aggregate_line(a: &RuzsaAggregate) -> String {
    format!(
        "{}/{n} inequality holds, {}/{n} iota injective, {}/{n} determination holds, {}/{n} hypothesis holds",
        a.inequality_holds,
        a.iota_injective,
        a.determination_holds,
        a.hypothesis_holds,
        n = a.trials
    )
}

fn ruzsa_csv(run: &RuzsaRun) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "trial",
        "sizeAc",
        "sizeAb",
        "sizeBc",
        "sizeB",
        "inequalityHolds",
        "iotaInjective",
        "determinationHolds",
        "hypothesisHolds",
    ])
    .map_err(csv_err)?;
    for t in &run.results {
        let r = &t.report;
        w.write_record([
            t.trial.to_string(),
            r.size_ac.to_string(),
            r.size_ab.to_string(),
            r.size_bc.to_string(),
            r.size_b.to_string(),
            r.inequality_holds.to_string(),
            r.iota_injective.to_string(),
            r.determination_holds.to_string(),
            r.hypothesis_holds.to_string(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("ASCII") + "# " + &aggregate_line(&run.aggregate) + "\n")
}

fn ruzsa_text(run: &RuzsaRun) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "centre {}, axis {}, sizes {}",
        run.alpha,
        run.ell,
        id_list(&run.sizes)
    );
    for t in &run.results {
        let r = &t.report;
        let _ = writeln!(
            s,
            "trial {}: |[A,C]| = {}, |B| = {}, |[A,B]| = {}, |[B,C]| = {}: {} <= {} {}{}",
            t.trial,
            r.size_ac,
            r.size_b,
            r.size_ab,
            r.size_bc,
            r.size_ac * r.size_b,
            r.size_ab * r.size_bc,
            if r.inequality_holds { "holds" } else { "FAILS" },
            if r.iota_injective {
                ""
            } else {
                ", iota not injective"
            }
        );
    }
    let _ = writeln!(s, "{}", aggregate_line(&run.aggregate));
    s
}
