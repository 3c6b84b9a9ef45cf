use std::fmt::Write as _;

use clap::Args;
use pgrowth::classify::{classify_growth, quadratic_bound_met, ClassifyError, GrowthCase};
use pgrowth::incidence::PointSet;
use pgrowth::sampling::{choose, in_range, substream, substream_seed};
use pgrowth::ProjectivePlane;
use rayon::prelude::*;
use serde::Serialize;

use super::grow::{csv_err, trace_dump};
use crate::input::{ids, size_range, PlaneSource};
use crate::output::{config, id_list, CliError, Format, Output};
use crate::GlobalArgs;

/// Largest plane whose subsets `--exhaustive` will enumerate.
const MAX_EXHAUSTIVE_POINTS: usize = 16;

/// Column order of CSV output.
pub const CSV_HEADER: [&str; 14] = [
    "trial", "seed", "q", "p0", "l0", "p1", "l1", "p2", "l2", "p3", "case", "bound", "boundMet",
    "points",
];

#[derive(Debug, Args)]
pub struct SurveyArgs {
    #[command(flatten)]
    pub source: PlaneSource,
    /// Number of random point sets.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Inclusive range of set sizes, `LO..HI`, within `2..v`. Defaults to
    /// `2..min(v, 10)`; with `--exhaustive` the default is every size.
    #[arg(long)]
    pub sizes: Option<String>,
    /// Enumerate every subset (with size in range) instead of sampling.
    #[arg(long, conflicts_with = "trials")]
    pub exhaustive: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SurveyRow {
    trial: u64,
    /// State of the trial's generator; absent for exhaustive sweeps.
    seed: Option<u64>,
    q: usize,
    p0: usize,
    l0: usize,
    p1: usize,
    l1: usize,
    p2: usize,
    l2: usize,
    p3: usize,
    case: String,
    /// `|P0|^2 / 4`, exact in binary floating point at these sizes.
    bound: f64,
    bound_met: bool,
    points: Vec<u32>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Summary {
    rows: usize,
    quadratic_growth: usize,
    subplane_exact: usize,
    subplane_minus_one: usize,
    fan: usize,
    collinear: usize,
    theorem_violation: usize,
    bound_met: usize,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SurveyReport<'a> {
    q: usize,
    v: usize,
    seed: Option<u64>,
    exhaustive: bool,
    sizes: [usize; 2],
    rows: &'a [SurveyRow],
    summary: Summary,
}

const VIOLATION: &str = "TheoremViolation";

fn row(
    plane: &ProjectivePlane,
    trial: u64,
    seed: Option<u64>,
    points: &PointSet,
) -> (SurveyRow, Option<String>) {
    let (case, trace, dump) = match classify_growth(plane, points) {
        Ok((c, t)) => (format!("{:?}", c.case()), t, None),
        Err(ClassifyError::TheoremViolation { trace, .. }) => {
            let dump = trace_dump(&trace);
            (VIOLATION.to_string(), *trace, Some(dump))
        }
        Err(e) => unreachable!("classification of a valid set failed: {e}"),
    };
    let s = trace.size_chain(3);
    let p0 = s[0];
    let row = SurveyRow {
        trial,
        seed,
        q: plane.order(),
        p0,
        l0: s[1],
        p1: s[2],
        l1: s[3],
        p2: s[4],
        l2: s[5],
        p3: s[6],
        case,
        bound: (p0 * p0) as f64 / 4.0,
        bound_met: quadratic_bound_met(p0, s[6]),
        points: ids(points),
    };
    (row, dump)
}

pub fn survey(args: &SurveyArgs, g: &GlobalArgs) -> Result<Output, CliError> {
    let plane = args.source.plane()?;
    let v = plane.system().num_points();
    let (lo, hi) = match &args.sizes {
        Some(text) => size_range(text)?,
        None if args.exhaustive => (0, v),
        None => (2, v.min(10)),
    };
    if args.sizes.is_some() && (lo < 2 || hi > v) {
        return config(format!("--sizes must lie within 2..{v}"));
    }
    let results: Vec<(SurveyRow, Option<String>)> = if args.exhaustive {
        if v > MAX_EXHAUSTIVE_POINTS {
            return config(format!(
                "--exhaustive supports planes of at most {MAX_EXHAUSTIVE_POINTS} points"
            ));
        }
        let masks: Vec<u64> = (0..1u64 << v)
            .filter(|m| (lo..=hi).contains(&(m.count_ones() as usize)))
            .collect();
        masks
            .par_iter()
            .enumerate()
            .map(|(i, &m)| {
                let mut set = plane.system().empty_point_set();
                (0..v)
                    .filter(|b| m >> b & 1 == 1)
                    .for_each(|b| set.insert(b));
                row(&plane, i as u64, None, &set)
            })
            .collect()
    } else {
        let trials = match args.trials {
            Some(0) | None => return config("--trials must be at least 1"),
            Some(t) => t,
        };
        let seed = g.seed.unwrap_or(0);
        let all: Vec<usize> = (0..v).collect();
        (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = substream(seed, t);
                let k = in_range(&mut rng, lo as u64, hi as u64) as usize;
                let mut set = plane.system().empty_point_set();
                choose(&mut rng, &all, k)
                    .into_iter()
                    .for_each(|p| set.insert(p));
                row(&plane, t, Some(substream_seed(seed, t)), &set)
            })
            .collect()
    };
    let rows: Vec<SurveyRow> = results.iter().map(|(r, _)| r.clone()).collect();
    let count = |c: &str| rows.iter().filter(|r| r.case == c).count();
    let name = |c: GrowthCase| format!("{c:?}");
    let summary = Summary {
        rows: rows.len(),
        quadratic_growth: count(&name(GrowthCase::QuadraticGrowth)),
        subplane_exact: count(&name(GrowthCase::SubplaneExact)),
        subplane_minus_one: count(&name(GrowthCase::SubplaneMinusOne)),
        fan: count(&name(GrowthCase::Fan)),
        collinear: count(&name(GrowthCase::Collinear)),
        theorem_violation: count(VIOLATION),
        bound_met: rows.iter().filter(|r| r.bound_met).count(),
    };
    let status = if summary.theorem_violation > 0 { 3 } else { 0 };
    let report = SurveyReport {
        q: plane.order(),
        v,
        seed: (!args.exhaustive).then(|| g.seed.unwrap_or(0)),
        exhaustive: args.exhaustive,
        sizes: [lo, hi],
        rows: &rows,
        summary,
    };
    let mut out = match g.format {
        Format::Json => Output::json(&report, status),
        Format::Csv => Output::new(to_csv(&report)?, status),
        Format::Text => Output::new(to_text(&report), status),
    };
    let dumps: String = results
        .iter()
        .filter_map(|(r, d)| {
            d.as_ref()
                .map(|d| format!("trial {} violates the trichotomy\n{d}", r.trial))
        })
        .collect();
    if !dumps.is_empty() {
        out.diagnostics = Some(dumps);
    }
    Ok(out)
}

fn summary_lines(s: &Summary, prefix: &str) -> String {
    let mut out = String::new();
    for (k, n) in [
        ("rows", s.rows),
        ("QuadraticGrowth", s.quadratic_growth),
        ("SubplaneExact", s.subplane_exact),
        ("SubplaneMinusOne", s.subplane_minus_one),
        ("Fan", s.fan),
        ("Collinear", s.collinear),
        (VIOLATION, s.theorem_violation),
        ("boundMet", s.bound_met),
    ] {
        let _ = writeln!(out, "{prefix}{k} {n}");
    }
    out
}

fn fields(r: &SurveyRow) -> [String; 14] {
    [
        r.trial.to_string(),
        r.seed.map(|s| s.to_string()).unwrap_or_default(),
        r.q.to_string(),
        r.p0.to_string(),
        r.l0.to_string(),
        r.p1.to_string(),
        r.l1.to_string(),
        r.p2.to_string(),
        r.l2.to_string(),
        r.p3.to_string(),
        r.case.clone(),
        r.bound.to_string(),
        r.bound_met.to_string(),
        id_list(&r.points),
    ]
}

/// Rows as CSV, then the summary as `#` comment lines.
fn to_csv(r: &SurveyReport) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for row in r.rows {
        w.write_record(fields(row)).map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let mut s = String::from_utf8(bytes).expect("ASCII");
    s += &summary_lines(&r.summary, "# ");
    Ok(s)
}

fn to_text(r: &SurveyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>6} {:>4} {:>4} {:>4} {:>4} {:>4} {:>4} {:>4} {:>8}  case",
        "trial", "p0", "l0", "p1", "l1", "p2", "l2", "p3", "bound"
    );
    for row in r.rows {
        let _ = writeln!(
            s,
            "{:>6} {:>4} {:>4} {:>4} {:>4} {:>4} {:>4} {:>4} {:>8}  {}{}",
            row.trial,
            row.p0,
            row.l0,
            row.p1,
            row.l1,
            row.p2,
            row.l2,
            row.p3,
            row.bound,
            row.case,
            if row.bound_met {
                ""
            } else {
                " (bound not met)"
            }
        );
    }
    s += &summary_lines(&r.summary, "");
    s
}
