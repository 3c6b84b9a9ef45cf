use std::fmt::Write as _;

use clap::Args;
use pgrowth::classify::{
    classify_growth, proposition_growth_cases, quadratic_bound_met, ClassifyError,
    GrowthClassification, PropositionCase,
};
use pgrowth::growth::{growth_trace, GrowthTrace, StopReason};
use pgrowth::incidence::{IncidenceSystem, PointSet};
use pgrowth::ProjectivePlane;
use serde::Serialize;

use crate::input::{ids, point_set, PlaneSource};
use crate::output::{config, csv_unsupported, id_list, CliError, Format, Output};
use crate::GlobalArgs;

/// Set contents are printed only for planes up to this many points.
pub const MAX_LISTED_POINTS: usize = 100;

#[derive(Debug, Args)]
pub struct GrowArgs {
    #[command(flatten)]
    pub source: PlaneSource,
    /// Starting point ids, comma separated.
    #[arg(long)]
    pub points: String,
    /// Number of (lines, points) rounds.
    #[arg(long, default_value_t = 3)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub source: PlaneSource,
    /// Point ids, comma separated.
    #[arg(long)]
    pub points: String,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct GrowReport {
    v: usize,
    b: usize,
    steps: usize,
    stop_reason: StopReason,
    /// `|P0|, |L0|, |P1|, ..., |P_steps|`; entries past a fixpoint or a
    /// collapse repeat the final state.
    sizes: Vec<usize>,
    point_sets: Option<Vec<Vec<u32>>>,
    line_sets: Option<Vec<Vec<u32>>>,
    classification: Option<GrowthClassification>,
    theorem_case: Option<u8>,
}

/// The plane behind `source` if it is one, keeping coordinates for PG(2,q).
fn plane_if_any(
    source: &PlaneSource,
    system: &IncidenceSystem,
) -> Result<Option<ProjectivePlane>, CliError> {
    if source.order.is_some() {
        return source.plane().map(Some);
    }
    Ok(ProjectivePlane::from_system(system.clone()).ok())
}

fn violation(err: ClassifyError) -> Result<Output, CliError> {
    match err {
        ClassifyError::TheoremViolation { size, trace } => {
            let mut out = Output::new(String::new(), 3);
            out.diagnostics = Some(format!(
                "growth trichotomy violated by a set of {size} points\n{}",
                trace_dump(&trace)
            ));
            Ok(out)
        }
        other => config(other.to_string()),
    }
}

/// Every computed set of a trace, one per line, for diagnostics.
pub fn trace_dump(trace: &GrowthTrace) -> String {
    let mut s = String::new();
    for (i, p) in trace.computed_point_sets().iter().enumerate() {
        let _ = writeln!(s, "P{i}: {}", id_list(&ids(p)));
        if let Some(l) = trace.computed_line_sets().get(i) {
            let _ = writeln!(s, "L{i}: {}", id_list(&ids(l)));
        }
    }
    let _ = writeln!(s, "stop: {:?}", trace.stop_reason());
    s
}

pub fn grow(args: &GrowArgs, g: &GlobalArgs) -> Result<Output, CliError> {
    if args.steps == 0 {
        return config("--steps must be at least 1");
    }
    let system = args.source.system()?;
    let start = point_set(&system, &args.points)?;
    let trace =
        growth_trace(&system, &start, args.steps).map_err(|e| CliError::Config(e.to_string()))?;
    let plane = plane_if_any(&args.source, &system)?;
    let classification = match &plane {
        Some(pl) => match classify_growth(pl, &start) {
            Ok((c, _)) => Some(c),
            Err(e) => return violation(e),
        },
        None => None,
    };
    let listed = system.num_points() <= MAX_LISTED_POINTS;
    let report = GrowReport {
        v: system.num_points(),
        b: system.num_lines(),
        steps: args.steps,
        stop_reason: trace.stop_reason(),
        sizes: trace.size_chain(args.steps),
        point_sets: listed.then(|| trace.computed_point_sets().iter().map(ids).collect()),
        line_sets: listed.then(|| trace.computed_line_sets().iter().map(ids).collect()),
        theorem_case: classification.as_ref().map(|c| c.case().theorem_case()),
        classification,
    };
    match g.format {
        Format::Json => Ok(Output::json(&report, 0)),
        Format::Csv => Ok(Output::new(grow_csv(&report)?, 0)),
        Format::Text => Ok(Output::new(grow_text(&report), 0)),
    }
}

/// `P`/`L` rows in chain order; members are blank above the listing limit.
fn grow_csv(r: &GrowReport) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["set", "index", "size", "members"])
        .map_err(csv_err)?;
    for (pos, size) in r.sizes.iter().enumerate() {
        let (kind, i) = if pos % 2 == 0 {
            ("P", pos / 2)
        } else {
            ("L", pos / 2)
        };
        let sets = if kind == "P" {
            &r.point_sets
        } else {
            &r.line_sets
        };
        let members = sets
            .as_ref()
            .map(|s| {
                s.get(i)
                    .or(s.last())
                    .map(|m| id_list(m))
                    .unwrap_or_default()
            })
            .unwrap_or_default();
        w.write_record([kind, &i.to_string(), &size.to_string(), &members])
            .map_err(csv_err)?;
    }
    Ok(String::from_utf8(
        w.into_inner()
            .map_err(|e| CliError::Config(e.to_string()))?,
    )
    .expect("ASCII"))
}

pub fn csv_err(e: csv::Error) -> CliError {
    CliError::Config(e.to_string())
}

fn grow_text(r: &GrowReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "plane: {} points, {} lines", r.v, r.b);
    if let (Some(ps), Some(ls)) = (&r.point_sets, &r.line_sets) {
        for (i, p) in ps.iter().enumerate() {
            let _ = writeln!(s, "P{i} ({}): {}", p.len(), id_list(p));
            if let Some(l) = ls.get(i) {
                let _ = writeln!(s, "L{i} ({}): {}", l.len(), id_list(l));
            }
        }
    }
    let _ = writeln!(s, "sizes: {}", id_list(&r.sizes));
    let _ = writeln!(s, "stop: {:?}", r.stop_reason);
    if let Some(c) = &r.classification {
        let _ = writeln!(s, "classification: {}", describe(c));
    }
    s
}

/// One-line summary of a classification.
pub fn describe(c: &GrowthClassification) -> String {
    match c {
        GrowthClassification::QuadraticGrowth { p0, p3 } => {
            format!("QuadraticGrowth (|P0| = {p0}, |P3| = {p3})")
        }
        GrowthClassification::SubplaneExact { points, lines } => format!(
            "SubplaneExact ({} points, {} lines)",
            points.len(),
            lines.len()
        ),
        GrowthClassification::SubplaneMinusOne {
            points, missing, ..
        } => format!(
            "SubplaneMinusOne ({} points, missing {missing})",
            points.len()
        ),
        GrowthClassification::Fan { apex, spine } => format!("Fan (apex {apex}, spine {spine})"),
        GrowthClassification::Collinear { line: Some(l) } => format!("Collinear (line {l})"),
        GrowthClassification::Collinear { line: None } => "Collinear (at most one point)".into(),
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ClassifyReport {
    points: Vec<u32>,
    sizes: Vec<usize>,
    classification: GrowthClassification,
    theorem_case: u8,
    bound_met: bool,
    /// Which of the finer growth alternatives apply to a non-collinear set.
    growth_cases: Vec<PropositionCase>,
}

pub fn classify(args: &ClassifyArgs, g: &GlobalArgs) -> Result<Output, CliError> {
    let plane = args.source.plane()?;
    let start: PointSet = point_set(plane.system(), &args.points)?;
    let (classification, trace) = match classify_growth(&plane, &start) {
        Ok(x) => x,
        Err(e) => return violation(e),
    };
    let sizes = trace.size_chain(3);
    let report = ClassifyReport {
        points: ids(&start),
        bound_met: quadratic_bound_met(sizes[0], sizes[sizes.len() - 1]),
        theorem_case: classification.case().theorem_case(),
        growth_cases: proposition_growth_cases(&plane, &start),
        sizes,
        classification,
    };
    match g.format {
        Format::Json => Ok(Output::json(&report, 0)),
        Format::Csv => csv_unsupported("classify"),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "points: {}", id_list(&report.points));
            let _ = writeln!(s, "sizes: {}", id_list(&report.sizes));
            let _ = writeln!(s, "classification: {}", describe(&report.classification));
            let _ = writeln!(s, "theorem case: {}", report.theorem_case);
            let _ = writeln!(s, "quadratic bound met: {}", report.bound_met);
            Ok(Output::new(s, 0))
        }
    }
}
