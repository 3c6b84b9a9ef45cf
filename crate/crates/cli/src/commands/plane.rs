use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use pgrowth::classify::{is_degenerate_plane, stats, Degenerate};
use pgrowth::incidence::{AxiomReport, PairCheck, QuadCheck};
use pgrowth::plane::save_plane;
use pgrowth::ProjectivePlane;
use serde::Serialize;

use crate::input::read_system;
use crate::output::{csv_unsupported, id_list, CliError, Format, Output};
use crate::GlobalArgs;

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Prime power q; the plane has q^2 + q + 1 points.
    #[arg(long)]
    pub order: u64,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Plane file to check.
    pub file: PathBuf,
}

pub fn generate(args: &GenArgs, _g: &GlobalArgs) -> Result<Output, CliError> {
    let plane = ProjectivePlane::pg2(args.order)?;
    let mut buf = Vec::new();
    save_plane(plane.system(), &mut buf)?;
    Ok(Output::new(
        String::from_utf8(buf).expect("plane files are ASCII"),
        0,
    ))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CheckReport {
    v: usize,
    b: usize,
    /// Average line size and average point degree, as exact fractions.
    k: String,
    r: String,
    f: usize,
    c: usize,
    c1: usize,
    d: usize,
    #[serde(flatten)]
    axioms: AxiomReport,
    projective_plane: bool,
    order: Option<usize>,
    degenerate: Option<Degenerate>,
}

pub fn check(args: &CheckArgs, g: &GlobalArgs) -> Result<Output, CliError> {
    let system = read_system(&args.file)?;
    let st = stats(&system);
    let axioms = system.verify_axioms();
    let projective = axioms.is_projective_plane();
    let report = CheckReport {
        v: st.v,
        b: st.b,
        k: st.k.to_string(),
        r: st.r.to_string(),
        f: st.f,
        c: st.c,
        c1: st.c1,
        d: st.d,
        axioms,
        projective_plane: projective,
        order: projective.then(|| st.c - 1),
        degenerate: is_degenerate_plane(&system),
    };
    let status = if projective { 0 } else { 1 };
    match g.format {
        Format::Json => Ok(Output::json(&report, status)),
        Format::Csv => csv_unsupported("plane check"),
        Format::Text => Ok(Output::new(render(&report), status)),
    }
}

fn pair_line(name: &str, what: &str, check: &PairCheck) -> String {
    match check {
        PairCheck::Holds => format!("{name} holds\n"),
        PairCheck::Fails {
            first,
            second,
            common,
        } => format!("{name} fails: {what} {first} and {second} have {common} in common\n"),
    }
}

fn render(r: &CheckReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "points {}  lines {}  flags {}", r.v, r.b, r.f);
    let _ = writeln!(
        s,
        "k = {}  r = {}  c = {}  c1 = {}  d = {}",
        r.k, r.r, r.c, r.c1, r.d
    );
    s += &pair_line("P1", "points", &r.axioms.p1);
    s += &pair_line("P2", "lines", &r.axioms.p2);
    match r.axioms.p3 {
        QuadCheck::Found { points } => {
            let _ = writeln!(s, "P3 holds: quadrilateral {}", id_list(&points));
        }
        QuadCheck::Absent => s += "P3 fails: no quadrilateral\n",
    }
    match (r.order, r.degenerate) {
        (Some(n), _) => {
            let _ = writeln!(s, "projective plane of order {n}");
        }
        (None, Some(Degenerate::Fan { apex, spine })) => {
            let _ = writeln!(s, "degenerate: fan with apex {apex} and spine {spine}");
        }
        (None, Some(Degenerate::Pencil { line })) => {
            let _ = writeln!(s, "degenerate: every point on line {line}");
        }
        (None, None) => s += "not a projective plane\n",
    }
    s
}
