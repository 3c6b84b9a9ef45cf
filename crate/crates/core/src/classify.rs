//! Structure detectors behind the growth trichotomy: linear-space statistics,
//! collinearity, fans and pencils, subplanes, and the top-level classifier.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::growth::{growth_trace, lines_defined, GrowthTrace};
use crate::incidence::{BuildMode, IncidenceSystem, LineId, LineSet, PointId, PointSet};
use crate::plane::ProjectivePlane;

#[derive(Debug, Clone, Error)]
pub enum ClassifyError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    /// No case of the growth theorem applied. Carries the offending trace.
    #[error("growth theorem violated for a set of {size} points")]
    TheoremViolation {
        size: usize,
        trace: Box<GrowthTrace>,
    },
    #[error("structure lemma violated: {0}")]
    LemmaViolation(String),
}

/// Counting statistics of a finite linear space. `k` and `r` are exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSpaceStats {
    pub v: usize,
    pub b: usize,
    pub k: Ratio<u64>,
    pub r: Ratio<u64>,
    /// Number of flags (incident point/line pairs).
    pub f: usize,
    /// Largest line size.
    pub c: usize,
    /// Size of the second-largest line (0 when there are fewer than two lines).
    pub c1: usize,
    /// Smallest point degree.
    pub d: usize,
}

pub fn stats(system: &IncidenceSystem) -> LinearSpaceStats {
    let (v, b) = (system.num_points(), system.num_lines());
    let f = system.num_incidences();
    let mut sizes: Vec<usize> = system.lines().map(|l| system.points_on(l).len()).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let ratio = |den: usize| {
        if den == 0 {
            Ratio::from_integer(0)
        } else {
            Ratio::new(f as u64, den as u64)
        }
    };
    LinearSpaceStats {
        v,
        b,
        k: ratio(b),
        r: ratio(v),
        f,
        c: sizes.first().copied().unwrap_or(0),
        c1: sizes.get(1).copied().unwrap_or(0),
        d: system
            .points()
            .map(|p| system.lines_through(p).len())
            .min()
            .unwrap_or(0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Collinearity {
    /// At most one point: collinear without naming a line.
    Trivial,
    OnLine {
        line: LineId,
    },
    NotCollinear,
}

pub fn is_collinear(system: &IncidenceSystem, points: &PointSet) -> Collinearity {
    let mut it = points.ones().map(|i| PointId(i as u32));
    let (Some(a), Some(b)) = (it.next(), it.next()) else {
        return Collinearity::Trivial;
    };
    let Ok(line) = system.join(a, b) else {
        return Collinearity::NotCollinear;
    };
    if it.all(|p| system.is_incident(p, line)) {
        Collinearity::OnLine { line }
    } else {
        Collinearity::NotCollinear
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Degenerate {
    /// One line carries every point.
    Pencil { line: LineId },
    /// Every point but `apex` lies on `spine`; every other line is `apex`
    /// plus one spine point.
    Fan { apex: PointId, spine: LineId },
}

/// Recognises a degenerate projective plane (P1 and P2 without P3) and says
/// which of its two shapes it has.
pub fn is_degenerate_plane(system: &IncidenceSystem) -> Option<Degenerate> {
    if !system.verify_axioms().is_degenerate_plane() {
        return None;
    }
    let v = system.num_points();
    let spine = system
        .lines()
        .max_by_key(|&l| (system.points_on(l).len(), std::cmp::Reverse(l)))?;
    let on_spine = system.points_on(spine).len();
    if on_spine == v {
        return Some(Degenerate::Pencil { line: spine });
    }
    if on_spine + 1 != v {
        return None;
    }
    let apex = system.points().find(|&p| !system.is_incident(p, spine))?;
    let fan_shaped = system.lines().filter(|&l| l != spine).all(|l| {
        let pts = system.points_on(l);
        pts.len() == 2 && pts.contains(&apex)
    });
    fan_shaped.then_some(Degenerate::Fan { apex, spine })
}

/// A fan on `n >= 3` points: points `0..n-1` on the spine (line 0), apex
/// `n-1`, and line `i` joining the apex to spine point `i-1`.
pub fn make_fan(n: usize) -> Result<IncidenceSystem, ClassifyError> {
    if n < 3 {
        return Err(ClassifyError::PreconditionViolated(format!(
            "a fan needs at least 3 points, got {n}"
        )));
    }
    let apex = n - 1;
    let mut lines = vec![(0..apex).collect::<Vec<_>>()];
    lines.extend((0..apex).map(|i| vec![i, apex]));
    IncidenceSystem::from_lines(n, lines, BuildMode::Strict)
        .map_err(|e| ClassifyError::PreconditionViolated(e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum EqualCountsCase {
    ProjectivePlane { order: usize },
    Fan { apex: PointId, spine: LineId },
}

/// For a linear space with as many lines as points in which every two lines
/// meet: decides between a projective plane and a fan.
///
/// The triangle is reported as a fan (it is one, and it has no quadrilateral)
/// even though its line and point counts also fit order 1.
pub fn classify_equal_counts(system: &IncidenceSystem) -> Result<EqualCountsCase, ClassifyError> {
    let (v, b) = (system.num_points(), system.num_lines());
    if v != b {
        return Err(ClassifyError::PreconditionViolated(format!(
            "b = {b} differs from v = {v}"
        )));
    }
    let report = system.verify_axioms();
    if !report.p1.holds() || !report.p2.holds() {
        return Err(ClassifyError::PreconditionViolated(
            "not a linear space whose lines pairwise meet".into(),
        ));
    }
    if let Some(Degenerate::Fan { apex, spine }) = is_degenerate_plane(system) {
        return Ok(EqualCountsCase::Fan { apex, spine });
    }
    let st = stats(system);
    let regular = system.lines().all(|l| system.points_on(l).len() == st.c);
    if !regular || st.c < 3 {
        return Err(ClassifyError::LemmaViolation(format!(
            "b = v = {v} but neither regular of line size >= 3 nor a fan"
        )));
    }
    let n = st.c - 1;
    if v != n * n + n + 1 {
        return Err(ClassifyError::LemmaViolation(format!(
            "regular with line size {} but v = {v} != n^2+n+1",
            st.c
        )));
    }
    Ok(EqualCountsCase::ProjectivePlane { order: n })
}

/// Why a candidate point/line family is or is not a subplane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum SubplaneWitness {
    /// Closed, and the induced system has this quadrilateral.
    Subplane {
        quadrilateral: [PointId; 4],
    },
    JoinEscapes {
        p: PointId,
        q: PointId,
        line: LineId,
    },
    MeetEscapes {
        l: LineId,
        m: LineId,
        point: PointId,
    },
    InducedNotAPlane,
}

impl SubplaneWitness {
    pub fn is_subplane(&self) -> bool {
        matches!(self, SubplaneWitness::Subplane { .. })
    }
}

/// True subplanes are closed under join and meet and induce a projective
/// plane on their own points and lines.
pub fn is_subplane(plane: &ProjectivePlane, points: &PointSet, lines: &LineSet) -> SubplaneWitness {
    let pts: Vec<PointId> = points.ones().map(|i| PointId(i as u32)).collect();
    let ls: Vec<LineId> = lines.ones().map(|i| LineId(i as u32)).collect();
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i + 1..] {
            let line = plane.join(p, q).expect("ambient plane satisfies P1");
            if !lines.contains(line.index()) {
                return SubplaneWitness::JoinEscapes { p, q, line };
            }
        }
    }
    for (i, &l) in ls.iter().enumerate() {
        for &m in &ls[i + 1..] {
            let point = plane.meet(l, m).expect("ambient plane satisfies P2");
            if !points.contains(point.index()) {
                return SubplaneWitness::MeetEscapes { l, m, point };
            }
        }
    }
    let (induced, pmap, _) = plane.system().induced(points, lines);
    let report = induced.verify_axioms();
    match report.p3 {
        crate::incidence::QuadCheck::Found { points: quad }
            if report.p1.holds() && report.p2.holds() =>
        {
            SubplaneWitness::Subplane {
                quadrilateral: quad.map(|p| pmap[p.index()]),
            }
        }
        _ => SubplaneWitness::InducedNotAPlane,
    }
}

/// The point whose addition turns `points` into the point set of a subplane,
/// if there is one. Any such point lies on two lines defined by `points`, so
/// only those meets outside the set are tried, in ascending order.
pub fn is_subplane_minus_one(plane: &ProjectivePlane, points: &PointSet) -> Option<PointId> {
    let system = plane.system();
    let defined = lines_defined(system, points);
    let candidates = crate::growth::points_defined(system, &defined);
    candidates
        .ones()
        .filter(|&c| !points.contains(c))
        .map(|c| PointId(c as u32))
        .find(|&c| {
            let mut completed = points.clone();
            completed.insert(c.index());
            let ls = lines_defined(system, &completed);
            is_subplane(plane, &completed, &ls).is_subplane()
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GrowthCase {
    QuadraticGrowth,
    SubplaneExact,
    SubplaneMinusOne,
    Fan,
    Collinear,
}

impl GrowthCase {
    /// The numbered case of the three-way growth theorem (fans and collinear
    /// sets are both degenerate subplanes, case 3).
    pub fn theorem_case(self) -> u8 {
        match self {
            GrowthCase::QuadraticGrowth => 1,
            GrowthCase::SubplaneExact | GrowthCase::SubplaneMinusOne => 2,
            GrowthCase::Fan | GrowthCase::Collinear => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "camelCase")]
pub enum GrowthClassification {
    #[serde(rename_all = "camelCase")]
    QuadraticGrowth { p0: usize, p3: usize },
    #[serde(rename_all = "camelCase")]
    SubplaneExact {
        points: Vec<PointId>,
        lines: Vec<LineId>,
    },
    #[serde(rename_all = "camelCase")]
    SubplaneMinusOne {
        points: Vec<PointId>,
        lines: Vec<LineId>,
        missing: PointId,
    },
    #[serde(rename_all = "camelCase")]
    Fan { apex: PointId, spine: LineId },
    /// `line` is `None` when the set has at most one point.
    #[serde(rename_all = "camelCase")]
    Collinear { line: Option<LineId> },
}

impl GrowthClassification {
    pub fn case(&self) -> GrowthCase {
        match self {
            GrowthClassification::QuadraticGrowth { .. } => GrowthCase::QuadraticGrowth,
            GrowthClassification::SubplaneExact { .. } => GrowthCase::SubplaneExact,
            GrowthClassification::SubplaneMinusOne { .. } => GrowthCase::SubplaneMinusOne,
            GrowthClassification::Fan { .. } => GrowthCase::Fan,
            GrowthClassification::Collinear { .. } => GrowthCase::Collinear,
        }
    }
}

/// `4 |P3| >= |P0|^2`, the quadratic growth bound in exact integers.
pub fn quadratic_bound_met(p0: usize, p3: usize) -> bool {
    4 * p3 as u64 >= (p0 as u64) * (p0 as u64)
}

/// If all points but one of `points` lie on one line (and there are at least
/// three), the apex and spine of that fan. Decided on the system induced by
/// the set and the lines it defines.
pub fn fan_of(system: &IncidenceSystem, points: &PointSet) -> Option<(PointId, LineId)> {
    let defined = lines_defined(system, points);
    let (induced, pmap, lmap) = system.induced(points, &defined);
    match is_degenerate_plane(&induced)? {
        Degenerate::Fan { apex, spine } => Some((pmap[apex.index()], lmap[spine.index()])),
        Degenerate::Pencil { .. } => None,
    }
}

/// Classifies `points` against the growth trichotomy, checking cases in a
/// fixed order: collinear, fan, subplane, subplane minus one, quadratic growth.
/// The returned trace always runs three steps (or to a fixpoint/collapse).
pub fn classify_growth(
    plane: &ProjectivePlane,
    points: &PointSet,
) -> Result<(GrowthClassification, GrowthTrace), ClassifyError> {
    let system = plane.system();
    let trace = growth_trace(system, points, 3).expect("3 steps is positive");
    match is_collinear(system, points) {
        Collinearity::Trivial => {
            return Ok((GrowthClassification::Collinear { line: None }, trace));
        }
        Collinearity::OnLine { line } => {
            return Ok((GrowthClassification::Collinear { line: Some(line) }, trace));
        }
        Collinearity::NotCollinear => {}
    }
    if let Some((apex, spine)) = fan_of(system, points) {
        return Ok((GrowthClassification::Fan { apex, spine }, trace));
    }
    let p1 = trace.points(1).expect("non-collinear traces reach P1");
    let l1 = lines_defined(system, p1);
    if is_subplane(plane, p1, &l1).is_subplane() {
        return Ok((
            GrowthClassification::SubplaneExact {
                points: ids(p1).map(PointId).collect(),
                lines: ids(&l1).map(LineId).collect(),
            },
            trace,
        ));
    }
    if let Some(missing) = is_subplane_minus_one(plane, p1) {
        let mut completed = p1.clone();
        completed.insert(missing.index());
        let lines = lines_defined(system, &completed);
        return Ok((
            GrowthClassification::SubplaneMinusOne {
                points: ids(&completed).map(PointId).collect(),
                lines: ids(&lines).map(LineId).collect(),
                missing,
            },
            trace,
        ));
    }
    let p0 = points.count_ones(..);
    let p3 = trace
        .points(3)
        .expect("trace runs three steps")
        .count_ones(..);
    if quadratic_bound_met(p0, p3) {
        Ok((GrowthClassification::QuadraticGrowth { p0, p3 }, trace))
    } else {
        Err(ClassifyError::TheoremViolation {
            size: p0,
            trace: Box::new(trace),
        })
    }
}

fn ids(set: &fixedbitset::FixedBitSet) -> impl Iterator<Item = u32> + '_ {
    set.ones().map(|i| i as u32)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "camelCase")]
pub enum PropositionCase {
    #[serde(rename_all = "camelCase")]
    Quadratic { p0: usize, p3: usize },
    /// At least half of the points lie on `line` (the weaker, non-strict
    /// threshold).
    #[serde(rename_all = "camelCase")]
    HalfOnALine { line: LineId, on_line: usize },
    /// `P2 \ P1` has `delta <= 1` points; `extra` is that point if any.
    #[serde(rename_all = "camelCase")]
    StagnantP2 {
        delta: usize,
        extra: Option<PointId>,
    },
}

/// Every case of the three-way growth proposition that `points` satisfies.
pub fn proposition_growth_cases(
    plane: &ProjectivePlane,
    points: &PointSet,
) -> Vec<PropositionCase> {
    let system = plane.system();
    let trace = growth_trace(system, points, 3).expect("3 steps is positive");
    let mut out = Vec::new();
    let p0 = points.count_ones(..);
    let p3 = trace.points(3).map_or(0, |s| s.count_ones(..));
    if quadratic_bound_met(p0, p3) {
        out.push(PropositionCase::Quadratic { p0, p3 });
    }
    if let Some((line, on_line)) = heaviest_line(system, points) {
        if 2 * on_line >= p0 {
            out.push(PropositionCase::HalfOnALine { line, on_line });
        }
    }
    if let (Some(p1), Some(p2)) = (trace.points(1), trace.points(2)) {
        let mut extra = p2.clone();
        extra.difference_with(p1);
        let delta = extra.count_ones(..);
        if delta <= 1 {
            out.push(PropositionCase::StagnantP2 {
                delta,
                extra: extra.ones().next().map(|i| PointId(i as u32)),
            });
        }
    }
    out
}

/// The line carrying the most points of the set (lowest id on ties).
pub fn heaviest_line(system: &IncidenceSystem, points: &PointSet) -> Option<(LineId, usize)> {
    let mut count = vec![0usize; system.num_lines()];
    for p in points.ones() {
        for l in system.lines_through(PointId(p as u32)) {
            count[l.index()] += 1;
        }
    }
    count
        .iter()
        .enumerate()
        .max_by_key(|&(i, &c)| (c, std::cmp::Reverse(i)))
        .map(|(i, &c)| (LineId(i as u32), c))
}
