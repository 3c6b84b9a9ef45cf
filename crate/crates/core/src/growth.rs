//! The growth iteration: lines defined by a point set, points defined by a
//! line set, and the alternating trace `P0, L0, P1, L1, ...` with the counting
//! lemmas that hold along it.
//!
//! Indexing: `L_i` is computed from `P_i` and `P_{i+1}` from `L_i`, so the size
//! chain reads `|P0| <= |L0| <= |P1| <= |L1| <= ...`.

use serde::Serialize;
use thiserror::Error;

use crate::incidence::{IncidenceSystem, LineId, LineSet, PointId, PointSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrowthError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

/// Lines of `system` incident with at least two points of `points`.
pub fn lines_defined(system: &IncidenceSystem, points: &PointSet) -> LineSet {
    let mut hits = vec![0u8; system.num_lines()];
    let mut out = system.empty_line_set();
    for p in points.ones() {
        for l in system.lines_through(PointId(p as u32)) {
            let h = &mut hits[l.index()];
            if *h < 2 {
                *h += 1;
                if *h == 2 {
                    out.insert(l.index());
                }
            }
        }
    }
    out
}

/// Points of `system` incident with at least two lines of `lines`.
pub fn points_defined(system: &IncidenceSystem, lines: &LineSet) -> PointSet {
    let mut hits = vec![0u8; system.num_points()];
    let mut out = system.empty_point_set();
    for l in lines.ones() {
        for p in system.points_on(LineId(l as u32)) {
            let h = &mut hits[p.index()];
            if *h < 2 {
                *h += 1;
                if *h == 2 {
                    out.insert(p.index());
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StopReason {
    /// `P_{i+1} = P_i`, so every later set repeats.
    Fixpoint,
    /// The step budget ran out.
    MaxSteps,
    /// Some `L_i` had at most one line; later sets are frozen at the last state.
    Collapsed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthTrace {
    point_sets: Vec<PointSet>,
    line_sets: Vec<LineSet>,
    stop: StopReason,
}

impl GrowthTrace {
    /// Sets computed before the iteration stopped: `P0..=Pn` and `L0..` with
    /// one fewer or equally many line sets.
    pub fn computed_point_sets(&self) -> &[PointSet] {
        &self.point_sets
    }

    pub fn computed_line_sets(&self) -> &[LineSet] {
        &self.line_sets
    }

    pub fn stop_reason(&self) -> StopReason {
        self.stop
    }

    /// `P_i`. Past the end of a stopped trace this is the last computed set
    /// (exact for fixpoints; the frozen state for collapsed traces). Past the
    /// end of a `MaxSteps` trace it is `None`.
    pub fn points(&self, i: usize) -> Option<&PointSet> {
        match self.point_sets.get(i) {
            Some(s) => Some(s),
            None if self.stop != StopReason::MaxSteps => self.point_sets.last(),
            None => None,
        }
    }

    pub fn lines(&self, i: usize) -> Option<&LineSet> {
        match self.line_sets.get(i) {
            Some(s) => Some(s),
            None if self.stop != StopReason::MaxSteps => self.line_sets.last(),
            None => None,
        }
    }

    /// The interleaved sizes `|P0|, |L0|, |P1|, |L1|, ...` up to `|P_{steps}|`.
    pub fn size_chain(&self, steps: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(2 * steps + 1);
        for i in 0..=steps {
            match self.points(i) {
                Some(p) => out.push(p.count_ones(..)),
                None => break,
            }
            if i < steps {
                match self.lines(i) {
                    Some(l) => out.push(l.count_ones(..)),
                    None => break,
                }
            }
        }
        out
    }
}

/// Runs the iteration from `start` for at most `max_steps` (L, P) rounds.
pub fn growth_trace(
    system: &IncidenceSystem,
    start: &PointSet,
    max_steps: usize,
) -> Result<GrowthTrace, GrowthError> {
    if max_steps == 0 {
        return Err(GrowthError::PreconditionViolated(
            "max_steps must be positive".into(),
        ));
    }
    let mut point_sets = vec![start.clone()];
    let mut line_sets = Vec::new();
    let mut stop = StopReason::MaxSteps;
    for _ in 0..max_steps {
        let current = point_sets.last().unwrap();
        let lines = lines_defined(system, current);
        let collapsed = lines.count_ones(..) <= 1;
        line_sets.push(lines);
        if collapsed {
            stop = StopReason::Collapsed;
            break;
        }
        let next = points_defined(system, line_sets.last().unwrap());
        if &next == current {
            stop = StopReason::Fixpoint;
            break;
        }
        point_sets.push(next);
    }
    Ok(GrowthTrace {
        point_sets,
        line_sets,
        stop,
    })
}

/// Fisher's inequality `b >= v` for a linear space whose points are not all
/// on one line.
pub fn fisher_holds(system: &IncidenceSystem) -> Result<bool, GrowthError> {
    if !system.is_linear_space() {
        return Err(GrowthError::PreconditionViolated(
            "not a linear space".into(),
        ));
    }
    let v = system.num_points();
    if v <= 1 || system.lines().any(|l| system.points_on(l).len() == v) {
        return Err(GrowthError::PreconditionViolated(
            "all points are collinear".into(),
        ));
    }
    Ok(system.num_lines() >= v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChainCheck {
    pub holds: bool,
    pub sizes: Vec<usize>,
    /// Position in `sizes` of the first entry smaller than its predecessor.
    pub first_violation: Option<usize>,
}

/// Checks that the interleaved size chain of the whole trace is non-decreasing.
pub fn chain_check(trace: &GrowthTrace) -> ChainCheck {
    let steps = trace.computed_line_sets().len();
    let sizes = trace.size_chain(steps);
    let first_violation = sizes.windows(2).position(|w| w[1] < w[0]).map(|i| i + 1);
    ChainCheck {
        holds: first_violation.is_none(),
        sizes,
        first_violation,
    }
}

/// Lower bound on the number of defined lines from two lines carrying `m1` and
/// `m2` points of the set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TwoLineReport {
    pub m1: usize,
    pub m2: usize,
    pub intersection: PointId,
    pub intersection_in_p: bool,
    /// Defined lines through the intersection point.
    pub a: usize,
    pub lower_bound: usize,
    pub actual: usize,
}

impl TwoLineReport {
    pub fn holds(&self) -> bool {
        self.actual >= self.lower_bound
    }
}

pub fn two_line_report(
    system: &IncidenceSystem,
    points: &PointSet,
    l1: LineId,
    l2: LineId,
) -> Result<TwoLineReport, GrowthError> {
    let x = system
        .meet(l1, l2)
        .map_err(|e| GrowthError::PreconditionViolated(format!("lines {l1} and {l2}: {e}")))?;
    let on = |l: LineId| {
        system
            .points_on(l)
            .iter()
            .filter(|p| points.contains(p.index()))
            .count()
    };
    let (m1, m2) = (on(l1), on(l2));
    let defined = lines_defined(system, points);
    let intersection_in_p = points.contains(x.index());
    let a = system
        .lines_through(x)
        .iter()
        .filter(|l| defined.contains(l.index()))
        .count();
    let lower_bound = if intersection_in_p {
        m1.saturating_sub(1) * m2.saturating_sub(1) + a
    } else {
        m1 * m2
    };
    Ok(TwoLineReport {
        m1,
        m2,
        intersection: x,
        intersection_in_p,
        a,
        lower_bound,
        actual: defined.count_ones(..),
    })
}
