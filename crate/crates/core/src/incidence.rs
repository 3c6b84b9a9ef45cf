//! Abstract incidence systems with no coordinates assumed.
//!
//! Membership is stored both per line and per point, each list sorted
//! ascending, so joins and meets are sorted-list intersections and the growth
//! iteration is linear in the number of incidences.

use std::collections::HashSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

/// Handle of a point, dense in `[0, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PointId(pub u32);

/// Handle of a line, dense in `[0, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct LineId(pub u32);

impl PointId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl LineId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of points, sized to the ambient point count.
pub type PointSet = FixedBitSet;
/// A set of lines, sized to the ambient line count.
pub type LineSet = FixedBitSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IncidenceError {
    #[error("index {index} out of range (count {count})")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("lines {first} and {second} have the same point set")]
    DuplicateLine { first: usize, second: usize },
    #[error("line {line} has {size} point(s); at least 2 are required outside raw mode")]
    ShortLine { line: usize, size: usize },
    #[error("point {point} listed twice on line {line}")]
    RepeatedPoint { line: usize, point: usize },
    #[error("arguments must be distinct")]
    IdenticalArguments,
    #[error("no common element")]
    NotFound,
    #[error("{0} common elements where exactly one was expected")]
    NotUnique(usize),
}

/// Whether [`IncidenceSystem::from_lines`] enforces the usual shape rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BuildMode {
    /// Every line has at least two points and no two lines coincide.
    #[default]
    Strict,
    /// Empty, singleton and repeated lines are accepted.
    Raw,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncidenceSystem {
    points_on_line: Vec<Vec<PointId>>,
    lines_on_point: Vec<Vec<LineId>>,
}

impl IncidenceSystem {
    /// Builds a system on `v` points from per-line point lists. Lists may be
    /// unsorted; a point repeated within one line is an error.
    pub fn from_lines<I, L>(v: usize, lines: I, mode: BuildMode) -> Result<Self, IncidenceError>
    where
        I: IntoIterator<Item = L>,
        L: IntoIterator<Item = usize>,
    {
        let mut points_on_line = Vec::new();
        for (li, line) in lines.into_iter().enumerate() {
            let mut pts: Vec<PointId> = Vec::new();
            for p in line {
                if p >= v {
                    return Err(IncidenceError::IndexOutOfRange { index: p, count: v });
                }
                pts.push(PointId(p as u32));
            }
            pts.sort_unstable();
            if let Some(w) = pts.windows(2).find(|w| w[0] == w[1]) {
                return Err(IncidenceError::RepeatedPoint {
                    line: li,
                    point: w[0].index(),
                });
            }
            if mode == BuildMode::Strict && pts.len() < 2 {
                return Err(IncidenceError::ShortLine {
                    line: li,
                    size: pts.len(),
                });
            }
            points_on_line.push(pts);
        }
        if mode == BuildMode::Strict {
            if let Some((first, second)) = first_duplicate(&points_on_line) {
                return Err(IncidenceError::DuplicateLine { first, second });
            }
        }
        Ok(Self::from_sorted_rows(v, points_on_line))
    }

    fn from_sorted_rows(v: usize, points_on_line: Vec<Vec<PointId>>) -> Self {
        let mut lines_on_point = vec![Vec::new(); v];
        for (li, pts) in points_on_line.iter().enumerate() {
            for p in pts {
                lines_on_point[p.index()].push(LineId(li as u32));
            }
        }
        let system = IncidenceSystem {
            points_on_line,
            lines_on_point,
        };
        debug_assert!(system.is_transpose_consistent());
        system
    }

    pub fn empty() -> Self {
        IncidenceSystem {
            points_on_line: Vec::new(),
            lines_on_point: Vec::new(),
        }
    }

    pub fn num_points(&self) -> usize {
        self.lines_on_point.len()
    }

    pub fn num_lines(&self) -> usize {
        self.points_on_line.len()
    }

    pub fn num_incidences(&self) -> usize {
        self.points_on_line.iter().map(Vec::len).sum()
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> {
        (0..self.num_points() as u32).map(PointId)
    }

    pub fn lines(&self) -> impl Iterator<Item = LineId> {
        (0..self.num_lines() as u32).map(LineId)
    }

    /// Points on `line`, ascending.
    pub fn points_on(&self, line: LineId) -> &[PointId] {
        &self.points_on_line[line.index()]
    }

    /// Lines through `point`, ascending.
    pub fn lines_through(&self, point: PointId) -> &[LineId] {
        &self.lines_on_point[point.index()]
    }

    pub fn is_incident(&self, point: PointId, line: LineId) -> bool {
        self.points_on(line).binary_search(&point).is_ok()
    }

    pub fn empty_point_set(&self) -> PointSet {
        FixedBitSet::with_capacity(self.num_points())
    }

    pub fn empty_line_set(&self) -> LineSet {
        FixedBitSet::with_capacity(self.num_lines())
    }

    /// Points and lines swap roles. Line `i` of the dual is point `i` of
    /// `self` and vice versa, so `dual` is an involution.
    pub fn dual(&self) -> IncidenceSystem {
        let rows = self
            .lines_on_point
            .iter()
            .map(|ls| ls.iter().map(|l| PointId(l.0)).collect())
            .collect();
        Self::from_sorted_rows(self.num_lines(), rows)
    }

    /// All lines through both points.
    pub fn common_lines(&self, a: PointId, b: PointId) -> Vec<LineId> {
        sorted_intersection(self.lines_through(a), self.lines_through(b))
    }

    /// All points on both lines.
    pub fn common_points(&self, a: LineId, b: LineId) -> Vec<PointId> {
        sorted_intersection(self.points_on(a), self.points_on(b))
    }

    /// The unique line through two distinct points.
    pub fn join(&self, a: PointId, b: PointId) -> Result<LineId, IncidenceError> {
        self.check_point(a)?;
        self.check_point(b)?;
        if a == b {
            return Err(IncidenceError::IdenticalArguments);
        }
        unique(self.common_lines(a, b))
    }

    /// The unique point on two distinct lines.
    pub fn meet(&self, a: LineId, b: LineId) -> Result<PointId, IncidenceError> {
        self.check_line(a)?;
        self.check_line(b)?;
        if a == b {
            return Err(IncidenceError::IdenticalArguments);
        }
        unique(self.common_points(a, b))
    }

    /// Whether some line carries all three points.
    pub fn are_collinear(&self, a: PointId, b: PointId, c: PointId) -> bool {
        self.common_lines(a, b)
            .into_iter()
            .any(|l| self.is_incident(c, l))
    }

    pub fn check_point(&self, p: PointId) -> Result<(), IncidenceError> {
        if p.index() < self.num_points() {
            Ok(())
        } else {
            Err(IncidenceError::IndexOutOfRange {
                index: p.index(),
                count: self.num_points(),
            })
        }
    }

    pub fn check_line(&self, l: LineId) -> Result<(), IncidenceError> {
        if l.index() < self.num_lines() {
            Ok(())
        } else {
            Err(IncidenceError::IndexOutOfRange {
                index: l.index(),
                count: self.num_lines(),
            })
        }
    }

    /// Rebuilds the per-point lists from the per-line lists and compares.
    pub fn is_transpose_consistent(&self) -> bool {
        let mut rebuilt = vec![Vec::new(); self.num_points()];
        for l in self.lines() {
            for p in self.points_on(l) {
                match rebuilt.get_mut(p.index()) {
                    Some(v) => v.push(l),
                    None => return false,
                }
            }
        }
        rebuilt == self.lines_on_point
    }

    /// The system restricted to the given points and lines, relabelled densely
    /// in ascending order. Returns the system with the original ids of its
    /// points and lines.
    pub fn induced(
        &self,
        points: &PointSet,
        lines: &LineSet,
    ) -> (IncidenceSystem, Vec<PointId>, Vec<LineId>) {
        let point_ids: Vec<PointId> = points.ones().map(|i| PointId(i as u32)).collect();
        let line_ids: Vec<LineId> = lines.ones().map(|i| LineId(i as u32)).collect();
        let mut relabel = vec![u32::MAX; self.num_points()];
        for (new, p) in point_ids.iter().enumerate() {
            relabel[p.index()] = new as u32;
        }
        let rows = line_ids
            .iter()
            .map(|&l| {
                self.points_on(l)
                    .iter()
                    .filter(|p| points.contains(p.index()))
                    .map(|p| PointId(relabel[p.index()]))
                    .collect()
            })
            .collect();
        (
            Self::from_sorted_rows(point_ids.len(), rows),
            point_ids,
            line_ids,
        )
    }

    /// P1, P2 and P3 with lexicographically first witnesses.
    pub fn verify_axioms(&self) -> AxiomReport {
        AxiomReport {
            p1: self.check_p1(),
            p2: self.dual().check_p1(),
            p3: self.find_quadrilateral(),
        }
    }

    /// True iff every pair of distinct points lies on exactly one line.
    pub fn is_linear_space(&self) -> bool {
        self.check_p1().holds()
    }

    /// First pair of distinct points (in lexicographic order) not covered by
    /// exactly one common line.
    pub fn check_p1(&self) -> PairCheck {
        let v = self.num_points();
        let mut count = vec![0u32; v];
        for a in 0..v {
            count.iter_mut().for_each(|c| *c = 0);
            for l in &self.lines_on_point[a] {
                for x in self.points_on(*l) {
                    if x.index() > a {
                        count[x.index()] += 1;
                    }
                }
            }
            if let Some(b) = (a + 1..v).find(|&b| count[b] != 1) {
                return PairCheck::Fails {
                    first: a as u32,
                    second: b as u32,
                    common: count[b] as usize,
                };
            }
        }
        PairCheck::Holds
    }

    /// Lexicographically first four points with no three on a common line.
    pub fn find_quadrilateral(&self) -> QuadCheck {
        let v = self.num_points() as u32;
        let col = |a: u32, b: u32, c: u32| self.are_collinear(PointId(a), PointId(b), PointId(c));
        for a in 0..v {
            for b in a + 1..v {
                for c in b + 1..v {
                    if col(a, b, c) {
                        continue;
                    }
                    for d in c + 1..v {
                        if !col(a, b, d) && !col(a, c, d) && !col(b, c, d) {
                            return QuadCheck::Found {
                                points: [PointId(a), PointId(b), PointId(c), PointId(d)],
                            };
                        }
                    }
                }
            }
        }
        QuadCheck::Absent
    }
}

fn first_duplicate(rows: &[Vec<PointId>]) -> Option<(usize, usize)> {
    let mut seen = std::collections::HashMap::with_capacity(rows.len());
    let mut dups = HashSet::new();
    let mut first = None;
    for (i, r) in rows.iter().enumerate() {
        if let Some(&j) = seen.get(r) {
            if dups.insert(i) && first.is_none() {
                first = Some((j, i));
            }
        } else {
            seen.insert(r, i);
        }
    }
    first
}

fn sorted_intersection<T: Ord + Copy>(a: &[T], b: &[T]) -> Vec<T> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn unique<T>(mut v: Vec<T>) -> Result<T, IncidenceError> {
    match v.len() {
        0 => Err(IncidenceError::NotFound),
        1 => Ok(v.pop().unwrap()),
        n => Err(IncidenceError::NotUnique(n)),
    }
}

/// Outcome of a "every pair meets exactly once" check. For P1 the pair is
/// two points; for P2 it is two lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum PairCheck {
    Holds,
    Fails {
        first: u32,
        second: u32,
        /// How many common elements the pair actually has.
        common: usize,
    },
}

impl PairCheck {
    pub fn holds(&self) -> bool {
        matches!(self, PairCheck::Holds)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum QuadCheck {
    Found { points: [PointId; 4] },
    Absent,
}

impl QuadCheck {
    pub fn holds(&self) -> bool {
        matches!(self, QuadCheck::Found { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub p1: PairCheck,
    pub p2: PairCheck,
    pub p3: QuadCheck,
}

impl AxiomReport {
    pub fn is_projective_plane(&self) -> bool {
        self.p1.holds() && self.p2.holds() && self.p3.holds()
    }

    pub fn is_degenerate_plane(&self) -> bool {
        self.p1.holds() && self.p2.holds() && !self.p3.holds()
    }
}
