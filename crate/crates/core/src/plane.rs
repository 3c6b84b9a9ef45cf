//! Projective planes: the Desarguesian plane PG(2,q) built from GF(q), and
//! planes loaded from text files.
//!
//! # Plane file format
//!
//! UTF-8 text with LF newlines. The first non-comment line is `plane v b`;
//! each of the next `b` lines lists the 0-based point indices of one line,
//! space separated and strictly ascending. Lines starting with `#` are
//! comments and blank lines are ignored.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use thiserror::Error;

use crate::gf::{Field, FieldElement, GfError};
use crate::incidence::{AxiomReport, BuildMode, IncidenceError, IncidenceSystem, LineId, PointId};

#[derive(Debug, Error)]
pub enum PlaneError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("not a projective plane: {0:?}")]
    NotAPlane(AxiomReport),
    #[error("plane has no coordinates")]
    NotCoordinatized,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Homogeneous coordinates normalized so the first nonzero entry is 1.
pub type Triple = [FieldElement; 3];

#[derive(Debug, Clone)]
pub struct Coordinates {
    field: Field,
    points: Vec<Triple>,
    lines: Vec<Triple>,
    point_index: HashMap<Triple, PointId>,
    line_index: HashMap<Triple, LineId>,
}

impl Coordinates {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn point(&self, p: PointId) -> Triple {
        self.points[p.index()]
    }

    pub fn line(&self, l: LineId) -> Triple {
        self.lines[l.index()]
    }

    /// The point with the given (not necessarily normalized) coordinates.
    pub fn point_id(&self, x: Triple) -> Option<PointId> {
        normalize(&self.field, x).and_then(|n| self.point_index.get(&n).copied())
    }

    /// The line with the given (not necessarily normalized) dual coordinates.
    pub fn line_id(&self, a: Triple) -> Option<LineId> {
        normalize(&self.field, a).and_then(|n| self.line_index.get(&n).copied())
    }
}

/// An incidence system satisfying P1-P3, optionally coordinatized over GF(q).
#[derive(Debug, Clone)]
pub struct ProjectivePlane {
    system: IncidenceSystem,
    order: usize,
    coords: Option<Coordinates>,
}

impl ProjectivePlane {
    /// PG(2,q). Points and lines are the normalized triples in lexicographic
    /// order of their coefficient sequences; a point lies on a line when the
    /// dot product of their triples vanishes.
    pub fn pg2(q: u64) -> Result<ProjectivePlane, PlaneError> {
        let field = Field::new(q)?;
        let triples = normalized_triples(&field);
        let n = triples.len();
        let mut rows = vec![Vec::with_capacity(q as usize + 1); n];
        for (li, a) in triples.iter().enumerate() {
            for (pi, x) in triples.iter().enumerate() {
                if dot(&field, x, a).is_zero() {
                    rows[li].push(pi);
                }
            }
        }
        let system = IncidenceSystem::from_lines(n, rows, BuildMode::Strict)?;
        let index: HashMap<Triple, u32> = triples
            .iter()
            .enumerate()
            .map(|(i, t)| (*t, i as u32))
            .collect();
        let coords = Coordinates {
            field,
            points: triples.clone(),
            lines: triples,
            point_index: index.iter().map(|(t, &i)| (*t, PointId(i))).collect(),
            line_index: index.iter().map(|(t, &i)| (*t, LineId(i))).collect(),
        };
        Ok(ProjectivePlane {
            system,
            order: q as usize,
            coords: Some(coords),
        })
    }

    /// Wraps an abstract system after checking P1-P3. The order is read off
    /// the size of line 0.
    pub fn from_system(system: IncidenceSystem) -> Result<ProjectivePlane, PlaneError> {
        let report = system.verify_axioms();
        if !report.is_projective_plane() {
            return Err(PlaneError::NotAPlane(report));
        }
        let order = system.points_on(LineId(0)).len() - 1;
        Ok(ProjectivePlane {
            system,
            order,
            coords: None,
        })
    }

    pub fn system(&self) -> &IncidenceSystem {
        &self.system
    }

    pub fn into_system(self) -> IncidenceSystem {
        self.system
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coordinates(&self) -> Option<&Coordinates> {
        self.coords.as_ref()
    }

    /// Join through coordinates when available, incidence scan otherwise.
    pub fn join(&self, a: PointId, b: PointId) -> Result<LineId, IncidenceError> {
        match &self.coords {
            Some(_) => self.fast_join(a, b),
            None => self.system.join(a, b),
        }
    }

    pub fn meet(&self, a: LineId, b: LineId) -> Result<PointId, IncidenceError> {
        match &self.coords {
            Some(_) => self.fast_meet(a, b),
            None => self.system.meet(a, b),
        }
    }

    /// The line through two points, computed as the normalized cross product
    /// of their coordinate triples.
    pub fn fast_join(&self, a: PointId, b: PointId) -> Result<LineId, IncidenceError> {
        let c = self.coords.as_ref().expect("fast_join needs coordinates");
        self.system.check_point(a)?;
        self.system.check_point(b)?;
        if a == b {
            return Err(IncidenceError::IdenticalArguments);
        }
        let x = cross(&c.field, &c.point(a), &c.point(b));
        c.line_id(x).ok_or(IncidenceError::NotFound)
    }

    pub fn fast_meet(&self, a: LineId, b: LineId) -> Result<PointId, IncidenceError> {
        let c = self.coords.as_ref().expect("fast_meet needs coordinates");
        self.system.check_line(a)?;
        self.system.check_line(b)?;
        if a == b {
            return Err(IncidenceError::IdenticalArguments);
        }
        let x = cross(&c.field, &c.line(a), &c.line(b));
        c.point_id(x).ok_or(IncidenceError::NotFound)
    }
}

/// All normalized triples over `field`, sorted by their concatenated
/// coefficient sequences.
fn normalized_triples(field: &Field) -> Vec<Triple> {
    let q = field.order();
    let mut out = Vec::with_capacity((q * q + q + 1) as usize);
    let one = field.one();
    let zero = field.zero();
    for a in field.elements() {
        for b in field.elements() {
            out.push([one, a, b]);
        }
    }
    for a in field.elements() {
        out.push([zero, one, a]);
    }
    out.push([zero, zero, one]);
    let key = |t: &Triple| -> Vec<u32> { t.iter().flat_map(|&e| field.coeffs(e)).collect() };
    out.sort_by_cached_key(key);
    out
}

/// Scales `x` so its first nonzero entry is 1; `None` for the zero vector.
pub fn normalize(field: &Field, x: Triple) -> Option<Triple> {
    let lead = x.iter().copied().find(|e| !e.is_zero())?;
    let s = field.inv(lead).ok()?;
    Some(x.map(|e| field.mul(e, s)))
}

pub fn cross(field: &Field, x: &Triple, y: &Triple) -> Triple {
    let m = |a, b| field.mul(a, b);
    [
        field.sub(m(x[1], y[2]), m(x[2], y[1])),
        field.sub(m(x[2], y[0]), m(x[0], y[2])),
        field.sub(m(x[0], y[1]), m(x[1], y[0])),
    ]
}

pub fn dot(field: &Field, x: &Triple, a: &Triple) -> FieldElement {
    x.iter().zip(a).fold(field.zero(), |acc, (&xi, &ai)| {
        field.add(acc, field.mul(xi, ai))
    })
}

/// Writes `system` in plane file format.
pub fn save_plane<W: Write>(system: &IncidenceSystem, mut sink: W) -> std::io::Result<()> {
    writeln!(sink, "plane {} {}", system.num_points(), system.num_lines())?;
    for l in system.lines() {
        let row: Vec<String> = system.points_on(l).iter().map(|p| p.to_string()).collect();
        writeln!(sink, "{}", row.join(" "))?;
    }
    sink.flush()
}

/// Reads a plane file. Lines with fewer than two points are accepted, two
/// lines with the same point set are not.
pub fn load_plane<R: BufRead>(source: R) -> Result<IncidenceSystem, PlaneError> {
    let parse_err = |line: usize, column: usize, message: String| PlaneError::Parse {
        line,
        column,
        message,
    };
    let mut header: Option<(usize, usize)> = None;
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut last_line = 0;
    for (i, text) in source.lines().enumerate() {
        let text = text?;
        let lineno = i + 1;
        last_line = lineno;
        let trimmed = text.trim_end_matches('\r');
        if trimmed.trim().is_empty() || trimmed.trim_start().starts_with('#') {
            continue;
        }
        let tokens = tokenize(trimmed);
        match header {
            None => {
                let words: Vec<&str> = tokens.iter().map(|(_, t)| *t).collect();
                if words.len() != 3 || words[0] != "plane" {
                    return Err(parse_err(lineno, 1, "expected header `plane v b`".into()));
                }
                let num = |k: usize| {
                    words[k].parse::<usize>().map_err(|_| {
                        parse_err(lineno, tokens[k].0, format!("bad count {:?}", words[k]))
                    })
                };
                header = Some((num(1)?, num(2)?));
            }
            Some((v, b)) => {
                if rows.len() == b {
                    return Err(parse_err(lineno, 1, format!("more than {b} lines")));
                }
                let mut row = Vec::with_capacity(tokens.len());
                for (col, tok) in tokens {
                    let idx: usize = tok
                        .parse()
                        .map_err(|_| parse_err(lineno, col, format!("bad point index {tok:?}")))?;
                    if idx >= v {
                        return Err(IncidenceError::IndexOutOfRange {
                            index: idx,
                            count: v,
                        }
                        .into());
                    }
                    if let Some(&prev) = row.last() {
                        if idx <= prev {
                            let what = if idx == prev { "duplicate" } else { "unsorted" };
                            return Err(parse_err(
                                lineno,
                                col,
                                format!("{what} point index {idx}"),
                            ));
                        }
                    }
                    row.push(idx);
                }
                rows.push(row);
            }
        }
    }
    let (v, b) = header.ok_or_else(|| parse_err(last_line + 1, 1, "missing header".into()))?;
    if rows.len() != b {
        return Err(parse_err(
            last_line + 1,
            1,
            format!("expected {b} lines, found {}", rows.len()),
        ));
    }
    let system = IncidenceSystem::from_lines(v, rows, BuildMode::Raw)?;
    let mut seen = HashMap::new();
    for l in system.lines() {
        if let Some(first) = seen.insert(system.points_on(l).to_vec(), l.index()) {
            return Err(IncidenceError::DuplicateLine {
                first,
                second: l.index(),
            }
            .into());
        }
    }
    Ok(system)
}

/// Whitespace-separated tokens with their 1-based starting columns.
fn tokenize(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        match (ch == ' ' || ch == '\t', start) {
            (true, Some(st)) => {
                out.push((st + 1, &s[st..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((st + 1, &s[st..]));
    }
    out
}
