//! Configuration checks: `(alpha, ell)`-Desargues, the little Desargues
//! property, and the bracket-set triangle inequality with its explicit
//! injection, plus the difference-set inequality it mirrors.
//!
//! Non-degeneracy for perspective triangles: the six vertices are distinct
//! from the centre and off the axis; corresponding vertices are distinct and
//! collinear with the centre; the three lines through the centre are distinct;
//! neither triangle is collinear.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::incidence::{LineId, PointId, PointSet};
use crate::plane::ProjectivePlane;
use crate::sampling::{below, substream};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("bracket undefined: {0}")]
    Undefined(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

/// `[x, y]`: where the line through `x` and `y` crosses `ell`.
pub fn bracket(
    plane: &ProjectivePlane,
    x: PointId,
    y: PointId,
    ell: LineId,
) -> Result<PointId, ConfigError> {
    let s = plane.system();
    if x == y {
        return Err(ConfigError::Undefined(format!("x = y = {x}")));
    }
    if s.is_incident(x, ell) && s.is_incident(y, ell) {
        return Err(ConfigError::Undefined(format!("{x} and {y} both on {ell}")));
    }
    let xy = plane
        .join(x, y)
        .map_err(|e| ConfigError::Undefined(e.to_string()))?;
    plane
        .meet(xy, ell)
        .map_err(|e| ConfigError::Undefined(e.to_string()))
}

/// All brackets `[x, y]` for `x` in `xs`, `y` in `ys`, as an ascending set.
pub fn bracket_set(
    plane: &ProjectivePlane,
    xs: &[PointId],
    ys: &[PointId],
    ell: LineId,
) -> Result<Vec<PointId>, ConfigError> {
    let s = plane.system();
    let xset: HashSet<_> = xs.iter().collect();
    if let Some(p) = ys.iter().find(|p| xset.contains(p)) {
        return Err(ConfigError::PreconditionViolated(format!(
            "point {p} in both sets"
        )));
    }
    let off = |set: &[PointId]| set.iter().all(|&p| !s.is_incident(p, ell));
    if !off(xs) && !off(ys) {
        return Err(ConfigError::PreconditionViolated(
            "neither set is disjoint from the axis".into(),
        ));
    }
    let mut out = std::collections::BTreeSet::new();
    for &x in xs {
        for &y in ys {
            out.insert(bracket(plane, x, y, ell)?);
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "camelCase")]
pub enum SearchMode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PerspectiveTrianglePair {
    pub center: PointId,
    pub axis: LineId,
    pub first: [PointId; 3],
    pub second: [PointId; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum DesarguesOutcome {
    /// No violation among `checked` configurations.
    Holds {
        checked: u64,
    },
    Counterexample {
        pair: PerspectiveTrianglePair,
    },
}

impl DesarguesOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, DesarguesOutcome::Holds { .. })
    }
}

/// Points available as triangle vertices for centre `alpha` and axis `ell`.
fn vertex_candidates(plane: &ProjectivePlane, alpha: PointId, ell: LineId) -> Vec<PointId> {
    let s = plane.system();
    s.points()
        .filter(|&p| p != alpha && !s.is_incident(p, ell))
        .collect()
}

/// Given the first triangle and the second `a`-vertex, builds the second
/// triangle so that the `ab` and `bc` sides meet on the axis, then reports
/// whether the `ac` sides do too. `None` if the configuration is degenerate.
fn complete_and_check(
    plane: &ProjectivePlane,
    alpha: PointId,
    ell: LineId,
    first: [PointId; 3],
    a2: PointId,
) -> Option<(PerspectiveTrianglePair, bool)> {
    let s = plane.system();
    let [a1, b1, c1] = first;
    let j = |x, y| plane.join(x, y).ok();
    let m = |l, k| plane.meet(l, k).ok();
    let (la, lb, lc) = (j(alpha, a1)?, j(alpha, b1)?, j(alpha, c1)?);
    if la == lb || lb == lc || la == lc || s.is_incident(c1, j(a1, b1)?) {
        return None;
    }
    if a2 == a1 || a2 == alpha || !s.is_incident(a2, la) || s.is_incident(a2, ell) {
        return None;
    }
    let x = m(j(a1, b1)?, ell)?;
    let b2 = m(j(a2, x)?, lb)?;
    let y = m(j(b1, c1)?, ell)?;
    let c2 = m(j(b2, y)?, lc)?;
    let valid = |p: PointId, old: PointId| p != alpha && p != old && !s.is_incident(p, ell);
    if !valid(b2, b1) || !valid(c2, c1) || s.is_incident(c2, j(a2, b2)?) {
        return None;
    }
    let z = m(j(a1, c1)?, j(a2, c2)?)?;
    let pair = PerspectiveTrianglePair {
        center: alpha,
        axis: ell,
        first,
        second: [a2, b2, c2],
    };
    Some((pair, s.is_incident(z, ell)))
}

/// Exhaustive search for one `(alpha, ell)`, in ascending order of
/// `(a1, b1, c1, a2)`. Every configuration whose `ab` and `bc` sides meet on
/// the axis arises from exactly one such tuple, and all vertex labellings are
/// enumerated.
fn exhaustive_pair(plane: &ProjectivePlane, alpha: PointId, ell: LineId) -> DesarguesOutcome {
    let s = plane.system();
    let cand = vertex_candidates(plane, alpha, ell);
    let mut checked = 0;
    for &a1 in &cand {
        let la = plane.join(alpha, a1).unwrap();
        let seconds: Vec<PointId> = s
            .points_on(la)
            .iter()
            .copied()
            .filter(|&p| p != a1 && p != alpha && !s.is_incident(p, ell))
            .collect();
        if seconds.is_empty() {
            continue;
        }
        for &b1 in &cand {
            if s.is_incident(b1, la) {
                continue;
            }
            for &c1 in &cand {
                for &a2 in &seconds {
                    if let Some((pair, ok)) =
                        complete_and_check(plane, alpha, ell, [a1, b1, c1], a2)
                    {
                        checked += 1;
                        if !ok {
                            return DesarguesOutcome::Counterexample { pair };
                        }
                    }
                }
            }
        }
    }
    DesarguesOutcome::Holds { checked }
}

/// One random configuration from sub-stream `index`. Draws `(a1, b1, c1, a2)`
/// uniformly, retrying degenerate draws up to a fixed budget.
fn sample_one(
    plane: &ProjectivePlane,
    alpha: PointId,
    ell: LineId,
    cand: &[PointId],
    seed: u64,
    index: u64,
) -> Option<(PerspectiveTrianglePair, bool)> {
    let s = plane.system();
    let mut rng = substream(seed, index);
    let n = cand.len() as u64;
    for _ in 0..64 {
        let pick = |rng: &mut _| cand[below(rng, n) as usize];
        let first = [pick(&mut rng), pick(&mut rng), pick(&mut rng)];
        let la = plane.join(alpha, first[0]).ok()?;
        let seconds: Vec<PointId> = s
            .points_on(la)
            .iter()
            .copied()
            .filter(|&p| p != first[0] && p != alpha && !s.is_incident(p, ell))
            .collect();
        if seconds.is_empty() {
            return None;
        }
        let a2 = seconds[below(&mut rng, seconds.len() as u64) as usize];
        if let Some(r) = complete_and_check(plane, alpha, ell, first, a2) {
            return Some(r);
        }
    }
    None
}

/// Whether the plane is `(alpha, ell)`-Desarguesian: whenever two triangles in
/// perspective from `alpha` have two pairs of corresponding sides meeting on
/// `ell`, the third pair meets on `ell` as well.
pub fn is_alpha_ell_desarguesian(
    plane: &ProjectivePlane,
    alpha: PointId,
    ell: LineId,
    mode: SearchMode,
) -> DesarguesOutcome {
    match mode {
        SearchMode::Exhaustive => exhaustive_pair(plane, alpha, ell),
        SearchMode::Sampled { count, seed } => {
            let cand = vertex_candidates(plane, alpha, ell);
            if cand.is_empty() {
                return DesarguesOutcome::Holds { checked: 0 };
            }
            merge_samples(count, |i| sample_one(plane, alpha, ell, &cand, seed, i))
        }
    }
}

/// Runs `count` indexed samples in parallel. The counterexample with the
/// smallest index wins, so the result does not depend on the worker count.
fn merge_samples<F>(count: u64, f: F) -> DesarguesOutcome
where
    F: Fn(u64) -> Option<(PerspectiveTrianglePair, bool)> + Sync + Send,
{
    let results: Vec<Option<(PerspectiveTrianglePair, bool)>> =
        (0..count).into_par_iter().map(f).collect();
    let mut checked = 0;
    for r in results.into_iter().flatten() {
        checked += 1;
        if !r.1 {
            return DesarguesOutcome::Counterexample { pair: r.0 };
        }
    }
    DesarguesOutcome::Holds { checked }
}

/// `(alpha, ell)`-Desargues for every incident pair. Exhaustive mode walks the
/// flags in ascending `(alpha, ell)` order; sampled mode draws a uniform flag
/// per sample.
pub fn little_desargues_check(plane: &ProjectivePlane, mode: SearchMode) -> DesarguesOutcome {
    let s = plane.system();
    let flags: Vec<(PointId, LineId)> = s
        .points()
        .flat_map(|p| s.lines_through(p).iter().map(move |&l| (p, l)))
        .collect();
    match mode {
        SearchMode::Exhaustive => {
            let outcomes: Vec<DesarguesOutcome> = flags
                .par_iter()
                .map(|&(alpha, ell)| exhaustive_pair(plane, alpha, ell))
                .collect();
            let mut checked = 0;
            for o in outcomes {
                match o {
                    DesarguesOutcome::Holds { checked: c } => checked += c,
                    cx => return cx,
                }
            }
            DesarguesOutcome::Holds { checked }
        }
        SearchMode::Sampled { count, seed } => {
            let cands: Vec<Vec<PointId>> = flags
                .iter()
                .map(|&(a, l)| vertex_candidates(plane, a, l))
                .collect();
            merge_samples(count, |i| {
                let mut rng = substream(seed ^ 0xD35A_2C9E_0F1B_7A43, i);
                let f = below(&mut rng, flags.len() as u64) as usize;
                let (alpha, ell) = flags[f];
                if cands[f].is_empty() {
                    return None;
                }
                sample_one(plane, alpha, ell, &cands[f], seed, i)
            })
        }
    }
}

/// Three point sets on three lines through `alpha`, with the axis `ell`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RuzsaConfig {
    pub alpha: PointId,
    pub ell: LineId,
    pub line_a: LineId,
    pub line_b: LineId,
    pub line_c: LineId,
    pub a: Vec<PointId>,
    pub b: Vec<PointId>,
    pub c: Vec<PointId>,
}

impl RuzsaConfig {
    /// Checks every membership and disjointness requirement. The centre must
    /// lie off the axis.
    pub fn validate(&self, plane: &ProjectivePlane) -> Result<(), ConfigError> {
        let s = plane.system();
        let bad = |m: String| Err(ConfigError::PreconditionViolated(m));
        s.check_point(self.alpha)
            .and(s.check_line(self.ell))
            .and(s.check_line(self.line_a))
            .and(s.check_line(self.line_b))
            .and(s.check_line(self.line_c))
            .map_err(|e| ConfigError::PreconditionViolated(e.to_string()))?;
        if s.is_incident(self.alpha, self.ell) {
            return bad(format!(
                "centre {} lies on the axis {}",
                self.alpha, self.ell
            ));
        }
        let lines = [self.line_a, self.line_b, self.line_c];
        if lines[0] == lines[1] || lines[1] == lines[2] || lines[0] == lines[2] {
            return bad("the three lines must be distinct".into());
        }
        for (line, set, name) in [
            (self.line_a, &self.a, "A"),
            (self.line_b, &self.b, "B"),
            (self.line_c, &self.c, "C"),
        ] {
            if line == self.ell || !s.is_incident(self.alpha, line) {
                return bad(format!(
                    "line {line} of {name} must pass through the centre off the axis"
                ));
            }
            if set.is_empty() {
                return bad(format!("{name} is empty"));
            }
            let mut seen = HashSet::new();
            for &p in set {
                s.check_point(p)
                    .map_err(|e| ConfigError::PreconditionViolated(e.to_string()))?;
                if !seen.insert(p) {
                    return bad(format!("{name} repeats point {p}"));
                }
                if !s.is_incident(p, line) || p == self.alpha || s.is_incident(p, self.ell) {
                    return bad(format!(
                        "point {p} of {name} must lie on {line}, off the centre and the axis"
                    ));
                }
            }
        }
        Ok(())
    }

    /// A random configuration with the given centre, axis and set sizes:
    /// three distinct lines through the centre, then each set drawn without
    /// replacement from its line.
    pub fn random<R: rand_core::RngCore>(
        plane: &ProjectivePlane,
        alpha: PointId,
        ell: LineId,
        sizes: [usize; 3],
        rng: &mut R,
    ) -> Result<RuzsaConfig, ConfigError> {
        let s = plane.system();
        if s.is_incident(alpha, ell) {
            return Err(ConfigError::PreconditionViolated(
                "centre lies on the axis".into(),
            ));
        }
        let through: Vec<LineId> = s.lines_through(alpha).to_vec();
        let lines = crate::sampling::choose(rng, &through, 3);
        if lines.len() < 3 {
            return Err(ConfigError::PreconditionViolated(
                "fewer than three lines through the centre".into(),
            ));
        }
        let mut sets = Vec::with_capacity(3);
        for (&line, &k) in lines.iter().zip(&sizes) {
            let avail: Vec<PointId> = s
                .points_on(line)
                .iter()
                .copied()
                .filter(|&p| p != alpha && !s.is_incident(p, ell))
                .collect();
            if k == 0 || k > avail.len() {
                return Err(ConfigError::PreconditionViolated(format!(
                    "set size {k} not in 1..={}",
                    avail.len()
                )));
            }
            let mut pick = crate::sampling::choose(rng, &avail, k);
            pick.sort();
            sets.push(pick);
        }
        let c = sets.pop().unwrap();
        let b = sets.pop().unwrap();
        let a = sets.pop().unwrap();
        Ok(RuzsaConfig {
            alpha,
            ell,
            line_a: lines[0],
            line_b: lines[1],
            line_c: lines[2],
            a,
            b,
            c,
        })
    }
}

/// Which preimage the selectors `f_A`, `f_C` pick for each bracket in `[A, C]`
/// when scanning `A x C` in ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Selector {
    #[default]
    FirstFound,
    LastFound,
}

/// How the `(alpha, ell)`-Desargues hypothesis is established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Hypothesis {
    /// The plane is PG(2,q), Desarguesian by construction.
    Coordinatized,
    /// Checked with [`is_alpha_ell_desarguesian`] in the given mode.
    Checked { mode: SearchMode },
    /// Not checked; the report is conditional.
    Assumed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RuzsaReport {
    pub size_ac: usize,
    pub size_ab: usize,
    pub size_bc: usize,
    pub size_b: usize,
    pub inequality_holds: bool,
    pub iota_injective: bool,
    /// `([a,b], [b,c])` determines `[a,c]` over all of `A x B x C`.
    pub determination_holds: bool,
    pub selector: Selector,
    pub hypothesis: Hypothesis,
    /// `false` only when the hypothesis was checked and failed.
    pub hypothesis_holds: bool,
}

/// Computes the bracket sets, builds `f_A`, `f_C` and
/// `iota(p, b) = ([f_A(p), b], [b, f_C(p)])` on `[A,C] x B`, and checks
/// injectivity by direct collision scan.
pub fn ruzsa_verify(
    plane: &ProjectivePlane,
    config: &RuzsaConfig,
    hypothesis: Hypothesis,
    selector: Selector,
) -> Result<RuzsaReport, ConfigError> {
    config.validate(plane)?;
    let hypothesis_holds = match hypothesis {
        Hypothesis::Coordinatized => {
            if plane.coordinates().is_none() {
                return Err(ConfigError::PreconditionViolated(
                    "plane has no coordinates".into(),
                ));
            }
            true
        }
        Hypothesis::Checked { mode } => {
            is_alpha_ell_desarguesian(plane, config.alpha, config.ell, mode).holds()
        }
        Hypothesis::Assumed => true,
    };
    let ell = config.ell;
    let br = |x, y| bracket(plane, x, y, ell).expect("config validated");
    let ab = bracket_set(plane, &config.a, &config.b, ell)?;
    let bc = bracket_set(plane, &config.b, &config.c, ell)?;

    // f_A, f_C keyed by bracket value; BTreeMap keeps [A,C] ascending.
    let mut chosen: BTreeMap<PointId, (PointId, PointId)> = BTreeMap::new();
    for &a in &config.a {
        for &c in &config.c {
            let p = br(a, c);
            match selector {
                Selector::FirstFound => {
                    chosen.entry(p).or_insert((a, c));
                }
                Selector::LastFound => {
                    chosen.insert(p, (a, c));
                }
            }
        }
    }
    let mut images = HashSet::with_capacity(chosen.len() * config.b.len());
    for (&p, &(fa, fc)) in &chosen {
        debug_assert_eq!(br(fa, fc), p);
        for &b in &config.b {
            images.insert((br(fa, b), br(b, fc)));
        }
    }
    let size_ac = chosen.len();
    let size_b = config.b.len();
    let iota_injective = images.len() == size_ac * size_b;

    let mut determined: HashMap<(PointId, PointId), PointId> = HashMap::new();
    let mut determination_holds = true;
    'outer: for &a in &config.a {
        for &b in &config.b {
            let x = br(a, b);
            for &c in &config.c {
                let key = (x, br(b, c));
                let ac = br(a, c);
                if *determined.entry(key).or_insert(ac) != ac {
                    determination_holds = false;
                    break 'outer;
                }
            }
        }
    }

    Ok(RuzsaReport {
        size_ac,
        size_ab: ab.len(),
        size_bc: bc.len(),
        size_b,
        inequality_holds: (size_ac as u64) * (size_b as u64)
            <= (ab.len() as u64) * (bc.len() as u64),
        iota_injective,
        determination_holds,
        selector,
        hypothesis,
        hypothesis_holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AbelianRuzsaReport {
    pub size_ac: usize,
    pub size_ab: usize,
    pub size_bc: usize,
    pub size_b: usize,
    pub inequality_holds: bool,
    pub iota_injective: bool,
}

/// Difference-set inequality `|A-C| |B| <= |A-B| |B-C|` in `Z/nZ`, with the
/// injection `iota(x, b) = (f_A(x) - b, b - f_C(x))` built and checked.
pub fn abelian_ruzsa_check(
    n: u64,
    a: &[u64],
    b: &[u64],
    c: &[u64],
) -> Result<AbelianRuzsaReport, ConfigError> {
    if n == 0 || a.is_empty() || b.is_empty() || c.is_empty() {
        return Err(ConfigError::PreconditionViolated(
            "modulus and sets must be nonempty".into(),
        ));
    }
    if let Some(x) = a.iter().chain(b).chain(c).find(|&&x| x >= n) {
        return Err(ConfigError::PreconditionViolated(format!(
            "residue {x} not below {n}"
        )));
    }
    let diff = |x: u64, y: u64| (x + n - y) % n;
    let diffs = |xs: &[u64], ys: &[u64]| -> std::collections::BTreeSet<u64> {
        xs.iter()
            .flat_map(|&x| ys.iter().map(move |&y| diff(x, y)))
            .collect()
    };
    let ab = diffs(a, b);
    let bc = diffs(b, c);
    let mut chosen: BTreeMap<u64, (u64, u64)> = BTreeMap::new();
    for &x in a {
        for &z in c {
            chosen.entry(diff(x, z)).or_insert((x, z));
        }
    }
    let bset: std::collections::BTreeSet<u64> = b.iter().copied().collect();
    let mut images = HashSet::new();
    for &(fa, fc) in chosen.values() {
        for &y in &bset {
            images.insert((diff(fa, y), diff(y, fc)));
        }
    }
    let (size_ac, size_b) = (chosen.len(), bset.len());
    Ok(AbelianRuzsaReport {
        size_ac,
        size_ab: ab.len(),
        size_bc: bc.len(),
        size_b,
        inequality_holds: (size_ac as u64) * (size_b as u64)
            <= (ab.len() as u64) * (bc.len() as u64),
        iota_injective: images.len() == size_ac * size_b,
    })
}

/// Modulus and encoded `A`, `B`, `C`.
pub type Encoding = (u64, Vec<u64>, Vec<u64>, Vec<u64>);

/// Multiplicative encoding of a configuration in PG(2,q) whose centre is the
/// origin `(0,0,1)` and whose axis is the line at infinity `x2 = 0`.
///
/// Each set lives on a line through the origin with normalized direction `u`;
/// its points are `t * u` for nonzero scalars `t`, and `t` is replaced by its
/// discrete logarithm to the base of [`crate::gf::Field::primitive`]. The
/// bracket of `s*u` and `t*w` depends only on `t/s`, injectively, so
/// `|[X,Y]| = |Y' - X'|` in `Z/(q-1)`. Returns `(q - 1, A', B', C')`.
pub fn multiplicative_encoding(plane: &ProjectivePlane, config: &RuzsaConfig) -> Option<Encoding> {
    let coords = plane.coordinates()?;
    let f = coords.field();
    let (z, o) = (f.zero(), f.one());
    if coords.point(config.alpha) != [z, z, o] || coords.line(config.ell) != [z, z, o] {
        return None;
    }
    let encode = |set: &[PointId]| -> Option<Vec<u64>> {
        set.iter()
            .map(|&p| {
                let [x0, x1, x2] = coords.point(p);
                let w = f.inv(x2).ok()?;
                let t = if !x0.is_zero() {
                    f.mul(x0, w)
                } else {
                    f.mul(x1, w)
                };
                f.log(t).map(u64::from)
            })
            .collect()
    };
    // The direction vectors have a leading 1, so the scalar is the first
    // nonzero affine coordinate.
    Some((
        f.order() as u64 - 1,
        encode(&config.a)?,
        encode(&config.b)?,
        encode(&config.c)?,
    ))
}

/// Convenience: the points of a set as a bitset over the plane.
pub fn as_point_set(plane: &ProjectivePlane, ids: &[PointId]) -> PointSet {
    let mut s = plane.system().empty_point_set();
    ids.iter().for_each(|p| s.insert(p.index()));
    s
}
