//! Acceptance suite: one check per numbered criterion, each with its runtime
//! budget. Prints a PASS/FAIL line per criterion and exits non-zero if any
//! fails. Expected values come from the brute-force helpers in this file,
//! which only read the raw incidence lists.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use pgrowth::classify::{
    classify_equal_counts, classify_growth, is_degenerate_plane, make_fan, Degenerate,
    EqualCountsCase, GrowthClassification,
};
use pgrowth::configs::{
    little_desargues_check, ruzsa_verify, DesarguesOutcome, Hypothesis, PerspectiveTrianglePair,
    RuzsaConfig, SearchMode, Selector,
};
use pgrowth::growth::{growth_trace, two_line_report};
use pgrowth::incidence::{BuildMode, IncidenceSystem, LineId, PointId, PointSet, QuadCheck};
use pgrowth::plane::load_plane;
use pgrowth::sampling::{choose, in_range, shuffle, substream, SplitMix64};
use pgrowth::ProjectivePlane;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---- brute-force helpers -------------------------------------------------

fn common_lines(s: &IncidenceSystem, a: PointId, b: PointId) -> Vec<LineId> {
    s.lines_through(a)
        .iter()
        .copied()
        .filter(|&l| s.points_on(l).contains(&b))
        .collect()
}

fn common_points(s: &IncidenceSystem, l: LineId, m: LineId) -> Vec<PointId> {
    s.points_on(l)
        .iter()
        .copied()
        .filter(|p| s.points_on(m).contains(p))
        .collect()
}

fn only<T: Copy + std::fmt::Debug>(v: Vec<T>) -> T {
    assert_eq!(v.len(), 1, "expected exactly one element, got {v:?}");
    v[0]
}

fn collinear3(s: &IncidenceSystem, a: PointId, b: PointId, c: PointId) -> bool {
    common_lines(s, a, b)
        .iter()
        .any(|&l| s.points_on(l).contains(&c))
}

fn lines_of(s: &IncidenceSystem, pts: &BTreeSet<usize>) -> BTreeSet<usize> {
    s.lines()
        .filter(|&l| {
            s.points_on(l)
                .iter()
                .filter(|p| pts.contains(&p.index()))
                .count()
                >= 2
        })
        .map(|l| l.index())
        .collect()
}

fn points_of(s: &IncidenceSystem, lines: &BTreeSet<usize>) -> BTreeSet<usize> {
    s.points()
        .filter(|&p| {
            s.lines_through(p)
                .iter()
                .filter(|l| lines.contains(&l.index()))
                .count()
                >= 2
        })
        .map(|p| p.index())
        .collect()
}

/// `|P0|, |L0|, |P1|, |L1|, |P2|, |L2|, |P3|` by direct counting.
fn brute_sizes(s: &IncidenceSystem, start: &BTreeSet<usize>) -> [usize; 7] {
    let mut out = [0; 7];
    let mut p = start.clone();
    out[0] = p.len();
    for i in 0..3 {
        let l = lines_of(s, &p);
        p = points_of(s, &l);
        out[2 * i + 1] = l.len();
        out[2 * i + 2] = p.len();
    }
    out
}

fn all_on_one_line(s: &IncidenceSystem, pts: &BTreeSet<usize>) -> bool {
    pts.len() <= 2
        || s.lines().any(|l| {
            pts.iter()
                .all(|&p| s.points_on(l).contains(&PointId(p as u32)))
        })
}

fn bitset(s: &IncidenceSystem, pts: &BTreeSet<usize>) -> PointSet {
    let mut set = s.empty_point_set();
    pts.iter().for_each(|&p| set.insert(p));
    set
}

fn bracket(s: &IncidenceSystem, x: PointId, y: PointId, ell: LineId) -> PointId {
    only(common_points(s, only(common_lines(s, x, y)), ell))
}

// ---- criteria --------------------------------------------------------------

fn plane_construction() -> Result<String, String> {
    let mut sampled = 0;
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let plane = ProjectivePlane::pg2(q).map_err(|e| e.to_string())?;
        let s = plane.system();
        let n = (q * q + q + 1) as usize;
        ensure(s.num_points() == n && s.num_lines() == n, || {
            format!("q={q}: counts")
        })?;
        ensure(
            s.lines().all(|l| s.points_on(l).len() == q as usize + 1),
            || format!("q={q}: line sizes"),
        )?;
        if q <= 5 {
            ensure(s.verify_axioms().is_projective_plane(), || {
                format!("q={q}: axioms")
            })?;
            for a in s.points() {
                for b in s.points().filter(|&b| b > a) {
                    ensure(common_lines(s, a, b).len() == 1, || {
                        format!("q={q}: P1 at {a},{b}")
                    })?;
                }
            }
            for l in s.lines() {
                for m in s.lines().filter(|&m| m > l) {
                    ensure(common_points(s, l, m).len() == 1, || {
                        format!("q={q}: P2 at {l},{m}")
                    })?;
                }
            }
        } else {
            let mut rng = substream(0xACCE_0001, q);
            let target = sampled + 10_000;
            while sampled < target {
                let a = PointId(in_range(&mut rng, 0, n as u64 - 1) as u32);
                let b = PointId(in_range(&mut rng, 0, n as u64 - 1) as u32);
                let (l, m) = (LineId(a.0), LineId(b.0));
                if a == b {
                    continue;
                }
                sampled += 1;
                let line = only(common_lines(s, a, b));
                ensure(plane.join(a, b) == Ok(line), || {
                    format!("q={q}: join {a},{b}")
                })?;
                let point = only(common_points(s, l, m));
                ensure(plane.meet(l, m) == Ok(point), || {
                    format!("q={q}: meet {l},{m}")
                })?;
            }
        }
        let QuadCheck::Found {
            points: [a, b, c, d],
        } = s.find_quadrilateral()
        else {
            return Err(format!("q={q}: no quadrilateral"));
        };
        let triples = [(a, b, c), (a, b, d), (a, c, d), (b, c, d)];
        ensure(
            triples.iter().all(|&(x, y, z)| !collinear3(s, x, y, z)),
            || format!("q={q}: quadrilateral has three collinear points"),
        )?;
    }
    Ok(format!(
        "7 orders, {sampled} sampled point and line pairs for q = 7, 8, 9"
    ))
}

fn fisher_chain() -> Result<String, String> {
    let planes: Vec<ProjectivePlane> = [3, 5, 7, 9]
        .iter()
        .map(|&q| ProjectivePlane::pg2(q).unwrap())
        .collect();
    let mut violations = 0;
    for t in 0..500u64 {
        let plane = &planes[(t % 4) as usize];
        let s = plane.system();
        let all: Vec<usize> = (0..s.num_points()).collect();
        let mut rng = substream(0xACCE_0002, t);
        let pts = loop {
            let k = in_range(&mut rng, 3, 20) as usize;
            let pts: BTreeSet<usize> = choose(&mut rng, &all, k).into_iter().collect();
            if !all_on_one_line(s, &pts) {
                break pts;
            }
        };
        let trace = growth_trace(s, &bitset(s, &pts), 3).map_err(|e| e.to_string())?;
        let sizes = trace.size_chain(3);
        let brute = brute_sizes(s, &pts);
        ensure(sizes == brute, || {
            format!("trial {t}: sizes {sizes:?} vs {brute:?}")
        })?;
        if brute[..6].windows(2).any(|w| w[0] > w[1]) {
            violations += 1;
        }
    }
    ensure(violations == 0, || format!("{violations} chain violations"))?;
    Ok("500 sets, 0 violations".into())
}

fn check_trichotomy(plane: &ProjectivePlane, pts: &BTreeSet<usize>) -> Result<bool, String> {
    let s = plane.system();
    match classify_growth(plane, &bitset(s, pts)) {
        Ok((GrowthClassification::QuadraticGrowth { p0, p3 }, _)) => {
            let brute = brute_sizes(s, pts);
            ensure(p0 == brute[0] && p3 == brute[6], || {
                format!("{pts:?}: sizes")
            })?;
            ensure(4 * p3 >= p0 * p0, || format!("{pts:?}: 4 * {p3} < {p0}^2"))?;
            Ok(true)
        }
        Ok(_) => Ok(false),
        Err(e) => Err(format!("{pts:?}: {e}")),
    }
}

fn trichotomy() -> Result<String, String> {
    let (mut rows, mut quadratic) = (0, 0);
    let fano = ProjectivePlane::pg2(2).unwrap();
    for mask in 0u32..128 {
        let pts = (0..7).filter(|b| mask >> b & 1 == 1).collect();
        quadratic += check_trichotomy(&fano, &pts)? as usize;
        rows += 1;
    }
    let pg3 = ProjectivePlane::pg2(3).unwrap();
    for mask in 0u32..1 << 13 {
        if mask.count_ones() <= 6 {
            let pts = (0..13).filter(|b| mask >> b & 1 == 1).collect();
            quadratic += check_trichotomy(&pg3, &pts)? as usize;
            rows += 1;
        }
    }
    for (i, plane) in [pg3, ProjectivePlane::pg2(5).unwrap()].iter().enumerate() {
        let v = plane.system().num_points();
        let all: Vec<usize> = (0..v).collect();
        for t in 0..1000 {
            let mut rng = substream(0xACCE_0003 + i as u64, t);
            let k = in_range(&mut rng, 2, v as u64) as usize;
            let pts = choose(&mut rng, &all, k).into_iter().collect();
            quadratic += check_trichotomy(plane, &pts)? as usize;
            rows += 1;
        }
    }
    Ok(format!(
        "{rows} sets, 0 violations, {quadratic} quadratic rows meet the bound"
    ))
}

fn two_line_bound() -> Result<String, String> {
    let planes: Vec<ProjectivePlane> = [3, 5, 7]
        .iter()
        .map(|&q| ProjectivePlane::pg2(q).unwrap())
        .collect();
    let (mut inside, mut outside) = (0, 0);
    for t in 0..200u64 {
        let plane = &planes[(t % 3) as usize];
        let s = plane.system();
        let b = s.num_lines() as u64;
        let mut rng = substream(0xACCE_0004, t);
        let l1 = LineId(in_range(&mut rng, 0, b - 1) as u32);
        let l2 = loop {
            let m = LineId(in_range(&mut rng, 0, b - 1) as u32);
            if m != l1 {
                break m;
            }
        };
        let x = only(common_points(s, l1, l2));
        let with_x = t % 2 == 0;
        let mut pts = BTreeSet::new();
        let mut plant = |rng: &mut _, line: LineId| {
            let avail: Vec<usize> = s
                .points_on(line)
                .iter()
                .filter(|&&p| p != x)
                .map(|p| p.index())
                .collect();
            let k = in_range(rng, 1, avail.len() as u64) as usize;
            pts.extend(choose(rng, &avail, k));
            k
        };
        let (k1, k2) = (plant(&mut rng, l1), plant(&mut rng, l2));
        if with_x {
            pts.insert(x.index());
        }
        let off: Vec<usize> = s
            .points()
            .filter(|&p| !s.points_on(l1).contains(&p) && !s.points_on(l2).contains(&p))
            .map(|p| p.index())
            .collect();
        let extra = in_range(&mut rng, 0, 3) as usize;
        pts.extend(choose(&mut rng, &off, extra));

        let defined = lines_of(s, &pts);
        let (m1, m2) = (k1 + with_x as usize, k2 + with_x as usize);
        let expected_bound = if with_x {
            let a = s
                .lines_through(x)
                .iter()
                .filter(|l| defined.contains(&l.index()))
                .count();
            (m1 - 1) * (m2 - 1) + a
        } else {
            m1 * m2
        };
        let r = two_line_report(s, &bitset(s, &pts), l1, l2).map_err(|e| e.to_string())?;
        ensure(r.m1 == m1 && r.m2 == m2 && r.intersection == x, || {
            format!("trial {t}: {r:?}")
        })?;
        ensure(
            r.lower_bound == expected_bound && r.actual == defined.len(),
            || format!("trial {t}: {r:?}, expected bound {expected_bound}"),
        )?;
        ensure(defined.len() >= expected_bound, || {
            format!("trial {t}: bound fails")
        })?;
        ensure(r.intersection_in_p == with_x, || {
            format!("trial {t}: branch")
        })?;
        if with_x {
            inside += 1;
        } else {
            outside += 1;
        }
    }
    ensure(inside >= 50 && outside >= 50, || {
        format!("branches {inside}/{outside}")
    })?;
    Ok(format!(
        "200 configurations, {inside} with the intersection in P, {outside} without"
    ))
}

fn equal_counts() -> Result<String, String> {
    for q in [2u64, 3, 4, 5] {
        let s = ProjectivePlane::pg2(q).unwrap().into_system();
        let case = classify_equal_counts(&s).map_err(|e| e.to_string())?;
        ensure(
            case == EqualCountsCase::ProjectivePlane { order: q as usize },
            || format!("q={q}: {case:?}"),
        )?;
        ensure(s.verify_axioms().p3.holds(), || format!("q={q}: P3 flag"))?;
    }
    for n in 3..=20 {
        let s = make_fan(n).map_err(|e| e.to_string())?;
        let case = classify_equal_counts(&s).map_err(|e| e.to_string())?;
        ensure(matches!(case, EqualCountsCase::Fan { .. }), || {
            format!("fan {n}: {case:?}")
        })?;
        ensure(!s.verify_axioms().p3.holds(), || {
            format!("fan {n}: P3 flag")
        })?;
    }
    Ok("4 planes, 18 fans".into())
}

/// A fan on `n` points with labels permuted by `rng`; returns the system, the
/// apex, and the spine's point set.
fn shuffled_fan(n: usize, rng: &mut SplitMix64) -> (IncidenceSystem, usize, BTreeSet<usize>) {
    let mut perm: Vec<usize> = (0..n).collect();
    shuffle(rng, &mut perm);
    let apex = perm[n - 1];
    let spine: BTreeSet<usize> = perm[..n - 1].iter().copied().collect();
    let mut lines = vec![spine.iter().copied().collect::<Vec<_>>()];
    lines.extend(spine.iter().map(|&p| vec![p.min(apex), p.max(apex)]));
    shuffle(rng, &mut lines);
    (
        IncidenceSystem::from_lines(n, lines, BuildMode::Strict).unwrap(),
        apex,
        spine,
    )
}

fn degenerate() -> Result<String, String> {
    let mut checked = 0;
    for n in 3..=20 {
        let mut rng = substream(0xACCE_0006, n as u64);
        for round in 0..4 {
            let (s, apex, spine) = if round == 0 {
                let s = make_fan(n).unwrap();
                (s, n - 1, (0..n - 1).collect())
            } else {
                shuffled_fan(n, &mut rng)
            };
            let Some(Degenerate::Fan { apex: a, spine: l }) = is_degenerate_plane(&s) else {
                return Err(format!("fan {n}: not recognised"));
            };
            let on_spine: BTreeSet<usize> = s.points_on(l).iter().map(|p| p.index()).collect();
            // every vertex of a triangle is an apex, so only larger fans pin it
            let pinned = n == 3 || (a.index() == apex && on_spine == spine);
            ensure(pinned && on_spine.len() == n - 1, || {
                format!("fan {n}: witness")
            })?;
            ensure(!s.points_on(l).contains(&a), || {
                format!("fan {n}: apex on spine")
            })?;
            let others_ok = s.lines().filter(|&m| m != l).all(|m| {
                let pts = s.points_on(m);
                pts.len() == 2 && pts.contains(&a)
            });
            ensure(others_ok && s.num_lines() == n, || {
                format!("fan {n}: other lines")
            })?;
            checked += 1;
        }
    }
    for n in 2..=20 {
        let s = IncidenceSystem::from_lines(n, [(0..n).collect::<Vec<_>>()], BuildMode::Strict)
            .unwrap();
        let Some(Degenerate::Pencil { line }) = is_degenerate_plane(&s) else {
            return Err(format!("pencil {n}: not recognised"));
        };
        ensure(s.points_on(line).len() == n, || {
            format!("pencil {n}: witness")
        })?;
        checked += 1;
    }
    Ok(format!("{checked} degenerate planes"))
}

fn ruzsa() -> Result<String, String> {
    let planes: Vec<ProjectivePlane> = [5, 7, 11]
        .iter()
        .map(|&q| ProjectivePlane::pg2(q).unwrap())
        .collect();
    for t in 0..200u64 {
        let plane = &planes[(t % 3) as usize];
        let s = plane.system();
        let q = plane.order() as u64;
        let mut rng = substream(0xACCE_0007, t);
        let alpha = PointId(in_range(&mut rng, 0, s.num_points() as u64 - 1) as u32);
        let off: Vec<LineId> = s
            .lines()
            .filter(|l| !s.points_on(*l).contains(&alpha))
            .collect();
        let ell = choose(&mut rng, &off, 1)[0];
        let hi = (q - 1).min(6);
        let sizes = [0; 3].map(|_| in_range(&mut rng, 1, hi) as usize);
        let cfg =
            RuzsaConfig::random(plane, alpha, ell, sizes, &mut rng).map_err(|e| e.to_string())?;
        let r = ruzsa_verify(plane, &cfg, Hypothesis::Coordinatized, Selector::FirstFound)
            .map_err(|e| e.to_string())?;

        let br = |x: PointId, y: PointId| bracket(s, x, y, ell);
        let set = |xs: &[PointId], ys: &[PointId]| -> BTreeSet<PointId> {
            xs.iter()
                .flat_map(|&x| ys.iter().map(move |&y| br(x, y)))
                .collect()
        };
        let (ac, ab, bc) = (
            set(&cfg.a, &cfg.c),
            set(&cfg.a, &cfg.b),
            set(&cfg.b, &cfg.c),
        );
        let nb = cfg.b.len();
        ensure(
            (r.size_ac, r.size_ab, r.size_bc, r.size_b) == (ac.len(), ab.len(), bc.len(), nb),
            || format!("trial {t}: sizes {r:?}"),
        )?;
        ensure(
            ac.len() * nb <= ab.len() * bc.len() && r.inequality_holds,
            || format!("trial {t}: inequality"),
        )?;
        // iota(p, b) = ([f_A(p), b], [b, f_C(p)]) with first-found preimages
        let mut pre: HashMap<PointId, (PointId, PointId)> = HashMap::new();
        for &a in &cfg.a {
            for &c in &cfg.c {
                pre.entry(br(a, c)).or_insert((a, c));
            }
        }
        let mut images = HashSet::new();
        for &(a, c) in pre.values() {
            for &b in &cfg.b {
                images.insert((br(a, b), br(b, c)));
            }
        }
        ensure(images.len() == ac.len() * nb && r.iota_injective, || {
            format!("trial {t}: iota collision")
        })?;
        let mut det: HashMap<(PointId, PointId), PointId> = HashMap::new();
        for &a in &cfg.a {
            for &b in &cfg.b {
                for &c in &cfg.c {
                    let v = br(a, c);
                    let prev = *det.entry((br(a, b), br(b, c))).or_insert(v);
                    ensure(prev == v, || format!("trial {t}: determination"))?;
                }
            }
        }
        ensure(r.determination_holds, || {
            format!("trial {t}: determination flag")
        })?;
    }
    Ok("200 configurations, inequality, injectivity and determination hold".into())
}

/// Re-validates a reported counterexample from the incidence lists alone.
fn genuine_counterexample(s: &IncidenceSystem, p: &PerspectiveTrianglePair) -> Result<(), String> {
    let (o, axis) = (p.center, p.axis);
    ensure(s.points_on(axis).contains(&o), || {
        "centre off the axis".into()
    })?;
    for i in 0..3 {
        let (x, y) = (p.first[i], p.second[i]);
        ensure(x != y && x != o && y != o && collinear3(s, o, x, y), || {
            format!("vertices {x}, {y} not in perspective from {o}")
        })?;
    }
    ensure(!collinear3(s, p.first[0], p.first[1], p.first[2]), || {
        "flat triangle".into()
    })?;
    ensure(
        !collinear3(s, p.second[0], p.second[1], p.second[2]),
        || "flat triangle".into(),
    )?;
    let on_axis = [(0, 1), (1, 2), (0, 2)]
        .iter()
        .filter(|&&(i, j)| {
            let side1 = only(common_lines(s, p.first[i], p.first[j]));
            let side2 = only(common_lines(s, p.second[i], p.second[j]));
            side1 != side2
                && s.points_on(axis)
                    .contains(&only(common_points(s, side1, side2)))
        })
        .count();
    ensure(on_axis == 2, || {
        format!("{on_axis} side pairs meet on the axis")
    })
}

fn fixture_path() -> PathBuf {
    std::env::var_os("PGROWTH_ORDER9_FIXTURE")
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/order9.plane")
        })
}

fn desargues() -> Result<String, String> {
    for q in [2u64, 3] {
        let plane = ProjectivePlane::pg2(q).unwrap();
        let out = little_desargues_check(&plane, SearchMode::Exhaustive);
        ensure(out.holds(), || format!("PG(2,{q}): {out:?}"))?;
    }
    for q in [4u64, 5] {
        let plane = ProjectivePlane::pg2(q).unwrap();
        let out = little_desargues_check(
            &plane,
            SearchMode::Sampled {
                count: 10_000,
                seed: 2024,
            },
        );
        ensure(out == DesarguesOutcome::Holds { checked: 10_000 }, || {
            format!("PG(2,{q}): {out:?}")
        })?;
    }
    let path = fixture_path();
    let Ok(file) = std::fs::File::open(&path) else {
        return Ok(format!(
            "fixture check skipped (no file at {})",
            path.display()
        ));
    };
    let system = load_plane(std::io::BufReader::new(file)).map_err(|e| e.to_string())?;
    let plane = ProjectivePlane::from_system(system).map_err(|e| e.to_string())?;
    let mut out = little_desargues_check(
        &plane,
        SearchMode::Sampled {
            count: 10_000,
            seed: 2024,
        },
    );
    if out.holds() {
        out = little_desargues_check(&plane, SearchMode::Exhaustive);
    }
    let DesarguesOutcome::Counterexample { pair } = out else {
        return Err("order-9 fixture: no counterexample found".into());
    };
    genuine_counterexample(plane.system(), &pair)?;
    Ok(format!(
        "order-{} fixture counterexample at centre {}",
        plane.order(),
        pair.center
    ))
}

fn run_cli(args: &[&str], jobs: &str) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_pgrowth"))
        .args(args)
        .args(["--jobs", jobs])
        .env_remove("PGROWTH_JOBS")
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn reproducibility() -> Result<String, String> {
    let commands: [&[&str]; 6] = [
        &[
            "survey", "--order", "5", "--trials", "300", "--sizes", "3..12", "--seed", "42",
            "--format", "csv",
        ],
        &[
            "survey", "--order", "4", "--trials", "100", "--seed", "7", "--format", "json",
        ],
        &["survey", "--order", "2", "--exhaustive", "--format", "text"],
        &[
            "ruzsa", "--order", "7", "--trials", "40", "--seed", "9", "--sizes", "4,3,5",
            "--format", "json",
        ],
        &[
            "desargues",
            "--order",
            "4",
            "--mode",
            "sampled",
            "--samples",
            "5000",
            "--seed",
            "5",
            "--format",
            "json",
        ],
        &[
            "grow", "--order", "3", "--points", "0,1,4,8", "--format", "json",
        ],
    ];
    for cmd in commands {
        let (first, code) = run_cli(cmd, "1");
        ensure(code == 0 && !first.is_empty(), || {
            format!("{cmd:?}: exit {code}")
        })?;
        for jobs in ["1", "4", "3"] {
            let (again, code2) = run_cli(cmd, jobs);
            ensure(again == first && code2 == code, || {
                format!("{cmd:?} differs with --jobs {jobs}")
            })?;
        }
    }
    Ok(format!("{} commands, 4 runs each", commands.len()))
}

fn main() {
    let criteria: [(u32, &str, Check, u64); 9] = [
        (1, "plane construction", plane_construction, 2),
        (2, "Fisher chain", fisher_chain, 10),
        (3, "growth trichotomy", trichotomy, 60),
        (4, "two-line lower bound", two_line_bound, 5),
        (5, "equal counts dichotomy", equal_counts, 1),
        (6, "degenerate planes", degenerate, 1),
        (7, "bracket-set triangle inequality", ruzsa, 10),
        (8, "little Desargues", desargues, 120),
        (9, "reproducibility", reproducibility, 30),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (n, name, check, budget) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let took = start.elapsed();
        let result = result.and_then(|detail| {
            if took <= Duration::from_secs(budget) {
                Ok(detail)
            } else {
                Err(format!("{detail}; exceeded the {budget} s budget"))
            }
        });
        match result {
            Ok(detail) => println!(
                "criterion {n} ({name}): PASS in {:.2} s: {detail}",
                took.as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {n} ({name}): FAIL in {:.2} s: {why}",
                    took.as_secs_f64()
                );
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
