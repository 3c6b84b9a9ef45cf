use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use clap::Args;
use pgrowth::incidence::{IncidenceSystem, PointId, PointSet};
use pgrowth::plane::{load_plane, PlaneError};
use pgrowth::ProjectivePlane;

use crate::output::{config, CliError};

/// Where a plane comes from: PG(2,q) by order, or a plane file.
#[derive(Debug, Clone, Args)]
pub struct PlaneSource {
    /// Use PG(2,q) for this prime power q.
    #[arg(long, conflicts_with = "plane")]
    pub order: Option<u64>,
    /// Read the plane from a file.
    #[arg(long)]
    pub plane: Option<PathBuf>,
}

impl PlaneSource {
    pub fn system(&self) -> Result<IncidenceSystem, CliError> {
        match (&self.order, &self.plane) {
            (Some(q), _) => Ok(ProjectivePlane::pg2(*q)?.into_system()),
            (None, Some(path)) => read_system(path),
            (None, None) => config("one of --order or --plane is required"),
        }
    }

    pub fn plane(&self) -> Result<ProjectivePlane, CliError> {
        match (&self.order, &self.plane) {
            (Some(q), _) => Ok(ProjectivePlane::pg2(*q)?),
            (None, Some(path)) => match ProjectivePlane::from_system(read_system(path)?) {
                Ok(p) => Ok(p),
                Err(PlaneError::NotAPlane(_)) => {
                    config(format!("{} is not a projective plane", path.display()))
                }
                Err(e) => Err(e.into()),
            },
            (None, None) => config("one of --order or --plane is required"),
        }
    }
}

pub fn read_system(path: &Path) -> Result<IncidenceSystem, CliError> {
    let file = File::open(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    Ok(load_plane(BufReader::new(file))?)
}

/// Parses `0,1,2,6` into a point set, rejecting ids outside the plane and
/// repeated ids.
pub fn point_set(system: &IncidenceSystem, text: &str) -> Result<PointSet, CliError> {
    let mut set = system.empty_point_set();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let id: u32 = tok
            .parse()
            .map_err(|_| CliError::Config(format!("bad point id `{tok}`")))?;
        let p = PointId(id);
        if system.check_point(p).is_err() {
            return config(format!(
                "point {id} out of range (the plane has {} points)",
                system.num_points()
            ));
        }
        if set.put(p.index()) {
            return config(format!("point {id} listed twice"));
        }
    }
    Ok(set)
}

/// `lo..hi` or a single number, inclusive.
pub fn size_range(text: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Config(format!("bad size range `{text}` (expected LO..HI)"));
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (a.trim().parse(), b.trim().parse()),
        None => (text.trim().parse(), text.trim().parse()),
    };
    let (lo, hi): (usize, usize) = (lo.map_err(|_| bad())?, hi.map_err(|_| bad())?);
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

pub fn ids(set: &PointSet) -> Vec<u32> {
    set.ones().map(|i| i as u32).collect()
}
