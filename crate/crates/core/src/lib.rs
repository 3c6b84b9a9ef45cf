//! Finite incidence geometry for growth experiments in projective planes.
//!
//! - [`gf`]: arithmetic in GF(p^k).
//! - [`incidence`]: abstract incidence systems, duals and the plane axioms.
//! - [`plane`]: PG(2,q) and the plane file format.
//! - [`growth`]: the alternating "lines defined by points / points defined by
//!   lines" iteration and the counting lemmas along it.
//! - [`classify`]: fans, pencils, subplanes and the growth trichotomy.
//! - [`configs`]: Desargues configurations and bracket-set triangle
//!   inequalities.
//! - [`sampling`]: the seeded generator every experiment draws from.

pub mod classify;
pub mod configs;
pub mod gf;
pub mod growth;
pub mod incidence;
pub mod plane;
pub mod sampling;

pub use incidence::{IncidenceSystem, LineId, LineSet, PointId, PointSet};
pub use plane::ProjectivePlane;
