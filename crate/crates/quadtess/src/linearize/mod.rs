pub mod appendix;
pub mod fatou;
pub mod jet;
pub mod koenigs;
pub mod ueda;
pub use appendix::{invariant_regions_check, model_jet, RegionReport};
pub use fatou::{Fatou, FormalFatou};
pub use jet::{cycle_jet, iterate_normal_coeff, normal_form, Jet};
pub use koenigs::{koenigs_series, Koenigs};
pub use ueda::{ueda_linearize, UEDA_MAX_ITER, UEDA_TOL};
pub mod arcs;
pub use arcs::{degenerating_arcs, DegArc};
