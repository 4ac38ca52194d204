//! GL(d,p)-orbits on subspaces of the layers of the free group.

mod bijection;
mod classes;
mod orbits;
mod report;

pub use bijection::{bijection_check, BijectionReport, BijectionRow};
pub use classes::{brute_class_sizes, conjugacy_classes, gl_generators, gl_order, invertible_module_types, ConjClass};
pub use orbits::{
    explicit_orbit_census, orbit_count, stabilizer_order, CensusParams, CfCensus, ExplicitCensus, OrbitInfo,
};
pub use report::{
    census_report, proportion_report, regular_lower_bound, verify_est2, CensusReport, Est2Report, ExplicitMode,
};
