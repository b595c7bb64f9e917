//! Torsion classes of representation-finite algebras described by an
//! [`AlgebraSpec`], and the binuclear interval order on them.

mod algebra;
mod faces;
mod presilting;
mod quiver;
mod stability;
mod tors;

use thiserror::Error;

pub use algebra::{
    load_algebra, AlgebraError, AlgebraJson, AlgebraSpec, IndecJson, Indecomposable, Ses, SesJson,
    Subcat, MAX_INDECOMPOSABLES,
};
pub use faces::{
    cw_partition, fss_cover_check, hasse_vs_incidence, CoverReport, CwBlock, CwReport,
    IncidenceDiff,
};
pub use presilting::{
    cone_data, enumerate_presilting, enumerate_tau_rigid_pairs, is_tau_rigid_pair, pair_interval,
    ConeData, PresiltingEntry, TauRigidPair,
};
pub use quiver::{gen_linear_an, gen_type_a, hom_ext, nonsplit_extension, Quiver, Rep};
pub use stability::{
    interior_point, random_theta, tf_interval, theta_t, theta_tbar, StabilityVector,
};
pub use tors::{
    bricks_and_kappa, enumerate_tors, enumerate_tors_with_limit, heart, is_torsion_class,
    left_perp, res_interval, right_perp, star, tors_closure, BrickReport, ResReport, TorsData,
    DEFAULT_MAX_INDEC,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorsionError {
    #[error("{count} indecomposables exceed the enumeration limit of {max}")]
    TooLarge { count: usize, max: usize },
    #[error("left perpendicular category {0} is not a torsion class")]
    ClosureViolation(String),
    #[error("interval {0} is not binuclear")]
    NotBinuclear(String),
    #[error("{0} is not a torsion class")]
    NotATorsionClass(String),
    #[error("brick correspondence fails: {0}")]
    BijectionFailure(String),
    #[error("τ-rigid pairs are not in bijection with binuclear intervals: {0}")]
    NotBijective(String),
    #[error("cone generators are linearly dependent: {0}")]
    DependentGenerators(String),
    #[error("cone dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("stability vector has {got} entries, expected {expected}")]
    BadTheta { expected: usize, got: usize },
}
