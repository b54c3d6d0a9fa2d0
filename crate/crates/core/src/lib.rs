//! Nilpotent orbits in the classical Lie algebras `sp_N` and `so_N`: partition
//! combinatorics, the Kempken–Spaltenstein algorithm, sheets and induction,
//! an exact matrix model of the centraliser, and invariants of `g_e`.

pub mod centraliser;
pub mod invariants;
pub mod ks;
pub mod linalg;
pub mod orbits;
pub mod partition;
pub mod poly;
pub mod verify;

pub use centraliser::{IndexSpace, Realization};
pub use invariants::{InvariantCounts, Side};
pub use ks::{AdmissibleSequence, CaseKind, KsError, PhiSet};
pub use orbits::{
    induce_step, induce_through, is_richardson, levi_classes, make_orbit, sheets_containing,
    w_report, Label, LieType, NilpotentOrbit, OrbitError, RestrictedSequence, SheetDatum, WReport,
};
pub use partition::{
    Classification, Dims, Involution, Partition, PartitionError, Profile, Sign, StatBundle,
    TwoStepReport,
};
pub use verify::{Check, VerifyConfig, VerifyReport};
