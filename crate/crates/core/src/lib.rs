//! Exact toric and boundary-divisor computations for the Losev–Manin spaces
//! and the moduli spaces `M_{0,n}` of pointed rational curves.

pub mod error;
pub mod exact;
pub mod fan;
pub mod kapranov;
pub mod lp;
pub mod m0n;
pub mod permutohedral;
pub mod plucker;
pub mod polytope;
pub mod subset;

pub use error::{Error, Result};
pub use exact::IntMatrix;
pub use fan::{Cone, DivisorTransform, Fan, Validation};
pub use kapranov::{KapranovClass, KapranovClassL, KapranovClassM};
pub use m0n::{BoundaryIndex, BoundarySum, Permutation, PicClassVector};
pub use permutohedral::{build_losev_manin, flag_fan, forgetful_class, LabeledFan};
pub use plucker::{DegreeReport, PluckerRelation};
pub use polytope::{h0_toric, section_polytope, HalfspaceSystem};
pub use subset::Subset;
