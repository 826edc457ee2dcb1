//! Abacus model of integer partitions.
//!
//! Partitions are encoded as bead sets and laid out on `s`-runner abaci,
//! where being an `s`-core reads off as "no spacer below a bead". On top of
//! that sit the explicit abaci of the maximal `(s, ms±1)`-cores, exhaustive
//! enumerators for simultaneous cores, and a harness that checks enumeration
//! results against closed forms and recurrences.

pub mod abacus;
pub mod constructions;
pub mod enumeration;
pub mod error;
pub mod partition;
pub mod verification;

pub use abacus::{is_simultaneous_core, is_t_core, Abacus, AxisTheta, BeadSet};
pub use constructions::{Construction, Pyramid};
pub use enumeration::{CoreFamily, FamilyReport, Filters, GapPoset};
pub use error::{CoreError, Result};
pub use partition::{HookLength, Partition};
pub use verification::{verify_claim, ClaimId, ParamGrid, VerificationReport};
