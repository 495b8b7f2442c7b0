//! Heteroclinic phase-boundary profiles for relativistic Euler–Korteweg
//! fluids of van der Waals type.
//!
//! The pipeline runs bottom-up:
//!
//! * [`eos`]: energy law `r(ν)`, capillarity `κ(ν)`, spinodal detection;
//! * [`jump`]: Maxwell states and the continued family of end states;
//! * [`profile`]: the planar profile ODE, its first integral and the two
//!   heteroclinic orbits on the critical level set;
//! * [`tensor`]: 4-velocity and extended stress-energy along a profile;
//! * [`nonbaro`]: isentropic slices of non-barotropic laws;
//! * [`io`] and [`verify`]: CSV artifacts and their re-check.

pub mod eos;
pub mod error;
pub mod io;
pub mod jump;
pub mod nonbaro;
pub mod poly;
pub mod profile;
pub mod roots;
pub mod spline;
pub mod tensor;
pub mod tolerances;
pub mod verify;

pub use eos::{Branch, Capillarity, EnergyLaw, Eos, EosConfig, KappaConfig, Spinodal, StatePoint, ValidationReport};
pub use error::{Error, Result};
pub use jump::{EndStateFamily, EndStates, FamilyRow, MaxwellStates};
pub use profile::{Direction, PhasePoint, ProfileSample, ProfileSolution, StationaryKind, StationaryReport};
pub use tensor::{ExtendedState, FluxDeviation, KinematicState, PlanarTensor, ProfileRow};
pub use tolerances::Tolerances;
