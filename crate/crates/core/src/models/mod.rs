//! Generators for the standard problem families of the toolkit.

mod btp;
mod max2sat;
mod office;
mod random_jwp;
mod scheduling;
mod softalldiff;

pub use btp::gen_btp_independent_set;
pub use max2sat::{check_max2sat_jwp, Clause, Literal, Max2SatCheck};
pub use office::{gen_courses, gen_office, CoursesSpec, OfficeSpec};
pub use random_jwp::{gen_random_jwp, PlantedSet, RandomJwp, RandomJwpParams};
pub use scheduling::{gen_scheduling, SchedulingSpec};
pub use softalldiff::{gen_softalldiff, SoftAllDiffVariant};
