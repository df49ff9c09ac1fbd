//! Hybrid tractable classes: independent-set reduction, root sets of
//! functional networks and optimisation over crisp instances with few dead ends.

mod dead_ends;
mod interval;
mod mwis;
mod root_set;

pub use dead_ends::solve_via_dead_ends;
pub use interval::{
    complement_intervals, decompose_interval, predecessor, successor, union_intervals, Descriptor, LexInterval,
};
pub use mwis::{mwis_reduction, solve_mwis, MwisReduction, WeightedGraph, DEFAULT_MWIS_LIMIT};
pub use root_set::{functional_arcs, is_functional, root_set_size, RootSet};
