//! Greedy heuristics, exact solvers and analytic references for the
//! multidimensional axial assignment problem under random costs.
//!
//! An instance is a `d`-dimensional cost tensor with side `n`; an assignment
//! picks `n` tuples that cover every index of every coordinate exactly once.
//! Tuples are 0-based throughout; the first coordinate is the "row".

pub mod analytic;
pub mod error;
pub mod exact;
pub mod greedy;
pub mod harness;
pub mod io;
pub mod model;
pub mod rng;

pub use error::{Error, Result};
pub use exact::{solve, ExactMethod, ExactResult};
pub use greedy::{complete_in_order, default_steps, global_greedy, row_greedy, GreedyTrace};
pub use harness::{run_campaign, Algo, ConfigPatch, Emit, ExperimentConfig, MRule, StepRecord, TrialRecord};
pub use model::{
    make_factorized, make_independent, total_cost, Assignment, CostModel, CostTensor, FactorizedInstance,
    HashedUniformInstance, IndependentInstance, Instance, PartialAssignment,
};
pub use rng::RngSpec;
