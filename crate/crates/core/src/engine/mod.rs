//! Case eliminations, the shared equation solvers, the residual search and
//! the certificate checker.

pub mod cases;
pub mod certificate;
pub mod checker;
pub mod residual;
pub mod solver;
pub mod suite;

pub use cases::{required_block_stab_order, CaseOptions};
pub use certificate::{EliminationCertificate, Exact, GroupRef, Rule, Verdict, Witness};
pub use checker::{verify_all, verify_certificate, CheckError};
pub use residual::{search_residual, ResidualReport, SearchBounds};
pub use solver::{solve_psl_equation, sweep_psl_equation, DiophantineSolution, Filter, NEff, PslCase};
pub use suite::{run_full_suite, run_suite, SuiteOptions, SuiteReport};
