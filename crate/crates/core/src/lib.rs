//! Classical first-order logic workbench: a focused two-sided sequent
//! calculus with an explicit-tree checker, finite Kripke-style models
//! with strong refutation as the primitive semantic relation, and cut
//! elimination by evaluation into the universal model.
//!
//! The commonly used types are re-exported at the crate root; the full
//! surface lives in the modules.

pub mod calculus;
pub mod corpus;
pub mod kripke;
pub mod nbe;
pub mod syntax;

pub use calculus::{CheckError, Derivation, Rule, Sequent, Violation};
pub use kripke::{AuditReport, Evaluator, FiniteModel, SoundnessReport};
pub use nbe::{normalize, Explosion, FreshSupply, SemForce, SemRefute, SemSRefute, UWorld};
pub use syntax::{Context, Formula, Ident, Term};
