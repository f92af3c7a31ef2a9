//! Counterfactual and semifactual explanations over labellings of abstract
//! argumentation frameworks.
//!
//! - [`af`]: frameworks, labellings and set-level predicates
//! - [`semantics`]: σ-labelling enumeration and classical decision problems
//! - [`distance`]: Hamming and weighted distances between labellings
//! - [`explain`]: counterfactuals, semifactuals and their decision problems
//! - [`constraints`]: weak-constrained frameworks and maximum-cardinality labellings
//! - [`asp`]: asprin program generation
//! - [`formats`] and [`cli`]: file readers and query dispatch for the binary

pub mod af;
pub mod asp;
pub mod cli;
pub mod constraints;
pub mod distance;
pub mod error;
pub mod explain;
pub mod formats;
pub mod semantics;

pub use af::{Argument, ArgumentSet, ArgumentationFramework, FrameworkBuilder, Label, Labelling};
pub use distance::{distance, double_weight_measure, DistanceMeasure, DistanceValue, WeightTable};
pub use error::{Error, ErrorCategory, Result};
pub use explain::{goal_changed, goal_kept, ExplanationQuery, ExplanationResult, GoalCriterion, GoalSpec};
pub use semantics::{
    credulous_accept, enumerate_labellings, grounded_labelling, skeptical_accept, verify_labelling,
    LabellingSet, Semantics,
};
