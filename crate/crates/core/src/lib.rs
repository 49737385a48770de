//! Exact arithmetic for one-point AG codes on Castle and weak-Castle
//! curves, the CSS quantum codes they yield, trace descent to subfields
//! and quantum Gilbert-Varshamov classification.

pub mod agcodes;
pub mod code;
pub mod curves;
pub mod error;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod quantum;
pub mod repro;
pub mod semigroup;

pub use agcodes::{ag_build, CodeSequence, DualityStatus, OnePointCode};
pub use code::{DualSearch, InnerProduct, LinearCode, MinWeight, TwistVector};
pub use curves::{CurveSpec, EvaluationSet, Family, PointedCurve};
pub use error::{Error, Result};
pub use field::{Elem, Embedding, Field, FieldDescriptor, FieldElement};
pub use matrix::Matrix;
pub use quantum::{gv_status, ConstructionOutcome, GvStatus, QuantumParams};
pub use semigroup::NumericalSemigroup;
