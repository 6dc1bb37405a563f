//! JSON formats and experiment configuration.
//!
//! Complex numbers are `[re, im]`, matrices are row-major arrays of rows,
//! modes are 3-integer arrays. Output is pretty-printed with a fixed key
//! order, so equal inputs give byte-identical documents. Parse errors name
//! the path to the offending key.

mod config;
mod json;

pub use config::{ExperimentConfig, ThetaSpec};
pub(crate) use config::read_file;
pub use json::{
    emit_element, emit_field, emit_unitary, field_value, from_json, parse_element, parse_field, parse_unitary, to_json,
};
