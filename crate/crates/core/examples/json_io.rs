//! JSON round trips and experiment configs.

use nctorus::io::{emit_field, parse_field, ExperimentConfig};
use nctorus::spin::random_field;

pub fn run() -> bool {
    let config = ExperimentConfig::parse(r#"{"seed": 3, "N": 2, "K": 1, "theta": "single-angle:0.5"}"#).unwrap();
    let field = random_field(&config.field_params(), config.theta_matrix().unwrap());
    let text = emit_field(&field);
    let back = parse_field(&text).unwrap();
    println!("{} bytes of JSON, round trip exact: {}", text.len(), back == field);

    let bad = r#"{"size": 1, "theta": [[0.1, 0, 0], [0, 0, 0], [0, 0, 0]], "components": [[], [], []]}"#;
    println!("rejected: {}", parse_field(bad).unwrap_err());
    back == field
}

fn main() {
    run();
}
