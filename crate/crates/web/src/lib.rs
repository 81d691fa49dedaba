//! Browser bindings: classification, ball growth and the wall-orbit tree
//! checks, each taking a Coxeter matrix in the text or JSON input format.

use coxtrees::cli::{run_text, Command, Format, RunConfig};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Element cap for in-browser runs.
const BROWSER_BUDGET: usize = 200_000;

fn dispatch(
    command: Command,
    matrix: &str,
    radius: usize,
    prime: Option<u32>,
    format: Format,
) -> String {
    let cfg = RunConfig {
        radius,
        prime,
        budget: BROWSER_BUDGET,
        format,
        ..RunConfig::new(command, "browser")
    };
    let outcome = run_text(&cfg, matrix);
    json!({
        "status": outcome.status.code(),
        "output": outcome.output,
        "diagnostics": outcome.diagnostics,
    })
    .to_string()
}

/// Diagram components with their finite/affine/indefinite verdicts.
#[wasm_bindgen]
pub fn classify(matrix: &str) -> String {
    dispatch(Command::Classify, matrix, 0, None, Format::Json)
}

/// Number of elements of each length up to `radius`.
#[wasm_bindgen]
pub fn ball_growth(matrix: &str, radius: usize) -> String {
    dispatch(Command::Ball, matrix, radius, None, Format::Json)
}

/// Congruence subgroup, wall orbits and tree checks. `prime` 0 picks one
/// automatically. With `dot` set the output is the tree quotients in DOT.
#[wasm_bindgen]
pub fn trees(matrix: &str, radius: usize, prime: u32, dot: bool) -> String {
    let prime = (prime != 0).then_some(prime);
    dispatch(
        Command::Trees,
        matrix,
        radius,
        prime,
        if dot { Format::Dot } else { Format::Json },
    )
}
