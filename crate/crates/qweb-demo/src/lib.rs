//! Browser bindings for three qweb operations. Each returns the text the
//! command-line tool would print, or the error message.

use std::io::Cursor;

use wasm_bindgen::prelude::*;

fn call(args: &[&str]) -> String {
    let mut argv = vec!["qweb"];
    argv.extend_from_slice(args);
    let out = qweb::cli::run(argv, &mut Cursor::new(Vec::new()));
    if out.code == qweb::cli::EXIT_OK {
        out.stdout
    } else if out.stdout.is_empty() {
        out.stderr
    } else {
        format!("{}{}", out.stdout, out.stderr)
    }
}

/// Evaluates a web diagram on V_n.
#[wasm_bindgen]
pub fn eval_web(n: u32, diagram: &str) -> String {
    call(&["eval", "--n", &n.to_string(), diagram])
}

/// Normalized invariant of a braid closure such as `braid 2 [1,1] : s1 s1 s1`.
#[wasm_bindgen]
pub fn link_invariant(braid: &str) -> String {
    call(&["invariant", "--braid", braid])
}

/// Runs a relation suite at rank `n`.
#[wasm_bindgen]
pub fn verify_suite(suite: &str, n: u32) -> String {
    call(&["verify", "--suite", suite, "--n", &n.to_string()])
}
