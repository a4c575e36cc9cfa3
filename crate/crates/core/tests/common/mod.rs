#![allow(dead_code)]

use std::io::Write;

use mackey_fields::group::SemidirectGroup;
use mackey_fields::mackey::GroupFunction;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Builtin specs with `|G| ≤ 256`.
pub const SMALL_BUILTINS: &[&str] = &[
    "dihedral:3",
    "dihedral:4",
    "dihedral:5",
    "dihedral:6",
    "dihedral:7",
    "dihedral:8",
    "sign_cube:1",
    "sign_cube:2",
    "cyclic:6",
    "semicyclic:7:2",
    "semicyclic:9:2",
    "affine:5",
    "affine:7",
    "square:2",
    "square:3",
    "square:5",
];

pub fn group(name: &str) -> SemidirectGroup {
    SemidirectGroup::builtin(name).unwrap()
}

pub fn random_function(g: &SemidirectGroup, seed: u64) -> GroupFunction {
    GroupFunction::random(g, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Prints the verdict past the test harness's output capture, then asserts it.
pub fn verdict(criterion: u32, name: &str, pass: bool, detail: &str) {
    let word = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(
        std::io::stderr(),
        "criterion {criterion} ({name}): {word}; {detail}"
    );
    assert!(pass, "criterion {criterion} ({name}) failed: {detail}");
}
