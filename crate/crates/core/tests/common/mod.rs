#![allow(dead_code)]

use hornsing::arith::{vars, MPoly, Rational, Vars};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub mod props;

pub const CASES: u32 = 128;

/// `(alpha, beta, beta', gamma)` as numerator/denominator pairs.
pub type KdfParams = (i64, i64, i64, i64, i64, i64, i64, i64);

pub const KDF_PARAMS: [KdfParams; 5] = [
    (1, 2, 1, 2, 1, 2, 1, 1),
    (1, 3, 1, 5, 2, 7, 1, 1),
    (2, 3, 1, 4, 3, 5, 2, 1),
    (1, 7, 3, 2, 5, 3, 3, 4),
    (3, 1, 2, 1, 1, 2, 5, 2),
];

/// Runner with a fixed seed so failures reproduce.
pub fn runner(seed: u8) -> TestRunner {
    let cfg = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(cfg, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

pub fn xy() -> Vars {
    vars(&["x", "y"])
}

/// Small integer polynomial in `x, y` of degree at most `deg` in each.
pub fn poly(deg: u32, terms: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((0..=deg, 0..=deg, -6i64..=6), 1..=terms).prop_map(|ts| {
        MPoly::from_terms(&xy(), ts.into_iter().map(|(a, b, c)| (vec![a, b], Rational::from_integer(c.into()))))
    })
}

/// Like [`poly`] but with positive degree in `y`.
pub fn poly_in_y(deg: u32, terms: usize) -> impl Strategy<Value = MPoly> {
    (poly(deg, terms), 1..=deg, 1i64..=4).prop_map(|(p, d, c)| {
        let lead = MPoly::monomial(&xy(), vec![0, d], Rational::from_integer(c.into()));
        &p + &lead
    })
}

pub fn fixture(name: &str) -> String {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Rows of a `|`-separated fixture table, comments skipped.
pub fn table(name: &str) -> Vec<Vec<String>> {
    fixture(name)
        .lines()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split('|').map(|c| c.trim().to_string()).collect())
        .collect()
}
