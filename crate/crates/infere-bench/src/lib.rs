//! Shared inputs for the benchmark targets.

use infere_core::dsl::{parse_plain, RegexAst};
use infere_core::gen::{random_asts, GenConfig};

/// Representative plain regexes, from trivial to moderately nested.
pub const SAMPLE_PLAIN: &[&str] = &[
    "[a-z]",
    "((.*)([0-9]))|((<m0>)(.*))",
    "(([a-z])(.*))&((.*)([AEIOUaeiou]))",
    "(([A-Za-z]){3,})&((.*)(([0-9])(.*)))",
    "(<m0>)(((.*)([A-Z]))*)",
    "~(([0-9]){2,4})&((.*)([-,;+:!@#_$%&*=^]))",
];

/// The parsed sample corpus.
pub fn sample_asts() -> Vec<RegexAst> {
    SAMPLE_PLAIN
        .iter()
        .map(|text| parse_plain(text).expect("sample parses"))
        .collect()
}

/// A deterministic corpus of random ASTs for throughput measurements.
pub fn random_corpus(count: usize) -> Vec<RegexAst> {
    random_asts(97, count, &GenConfig::default())
}
