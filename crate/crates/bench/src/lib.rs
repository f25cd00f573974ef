//! Fixture matroids shared by the benchmarks.

use erection_core::format::parse_matroid_text;
use erection_core::Matroid;

pub const FIXTURES: [(&str, &str); 6] = [
    ("m1", include_str!("../../../data/m1.txt")),
    ("m2", include_str!("../../../data/m2.txt")),
    ("m3", include_str!("../../../data/m3.txt")),
    ("m4", include_str!("../../../data/m4.txt")),
    ("m5", include_str!("../../../data/m5.txt")),
    ("m6", include_str!("../../../data/m6.txt")),
];

pub fn fixture(name: &str) -> Matroid {
    let (_, text) = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("unknown fixture {name}"));
    parse_matroid_text(text)
        .and_then(|p| p.build())
        .expect("fixture parses")
}
