#![allow(dead_code)]

use erection_core::format::parse_matroid_text;
use erection_core::{ElementSet, Matroid, SetFamily};

pub const TEXTS: [(&str, &str); 6] = [
    ("m1", include_str!("../../../../data/m1.txt")),
    ("m2", include_str!("../../../../data/m2.txt")),
    ("m3", include_str!("../../../../data/m3.txt")),
    ("m4", include_str!("../../../../data/m4.txt")),
    ("m5", include_str!("../../../../data/m5.txt")),
    ("m6", include_str!("../../../../data/m6.txt")),
];

pub fn load(text: &str) -> Matroid {
    parse_matroid_text(text).unwrap().build().unwrap()
}

pub fn corpus() -> Vec<(&'static str, Matroid)> {
    TEXTS
        .iter()
        .map(|(name, text)| (*name, load(text)))
        .collect()
}

pub fn fixture(name: &str) -> Matroid {
    load(TEXTS.iter().find(|(n, _)| *n == name).unwrap().1)
}

pub fn set(s: &str) -> ElementSet {
    s.chars()
        .map(|c| c.to_digit(10).unwrap() as usize)
        .collect()
}

pub fn family(sets: &[&str]) -> SetFamily {
    sets.iter().map(|s| set(s)).collect()
}
