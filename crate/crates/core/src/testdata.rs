//! Shared fixtures for unit tests.

use crate::format::parse_matroid_text;
use crate::matroid::Matroid;
use crate::set::{ElementSet, SetFamily};

pub const M1_TEXT: &str = include_str!("../../../data/m1.txt");
pub const M2_TEXT: &str = include_str!("../../../data/m2.txt");
pub const M3_TEXT: &str = include_str!("../../../data/m3.txt");
pub const M4_TEXT: &str = include_str!("../../../data/m4.txt");
pub const M5_TEXT: &str = include_str!("../../../data/m5.txt");
pub const M6_TEXT: &str = include_str!("../../../data/m6.txt");
pub const ALL_TEXTS: [&str; 6] = [M1_TEXT, M2_TEXT, M3_TEXT, M4_TEXT, M5_TEXT, M6_TEXT];

pub const M2_FREE: &[&str] = &[
    "123567", "1234", "1238", "1278", "124568", "1247", "134578", "1346", "1368", "1467", "1678",
    "2345", "234678", "2358", "2457", "2578", "3456", "3568", "4567", "5678",
];

pub const M5_FREE: &[&str] = &[
    "1234", "123568", "1237", "145", "146", "1478", "157", "167", "24578", "246", "267", "345",
    "34678", "357", "456", "567",
];

/// Compact digit notation, elements 1..=9.
pub fn set(s: &str) -> ElementSet {
    s.chars()
        .map(|c| c.to_digit(10).unwrap() as usize)
        .collect()
}

pub fn family(sets: &[&str]) -> SetFamily {
    sets.iter().map(|s| set(s)).collect()
}

pub fn copoints_of(text: &str) -> (usize, SetFamily) {
    let p = parse_matroid_text(text).unwrap();
    (p.n, p.copoints)
}

pub fn load(text: &str) -> Matroid {
    parse_matroid_text(text).unwrap().build().unwrap()
}

pub fn m1() -> Matroid {
    load(M1_TEXT)
}
pub fn m2() -> Matroid {
    load(M2_TEXT)
}
pub fn m3() -> Matroid {
    load(M3_TEXT)
}
pub fn m4() -> Matroid {
    load(M4_TEXT)
}
pub fn m5() -> Matroid {
    load(M5_TEXT)
}
pub fn m6() -> Matroid {
    load(M6_TEXT)
}

pub fn all() -> Vec<Matroid> {
    ALL_TEXTS.iter().map(|t| load(t)).collect()
}
