//! Ground-set primitives: element sets packed into a machine word, duplicate-free
//! set families, and permutations of the ground set.
//!
//! Elements are numbered `1..=n` with `n <= 64`; element `e` occupies bit `e - 1`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

/// Largest supported ground set.
pub const MAX_GROUND: usize = 64;

/// A subset of the ground set `{1, ..., n}`.
///
/// Ordering is lexicographic on the ascending element sequence, with a proper
/// prefix sorting first, so `{1,2} < {1,2,3} < {1,3} < {2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    /// The whole ground set `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GROUND, "ground set larger than {MAX_GROUND}");
        if n == MAX_GROUND {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        assert!((1..=MAX_GROUND).contains(&e), "element {e} out of range");
        ElementSet(1u64 << (e - 1))
    }

    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=MAX_GROUND).contains(&e) && self.0 & (1u64 << (e - 1)) != 0
    }

    pub fn insert(&mut self, e: usize) {
        *self = self.with(e);
    }

    pub fn remove(&mut self, e: usize) {
        if (1..=MAX_GROUND).contains(&e) {
            self.0 &= !(1u64 << (e - 1));
        }
    }

    #[must_use]
    pub fn with(self, e: usize) -> Self {
        self | Self::singleton(e)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Self) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn is_superset(self, other: Self) -> bool {
        other.is_subset(self)
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    /// Smallest element, if any.
    pub fn min_element(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Largest element, if any.
    pub fn max_element(self) -> Option<usize> {
        (self.0 != 0).then(|| MAX_GROUND - self.0.leading_zeros() as usize)
    }

    /// Elements in ascending order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// All subsets of `self` with exactly `k` elements, in no particular order.
    pub fn subsets_of_size(self, k: usize) -> impl Iterator<Item = ElementSet> {
        let members: Vec<usize> = self.iter().collect();
        Combinations::new(members.len(), k)
            .map(move |idx| idx.iter().map(|&i| members[i]).collect())
    }

    /// Compact digit string (`{2,4,5}` -> `245`); only meaningful
    /// when every element is a single digit.
    pub fn compact(self) -> String {
        self.iter().map(|e| e.to_string()).collect()
    }
}

impl std::ops::BitOr for ElementSet {
    type Output = Self;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl std::ops::BitAnd for ElementSet {
    type Output = Self;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl std::ops::Sub for ElementSet {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // Both sequences agree below the lowest differing element. The set holding
        // it is smaller unless the other set stops there (and is then a prefix).
        let low = diff.trailing_zeros();
        let above = if low == 63 { 0 } else { !0u64 << (low + 1) };
        let (holder_is_self, other_bits) = if self.0 >> low & 1 == 1 {
            (true, other.0)
        } else {
            (false, self.0)
        };
        let holder_smaller = other_bits & above != 0;
        match (holder_is_self, holder_smaller) {
            (true, true) | (false, false) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter()
            .fold(ElementSet::EMPTY, |acc, e| acc.with(e))
    }
}

/// Space-separated ascending elements; the empty set prints as `{}`.
impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Index combinations `k`-of-`n` in lexicographic order.
struct Combinations {
    idx: Vec<usize>,
    n: usize,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            idx: (0..k).collect(),
            n,
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// A duplicate-free collection of element sets.
///
/// Iteration follows insertion order. Equality is set equality and ignores order.
#[derive(Clone, Default)]
pub struct SetFamily {
    sets: Vec<ElementSet>,
    index: HashSet<ElementSet>,
}

impl SetFamily {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts `set`, returning `false` if it was already present.
    pub fn insert(&mut self, set: ElementSet) -> bool {
        if self.index.insert(set) {
            self.sets.push(set);
            true
        } else {
            false
        }
    }

    pub fn remove(&mut self, set: ElementSet) -> bool {
        if self.index.remove(&set) {
            self.sets.retain(|&s| s != set);
            true
        } else {
            false
        }
    }

    pub fn contains(&self, set: ElementSet) -> bool {
        self.index.contains(&set)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = ElementSet> + ExactSizeIterator + '_ {
        self.sets.iter().copied()
    }

    pub fn as_slice(&self) -> &[ElementSet] {
        &self.sets
    }

    /// Members in canonical (lexicographic) order.
    pub fn sorted(&self) -> Vec<ElementSet> {
        let mut v = self.sets.clone();
        v.sort();
        v
    }

    /// The same family re-stored in canonical order.
    pub fn canonical(&self) -> SetFamily {
        self.sorted().into_iter().collect()
    }

    /// True if no member contains another.
    pub fn is_antichain(&self) -> bool {
        self.antichain_violation().is_none()
    }

    /// First pair `(a, b)` with `a` a proper subset of `b`.
    pub fn antichain_violation(&self) -> Option<(ElementSet, ElementSet)> {
        for &a in &self.sets {
            for &b in &self.sets {
                if a.is_proper_subset(b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Union of all members.
    pub fn union_all(&self) -> ElementSet {
        self.sets.iter().fold(ElementSet::EMPTY, |acc, &s| acc | s)
    }

    pub fn retain(&mut self, mut keep: impl FnMut(ElementSet) -> bool) {
        let index = &mut self.index;
        self.sets.retain(|&s| {
            let k = keep(s);
            if !k {
                index.remove(&s);
            }
            k
        });
    }
}

impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.sets.iter().all(|s| other.contains(*s))
    }
}

impl Eq for SetFamily {}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.sets.iter()).finish()
    }
}

impl FromIterator<ElementSet> for SetFamily {
    fn from_iter<I: IntoIterator<Item = ElementSet>>(iter: I) -> Self {
        let mut fam = SetFamily::new();
        for s in iter {
            fam.insert(s);
        }
        fam
    }
}

impl Extend<ElementSet> for SetFamily {
    fn extend<I: IntoIterator<Item = ElementSet>>(&mut self, iter: I) {
        for s in iter {
            self.insert(s);
        }
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = ElementSet;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, ElementSet>>;

    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter().copied()
    }
}

/// A bijection of `{1, ..., n}` in one-line notation: `images[i - 1] = π(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Returns `None` unless `images` is a bijection of `1..=images.len()`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        if n > MAX_GROUND {
            return None;
        }
        let mut seen = ElementSet::EMPTY;
        for &x in &images {
            if !(1..=n).contains(&x) || seen.contains(x) {
                return None;
            }
            seen.insert(x);
        }
        Some(Permutation { images })
    }

    /// Parses one-line notation: digits (`18234567`) when `n <= 9`, otherwise
    /// whitespace- or comma-separated integers.
    pub fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        let images: Option<Vec<usize>> =
            if !text.contains(|c: char| c.is_whitespace() || c == ',') && text.len() <= 9 {
                text.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize))
                    .collect()
            } else {
                text.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse().ok())
                    .collect()
            };
        Self::from_images(images?)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, e: usize) -> usize {
        self.images[e - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// Relabels every element `e` of `set` as `π(e)`.
    pub fn apply(&self, set: ElementSet) -> ElementSet {
        set.iter().map(|e| self.image(e)).collect()
    }

    /// Swaps the images of `a` and `b`.
    pub fn swap(&mut self, a: usize, b: usize) {
        self.images.swap(a - 1, b - 1);
    }

    /// Advances to the next permutation in lexicographic order; returns `false`
    /// (leaving `self` unchanged) at the last one.
    pub fn next_lex(&mut self) -> bool {
        next_permutation(&mut self.images)
    }
}

pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Digits when `n <= 9`, otherwise comma-separated.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.images.len() <= 9 { "" } else { "," };
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}
