//! Simple matroids stored as their full lattice of flats, stratified by rank.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::set::{ElementSet, Permutation, SetFamily, MAX_GROUND};

/// Default cap on `C(n, r)` for basis enumeration.
pub const DEFAULT_BASES_CAP: u128 = 10_000_000;

/// First hyperplane axiom (or simplicity condition) violated by a copoint family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CopointDefect {
    GroundSetSize(usize),
    Empty,
    OutOfRange(ElementSet),
    ContainsGroundSet,
    NotAntichain {
        smaller: ElementSet,
        larger: ElementSet,
    },
    /// No member contains `(first ∩ second) ∪ {element}`.
    Exchange {
        first: ElementSet,
        second: ElementSet,
        element: usize,
    },
    UncoveredElement(usize),
    Loop(usize),
    Parallel(usize, usize),
    /// A copoint that does not sit directly below the top of the generated lattice.
    RankInconsistent {
        set: ElementSet,
        height: usize,
        expected: usize,
    },
}

impl CopointDefect {
    fn is_simplicity_defect(&self) -> bool {
        matches!(
            self,
            CopointDefect::UncoveredElement(_)
                | CopointDefect::Loop(_)
                | CopointDefect::Parallel(..)
        )
    }
}

impl fmt::Display for CopointDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CopointDefect::GroundSetSize(n) => write!(f, "ground set size {n} outside 1..=64"),
            CopointDefect::Empty => f.write_str("family is empty"),
            CopointDefect::OutOfRange(s) => write!(f, "set {s:?} is not inside the ground set"),
            CopointDefect::ContainsGroundSet => f.write_str("family contains the whole ground set"),
            CopointDefect::NotAntichain { smaller, larger } => {
                write!(f, "antichain: {smaller:?} is contained in {larger:?}")
            }
            CopointDefect::Exchange {
                first,
                second,
                element,
            } => write!(
                f,
                "exchange: no member contains ({first:?} ∩ {second:?}) ∪ {{{element}}}"
            ),
            CopointDefect::UncoveredElement(e) => {
                write!(f, "coverage: element {e} lies in no member")
            }
            CopointDefect::Loop(e) => {
                write!(f, "simplicity: element {e} lies in every member (loop)")
            }
            CopointDefect::Parallel(a, b) => write!(
                f,
                "simplicity: elements {a} and {b} are never separated (parallel)"
            ),
            CopointDefect::RankInconsistent {
                set,
                height,
                expected,
            } => write!(
                f,
                "rank: {set:?} has height {height} in the generated lattice, expected {expected}"
            ),
        }
    }
}

/// Checks that `copoints` is the hyperplane family of a simple matroid on `S_n`.
///
/// Axioms, in reporting order: members lie in `S_n` and differ from it, the family
/// is a nonempty antichain, the exchange axiom holds, every element lies in some
/// member, no element lies in every member, and every pair is separated by a member.
pub fn validate_copoint_family(n: usize, copoints: &SetFamily) -> Result<(), CopointDefect> {
    if n == 0 || n > MAX_GROUND {
        return Err(CopointDefect::GroundSetSize(n));
    }
    let ground = ElementSet::full(n);
    if copoints.is_empty() {
        return Err(CopointDefect::Empty);
    }
    for h in copoints {
        if !h.is_subset(ground) {
            return Err(CopointDefect::OutOfRange(h));
        }
        if h == ground {
            return Err(CopointDefect::ContainsGroundSet);
        }
    }
    if let Some((smaller, larger)) = copoints.antichain_violation() {
        return Err(CopointDefect::NotAntichain { smaller, larger });
    }
    let members = copoints.as_slice();
    for (i, &first) in members.iter().enumerate() {
        for &second in &members[i + 1..] {
            let meet = first & second;
            for element in (ground - (first | second)).iter() {
                let need = meet.with(element);
                if !members.iter().any(|h| need.is_subset(*h)) {
                    return Err(CopointDefect::Exchange {
                        first,
                        second,
                        element,
                    });
                }
            }
        }
    }
    let covered = copoints.union_all();
    if let Some(e) = (ground - covered).min_element() {
        return Err(CopointDefect::UncoveredElement(e));
    }
    let common = members.iter().fold(ground, |acc, &h| acc & h);
    if let Some(e) = common.min_element() {
        return Err(CopointDefect::Loop(e));
    }
    for a in 1..=n {
        for b in a + 1..=n {
            if members.iter().all(|h| h.contains(a) == h.contains(b)) {
                return Err(CopointDefect::Parallel(a, b));
            }
        }
    }
    Ok(())
}

/// Why a family fails to be the copoint family of an erection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ErectionDefect {
    NotSpanning(ElementSet),
    NotClosed {
        set: ElementSet,
        subset: ElementSet,
        closure: ElementSet,
    },
    BasisUncovered(ElementSet),
    BasisInSeveral {
        basis: ElementSet,
        first: ElementSet,
        second: ElementSet,
    },
}

impl fmt::Display for ErectionDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ErectionDefect::NotSpanning(s) => write!(f, "(i) {s:?} does not span"),
            ErectionDefect::NotClosed {
                set,
                subset,
                closure,
            } => write!(
                f,
                "(ii) {set:?} is not closed: closure of {subset:?} is {closure:?}"
            ),
            ErectionDefect::BasisUncovered(b) => write!(f, "(iii) basis {b:?} lies in no member"),
            ErectionDefect::BasisInSeveral {
                basis,
                first,
                second,
            } => write!(
                f,
                "(iii) basis {basis:?} lies in both {first:?} and {second:?}"
            ),
        }
    }
}

/// A simple matroid on `{1, ..., n}` given by its flats of each rank.
///
/// Immutable once built.
#[derive(Clone)]
pub struct Matroid {
    n: usize,
    flats: Vec<SetFamily>,
    ranks: HashMap<ElementSet, usize>,
}

impl Matroid {
    /// Validates `copoints` and builds the matroid whose hyperplanes they are.
    pub fn from_copoints(n: usize, copoints: &SetFamily) -> Result<Matroid> {
        match validate_copoint_family(n, copoints) {
            Ok(()) => {}
            Err(CopointDefect::GroundSetSize(n)) => return Err(Error::GroundSetSize(n)),
            Err(d) if d.is_simplicity_defect() => return Err(Error::NotSimple(d.to_string())),
            Err(d) => return Err(Error::InvalidCopoints(d)),
        }
        Self::from_copoints_unchecked(n, copoints)
    }

    /// Builds the lattice without checking the hyperplane axioms.
    ///
    /// Lower flats are all intersections of copoints; each flat's rank is the
    /// length of the longest chain below it. Structural problems that surface
    /// while stratifying are still reported.
    pub fn from_copoints_unchecked(n: usize, copoints: &SetFamily) -> Result<Matroid> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::GroundSetSize(n));
        }
        if copoints.is_empty() {
            return Err(Error::InvalidCopoints(CopointDefect::Empty));
        }
        let ground = ElementSet::full(n);
        if let Some(h) = copoints.iter().find(|h| !h.is_subset(ground)) {
            return Err(Error::InvalidCopoints(CopointDefect::OutOfRange(h)));
        }

        let mut lattice: HashSet<ElementSet> = copoints.iter().collect();
        lattice.insert(ground);
        let mut frontier: Vec<ElementSet> = copoints.iter().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &f in &frontier {
                for h in copoints {
                    let g = f & h;
                    if lattice.insert(g) {
                        next.push(g);
                    }
                }
            }
            frontier = next;
        }

        let mut by_size: Vec<ElementSet> = lattice.into_iter().collect();
        by_size.sort_by_key(|s| (s.len(), *s));
        let mut height: HashMap<ElementSet, usize> = HashMap::with_capacity(by_size.len());
        for (i, &f) in by_size.iter().enumerate() {
            let h = by_size[..i]
                .iter()
                .filter(|g| g.is_proper_subset(f))
                .map(|g| height[g] + 1)
                .max()
                .unwrap_or(0);
            height.insert(f, h);
        }

        let bottom = by_size[0];
        if !bottom.is_empty() {
            return Err(Error::NotSimple(format!(
                "elements {bottom:?} lie in every copoint (loops)"
            )));
        }
        let rank = height[&ground];
        for h in copoints {
            if height[&h] + 1 != rank {
                return Err(Error::InvalidCopoints(CopointDefect::RankInconsistent {
                    set: h,
                    height: height[&h],
                    expected: rank.saturating_sub(1),
                }));
            }
        }

        let mut flats = vec![SetFamily::new(); rank + 1];
        for &f in &by_size {
            flats[height[&f]].insert(f);
        }
        let flats: Vec<SetFamily> = flats.iter().map(SetFamily::canonical).collect();
        let singletons: SetFamily = (1..=n).map(ElementSet::singleton).collect();
        if flats[1] != singletons {
            let bad = flats[1]
                .iter()
                .find(|p| p.len() != 1)
                .unwrap_or(ElementSet::EMPTY);
            return Err(Error::NotSimple(format!(
                "rank-1 flat {bad:?} is not a singleton"
            )));
        }
        Ok(Matroid::from_flats(n, flats))
    }

    /// The rank-1 configuration `{∅, S_n}`: the starting point for iterated
    /// erection. Not simple when `n >= 2`.
    pub(crate) fn rank_one(n: usize) -> Matroid {
        let flats = vec![
            std::iter::once(ElementSet::EMPTY).collect(),
            std::iter::once(ElementSet::full(n)).collect(),
        ];
        Matroid::from_flats(n, flats)
    }

    pub(crate) fn from_flats(n: usize, flats: Vec<SetFamily>) -> Matroid {
        let mut ranks = HashMap::new();
        for (r, fam) in flats.iter().enumerate() {
            for f in fam {
                ranks.insert(f, r);
            }
        }
        Matroid { n, flats, ranks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.flats.len() - 1
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    /// Flats of rank `i`. Panics if `i > rank`.
    pub fn flats(&self, i: usize) -> &SetFamily {
        &self.flats[i]
    }

    pub fn flats_by_rank(&self) -> &[SetFamily] {
        &self.flats
    }

    pub fn copoints(&self) -> &SetFamily {
        &self.flats[self.rank() - 1]
    }

    /// Flats of rank `r - 2`; `None` for rank below 2.
    pub fn colines(&self) -> Option<&SetFamily> {
        self.rank().checked_sub(2).map(|i| &self.flats[i])
    }

    /// Whitney numbers of the second kind, `W_0..=W_r`.
    pub fn whitney(&self) -> Vec<usize> {
        self.flats.iter().map(SetFamily::len).collect()
    }

    pub fn is_flat(&self, set: ElementSet) -> bool {
        self.ranks.contains_key(&set)
    }

    pub fn rank_of_flat(&self, flat: ElementSet) -> Option<usize> {
        self.ranks.get(&flat).copied()
    }

    /// Smallest flat containing `set` (elements outside the ground set are ignored).
    pub fn closure(&self, set: ElementSet) -> ElementSet {
        let set = set & self.ground();
        self.copoints()
            .iter()
            .filter(|h| set.is_subset(*h))
            .fold(self.ground(), |acc, h| acc & h)
    }

    pub fn rank_of_set(&self, set: ElementSet) -> usize {
        self.ranks[&self.closure(set)]
    }

    /// True if `set` contains the closure of each of its subsets of size at most `k`.
    pub fn is_k_closed(&self, set: ElementSet, k: usize) -> bool {
        self.k_closure_witness(set, k).is_none()
    }

    /// A subset of size at most `k` whose closure escapes `set`.
    pub fn k_closure_witness(&self, set: ElementSet, k: usize) -> Option<(ElementSet, ElementSet)> {
        // Closure is monotone, so the largest admissible subsets suffice.
        let j = k.min(set.len());
        set.subsets_of_size(j)
            .map(|b| (b, self.closure(b)))
            .find(|(_, c)| !c.is_subset(set))
    }

    /// Truncation to rank `k + 1`: flats of rank at most `k` plus the ground set.
    pub fn truncation(&self, k: usize) -> Result<Matroid> {
        let max = self.rank().saturating_sub(1);
        if k < 1 || k > max {
            return Err(Error::RankOutOfRange { k, max });
        }
        let mut flats: Vec<SetFamily> = self.flats[..=k].to_vec();
        flats.push(std::iter::once(self.ground()).collect());
        Ok(Matroid::from_flats(self.n, flats))
    }

    /// All bases, i.e. `r`-subsets lying in no copoint.
    pub fn bases(&self, cap: u128) -> Result<SetFamily> {
        let r = self.rank();
        let count = binomial(self.n, r);
        if count > cap {
            return Err(Error::EnumerationCapExceeded { count, cap });
        }
        let copoints = self.copoints().as_slice();
        let mut out: Vec<ElementSet> = self
            .ground()
            .subsets_of_size(r)
            .filter(|b| !copoints.iter().any(|h| b.is_subset(*h)))
            .collect();
        out.sort();
        Ok(out.into_iter().collect())
    }

    /// Checks whether `candidates` are the copoints of an erection of `self`:
    /// every member spans, every member is `(r - 1)`-closed, and every basis lies
    /// in exactly one member. `Ok(None)` means they are.
    pub fn verify_erection_copoints(
        &self,
        candidates: &SetFamily,
        bases_cap: u128,
    ) -> Result<Option<ErectionDefect>> {
        let r = self.rank();
        for h in candidates {
            if self.rank_of_set(h) != r {
                return Ok(Some(ErectionDefect::NotSpanning(h)));
            }
        }
        for set in candidates {
            if let Some((subset, closure)) = self.k_closure_witness(set, r - 1) {
                return Ok(Some(ErectionDefect::NotClosed {
                    set,
                    subset,
                    closure,
                }));
            }
        }
        for basis in &self.bases(bases_cap)? {
            let mut holders = candidates.iter().filter(|h| basis.is_subset(*h));
            match (holders.next(), holders.next()) {
                (None, _) => return Ok(Some(ErectionDefect::BasisUncovered(basis))),
                (Some(first), Some(second)) => {
                    return Ok(Some(ErectionDefect::BasisInSeveral {
                        basis,
                        first,
                        second,
                    }))
                }
                _ => {}
            }
        }
        Ok(None)
    }

    /// Relabels every element `e` as `π(e)`.
    pub fn apply_permutation(&self, pi: &Permutation) -> Matroid {
        assert_eq!(pi.len(), self.n, "permutation size differs from ground set");
        let flats = self
            .flats
            .iter()
            .map(|fam| {
                fam.iter()
                    .map(|f| pi.apply(f))
                    .collect::<SetFamily>()
                    .canonical()
            })
            .collect();
        Matroid::from_flats(self.n, flats)
    }
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.flats == other.flats
    }
}

impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("n", &self.n)
            .field("rank", &self.rank())
            .field("whitney", &self.whitney())
            .finish()
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testdata::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn smallest_uniform_matroid() {
        let m = Matroid::from_copoints(3, &family(&["1", "2", "3"])).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.whitney(), vec![1, 3, 1]);
        assert_eq!(m.flats(0).as_slice(), &[ElementSet::EMPTY]);
        assert_eq!(m.flats(2).as_slice(), &[ElementSet::full(3)]);
    }

    #[test]
    fn example_matroids_have_expected_whitney_numbers() {
        assert_eq!(m5().whitney(), vec![1, 8, 20, 1]);
        assert_eq!(m3().whitney(), vec![1, 8, 28, 56, 1]);
        assert_eq!(m1().rank(), 4);
        assert_eq!(m1().whitney(), vec![1, 8, 28, 41, 1]);
        assert_eq!(m2().whitney(), vec![1, 8, 28, 38, 1]);
        assert_eq!(m4().whitney(), vec![1, 8, 8, 1]);
        assert_eq!(m6().whitney(), vec![1, 9, 28, 1]);
    }

    #[test]
    fn validation_accepts_examples() {
        for text in ALL_TEXTS {
            let (n, fam) = copoints_of(text);
            assert_eq!(validate_copoint_family(n, &fam), Ok(()));
        }
    }

    #[test]
    fn validation_rejects_non_antichain() {
        let err = validate_copoint_family(2, &family(&["1", "12"])).unwrap_err();
        assert!(matches!(
            err,
            CopointDefect::ContainsGroundSet | CopointDefect::NotAntichain { .. }
        ));
        let err = validate_copoint_family(3, &family(&["1", "12"])).unwrap_err();
        assert_eq!(
            err,
            CopointDefect::NotAntichain {
                smaller: set("1"),
                larger: set("12")
            }
        );
    }

    #[test]
    fn validation_rejects_loop_family() {
        // {12, 23}: the exchange axiom is vacuous (the union is the ground set),
        // but 2 lies in both members.
        let err = validate_copoint_family(3, &family(&["12", "23"])).unwrap_err();
        assert_eq!(err, CopointDefect::Loop(2));
        assert!(matches!(
            Matroid::from_copoints(3, &family(&["12", "23"])),
            Err(Error::NotSimple(_))
        ));
    }

    #[test]
    fn validation_reports_exchange_and_parallel() {
        // 12 and 34 on S_5: need a member containing {5} ∪ ∅ -- missing.
        let err = validate_copoint_family(5, &family(&["12", "34"])).unwrap_err();
        assert_eq!(
            err,
            CopointDefect::Exchange {
                first: set("12"),
                second: set("34"),
                element: 5
            }
        );
        // rank-2 matroid with parallel class {1,2}
        let err = validate_copoint_family(3, &family(&["12", "3"])).unwrap_err();
        assert_eq!(err, CopointDefect::Parallel(1, 2));
        assert_eq!(
            validate_copoint_family(3, &SetFamily::new()),
            Err(CopointDefect::Empty)
        );
        assert_eq!(
            validate_copoint_family(3, &family(&["14"])),
            Err(CopointDefect::OutOfRange(set("14")))
        );
    }

    #[test]
    fn closure_examples() {
        let m = m5();
        assert_eq!(m.closure(set("24")), set("24"));
        assert_eq!(m.closure(ElementSet::EMPTY), ElementSet::EMPTY);
        assert_eq!(m.closure(set("1234")), ElementSet::full(8));
        assert_eq!(m.closure(set("25")), set("258"));
    }

    #[test]
    fn rank_examples() {
        let m = m5();
        assert_eq!(m.rank_of_set(set("24")), 2);
        assert_eq!(m.rank_of_set(ElementSet::EMPTY), 0);
        assert_eq!(m.rank_of_set(set("124")), 3);
        assert_eq!(m.rank_of_set(set("7")), 1);
    }

    #[test]
    fn k_closed_examples() {
        let m = m5();
        assert!(m.is_k_closed(set("24578"), 2));
        assert!(m.is_k_closed(ElementSet::full(8), 3));
        assert!(!m.is_k_closed(set("23568"), 2));
        assert_eq!(
            m.k_closure_witness(set("23568"), 2).map(|(_, c)| c),
            Some(set("123"))
        );
        assert!(m.is_k_closed(set("23568"), 1));
        assert!(m.is_k_closed(set("23568"), 0));
    }

    #[test]
    fn truncation_examples() {
        let n4 = m3();
        let t = n4.truncation(2).unwrap();
        assert_eq!(t.rank(), 3);
        assert_eq!(t.copoints().len(), 28);
        assert!(t.copoints().iter().all(|c| c.len() == 2));
        assert_eq!(n4.truncation(3).unwrap(), n4);
        assert_eq!(
            n4.truncation(0),
            Err(Error::RankOutOfRange { k: 0, max: 3 })
        );
        assert_eq!(
            n4.truncation(4),
            Err(Error::RankOutOfRange { k: 4, max: 3 })
        );
    }

    #[test]
    fn bases_examples() {
        let u23 = Matroid::from_copoints(3, &family(&["1", "2", "3"])).unwrap();
        assert_eq!(
            u23.bases(DEFAULT_BASES_CAP).unwrap(),
            family(&["12", "13", "23"])
        );

        // brute force: 3-subsets of S_8 not inside any printed line
        let lines = copoints_of(M5_TEXT).1;
        let expected: SetFamily = ElementSet::full(8)
            .subsets_of_size(3)
            .filter(|t| !lines.iter().any(|l| t.is_subset(l)))
            .collect();
        let b = m5().bases(DEFAULT_BASES_CAP).unwrap();
        assert_eq!(b, expected);
        assert_eq!(b.len(), 56 - 4);
        assert!(!b.contains(set("123")));

        assert_eq!(m3().bases(DEFAULT_BASES_CAP).unwrap().len(), 70);
        assert_eq!(
            m3().bases(69),
            Err(Error::EnumerationCapExceeded { count: 70, cap: 69 })
        );
    }

    #[test]
    fn permutation_examples() {
        let m4 = m4();
        let pi = Permutation::parse("81234567").unwrap();
        let relabeled = m4.apply_permutation(&pi);
        assert_eq!(
            relabeled.copoints(),
            &family(&["1234567", "18", "28", "38", "48", "58", "68", "78"])
        );
        assert_eq!(m4.apply_permutation(&Permutation::identity(8)), m4);
    }

    #[test]
    fn rank_one_configuration() {
        let r1 = Matroid::rank_one(4);
        assert_eq!(r1.rank(), 1);
        assert_eq!(r1.copoints().as_slice(), &[ElementSet::EMPTY]);
        assert_eq!(r1.closure(set("2")), ElementSet::full(4));
    }
}
