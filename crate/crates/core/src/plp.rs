//! Rank-3 matroids as bipartite point-line incidence graphs.
//!
//! A graph has property β when both sides are nonempty, every two points lie
//! on exactly one common line, and every vertex has degree at least 2. Such
//! graphs are exactly the simple rank-3 matroids (lines = copoints).

use std::fmt;
use std::fmt::Write as _;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::erection::free_erection;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::set::{ElementSet, SetFamily};

pub const DEFAULT_SUBSET_CAP: usize = 30;

/// Points and lines; each line is stored as its point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteIncidence {
    pub points: ElementSet,
    pub lines: SetFamily,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BetaViolation {
    NoPoints,
    NoLines,
    UncoveredPair(usize, usize),
    RepeatedPair {
        pair: (usize, usize),
        first: ElementSet,
        second: ElementSet,
    },
    LowDegreePoint {
        point: usize,
        degree: usize,
    },
    LowDegreeLine {
        line: ElementSet,
        degree: usize,
    },
}

impl fmt::Display for BetaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BetaViolation::NoPoints => write!(f, "no points"),
            BetaViolation::NoLines => write!(f, "no lines"),
            BetaViolation::UncoveredPair(a, b) => write!(f, "points {{{a},{b}}} share no line"),
            BetaViolation::RepeatedPair {
                pair: (a, b),
                first,
                second,
            } => {
                write!(f, "points {{{a},{b}}} lie on both {first:?} and {second:?}")
            }
            BetaViolation::LowDegreePoint { point, degree } => {
                write!(f, "point {point} lies on {degree} line(s)")
            }
            BetaViolation::LowDegreeLine { line, degree } => {
                write!(f, "line {line:?} has {degree} point(s)")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BetaCheck {
    pub violations: Vec<BetaViolation>,
}

impl BetaCheck {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn uncovered_pairs(&self) -> Vec<(usize, usize)> {
        self.violations
            .iter()
            .filter_map(|v| match v {
                BetaViolation::UncoveredPair(a, b) => Some((*a, *b)),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for BetaCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "property_beta={}", self.holds())?;
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaOptions {
    /// Largest number of lines accepted by the subset enumeration.
    pub cap: usize,
    pub workers: usize,
}

impl Default for BetaOptions {
    fn default() -> Self {
        BetaOptions {
            cap: DEFAULT_SUBSET_CAP,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlpReport {
    pub points: usize,
    pub lines: usize,
    pub beta: u64,
    pub bound: Ratio<u128>,
    pub holds: bool,
    /// Copoint count of the free erection of the corresponding matroid.
    pub free_copoints: usize,
    pub free_holds: bool,
}

impl fmt::Display for PlpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "points={} lines={}", self.points, self.lines)?;
        writeln!(
            f,
            "beta={} bound={} holds={}",
            self.beta, self.bound, self.holds
        )?;
        writeln!(
            f,
            "free_copoints={} free_holds={}",
            self.free_copoints, self.free_holds
        )
    }
}

/// `2 m^2 (n-2) / (3 n (n-1))`; `None` for `n < 2`.
pub fn plp_bound(n: usize, m: usize) -> Option<Ratio<u128>> {
    let (n, m) = (n as u128, m as u128);
    (n >= 2).then(|| Ratio::new(2 * m * m * (n - 2), 3 * n * (n - 1)))
}

impl BipartiteIncidence {
    /// Points `1..=n`.
    pub fn new(n: usize, lines: SetFamily) -> Self {
        BipartiteIncidence {
            points: ElementSet::full(n),
            lines,
        }
    }

    pub fn from_rank3(m: &Matroid) -> Result<Self> {
        if m.rank() != 3 {
            return Err(Error::RankMismatch {
                expected: 3,
                found: m.rank(),
            });
        }
        Ok(BipartiteIncidence {
            points: m.ground(),
            lines: m.copoints().canonical(),
        })
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    /// Points on the given lines.
    pub fn pre(&self, lines: &[ElementSet]) -> ElementSet {
        lines.iter().fold(ElementSet::EMPTY, |acc, &l| acc | l)
    }

    pub fn degree(&self, point: usize) -> usize {
        self.lines.iter().filter(|l| l.contains(point)).count()
    }

    /// Induced subgraph on `lines` and the points they cover.
    pub fn restrict(&self, lines: &[ElementSet]) -> Result<Self> {
        let mut fam = SetFamily::new();
        for &l in lines {
            if !self.lines.contains(l) {
                return Err(Error::NotALine(l));
            }
            fam.insert(l);
        }
        Ok(BipartiteIncidence {
            points: self.pre(lines),
            lines: fam.canonical(),
        })
    }

    pub fn check_property_beta(&self) -> BetaCheck {
        let mut violations = Vec::new();
        if self.points.is_empty() {
            violations.push(BetaViolation::NoPoints);
        }
        if self.lines.is_empty() {
            violations.push(BetaViolation::NoLines);
        }
        let lines = self.lines.sorted();
        let pts: Vec<usize> = self.points.iter().collect();
        let mut repeated = Vec::new();
        for (i, &a) in pts.iter().enumerate() {
            for &b in &pts[i + 1..] {
                let mut on = lines.iter().filter(|l| l.contains(a) && l.contains(b));
                match (on.next(), on.next()) {
                    (None, _) => violations.push(BetaViolation::UncoveredPair(a, b)),
                    (Some(&first), Some(&second)) => repeated.push(BetaViolation::RepeatedPair {
                        pair: (a, b),
                        first,
                        second,
                    }),
                    _ => {}
                }
            }
        }
        violations.extend(repeated);
        for &p in &pts {
            let degree = self.degree(p);
            if degree < 2 {
                violations.push(BetaViolation::LowDegreePoint { point: p, degree });
            }
        }
        for &l in &lines {
            let degree = (l & self.points).len();
            if degree < 2 {
                violations.push(BetaViolation::LowDegreeLine { line: l, degree });
            }
        }
        BetaCheck { violations }
    }

    pub fn has_property_beta(&self) -> bool {
        self.check_property_beta().holds()
    }

    /// The simple rank-3 matroid of a property-β graph, with points relabeled
    /// `1..=k` in increasing order.
    pub fn to_matroid(&self) -> Result<Matroid> {
        let check = self.check_property_beta();
        if let Some(v) = check.violations.first() {
            return Err(Error::PropertyBetaRequired(v.to_string()));
        }
        let labels: Vec<usize> = self.points.iter().collect();
        let relabel = |l: ElementSet| -> ElementSet {
            l.iter()
                .map(|p| labels.binary_search(&p).unwrap() + 1)
                .collect()
        };
        let copoints: SetFamily = self.lines.iter().map(relabel).collect();
        Matroid::from_copoints(labels.len(), &copoints)
    }

    /// Number of proper line subsets whose restriction has property β.
    pub fn beta_count(&self, opts: &BetaOptions) -> Result<u64> {
        let walker = BetaWalker::new(self, opts.cap)?;
        let count = |first: usize| {
            let mut c = 0u64;
            walker.walk_from(first, &mut |_| c += 1);
            c
        };
        Ok(run_split(walker.lines.len(), opts.workers, count)
            .into_iter()
            .sum())
    }

    /// The line subsets counted by [`beta_count`](Self::beta_count), in order
    /// of their smallest line.
    pub fn beta_subsets(&self, opts: &BetaOptions) -> Result<Vec<Vec<ElementSet>>> {
        let walker = BetaWalker::new(self, opts.cap)?;
        let collect = |first: usize| {
            let mut out = Vec::new();
            walker.walk_from(first, &mut |mask| out.push(walker.lines_of(mask)));
            out
        };
        Ok(run_split(walker.lines.len(), opts.workers, collect)
            .into_iter()
            .flatten()
            .collect())
    }

    pub fn plp_check(&self, opts: &BetaOptions) -> Result<PlpReport> {
        let matroid = self.to_matroid()?;
        let beta = self.beta_count(opts)?;
        let (n, m) = (self.point_count(), self.line_count());
        let bound = plp_bound(n, m).expect("property β needs two points");
        let free_copoints = free_erection(&matroid).copoint_count();
        Ok(PlpReport {
            points: n,
            lines: m,
            beta,
            bound,
            holds: Ratio::from_integer(beta as u128) <= bound,
            free_copoints,
            free_holds: Ratio::from_integer(free_copoints as u128) <= bound,
        })
    }

    /// Graphviz text: points `p<i>` as circles, lines `L_<points>` as boxes.
    pub fn to_dot(&self) -> String {
        let lines = self.lines.sorted();
        let mut out = String::from("graph incidence {\n");
        out.push_str("  node [shape=circle];\n");
        for p in self.points.iter() {
            let _ = writeln!(out, "  p{p};");
        }
        out.push_str("  node [shape=box];\n");
        for &l in &lines {
            let _ = writeln!(out, "  {};", line_node(l));
        }
        for &l in &lines {
            for p in (l & self.points).iter() {
                let _ = writeln!(out, "  p{p} -- {};", line_node(l));
            }
        }
        out.push_str("}\n");
        out
    }
}

fn line_node(l: ElementSet) -> String {
    let parts: Vec<String> = l.iter().map(|p| p.to_string()).collect();
    format!("L_{}", parts.join("_"))
}

fn run_split<T: Send>(m: usize, workers: usize, job: impl Fn(usize) -> T + Sync) -> Vec<T> {
    if workers <= 1 {
        return (0..m).map(job).collect();
    }
    let par = || (0..m).into_par_iter().map(&job).collect();
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(par),
        Err(_) => par(),
    }
}

/// Backtracking over lines in a fixed order. A partial choice is abandoned
/// when two chosen lines share two points, or when some pair of covered
/// points can no longer be joined by a remaining line.
struct BetaWalker {
    lines: Vec<ElementSet>,
    /// `reach[i][p]`: points sharing some line `j >= i` with `p`.
    reach: Vec<Vec<ElementSet>>,
    /// `left[i][p]`: number of lines `j >= i` through `p`.
    left: Vec<Vec<u8>>,
}

struct WalkState {
    chosen: u64,
    points: ElementSet,
    joined: [ElementSet; 65],
    degree: [u8; 65],
}

impl BetaWalker {
    fn new(g: &BipartiteIncidence, cap: usize) -> Result<Self> {
        let lines: Vec<ElementSet> = g.lines.sorted().into_iter().map(|l| l & g.points).collect();
        if lines.len() > cap || lines.len() > 63 {
            return Err(Error::SubsetCapExceeded {
                lines: lines.len(),
                cap: cap.min(63),
            });
        }
        let m = lines.len();
        let mut reach = vec![vec![ElementSet::EMPTY; 65]; m + 1];
        let mut left = vec![vec![0u8; 65]; m + 1];
        for i in (0..m).rev() {
            reach[i] = reach[i + 1].clone();
            left[i] = left[i + 1].clone();
            for p in lines[i].iter() {
                reach[i][p] = reach[i][p] | (lines[i] - ElementSet::singleton(p));
                left[i][p] = left[i][p].saturating_add(1);
            }
        }
        Ok(BetaWalker { lines, reach, left })
    }

    fn lines_of(&self, mask: u64) -> Vec<ElementSet> {
        (0..self.lines.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.lines[i])
            .collect()
    }

    /// Visits every valid subset whose smallest line index is `first`.
    fn walk_from(&self, first: usize, sink: &mut dyn FnMut(u64)) {
        let mut st = WalkState {
            chosen: 0,
            points: ElementSet::EMPTY,
            joined: [ElementSet::EMPTY; 65],
            degree: [0; 65],
        };
        if self.lines[first].len() < 2 {
            return;
        }
        self.add(&mut st, first);
        self.walk(&mut st, first + 1, sink);
    }

    fn add(&self, st: &mut WalkState, i: usize) {
        let l = self.lines[i];
        st.chosen |= 1 << i;
        st.points = st.points | l;
        for p in l.iter() {
            st.joined[p] = st.joined[p] | (l - ElementSet::singleton(p));
            st.degree[p] += 1;
        }
    }

    fn feasible(&self, st: &WalkState, next: usize) -> bool {
        st.points.iter().all(|p| {
            let missing = st.points - st.joined[p] - ElementSet::singleton(p);
            missing.is_subset(self.reach[next][p])
                && st.degree[p] as usize + self.left[next][p] as usize >= 2
        })
    }

    fn walk(&self, st: &mut WalkState, next: usize, sink: &mut dyn FnMut(u64)) {
        if !self.feasible(st, next) {
            return;
        }
        if next == self.lines.len() {
            let all = if self.lines.len() == 64 {
                u64::MAX
            } else {
                (1u64 << self.lines.len()) - 1
            };
            if st.chosen != all && st.points.iter().all(|p| st.degree[p] >= 2) {
                sink(st.chosen);
            }
            return;
        }
        let l = self.lines[next];
        let compatible = l.len() >= 2 && l.iter().all(|p| (st.joined[p] & l).is_empty());
        if compatible {
            let saved = (st.chosen, st.points, st.joined, st.degree);
            self.add(st, next);
            self.walk(st, next + 1, sink);
            (st.chosen, st.points, st.joined, st.degree) = saved;
        }
        self.walk(st, next + 1, sink);
    }
}
