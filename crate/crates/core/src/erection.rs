//! Erections by expansion and refinement.
//!
//! New copoints are produced by `refine(expand(H) ∪ A, H)` where `H` are the old
//! copoints and `A` is an optional clutter of extra sets. With `A` empty the
//! result is the free erection.

use rand::seq::{index, SliceRandom};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::set::{ElementSet, SetFamily, MAX_GROUND};

/// Outcome of erecting a new rank on top of `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErectionResult {
    pub base: Matroid,
    /// Equal to `base` when the erection is trivial.
    pub erected: Matroid,
    pub trivial: bool,
    /// Rank-`r` flats of the erection; `{S_n}` when trivial.
    pub new_copoints: SetFamily,
}

impl ErectionResult {
    fn from_new_copoints(base: &Matroid, new_copoints: SetFamily) -> ErectionResult {
        let ground = base.ground();
        let trivial = new_copoints.len() == 1 && new_copoints.contains(ground);
        let erected = if trivial {
            base.clone()
        } else {
            let mut flats = base.flats_by_rank()[..base.rank()].to_vec();
            flats.push(new_copoints.canonical());
            flats.push(std::iter::once(ground).collect());
            Matroid::from_flats(base.n(), flats)
        };
        ErectionResult {
            base: base.clone(),
            erected,
            trivial,
            new_copoints: new_copoints.canonical(),
        }
    }

    /// Number of copoints of the erection at rank `r`, counting `{S_n}` as 1.
    pub fn copoint_count(&self) -> usize {
        self.new_copoints.len()
    }
}

/// All one-element enlargements `A ∪ {a}`, `a ∉ A`, of members of `family`.
pub fn expand(family: &SetFamily, n: usize) -> SetFamily {
    let ground = ElementSet::full(n);
    family
        .iter()
        .flat_map(|a| (ground - a).iter().map(move |e| a.with(e)))
        .collect()
}

/// True if `set` strictly contains at least one member of `copoints`.
pub fn in_strict_filter(copoints: &SetFamily, set: ElementSet) -> bool {
    copoints.iter().any(|h| h.is_proper_subset(set))
}

/// Maximal guard members; covering by the guard only depends on these.
fn guard_tops(guard: &SetFamily) -> Vec<ElementSet> {
    let mut tops: Vec<ElementSet> = guard
        .iter()
        .filter(|g| !guard.iter().any(|h| g.is_proper_subset(h)))
        .collect();
    tops.sort_by_key(|g| std::cmp::Reverse(g.len()));
    tops
}

fn covered(tops: &[ElementSet], x: ElementSet) -> bool {
    tops.iter().any(|c| x.is_subset(*c))
}

/// Drops members strictly contained in another member and sorts canonically.
fn absorb(sets: Vec<ElementSet>) -> SetFamily {
    let mut kept: Vec<ElementSet> = sets
        .iter()
        .copied()
        .filter(|s| !sets.iter().any(|t| s.is_proper_subset(*t)))
        .collect();
    kept.sort();
    kept.dedup();
    kept.into_iter().collect()
}

/// Merges pairs of distinct members whose intersection lies in no guard member,
/// replacing them by their union, until no such pair is left. Members contained
/// in another member are then absorbed.
///
/// The fixed point does not depend on the merge order; this version runs a
/// worklist against a pairwise-stable pool.
pub fn refine(family: &SetFamily, guard: &SetFamily) -> SetFamily {
    let tops = guard_tops(guard);
    let mut stable: Vec<ElementSet> = Vec::with_capacity(family.len());
    let mut pending: Vec<ElementSet> = family.iter().rev().collect();
    while let Some(x) = pending.pop() {
        if stable.contains(&x) {
            continue;
        }
        match stable.iter().position(|&y| !covered(&tops, x & y)) {
            Some(pos) => {
                let y = stable.swap_remove(pos);
                pending.push(x | y);
            }
            None => stable.push(x),
        }
    }
    absorb(stable)
}

/// The same fixed point as [`refine`], reached by reshuffling the family before
/// every merge and merging the first mergeable pair in that order.
pub fn refine_random_order<R: Rng + ?Sized>(
    family: &SetFamily,
    guard: &SetFamily,
    rng: &mut R,
) -> SetFamily {
    let tops = guard_tops(guard);
    let mut sets: Vec<ElementSet> = family.iter().collect();
    loop {
        sets.shuffle(rng);
        let m = sets.len();
        let Some((i, j)) = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .find(|&(i, j)| !covered(&tops, sets[i] & sets[j]))
        else {
            break;
        };
        let union = sets[i] | sets[j];
        sets.swap_remove(j);
        sets.swap_remove(i);
        if !sets.contains(&union) {
            sets.push(union);
        }
    }
    absorb(sets)
}

/// The free erection: new copoints `refine(expand(H), H)`.
pub fn free_erection(m: &Matroid) -> ErectionResult {
    let copoints = m.copoints();
    let new = refine(&expand(copoints, m.n()), copoints);
    ErectionResult::from_new_copoints(m, new)
}

/// Unions of two distinct copoints that contain a common coline.
pub fn pair_family(copoints: &SetFamily, colines: &SetFamily) -> SetFamily {
    let mut out = SetFamily::new();
    for y in colines {
        let above: Vec<ElementSet> = copoints.iter().filter(|x| y.is_proper_subset(*x)).collect();
        for (i, &a) in above.iter().enumerate() {
            for &b in &above[i + 1..] {
                out.insert(a | b);
            }
        }
    }
    out
}

/// The free erection computed as `refine(pair_family(H, colines), H)`.
///
/// Panics if the rank is below 2 (there are no colines).
pub fn free_erection_via_pair(m: &Matroid) -> ErectionResult {
    let colines = m
        .colines()
        .expect("pair construction needs rank at least 2");
    let copoints = m.copoints();
    let new = refine(&pair_family(copoints, colines), copoints);
    ErectionResult::from_new_copoints(m, new)
}

/// Erection relative to a clutter of extra sets: `refine(expand(H) ∪ A, H)`.
///
/// Every member of `clutter` must strictly contain some copoint, and no member
/// may contain another.
pub fn erect_with(m: &Matroid, clutter: &SetFamily) -> Result<ErectionResult> {
    if let Some((a, b)) = clutter.antichain_violation() {
        return Err(Error::InvalidClutter(format!(
            "{a:?} is contained in {b:?}"
        )));
    }
    let copoints = m.copoints();
    let ground = m.ground();
    for a in clutter {
        if !a.is_subset(ground) {
            return Err(Error::InvalidClutter(format!(
                "{a:?} is not inside the ground set"
            )));
        }
        if !in_strict_filter(copoints, a) {
            return Err(Error::InvalidClutter(format!(
                "{a:?} strictly contains no copoint"
            )));
        }
    }
    let mut family = expand(copoints, m.n());
    family.extend(clutter.iter());
    Ok(ErectionResult::from_new_copoints(
        m,
        refine(&family, copoints),
    ))
}

/// Longest run drawn for the clutter size; keeps high intensities bounded.
const MAX_CLUTTER_DRAWS: usize = 64;

/// A random clutter in the strict filter of the copoints.
///
/// The number of candidates is geometric with continuation probability
/// `intensity`. Each candidate is a uniformly chosen copoint plus at least one
/// further element, with each additional element again kept with probability
/// `intensity`. Only maximal candidates are kept. Intensity 1 yields `{S_n}`.
fn random_clutter(m: &Matroid, intensity: f64, rng: &mut ChaCha8Rng) -> SetFamily {
    let ground = m.ground();
    if intensity >= 1.0 {
        return std::iter::once(ground).collect();
    }
    let copoints = m.copoints().as_slice();
    let mut candidates = Vec::new();
    while candidates.len() < MAX_CLUTTER_DRAWS && rng.gen_bool(intensity) {
        let h = copoints[rng.gen_range(0..copoints.len())];
        let outside: Vec<usize> = (ground - h).iter().collect();
        let mut extra = 1;
        while extra < outside.len() && rng.gen_bool(intensity) {
            extra += 1;
        }
        let picked = index::sample(rng, outside.len(), extra);
        candidates.push(picked.iter().fold(h, |acc, i| acc.with(outside[i])));
    }
    candidates
        .iter()
        .copied()
        .filter(|c| !candidates.iter().any(|d| c.is_proper_subset(*d)))
        .collect()
}

fn clamp_intensity(intensity: f64) -> f64 {
    if intensity.is_nan() {
        0.0
    } else {
        intensity.clamp(0.0, 1.0)
    }
}

/// Erection relative to a seeded random clutter (see [`erect_with`]).
///
/// Intensity 0 gives the free erection and intensity 1 the trivial one. On the
/// rank-1 configuration the free erection is always taken, since any other
/// erection of it has parallel elements.
pub fn random_erection(m: &Matroid, seed: u64, intensity: f64) -> ErectionResult {
    let intensity = clamp_intensity(intensity);
    if m.rank() == 1 {
        return free_erection(m);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clutter = random_clutter(m, intensity, &mut rng);
    erect_with(m, &clutter).expect("random clutter lies in the strict filter")
}

/// Iterated random erection from the rank-1 configuration until an erection
/// comes out trivial.
pub fn random_matroid(n: usize, seed: u64, intensity: f64) -> Result<Matroid> {
    random_matroid_with_max_rank(n, seed, intensity, usize::MAX)
}

/// As [`random_matroid`], also stopping once rank `max_rank` is reached.
pub fn random_matroid_with_max_rank(
    n: usize,
    seed: u64,
    intensity: f64,
    max_rank: usize,
) -> Result<Matroid> {
    if n == 0 || n > MAX_GROUND {
        return Err(Error::GroundSetSize(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = Matroid::rank_one(n);
    while current.rank() < max_rank {
        let step = random_erection(&current, rng.next_u64(), intensity);
        if step.trivial {
            break;
        }
        current = step.erected;
    }
    Ok(current)
}
