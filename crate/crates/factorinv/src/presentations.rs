//! Minimal presentations, genericity, and the bounds coming from the atoms
//! of the relation monoids.

use crate::diophantine::{equal_kernel_atoms, kernel_atoms};
use crate::factorizations::r_classes;
use crate::monoid::{AtomicMonoid, Factorization, RelationPair};
use crate::Result;
use std::collections::{BTreeSet, HashMap};

/// A set of relation pairs generating the kernel congruence, with the
/// properties decided for the canonical construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub pairs: Vec<RelationPair>,
    pub is_minimal: bool,
    pub is_generic: bool,
    pub is_unique_minimal: bool,
}

impl Presentation {
    /// Pairs as `{left, right}` sets, for order-insensitive comparisons.
    pub fn unordered_pairs(&self) -> BTreeSet<(Factorization, Factorization)> {
        self.pairs
            .iter()
            .map(|p| {
                if p.left <= p.right {
                    (p.left.clone(), p.right.clone())
                } else {
                    (p.right.clone(), p.left.clone())
                }
            })
            .collect()
    }
}

/// The canonical minimal presentation: for every Betti element, one pair per
/// extra R-class, joining the lexicographically smallest factorization of
/// that class to the one of the class holding the overall smallest
/// factorization. Pair orientation puts the root representative on the right.
pub fn minimal_presentation<M: AtomicMonoid>(monoid: &M) -> Result<Presentation> {
    let t = monoid.atom_count();
    let mut pairs = Vec::new();
    let mut unique = true;
    let mut generic = true;

    for b in monoid.betti_elements()? {
        let classes = r_classes(monoid, &b)?;
        debug_assert!(classes.count() >= 2);
        if classes.count() != 2 || classes.classes.iter().any(|c| c.len() != 1) {
            unique = false;
        }
        // Classes are sorted by their lexicographically smallest member, so
        // the first class holds the overall smallest factorization.
        let root = classes.classes[0][0].clone();
        for class in &classes.classes[1..] {
            let rep = class[0].clone();
            let mut support: Vec<bool> = vec![false; t];
            for i in rep.support().into_iter().chain(root.support()) {
                support[i] = true;
            }
            if !support.iter().all(|&s| s) {
                generic = false;
            }
            pairs.push(RelationPair::new(rep, root.clone()));
        }
    }
    pairs.sort();
    let is_generic = unique && generic && !pairs.is_empty();
    Ok(Presentation {
        pairs,
        is_minimal: true,
        is_generic,
        is_unique_minimal: unique,
    })
}

/// Decides genericity; the witness presentation is returned when it exists.
///
/// A generic presentation forces every Betti element to carry exactly two
/// singleton R-classes, so checking the canonical presentation is enough.
pub fn has_generic_presentation<M: AtomicMonoid>(monoid: &M) -> Result<Option<Presentation>> {
    let p = minimal_presentation(monoid)?;
    Ok(p.is_generic.then_some(p))
}

/// `a(S)`: the longest left side among the atoms of `~S`.
pub fn a_invariant<M: AtomicMonoid>(monoid: &M) -> Result<i64> {
    Ok(a_invariant_from(&kernel_atoms(monoid)?))
}

pub(crate) fn a_invariant_from(pairs: &[RelationPair]) -> i64 {
    pairs.iter().map(|p| p.left.length()).max().unwrap_or(0)
}

/// Upper bound for the equal catenary degree: the longest left side among
/// the atoms of the equal-length relation monoid.
pub fn equal_catenary_bound<M: AtomicMonoid>(monoid: &M) -> Result<i64> {
    Ok(a_invariant_from(&equal_kernel_atoms(monoid)?))
}

/// Certified lower bound for `a(S)` of a numerical monoid without a kernel
/// search: for every ordered generator pair, the two-support relation
/// `(lcm/nᵢ)·𝐧ᵢ = (lcm/nⱼ)·𝐧ⱼ` is an atom of `~S` because any smaller
/// relation inside it would live on the same two supports.
pub fn pairwise_a_lower_bound(monoid: &crate::numerical::NumericalMonoid) -> i64 {
    use num_integer::Integer;
    let gens = monoid.generators();
    let mut best = 1;
    for i in 0..gens.len() {
        for j in 0..gens.len() {
            if i != j {
                best = best.max(gens[i].lcm(&gens[j]) / gens[i]);
            }
        }
    }
    best
}

/// Result of the capped search for the minimal elements of
/// `A_d = { x : d + |x| ∈ L(π(x)) }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinAdSearch {
    pub minimal: Vec<Factorization>,
    /// True when the stopping rule fired: some minimal element was found and
    /// no new one appeared for `a(S)` consecutive length levels. Otherwise
    /// the cap was reached and the result is a heuristic under-approximation.
    pub exhaustive: bool,
    pub levels_searched: i64,
}

/// Searches `Min(A_d)` among factorizations of length at most `length_cap`,
/// level by level, reporting whether the `a(S)`-based stopping rule applied.
pub fn min_a_d_search<M: AtomicMonoid>(monoid: &M, d: i64, length_cap: i64) -> Result<MinAdSearch> {
    let a_inv = a_invariant(monoid)?;
    min_a_d_search_with(monoid, d, length_cap, a_inv)
}

pub(crate) fn min_a_d_search_with<M: AtomicMonoid>(
    monoid: &M,
    d: i64,
    length_cap: i64,
    a_inv: i64,
) -> Result<MinAdSearch> {
    let t = monoid.atom_count();
    let mut lengths_memo: HashMap<M::Elem, BTreeSet<i64>> = HashMap::new();
    let mut minimal: Vec<Factorization> = Vec::new();
    let mut last_new: Option<i64> = None;
    let mut level = 0i64;

    while level <= length_cap {
        if let Some(found_at) = last_new {
            if level - found_at >= a_inv.max(1) {
                minimal.sort();
                return Ok(MinAdSearch {
                    minimal,
                    exhaustive: true,
                    levels_searched: level - 1,
                });
            }
        }
        let mut exps = vec![0i64; t];
        compositions(t, level, &mut exps, &mut |exps: &[i64]| -> Result<()> {
            let z = Factorization::new(exps.to_vec());
            if minimal.iter().any(|m| m.divides(&z)) {
                return Ok(());
            }
            let image = monoid.image(&z)?;
            if !lengths_memo.contains_key(&image) {
                let zs = monoid.factorizations_unchecked(&image);
                let set: BTreeSet<i64> = zs.iter().map(|w| w.length()).collect();
                lengths_memo.insert(image.clone(), set);
            }
            if lengths_memo[&image].contains(&(d + z.length())) {
                minimal.push(z);
                last_new = Some(level);
            }
            Ok(())
        })?;
        level += 1;
    }
    minimal.sort();
    Ok(MinAdSearch {
        minimal,
        exhaustive: false,
        levels_searched: length_cap,
    })
}

/// Calls `f` on every vector of `t` non-negative entries summing to `total`.
fn compositions<F: FnMut(&[i64]) -> Result<()>>(
    t: usize,
    total: i64,
    exps: &mut Vec<i64>,
    f: &mut F,
) -> Result<()> {
    fn rec<F: FnMut(&[i64]) -> Result<()>>(
        i: usize,
        remaining: i64,
        exps: &mut Vec<i64>,
        f: &mut F,
    ) -> Result<()> {
        if i + 1 == exps.len() {
            exps[i] = remaining;
            f(exps)?;
            return Ok(());
        }
        for k in 0..=remaining {
            exps[i] = k;
            rec(i + 1, remaining - k, exps, f)?;
        }
        exps[i] = 0;
        Ok(())
    }
    if t == 0 {
        if total == 0 {
            f(&[])?;
        }
        return Ok(());
    }
    rec(0, total, exps, f)
}
