//! Length profiles, R-classes, Betti elements and bulk length-set tables.

use crate::diophantine::kernel_atoms;
use crate::monoid::{AtomicMonoid, Factorization};
use crate::numerical::NumericalMonoid;
use crate::{checked_add, Result};
use num_rational::Ratio;
use std::collections::BTreeSet;

/// The set of lengths of an element together with its gap structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthProfile {
    /// All factorization lengths, ascending.
    pub lengths: Vec<i64>,
    /// Gaps between adjacent lengths.
    pub delta: Vec<i64>,
    pub min: i64,
    pub max: i64,
    /// `max/min` as an exact rational; 1 for `{0}` by convention.
    pub elasticity: Ratio<i64>,
}

impl LengthProfile {
    pub fn from_lengths(lengths: impl IntoIterator<Item = i64>) -> LengthProfile {
        let set: BTreeSet<i64> = lengths.into_iter().collect();
        assert!(!set.is_empty(), "length profile of an empty set");
        let lengths: Vec<i64> = set.into_iter().collect();
        let min = lengths[0];
        let max = *lengths.last().unwrap();
        let delta = lengths.windows(2).map(|w| w[1] - w[0]).collect();
        let elasticity = if min == 0 {
            Ratio::from_integer(1)
        } else {
            Ratio::new(max, min)
        };
        LengthProfile {
            lengths,
            delta,
            min,
            max,
            elasticity,
        }
    }
}

/// `L(a)` with Δ-set and elasticity.
pub fn length_profile<M: AtomicMonoid>(monoid: &M, a: &M::Elem) -> Result<LengthProfile> {
    let zs = monoid.factorizations(a)?;
    Ok(LengthProfile::from_lengths(zs.iter().map(|z| z.length())))
}

/// Plain union-find with path compression.
#[derive(Debug, Clone)]
pub(crate) struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// The partition of `𝖹(a)` into R-classes: connected components of the
/// "share an atom" relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RClasses {
    /// Each class sorted lexicographically; classes ordered by their first
    /// factorization.
    pub classes: Vec<Vec<Factorization>>,
    /// `|σ| = min { |z| : z ∈ σ }` per class, aligned with `classes`.
    pub min_lengths: Vec<i64>,
}

impl RClasses {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    /// `μ(a) = max |σ|` over the classes.
    pub fn mu(&self) -> i64 {
        self.min_lengths.iter().copied().max().unwrap_or(0)
    }
}

pub(crate) fn r_classes_of(zs: &[Factorization]) -> RClasses {
    let n = zs.len();
    let mut dsu = DisjointSet::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let intersect = zs[i]
                .exponents()
                .iter()
                .zip(zs[j].exponents())
                .any(|(&a, &b)| a > 0 && b > 0);
            if intersect {
                dsu.union(i, j);
            }
        }
    }
    let mut buckets: std::collections::HashMap<usize, Vec<Factorization>> =
        std::collections::HashMap::new();
    for (i, z) in zs.iter().enumerate() {
        buckets.entry(dsu.find(i)).or_default().push(z.clone());
    }
    let mut classes: Vec<Vec<Factorization>> = buckets
        .into_values()
        .map(|mut c| {
            c.sort();
            c
        })
        .collect();
    classes.sort();
    let min_lengths = classes
        .iter()
        .map(|c| c.iter().map(|z| z.length()).min().unwrap())
        .collect();
    RClasses {
        classes,
        min_lengths,
    }
}

/// R-classes of `𝖹(a)`; errors when `a` is not a member.
pub fn r_classes<M: AtomicMonoid>(monoid: &M, a: &M::Elem) -> Result<RClasses> {
    let zs = monoid.factorizations(a)?;
    Ok(r_classes_of(&zs))
}

/// Betti elements through the atoms of `~S`: the kernel atoms generate the
/// defining congruence, so every element with two or more R-classes shows up
/// as the image of a non-diagonal kernel atom.
pub fn betti_elements_from_kernel<M: AtomicMonoid>(monoid: &M) -> Result<Vec<M::Elem>> {
    let mut candidates: BTreeSet<M::Elem> = BTreeSet::new();
    for pair in kernel_atoms(monoid)? {
        if !pair.is_diagonal() {
            candidates.insert(monoid.image(&pair.left)?);
        }
    }
    let mut betti = Vec::new();
    for a in candidates {
        if r_classes(monoid, &a)?.count() >= 2 {
            betti.push(a);
        }
    }
    Ok(betti)
}

/// Betti elements of a saturated affine monoid by certified scan.
///
/// Write `|b|` for the coordinate sum and `D` for the largest atom sum. If
/// `|b| > D²`, every factorization has more than `D` parts, so for any two
/// factorizations `z, z'` and any atom `V` of `z'` some atom occurrence `U`
/// of `z` uses coordinate slots disjoint from `V`. Then `b − U − V` stays in
/// the monoid by saturation and `U·V·𝖹(b − U − V)` chains `z` to `z'`. Hence
/// all Betti elements satisfy `|b| ≤ D²` and a bounded scan is exhaustive.
/// R-class counts come from connectivity of the atom graph directly.
pub fn betti_elements_affine_scan(monoid: &crate::affine::AffineMonoid) -> Result<Vec<Vec<i64>>> {
    let atoms = monoid.atoms();
    let n = monoid.ambient_dim();
    let d_max: i64 = atoms.iter().map(|a| a.iter().sum()).max().unwrap_or(0);
    let bound = d_max * d_max;

    // Candidate count C(bound + n, n) must stay tractable.
    let mut estimate: u128 = 1;
    for i in 0..n as u128 {
        estimate = estimate.saturating_mul(bound as u128 + i + 1) / (i + 1);
        if estimate > 30_000_000 {
            return Err(crate::Error::ResourceLimit(format!(
                "Betti scan over coordinate sums up to {bound} in dimension {n} is too large"
            )));
        }
    }

    let mut betti = Vec::new();
    let mut v = vec![0i64; n];
    enumerate_members(monoid, 0, bound, &mut v, &mut |b| {
        let dividing: Vec<&Vec<i64>> = atoms
            .iter()
            .filter(|a| a.iter().zip(b).all(|(&x, &y)| x <= y))
            .collect();
        if dividing.len() <= 1 {
            return;
        }
        // Edges whenever both atoms fit into b jointly; saturation makes the
        // remainder a member automatically.
        let mut dsu = DisjointSet::new(dividing.len());
        let mut components = dividing.len();
        for i in 0..dividing.len() {
            for j in (i + 1)..dividing.len() {
                let fits = dividing[i]
                    .iter()
                    .zip(dividing[j].iter())
                    .zip(b)
                    .all(|((&x, &y), &cap)| x + y <= cap);
                if fits && dsu.union(i, j) {
                    components -= 1;
                }
            }
        }
        if components >= 2 {
            betti.push(b.to_vec());
        }
    });
    betti.sort();
    Ok(betti)
}

fn enumerate_members<F: FnMut(&[i64])>(
    monoid: &crate::affine::AffineMonoid,
    i: usize,
    left: i64,
    v: &mut Vec<i64>,
    f: &mut F,
) {
    if i == v.len() {
        if v.iter().any(|&x| x > 0) && monoid.contains(v) {
            f(v);
        }
        return;
    }
    for x in 0..=left {
        v[i] = x;
        enumerate_members(monoid, i + 1, left - x, v, f);
    }
    v[i] = 0;
}

/// Betti elements of a numerical monoid by certified scan.
///
/// For `a > F(S) + nᵢ + nⱼ` every pair of atoms dividing `a` leaves a member
/// after removal, which makes the atom graph of `a` complete and `𝖹(a)` a
/// single R-class. Scanning up to `F(S) + 2·n_t` is therefore exhaustive.
pub fn betti_elements_numerical(monoid: &NumericalMonoid) -> Result<Vec<i64>> {
    let bound = checked_add(monoid.frobenius(), 2 * monoid.max_generator())?;
    let gens = monoid.generators();
    let mut betti = Vec::new();
    for a in 1..=bound {
        if !monoid.contains(&a) {
            continue;
        }
        // Atom graph: vertices are atoms dividing a, edges survive joint removal.
        let vertices: Vec<usize> = (0..gens.len())
            .filter(|&i| monoid.contains(&(a - gens[i])))
            .collect();
        if vertices.len() <= 1 {
            continue;
        }
        let mut dsu = DisjointSet::new(vertices.len());
        let mut components = vertices.len();
        for vi in 0..vertices.len() {
            for vj in (vi + 1)..vertices.len() {
                if monoid.contains(&(a - gens[vertices[vi]] - gens[vertices[vj]]))
                    && dsu.union(vi, vj)
                {
                    components -= 1;
                }
            }
        }
        if components >= 2 {
            betti.push(a);
        }
    }
    Ok(betti)
}

/// Sets of lengths `L(a)` for all `a` up to a bound, as bit rows. Row `a` has
/// bit `k` set when `a` admits a factorization into `k` atoms; an all-zero
/// row means `a` is not a member.
#[derive(Debug, Clone)]
pub struct LengthTable {
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl LengthTable {
    pub fn build(monoid: &NumericalMonoid, bound: i64) -> LengthTable {
        let bound = bound.max(0) as usize;
        let max_len = bound / (monoid.multiplicity().max(1) as usize) + 1;
        let words = max_len / 64 + 1;
        let mut rows = vec![vec![0u64; words]; bound + 1];
        rows[0][0] = 1; // the empty factorization of 0
        for a in 1..=bound {
            for &g in monoid.generators() {
                let g = g as usize;
                if g > a {
                    break;
                }
                // rows[a] |= rows[a - g] << 1
                let (head, tail) = rows.split_at_mut(a);
                let src = &head[a - g];
                let dst = &mut tail[0];
                let mut carry = 0u64;
                for w in 0..words {
                    let shifted = (src[w] << 1) | carry;
                    carry = src[w] >> 63;
                    dst[w] |= shifted;
                }
            }
        }
        LengthTable { words, rows }
    }

    pub fn bound(&self) -> i64 {
        self.rows.len() as i64 - 1
    }

    pub fn is_member(&self, a: i64) -> bool {
        a >= 0 && (a as usize) < self.rows.len() && self.rows[a as usize].iter().any(|&w| w != 0)
    }

    pub fn has_length(&self, a: i64, k: i64) -> bool {
        if a < 0 || k < 0 || a as usize >= self.rows.len() {
            return false;
        }
        let (w, b) = ((k as usize) / 64, (k as usize) % 64);
        w < self.words && self.rows[a as usize][w] >> b & 1 == 1
    }

    pub fn lengths(&self, a: i64) -> Vec<i64> {
        let mut out = Vec::new();
        if a < 0 || a as usize >= self.rows.len() {
            return out;
        }
        for (w, &word) in self.rows[a as usize].iter().enumerate() {
            let mut word = word;
            while word != 0 {
                let b = word.trailing_zeros() as i64;
                out.push((w as i64) * 64 + b);
                word &= word - 1;
            }
        }
        out
    }

    pub fn min_max(&self, a: i64) -> Option<(i64, i64)> {
        let lengths = self.lengths(a);
        Some((*lengths.first()?, *lengths.last()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::AffineMonoid;

    fn nm(gens: &[i64]) -> NumericalMonoid {
        NumericalMonoid::new(gens).unwrap()
    }

    #[test]
    fn length_profile_examples() {
        let s = nm(&[2, 3]);
        let p = length_profile(&s, &6).unwrap();
        assert_eq!(p.lengths, vec![2, 3]);
        assert_eq!(p.delta, vec![1]);
        assert_eq!(p.elasticity, Ratio::new(3, 2));

        let atom = length_profile(&s, &3).unwrap();
        assert_eq!(atom.lengths, vec![1]);
        assert!(atom.delta.is_empty());
        assert_eq!(atom.elasticity, Ratio::from_integer(1));

        let unit = length_profile(&s, &0).unwrap();
        assert_eq!(unit.lengths, vec![0]);
        assert_eq!(unit.elasticity, Ratio::from_integer(1));

        let s = nm(&[4, 10, 21]);
        let p = length_profile(&s, &84).unwrap();
        assert_eq!((p.min, p.max), (4, 21));
        assert_eq!(p.elasticity, Ratio::new(21, 4));
    }

    #[test]
    fn r_classes_examples() {
        let s = nm(&[2, 3]);
        let r = r_classes(&s, &6).unwrap();
        assert_eq!(r.count(), 2);
        assert_eq!(r.min_lengths, vec![2, 3]);
        assert_eq!(r.mu(), 3);

        let single = r_classes(&s, &2).unwrap();
        assert_eq!(single.count(), 1);

        let s = nm(&[5, 7, 9]);
        let r = r_classes(&s, &25).unwrap();
        assert_eq!(r.count(), 2);
    }

    #[test]
    fn betti_elements_small_cases() {
        assert_eq!(betti_elements_numerical(&nm(&[2, 3])).unwrap(), vec![6]);
        assert_eq!(
            betti_elements_numerical(&nm(&[5, 7, 9])).unwrap(),
            vec![14, 25, 27]
        );
    }

    #[test]
    fn betti_elements_scan_agrees_with_kernel_route() {
        for gens in [
            &[2i64, 3][..],
            &[3, 4, 5],
            &[5, 7, 9],
            &[4, 10, 21],
            &[5, 6, 9],
        ] {
            let s = nm(gens);
            let scan = betti_elements_numerical(&s).unwrap();
            let kernel = betti_elements_from_kernel(&s).unwrap();
            assert_eq!(scan, kernel, "betti mismatch for {gens:?}");
        }
    }

    #[test]
    fn betti_elements_of_free_monoid_is_empty() {
        let free = AffineMonoid::new(2, vec![], vec![]).unwrap();
        assert!(betti_elements_from_kernel(&free).unwrap().is_empty());
    }

    #[test]
    fn length_table_matches_enumeration() {
        let s = nm(&[4, 10, 21]);
        let table = LengthTable::build(&s, 140);
        for a in 0..=140i64 {
            let expected: Vec<i64> = if s.contains(&a) {
                let mut ls: Vec<i64> = s
                    .factorizations(&a)
                    .unwrap()
                    .iter()
                    .map(|z| z.length())
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                ls.sort_unstable();
                ls
            } else {
                vec![]
            };
            assert_eq!(table.lengths(a), expected, "lengths disagree at {a}");
            assert_eq!(table.is_member(a), s.contains(&a));
        }
    }

    #[test]
    fn unique_longest_factorization_of_21k() {
        // In ⟨4,10,21⟩ the element 21k has a unique longest factorization,
        // following a period-four pattern in k.
        let s = nm(&[4, 10, 21]);
        for k in 1..=12i64 {
            let a = 21 * k;
            let zs = s.factorizations(&a).unwrap();
            let max = zs.iter().map(|z| z.length()).max().unwrap();
            let longest: Vec<_> = zs.iter().filter(|z| z.length() == max).collect();
            assert_eq!(longest.len(), 1, "longest factorization of {a} not unique");
            let t = k / 4;
            let expected = match k % 4 {
                0 => vec![21 * t, 0, 0],
                1 => vec![21 * t, 0, 1],
                2 => vec![21 * t + 8, 1, 0],
                _ => vec![21 * t + 8, 1, 1],
            };
            assert_eq!(longest[0].exponents(), &expected[..], "at k = {k}");
        }
    }
}
