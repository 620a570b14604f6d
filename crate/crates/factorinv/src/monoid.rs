//! Factorizations, relation pairs, the distance function and the common
//! interface shared by numerical and affine monoids.

use crate::diophantine::DiophantineSystem;
use crate::{checked_add, Error, Result};
use serde::Serialize;
use std::hash::Hash;

/// An exponent vector over the atom list of a monoid.
///
/// Entry `i` is the multiplicity of the `i`-th atom, so the vector `z`
/// represents the formal product `Σ zᵢ·atomᵢ`. Ordering is lexicographic;
/// divisibility is componentwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Factorization(pub Vec<i64>);

impl Factorization {
    pub fn new(exponents: Vec<i64>) -> Self {
        debug_assert!(exponents.iter().all(|&e| e >= 0));
        Factorization(exponents)
    }

    /// The factorization of a unit: all exponents zero.
    pub fn empty(num_atoms: usize) -> Self {
        Factorization(vec![0; num_atoms])
    }

    /// The `i`-th unit vector, i.e. a single copy of atom `i`.
    pub fn unit(num_atoms: usize, i: usize) -> Self {
        let mut v = vec![0; num_atoms];
        v[i] = 1;
        Factorization(v)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn num_atoms(&self) -> usize {
        self.0.len()
    }

    /// `|z|`, the number of atoms counted with multiplicity.
    pub fn length(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Indices of the atoms that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.0.len() != other.0.len() {
            return Err(Error::DimensionMismatch {
                expected: self.0.len(),
                found: other.0.len(),
            });
        }
        Ok(())
    }

    /// Componentwise minimum, the greatest common divisor in the free monoid.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Factorization(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        ))
    }

    /// Componentwise `self ≤ other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    /// `self − other` when `other` divides `self`.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if !other.divides(self) {
            return None;
        }
        Some(Factorization(
            self.0.iter().zip(&other.0).map(|(&a, &b)| a - b).collect(),
        ))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut v = Vec::with_capacity(self.0.len());
        for (&a, &b) in self.0.iter().zip(&other.0) {
            v.push(checked_add(a, b)?);
        }
        Ok(Factorization(v))
    }
}

/// `d(z, z')`: cancel the common part and take the larger remaining length.
pub fn distance(z: &Factorization, z2: &Factorization) -> Result<i64> {
    let g = z.gcd(z2)?;
    let a = z.checked_sub(&g).expect("gcd divides");
    let b = z2.checked_sub(&g).expect("gcd divides");
    Ok(a.length().max(b.length()))
}

/// `d(X, Y) = min { d(x, y) }`, with `d = 0` for empty operands.
pub fn set_distance(xs: &[Factorization], ys: &[Factorization]) -> Result<i64> {
    if xs.is_empty() || ys.is_empty() {
        return Ok(0);
    }
    let mut best = i64::MAX;
    for x in xs {
        for y in ys {
            best = best.min(distance(x, y)?);
            if best == 0 {
                return Ok(0);
            }
        }
    }
    Ok(best)
}

/// A pair of factorizations with the same image, i.e. an element of the
/// monoid of relations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RelationPair {
    pub left: Factorization,
    pub right: Factorization,
}

impl RelationPair {
    pub fn new(left: Factorization, right: Factorization) -> Self {
        RelationPair { left, right }
    }

    pub fn is_diagonal(&self) -> bool {
        self.left == self.right
    }

    pub fn swapped(&self) -> Self {
        RelationPair {
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }
}

/// Remove the non-minimal elements of a set of factorizations under
/// componentwise divisibility. Output is sorted and duplicate-free.
pub fn minimize_factorizations(mut zs: Vec<Factorization>) -> Vec<Factorization> {
    zs.sort();
    zs.dedup();
    let mut keep = vec![true; zs.len()];
    for i in 0..zs.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..zs.len() {
            if i != j && keep[j] && zs[i].divides(&zs[j]) {
                keep[j] = false;
            }
        }
    }
    zs.into_iter()
        .zip(keep)
        .filter_map(|(z, k)| k.then_some(z))
        .collect()
}

/// The interface shared by every supported monoid: a reduced, atomic,
/// finitely generated commutative monoid with a fixed atom order.
pub trait AtomicMonoid {
    /// Ambient element type: `i64` for numerical monoids, `Vec<i64>` for
    /// affine ones.
    type Elem: Clone + Eq + Ord + Hash + std::fmt::Debug;

    fn atom_count(&self) -> usize;

    /// The `i`-th atom as an ambient element.
    fn atom_element(&self, i: usize) -> Self::Elem;

    fn zero_element(&self) -> Self::Elem;

    /// Membership test. Total: out-of-range inputs are simply not members.
    fn contains(&self, a: &Self::Elem) -> bool;

    /// `π(z) = Σ zᵢ·atomᵢ`, the image of a factorization.
    fn image(&self, z: &Factorization) -> Result<Self::Elem>;

    /// Ambient subtraction `a − b`, defined when the result stays
    /// non-negative. The result need not be a member.
    fn sub_element(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// The defining constraints of the monoid of relations `~S`, i.e. of
    /// `{(x, y) ∈ ℕ₀^{2t} : π(x) = π(y)}`.
    fn kernel_system(&self) -> DiophantineSystem;

    /// A certified cap on `|x| + |y|` over the atoms of `~S`, when one is
    /// known. The kernel search may then cut at this depth and still be
    /// exhaustive.
    fn kernel_level_cap(&self) -> Option<usize> {
        None
    }

    /// `Min 𝖹(s + S)`: the divisibility-minimal factorizations whose image
    /// lies in the shifted monoid `s + S`.
    fn min_z_shifted(&self, s: &Self::Elem) -> Result<Vec<Factorization>>;

    /// The Betti elements: members whose factorization set splits into two or
    /// more R-classes. Sorted ascending.
    fn betti_elements(&self) -> Result<Vec<Self::Elem>>;

    /// `𝖹(a)`, the complete set of factorizations of a member `a`.
    fn factorizations(&self, a: &Self::Elem) -> Result<Vec<Factorization>> {
        if !self.contains(a) {
            return Err(Error::NotInMonoid(format!("{a:?}")));
        }
        Ok(self.factorizations_unchecked(a))
    }

    /// Like [`AtomicMonoid::factorizations`] but returns the empty set for
    /// non-members instead of failing.
    fn factorizations_unchecked(&self, a: &Self::Elem) -> Vec<Factorization> {
        let t = self.atom_count();
        let mut exps = vec![0i64; t];
        let mut out = Vec::new();
        self.factorization_dfs(a.clone(), 0, &mut exps, &mut out);
        out.sort();
        out
    }

    #[doc(hidden)]
    fn factorization_dfs(
        &self,
        residual: Self::Elem,
        i: usize,
        exps: &mut Vec<i64>,
        out: &mut Vec<Factorization>,
    ) {
        if residual == self.zero_element() {
            let mut full = exps.clone();
            full.resize(self.atom_count(), 0);
            out.push(Factorization(full));
            return;
        }
        if i >= self.atom_count() || !self.contains(&residual) {
            return;
        }
        let atom = self.atom_element(i);
        let mut k = 0i64;
        let mut cur = Some(residual);
        while let Some(r) = cur {
            exps[i] = k;
            self.factorization_dfs(r.clone(), i + 1, exps, out);
            cur = self.sub_element(&r, &atom);
            k += 1;
        }
        exps[i] = 0;
    }
}
