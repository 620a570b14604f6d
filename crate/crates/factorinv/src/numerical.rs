//! Numerical monoids: co-finite submonoids of `(ℕ₀, +)` presented by their
//! minimal generators.

use crate::diophantine::DiophantineSystem;
use crate::monoid::{minimize_factorizations, AtomicMonoid, Factorization};
use crate::{checked_add, checked_mul, Error, Result};
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

/// Largest admitted multiplicity (smallest generator); bounds the size of the
/// Apéry table used for membership.
const MAX_MULTIPLICITY: i64 = 10_000_000;

#[derive(Debug, Default)]
struct Caches {
    /// Least member of each residue class mod the multiplicity.
    base_apery: OnceLock<Vec<i64>>,
    frobenius: OnceLock<i64>,
    apery: RwLock<HashMap<i64, Arc<Vec<i64>>>>,
}

/// `⟨n₁, …, n_t⟩` with `1 < n₁ < … < n_t` and `gcd = 1`. The generator list
/// is validated to be the minimal generating system and fixes the atom order
/// for all factorization indices.
///
/// Values are immutable after construction; the internal Apéry memoization is
/// shared behind a lock and is safe for concurrent readers.
#[derive(Debug, Clone)]
pub struct NumericalMonoid {
    generators: Vec<i64>,
    caches: Arc<Caches>,
}

impl PartialEq for NumericalMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}
impl Eq for NumericalMonoid {}

impl NumericalMonoid {
    /// Builds `⟨generators⟩`, rejecting lists that are not strictly
    /// increasing minimal generating systems with `gcd = 1` and `n₁ ≥ 2`.
    pub fn new(generators: &[i64]) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidGenerators("empty generator list".into()));
        }
        for w in generators.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidGenerators(format!(
                    "generators must be strictly increasing, got {} before {}",
                    w[0], w[1]
                )));
            }
        }
        if generators[0] < 2 {
            return Err(Error::InvalidGenerators(format!(
                "smallest generator must be at least 2, got {}",
                generators[0]
            )));
        }
        if generators[0] > MAX_MULTIPLICITY {
            return Err(Error::ResourceLimit(format!(
                "multiplicity {} exceeds supported bound {MAX_MULTIPLICITY}",
                generators[0]
            )));
        }
        let gcd = generators
            .iter()
            .fold(0i64, |acc, &g| num_integer::gcd(acc, g));
        if gcd != 1 {
            return Err(Error::InvalidGenerators(format!(
                "gcd of generators is {gcd}, must be 1"
            )));
        }
        for (i, &g) in generators.iter().enumerate() {
            if generated_by_others(generators, i, g) {
                return Err(Error::InvalidGenerators(format!(
                    "{g} is generated by the remaining generators; the list is not minimal"
                )));
            }
        }
        Ok(Self::from_minimal_generators_unchecked(generators.to_vec()))
    }

    /// The monoid `ℕ₀` itself. Rejected by [`NumericalMonoid::new`]; only
    /// meaningful for enumeration conventions.
    pub fn natural_numbers() -> Self {
        Self::from_minimal_generators_unchecked(vec![1])
    }

    pub(crate) fn from_minimal_generators_unchecked(generators: Vec<i64>) -> Self {
        NumericalMonoid {
            generators,
            caches: Arc::new(Caches::default()),
        }
    }

    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    /// `n₁`, the smallest generator.
    pub fn multiplicity(&self) -> i64 {
        self.generators[0]
    }

    pub fn max_generator(&self) -> i64 {
        *self.generators.last().unwrap()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators == [1]
    }

    /// Least member of each residue class mod `n₁`, computed once by a
    /// shortest-path relaxation over the classes.
    fn base_apery(&self) -> &[i64] {
        self.caches.base_apery.get_or_init(|| {
            let n1 = self.generators[0] as usize;
            let mut dist = vec![i64::MAX; n1];
            dist[0] = 0;
            let mut heap = BinaryHeap::new();
            heap.push(Reverse((0i64, 0usize)));
            while let Some(Reverse((d, r))) = heap.pop() {
                if d > dist[r] {
                    continue;
                }
                for &g in &self.generators[1..] {
                    let nr = (r + g as usize) % n1;
                    let nd = d + g;
                    if nd < dist[nr] {
                        dist[nr] = nd;
                        heap.push(Reverse((nd, nr)));
                    }
                }
            }
            dist
        })
    }

    /// The largest integer outside the monoid; `-1` for `ℕ₀`.
    pub fn frobenius(&self) -> i64 {
        *self.caches.frobenius.get_or_init(|| {
            let base = self.base_apery();
            base.iter().copied().max().unwrap() - self.generators[0]
        })
    }

    /// `Ap(S, m) = { s ∈ S : s − m ∉ S }`, sorted ascending. Requires a
    /// positive member `m`; the result has exactly `m` elements, one per
    /// residue class mod `m`.
    pub fn apery_set(&self, m: i64) -> Result<Arc<Vec<i64>>> {
        if m <= 0 || !self.contains(&m) {
            return Err(Error::NotInMonoid(format!("{m}")));
        }
        if let Some(hit) = self.caches.apery.read().unwrap().get(&m) {
            return Ok(hit.clone());
        }
        let mut out = Vec::with_capacity(m as usize);
        for r in 0..m {
            let mut s = r;
            while !self.contains(&s) {
                s = checked_add(s, m)?;
            }
            out.push(s);
        }
        out.sort_unstable();
        let out = Arc::new(out);
        self.caches.apery.write().unwrap().insert(m, out.clone());
        Ok(out)
    }
}

/// Membership of `target` in the monoid generated by `generators` minus the
/// entry at `skip`.
fn generated_by_others(generators: &[i64], skip: usize, target: i64) -> bool {
    let others: Vec<i64> = generators
        .iter()
        .enumerate()
        .filter_map(|(j, &g)| (j != skip).then_some(g))
        .collect();
    if others.is_empty() {
        return false;
    }
    let n = target as usize;
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for v in 1..=n {
        reach[v] = others
            .iter()
            .any(|&g| (g as usize) <= v && reach[v - g as usize]);
    }
    reach[n]
}

impl AtomicMonoid for NumericalMonoid {
    type Elem = i64;

    fn atom_count(&self) -> usize {
        self.generators.len()
    }

    fn atom_element(&self, i: usize) -> i64 {
        self.generators[i]
    }

    fn zero_element(&self) -> i64 {
        0
    }

    fn contains(&self, a: &i64) -> bool {
        let a = *a;
        if a < 0 {
            return false;
        }
        let base = self.base_apery();
        base[(a % self.generators[0]) as usize] <= a
    }

    fn image(&self, z: &Factorization) -> Result<i64> {
        if z.num_atoms() != self.generators.len() {
            return Err(Error::DimensionMismatch {
                expected: self.generators.len(),
                found: z.num_atoms(),
            });
        }
        let mut acc = 0i64;
        for (&e, &g) in z.exponents().iter().zip(&self.generators) {
            acc = checked_add(acc, checked_mul(e, g)?)?;
        }
        Ok(acc)
    }

    fn sub_element(&self, a: &i64, b: &i64) -> Option<i64> {
        (a >= b).then(|| a - b)
    }

    fn kernel_system(&self) -> DiophantineSystem {
        let t = self.generators.len();
        let mut coeffs = self.generators.clone();
        coeffs.extend(self.generators.iter().map(|&g| -g));
        let mut sys = DiophantineSystem::new(2 * t);
        sys.push_equation(coeffs, 0).expect("dimensions match");
        sys
    }

    /// Kernel atoms are primitive partition identities with parts at most
    /// `n_t`, which caps their total length by `2·n_t`.
    fn kernel_level_cap(&self) -> Option<usize> {
        Some(2 * self.max_generator() as usize + 2)
    }

    fn betti_elements(&self) -> Result<Vec<i64>> {
        crate::factorizations::betti_elements_numerical(self)
    }

    /// Apéry-set reduction: every minimal factorization of `s + S` factors an
    /// element `s + u` with `u` in the Apéry set of one of its atoms, so it
    /// suffices to enumerate those finitely many elements and minimize.
    fn min_z_shifted(&self, s: &i64) -> Result<Vec<Factorization>> {
        let s = *s;
        if s < 0 {
            return Err(Error::NotInMonoid(format!("{s}")));
        }
        let t = self.generators.len();
        if s == 0 {
            return Ok(vec![Factorization::empty(t)]);
        }
        if t == 1 {
            // ℕ₀: the unique minimal element of 𝖹(s + S) is s copies of 1.
            return Ok(vec![Factorization::new(vec![s])]);
        }
        let mut images = std::collections::BTreeSet::new();
        for j in 0..t {
            let ap = self.apery_set(self.generators[j])?;
            for &u in ap.iter() {
                images.insert(checked_add(s, u)?);
            }
        }
        let mut all = Vec::new();
        for a in images {
            all.extend(self.factorizations_unchecked(&a));
        }
        Ok(minimize_factorizations(all))
    }
}

impl FromStr for NumericalMonoid {
    type Err = Error;

    /// Parses a comma-separated generator list such as `"4,10,21"`.
    fn from_str(s: &str) -> Result<Self> {
        let gens: Result<Vec<i64>> = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad generator {part:?}: {e}")))
            })
            .collect();
        NumericalMonoid::new(&gens?)
    }
}
