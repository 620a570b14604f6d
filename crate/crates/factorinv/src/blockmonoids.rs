//! Monoids of zero-sum sequences over finite abelian groups, bridged onto
//! affine monoids so every invariant applies to them.

use crate::affine::AffineMonoid;
use crate::diophantine::kernel_atoms_budgeted;
use crate::invariants::{catenary, core_invariants, format_ratio};
use crate::monoid::AtomicMonoid;
use crate::presentations::has_generic_presentation;
use crate::{checked_mul, Error, Result};
use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

/// A finite abelian group in invariant-factor form `ℤ/d₁ × … × ℤ/d_r` with
/// `d₁ | d₂ | … | d_r`. Elements are coordinate tuples mod the factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<i64>,
}

impl FiniteAbelianGroup {
    /// Accepts any list of cyclic orders and canonicalizes it into a
    /// divisibility chain, e.g. `[2, 3] → [6]`.
    pub fn new(factors: Vec<i64>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Parse(
                "a group needs at least one cyclic factor".into(),
            ));
        }
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::Parse("cyclic factors must be at least 2".into()));
        }
        let mut f = factors;
        loop {
            let mut changed = false;
            for i in 0..f.len() {
                for j in (i + 1)..f.len() {
                    if f[i] % f[j] != 0 && f[j] % f[i] != 0 || f[i] > f[j] {
                        let g = f[i].gcd(&f[j]);
                        let l = f[i] / g * f[j];
                        f[i] = g;
                        f[j] = l;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        f.retain(|&d| d > 1);
        if f.is_empty() {
            return Err(Error::Parse("the trivial group is not supported".into()));
        }
        Ok(FiniteAbelianGroup {
            invariant_factors: f,
        })
    }

    pub fn invariant_factors(&self) -> &[i64] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> Result<i64> {
        self.invariant_factors
            .iter()
            .try_fold(1i64, |acc, &d| checked_mul(acc, d))
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.invariant_factors
            .iter()
            .zip(a.iter().zip(b))
            .map(|(&d, (&x, &y))| (x + y).rem_euclid(d))
            .collect()
    }

    pub fn neg(&self, a: &[i64]) -> Vec<i64> {
        self.invariant_factors
            .iter()
            .zip(a)
            .map(|(&d, &x)| (-x).rem_euclid(d))
            .collect()
    }

    /// All elements in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for &d in &self.invariant_factors {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for prefix in &out {
                for v in 0..d {
                    let mut e = prefix.clone();
                    e.push(v);
                    next.push(e);
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("C{d}"))
            .collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    /// Parses `"C3"`, `"C2xC2"`, `"C2xC4"` and the like.
    fn from_str(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for part in s.trim().split(['x', 'X']) {
            let part = part.trim();
            let digits = part
                .strip_prefix(['C', 'c'])
                .ok_or_else(|| Error::Parse(format!("expected C<n>, got {part:?}")))?;
            let d: i64 = digits
                .parse()
                .map_err(|e| Error::Parse(format!("bad cyclic order {digits:?}: {e}")))?;
            factors.push(d);
        }
        FiniteAbelianGroup::new(factors)
    }
}

/// `B(G₀)`: zero-sum sequences over a subset `G₀` of a finite abelian group,
/// stored as multiplicity vectors over `G₀` and bridged to the affine monoid
/// cut out by one congruence per invariant factor.
#[derive(Debug, Clone)]
pub struct ZeroSumMonoid {
    group: FiniteAbelianGroup,
    g0: Vec<Vec<i64>>,
    affine: AffineMonoid,
}

impl ZeroSumMonoid {
    /// The default block monoid `B(G•)` over all nonzero elements.
    pub fn over_nonzero(group: FiniteAbelianGroup) -> Result<Self> {
        let g0: Vec<Vec<i64>> = group
            .elements()
            .into_iter()
            .filter(|e| e.iter().any(|&x| x != 0))
            .collect();
        Self::with_support(group, g0)
    }

    /// `B(G₀)` for an arbitrary list of distinct elements.
    pub fn with_support(group: FiniteAbelianGroup, g0: Vec<Vec<i64>>) -> Result<Self> {
        if g0.is_empty() {
            return Err(Error::InvalidSystem("empty support set".into()));
        }
        let mut seen = BTreeSet::new();
        for e in &g0 {
            if e.len() != group.rank() {
                return Err(Error::DimensionMismatch {
                    expected: group.rank(),
                    found: e.len(),
                });
            }
            if e.iter()
                .zip(group.invariant_factors())
                .any(|(&x, &d)| x < 0 || x >= d)
            {
                return Err(Error::InvalidSystem(format!(
                    "{e:?} is not reduced mod the invariant factors"
                )));
            }
            if !seen.insert(e.clone()) {
                return Err(Error::InvalidSystem(format!("duplicate element {e:?}")));
            }
        }
        let congruences = group
            .invariant_factors()
            .iter()
            .enumerate()
            .map(|(j, &d)| (g0.iter().map(|e| e[j]).collect(), d))
            .collect();
        let affine = AffineMonoid::new(g0.len(), congruences, vec![])?;
        Ok(ZeroSumMonoid { group, g0, affine })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// The support list; multiplicity vectors are indexed by it.
    pub fn support(&self) -> &[Vec<i64>] {
        &self.g0
    }

    pub fn affine(&self) -> &AffineMonoid {
        &self.affine
    }

    /// Minimal zero-sum sequences as multiplicity vectors.
    pub fn atoms(&self) -> &[Vec<i64>] {
        self.affine.atoms()
    }

    /// `D(G₀)`: the longest minimal zero-sum sequence.
    pub fn davenport(&self) -> i64 {
        self.atoms()
            .iter()
            .map(|a| a.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        let set: BTreeSet<&Vec<i64>> = self.g0.iter().collect();
        self.g0.iter().all(|e| set.contains(&self.group.neg(e)))
    }
}

/// `D(G₀)` by its covering characterization: the least `l` such that every
/// sequence of `l` elements of `G₀` contains a nonempty zero-sum
/// subsequence. Independent of the atom computation.
pub fn davenport_brute_force(z: &ZeroSumMonoid) -> Result<i64> {
    let order = z.group().order()?;
    for l in 1..=(order + 1) {
        if every_multiset_has_zero_subsum(z, l as usize)? {
            return Ok(l);
        }
    }
    Err(Error::ResourceLimit(format!(
        "no covering length below {}",
        order + 2
    )))
}

fn every_multiset_has_zero_subsum(z: &ZeroSumMonoid, l: usize) -> Result<bool> {
    let m = z.support().len();
    let mut counts = vec![0usize; m];
    fn rec(z: &ZeroSumMonoid, start: usize, left: usize, counts: &mut Vec<usize>) -> bool {
        if left == 0 {
            return has_zero_subsum(z, counts);
        }
        for i in start..counts.len() {
            counts[i] += 1;
            let ok = rec(z, i, left - 1, counts);
            counts[i] -= 1;
            if !ok {
                return false;
            }
        }
        true
    }
    Ok(rec(z, 0, l, &mut counts))
}

fn has_zero_subsum(z: &ZeroSumMonoid, counts: &[usize]) -> bool {
    // Reachable sums of nonempty sub-multisets.
    let group = z.group();
    let mut reach: BTreeSet<Vec<i64>> = BTreeSet::new();
    for (i, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let g = &z.support()[i];
        let mut next = reach.clone();
        let mut power = group.zero();
        for _ in 0..c {
            power = group.add(&power, g);
            next.insert(power.clone());
            for r in &reach {
                next.insert(group.add(r, &power));
            }
        }
        reach = next;
    }
    reach.contains(&group.zero())
}

/// The computed facts behind the generic-presentation and `c = t`
/// dichotomies for small groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSuiteReport {
    pub group: String,
    pub order: i64,
    pub num_atoms: usize,
    pub davenport: i64,
    pub davenport_brute_force: i64,
    pub generic: bool,
    pub catenary: i64,
    pub omega: i64,
    pub tame: i64,
    pub c_equals_t: bool,
}

/// Computes generic/ω/c/t for `B(G•)`. Groups beyond `max_order` are
/// rejected: the relation-monoid computation grows steeply with the order.
pub fn corollary59_suite(group: &FiniteAbelianGroup, max_order: i64) -> Result<GroupSuiteReport> {
    let order = group.order()?;
    if order < 3 {
        return Err(Error::HypothesisViolation(format!(
            "|G| = {order} is below 3"
        )));
    }
    if order > max_order {
        return Err(Error::ResourceLimit(format!(
            "|G| = {order} exceeds the supported order {max_order}"
        )));
    }
    let z = ZeroSumMonoid::over_nonzero(group.clone())?;
    let affine = z.affine();
    let generic = has_generic_presentation(affine)?.is_some();
    let c = catenary(affine)?;
    let core = core_invariants(affine)?;
    Ok(GroupSuiteReport {
        group: group.to_string(),
        order,
        num_atoms: z.atoms().len(),
        davenport: z.davenport(),
        davenport_brute_force: davenport_brute_force(&z)?,
        generic,
        catenary: c,
        omega: core.omega,
        tame: core.tame,
        c_equals_t: c == core.tame,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhoEvenRow {
    pub k: i64,
    pub rho: i64,
    pub expected: i64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhoOddRow {
    pub m: i64,
    pub rho: i64,
    /// `ρ_{2m+1} − m·D`, non-decreasing in `m` and at most `⌊D/2⌋`.
    pub excess: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhoChecks {
    pub k_max: i64,
    pub davenport: i64,
    pub elasticity: String,
    pub even_rows: Vec<RhoEvenRow>,
    pub odd_rows: Vec<RhoOddRow>,
    /// First scanned maximizer of the excess; minimal within the window.
    pub minimal_m: Option<i64>,
    /// True when the excess reaches `⌊D/2⌋`, its unconditional ceiling, which
    /// pins the global maximizer inside the window.
    pub minimal_m_certified: bool,
    /// `a(B(G₀))` when the relation-monoid search completes; otherwise null.
    pub a_invariant: Option<i64>,
    /// Largest relation-atom left length found, a certified lower bound.
    pub a_lower_bound: i64,
    /// `ρ_{2m+1} ≤ a(B(G₀))` at the reported `m`; null when undecidable
    /// within the search budget.
    pub rho_odd_le_a: Option<bool>,
}

/// Elasticity and `ρ_k` checks for symmetric support sets (`G₀ = −G₀`):
/// `ρ(S) = D/2`, `ρ_{2k} = k·D`, and the odd values against `a(B(G₀))`.
pub fn rho_checks(z: &ZeroSumMonoid, k_max: i64, a_inv: Option<i64>) -> Result<RhoChecks> {
    if !z.is_symmetric() {
        return Err(Error::HypothesisViolation(
            "the support set is not closed under negation".into(),
        ));
    }
    if z.support().iter().any(|e| e.iter().all(|&x| x == 0)) {
        return Err(Error::HypothesisViolation(
            "the support set must avoid the zero element".into(),
        ));
    }
    let d = z.davenport();
    let affine = z.affine();
    let rho = rho_sequence(z, k_max)?;

    let mut even_rows = Vec::new();
    let mut k = 2;
    while k <= k_max {
        let expected = (k / 2) * d;
        even_rows.push(RhoEvenRow {
            k,
            rho: rho[k as usize],
            expected,
            ok: rho[k as usize] == expected,
        });
        k += 2;
    }

    // The excess ρ_{2m+1} − m·D is non-decreasing and capped by ⌊D/2⌋; its
    // first maximizer over m ≥ 0 is the index the odd bound speaks about
    // (m = 0 contributes ρ₁ = 1 and is a legitimate maximizer).
    let mut odd_rows = Vec::new();
    let mut best_excess = i64::MIN;
    let mut minimal_m = None;
    let mut m = 0;
    while 2 * m + 1 <= k_max {
        let r = rho[(2 * m + 1) as usize];
        let excess = r - m * d;
        if excess > best_excess {
            best_excess = excess;
            minimal_m = Some(m);
        }
        odd_rows.push(RhoOddRow { m, rho: r, excess });
        m += 1;
    }
    let minimal_m_certified = best_excess == d / 2;
    let (a_exact, a_lower) = match a_inv {
        Some(a) => (Some(a), a),
        None => {
            let (pairs, complete) = kernel_atoms_budgeted(affine, 1_000_000)?;
            let lower = pairs.iter().map(|p| p.left.length()).max().unwrap_or(0);
            (complete.then_some(lower), lower)
        }
    };
    let rho_odd_le_a = minimal_m.and_then(|m| {
        let rho_odd = rho[(2 * m + 1) as usize];
        match a_exact {
            Some(a) => Some(rho_odd <= a),
            // The lower bound can still certify the inequality, never refute.
            None => (rho_odd <= a_lower).then_some(true),
        }
    });
    Ok(RhoChecks {
        k_max,
        davenport: d,
        elasticity: format_ratio(Ratio::new(d, 2)),
        even_rows,
        odd_rows,
        minimal_m,
        minimal_m_certified,
        a_invariant: a_exact,
        a_lower_bound: a_lower,
        rho_odd_le_a,
    })
}

/// `ρ_k` for `k = 0..=k_max`: breadth-first products of `k` atoms with a
/// memoized longest-factorization length per element.
fn rho_sequence(z: &ZeroSumMonoid, k_max: i64) -> Result<Vec<i64>> {
    let affine = z.affine();
    let atoms: Vec<Vec<i64>> = affine.atoms().to_vec();
    let mut memo: HashMap<Vec<i64>, i64> = HashMap::new();
    let mut rho = vec![0i64];
    let mut level: BTreeSet<Vec<i64>> = BTreeSet::new();
    level.insert(affine.zero_element());
    for _k in 1..=k_max {
        let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
        for a in &level {
            for atom in &atoms {
                let mut sum = Vec::with_capacity(a.len());
                for (x, y) in a.iter().zip(atom) {
                    sum.push(crate::checked_add(*x, *y)?);
                }
                next.insert(sum);
            }
        }
        let mut best = 0;
        for a in &next {
            best = best.max(max_length(affine, &atoms, a, &mut memo));
        }
        rho.push(best);
        level = next;
    }
    Ok(rho)
}

fn max_length(
    affine: &AffineMonoid,
    atoms: &[Vec<i64>],
    a: &Vec<i64>,
    memo: &mut HashMap<Vec<i64>, i64>,
) -> i64 {
    if a.iter().all(|&x| x == 0) {
        return 0;
    }
    if let Some(&hit) = memo.get(a) {
        return hit;
    }
    let mut best = i64::MIN;
    for atom in atoms {
        if let Some(rest) = affine.sub_element(a, atom) {
            // Saturation keeps rest inside the monoid whenever it stays
            // non-negative.
            best = best.max(max_length(affine, atoms, &rest, memo));
        }
    }
    let result = if best == i64::MIN { i64::MIN } else { best + 1 };
    memo.insert(a.clone(), result);
    result
}
