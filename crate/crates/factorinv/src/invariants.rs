//! The arithmetical invariants: ω, the catenary family, tame degrees,
//! elasticity, Δ-sets and unions of sets of lengths.

use crate::diophantine::{
    equal_kernel_atoms, kernel_atoms, minimal_inhomogeneous, DiophantineSystem, Relation,
};
use crate::factorizations::{r_classes, DisjointSet, LengthTable};
use crate::monoid::{distance, set_distance, AtomicMonoid, Factorization};
use crate::numerical::NumericalMonoid;
use crate::presentations::{a_invariant_from, min_a_d_search_with};
use crate::{checked_add, checked_mul, Error, Result};
use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// `ω(S, s)`: the longest minimal factorization covering `s`.
pub fn omega_element<M: AtomicMonoid>(monoid: &M, s: &M::Elem) -> Result<i64> {
    let min = monoid.min_z_shifted(s)?;
    Ok(min.iter().map(|z| z.length()).max().unwrap_or(0))
}

/// `ω(S, u)` for every atom `u`, in atom order.
pub fn omega_per_atom<M: AtomicMonoid>(monoid: &M) -> Result<Vec<i64>> {
    (0..monoid.atom_count())
        .map(|u| omega_element(monoid, &monoid.atom_element(u)))
        .collect()
}

/// `ω(S) = max { ω(S, u) : u an atom }`.
pub fn omega<M: AtomicMonoid>(monoid: &M) -> Result<i64> {
    Ok(omega_per_atom(monoid)?.into_iter().max().unwrap_or(0))
}

/// Largest edge of a minimax spanning tree on the complete distance graph:
/// the least `N` making the `≤ N` graph connected.
fn bottleneck(zs: &[Factorization]) -> Result<i64> {
    let n = zs.len();
    if n <= 1 {
        return Ok(0);
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((distance(&zs[i], &zs[j])?, i, j));
        }
    }
    edges.sort_unstable();
    let mut dsu = DisjointSet::new(n);
    let mut components = n;
    for (d, i, j) in edges {
        if dsu.union(i, j) {
            components -= 1;
            if components == 1 {
                return Ok(d);
            }
        }
    }
    unreachable!("complete graph always becomes connected");
}

/// `c(a)`: the bottleneck threshold for connecting all of `𝖹(a)`.
pub fn catenary_element<M: AtomicMonoid>(monoid: &M, a: &M::Elem) -> Result<i64> {
    bottleneck(&monoid.factorizations(a)?)
}

pub(crate) fn catenary_from_betti<M: AtomicMonoid>(monoid: &M, betti: &[M::Elem]) -> Result<i64> {
    let mut best = 0;
    for b in betti {
        best = best.max(r_classes(monoid, b)?.mu());
    }
    Ok(best)
}

/// `c(S)` through Betti elements: the maximum over Betti elements of the
/// largest class-minimal length `μ(b)`.
pub fn catenary<M: AtomicMonoid>(monoid: &M) -> Result<i64> {
    catenary_from_betti(monoid, &monoid.betti_elements()?)
}

/// The closed form for three pairwise coprime generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoprimeFormula {
    /// `cᵢ = min { k : k·nᵢ ∈ ⟨nⱼ, nₖ⟩ }`.
    pub c: [i64; 3],
    /// `r[i]` are the coefficients of `cᵢ·nᵢ` over the other two generators.
    pub r: [[i64; 2]; 3],
    pub value: i64,
}

pub fn catenary_three_coprime_formula(monoid: &NumericalMonoid) -> Result<CoprimeFormula> {
    let gens = monoid.generators();
    if gens.len() != 3 {
        return Err(Error::HypothesisViolation(format!(
            "need exactly 3 generators, got {}",
            gens.len()
        )));
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if gens[i].gcd(&gens[j]) != 1 {
            return Err(Error::HypothesisViolation(format!(
                "generators {} and {} are not coprime",
                gens[i], gens[j]
            )));
        }
    }
    let mut c = [0i64; 3];
    let mut r = [[0i64; 2]; 3];
    for i in 0..3 {
        let (nj, nk) = match i {
            0 => (gens[1], gens[2]),
            1 => (gens[0], gens[2]),
            _ => (gens[0], gens[1]),
        };
        let mut k = 1i64;
        loop {
            let target = checked_mul(k, gens[i])?;
            let mut reps = Vec::new();
            let mut y = 0;
            while y * nk <= target {
                if (target - y * nk) % nj == 0 {
                    reps.push([(target - y * nk) / nj, y]);
                }
                y += 1;
            }
            if !reps.is_empty() {
                assert_eq!(reps.len(), 1, "representation of c_i n_i is unique");
                c[i] = k;
                r[i] = reps[0];
                break;
            }
            k += 1;
            assert!(k <= nj * nk, "c_i exists below n_j n_k");
        }
    }
    let value = c
        .iter()
        .copied()
        .chain(r.iter().map(|row| row[0] + row[1]))
        .max()
        .unwrap();
    Ok(CoprimeFormula { c, r, value })
}

fn group_by_length(zs: &[Factorization]) -> BTreeMap<i64, Vec<Factorization>> {
    let mut groups: BTreeMap<i64, Vec<Factorization>> = BTreeMap::new();
    for z in zs {
        groups.entry(z.length()).or_default().push(z.clone());
    }
    groups
}

/// `(c_adj(a), c_equal(a))` from one factorization enumeration.
fn element_catenary_parts(zs: &[Factorization]) -> Result<(i64, i64)> {
    let groups = group_by_length(zs);
    let keys: Vec<i64> = groups.keys().copied().collect();
    let mut adj = 0;
    for w in keys.windows(2) {
        adj = adj.max(set_distance(&groups[&w[0]], &groups[&w[1]])?);
    }
    let mut equal = 0;
    for zsk in groups.values() {
        equal = equal.max(bottleneck(zsk)?);
    }
    Ok((adj, equal))
}

/// Largest distance between adjacent length layers of `𝖹(a)`.
pub fn catenary_adj_element<M: AtomicMonoid>(monoid: &M, a: &M::Elem) -> Result<i64> {
    Ok(element_catenary_parts(&monoid.factorizations(a)?)?.0)
}

/// Worst bottleneck within a single length layer of `𝖹(a)`; monotone chains
/// between equal lengths cannot change length along the way.
pub fn catenary_equal_element<M: AtomicMonoid>(monoid: &M, a: &M::Elem) -> Result<i64> {
    Ok(element_catenary_parts(&monoid.factorizations(a)?)?.1)
}

/// `c_mon(a) = max { c_equal(a), c_adj(a) }`.
pub fn catenary_mon_element<M: AtomicMonoid>(monoid: &M, a: &M::Elem) -> Result<i64> {
    let (adj, equal) = element_catenary_parts(&monoid.factorizations(a)?)?;
    Ok(adj.max(equal))
}

/// `t(a, u)`: how far a factorization of `a` can sit from the ones divisible
/// by atom `u`; zero when no factorization contains `u`.
pub fn tame_pair<M: AtomicMonoid>(monoid: &M, a: &M::Elem, u: usize) -> Result<i64> {
    let zs = monoid.factorizations(a)?;
    let with_u: Vec<Factorization> = zs
        .iter()
        .filter(|z| z.exponents()[u] > 0)
        .cloned()
        .collect();
    if with_u.is_empty() {
        return Ok(0);
    }
    let mut worst = 0;
    for z in &zs {
        let mut best = i64::MAX;
        for z2 in &with_u {
            best = best.min(distance(z, z2)?);
        }
        worst = worst.max(best);
    }
    Ok(worst)
}

pub(crate) struct CoreInvariants<E> {
    pub omega_per_atom: Vec<i64>,
    pub omega: i64,
    /// Witness-set values: exact as a global maximum, per-atom entries are
    /// lower bounds localized by the minimal-witness argument.
    pub tame_per_atom: Vec<i64>,
    pub tame: i64,
    pub tame_witness: Option<(E, usize)>,
}

/// Shares `Min 𝖹(u + S)` between ω and the tame degree: the global tame
/// maximum is attained at an element whose far factorization is minimal in
/// `𝖹(u + S)`, so those images form a sufficient witness set.
pub(crate) fn core_invariants<M: AtomicMonoid>(monoid: &M) -> Result<CoreInvariants<M::Elem>> {
    let t = monoid.atom_count();
    let mut omega_per_atom = Vec::with_capacity(t);
    let mut tame_per_atom = Vec::with_capacity(t);
    let mut tame = 0;
    let mut witness = None;
    for u in 0..t {
        let min_zs = monoid.min_z_shifted(&monoid.atom_element(u))?;
        omega_per_atom.push(min_zs.iter().map(|z| z.length()).max().unwrap_or(0));
        let images: BTreeSet<M::Elem> = min_zs
            .iter()
            .map(|z| monoid.image(z))
            .collect::<Result<_>>()?;
        let mut tame_u = 0;
        for a in images {
            let v = tame_pair(monoid, &a, u)?;
            tame_u = tame_u.max(v);
            if v > tame {
                tame = v;
                witness = Some((a.clone(), u));
            }
        }
        tame_per_atom.push(tame_u);
    }
    let omega = omega_per_atom.iter().copied().max().unwrap_or(0);
    Ok(CoreInvariants {
        omega_per_atom,
        omega,
        tame_per_atom,
        tame,
        tame_witness: witness,
    })
}

/// `t(S)` with a witness `(a, u)` attaining it, when the monoid has any
/// non-trivial relation at all.
pub fn tame_degree<M: AtomicMonoid>(monoid: &M) -> Result<(i64, Option<(M::Elem, usize)>)> {
    let core = core_invariants(monoid)?;
    Ok((core.tame, core.tame_witness))
}

/// `ρ(S) = n_t / n₁`, exactly.
pub fn elasticity(monoid: &NumericalMonoid) -> Ratio<i64> {
    Ratio::new(monoid.max_generator(), monoid.multiplicity())
}

/// `min Δ(S) = gcd(n₂ − n₁, …, n_t − n_{t−1})`.
pub fn min_delta(monoid: &NumericalMonoid) -> Result<i64> {
    let gens = monoid.generators();
    if gens.len() < 2 {
        return Err(Error::HypothesisViolation(
            "min Δ needs at least two generators".into(),
        ));
    }
    Ok(gens.windows(2).fold(0i64, |g, w| g.gcd(&(w[1] - w[0]))))
}

/// Union of the Δ-sets of all members up to `bound`. An under-approximation
/// of `Δ(S)` by construction; reported together with the bound used.
pub fn delta_observed(monoid: &NumericalMonoid, bound: i64) -> Vec<i64> {
    let table = LengthTable::build(monoid, bound);
    let mut delta = BTreeSet::new();
    for a in 1..=bound {
        let lengths = table.lengths(a);
        for w in lengths.windows(2) {
            delta.insert(w[1] - w[0]);
        }
    }
    delta.into_iter().collect()
}

/// One row of a `V_k` table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnionRow {
    pub k: i64,
    /// `V_k`, ascending.
    pub lengths: Vec<i64>,
    pub rho: i64,
    pub lambda: i64,
    /// Whether `V_k` is an arithmetic progression with difference `min Δ(S)`.
    pub is_ap: bool,
    /// Largest grid value strictly inside `[λ_k, ρ_k]` missing from `V_k`.
    pub largest_missing: Option<i64>,
}

fn union_row(table: &LengthTable, n_max: i64, d: i64, k: i64) -> UnionRow {
    let mut bits: BTreeSet<i64> = BTreeSet::new();
    let hi = (k * n_max).min(table.bound());
    for a in 0..=hi {
        if table.has_length(a, k) {
            bits.extend(table.lengths(a));
        }
    }
    let lengths: Vec<i64> = bits.into_iter().collect();
    assert!(!lengths.is_empty(), "k itself always lies in V_k");
    let lambda = lengths[0];
    let rho = *lengths.last().unwrap();
    let is_ap = lengths.windows(2).all(|w| w[1] - w[0] == d);
    let mut largest_missing = None;
    if !is_ap {
        let set: BTreeSet<i64> = lengths.iter().copied().collect();
        let mut v = rho - d;
        while v > lambda {
            if !set.contains(&v) {
                largest_missing = Some(v);
                break;
            }
            v -= d;
        }
    }
    UnionRow {
        k,
        lengths,
        rho,
        lambda,
        is_ap,
        largest_missing,
    }
}

/// `V_k` for all `k ≤ k_max` from a single length table.
pub fn unions_table(monoid: &NumericalMonoid, k_max: i64) -> Result<Vec<UnionRow>> {
    let n_max = monoid.max_generator();
    let bound = checked_mul(k_max.max(1), n_max)?;
    let table = LengthTable::build(monoid, bound);
    let d = if monoid.generators().len() >= 2 {
        min_delta(monoid)?
    } else {
        1
    };
    Ok((1..=k_max)
        .map(|k| union_row(&table, n_max, d, k))
        .collect())
}

/// `V_k` with its extrema; the union of all sets of lengths containing `k`.
pub fn union_of_lengths(monoid: &NumericalMonoid, k: i64) -> Result<UnionRow> {
    if k < 1 {
        return Err(Error::HypothesisViolation("k must be positive".into()));
    }
    let n_max = monoid.max_generator();
    let bound = checked_mul(k, n_max)?;
    let table = LengthTable::build(monoid, bound);
    let d = if monoid.generators().len() >= 2 {
        min_delta(monoid)?
    } else {
        1
    };
    Ok(union_row(&table, n_max, d, k))
}

/// The window slices of `M = { k : ρ_k = k·ρ(S) }` and
/// `M' = { k : λ_k·ρ(S) = k }`, by exact cross-multiplication.
pub fn ratio_monoids(monoid: &NumericalMonoid, k_max: i64) -> Result<(Vec<i64>, Vec<i64>)> {
    let rows = unions_table(monoid, k_max)?;
    let n1 = monoid.multiplicity();
    let nt = monoid.max_generator();
    let m: Vec<i64> = rows
        .iter()
        .filter(|r| r.rho * n1 == r.k * nt)
        .map(|r| r.k)
        .collect();
    let m_prime: Vec<i64> = rows
        .iter()
        .filter(|r| r.lambda * nt == r.k * n1)
        .map(|r| r.k)
        .collect();
    Ok((m, m_prime))
}

/// Non-negative solvability of the two structural Diophantine equations;
/// returns one minimal solution of each when both exist.
pub fn check_ap_hypothesis(monoid: &NumericalMonoid) -> Result<Option<(Vec<i64>, Vec<i64>)>> {
    let gens = monoid.generators();
    if gens.len() < 2 {
        return Err(Error::HypothesisViolation(
            "hypothesis needs at least two generators".into(),
        ));
    }
    let d = min_delta(monoid)?;
    let t = gens.len();
    let n1 = gens[0];
    let nt = gens[t - 1];

    let mut alpha_sys = DiophantineSystem::new(t - 1);
    let coeffs: Vec<i64> = gens[1..].iter().map(|&g| g - n1).collect();
    alpha_sys.push_equation(coeffs, checked_mul(d, n1)?)?;
    let alpha = minimal_inhomogeneous(&alpha_sys, Relation::Equals)?;
    if alpha.is_empty() {
        return Ok(None);
    }

    let mut beta_sys = DiophantineSystem::new(t - 1);
    let coeffs: Vec<i64> = gens[..t - 1].iter().map(|&g| nt - g).collect();
    beta_sys.push_equation(coeffs, checked_mul(d, nt)?)?;
    let beta = minimal_inhomogeneous(&beta_sys, Relation::Equals)?;
    if beta.is_empty() {
        return Ok(None);
    }
    Ok(Some((alpha[0].clone(), beta[0].clone())))
}

/// Scan report for the structure of the unions `V_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApScan {
    pub difference: i64,
    pub rows: Vec<UnionRow>,
    /// Least scanned `k₀` with every `V_k`, `k₀ ≤ k ≤ k_max`, an arithmetic
    /// progression. Empirical: says nothing beyond the window.
    pub k_star_estimate: Option<i64>,
    pub hypothesis: Option<(Vec<i64>, Vec<i64>)>,
    /// `(|V_k| / k)` converges to this when the hypothesis holds.
    pub density_limit: String,
    /// A member whose length set is an AP with difference `min Δ(S)` and
    /// whose elasticity is the full `ρ(S)`, found by scanning multiples of
    /// `lcm(n₁, n_t)`.
    pub ap_witness: Option<i64>,
}

pub(crate) fn density_limit_ratio(monoid: &NumericalMonoid, d: i64) -> Ratio<i64> {
    let n1 = monoid.multiplicity();
    let nt = monoid.max_generator();
    Ratio::new(nt * nt - n1 * n1, d * n1 * nt)
}

fn find_ap_witness(monoid: &NumericalMonoid, d: i64) -> Result<Option<i64>> {
    let n1 = monoid.multiplicity();
    let nt = monoid.max_generator();
    let l = n1.lcm(&nt);
    let cap = 20_000i64;
    if l > cap {
        return Ok(None);
    }
    let limit = (8 * l).min(cap);
    let table = LengthTable::build(monoid, limit);
    let mut a = l;
    while a <= limit {
        let lengths = table.lengths(a);
        if let (Some(&min), Some(&max)) = (lengths.first(), lengths.last()) {
            let full_elasticity = min == a / nt && max == a / n1;
            let ap = lengths.windows(2).all(|w| w[1] - w[0] == d);
            if full_elasticity && ap {
                return Ok(Some(a));
            }
        }
        a += l;
    }
    Ok(None)
}

/// Per-`k` AP structure of the unions, the empirical `k*`, and the density
/// data against the limiting value.
pub fn ap_structure_scan(monoid: &NumericalMonoid, k_max: i64) -> Result<ApScan> {
    if k_max < 2 {
        return Err(Error::HypothesisViolation(
            "k_max must be at least 2".into(),
        ));
    }
    let d = if monoid.generators().len() >= 2 {
        min_delta(monoid)?
    } else {
        1
    };
    let rows = unions_table(monoid, k_max)?;
    let k_star_estimate = if rows.last().map(|r| r.is_ap) == Some(true) {
        let mut k0 = k_max;
        for row in rows.iter().rev() {
            if row.is_ap {
                k0 = row.k;
            } else {
                break;
            }
        }
        Some(k0)
    } else {
        None
    };
    let hypothesis = check_ap_hypothesis(monoid)?;
    let ap_witness = if hypothesis.is_some() {
        find_ap_witness(monoid, d)?
    } else {
        None
    };
    Ok(ApScan {
        difference: d,
        rows,
        k_star_estimate,
        hypothesis,
        density_limit: format_ratio(density_limit_ratio(monoid, d)),
        ap_witness,
    })
}

pub(crate) fn format_ratio(r: Ratio<i64>) -> String {
    if r.denom() == &1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A scanned quantity together with the bound used and an upper bound when
/// one is certified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanBound {
    /// Maximum seen over the scanned elements.
    pub scanned: i64,
    /// The scan bound: an element bound for numerical monoids, a
    /// factorization-length cap for affine ones.
    pub scan_bound: i64,
    pub upper_bound: Option<i64>,
    pub upper_certified: bool,
}

/// The aggregate report. Exact fields: `omega*`, `catenary`, `tame`,
/// `a_invariant`, `elasticity`. Scanned fields carry their bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub omega_per_atom: Vec<i64>,
    pub omega: i64,
    pub catenary: i64,
    pub catenary_mon: ScanBound,
    pub catenary_equal: ScanBound,
    pub catenary_adj: ScanBound,
    pub tame_per_atom: Vec<i64>,
    pub tame: i64,
    pub elasticity: Option<String>,
    pub delta_observed: Vec<i64>,
    pub a_invariant: i64,
}

#[derive(Debug, Clone)]
pub struct ReportOptions {
    /// Element bound for the numerical scans; default `F(S) + n₁·n_t`.
    pub element_bound: Option<i64>,
    /// Length cap for the `Min(A_d)` searches behind the adjacent bound.
    pub adj_search_cap: i64,
    /// Factorization-length cap for affine element scans.
    pub affine_level_cap: i64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            element_bound: None,
            adj_search_cap: 30,
            affine_level_cap: 6,
        }
    }
}

/// The adjacent-catenary upper bound from capped `Min(A_d)` searches over
/// all candidate distances (multiples of `d_min` up to `c − 2`).
fn adj_upper_bound<M: AtomicMonoid>(
    monoid: &M,
    d_min: i64,
    catenary: i64,
    a_inv: i64,
    cap: i64,
) -> Result<(Option<i64>, bool)> {
    if catenary < 2 + d_min {
        // Empty distance set: no adjacent pairs exist anywhere.
        return Ok((Some(0), true));
    }
    let mut upper = 0i64;
    let mut certified = true;
    let mut d = d_min;
    while d <= catenary - 2 {
        let search = min_a_d_search_with(monoid, d, cap, a_inv)?;
        if !search.exhaustive {
            certified = false;
        }
        if let Some(m) = search.minimal.iter().map(|x| x.length()).max() {
            upper = upper.max(d + m);
        }
        d += d_min;
    }
    Ok((if certified { Some(upper) } else { None }, certified))
}

struct ElementScans {
    adj: i64,
    equal: i64,
    mon: i64,
}

/// Full report for a numerical monoid. Exact invariants are computed from
/// their characterizations; the monotone family is scanned up to the element
/// bound and paired with certified upper bounds where available.
pub fn full_report_numerical(
    monoid: &NumericalMonoid,
    opts: &ReportOptions,
) -> Result<InvariantReport> {
    let core = core_invariants(monoid)?;
    let betti = monoid.betti_elements()?;
    let catenary = catenary_from_betti(monoid, &betti)?;
    let kernel = kernel_atoms(monoid)?;
    let a_inv = a_invariant_from(&kernel);
    let equal_upper = match equal_kernel_atoms(monoid) {
        Ok(pairs) => Some(a_invariant_from(&pairs)),
        Err(Error::ResourceLimit(_)) => None,
        Err(e) => return Err(e),
    };

    let bound = match opts.element_bound {
        Some(b) => b,
        None => checked_add(
            monoid.frobenius(),
            checked_mul(monoid.multiplicity(), monoid.max_generator())?,
        )?,
    };
    if bound > 2_000_000 {
        return Err(Error::ResourceLimit(format!(
            "element scan bound {bound} is too large; pass an explicit bound"
        )));
    }

    let table = LengthTable::build(monoid, bound);
    let mut delta = BTreeSet::new();
    let mut scans = ElementScans {
        adj: 0,
        equal: 0,
        mon: 0,
    };
    for a in 1..=bound {
        if !table.is_member(a) {
            continue;
        }
        let lengths = table.lengths(a);
        for w in lengths.windows(2) {
            delta.insert(w[1] - w[0]);
        }
        if lengths.len() == 1 {
            // A single length layer cannot contribute adjacent distances, and
            // its internal bottleneck still counts for the equal family.
            if lengths[0] <= scans.equal {
                continue;
            }
        }
        let zs = monoid.factorizations_unchecked(&a);
        let (adj, equal) = element_catenary_parts(&zs)?;
        scans.adj = scans.adj.max(adj);
        scans.equal = scans.equal.max(equal);
        scans.mon = scans.mon.max(adj.max(equal));
    }
    let delta_observed: Vec<i64> = delta.iter().copied().collect();

    let d_min = if monoid.generators().len() >= 2 {
        min_delta(monoid)?
    } else {
        1
    };
    let (adj_upper, adj_certified) =
        adj_upper_bound(monoid, d_min, catenary, a_inv, opts.adj_search_cap)?;

    let report = InvariantReport {
        omega_per_atom: core.omega_per_atom,
        omega: core.omega,
        catenary,
        catenary_mon: ScanBound {
            scanned: scans.mon,
            scan_bound: bound,
            upper_bound: adj_upper.and_then(|u| equal_upper.map(|e| u.max(e))),
            upper_certified: adj_certified && equal_upper.is_some(),
        },
        catenary_equal: ScanBound {
            scanned: scans.equal,
            scan_bound: bound,
            upper_bound: equal_upper,
            upper_certified: equal_upper.is_some(),
        },
        catenary_adj: ScanBound {
            scanned: scans.adj,
            scan_bound: bound,
            upper_bound: adj_upper,
            upper_certified: adj_certified,
        },
        tame_per_atom: core.tame_per_atom,
        tame: core.tame,
        elasticity: Some(format_ratio(elasticity(monoid))),
        delta_observed,
        a_invariant: a_inv,
    };
    check_chain(&report, Some(monoid));
    Ok(report)
}

/// Full report for an affine monoid. The element scans run over the images
/// of all factorizations up to the level cap plus every Betti element.
pub fn full_report_affine(
    monoid: &crate::AffineMonoid,
    opts: &ReportOptions,
) -> Result<InvariantReport> {
    let core = core_invariants(monoid)?;
    let kernel = kernel_atoms(monoid)?;
    let a_inv = a_invariant_from(&kernel);
    let equal_upper = match equal_kernel_atoms(monoid) {
        Ok(pairs) => Some(a_invariant_from(&pairs)),
        Err(Error::ResourceLimit(_)) => None,
        Err(e) => return Err(e),
    };

    let betti = monoid.betti_elements()?;
    let catenary = catenary_from_betti(monoid, &betti)?;

    // Scan set: images of short factorizations (when tractable) plus the
    // Betti elements and kernel images.
    let t = monoid.atom_count();
    let mut scan_set: BTreeSet<Vec<i64>> = betti.iter().cloned().collect();
    for pair in &kernel {
        scan_set.insert(monoid.image(&pair.left)?);
    }
    let cap = opts.affine_level_cap;
    if compositions_count(t, cap) <= 300_000 {
        let mut exps = vec![0i64; t];
        for level in 1..=cap {
            collect_images(monoid, level, &mut exps, &mut scan_set)?;
        }
    }

    let mut delta = BTreeSet::new();
    let mut scans = ElementScans {
        adj: 0,
        equal: 0,
        mon: 0,
    };
    for a in &scan_set {
        let zs = monoid.factorizations_unchecked(a);
        if zs.is_empty() {
            continue;
        }
        let mut lengths: Vec<i64> = zs
            .iter()
            .map(|z| z.length())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        lengths.dedup();
        for w in lengths.windows(2) {
            delta.insert(w[1] - w[0]);
        }
        let (adj, equal) = element_catenary_parts(&zs)?;
        scans.adj = scans.adj.max(adj);
        scans.equal = scans.equal.max(equal);
        scans.mon = scans.mon.max(adj.max(equal));
    }
    let delta_observed: Vec<i64> = delta.iter().copied().collect();

    let d_min = delta_observed.first().copied().unwrap_or(1);
    let adj_cap = adaptive_cap(t, opts.adj_search_cap);
    let (adj_upper, adj_certified) = adj_upper_bound(monoid, d_min, catenary, a_inv, adj_cap)?;

    let report = InvariantReport {
        omega_per_atom: core.omega_per_atom,
        omega: core.omega,
        catenary,
        catenary_mon: ScanBound {
            scanned: scans.mon,
            scan_bound: cap,
            upper_bound: adj_upper.and_then(|u| equal_upper.map(|e| u.max(e))),
            upper_certified: adj_certified && equal_upper.is_some(),
        },
        catenary_equal: ScanBound {
            scanned: scans.equal,
            scan_bound: cap,
            upper_bound: equal_upper,
            upper_certified: equal_upper.is_some(),
        },
        catenary_adj: ScanBound {
            scanned: scans.adj,
            scan_bound: cap,
            upper_bound: adj_upper,
            upper_certified: adj_certified,
        },
        tame_per_atom: core.tame_per_atom,
        tame: core.tame,
        elasticity: None,
        delta_observed,
        a_invariant: a_inv,
    };
    check_chain(&report, None);
    Ok(report)
}

fn compositions_count(t: usize, cap: i64) -> u128 {
    // Σ_{L ≤ cap} C(L + t − 1, t − 1), saturating.
    let mut total: u128 = 0;
    for l in 0..=cap.max(0) as u128 {
        let mut c: u128 = 1;
        for i in 0..(t as u128).saturating_sub(1) {
            c = c.saturating_mul(l + i + 1) / (i + 1);
            if c > 1 << 40 {
                return u128::MAX;
            }
        }
        total = total.saturating_add(c);
    }
    total
}

fn adaptive_cap(t: usize, requested: i64) -> i64 {
    let mut cap = requested;
    while cap > 2 && compositions_count(t, cap) > 300_000 {
        cap -= 1;
    }
    cap
}

fn collect_images<M: AtomicMonoid>(
    monoid: &M,
    level: i64,
    exps: &mut Vec<i64>,
    out: &mut BTreeSet<M::Elem>,
) -> Result<()> {
    fn rec<M: AtomicMonoid>(
        monoid: &M,
        i: usize,
        remaining: i64,
        exps: &mut Vec<i64>,
        out: &mut BTreeSet<M::Elem>,
    ) -> Result<()> {
        if i + 1 == exps.len() {
            exps[i] = remaining;
            out.insert(monoid.image(&Factorization::new(exps.clone()))?);
            return Ok(());
        }
        for k in 0..=remaining {
            exps[i] = k;
            rec(monoid, i + 1, remaining - k, exps, out)?;
        }
        exps[i] = 0;
        Ok(())
    }
    if monoid.atom_count() == 0 {
        return Ok(());
    }
    rec(monoid, 0, level, exps, out)
}

/// The unconditional inequality chain between the invariants; a violation is
/// an internal error, never a property of the input.
fn check_chain(report: &InvariantReport, numerical: Option<&NumericalMonoid>) {
    if let Some(&max_delta) = report.delta_observed.last() {
        assert!(
            2 + max_delta <= report.catenary,
            "2 + max Δ ≤ c violated: {report:?}"
        );
    }
    assert!(
        report.catenary <= report.omega,
        "c ≤ ω violated: {report:?}"
    );
    if report.tame > 0 {
        // Factorial monoids have ω = 1 but tame degree 0; the chain applies
        // beyond them.
        assert!(report.omega <= report.tame, "ω ≤ t violated: {report:?}");
        assert!(
            report.tame <= report.omega * report.omega,
            "t ≤ ω² violated: {report:?}"
        );
    }
    assert!(
        report.tame <= report.a_invariant,
        "t ≤ a(S) violated: {report:?}"
    );
    if let Some(m) = numerical {
        assert!(
            m.max_generator() <= report.omega * m.multiplicity(),
            "ρ ≤ ω violated for {:?}",
            m.generators()
        );
    }
}
