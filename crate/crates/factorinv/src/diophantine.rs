//! Minimal non-negative integer solutions of linear Diophantine systems.
//!
//! The solver is a breadth-first Contejean–Devie search: the frontier starts
//! at the unit vectors and a candidate `t` is extended in direction `j` only
//! when `⟨A·t, A·eⱼ⟩ < 0`, which steers every path towards the solution cone
//! while visiting each minimal solution. Congruence rows are reduced to
//! equations with one non-negative slack variable each, and inhomogeneous
//! systems are homogenized with an extra variable that is capped at 1 during
//! the search.

use crate::monoid::{AtomicMonoid, Factorization, RelationPair};
use crate::{checked_add, checked_mul, Error, Result};
use std::collections::HashSet;

/// One row of a system: a linear equation or a linear congruence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    Equation {
        coeffs: Vec<i64>,
        rhs: i64,
    },
    Congruence {
        coeffs: Vec<i64>,
        modulus: i64,
        rhs: i64,
    },
}

impl Constraint {
    fn coeffs(&self) -> &[i64] {
        match self {
            Constraint::Equation { coeffs, .. } => coeffs,
            Constraint::Congruence { coeffs, .. } => coeffs,
        }
    }

    fn rhs(&self) -> i64 {
        match self {
            Constraint::Equation { rhs, .. } => *rhs,
            Constraint::Congruence { rhs, .. } => *rhs,
        }
    }
}

/// A system of linear constraints over `ℕ₀^num_vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiophantineSystem {
    num_vars: usize,
    rows: Vec<Constraint>,
}

/// How [`minimal_inhomogeneous`] interprets equation rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equals,
    AtLeast,
}

impl DiophantineSystem {
    pub fn new(num_vars: usize) -> Self {
        DiophantineSystem {
            num_vars,
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rows(&self) -> &[Constraint] {
        &self.rows
    }

    pub fn push_equation(&mut self, coeffs: Vec<i64>, rhs: i64) -> Result<()> {
        self.check_coeffs(&coeffs)?;
        self.rows.push(Constraint::Equation { coeffs, rhs });
        Ok(())
    }

    pub fn push_congruence(&mut self, coeffs: Vec<i64>, modulus: i64, rhs: i64) -> Result<()> {
        self.check_coeffs(&coeffs)?;
        if modulus < 1 {
            return Err(Error::InvalidSystem(format!(
                "congruence modulus must be >= 1, got {modulus}"
            )));
        }
        self.rows.push(Constraint::Congruence {
            coeffs,
            modulus,
            rhs,
        });
        Ok(())
    }

    fn check_coeffs(&self, coeffs: &[i64]) -> Result<()> {
        if coeffs.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: coeffs.len(),
            });
        }
        Ok(())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rows.iter().all(|r| r.rhs() == 0)
    }

    /// Evaluates every row at `x`; true when all constraints hold.
    pub fn satisfied_by(&self, x: &[i64]) -> Result<bool> {
        self.check_coeffs(x)?;
        for row in &self.rows {
            let mut acc: i64 = 0;
            for (&c, &v) in row.coeffs().iter().zip(x) {
                acc = checked_add(acc, checked_mul(c, v)?)?;
            }
            let ok = match row {
                Constraint::Equation { rhs, .. } => acc == *rhs,
                Constraint::Congruence { modulus, rhs, .. } => {
                    acc.rem_euclid(*modulus) == rhs.rem_euclid(*modulus)
                }
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A homogeneous equation-only matrix prepared for the search, stored as
/// columns `A·eⱼ`.
struct Expanded {
    columns: Vec<Vec<i64>>,
    /// Index of the homogenization variable, capped at value 1.
    capped: Option<usize>,
    /// How many leading variables are the caller's own.
    num_original: usize,
}

/// Flattens congruences into slack equations; optionally appends the
/// homogenization column `−rhs`.
fn expand(sys: &DiophantineSystem, homogenize: bool) -> Result<Expanded> {
    let n = sys.num_vars;
    let needs_x0 = homogenize && sys.rows.iter().any(|r| r.rhs() != 0);
    if !needs_x0 && !sys.is_homogeneous() {
        return Err(Error::InvalidSystem(
            "hilbert_basis requires a homogeneous system".into(),
        ));
    }

    // Row layout first: every row as (coeffs over n vars ++ optional x0), plus
    // modulus for congruences.
    struct Row {
        coeffs: Vec<i64>,
        x0: i64,
        modulus: Option<i64>,
    }
    let mut rows: Vec<Row> = Vec::new();
    for row in &sys.rows {
        let x0 = -row.rhs();
        match row {
            Constraint::Equation { coeffs, .. } => rows.push(Row {
                coeffs: coeffs.clone(),
                x0,
                modulus: None,
            }),
            Constraint::Congruence {
                coeffs, modulus, ..
            } => {
                // Normalize into [0, d) so the slack stays one-sided.
                let normalized: Vec<i64> = coeffs.iter().map(|&c| c.rem_euclid(*modulus)).collect();
                let x0n = x0.rem_euclid(*modulus);
                if normalized.iter().all(|&c| c == 0) && x0n == 0 {
                    continue; // trivially satisfied
                }
                rows.push(Row {
                    coeffs: normalized,
                    x0: x0n,
                    modulus: Some(*modulus),
                });
            }
        }
    }

    let num_slacks = rows.iter().filter(|r| r.modulus.is_some()).count();
    let x0_index = needs_x0.then_some(n);
    let total = n + usize::from(needs_x0) + num_slacks;

    let mut matrix: Vec<Vec<i64>> = Vec::with_capacity(rows.len());
    let mut slack = n + usize::from(needs_x0);
    for row in &rows {
        let mut full = vec![0i64; total];
        full[..n].copy_from_slice(&row.coeffs);
        if let Some(x0) = x0_index {
            full[x0] = row.x0;
        }
        if let Some(d) = row.modulus {
            full[slack] = -d;
            slack += 1;
        }
        matrix.push(full);
    }

    let columns = (0..total)
        .map(|j| matrix.iter().map(|r| r[j]).collect())
        .collect();
    Ok(Expanded {
        columns,
        capped: x0_index,
        num_original: n,
    })
}

/// Default node budget for the breadth-first search. Partial results are
/// still sound (every emitted vector is a genuine minimal solution), but the
/// basis may be incomplete when the budget trips.
const DEFAULT_NODE_BUDGET: usize = 3_000_000;

struct BasisEntry {
    mask: u128,
    vec: Vec<i64>,
}

/// Support bitmask over the first 128 coordinates; a necessary condition for
/// `b ≤ v` is `mask(b) ⊆ mask(v)`.
fn support_mask(v: &[i64]) -> u128 {
    let mut mask = 0u128;
    for (i, &x) in v.iter().enumerate().take(128) {
        if x > 0 {
            mask |= 1 << i;
        }
    }
    mask
}

fn is_dominated(basis: &[BasisEntry], mask: u128, v: &[i64]) -> bool {
    basis
        .iter()
        .any(|b| b.mask & !mask == 0 && b.vec.iter().zip(v).all(|(&bi, &vi)| bi <= vi))
}

struct Node {
    vec: Vec<i64>,
    val: Vec<i64>,
}

/// How a breadth-first search run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SearchEnd {
    /// The frontier emptied: the emitted set is provably complete.
    Exhausted,
    /// The level cap cut the frontier; complete only if the caller certifies
    /// that no minimal solution lives beyond the cap.
    LevelCapped,
    /// The node budget tripped; the emitted vectors are sound but the set
    /// may be incomplete.
    NodeBudget,
}

/// Breadth-first Contejean–Devie search over the expanded matrix. Returns
/// the minimal solutions found (each one genuine) and how the run ended.
fn search(
    exp: &Expanded,
    max_nodes: usize,
    max_level: Option<usize>,
) -> Result<(Vec<Vec<i64>>, SearchEnd)> {
    let trace = std::env::var_os("FACTORINV_TRACE_SEARCH").is_some();
    let total = exp.columns.len();
    let num_rows = exp.columns.first().map_or(0, |c| c.len());
    let mut basis: Vec<BasisEntry> = Vec::new();
    let mut level = 0usize;
    let mut nodes = total;

    let mut frontier: Vec<Node> = (0..total)
        .map(|j| {
            let mut v = vec![0i64; total];
            v[j] = 1;
            Node {
                vec: v,
                val: exp.columns[j].clone(),
            }
        })
        .collect();

    let mut end = SearchEnd::Exhausted;
    while !frontier.is_empty() {
        level += 1;
        if trace {
            eprintln!(
                "search: level {level}, frontier {}, basis {}, nodes {nodes}",
                frontier.len(),
                basis.len()
            );
        }
        let mut pending: Vec<Node> = Vec::new();
        for node in frontier {
            if node.val.iter().all(|&x| x == 0) {
                let mask = support_mask(&node.vec);
                if !is_dominated(&basis, mask, &node.vec) {
                    basis.push(BasisEntry {
                        mask,
                        vec: node.vec,
                    });
                }
            } else {
                pending.push(node);
            }
        }
        // Cutting at a level boundary keeps every emitted vector a true
        // minimal solution: potential dominators live at lower levels.
        if max_level.is_some_and(|cap| level >= cap) {
            end = SearchEnd::LevelCapped;
            break;
        }
        if nodes > max_nodes {
            end = SearchEnd::NodeBudget;
            break;
        }

        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut next: Vec<Node> = Vec::new();
        for node in &pending {
            for j in 0..total {
                if exp.capped == Some(j) && node.vec[j] >= 1 {
                    continue;
                }
                let mut dot: i128 = 0;
                for r in 0..num_rows {
                    dot += node.val[r] as i128 * exp.columns[j][r] as i128;
                }
                if dot >= 0 {
                    continue;
                }
                let mut w = node.vec.clone();
                w[j] = checked_add(w[j], 1)?;
                if seen.contains(&w) || is_dominated(&basis, support_mask(&w), &w) {
                    continue;
                }
                let mut wval = Vec::with_capacity(num_rows);
                for r in 0..num_rows {
                    wval.push(checked_add(node.val[r], exp.columns[j][r])?);
                }
                seen.insert(w.clone());
                next.push(Node { vec: w, val: wval });
                nodes += 1;
            }
        }
        frontier = next;
    }
    Ok((basis.into_iter().map(|b| b.vec).collect(), end))
}

fn project_and_minimize(solutions: Vec<Vec<i64>>, n: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = solutions
        .into_iter()
        .map(|mut v| {
            v.truncate(n);
            v
        })
        .collect();
    out.sort();
    out.dedup();
    let mut keep = vec![true; out.len()];
    for i in 0..out.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..out.len() {
            if i != j && keep[j] && out[i].iter().zip(&out[j]).all(|(a, b)| a <= b) {
                keep[j] = false;
            }
        }
    }
    out.into_iter()
        .zip(keep)
        .filter_map(|(v, k)| k.then_some(v))
        .collect()
}

/// The Hilbert basis of a homogeneous system: every non-negative solution is
/// a sum of returned vectors, and the returned vectors are the
/// componentwise-minimal nonzero solutions.
pub fn hilbert_basis(sys: &DiophantineSystem) -> Result<Vec<Vec<i64>>> {
    if !sys.is_homogeneous() {
        return Err(Error::InvalidSystem(
            "hilbert_basis requires all right-hand sides to be zero".into(),
        ));
    }
    let exp = expand(sys, false)?;
    let (basis, end) = search(&exp, DEFAULT_NODE_BUDGET, None)?;
    if end != SearchEnd::Exhausted {
        return Err(Error::ResourceLimit(
            "Hilbert basis search exceeded its node budget".into(),
        ));
    }
    Ok(project_and_minimize(basis, exp.num_original))
}

/// Budgeted variant: the returned vectors are always genuine minimal
/// solutions, and the flag reports whether they are all of them.
pub fn hilbert_basis_budgeted(
    sys: &DiophantineSystem,
    max_nodes: usize,
) -> Result<(Vec<Vec<i64>>, bool)> {
    if !sys.is_homogeneous() {
        return Err(Error::InvalidSystem(
            "hilbert_basis requires all right-hand sides to be zero".into(),
        ));
    }
    let exp = expand(sys, false)?;
    let (basis, end) = search(&exp, max_nodes, None)?;
    Ok((
        project_and_minimize(basis, exp.num_original),
        end == SearchEnd::Exhausted,
    ))
}

/// Minimal solutions of `A·x ≥ s` (or `= s`) for non-negative `A` and `s` by
/// breadth-first covering: a node below a minimal solution always extends
/// along a column that serves its first deficient row, so branching on that
/// row alone reaches every minimal solution without slack variables.
fn minimal_covers(
    rows: &[Vec<i64>],
    rhs: &[i64],
    num_vars: usize,
    exact: bool,
) -> Result<Vec<Vec<i64>>> {
    let m = rows.len();
    let value = |v: &[i64]| -> Result<Vec<i64>> {
        let mut out = Vec::with_capacity(m);
        for row in rows {
            let mut acc = 0i64;
            for (&c, &x) in row.iter().zip(v) {
                acc = checked_add(acc, checked_mul(c, x)?)?;
            }
            out.push(acc);
        }
        Ok(out)
    };

    let mut minimal: Vec<Vec<i64>> = Vec::new();
    let mut frontier: Vec<Vec<i64>> = vec![vec![0; num_vars]];
    while !frontier.is_empty() {
        let mut next: HashSet<Vec<i64>> = HashSet::new();
        for v in frontier {
            let vals = value(&v)?;
            if exact && vals.iter().zip(rhs).any(|(&a, &b)| a > b) {
                continue;
            }
            let deficient = (0..m).find(|&r| vals[r] < rhs[r]);
            match deficient {
                None => {
                    if !exact || vals.iter().zip(rhs).all(|(&a, &b)| a == b) {
                        if !minimal
                            .iter()
                            .any(|w| w.iter().zip(&v).all(|(&wi, &vi)| wi <= vi))
                        {
                            minimal.push(v);
                        }
                    }
                }
                Some(r) => {
                    for j in 0..num_vars {
                        if rows[r][j] <= 0 {
                            continue;
                        }
                        let mut w = v.clone();
                        w[j] = checked_add(w[j], 1)?;
                        if minimal
                            .iter()
                            .any(|b| b.iter().zip(&w).all(|(&bi, &wi)| bi <= wi))
                        {
                            continue;
                        }
                        next.insert(w);
                    }
                }
            }
        }
        frontier = next.into_iter().collect();
    }
    minimal.sort();
    Ok(minimal)
}

/// The componentwise-minimal solutions of an inhomogeneous system, read as
/// `A·x = rhs` or `A·x ≥ rhs` row by row. An infeasible system yields the
/// empty list.
pub fn minimal_inhomogeneous(sys: &DiophantineSystem, relation: Relation) -> Result<Vec<Vec<i64>>> {
    // Fast path: non-negative equation systems are covering problems.
    let coverable = sys.rows.iter().all(|row| {
        matches!(row, Constraint::Equation { coeffs, rhs }
            if *rhs >= 0 && coeffs.iter().all(|&c| c >= 0))
    });
    if coverable {
        let rows: Vec<Vec<i64>> = sys.rows.iter().map(|r| r.coeffs().to_vec()).collect();
        let rhs: Vec<i64> = sys.rows.iter().map(|r| r.rhs()).collect();
        return minimal_covers(&rows, &rhs, sys.num_vars, relation == Relation::Equals);
    }

    let mut work = sys.clone();
    if relation == Relation::AtLeast {
        // One slack per row turns A·x ≥ b into A·x − w = b.
        let n = sys.num_vars;
        let m = sys.rows.len();
        work = DiophantineSystem::new(n + m);
        for (r, row) in sys.rows.iter().enumerate() {
            let Constraint::Equation { coeffs, rhs } = row else {
                return Err(Error::InvalidSystem(
                    "at-least systems must consist of equation rows".into(),
                ));
            };
            let mut c = coeffs.clone();
            c.resize(n + m, 0);
            c[n + r] = -1;
            work.push_equation(c, *rhs)?;
        }
    }

    if work.is_homogeneous() {
        // Degenerate case: the zero vector is the unique minimal solution.
        return Ok(vec![vec![0; sys.num_vars]]);
    }

    let exp = expand(&work, true)?;
    let x0 = exp.capped.expect("inhomogeneous system homogenizes");
    let (basis, end) = search(&exp, DEFAULT_NODE_BUDGET, None)?;
    if end != SearchEnd::Exhausted {
        return Err(Error::ResourceLimit(
            "minimal-solution search exceeded its node budget".into(),
        ));
    }
    let picked: Vec<Vec<i64>> = basis.into_iter().filter(|v| v[x0] == 1).collect();
    Ok(project_and_minimize(picked, sys.num_vars))
}

/// Atoms of the monoid of relations `~S`, as the Hilbert basis of
/// `{(x, y) : π(x) = π(y)}`. Contains the diagonal atoms `(eᵢ, eᵢ)`.
pub fn kernel_atoms<M: AtomicMonoid>(monoid: &M) -> Result<Vec<RelationPair>> {
    let (pairs, complete) = kernel_atoms_budgeted(monoid, DEFAULT_NODE_BUDGET)?;
    if !complete {
        return Err(Error::ResourceLimit(
            "the relation monoid has too many atoms for exhaustive search".into(),
        ));
    }
    Ok(pairs)
}

/// Budgeted kernel atoms: every returned pair is a genuine atom of `~S`; the
/// flag says whether the list is exhaustive. A certified level cap from the
/// monoid keeps the search from wandering and preserves completeness.
pub fn kernel_atoms_budgeted<M: AtomicMonoid>(
    monoid: &M,
    max_nodes: usize,
) -> Result<(Vec<RelationPair>, bool)> {
    let sys = monoid.kernel_system();
    let t = monoid.atom_count();
    let exp = expand(&sys, false)?;
    let (basis, end) = search(&exp, max_nodes, monoid.kernel_level_cap())?;
    // Hitting a certified level cap is still exhaustive; only the node
    // budget leaves the set possibly incomplete.
    let complete = end != SearchEnd::NodeBudget;
    let mut pairs: Vec<RelationPair> = basis
        .into_iter()
        .map(|v| {
            RelationPair::new(
                Factorization::new(v[..t].to_vec()),
                Factorization::new(v[t..].to_vec()),
            )
        })
        .collect();
    pairs.sort();
    Ok((pairs, complete))
}

/// Atoms of the monoid of equal-length relations: kernel pairs with the
/// additional row `|x| = |y|`. No certified depth cap is known here, so the
/// result is complete only when the search exhausts on its own; otherwise a
/// resource error is returned rather than an under-approximation.
pub fn equal_kernel_atoms<M: AtomicMonoid>(monoid: &M) -> Result<Vec<RelationPair>> {
    let mut sys = monoid.kernel_system();
    let t = monoid.atom_count();
    let mut coeffs = vec![1i64; t];
    coeffs.extend(std::iter::repeat(-1i64).take(t));
    sys.push_equation(coeffs, 0)?;
    let exp = expand(&sys, false)?;
    // No certified depth cap is known for the equal-length kernel, so only a
    // natural exhaustion counts as complete. Near-infeasible defect cones can
    // wander for a long time, hence the tighter node budget.
    let (basis, end) = search(&exp, 500_000, None)?;
    if end != SearchEnd::Exhausted {
        return Err(Error::ResourceLimit(
            "equal-length relation atoms are out of reach for this monoid".into(),
        ));
    }
    let mut pairs: Vec<RelationPair> = basis
        .into_iter()
        .map(|v| {
            RelationPair::new(
                Factorization::new(v[..t].to_vec()),
                Factorization::new(v[t..].to_vec()),
            )
        })
        .collect();
    pairs.sort();
    Ok(pairs)
}
