//! Brute-force helpers shared by the oracle and acceptance suites. These
//! recompute expected values from first principles, independently of the
//! library code paths they check.
#![allow(dead_code)] // each test binary uses its own subset

use factorinv::monoid::{minimize_factorizations, Factorization};
use factorinv::NumericalMonoid;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All numerical monoids whose minimal generators fit inside `[2, max]`.
pub fn monoids_with_generators_up_to(max: i64) -> Vec<NumericalMonoid> {
    let pool: Vec<i64> = (2..=max).collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << pool.len()) {
        let gens: Vec<i64> = pool
            .iter()
            .enumerate()
            .filter_map(|(i, &g)| (mask >> i & 1 == 1).then_some(g))
            .collect();
        if let Ok(m) = NumericalMonoid::new(&gens) {
            out.push(m);
        }
    }
    out
}

pub fn dp_membership(gens: &[i64], bound: usize) -> Vec<bool> {
    let mut member = vec![false; bound + 1];
    member[0] = true;
    for v in 1..=bound {
        member[v] = gens
            .iter()
            .any(|&g| (g as usize) <= v && member[v - g as usize]);
    }
    member
}

pub fn brute_force_factorizations(gens: &[i64], a: i64) -> Vec<Factorization> {
    fn rec(gens: &[i64], i: usize, left: i64, exps: &mut Vec<i64>, out: &mut Vec<Factorization>) {
        if i == gens.len() {
            if left == 0 {
                out.push(Factorization::new(exps.clone()));
            }
            return;
        }
        let mut k = 0;
        while k * gens[i] <= left {
            exps[i] = k;
            rec(gens, i + 1, left - k * gens[i], exps, out);
            k += 1;
        }
        exps[i] = 0;
    }
    let mut out = Vec::new();
    rec(gens, 0, a, &mut vec![0; gens.len()], &mut out);
    out.sort();
    out
}

/// `Min 𝖹(s + S)` the slow way.
pub fn brute_force_min_z_shifted(monoid: &NumericalMonoid, s: i64) -> Vec<Factorization> {
    let gens = monoid.generators();
    let bound = (2 * gens.last().unwrap() * gens.last().unwrap() + s) as usize;
    let member = dp_membership(gens, bound);
    let mut frobenius = -1i64;
    for v in (0..=bound).rev() {
        if !member[v] {
            frobenius = v as i64;
            break;
        }
    }
    let hi = s + frobenius + gens.last().unwrap();
    let mut all = Vec::new();
    for a in s..=hi {
        if a >= 0 && member[(a - s) as usize] {
            all.extend(brute_force_factorizations(gens, a));
        }
    }
    minimize_factorizations(all)
}

/// Deterministic sample of minimal pairwise-coprime generator triples.
pub fn sample_coprime_triples(seed: u64, count: usize, max: i64) -> Vec<NumericalMonoid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let mut gens: Vec<i64> = (0..3).map(|_| rng.gen_range(2..=max)).collect();
        gens.sort_unstable();
        gens.dedup();
        if gens.len() != 3 {
            continue;
        }
        if num_integer::gcd(gens[0], gens[1]) != 1
            || num_integer::gcd(gens[0], gens[2]) != 1
            || num_integer::gcd(gens[1], gens[2]) != 1
        {
            continue;
        }
        if let Ok(m) = NumericalMonoid::new(&gens) {
            out.push(m);
        }
    }
    out
}

/// Deterministic sample of arbitrary minimal generator systems.
pub fn sample_monoids(seed: u64, count: usize, max: i64) -> Vec<NumericalMonoid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let t = rng.gen_range(2..=5usize);
        let mut gens: Vec<i64> = (0..t).map(|_| rng.gen_range(2..=max)).collect();
        gens.sort_unstable();
        gens.dedup();
        if let Ok(m) = NumericalMonoid::new(&gens) {
            out.push(m);
        }
    }
    out
}

/// Set-of-sets comparison for factorization collections, ignoring order.
pub fn factorization_set(zs: &[Factorization]) -> std::collections::BTreeSet<Vec<i64>> {
    zs.iter().map(|z| z.exponents().to_vec()).collect()
}

/// Asserts a criterion with a visible pass line.
pub fn criterion_pass(name: &str, started: std::time::Instant) {
    println!(
        "criterion {name}: PASS ({:.2}s)",
        started.elapsed().as_secs_f64()
    );
}
