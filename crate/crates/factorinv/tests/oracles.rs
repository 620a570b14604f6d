//! Independent brute-force oracles for the core computations. Everything in
//! here recomputes expected values from first principles (dynamic-programming
//! membership, exhaustive enumeration, boxed scans) without going through the
//! code paths under test.

mod common;

use common::{
    brute_force_factorizations, brute_force_min_z_shifted, monoids_with_generators_up_to,
};
use factorinv::diophantine::{hilbert_basis, kernel_atoms, DiophantineSystem};
use factorinv::factorizations::{betti_elements_from_kernel, r_classes};
use factorinv::invariants::{catenary, catenary_element, omega_element, union_of_lengths};
use factorinv::monoid::{distance, AtomicMonoid, Factorization};
use factorinv::NumericalMonoid;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

#[test]
fn capped_kernel_search_loses_no_atoms() {
    // The kernel computation cuts at the partition-identity depth bound;
    // rerunning the raw solver without any cap must agree wherever it
    // exhausts on its own.
    for gens in [
        &[2i64, 3][..],
        &[5, 7, 9],
        &[6, 8, 9],
        &[11, 13],
        &[4, 10, 21],
    ] {
        let monoid = NumericalMonoid::new(gens).unwrap();
        let capped = kernel_atoms(&monoid).unwrap();
        let raw = hilbert_basis(&monoid.kernel_system()).unwrap();
        let t = monoid.atom_count();
        let mut from_raw: Vec<_> = raw
            .into_iter()
            .map(|v| {
                factorinv::monoid::RelationPair::new(
                    Factorization::new(v[..t].to_vec()),
                    Factorization::new(v[t..].to_vec()),
                )
            })
            .collect();
        from_raw.sort();
        assert_eq!(capped, from_raw, "kernel atoms differ for {gens:?}");
    }
    println!("oracle: depth-capped kernel search equals the uncapped one");
}

#[test]
fn min_z_shifted_matches_brute_force_for_small_monoids() {
    let monoids = monoids_with_generators_up_to(12);
    assert!(monoids.len() > 50, "expected a rich family of test monoids");
    for monoid in &monoids {
        for s in 0..=18i64 {
            let fast = monoid.min_z_shifted(&s).unwrap();
            let slow = brute_force_min_z_shifted(monoid, s);
            assert_eq!(
                fast,
                slow,
                "Min Z({s} + {:?}) disagrees",
                monoid.generators()
            );
        }
    }
    println!(
        "oracle: Apéry-path Min Z(s+S) matches brute force on {} monoids x 19 shifts",
        monoids.len()
    );
}

#[test]
fn omega_element_is_the_definition_on_small_instances() {
    // ω(S, b) per its covering definition: whenever b divides a sum of
    // members, it divides a subsum of at most ω many of them.
    for gens in [&[2i64, 3][..], &[3, 4, 5], &[4, 10, 21]] {
        let monoid = NumericalMonoid::new(gens).unwrap();
        for u in monoid.generators() {
            let omega = omega_element(&monoid, u).unwrap();
            // Upper-bound direction on bounded multisets of members.
            let members: Vec<i64> = (1..=30).filter(|v| monoid.contains(v)).collect();
            let mut stack = vec![Vec::new()];
            while let Some(tuple) = stack.pop() {
                if tuple.len() == 3 {
                    continue;
                }
                for &m in &members {
                    if tuple.last().is_some_and(|&l| m < l) {
                        continue;
                    }
                    let mut next = tuple.clone();
                    next.push(m);
                    let total: i64 = next.iter().sum();
                    if (total - u) % 1 == 0 && monoid.contains(&(total - u)) {
                        // u divides the product; find a small covering subset.
                        let k = next.len();
                        let mut found = false;
                        'subsets: for sub in 1u32..(1 << k) {
                            if (sub.count_ones() as i64) > omega {
                                continue;
                            }
                            let sum: i64 =
                                (0..k).filter(|&i| sub >> i & 1 == 1).map(|i| next[i]).sum();
                            if monoid.contains(&(sum - u)) {
                                found = true;
                                break 'subsets;
                            }
                        }
                        assert!(
                            found,
                            "ω({u}) = {omega} fails to cover {next:?} in {gens:?}"
                        );
                    }
                    stack.push(next);
                }
            }
        }
    }
    println!("oracle: omega covering property verified on bounded member multisets");
}

#[test]
fn hilbert_basis_matches_boxed_brute_force_on_random_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xFAC70);
    let mut nontrivial = 0;
    for round in 0..50 {
        let n = rng.gen_range(2..=4usize);
        let rows = rng.gen_range(1..=2usize);
        let mut sys = DiophantineSystem::new(n);
        for _ in 0..rows {
            let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3i64)).collect();
            if rng.gen_bool(0.4) {
                let modulus = rng.gen_range(2..=4i64);
                sys.push_congruence(coeffs, modulus, 0).unwrap();
            } else {
                sys.push_equation(coeffs, 0).unwrap();
            }
        }
        let basis = hilbert_basis(&sys).unwrap();
        for v in &basis {
            assert!(
                sys.satisfied_by(v).unwrap(),
                "round {round}: {v:?} not a solution"
            );
        }

        // Boxed brute force: every solution in the box must dominate a basis
        // vector, and the boxed minimal solutions are exactly the basis
        // vectors inside the box.
        let b = 6i64;
        let mut boxed: Vec<Vec<i64>> = Vec::new();
        let mut v = vec![0i64; n];
        loop {
            if v.iter().any(|&x| x > 0) && sys.satisfied_by(&v).unwrap() {
                boxed.push(v.clone());
            }
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                v[i] += 1;
                if v[i] <= b {
                    break;
                }
                v[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        for sol in &boxed {
            assert!(
                basis
                    .iter()
                    .any(|h| h.iter().zip(sol).all(|(&a, &s)| a <= s)),
                "round {round}: boxed solution {sol:?} dominates no basis vector"
            );
        }
        let boxed_minimal: Vec<&Vec<i64>> = boxed
            .iter()
            .filter(|s| {
                !boxed
                    .iter()
                    .any(|o| o != *s && o.iter().zip(s.iter()).all(|(&a, &b)| a <= b))
            })
            .collect();
        let basis_in_box: Vec<&Vec<i64>> =
            basis.iter().filter(|h| h.iter().all(|&x| x <= b)).collect();
        let lhs: BTreeSet<&Vec<i64>> = boxed_minimal.into_iter().collect();
        let rhs: BTreeSet<&Vec<i64>> = basis_in_box.into_iter().collect();
        assert_eq!(lhs, rhs, "round {round}: boxed minimal solutions disagree");
        nontrivial += usize::from(!basis.is_empty());
    }
    println!(
        "oracle: Hilbert basis matched boxed brute force on 50 systems ({nontrivial} nonempty)"
    );
}

#[test]
fn catenary_equals_bottleneck_scan_for_small_monoids() {
    for monoid in monoids_with_generators_up_to(12) {
        let by_betti = catenary(&monoid).unwrap();
        let bound = monoid.frobenius() + monoid.multiplicity() * monoid.max_generator();
        let mut by_scan = 0;
        for a in 1..=bound {
            if monoid.contains(&a) {
                by_scan = by_scan.max(catenary_element(&monoid, &a).unwrap());
            }
        }
        assert_eq!(
            by_betti,
            by_scan,
            "catenary mismatch for {:?}",
            monoid.generators()
        );
    }
    println!("oracle: Betti/mu catenary equals per-element bottleneck maxima");
}

#[test]
fn betti_scan_agrees_with_kernel_route_on_small_monoids() {
    for monoid in monoids_with_generators_up_to(9) {
        let scan = monoid.betti_elements().unwrap();
        let kernel = betti_elements_from_kernel(&monoid).unwrap();
        assert_eq!(scan, kernel, "betti mismatch for {:?}", monoid.generators());
    }
    println!("oracle: certified Betti scans match the kernel-atom route");
}

#[test]
fn r_classes_match_independent_component_computation() {
    for gens in [
        &[2i64, 3][..],
        &[3, 4, 5],
        &[5, 7, 9],
        &[4, 10, 21],
        &[5, 6, 9],
    ] {
        let monoid = NumericalMonoid::new(gens).unwrap();
        for a in 1..=60i64 {
            if !monoid.contains(&a) {
                continue;
            }
            let zs = monoid.factorizations(&a).unwrap();
            let classes = r_classes(&monoid, &a).unwrap();
            // Independent partition: repeated merging over shared support.
            let mut labels: Vec<usize> = (0..zs.len()).collect();
            loop {
                let mut changed = false;
                for i in 0..zs.len() {
                    for j in 0..zs.len() {
                        let share = zs[i]
                            .exponents()
                            .iter()
                            .zip(zs[j].exponents())
                            .any(|(&x, &y)| x > 0 && y > 0);
                        if share && labels[i] != labels[j] {
                            let target = labels[i].min(labels[j]);
                            let from = labels[i].max(labels[j]);
                            for l in labels.iter_mut() {
                                if *l == from {
                                    *l = target;
                                }
                            }
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            let independent: BTreeSet<usize> = labels.iter().copied().collect();
            assert_eq!(classes.count(), independent.len(), "{gens:?} at {a}");
            // Cross-class factorizations never share an atom.
            for c1 in 0..classes.count() {
                for c2 in (c1 + 1)..classes.count() {
                    for z1 in &classes.classes[c1] {
                        for z2 in &classes.classes[c2] {
                            assert_eq!(z1.gcd(z2).unwrap().length(), 0);
                        }
                    }
                }
            }
        }
    }
    println!("oracle: R-class partitions match an independent closure computation");
}

#[test]
fn betti_of_coprime_triples_sits_inside_the_formula_candidates() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBE771);
    let mut tested = 0;
    while tested < 10 {
        let mut gens: Vec<i64> = (0..3).map(|_| rng.gen_range(3..=40i64)).collect();
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
        let Ok(monoid) = NumericalMonoid::new(&gens) else {
            continue;
        };
        tested += 1;
        let formula = factorinv::invariants::catenary_three_coprime_formula(&monoid).unwrap();
        let candidates: BTreeSet<i64> = (0..3).map(|i| formula.c[i] * gens[i]).collect();
        for b in monoid.betti_elements().unwrap() {
            assert!(
                candidates.contains(&b),
                "Betti element {b} of {gens:?} outside {candidates:?}"
            );
        }
    }
    println!("oracle: Betti elements of coprime triples are the c_i n_i");
}

#[test]
fn union_rows_match_direct_enumeration() {
    // V_k by enumerating sums of exactly k atoms and their factorizations.
    let monoid = NumericalMonoid::new(&[4, 10, 21]).unwrap();
    for k in 1..=6i64 {
        let row = union_of_lengths(&monoid, k).unwrap();
        let gens = monoid.generators();
        let mut direct: BTreeSet<i64> = BTreeSet::new();
        for a in 0..=(k as usize) {
            for b in 0..=(k as usize - a) {
                let c = k as usize - a - b;
                let total = gens[0] * a as i64 + gens[1] * b as i64 + gens[2] * c as i64;
                for z in brute_force_factorizations(gens, total) {
                    direct.insert(z.length());
                }
            }
        }
        let expected: Vec<i64> = direct.into_iter().collect();
        assert_eq!(row.lengths, expected, "V_{k} disagrees");
    }
    println!("oracle: union rows match direct enumeration");
}

#[test]
fn equal_length_products_are_saturated_in_the_relation_monoid() {
    // Divisibility inside ~S of a product of equal-length atoms always leaves
    // an equal-length quotient.
    let monoid = NumericalMonoid::new(&[3, 4, 5]).unwrap();
    let equal = factorinv::diophantine::equal_kernel_atoms(&monoid).unwrap();
    let nontrivial: Vec<_> = equal.iter().filter(|p| !p.is_diagonal()).collect();
    assert!(!nontrivial.is_empty());
    for p in &nontrivial {
        for q in &nontrivial {
            let z = p.left.add(&q.left).unwrap();
            let w = p.right.add(&q.right).unwrap();
            assert_eq!(z.length(), w.length());
            // Every kernel divisor pair of (z, w) leaves an equal-length
            // complement whenever it is itself equal-length.
            for (x, y) in [(&p.left, &p.right), (&q.left, &q.right)] {
                let zx = z.checked_sub(x).unwrap();
                let wy = w.checked_sub(y).unwrap();
                assert_eq!(monoid.image(&zx).unwrap(), monoid.image(&wy).unwrap());
                assert_eq!(zx.length(), wy.length());
            }
        }
    }
    println!("oracle: equal-length relation monoid is saturated on sampled products");
}

#[test]
fn rho_witnesses_are_kernel_atoms_when_no_split_exists() {
    // When no k in [1, l-1] has rho_k + rho_{l-k} = rho_l, a witness pair for
    // rho_l is an atom of ~S. In ⟨2,3⟩, l = 2 qualifies: rho_1 + rho_1 = 2
    // while rho_2 = 3.
    let monoid = NumericalMonoid::new(&[2, 3]).unwrap();
    let rho: Vec<i64> = (0..=3)
        .map(|k| {
            if k == 0 {
                0
            } else {
                union_of_lengths(&monoid, k).unwrap().rho
            }
        })
        .collect();
    assert_eq!(rho[2], 3);
    assert!(rho[1] + rho[1] != rho[2]);
    let witness_left = Factorization::new(vec![0, 2]); // 2 atoms, image 6
    let witness_right = Factorization::new(vec![3, 0]); // 3 atoms, image 6
    let atoms = kernel_atoms(&monoid).unwrap();
    assert!(atoms
        .iter()
        .any(|p| p.left == witness_left && p.right == witness_right));
    println!("oracle: rho witness pair is an atom of the relation monoid");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn distance_triangle_inequality(
        a in prop::collection::vec(0i64..12, 4),
        b in prop::collection::vec(0i64..12, 4),
        c in prop::collection::vec(0i64..12, 4),
    ) {
        let (za, zb, zc) = (
            Factorization::new(a),
            Factorization::new(b),
            Factorization::new(c),
        );
        let ab = distance(&za, &zb).unwrap();
        let bc = distance(&zb, &zc).unwrap();
        let ac = distance(&za, &zc).unwrap();
        prop_assert!(ac <= ab + bc);
        prop_assert_eq!(ab, distance(&zb, &za).unwrap());
        prop_assert_eq!(ab == 0, za == zb);
    }

    #[test]
    fn distance_translation_invariance(
        a in prop::collection::vec(0i64..12, 4),
        b in prop::collection::vec(0i64..12, 4),
        w in prop::collection::vec(0i64..12, 4),
    ) {
        let (za, zb, zw) = (
            Factorization::new(a),
            Factorization::new(b),
            Factorization::new(w),
        );
        let plain = distance(&za, &zb).unwrap();
        let shifted = distance(&za.add(&zw).unwrap(), &zb.add(&zw).unwrap()).unwrap();
        prop_assert_eq!(plain, shifted);
    }

    #[test]
    fn hilbert_basis_of_random_single_equations_is_sound(
        coeffs in prop::collection::vec(-4i64..=4, 2..=4),
    ) {
        let mut sys = DiophantineSystem::new(coeffs.len());
        sys.push_equation(coeffs, 0).unwrap();
        let basis = hilbert_basis(&sys).unwrap();
        for v in &basis {
            prop_assert!(sys.satisfied_by(v).unwrap());
            prop_assert!(v.iter().any(|&x| x > 0));
        }
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                if i != j {
                    prop_assert!(!a.iter().zip(b).all(|(x, y)| x <= y));
                }
            }
        }
    }
}
