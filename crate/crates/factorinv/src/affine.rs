//! Saturated affine monoids: the non-negative integer solutions of a
//! homogeneous system of linear congruences and equations. Atoms are the
//! Hilbert basis of the system and fix the factorization indices.

use crate::diophantine::{hilbert_basis, minimal_inhomogeneous, DiophantineSystem, Relation};
use crate::monoid::{AtomicMonoid, Factorization};
use crate::{checked_add, checked_mul, Error, Result};
use serde::Deserialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMonoid {
    ambient_dim: usize,
    congruences: Vec<(Vec<i64>, i64)>,
    equations: Vec<Vec<i64>>,
    atoms: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct CongruenceSpec {
    coeffs: Vec<i64>,
    #[serde(rename = "mod")]
    modulus: i64,
}

/// JSON document format for an affine monoid literal.
#[derive(Deserialize)]
struct AffineSpec {
    ambient_dim: usize,
    #[serde(default)]
    congruences: Vec<CongruenceSpec>,
    #[serde(default)]
    equations: Vec<Vec<i64>>,
}

impl AffineMonoid {
    /// Builds the monoid of solutions of the given homogeneous system and
    /// computes its atom list once.
    pub fn new(
        ambient_dim: usize,
        congruences: Vec<(Vec<i64>, i64)>,
        equations: Vec<Vec<i64>>,
    ) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::InvalidSystem(
                "ambient dimension must be >= 1".into(),
            ));
        }
        let mut sys = DiophantineSystem::new(ambient_dim);
        for (coeffs, modulus) in &congruences {
            sys.push_congruence(coeffs.clone(), *modulus, 0)?;
        }
        for coeffs in &equations {
            sys.push_equation(coeffs.clone(), 0)?;
        }
        let atoms = hilbert_basis(&sys)?;
        Ok(AffineMonoid {
            ambient_dim,
            congruences,
            equations,
            atoms,
        })
    }

    /// Parses the JSON literal format, e.g.
    /// `{"ambient_dim":3,"congruences":[{"coeffs":[1,0,1],"mod":2}],"equations":[]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: AffineSpec =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("affine JSON: {e}")))?;
        AffineMonoid::new(
            spec.ambient_dim,
            spec.congruences
                .into_iter()
                .map(|c| (c.coeffs, c.modulus))
                .collect(),
            spec.equations,
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn atoms(&self) -> &[Vec<i64>] {
        &self.atoms
    }

    /// Membership with dimension checking; the solution set is the monoid.
    pub fn member(&self, v: &[i64]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        Ok(self.satisfies(v))
    }

    /// Constraint evaluation in 128-bit arithmetic, total over `ℤⁿ` inputs.
    fn satisfies(&self, v: &[i64]) -> bool {
        if v.iter().any(|&x| x < 0) {
            return false;
        }
        for (coeffs, modulus) in &self.congruences {
            let acc: i128 = coeffs
                .iter()
                .zip(v)
                .map(|(&c, &x)| c as i128 * x as i128)
                .sum();
            if acc.rem_euclid(*modulus as i128) != 0 {
                return false;
            }
        }
        for coeffs in &self.equations {
            let acc: i128 = coeffs
                .iter()
                .zip(v)
                .map(|(&c, &x)| c as i128 * x as i128)
                .sum();
            if acc != 0 {
                return false;
            }
        }
        true
    }

    /// The system `A·x ≥ rhs` over the atom columns, the membership test for
    /// `𝖹(rhs + S)` in a saturated monoid.
    fn shifted_system(&self, rhs: &[i64]) -> Result<DiophantineSystem> {
        let t = self.atoms.len();
        let mut sys = DiophantineSystem::new(t);
        for r in 0..self.ambient_dim {
            let row: Vec<i64> = self.atoms.iter().map(|a| a[r]).collect();
            sys.push_equation(row, rhs[r])?;
        }
        Ok(sys)
    }
}

impl AtomicMonoid for AffineMonoid {
    type Elem = Vec<i64>;

    fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    fn atom_element(&self, i: usize) -> Vec<i64> {
        self.atoms[i].clone()
    }

    fn zero_element(&self) -> Vec<i64> {
        vec![0; self.ambient_dim]
    }

    fn contains(&self, a: &Vec<i64>) -> bool {
        a.len() == self.ambient_dim && self.satisfies(a)
    }

    fn image(&self, z: &Factorization) -> Result<Vec<i64>> {
        if z.num_atoms() != self.atoms.len() {
            return Err(Error::DimensionMismatch {
                expected: self.atoms.len(),
                found: z.num_atoms(),
            });
        }
        let mut acc = vec![0i64; self.ambient_dim];
        for (&e, atom) in z.exponents().iter().zip(&self.atoms) {
            for (slot, &coord) in acc.iter_mut().zip(atom) {
                *slot = checked_add(*slot, checked_mul(e, coord)?)?;
            }
        }
        Ok(acc)
    }

    fn sub_element(&self, a: &Vec<i64>, b: &Vec<i64>) -> Option<Vec<i64>> {
        if a.len() != b.len() || a.iter().zip(b).any(|(&x, &y)| x < y) {
            return None;
        }
        Some(a.iter().zip(b).map(|(&x, &y)| x - y).collect())
    }

    fn kernel_system(&self) -> DiophantineSystem {
        let t = self.atoms.len();
        let mut sys = DiophantineSystem::new(2 * t);
        for r in 0..self.ambient_dim {
            let mut row: Vec<i64> = self.atoms.iter().map(|a| a[r]).collect();
            row.extend(self.atoms.iter().map(|a| -a[r]));
            sys.push_equation(row, 0).expect("dimensions match");
        }
        sys
    }

    fn betti_elements(&self) -> Result<Vec<Vec<i64>>> {
        crate::factorizations::betti_elements_affine_scan(self)
    }

    /// Saturation turns `𝖹(s + S)` into the lattice points of `A·x ≥ s`, so
    /// the minimal factorizations come straight from the Diophantine solver.
    fn min_z_shifted(&self, s: &Vec<i64>) -> Result<Vec<Factorization>> {
        if s.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: s.len(),
            });
        }
        if s.iter().any(|&x| x < 0) {
            return Err(Error::NotInMonoid(format!("{s:?}")));
        }
        if !self.satisfies(s) {
            // s is outside the quotient group: the shifted monoid misses S.
            return Ok(Vec::new());
        }
        let sys = self.shifted_system(s)?;
        let min = minimal_inhomogeneous(&sys, Relation::AtLeast)?;
        Ok(min.into_iter().map(Factorization::new).collect())
    }
}
