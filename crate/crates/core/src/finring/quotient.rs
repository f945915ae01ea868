use std::collections::HashSet;
use std::sync::Arc;

use bitvec::prelude::*;

use super::{Arithmetic, FinRingError, FiniteRing, Ideal};

struct CosetArith {
    parent: FiniteRing,
    reps: Vec<usize>,
    proj: Vec<usize>,
}

impl Arithmetic for CosetArith {
    fn add(&self, a: usize, b: usize) -> usize {
        self.proj[self.parent.add(self.reps[a], self.reps[b])]
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.proj[self.parent.mul(self.reps[a], self.reps[b])]
    }

    fn neg(&self, a: usize) -> usize {
        self.proj[self.parent.neg(self.reps[a])]
    }
}

/// `R/I` together with the canonical projection.
///
/// Cosets are numbered in order of their least element, which also serves as the representative.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub ring: FiniteRing,
    pub parent: FiniteRing,
    pub kernel: Ideal,
    /// Image of each parent element.
    pub projection: Vec<usize>,
    /// Least parent element of each coset.
    pub representatives: Vec<usize>,
}

impl FiniteRing {
    /// The quotient ring `R/I`. Quotienting by the zero ideal returns `R` itself.
    pub fn quotient(&self, ideal: &Ideal) -> Result<Quotient, FinRingError> {
        if ideal.is_whole() {
            return Err(FinRingError::NotProper);
        }
        let n = self.order();
        if ideal.is_zero() {
            return Ok(Quotient {
                ring: self.clone(),
                parent: self.clone(),
                kernel: ideal.clone(),
                projection: (0..n).collect(),
                representatives: (0..n).collect(),
            });
        }
        let mut proj = vec![usize::MAX; n];
        let mut reps = Vec::with_capacity(n / ideal.size());
        for a in 0..n {
            if proj[a] != usize::MAX {
                continue;
            }
            for i in ideal.members() {
                proj[self.add(a, i)] = reps.len();
            }
            reps.push(a);
        }
        let labels = reps.iter().map(|&r| format!("[{}]", self.label(r))).collect();
        let base = if self.descriptor().contains(' ') {
            format!("({})", self.descriptor())
        } else {
            self.descriptor().to_string()
        };
        let descriptor = format!("{base}/{}", self.format_ideal(ideal));
        let identity = proj[self.identity()];
        let order = reps.len();
        let arith = CosetArith {
            parent: self.clone(),
            reps: reps.clone(),
            proj: proj.clone(),
        };
        let ring = FiniteRing::from_arithmetic(
            descriptor,
            order,
            identity,
            labels,
            Arc::new(arith),
            self.limits(),
        )?;
        Ok(Quotient {
            ring,
            parent: self.clone(),
            kernel: ideal.clone(),
            projection: proj,
            representatives: reps,
        })
    }
}

impl Quotient {
    /// Image of an ideal of the parent ring.
    pub fn image(&self, ideal: &Ideal) -> Ideal {
        let mut bits = bitvec![u64, Lsb0; 0; self.ring.order()];
        for a in ideal.members() {
            bits.set(self.projection[a], true);
        }
        Ideal::from_bits(bits)
    }

    /// Preimage of an ideal of the quotient ring.
    pub fn preimage(&self, ideal: &Ideal) -> Ideal {
        let mut bits = bitvec![u64, Lsb0; 0; self.parent.order()];
        for (a, &p) in self.projection.iter().enumerate() {
            if ideal.contains(p) {
                bits.set(a, true);
            }
        }
        Ideal::from_bits(bits)
    }

    /// Checks the lattice correspondence between ideals of `R/I` and ideals of `R` containing
    /// `I`: the preimage map is a bijection onto the interval `[I, R]`, it matches primes with
    /// primes, and preimages of essential ideals are essential.
    pub fn check_correspondence(&self) -> Result<(), FinRingError> {
        let fail = |what: String| Err(FinRingError::Invariant(what));
        let upstairs: Vec<Ideal> = self
            .parent
            .enumerate_ideals()?
            .into_iter()
            .filter(|j| self.kernel.is_subset(j))
            .collect();
        let downstairs = self.ring.enumerate_ideals()?;
        if upstairs.len() != downstairs.len() {
            return fail(format!(
                "{} has {} ideals but {} ideals of {} contain the kernel",
                self.ring.descriptor(),
                downstairs.len(),
                upstairs.len(),
                self.parent.descriptor()
            ));
        }
        let pulled: HashSet<Ideal> = downstairs.iter().map(|j| self.preimage(j)).collect();
        if pulled.len() != downstairs.len() || !upstairs.iter().all(|j| pulled.contains(j)) {
            return fail("preimage is not a bijection onto the ideals above the kernel".into());
        }
        for j in &downstairs {
            let up = self.preimage(j);
            if self.image(&up) != *j {
                return fail("image of preimage differs".into());
            }
            if self.ring.is_prime_ideal(j) != self.parent.is_prime_ideal(&up) {
                return fail(format!(
                    "primality of {} is not preserved",
                    self.ring.format_ideal(j)
                ));
            }
            if self.ring.is_essential(j) && !self.parent.is_essential(&up) {
                return fail(format!(
                    "preimage of essential ideal {} is not essential",
                    self.ring.format_ideal(j)
                ));
            }
        }
        Ok(())
    }
}
