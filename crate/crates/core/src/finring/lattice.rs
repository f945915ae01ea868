//! The ideal lattice of a finite ring and the structure read off it.

use std::collections::HashSet;

use bitvec::prelude::*;

use super::{FinRingError, FiniteRing, Ideal};

/// Outcome of trying to split a ring into a product of fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Fields(FieldDecomposition),
    /// The ring is not reduced; `witness` is a nonzero nilpotent element.
    Nilpotent { witness: usize },
}

impl Decomposition {
    pub fn is_fields(&self) -> bool {
        matches!(self, Decomposition::Fields(_))
    }
}

/// `R ≅ R/M_1 × … × R/M_k` for pairwise comaximal maximal ideals `M_i` meeting in zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDecomposition {
    pub maximals: Vec<Ideal>,
    /// `|R/M_i|` for each maximal ideal, in the same order.
    pub field_orders: Vec<usize>,
    pub certificates: Vec<Comaximality>,
}

impl FieldDecomposition {
    /// Field descriptors such as `F2`, `F9`.
    pub fn field_names(&self) -> Vec<String> {
        self.field_orders.iter().map(|q| format!("F{q}")).collect()
    }
}

/// Witness that `M_first + M_second = R`: `left ∈ M_first`, `right ∈ M_second`, `left + right = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comaximality {
    pub first: usize,
    pub second: usize,
    pub left: usize,
    pub right: usize,
}

impl FiniteRing {
    fn check_enumeration_cap(&self) -> Result<(), FinRingError> {
        let cap = self.limits().enumeration_cap;
        if self.order() > cap {
            Err(FinRingError::EnumerationCap {
                order: self.order(),
                cap,
            })
        } else {
            Ok(())
        }
    }

    /// Distinct principal ideals `(a)`, including the zero ideal, in canonical order.
    pub fn principal_ideals(&self) -> Vec<Ideal> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for a in 0..self.order() {
            let p = self.principal_ideal(a);
            if seen.insert(p.clone()) {
                out.push(p);
            }
        }
        out.sort();
        out
    }

    /// Every ideal of the ring, in canonical (size, bit-vector) order.
    ///
    /// Every ideal is a finite sum of principal ideals, so closing the principal ideals under
    /// pairwise sums reaches the whole lattice.
    pub fn enumerate_ideals(&self) -> Result<Vec<Ideal>, FinRingError> {
        self.check_enumeration_cap()?;
        let mut all = self.principal_ideals();
        let mut seen: HashSet<Ideal> = all.iter().cloned().collect();
        let mut i = 0;
        while i < all.len() {
            for j in 0..i {
                if all[i].is_subset(&all[j]) || all[j].is_subset(&all[i]) {
                    continue;
                }
                let sum = self.ideal_sum(&all[i], &all[j]);
                if seen.insert(sum.clone()) {
                    all.push(sum);
                }
            }
            i += 1;
        }
        all.sort();
        Ok(all)
    }

    /// Nonzero ideals with no nonzero ideal strictly below them.
    ///
    /// A nonzero ideal strictly below `(a)` contains some nonzero `(b)`, so minimality among
    /// principal ideals is minimality in the whole lattice.
    pub fn minimal_ideals(&self) -> Vec<Ideal> {
        let nonzero: Vec<Ideal> = self
            .principal_ideals()
            .into_iter()
            .filter(|p| !p.is_zero())
            .collect();
        nonzero
            .iter()
            .filter(|p| !nonzero.iter().any(|q| q != *p && q.is_subset(p)))
            .cloned()
            .collect()
    }

    /// The socle: sum of all minimal ideals.
    pub fn socle(&self) -> Ideal {
        self.minimal_ideals()
            .iter()
            .fold(self.zero_ideal(), |acc, m| self.ideal_sum(&acc, m))
    }

    /// Whether `e` meets every nonzero ideal nontrivially.
    ///
    /// A minimal ideal meets `e` either in zero or entirely, and every nonzero ideal contains a
    /// minimal one, so it suffices to test the minimal ideals.
    pub fn is_essential(&self, e: &Ideal) -> bool {
        self.minimal_ideals().iter().all(|m| m.is_subset(e))
    }

    /// The definitional test, quantifying over the whole enumerated lattice.
    pub fn is_essential_by_definition(&self, e: &Ideal) -> Result<bool, FinRingError> {
        Ok(self
            .enumerate_ideals()?
            .iter()
            .filter(|j| !j.is_zero())
            .all(|j| !j.intersection(e).is_zero()))
    }

    pub fn is_nilpotent(&self, a: usize) -> bool {
        // a^k = 0 for some k <= order iff a^(2^t) = 0 once 2^t >= order
        let mut p = a;
        let mut reach = 1usize;
        while reach < self.order() {
            p = self.mul(p, p);
            reach *= 2;
        }
        p == 0
    }

    /// The set of nilpotent elements.
    pub fn nilradical(&self) -> Ideal {
        let mut members = bitvec![u64, Lsb0; 0; self.order()];
        for a in 0..self.order() {
            if self.is_nilpotent(a) {
                members.set(a, true);
            }
        }
        Ideal::from_bits(members)
    }

    pub fn is_reduced(&self) -> bool {
        self.nilradical().is_zero()
    }

    /// Exhaustive primality test: proper, and `ab ∈ P` forces `a ∈ P` or `b ∈ P`.
    pub fn is_prime_ideal(&self, p: &Ideal) -> bool {
        !p.is_whole() && self.non_prime_witness(p).is_none()
    }

    /// For a proper non-prime ideal `I`, a pair `a, b ∉ I` with `ab ∈ I`.
    ///
    /// Pairs whose product generates `I` are preferred; among those (and then among all pairs)
    /// the lexicographically least index pair wins.
    pub fn non_prime_witness(&self, ideal: &Ideal) -> Option<(usize, usize)> {
        if ideal.is_whole() {
            return None;
        }
        let outside: Vec<usize> = (0..self.order()).filter(|&a| !ideal.contains(a)).collect();
        let mut fallback = None;
        for (k, &a) in outside.iter().enumerate() {
            for &b in &outside[k..] {
                let ab = self.mul(a, b);
                if !ideal.contains(ab) {
                    continue;
                }
                if self.principal_ideal(ab) == *ideal {
                    return Some((a, b));
                }
                fallback.get_or_insert((a, b));
            }
        }
        fallback
    }

    /// All prime ideals. Every prime of a finite ring is maximal; that is verified here.
    pub fn prime_spectrum(&self) -> Result<Vec<Ideal>, FinRingError> {
        let ideals = self.enumerate_ideals()?;
        let primes: Vec<Ideal> = ideals
            .iter()
            .filter(|p| !p.is_whole() && self.is_prime_ideal(p))
            .cloned()
            .collect();
        for p in &primes {
            let between = ideals
                .iter()
                .any(|j| !j.is_whole() && j != p && p.is_subset(j));
            if between {
                return Err(FinRingError::Invariant(format!(
                    "prime ideal {} of {} is not maximal",
                    self.format_ideal(p),
                    self.descriptor()
                )));
            }
        }
        Ok(primes)
    }

    /// Intersection of all maximal ideals.
    pub fn jacobson_radical(&self) -> Result<Ideal, FinRingError> {
        Ok(self
            .prime_spectrum()?
            .iter()
            .fold(self.unit_ideal(), |acc, m| acc.intersection(m)))
    }

    /// Whether `I^k = 0` for some `k`.
    pub fn is_nilpotent_ideal(&self, ideal: &Ideal) -> bool {
        let mut power = ideal.clone();
        loop {
            if power.is_zero() {
                return true;
            }
            let next = self.ideal_product(&power, ideal);
            if next == power {
                return false;
            }
            power = next;
        }
    }

    /// Every nonzero element is a unit.
    pub fn is_field(&self) -> bool {
        (1..self.order()).all(|a| (1..self.order()).any(|b| self.mul(a, b) == self.identity()))
    }

    /// Splits a reduced ring into fields via its maximal ideals, or returns a nilpotent witness.
    pub fn decompose_fields(&self) -> Result<Decomposition, FinRingError> {
        if let Some(witness) = (1..self.order()).find(|&a| self.is_nilpotent(a)) {
            return Ok(Decomposition::Nilpotent { witness });
        }
        let maximals = self.prime_spectrum()?;
        let field_orders: Vec<usize> = maximals.iter().map(|m| self.order() / m.size()).collect();
        let mut certificates = Vec::new();
        for i in 0..maximals.len() {
            for j in i + 1..maximals.len() {
                let left = maximals[i]
                    .members()
                    .find(|&m| maximals[j].contains(self.sub(self.identity(), m)))
                    .ok_or_else(|| {
                        FinRingError::Invariant(format!(
                            "maximal ideals {} and {} are not comaximal",
                            self.format_ideal(&maximals[i]),
                            self.format_ideal(&maximals[j])
                        ))
                    })?;
                certificates.push(Comaximality {
                    first: i,
                    second: j,
                    left,
                    right: self.sub(self.identity(), left),
                });
            }
        }
        let meet = maximals
            .iter()
            .fold(self.unit_ideal(), |acc, m| acc.intersection(m));
        if !meet.is_zero() || field_orders.iter().product::<usize>() != self.order() {
            return Err(FinRingError::Invariant(format!(
                "reduced ring {} does not split into its residue fields",
                self.descriptor()
            )));
        }
        Ok(Decomposition::Fields(FieldDecomposition {
            maximals,
            field_orders,
            certificates,
        }))
    }

    /// Length of a maximal chain of ideals from 0 to R (all such chains have equal length).
    pub fn composition_length(&self) -> Result<usize, FinRingError> {
        let ideals = self.enumerate_ideals()?;
        // ideals are sorted by size, so every proper subideal precedes its superideals
        let mut height = vec![0usize; ideals.len()];
        for j in 1..ideals.len() {
            height[j] = (0..j)
                .filter(|&k| ideals[k].size() < ideals[j].size() && ideals[k].is_subset(&ideals[j]))
                .map(|k| height[k] + 1)
                .max()
                .unwrap_or(0);
        }
        Ok(*height.last().unwrap())
    }

    /// Whether the polynomial ring `R[x]` satisfies the restricted minimum condition. A finite
    /// ring is Artinian, so this is exactly reducedness.
    pub fn rm_poly_criterion(&self) -> bool {
        self.is_reduced()
    }
}
