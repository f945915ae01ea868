use std::cmp::Ordering;

use bitvec::prelude::*;

use super::{FinRingError, FiniteRing};

/// An ideal of a [`FiniteRing`], stored as a membership bit-vector over element indices.
///
/// Ideals compare by size first and then by their bit-vectors (index 0 first), which is the
/// canonical order used for every list output.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    members: BitVec<u64, Lsb0>,
}

impl Ideal {
    pub(crate) fn from_bits(members: BitVec<u64, Lsb0>) -> Self {
        Ideal { members }
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.get(index).is_some_and(|b| *b)
    }

    /// Number of elements.
    pub fn size(&self) -> usize {
        self.members.count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.members.count_ones() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.all()
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter_ones()
    }

    pub fn bits(&self) -> &BitSlice<u64, Lsb0> {
        &self.members
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.iter_ones().all(|i| other.members[i])
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        let mut members = self.members.clone();
        members &= &other.members;
        Ideal { members }
    }
}

impl Ord for Ideal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Ideal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FiniteRing {
    fn empty_bits(&self) -> BitVec<u64, Lsb0> {
        bitvec![u64, Lsb0; 0; self.order()]
    }

    pub fn zero_ideal(&self) -> Ideal {
        let mut members = self.empty_bits();
        members.set(0, true);
        Ideal { members }
    }

    pub fn unit_ideal(&self) -> Ideal {
        Ideal {
            members: bitvec![u64, Lsb0; 1; self.order()],
        }
    }

    /// `(a) = {r·a : r ∈ R}`; in a commutative unital ring this is already an additive group.
    pub fn principal_ideal(&self, a: usize) -> Ideal {
        let mut members = self.empty_bits();
        for r in 0..self.order() {
            members.set(self.mul(r, a), true);
        }
        Ideal { members }
    }

    /// `I + J`, built as the union of the cosets `I + j`.
    pub fn ideal_sum(&self, i: &Ideal, j: &Ideal) -> Ideal {
        let mut members = i.members.clone();
        for b in j.members() {
            if members[b] {
                continue;
            }
            for a in i.members() {
                members.set(self.add(a, b), true);
            }
        }
        Ideal { members }
    }

    /// `IJ`: the ideal generated by all products `ij`.
    pub fn ideal_product(&self, i: &Ideal, j: &Ideal) -> Ideal {
        let mut products = self.empty_bits();
        for a in i.members() {
            for b in j.members() {
                products.set(self.mul(a, b), true);
            }
        }
        self.generate_from_bits(&products)
    }

    fn generate_from_bits(&self, gens: &BitSlice<u64, Lsb0>) -> Ideal {
        let mut acc = self.zero_ideal();
        for g in gens.iter_ones() {
            if !acc.contains(g) {
                acc = self.ideal_sum(&acc, &self.principal_ideal(g));
            }
        }
        acc
    }

    /// The smallest ideal containing `gens`; the empty list gives the zero ideal.
    pub fn ideal_generate(&self, gens: &[usize]) -> Result<Ideal, FinRingError> {
        let mut bits = self.empty_bits();
        for &g in gens {
            self.check_index(g)?;
            bits.set(g, true);
        }
        Ok(self.generate_from_bits(&bits))
    }

    /// Checks the ideal axioms exhaustively: contains 0, closed under addition and under
    /// multiplication by every ring element.
    pub fn is_ideal(&self, members: &BitSlice<u64, Lsb0>) -> bool {
        if members.len() != self.order() || !members[0] {
            return false;
        }
        let elems: Vec<usize> = members.iter_ones().collect();
        for &a in &elems {
            for &b in &elems {
                if !members[self.add(a, b)] {
                    return false;
                }
            }
            for r in 0..self.order() {
                if !members[self.mul(r, a)] {
                    return false;
                }
            }
        }
        true
    }

    /// Builds an ideal from a membership vector after verifying the ideal axioms.
    pub fn ideal_from_members(&self, members: BitVec<u64, Lsb0>) -> Result<Ideal, FinRingError> {
        if self.is_ideal(&members) {
            Ok(Ideal { members })
        } else {
            Err(FinRingError::Invariant("membership vector is not an ideal".into()))
        }
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self, ideal: &Ideal) -> Vec<usize> {
        let mut acc = self.zero_ideal();
        let mut gens = Vec::new();
        for a in ideal.members() {
            if !acc.contains(a) {
                acc = self.ideal_sum(&acc, &self.principal_ideal(a));
                gens.push(a);
            }
        }
        gens
    }

    /// Prints an ideal through its greedy generators, e.g. `(x)` or `(2, 3x)`; zero prints as `(0)`.
    pub fn format_ideal(&self, ideal: &Ideal) -> String {
        let gens = self.generators(ideal);
        if gens.is_empty() {
            return "(0)".to_string();
        }
        let labels: Vec<&str> = gens.iter().map(|&g| self.label(g)).collect();
        format!("({})", labels.join(", "))
    }
}
