//! The Boolean ring of finite and cofinite subsets of ℕ, with symmetric difference as addition and
//! intersection as multiplication.
//!
//! The ring is reduced and satisfies the restricted minimum condition, but it is not Noetherian.
//! Its simple ideals are generated by singletons, so the socle is the ideal of all finite sets and
//! `R/Soc` is the two-element field. Since every essential ideal contains the socle and the
//! quotient by the socle has only two elements, the socle is the only proper essential ideal.
//! That last consequence is derived here rather than stated in the source material.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand_core::RngCore;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::rng::uniform_below;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CofinError {
    #[error("cannot parse '{text}': {message}")]
    Parse { text: String, message: String },
    #[error("an ascending chain needs at least 2 steps, got {0}")]
    ChainTooShort(usize),
}

/// A finite set, or the complement of a finite set.
///
/// `support` is sorted and duplicate free: the set itself when `cofinite` is false, its
/// complement otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoolSet {
    cofinite: bool,
    support: Vec<u64>,
}

fn canonical(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Merge of two sorted lists keeping the elements selected by `keep(in_left, in_right)`.
fn merge(x: &[u64], y: &[u64], keep: impl Fn(bool, bool) -> bool) -> Vec<u64> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(x.len() + y.len());
    while i < x.len() || j < y.len() {
        let ord = match (x.get(i), y.get(j)) {
            (Some(a), Some(b)) => a.cmp(b),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        let (v, l, r) = match ord {
            Ordering::Less => (x[i], true, false),
            Ordering::Greater => (y[j], false, true),
            Ordering::Equal => (x[i], true, true),
        };
        if keep(l, r) {
            out.push(v);
        }
        i += l as usize;
        j += r as usize;
    }
    out
}

impl BoolSet {
    pub fn finite(elems: impl IntoIterator<Item = u64>) -> Self {
        BoolSet {
            cofinite: false,
            support: canonical(elems.into_iter().collect()),
        }
    }

    /// `ℕ` minus the given elements.
    pub fn cofinite(missing: impl IntoIterator<Item = u64>) -> Self {
        BoolSet {
            cofinite: true,
            support: canonical(missing.into_iter().collect()),
        }
    }

    pub fn zero() -> Self {
        BoolSet::finite([])
    }

    pub fn one() -> Self {
        BoolSet::cofinite([])
    }

    /// `{1, ..., k}`.
    pub fn initial_segment(k: u64) -> Self {
        BoolSet::finite(1..=k)
    }

    pub fn is_cofinite(&self) -> bool {
        self.cofinite
    }

    pub fn support(&self) -> &[u64] {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        !self.cofinite && self.support.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.cofinite && self.support.is_empty()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.support.binary_search(&n).is_ok() != self.cofinite
    }

    /// Symmetric difference.
    pub fn add(&self, other: &BoolSet) -> BoolSet {
        BoolSet {
            cofinite: self.cofinite != other.cofinite,
            support: merge(&self.support, &other.support, |l, r| l != r),
        }
    }

    /// Intersection.
    pub fn mul(&self, other: &BoolSet) -> BoolSet {
        let (cofinite, support) = match (self.cofinite, other.cofinite) {
            (false, false) => (false, merge(&self.support, &other.support, |l, r| l && r)),
            (false, true) => (false, merge(&self.support, &other.support, |l, r| l && !r)),
            (true, false) => (false, merge(&self.support, &other.support, |l, r| r && !l)),
            (true, true) => (true, merge(&self.support, &other.support, |l, r| l || r)),
        };
        BoolSet { cofinite, support }
    }

    /// Every element is its own additive inverse.
    pub fn neg(&self) -> BoolSet {
        self.clone()
    }

    pub fn complement(&self) -> BoolSet {
        BoolSet {
            cofinite: !self.cofinite,
            support: self.support.clone(),
        }
    }

    pub fn union(&self, other: &BoolSet) -> BoolSet {
        self.complement().mul(&other.complement()).complement()
    }

    pub fn is_subset(&self, other: &BoolSet) -> bool {
        self.mul(other) == *self
    }

    /// Image in `R/Soc ≅ F₂`: 0 for finite sets, 1 for cofinite ones.
    pub fn soc_projection(&self) -> u8 {
        self.cofinite as u8
    }

    /// A random element: finite or cofinite with equal probability, support a uniform subset of
    /// `0..universe`.
    pub fn random<R: RngCore + ?Sized>(rng: &mut R, universe: u64) -> BoolSet {
        let cofinite = uniform_below(rng, 2) == 1;
        let support = (0..universe).filter(|_| uniform_below(rng, 2) == 1).collect();
        BoolSet { cofinite, support }
    }
}

impl fmt::Display for BoolSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.support.iter().map(u64::to_string).collect();
        let tilde = if self.cofinite { "~" } else { "" };
        write!(f, "{tilde}{{{}}}", items.join(","))
    }
}

impl Serialize for BoolSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for BoolSet {
    type Err = CofinError;

    /// `{1,2,3}` is a finite set and `~{1,2}` the complement of one.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |message: &str| CofinError::Parse {
            text: text.to_string(),
            message: message.to_string(),
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (cofinite, rest) = match compact.strip_prefix('~') {
            Some(r) => (true, r),
            None => (false, compact.as_str()),
        };
        let inner = rest
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| err("expected {..} or ~{..}"))?;
        let support = if inner.is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|t| t.parse::<u64>().map_err(|_| err(&format!("bad element '{t}'"))))
                .collect::<Result<Vec<_>, _>>()?
        };
        Ok(BoolSet {
            cofinite,
            support: canonical(support),
        })
    }
}

/// The ideal `(gens) + Soc` when `plus_socle` is set, or `(gens)` otherwise.
///
/// In a Boolean ring `(g₁, ..., gₖ)` is the principal ideal of the union `U` of the generators,
/// whose members are exactly the subsets of `U`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CofinIdeal {
    pub gens: Vec<BoolSet>,
    pub plus_socle: bool,
}

/// Classification of an ideal with respect to essentiality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Essentiality {
    EssentialProper { quotient_order: u64 },
    EssentialImproper { quotient_order: u64 },
    /// The simple ideal `I({witness})` meets the ideal only in 0.
    NotEssential { witness: u64 },
}

impl CofinIdeal {
    pub fn principal(g: BoolSet) -> Self {
        CofinIdeal {
            gens: vec![g],
            plus_socle: false,
        }
    }

    pub fn socle() -> Self {
        CofinIdeal {
            gens: Vec::new(),
            plus_socle: true,
        }
    }

    pub fn whole() -> Self {
        CofinIdeal::principal(BoolSet::one())
    }

    /// Union of the generators.
    pub fn span(&self) -> BoolSet {
        self.gens.iter().fold(BoolSet::zero(), |acc, g| acc.union(g))
    }

    /// `A ⊆ U`, or with the socle summand, `A \ U` finite.
    pub fn contains(&self, x: &BoolSet) -> bool {
        let outside = x.mul(&self.span().complement());
        outside.is_zero() || (self.plus_socle && !outside.is_cofinite())
    }

    pub fn contains_socle(&self) -> bool {
        self.plus_socle || self.span().is_one()
    }

    pub fn is_subideal_of(&self, other: &CofinIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g)) && (!self.plus_socle || other.contains_socle())
    }

    /// Essential iff the ideal contains every singleton, i.e. the socle. An ideal containing the
    /// socle meets every class of `R/Soc = {[∅], [ℕ]}`, so its quotient has order 1 or 2.
    pub fn classify(&self) -> Essentiality {
        if !self.contains_socle() {
            let span = self.span();
            let witness = (0..).find(|&n| !span.contains(n)).expect("span is not all of ℕ");
            return Essentiality::NotEssential { witness };
        }
        if self.contains(&BoolSet::one()) {
            Essentiality::EssentialImproper { quotient_order: 1 }
        } else {
            Essentiality::EssentialProper { quotient_order: 2 }
        }
    }
}

impl fmt::Display for CofinIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.gens.iter().map(ToString::to_string).collect();
        if parts.is_empty() && !self.plus_socle {
            parts.push("{}".into());
        }
        let mut out = format!("({})", parts.join(", "));
        if self.plus_socle {
            out = if self.gens.is_empty() { "Soc".into() } else { format!("{out} + Soc") };
        }
        f.write_str(&out)
    }
}

/// `I({1}) ⊊ I({1,2}) ⊊ ... ⊊ I({1..n})` with `{k+1}` certifying each strict step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AscendingChain {
    pub ideals: Vec<CofinIdeal>,
    /// `witnesses[k]` lies in `ideals[k + 1]` but not in `ideals[k]`.
    pub witnesses: Vec<BoolSet>,
}

pub fn ascending_chain(n: usize) -> Result<AscendingChain, CofinError> {
    if n < 2 {
        return Err(CofinError::ChainTooShort(n));
    }
    let ideals = (1..=n as u64)
        .map(|k| CofinIdeal::principal(BoolSet::initial_segment(k)))
        .collect();
    let witnesses = (2..=n as u64).map(|k| BoolSet::finite([k])).collect();
    Ok(AscendingChain { ideals, witnesses })
}

impl AscendingChain {
    /// Index of the first step that is not a strict inclusion certified by its witness.
    pub fn first_defect(&self) -> Option<usize> {
        (0..self.witnesses.len()).find(|&k| {
            let (lo, hi, w) = (&self.ideals[k], &self.ideals[k + 1], &self.witnesses[k]);
            !(lo.is_subideal_of(hi) && hi.contains(w) && !lo.contains(w))
        })
    }
}
