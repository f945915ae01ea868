//! Finite commutative rings `Z_n[x]/(f)` and finite products of them.
//!
//! Elements are plain indices `0..order`. Index 0 is always the zero element. Rings built from a
//! descriptor use a mixed-radix encoding: each local factor contributes the coefficient vector
//! `c_0 + c_1 x + ...` read as a base-`n` number (constant term least significant), and the first
//! factor is the least significant block.
//!
//! Ideals are membership bit-vectors over the element indices; see [`Ideal`].

mod descriptor;
mod ideal;
mod lattice;
mod quotient;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use descriptor::{format_poly, LocalFactor};
pub use ideal::Ideal;
pub use lattice::{FieldDecomposition, Comaximality, Decomposition};
pub use quotient::Quotient;

/// Rings of at most this order cache full addition and multiplication tables.
const TABLE_LIMIT: usize = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FinRingError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("polynomial at position {pos} is not monic (leading coefficient {leading})")]
    NonMonic { pos: usize, leading: i128 },
    #[error("ring order {order} exceeds the element cap {cap}")]
    OrderCap { order: String, cap: usize },
    #[error("ring order {order} exceeds the ideal enumeration cap {cap}")]
    EnumerationCap { order: usize, cap: usize },
    #[error("element index {index} out of range for a ring of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("cannot form the quotient by the whole ring")]
    NotProper,
    #[error("unknown element '{0}'")]
    UnknownElement(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Size limits for construction and ideal-lattice enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingLimits {
    pub element_cap: usize,
    pub enumeration_cap: usize,
}

impl Default for RingLimits {
    fn default() -> Self {
        RingLimits {
            element_cap: 4096,
            enumeration_cap: 512,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElemOp {
    Add,
    Mul,
    Neg,
}

/// Element arithmetic of a finite ring on indices `0..order`.
///
/// Implementations must describe a commutative unital ring with zero at index 0.
pub trait Arithmetic: Send + Sync {
    fn add(&self, a: usize, b: usize) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn neg(&self, a: usize) -> usize;
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

/// A finite commutative ring with exact arithmetic on element indices.
///
/// Cloning is cheap; all heavy state is shared.
#[derive(Clone)]
pub struct FiniteRing {
    descriptor: String,
    order: usize,
    identity: usize,
    factors: Vec<LocalFactor>,
    limits: RingLimits,
    arith: Arc<dyn Arithmetic>,
    tables: Option<Arc<Tables>>,
    labels: Arc<Vec<String>>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("descriptor", &self.descriptor)
            .field("order", &self.order)
            .finish()
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor)
    }
}

/// Parses a ring descriptor with the default limits.
pub fn parse_ring(spec: &str) -> Result<FiniteRing, FinRingError> {
    parse_ring_with(spec, RingLimits::default())
}

pub fn parse_ring_with(spec: &str, limits: RingLimits) -> Result<FiniteRing, FinRingError> {
    let factors = descriptor::parse_factors(spec)?;
    FiniteRing::from_factors(factors, limits)
}

struct PolyArith {
    factors: Vec<LocalFactor>,
    // (stride, block size) of each factor inside the mixed-radix index
    layout: Vec<(usize, usize)>,
}

impl PolyArith {
    fn split(&self, idx: usize) -> Vec<Vec<u64>> {
        self.factors
            .iter()
            .zip(&self.layout)
            .map(|(f, &(stride, size))| {
                let mut local = (idx / stride) % size;
                let n = f.modulus as usize;
                (0..f.degree())
                    .map(|_| {
                        let c = local % n;
                        local /= n;
                        c as u64
                    })
                    .collect()
            })
            .collect()
    }

    fn join(&self, parts: &[Vec<u64>]) -> usize {
        parts
            .iter()
            .zip(&self.factors)
            .zip(&self.layout)
            .map(|((coeffs, f), &(stride, _))| {
                let n = f.modulus as usize;
                coeffs.iter().rev().fold(0, |acc, &c| acc * n + c as usize) * stride
            })
            .sum()
    }

    fn local_mul(f: &LocalFactor, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = f.modulus;
        let d = f.degree();
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % n;
            }
        }
        if let Some(poly) = &f.poly {
            // x^d = -(p_0 + ... + p_{d-1} x^{d-1})
            for k in (d..prod.len()).rev() {
                let c = prod[k];
                if c == 0 {
                    continue;
                }
                prod[k] = 0;
                for (j, &p) in poly[..d].iter().enumerate() {
                    let t = prod[k - d + j] + (n - c) * p % n;
                    prod[k - d + j] = t % n;
                }
            }
        }
        prod.truncate(d);
        prod
    }
}

impl Arithmetic for PolyArith {
    fn add(&self, a: usize, b: usize) -> usize {
        let (pa, pb) = (self.split(a), self.split(b));
        let sum: Vec<Vec<u64>> = pa
            .iter()
            .zip(&pb)
            .zip(&self.factors)
            .map(|((x, y), f)| x.iter().zip(y).map(|(u, v)| (u + v) % f.modulus).collect())
            .collect();
        self.join(&sum)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (pa, pb) = (self.split(a), self.split(b));
        let prod: Vec<Vec<u64>> = pa
            .iter()
            .zip(&pb)
            .zip(&self.factors)
            .map(|((x, y), f)| Self::local_mul(f, x, y))
            .collect();
        self.join(&prod)
    }

    fn neg(&self, a: usize) -> usize {
        let parts: Vec<Vec<u64>> = self
            .split(a)
            .iter()
            .zip(&self.factors)
            .map(|(x, f)| x.iter().map(|&u| (f.modulus - u) % f.modulus).collect())
            .collect();
        self.join(&parts)
    }
}

impl FiniteRing {
    fn from_factors(factors: Vec<LocalFactor>, limits: RingLimits) -> Result<Self, FinRingError> {
        let mut order: u128 = 1;
        let mut layout = Vec::with_capacity(factors.len());
        for f in &factors {
            let size = (f.modulus as u128).checked_pow(f.degree() as u32);
            let next = size.and_then(|s| order.checked_mul(s));
            match next {
                Some(o) if o <= limits.element_cap as u128 => {
                    layout.push((order as usize, size.unwrap() as usize));
                    order = o;
                }
                _ => {
                    return Err(FinRingError::OrderCap {
                        order: next.map_or("overflow".into(), |o| o.to_string()),
                        cap: limits.element_cap,
                    })
                }
            }
        }
        let arith = PolyArith {
            factors: factors.clone(),
            layout,
        };
        let one: Vec<Vec<u64>> = factors
            .iter()
            .map(|f| {
                let mut c = vec![0; f.degree()];
                c[0] = 1;
                c
            })
            .collect();
        let identity = arith.join(&one);
        let order = order as usize;
        let labels = (0..order)
            .map(|i| {
                let parts: Vec<String> = arith.split(i).iter().map(|c| format_poly(c)).collect();
                if parts.len() == 1 {
                    parts.into_iter().next().unwrap()
                } else {
                    format!("({})", parts.join(", "))
                }
            })
            .collect();
        let ring = FiniteRing::from_arithmetic(
            descriptor::format_descriptor(&factors),
            order,
            identity,
            labels,
            Arc::new(arith),
            limits,
        )?;
        Ok(FiniteRing { factors, ..ring })
    }

    /// Wraps an arbitrary arithmetic as a ring, verifying the unit and zero laws exhaustively.
    pub fn from_arithmetic(
        descriptor: String,
        order: usize,
        identity: usize,
        labels: Vec<String>,
        arith: Arc<dyn Arithmetic>,
        limits: RingLimits,
    ) -> Result<Self, FinRingError> {
        if order > limits.element_cap {
            return Err(FinRingError::OrderCap {
                order: order.to_string(),
                cap: limits.element_cap,
            });
        }
        if order < 2 || identity == 0 || identity >= order || labels.len() != order {
            return Err(FinRingError::Invariant(format!(
                "ring {descriptor}: need order >= 2 and a nonzero identity index"
            )));
        }
        let tables = (order <= TABLE_LIMIT).then(|| {
            let mut add = Vec::with_capacity(order * order);
            let mut mul = Vec::with_capacity(order * order);
            for a in 0..order {
                for b in 0..order {
                    add.push(arith.add(a, b) as u32);
                    mul.push(arith.mul(a, b) as u32);
                }
            }
            let neg = (0..order).map(|a| arith.neg(a) as u32).collect();
            Arc::new(Tables { add, mul, neg })
        });
        let ring = FiniteRing {
            descriptor,
            order,
            identity,
            factors: Vec::new(),
            limits,
            arith,
            tables,
            labels: Arc::new(labels),
        };
        for a in 0..order {
            if ring.mul(ring.identity, a) != a || ring.add(0, a) != a || ring.mul(0, a) != 0 {
                return Err(FinRingError::Invariant(format!(
                    "ring {}: unit or zero law fails at element {}",
                    ring.descriptor, ring.labels[a]
                )));
            }
            if ring.add(a, ring.neg(a)) != 0 {
                return Err(FinRingError::Invariant(format!(
                    "ring {}: negation fails at element {}",
                    ring.descriptor, ring.labels[a]
                )));
            }
        }
        Ok(ring)
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Local factors for descriptor-built rings; empty for derived rings such as quotients.
    pub fn factors(&self) -> &[LocalFactor] {
        &self.factors
    }

    pub fn limits(&self) -> RingLimits {
        self.limits
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.tables {
            Some(t) => t.add[a * self.order + b] as usize,
            None => self.arith.add(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.tables {
            Some(t) => t.mul[a * self.order + b] as usize,
            None => self.arith.mul(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        match &self.tables {
            Some(t) => t.neg[a] as usize,
            None => self.arith.neg(a),
        }
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `a^k` by repeated squaring.
    pub fn pow(&self, a: usize, mut k: u64) -> usize {
        let (mut base, mut acc) = (a, self.identity);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Bounds-checked element operation; `b` is required for `Add` and `Mul`.
    pub fn elem_op(&self, op: ElemOp, a: usize, b: Option<usize>) -> Result<usize, FinRingError> {
        self.check_index(a)?;
        let rhs = || -> Result<usize, FinRingError> {
            let b = b.ok_or_else(|| FinRingError::Invariant("binary operation needs two operands".into()))?;
            self.check_index(b)?;
            Ok(b)
        };
        Ok(match op {
            ElemOp::Add => self.add(a, rhs()?),
            ElemOp::Mul => self.mul(a, rhs()?),
            ElemOp::Neg => self.neg(a),
        })
    }

    pub fn check_index(&self, index: usize) -> Result<(), FinRingError> {
        if index < self.order {
            Ok(())
        } else {
            Err(FinRingError::IndexOutOfRange {
                index,
                order: self.order,
            })
        }
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    /// Looks up an element by its printed form, ignoring whitespace. For single-factor rings a
    /// polynomial literal such as `5*x + 12` is also accepted and reduced.
    pub fn element(&self, text: &str) -> Result<usize, FinRingError> {
        let strip = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        let wanted = strip(text);
        let by_label: HashMap<String, usize> = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| (strip(l), i))
            .collect();
        if let Some(&i) = by_label.get(&wanted) {
            return Ok(i);
        }
        if let [f] = self.factors.as_slice() {
            if let Ok(mut coeffs) = descriptor::parse_poly_mod(text, f.modulus) {
                if coeffs.len() <= f.degree() {
                    coeffs.resize(f.degree(), 0);
                    return Ok(self.local_index(&coeffs));
                }
                if let Some(poly) = &f.poly {
                    // reduce a higher-degree literal modulo f by Horner evaluation at x
                    let x = if f.degree() == 1 {
                        self.local_index(&[(f.modulus - poly[0]) % f.modulus])
                    } else {
                        let mut v = vec![0; f.degree()];
                        v[1] = 1;
                        self.local_index(&v)
                    };
                    let acc = coeffs.iter().rev().fold(0, |acc, &c| {
                        let c = self.local_index(&[c]);
                        self.add(self.mul(acc, x), c)
                    });
                    return Ok(acc);
                }
            }
        }
        Err(FinRingError::UnknownElement(text.to_string()))
    }

    fn local_index(&self, coeffs: &[u64]) -> usize {
        let n = self.factors[0].modulus as usize;
        coeffs.iter().rev().fold(0, |acc, &c| acc * n + c as usize)
    }

    /// Coefficient vectors of an element, one per local factor (constant term first).
    pub fn coefficients(&self, index: usize) -> Option<Vec<Vec<u64>>> {
        if self.factors.is_empty() {
            return None;
        }
        let mut out = Vec::with_capacity(self.factors.len());
        let mut rest = index;
        for f in &self.factors {
            let n = f.modulus as usize;
            let mut local = Vec::with_capacity(f.degree());
            for _ in 0..f.degree() {
                local.push((rest % n) as u64);
                rest /= n;
            }
            out.push(local);
        }
        Some(out)
    }

    /// Exhaustively checks commutativity, associativity and distributivity.
    ///
    /// Cubic in the order, so callers should restrict this to small rings.
    pub fn check_axioms(&self) -> Result<(), FinRingError> {
        let n = self.order;
        let fail = |what: &str, a: usize, b: usize, c: usize| {
            Err(FinRingError::Invariant(format!(
                "{}: {what} fails at ({}, {}, {})",
                self.descriptor, self.labels[a], self.labels[b], self.labels[c]
            )))
        };
        for a in 0..n {
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return fail("commutativity", a, b, b);
                }
                let ab = self.mul(a, b);
                let a_plus_b = self.add(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return fail("multiplicative associativity", a, b, c);
                    }
                    if self.add(a_plus_b, c) != self.add(a, self.add(b, c)) {
                        return fail("additive associativity", a, b, c);
                    }
                    if self.mul(a_plus_b, c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        return fail("distributivity", a, b, c);
                    }
                }
            }
        }
        Ok(())
    }

    /// Additive order of an element.
    pub fn additive_order(&self, a: usize) -> usize {
        let (mut acc, mut k) = (a, 1);
        while acc != 0 {
            acc = self.add(acc, a);
            k += 1;
        }
        k
    }
}
