//! Ideal arithmetic in the imaginary quadratic order `Z[ω] = Z[x]/(x² + s)`, `ω = √-s`.
//!
//! Nonzero ideals are kept in the canonical form `(a, b + cω)`: the Z-basis `{a, b + cω}` in
//! Hermite normal form. See [`QIdeal`].

mod factor;
mod ideal;
pub(crate) mod lattice;
mod residue;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::finring::FinRingError;

pub use factor::{sqrt_mod, Factorization, DEFAULT_STEP_CAP};
pub use ideal::{Division, FracIdeal, IdealLiteral, QIdeal};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadError {
    #[error("s = {0} must be a positive integer")]
    NotDomain(BigInt),
    #[error("cannot parse '{text}': {message}")]
    Parse { text: String, message: String },
    #[error("the generators are all zero")]
    AllZeroGenerators,
    #[error("({a}, {b}+{c}*w) is not a canonical ideal basis: {reason}")]
    NotAnIdeal {
        a: BigInt,
        b: BigInt,
        c: BigInt,
        reason: String,
    },
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("the ideal must be proper")]
    NotProper,
    #[error("norm {0} is too large for this operation")]
    TooLarge(BigInt),
    #[error("factorization did not finish within {0} steps")]
    StepCapExhausted(usize),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Ring(#[from] FinRingError),
}

/// The order `Z[√-s]` for a positive `s`. `x² + s` has no rational root for any `s > 0`, so every
/// such order is a domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadOrder {
    s: BigInt,
}

/// The element `a + bω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QElem {
    pub a: BigInt,
    pub b: BigInt,
}

impl QElem {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QElem {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn int(a: impl Into<BigInt>) -> Self {
        QElem::new(a, 0)
    }

    pub fn omega() -> Self {
        QElem::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QElem {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    pub(crate) fn vector(&self) -> lattice::Vector {
        (self.a.clone(), self.b.clone())
    }
}

impl fmt::Display for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*w", self.b),
            (false, false) if self.b.is_negative() => write!(f, "{}-{}*w", self.a, -&self.b),
            (false, false) => write!(f, "{}+{}*w", self.a, self.b),
        }
    }
}

impl Serialize for QElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for QElem {
    type Err = QuadError;

    /// Accepts `a+b*w` style literals: `3`, `w`, `-2w`, `1 - w`, `5+15*w`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |message: &str| QuadError::Parse {
            text: text.to_string(),
            message: message.to_string(),
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty element"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut elem = QElem::int(0);
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, term.strip_prefix('+').unwrap_or(term)),
            };
            let (digits, is_omega) = match body.strip_suffix('w') {
                Some(coeff) => (coeff.strip_suffix('*').unwrap_or(coeff), true),
                None => (body, false),
            };
            let value = if digits.is_empty() && is_omega {
                BigInt::one()
            } else if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
                digits.parse::<BigInt>().map_err(|_| err("bad number"))?
            } else {
                return Err(err(&format!("bad term '{term}'")));
            } * sign;
            if is_omega {
                elem.b += value;
            } else {
                elem.a += value;
            }
        }
        Ok(elem)
    }
}

impl QuadOrder {
    pub fn new(s: impl Into<BigInt>) -> Result<Self, QuadError> {
        let s = s.into();
        if !s.is_positive() {
            return Err(QuadError::NotDomain(s));
        }
        Ok(QuadOrder { s })
    }

    /// Parses `Z[sqrt(-s)]`.
    pub fn parse(text: &str) -> Result<Self, QuadError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix("Z[sqrt(-")
            .and_then(|r| r.strip_suffix(")]"))
            .ok_or_else(|| QuadError::Parse {
                text: text.to_string(),
                message: "expected Z[sqrt(-s)]".into(),
            })?;
        let s = inner
            .parse::<BigInt>()
            .ok()
            .filter(|_| inner.chars().all(|c| c.is_ascii_digit()))
            .ok_or_else(|| QuadError::Parse {
                text: text.to_string(),
                message: "s must be a positive integer".into(),
            })?;
        QuadOrder::new(s)
    }

    pub fn s(&self) -> &BigInt {
        &self.s
    }

    pub fn descriptor(&self) -> String {
        format!("Z[sqrt(-{})]", self.s)
    }

    pub fn add(&self, x: &QElem, y: &QElem) -> QElem {
        QElem {
            a: &x.a + &y.a,
            b: &x.b + &y.b,
        }
    }

    pub fn neg(&self, x: &QElem) -> QElem {
        QElem {
            a: -&x.a,
            b: -&x.b,
        }
    }

    pub fn mul(&self, x: &QElem, y: &QElem) -> QElem {
        QElem {
            a: &x.a * &y.a - &self.s * &x.b * &y.b,
            b: &x.a * &y.b + &x.b * &y.a,
        }
    }

    /// `N(a + bω) = a² + s·b²`.
    pub fn norm(&self, x: &QElem) -> BigInt {
        &x.a * &x.a + &self.s * &x.b * &x.b
    }

    /// Whether `Z[√-s]` is the full ring of integers of `Q(√-s)`: `s` squarefree and `s ≢ 3 (mod 4)`.
    pub fn is_maximal_order(&self) -> bool {
        is_squarefree(&self.s) && self.s.mod_floor(&BigInt::from(4)) != BigInt::from(3)
    }
}

impl fmt::Display for QuadOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

fn is_squarefree(n: &BigInt) -> bool {
    let mut d = BigInt::from(2);
    while &d * &d <= *n {
        if (n % (&d * &d)).is_zero() {
            return false;
        }
        d += 1;
    }
    true
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors of `n` in increasing order, without multiplicity.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
