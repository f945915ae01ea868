use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand_core::RngCore;
use serde::{Serialize, Serializer};

use super::lattice::{congruence_kernel, hnf, Vector};
use super::{QElem, QuadError, QuadOrder};
use crate::rng::uniform_signed;

/// A nonzero ideal with Z-basis `{a, b + cω}` in Hermite normal form.
///
/// Invariants: `a, c > 0`, `0 <= b < a`, `c | a`, `c | b` and `a·c | b² + s·c²` (closure under
/// multiplication by ω). The norm `[R : I]` is `a·c`. Ideals order lexicographically by
/// `(a, b, c)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QIdeal {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

/// `numerator / denom`, a fractional ideal in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FracIdeal {
    pub numerator: QIdeal,
    pub denom: BigInt,
}

/// Result of a divisibility test `I | J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Division {
    /// `I · witness = J`.
    Divides { witness: QIdeal },
    /// No `H` with `IH = J` exists; `candidate` is the colon `(J : I)`, which contains every
    /// possible `H`, and `I · candidate ≠ J`.
    Fails { candidate: QIdeal },
}

impl Division {
    pub fn holds(&self) -> bool {
        matches!(self, Division::Divides { .. })
    }
}

impl QIdeal {
    /// Trusted constructor for triples already known to be canonical.
    pub(crate) fn from_parts(a: BigInt, b: BigInt, c: BigInt) -> Self {
        QIdeal { a, b, c }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.c
    }

    pub fn is_unit(&self) -> bool {
        self.a.is_one()
    }

    /// The basis as elements `[a, b + cω]`.
    pub fn basis(&self) -> [QElem; 2] {
        [
            QElem::int(self.a.clone()),
            QElem::new(self.b.clone(), self.c.clone()),
        ]
    }

    fn vectors(&self) -> [Vector; 2] {
        [
            (self.a.clone(), BigInt::zero()),
            (self.b.clone(), self.c.clone()),
        ]
    }

    pub fn triple(&self) -> (BigInt, BigInt, BigInt) {
        (self.a.clone(), self.b.clone(), self.c.clone())
    }
}

impl fmt::Display for QIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}+{}*w)", self.a, self.b, self.c)
    }
}

impl Serialize for QIdeal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Display for FracIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denom)
    }
}

/// An ideal literal: a parenthesised list of generators such as `(3, 1+w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealLiteral(pub Vec<QElem>);

impl FromStr for IdealLiteral {
    type Err = QuadError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let trimmed = text.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| QuadError::Parse {
                text: text.to_string(),
                message: "expected a parenthesised generator list".into(),
            })?;
        inner
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<QElem>, _>>()
            .map(IdealLiteral)
    }
}

impl QuadOrder {
    fn ideal_of_vectors(&self, vectors: &[Vector]) -> QIdeal {
        let (a, b, c) = hnf(vectors).expect("a nonzero ideal has full rank");
        QIdeal { a, b, c }
    }

    /// Validates a canonical triple.
    pub fn ideal(
        &self,
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
    ) -> Result<QIdeal, QuadError> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        let reason = if !a.is_positive() || !c.is_positive() {
            Some("a and c must be positive")
        } else if b.is_negative() || b >= a {
            Some("b must lie in [0, a)")
        } else if !(a.is_multiple_of(&c) && b.is_multiple_of(&c)) {
            Some("c must divide a and b")
        } else if !(&b * &b + &self.s * &c * &c).is_multiple_of(&(&a * &c)) {
            Some("lattice is not closed under multiplication by w")
        } else {
            None
        };
        match reason {
            Some(r) => Err(QuadError::NotAnIdeal {
                a,
                b,
                c,
                reason: r.into(),
            }),
            None => Ok(QIdeal { a, b, c }),
        }
    }

    pub fn unit_ideal(&self) -> QIdeal {
        QIdeal {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::one(),
        }
    }

    pub fn principal(&self, g: &QElem) -> Result<QIdeal, QuadError> {
        self.ideal_from_generators(std::slice::from_ref(g))
    }

    /// HNF of the lattice spanned by `g` and `gω` for every generator `g`.
    pub fn ideal_from_generators(&self, gens: &[QElem]) -> Result<QIdeal, QuadError> {
        if gens.iter().all(QElem::is_zero) {
            return Err(QuadError::AllZeroGenerators);
        }
        let omega = QElem::omega();
        let vectors: Vec<Vector> = gens
            .iter()
            .flat_map(|g| [g.vector(), self.mul(g, &omega).vector()])
            .collect();
        Ok(self.ideal_of_vectors(&vectors))
    }

    /// Parses an ideal literal `(g1, g2, ...)` and returns the ideal the generators span.
    pub fn parse_ideal(&self, text: &str) -> Result<QIdeal, QuadError> {
        let IdealLiteral(gens) = text.parse()?;
        self.ideal_from_generators(&gens)
    }

    pub fn ideal_mul(&self, i: &QIdeal, j: &QIdeal) -> QIdeal {
        let mut products = Vec::with_capacity(4);
        for x in i.basis() {
            for y in j.basis() {
                products.push(self.mul(&x, &y).vector());
            }
        }
        self.ideal_of_vectors(&products)
    }

    pub fn ideal_add(&self, i: &QIdeal, j: &QIdeal) -> QIdeal {
        let [i1, i2] = i.vectors();
        let [j1, j2] = j.vectors();
        self.ideal_of_vectors(&[i1, i2, j1, j2])
    }

    /// Exact membership: `x + yω ∈ I` iff `c | y` and `a | x − (y/c)·b`.
    pub fn member(&self, ideal: &QIdeal, e: &QElem) -> bool {
        if !e.b.is_multiple_of(&ideal.c) {
            return false;
        }
        let k = &e.b / &ideal.c;
        (&e.a - k * &ideal.b).is_multiple_of(&ideal.a)
    }

    /// Whether `big ⊇ small`.
    pub fn contains(&self, big: &QIdeal, small: &QIdeal) -> bool {
        small.basis().iter().all(|e| self.member(big, e))
    }

    /// The colon `(J : I) = {x ∈ R : xI ⊆ J}`.
    ///
    /// For each basis element `y` of `I`, `xy ∈ J` is a pair of linear congruences in the
    /// coordinates of `x`; the colon is the lattice of common solutions.
    pub fn colon(&self, j: &QIdeal, i: &QIdeal) -> QIdeal {
        let s = &self.s;
        let (ja, jb, jc) = (&j.a, &j.b, &j.c);
        let mut forms = Vec::with_capacity(4);
        for y in i.basis() {
            let (y0, y1) = (&y.a, &y.b);
            // x = u + vω:  xy = (y0·u − s·y1·v) + (y1·u + y0·v)ω
            let (px, qx) = (y0.clone(), -(s * y1));
            let (py, qy) = (y1.clone(), y0.clone());
            forms.push(((py.clone(), qy.clone()), jc.clone()));
            forms.push((
                (jc * &px - jb * &py, jc * &qx - jb * &qy),
                ja * jc,
            ));
        }
        let basis = congruence_kernel(&forms);
        self.ideal_of_vectors(&basis)
    }

    /// `(R : I)`, computed as `(1/N)·(NR : I)` with `N = norm(I)` and reduced to lowest terms.
    pub fn inverse_fractional(&self, i: &QIdeal) -> FracIdeal {
        let n = i.norm();
        let scaled = self.colon(&self.scalar_ideal(&n), i);
        let content = scaled.a.gcd(&scaled.b).gcd(&scaled.c).gcd(&n);
        FracIdeal {
            numerator: QIdeal {
                a: &scaled.a / &content,
                b: &scaled.b / &content,
                c: &scaled.c / &content,
            },
            denom: n / content,
        }
    }

    /// The principal ideal `(n)` of a positive integer.
    pub fn scalar_ideal(&self, n: &BigInt) -> QIdeal {
        QIdeal {
            a: n.abs(),
            b: BigInt::zero(),
            c: n.abs(),
        }
    }

    /// Product of an integral ideal with a fractional ideal, when it is integral.
    pub fn mul_fractional(&self, i: &QIdeal, f: &FracIdeal) -> Option<QIdeal> {
        let p = self.ideal_mul(i, &f.numerator);
        let d = &f.denom;
        (p.a.is_multiple_of(d) && p.b.is_multiple_of(d) && p.c.is_multiple_of(d)).then(|| QIdeal {
            a: &p.a / d,
            b: &p.b / d,
            c: &p.c / d,
        })
    }

    /// Whether `I · (R : I) = R`.
    pub fn is_invertible(&self, i: &QIdeal) -> bool {
        let inv = self.inverse_fractional(i);
        self.mul_fractional(i, &inv)
            .is_some_and(|p| p == self.unit_ideal())
    }

    /// Decides `I | J`.
    ///
    /// Any `H` with `IH = J` satisfies `H ⊆ (J : I)`, and then
    /// `J = IH ⊆ I(J : I) ⊆ J`; so some `H` exists iff the colon itself works.
    pub fn divides(&self, i: &QIdeal, j: &QIdeal) -> Division {
        let candidate = self.colon(j, i);
        if self.ideal_mul(i, &candidate) == *j {
            Division::Divides { witness: candidate }
        } else {
            Division::Fails { candidate }
        }
    }

    /// The ideal generated by two random elements with coordinates uniform in `[-bound, bound]`,
    /// resampled while both are zero.
    pub fn random_ideal<R: RngCore>(&self, bound: u64, rng: &mut R) -> QIdeal {
        loop {
            let mut draw = || QElem::new(uniform_signed(rng, bound), uniform_signed(rng, bound));
            let (g1, g2) = (draw(), draw());
            if let Ok(ideal) = self.ideal_from_generators(&[g1, g2]) {
                return ideal;
            }
        }
    }
}
