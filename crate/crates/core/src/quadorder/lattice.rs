//! Full-rank sublattices of Z² in upper-triangular Hermite normal form.
//!
//! A vector `(x, y)` stands for the element `x + yω`. The HNF basis of a full-rank lattice is
//! `{(a, 0), (b, c)}` with `a > 0`, `c > 0` and `0 <= b < a`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type Vector = (BigInt, BigInt);

/// Extended gcd normalised to a nonnegative gcd: returns `(g, u, v)` with `u·p + v·q = g`.
pub(crate) fn xgcd(p: &BigInt, q: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = p.extended_gcd(q);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Hermite normal form `(a, b, c)` of the lattice spanned by `vectors`, or `None` when the span is
/// not of full rank.
pub(crate) fn hnf(vectors: &[Vector]) -> Option<(BigInt, BigInt, BigInt)> {
    let mut a = BigInt::zero();
    let (mut b, mut c) = (BigInt::zero(), BigInt::zero());
    for (x, y) in vectors {
        if y.is_zero() {
            a = a.gcd(x);
        } else if c.is_zero() {
            if y.is_negative() {
                (b, c) = (-x, -y);
            } else {
                (b, c) = (x.clone(), y.clone());
            }
        } else {
            // unimodular change of basis on {(b, c), (x, y)}
            let (g, u, v) = xgcd(&c, y);
            let leftover = (y / &g) * &b - (&c / &g) * x;
            b = &u * &b + &v * x;
            c = g;
            a = a.gcd(&leftover);
        }
    }
    if a.is_zero() || c.is_zero() {
        return None;
    }
    b = b.mod_floor(&a);
    Some((a, b, c))
}

/// Basis of `{v ∈ Z² : α·v.0 + β·v.1 ≡ 0 (mod m)}` intersected over all `((α, β), m)`.
///
/// Each congruence is imposed on the current basis `{e1, e2}`: with `f_i` the form's value on
/// `e_i` and `g = gcd(f1, f2) = p·f1 + q·f2`, the pair `(f2/g)·e1 − (f1/g)·e2` and `(p, q)` is a
/// unimodular basis on which the form reads `(0, g)`, so the solutions are spanned by the first
/// vector and `m / gcd(m, g)` times the second.
pub(crate) fn congruence_kernel(forms: &[(Vector, BigInt)]) -> [Vector; 2] {
    let mut e1: Vector = (BigInt::one(), BigInt::zero());
    let mut e2: Vector = (BigInt::zero(), BigInt::one());
    for ((alpha, beta), m) in forms {
        let eval = |v: &Vector| (alpha * &v.0 + beta * &v.1).mod_floor(m);
        let (f1, f2) = (eval(&e1), eval(&e2));
        if f1.is_zero() && f2.is_zero() {
            continue;
        }
        let (g, p, q) = xgcd(&f1, &f2);
        let k = m / m.gcd(&g);
        let (s1, s2) = (&f2 / &g, &f1 / &g);
        let n1 = (&s1 * &e1.0 - &s2 * &e2.0, &s1 * &e1.1 - &s2 * &e2.1);
        let n2 = (
            &k * (&p * &e1.0 + &q * &e2.0),
            &k * (&p * &e1.1 + &q * &e2.1),
        );
        e1 = n1;
        e2 = n2;
    }
    [e1, e2]
}
