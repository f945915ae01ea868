use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::{is_prime, prime_divisors, QElem, QIdeal, QuadError, QuadOrder};
use crate::finring::{format_poly, parse_ring, RingLimits};

/// Loop bound for [`QuadOrder::factor_into_maximals`].
pub const DEFAULT_STEP_CAP: usize = 64;

/// Outcome of peeling maximal ideals off an ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Factorization {
    /// Maximal ideals whose product is the input, in extraction order.
    Factors { factors: Vec<QIdeal> },
    /// `maximal ⊇ current` but `maximal` does not divide `current`; `candidate` is the colon
    /// `(current : maximal)`.
    CdrFailure {
        maximal: QIdeal,
        current: QIdeal,
        candidate: QIdeal,
        extracted: Vec<QIdeal>,
    },
}

impl Factorization {
    pub fn factors(&self) -> Option<&[QIdeal]> {
        match self {
            Factorization::Factors { factors } => Some(factors),
            Factorization::CdrFailure { .. } => None,
        }
    }
}

fn mul_mod(x: u64, y: u64, p: u64) -> u64 {
    (x as u128 * y as u128 % p as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Square roots of `n` modulo the prime `p`, ascending and without repetition (Tonelli–Shanks).
pub fn sqrt_mod(n: u64, p: u64) -> Vec<u64> {
    let n = n % p;
    if p == 2 || n == 0 {
        return vec![n];
    }
    if pow_mod(n, (p - 1) / 2, p) != 1 {
        return Vec::new();
    }
    let (mut q, mut m) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        m += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1).expect("p is an odd prime");
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    let mut roots = vec![r, p - r];
    roots.sort_unstable();
    roots
}

impl QuadOrder {
    fn s_mod(&self, p: u64) -> u64 {
        (self.s() % BigInt::from(p)).to_u64().expect("reduced below p")
    }

    /// Maximal ideals containing the prime `p`, in lexicographic HNF order.
    ///
    /// Small primes go through the finite ring `R/pR = Z_p[x]/(x² + s)`: its maximal ideals are
    /// enumerated and pulled back. Larger primes use the roots of `x² + s` modulo `p`.
    pub fn maximal_ideals_above(&self, p: u64) -> Result<Vec<QIdeal>, QuadError> {
        if !is_prime(p) {
            return Err(QuadError::NotPrime(p.into()));
        }
        if p.checked_mul(p).is_some_and(|sq| sq <= RingLimits::default().enumeration_cap as u64) {
            self.maximal_ideals_above_by_enumeration(p)
        } else {
            Ok(self.maximal_ideals_above_by_roots(p))
        }
    }

    /// The maximal ideals above `p` via the prime spectrum of `R/pR`.
    pub fn maximal_ideals_above_by_enumeration(&self, p: u64) -> Result<Vec<QIdeal>, QuadError> {
        if !is_prime(p) {
            return Err(QuadError::NotPrime(p.into()));
        }
        let ring = parse_ring(&format!("Z{p}[x]/({})", format_poly(&[self.s_mod(p), 0, 1])))?;
        let mut out = Vec::new();
        for m in ring.prime_spectrum()? {
            let mut gens = vec![QElem::int(p)];
            for g in ring.generators(&m) {
                let coeffs = &ring.coefficients(g).expect("built from a descriptor")[0];
                gens.push(QElem::new(coeffs[0], coeffs[1]));
            }
            out.push(self.ideal_from_generators(&gens)?);
        }
        out.sort();
        Ok(out)
    }

    /// The maximal ideals above `p` from the roots `r` of `x² + s` modulo `p`: each root gives
    /// `(p, ω − r)`, and without roots `pR` itself is maximal.
    pub fn maximal_ideals_above_by_roots(&self, p: u64) -> Vec<QIdeal> {
        let minus_s = (p - self.s_mod(p)) % p;
        let roots = sqrt_mod(minus_s, p);
        if roots.is_empty() {
            return vec![self.scalar_ideal(&p.into())];
        }
        let mut out: Vec<QIdeal> = roots
            .iter()
            .map(|&r| QIdeal::from_parts(p.into(), ((p - r) % p).into(), BigInt::one()))
            .collect();
        out.sort();
        out
    }

    /// Whether `R/P` is a field. Small quotients are built and tested directly; otherwise `P` is
    /// maximal iff its norm is prime, or it equals `pR` for a prime `p` inert in `R`.
    pub fn is_maximal_ideal(&self, ideal: &QIdeal) -> Result<bool, QuadError> {
        if ideal.is_unit() {
            return Ok(false);
        }
        let norm = ideal.norm();
        if norm <= BigInt::from(RingLimits::default().element_cap) {
            return Ok(self.quotient_ring(ideal)?.is_field());
        }
        let n = norm.to_u64().ok_or(QuadError::TooLarge(norm))?;
        if is_prime(n) {
            return Ok(true);
        }
        let a = ideal.a().to_u64().expect("a divides the norm");
        Ok(ideal.a() == ideal.c()
            && is_prime(a)
            && self.maximal_ideals_above_by_roots(a) == [ideal.clone()])
    }

    /// Peels maximal ideals off `ideal` until the unit ideal remains.
    ///
    /// Each step takes the smallest prime `p` dividing the norm of the current ideal `C`, the
    /// least maximal `P ⊇ C` above `p`, and replaces `C` by `(C : P)` provided `P·(C : P) = C`.
    pub fn factor_into_maximals(
        &self,
        ideal: &QIdeal,
        step_cap: usize,
    ) -> Result<Factorization, QuadError> {
        if ideal.is_unit() {
            return Err(QuadError::NotProper);
        }
        let mut current = ideal.clone();
        let mut extracted = Vec::new();
        while !current.is_unit() {
            if extracted.len() == step_cap {
                return Err(QuadError::StepCapExhausted(step_cap));
            }
            let norm = current.norm();
            let n = norm.to_u64().ok_or(QuadError::TooLarge(norm))?;
            let p = prime_divisors(n)[0];
            let maximal = self
                .maximal_ideals_above(p)?
                .into_iter()
                .find(|m| self.contains(m, &current))
                .ok_or_else(|| {
                    QuadError::Invariant(format!("no maximal ideal above {p} contains {current}"))
                })?;
            let candidate = self.colon(&current, &maximal);
            if self.ideal_mul(&maximal, &candidate) != current {
                return Ok(Factorization::CdrFailure {
                    maximal,
                    current,
                    candidate,
                    extracted,
                });
            }
            extracted.push(maximal);
            current = candidate;
        }
        Ok(Factorization::Factors { factors: extracted })
    }

    /// Product of a list of ideals; the empty product is `R`.
    pub fn ideal_product_all(&self, ideals: &[QIdeal]) -> QIdeal {
        ideals
            .iter()
            .fold(self.unit_ideal(), |acc, i| self.ideal_mul(&acc, i))
    }
}
