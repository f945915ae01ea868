use std::sync::Arc;

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{QElem, QIdeal, QuadError, QuadOrder};
use crate::finring::{Arithmetic, FiniteRing, RingLimits};

/// Arithmetic of `R/I` on residues `u + vω` with `0 <= u < a`, `0 <= v < c`, indexed `v·a + u`.
struct ResidueArith {
    a: i128,
    b: i128,
    c: i128,
    s: i128,
}

impl ResidueArith {
    fn reduce(&self, x: i128, y: i128) -> usize {
        let v = y.rem_euclid(self.c);
        let k = (y - v) / self.c;
        let u = (x - k * self.b).rem_euclid(self.a);
        (v * self.a + u) as usize
    }

    fn split(&self, i: usize) -> (i128, i128) {
        let i = i as i128;
        (i % self.a, i / self.a)
    }
}

impl Arithmetic for ResidueArith {
    fn add(&self, i: usize, j: usize) -> usize {
        let ((u1, v1), (u2, v2)) = (self.split(i), self.split(j));
        self.reduce(u1 + u2, v1 + v2)
    }

    fn mul(&self, i: usize, j: usize) -> usize {
        let ((u1, v1), (u2, v2)) = (self.split(i), self.split(j));
        self.reduce(u1 * u2 - self.s * v1 * v2, u1 * v2 + u2 * v1)
    }

    fn neg(&self, i: usize) -> usize {
        let (u, v) = self.split(i);
        self.reduce(-u, -v)
    }
}

impl QuadOrder {
    /// The finite ring `R/I`, of order `norm(I)`.
    pub fn quotient_ring(&self, ideal: &QIdeal) -> Result<FiniteRing, QuadError> {
        self.quotient_ring_with(ideal, RingLimits::default())
    }

    pub fn quotient_ring_with(
        &self,
        ideal: &QIdeal,
        limits: RingLimits,
    ) -> Result<FiniteRing, QuadError> {
        if ideal.is_unit() {
            return Err(QuadError::NotProper);
        }
        let norm = ideal.norm();
        let order = norm
            .to_usize()
            .filter(|&n| n <= limits.element_cap)
            .ok_or_else(|| QuadError::TooLarge(norm.clone()))?;
        let small = |x: &num_bigint::BigInt| x.to_i128().expect("bounded by the norm");
        let (a, b, c) = (small(ideal.a()), small(ideal.b()), small(ideal.c()));
        let s = small(&(self.s() % ideal.a()));
        let labels = (0..order)
            .map(|i| QElem::new(i as i128 % a, i as i128 / a).to_string())
            .collect();
        let ring = FiniteRing::from_arithmetic(
            format!("{}/{}", self.descriptor(), ideal),
            order,
            1,
            labels,
            Arc::new(ResidueArith { a, b, c, s }),
            limits,
        )?;
        Ok(ring)
    }

    /// Index of the residue class of `e` in [`QuadOrder::quotient_ring`]`(ideal)`.
    pub fn residue_index(&self, ideal: &QIdeal, e: &QElem) -> usize {
        let a = ideal.a();
        let v = e.b.mod_floor(ideal.c());
        let k = (&e.b - &v) / ideal.c();
        let u = (&e.a - k * ideal.b()).mod_floor(a);
        (v * a + u).to_usize().expect("residue index fits")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_fields_and_lengths() {
        let r = QuadOrder::new(14).unwrap();
        let p = r.ideal(3, 1, 1).unwrap();
        let f3 = r.quotient_ring(&p).unwrap();
        assert_eq!(f3.order(), 3);
        assert!(f3.is_field());
        f3.check_axioms().unwrap();

        let fifteen = r.scalar_ideal(&15.into());
        let q = r.quotient_ring(&fifteen).unwrap();
        assert_eq!(q.order(), 225);
        assert_eq!(q.composition_length().unwrap(), 4);
        assert_eq!(q.descriptor(), "Z[sqrt(-14)]/(15, 0+15*w)");

        assert_eq!(r.quotient_ring(&r.unit_ideal()).unwrap_err(), QuadError::NotProper);
        assert!(matches!(
            r.quotient_ring(&r.scalar_ideal(&100.into())),
            Err(QuadError::TooLarge(_))
        ));
    }

    #[test]
    fn residues_respect_arithmetic() {
        let r = QuadOrder::new(3).unwrap();
        let i = r.ideal(4, 2, 2).unwrap();
        let q = r.quotient_ring(&i).unwrap();
        q.check_axioms().unwrap();
        assert_eq!(q.order(), 8);
        let x = QElem::new(3, -5);
        let y = QElem::new(-7, 2);
        let (ix, iy) = (r.residue_index(&i, &x), r.residue_index(&i, &y));
        assert_eq!(q.mul(ix, iy), r.residue_index(&i, &r.mul(&x, &y)));
        assert_eq!(q.add(ix, iy), r.residue_index(&i, &r.add(&x, &y)));
        // members of I land on zero
        assert_eq!(r.residue_index(&i, &QElem::new(2, 2)), 0);
        assert_eq!(r.residue_index(&i, &QElem::new(4, 0)), 0);
        assert_ne!(r.residue_index(&i, &QElem::new(2, 0)), 0);
    }
}
