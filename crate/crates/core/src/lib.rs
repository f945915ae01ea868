//! Exact ideal arithmetic for three families of commutative rings: finite rings `Z_n[x]/(f)` and
//! their products, imaginary quadratic orders `Z[√-s]`, and the ring of finite and cofinite
//! subsets of ℕ. The [`verifier`] module runs seeded property campaigns over all three.

pub mod finring;
pub mod quadorder;
pub mod rng;
pub mod cofinring;
pub mod verifier;
