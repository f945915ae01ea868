//! Brute-force oracles shared by the integration tests. None of them reuse the algorithms they
//! check: finite-ring ideals come from subset or subgroup scans, quadratic membership from coset
//! closure modulo the norm, and polynomial arithmetic from schoolbook multiplication.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use rmring::finring::FiniteRing;

/// `Z_n[x]/(f)` with `f` monic, constant term first; elements are coefficient vectors.
pub struct PolyOracle {
    pub n: u64,
    pub f: Vec<u64>,
}

impl PolyOracle {
    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let d = self.degree();
        let mut prod = vec![0u64; 2 * d];
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % self.n;
            }
        }
        // x^k = x^(k-d) · x^d and x^d ≡ -(f_0 + ... + f_{d-1} x^{d-1})
        for k in (d..2 * d).rev() {
            let c = prod[k];
            prod[k] = 0;
            for (i, fi) in self.f[..d].iter().enumerate() {
                let t = prod[k - d + i] + (self.n - fi % self.n) * c;
                prod[k - d + i] = t % self.n;
            }
        }
        prod.truncate(d);
        prod
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(a, b)| (a + b) % self.n).collect()
    }

    /// Mixed-radix index, constant term least significant.
    pub fn index(&self, x: &[u64]) -> usize {
        x.iter().rev().fold(0, |acc, &c| acc * self.n as usize + c as usize)
    }

    pub fn element(&self, mut i: usize) -> Vec<u64> {
        (0..self.degree())
            .map(|_| {
                let c = (i % self.n as usize) as u64;
                i /= self.n as usize;
                c
            })
            .collect()
    }

    pub fn order(&self) -> usize {
        (self.n as usize).pow(self.degree() as u32)
    }

    pub fn is_nilpotent(&self, x: &[u64]) -> bool {
        let mut p = x.to_vec();
        for _ in 0..=self.order() {
            if p.iter().all(|&c| c == 0) {
                return true;
            }
            p = self.mul(&p, x);
        }
        false
    }
}

fn is_ideal_set(ring: &FiniteRing, set: &[usize], member: &[bool]) -> bool {
    set.iter().all(|&a| {
        set.iter().all(|&b| member[ring.add(a, b)])
            && (0..ring.order()).all(|r| member[ring.mul(r, a)])
    })
}

/// Ideals by filtering every subset of the ring. Only feasible for order at most 16.
pub fn ideals_by_subsets(ring: &FiniteRing) -> BTreeSet<Vec<usize>> {
    let n = ring.order();
    assert!(n <= 16, "2^{n} subsets is too many");
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        if mask & 1 == 0 {
            continue;
        }
        let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let member: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        if is_ideal_set(ring, &set, &member) {
            out.insert(set);
        }
    }
    out
}

/// Ideals by listing every additive subgroup (closure search from `{0}`) and keeping those closed
/// under multiplication by ring elements.
pub fn ideals_by_subgroups(ring: &FiniteRing) -> BTreeSet<Vec<usize>> {
    let n = ring.order();
    let close = |seed: &[bool]| -> Vec<bool> {
        let mut member = seed.to_vec();
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| member[i]).collect();
        while let Some(a) = queue.pop_front() {
            for b in 0..n {
                if member[b] {
                    let s = ring.add(a, b);
                    if !member[s] {
                        member[s] = true;
                        queue.push_back(s);
                    }
                }
            }
        }
        member
    };
    let mut zero = vec![false; n];
    zero[0] = true;
    let mut seen: HashSet<Vec<bool>> = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(h) = frontier.pop() {
        for g in 0..n {
            if !h[g] {
                let mut seed = h.clone();
                seed[g] = true;
                let bigger = close(&seed);
                if seen.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
    }
    seen.into_iter()
        .filter_map(|member| {
            let set: Vec<usize> = (0..n).filter(|&i| member[i]).collect();
            is_ideal_set(ring, &set, &member).then_some(set)
        })
        .collect()
}

/// Essential by definition: meets every nonzero ideal of the given list nontrivially.
pub fn essential_by_scan(ideal: &[usize], all: &BTreeSet<Vec<usize>>) -> bool {
    let own: HashSet<usize> = ideal.iter().copied().collect();
    all.iter()
        .filter(|j| j.len() > 1)
        .all(|j| j.iter().any(|x| *x != 0 && own.contains(x)))
}

/// The image of an ideal of `Z[√-s]` in `R/MR`, where `MR` lies inside the ideal, as the set of
/// residues `(u, v)` of `u + vω` reachable from the generators by addition.
pub struct CosetOracle {
    pub s: i64,
    pub m: i64,
    pub residues: HashSet<(i64, i64)>,
}

impl CosetOracle {
    /// `gens` generate the ideal and `m` must be a positive integer inside it.
    pub fn new(s: i64, gens: &[(i64, i64)], m: i64) -> Self {
        let norm = |x: i64| x.rem_euclid(m);
        let mut spanning = Vec::new();
        for &(a, b) in gens {
            spanning.push((norm(a), norm(b)));
            // (a + bω)·ω = -s·b + aω
            spanning.push((norm(-s * b), norm(a)));
        }
        let mut residues = HashSet::from([(0, 0)]);
        let mut queue = VecDeque::from([(0, 0)]);
        while let Some((u, v)) = queue.pop_front() {
            for &(du, dv) in &spanning {
                let next = (norm(u + du), norm(v + dv));
                if residues.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        CosetOracle { s, m, residues }
    }

    pub fn member(&self, a: i64, b: i64) -> bool {
        self.residues.contains(&(a.rem_euclid(self.m), b.rem_euclid(self.m)))
    }

    /// `[R : I] = M² / |I / MR|`.
    pub fn index(&self) -> i64 {
        self.m * self.m / self.residues.len() as i64
    }
}

/// Norm of `a + bω`.
pub fn elem_norm(s: i64, a: i64, b: i64) -> i64 {
    a * a + s * b * b
}

/// Every canonical triple `(a, b, c)` of an ideal of `Z[√-s]` with norm at most `max_norm`,
/// found by testing ω-stability of each triangular lattice directly.
pub fn all_ideals(s: i64, max_norm: i64) -> Vec<(i64, i64, i64)> {
    let in_lattice = |a: i64, b: i64, c: i64, x: i64, y: i64| {
        y % c == 0 && (x - (y / c) * b) % a == 0
    };
    let mut out = Vec::new();
    for a in 1..=max_norm {
        for c in 1..=a {
            if a % c != 0 || a * c > max_norm {
                continue;
            }
            for b in (0..a).step_by(c as usize) {
                // ω·a = aω and ω·(b + cω) = -sc + bω
                if in_lattice(a, b, c, 0, a) && in_lattice(a, b, c, -s * c, b) {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}
