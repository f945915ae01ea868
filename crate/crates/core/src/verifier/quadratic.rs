use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand_core::RngCore;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{CheckParams, Verdict, VerifyError, VerifyReport};
use crate::quadorder::{
    prime_divisors, Division, Factorization, QElem, QIdeal, QuadError, QuadOrder, DEFAULT_STEP_CAP,
};
use crate::rng::{trial_stream, uniform_below, uniform_signed};

/// Largest norm sampled for chain checks, so that `R/I` fits the ideal enumeration cap.
const CHAIN_NORM_CAP: u64 = 512;

fn norm_u64(ideal: &QIdeal) -> Result<u64, QuadError> {
    let n = ideal.norm();
    n.to_u64().ok_or(QuadError::TooLarge(n))
}

/// Samples ideals until one has norm at most `cap`; returns it with the number of discarded draws.
pub fn sample_ideal_with_norm_cap<R: RngCore>(
    order: &QuadOrder,
    bound: u64,
    cap: u64,
    rng: &mut R,
) -> (QIdeal, u64) {
    let mut discarded = 0;
    loop {
        let ideal = order.random_ideal(bound, rng);
        if ideal.norm() <= BigInt::from(cap) {
            return (ideal, discarded);
        }
        discarded += 1;
    }
}

/// A random element of `ideal`: a combination of its basis with coefficients in `[-3, 3]`.
fn random_member<R: RngCore>(order: &QuadOrder, ideal: &QIdeal, rng: &mut R) -> QElem {
    let [e1, e2] = ideal.basis();
    let (x, y) = (uniform_signed(rng, 3), uniform_signed(rng, 3));
    order.add(&order.mul(&QElem::int(x), &e1), &order.mul(&QElem::int(y), &e2))
}

/// A strictly descending chain `R = C₀ ⊋ C₁ ⊋ ... ⊋ Cₜ = I` built greedily at random.
///
/// Each step picks uniformly among the candidates `I + P·C` (`P` maximal above a prime dividing
/// `norm(I)`) and `I + (e)` (`e` a random member of `C`) that are strictly smaller than the
/// current `C`. Some `I + P·C` is always strictly smaller while `C ≠ I`, since `C/I` is a nonzero
/// finite module.
pub fn greedy_descending_chain<R: RngCore>(
    order: &QuadOrder,
    ideal: &QIdeal,
    rng: &mut R,
) -> Result<Vec<QIdeal>, QuadError> {
    let mut maximals = Vec::new();
    for p in prime_divisors(norm_u64(ideal)?) {
        maximals.extend(order.maximal_ideals_above(p)?);
    }
    let mut chain = vec![order.unit_ideal()];
    let mut current = order.unit_ideal();
    while current != *ideal {
        let mut candidates: Vec<QIdeal> = maximals
            .iter()
            .map(|m| order.ideal_add(ideal, &order.ideal_mul(m, &current)))
            .collect();
        for _ in 0..4 {
            let e = random_member(order, &current, rng);
            if !e.is_zero() {
                candidates.push(order.ideal_add(ideal, &order.principal(&e)?));
            }
        }
        candidates.retain(|k| *k != current);
        candidates.sort();
        candidates.dedup();
        if candidates.is_empty() {
            return Err(QuadError::Invariant(format!(
                "no ideal strictly between {ideal} and {current}"
            )));
        }
        let pick = uniform_below(rng, candidates.len() as u64) as usize;
        current = candidates.swap_remove(pick);
        chain.push(current.clone());
    }
    Ok(chain)
}

struct ChainTrial {
    length: u64,
    discarded: u64,
    violation: Option<Value>,
}

fn chain_trial(order: &QuadOrder, params: &CheckParams, trial: u64) -> Result<ChainTrial, QuadError> {
    let mut rng = trial_stream(params.seed, trial);
    let (ideal, discarded) =
        sample_ideal_with_norm_cap(order, params.bound, CHAIN_NORM_CAP, &mut rng);
    if ideal.is_unit() {
        return Ok(ChainTrial { length: 0, discarded, violation: None });
    }
    let quotient = order.quotient_ring(&ideal)?;
    let length_bound = quotient.composition_length()? as u64;
    let chain = greedy_descending_chain(order, &ideal, &mut rng)?;
    let length = chain.len() as u64 - 1;
    let mut problem = None;
    if quotient.order() as u64 != norm_u64(&ideal)? {
        problem = Some("quotient order differs from the norm");
    } else if length > length_bound {
        problem = Some("chain longer than the composition length of R/I");
    }
    let violation = problem.map(|what| {
        json!({
            "kind": "violation",
            "property": what,
            "seed": params.seed,
            "trial": trial,
            "ideal": ideal,
            "chain": chain,
            "composition_length": length_bound,
        })
    });
    Ok(ChainTrial { length, discarded, violation })
}

pub(super) fn check_reduced_rm(
    params: &CheckParams,
    report: &mut VerifyReport,
) -> Result<(), VerifyError> {
    let order = QuadOrder::new(params.s)?;
    report.param("s", params.s);
    report.param("trials", params.trials);
    report.param("bound", params.bound);
    report.param("seed", params.seed);
    report.param("norm_cap", CHAIN_NORM_CAP);
    let trials: Vec<ChainTrial> = (0..params.trials)
        .into_par_iter()
        .map(|t| chain_trial(&order, params, t))
        .collect::<Result<_, _>>()?;
    for t in trials {
        report.stats.trials += 1;
        report.stats.max_chain = report.stats.max_chain.max(t.length);
        report.stats.resampled += t.discarded;
        if let Some(v) = t.violation {
            report.verdict = Verdict::Fail;
            report.witnesses.push(v);
        }
    }
    report.summary = format!(
        "{} nonzero ideals I of {}: R/I is finite, hence Artinian, and every greedy strictly \
         descending chain above I has length at most the composition length of R/I. Only the \
         forward direction of the dimension characterisation is instantiated.",
        report.stats.trials,
        order.descriptor()
    );
    Ok(())
}

/// `(I, J)` with `J ⊆ I`: a random pair if it happens to be nested, else `(I + J, J)`.
fn containing_pair<R: RngCore>(order: &QuadOrder, bound: u64, rng: &mut R) -> (QIdeal, QIdeal) {
    for _ in 0..8 {
        let (i, j) = (order.random_ideal(bound, rng), order.random_ideal(bound, rng));
        if order.contains(&i, &j) {
            return (i, j);
        }
    }
    let (i, j) = (order.random_ideal(bound, rng), order.random_ideal(bound, rng));
    (order.ideal_add(&i, &j), j)
}

fn check_division(order: &QuadOrder, big: &QIdeal, small: &QIdeal) -> Option<String> {
    match order.divides(big, small) {
        Division::Divides { witness } if order.ideal_mul(big, &witness) == *small => None,
        Division::Divides { witness } => Some(format!("witness {witness} does not multiply back")),
        Division::Fails { candidate } => Some(format!("colon candidate {candidate} fails")),
    }
}

fn check_factorization(order: &QuadOrder, ideal: &QIdeal) -> Result<Option<String>, QuadError> {
    if ideal.is_unit() {
        return Ok(None);
    }
    let factors = match order.factor_into_maximals(ideal, DEFAULT_STEP_CAP) {
        Ok(Factorization::Factors { factors }) => factors,
        Ok(Factorization::CdrFailure { maximal, current, .. }) => {
            return Ok(Some(format!("{maximal} contains but does not divide {current}")))
        }
        Err(QuadError::StepCapExhausted(cap)) => {
            return Ok(Some(format!("no factorization within {cap} steps")))
        }
        Err(e) => return Err(e),
    };
    if order.ideal_product_all(&factors) != *ideal {
        return Ok(Some("product of factors differs from the input".into()));
    }
    for f in &factors {
        if !order.is_maximal_ideal(f)? {
            return Ok(Some(format!("factor {f} is not maximal")));
        }
    }
    Ok(None)
}

fn dedekind_trial(
    order: &QuadOrder,
    params: &CheckParams,
    trial: u64,
) -> Result<Vec<Value>, QuadError> {
    let mut rng = trial_stream(params.seed, trial);
    let i = order.random_ideal(params.bound, &mut rng);
    let k = order.random_ideal(params.bound, &mut rng);
    let j = order.ideal_mul(&i, &k);
    let (big, small) = containing_pair(order, params.bound, &mut rng);
    let mut out = Vec::new();
    let mut record = |property: &str, detail: String, ideals: Value| {
        out.push(json!({
            "kind": "violation",
            "property": property,
            "detail": detail,
            "ideals": ideals,
            "seed": params.seed,
            "trial": trial,
        }))
    };
    if let Some(d) = check_division(order, &i, &j) {
        record("divides_product", d, json!([i, j]));
    }
    if let Some(d) = check_division(order, &big, &small) {
        record("divides_containing_pair", d, json!([big, small]));
    }
    for x in [&i, &j] {
        if let Some(d) = check_factorization(order, x)? {
            record("factorization", d, json!([x]));
        }
    }
    Ok(out)
}

type PairKey = (BigInt, QIdeal, BigInt, QIdeal);

/// Nested pairs `big ⊇ small` where `big` fails to divide `small`, drawn from one sampled ideal.
fn converse_trial(
    order: &QuadOrder,
    params: &CheckParams,
    trial: u64,
) -> Result<Vec<(QIdeal, QIdeal)>, QuadError> {
    let mut rng = trial_stream(params.seed, trial);
    let i = order.random_ideal(params.bound, &mut rng);
    let k = order.random_ideal(params.bound, &mut rng);
    let mut pairs = vec![(i.clone(), order.ideal_mul(&i, &k))];
    for p in prime_divisors(norm_u64(&i)?) {
        for m in order.maximal_ideals_above(p)? {
            if order.contains(&m, &i) {
                pairs.push((m.clone(), i.clone()));
                pairs.push((m, order.scalar_ideal(&p.into())));
            }
        }
    }
    Ok(pairs
        .into_iter()
        .filter(|(big, small)| order.contains(big, small) && !order.divides(big, small).holds())
        .collect())
}

pub(super) fn check_cdr(params: &CheckParams, report: &mut VerifyReport) -> Result<(), VerifyError> {
    let order = QuadOrder::new(params.s)?;
    let maximal = order.is_maximal_order();
    report.param("s", params.s);
    report.param("trials", params.trials);
    report.param("bound", params.bound);
    report.param("seed", params.seed);
    report.param("maximal_order", maximal);
    report.stats.trials = params.trials;
    if maximal {
        let results: Vec<Vec<Value>> = (0..params.trials)
            .into_par_iter()
            .map(|t| dedekind_trial(&order, params, t))
            .collect::<Result<_, _>>()?;
        report.witnesses = results.into_iter().flatten().collect();
        if !report.witnesses.is_empty() {
            report.verdict = Verdict::Fail;
        }
        report.summary = format!(
            "{} is a maximal order: for {} sampled nested pairs I ⊇ J, I divides J, and the \
             sampled ideals factor into maximal ideals",
            order.descriptor(),
            params.trials
        );
        return Ok(());
    }
    let results: Vec<Vec<(QIdeal, QIdeal)>> = (0..params.trials)
        .into_par_iter()
        .map(|t| converse_trial(&order, params, t))
        .collect::<Result<_, _>>()?;
    let best = results
        .into_iter()
        .enumerate()
        .flat_map(|(t, pairs)| pairs.into_iter().map(move |p| (t, p)))
        .min_by_key(|(t, (big, small))| -> (PairKey, usize) {
            ((small.norm(), small.clone(), big.norm(), big.clone()), *t)
        });
    match best {
        Some((trial, (big, small))) => {
            let candidate = order.colon(&small, &big);
            report.verdict = Verdict::CounterexampleFoundAsExpected;
            report.witnesses.push(json!({
                "kind": "cdr_counterexample",
                "divisor": big,
                "dividend": small,
                "colon_candidate": candidate,
                "divisor_times_candidate": order.ideal_mul(&big, &candidate),
                "divisor_invertible": order.is_invertible(&big),
                "seed": params.seed,
                "trial": trial,
            }));
            report.summary = format!(
                "{} is not integrally closed: {big} contains {small} but does not divide it",
                order.descriptor()
            );
        }
        None => {
            report.verdict = Verdict::Fail;
            report.summary = format!(
                "{} is not a maximal order but no containment without division was found in {} \
                 trials",
                order.descriptor(),
                params.trials
            );
        }
    }
    Ok(())
}

/// Elements of norm `n` in `Z[√-s]`, by exhaustive search over `a² + s·b² = n`.
pub fn elements_of_norm(order: &QuadOrder, n: u64) -> Vec<QElem> {
    let s = order.s().to_u64().unwrap_or(u64::MAX);
    let mut out = Vec::new();
    let mut b = 0u64;
    while s.saturating_mul(b * b) <= n {
        let rest = n - s * b * b;
        let a = rest.isqrt();
        if a * a == rest {
            for (x, y) in [(a as i64, b as i64), (-(a as i64), b as i64), (a as i64, -(b as i64)), (-(a as i64), -(b as i64))] {
                let e = QElem::new(x, y);
                if !out.contains(&e) {
                    out.push(e);
                }
            }
        }
        b += 1;
    }
    out
}

pub(super) fn check_ufd_failure(
    params: &CheckParams,
    report: &mut VerifyReport,
) -> Result<(), VerifyError> {
    let order = QuadOrder::new(14)?;
    report.param("s", 14);
    report.param("seed", params.seed);
    let mut problems = Vec::new();
    let one_plus = QElem::new(1, 1);
    let one_minus = QElem::new(1, -1);
    let elements = [QElem::int(3), QElem::int(5), one_plus.clone(), one_minus.clone()];
    for e in [&one_plus, &one_minus] {
        if order.norm(e) != BigInt::from(15) {
            problems.push(format!("N({e}) is not 15"));
        }
    }
    if order.mul(&one_plus, &one_minus) != QElem::int(15) {
        problems.push("(1+w)(1-w) is not 15".into());
    }
    // a proper factor of an element of norm 9, 25 or 15 would have norm 3 or 5
    let small_norms: Vec<(u64, usize)> =
        [3, 5].iter().map(|&n| (n, elements_of_norm(&order, n).len())).collect();
    if small_norms.iter().any(|&(_, count)| count > 0) {
        problems.push("an element of norm 3 or 5 exists".into());
    }
    let units = elements_of_norm(&order, 1);
    let associated = units.iter().any(|u| {
        let three = order.mul(u, &QElem::int(3));
        let five = order.mul(u, &QElem::int(5));
        [&one_plus, &one_minus].iter().any(|x| **x == three || **x == five)
    });
    if associated {
        problems.push("the two factorizations are associated".into());
    }

    let principal = |e: &QElem| order.principal(e);
    let three_five = order.ideal_mul(&principal(&QElem::int(3))?, &principal(&QElem::int(5))?);
    let conjugates = order.ideal_mul(&principal(&one_plus)?, &principal(&one_minus)?);
    let fifteen = order.scalar_ideal(&15.into());
    let mut multisets = Vec::new();
    for ideal in [&fifteen, &three_five, &conjugates] {
        match order.factor_into_maximals(ideal, DEFAULT_STEP_CAP)? {
            Factorization::Factors { mut factors } => {
                factors.sort();
                multisets.push(factors);
            }
            other => problems.push(format!("{ideal} does not factor: {other:?}")),
        }
    }
    let mut above: Vec<QIdeal> = order.maximal_ideals_above(3)?;
    above.extend(order.maximal_ideals_above(5)?);
    above.sort();
    if multisets.len() != 3 || multisets.iter().any(|m| *m != above) {
        problems.push("the three ideals do not share the factorization above 3 and 5".into());
    }
    let length = order.quotient_ring(&fifteen)?.composition_length().map_err(QuadError::from)?;
    if length != 4 {
        problems.push(format!("R/(15) has composition length {length}"));
    }

    report.stats.trials = 1;
    report.witnesses.push(json!({
        "kind": "factorizations",
        "elements": elements,
        "norms": elements.iter().map(|e| order.norm(e).to_string()).collect::<Vec<_>>(),
        "elements_of_norm": small_norms.iter().map(|(n, c)| json!({"norm": n, "count": c})).collect::<Vec<_>>(),
        "maximal_ideals": above,
        "composition_length": length,
    }));
    for p in &problems {
        report.witnesses.push(json!({ "kind": "violation", "detail": p }));
    }
    report.verdict = if problems.is_empty() { Verdict::Pass } else { Verdict::Fail };
    report.summary = "15 = 3·5 = (1+w)(1-w) in Z[sqrt(-14)] with all four factors irreducible and \
                      pairwise non-associate; (15), (3)(5) and (1+w)(1-w) share one factorization \
                      into four maximal ideals"
        .into();
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::{run, CheckId};

    fn params(s: u64, trials: u64, seed: u64) -> CheckParams {
        CheckParams { s, trials, seed, ..CheckParams::default() }
    }

    #[test]
    fn norms_by_search() {
        let o = QuadOrder::new(14).unwrap();
        assert!(elements_of_norm(&o, 3).is_empty());
        assert!(elements_of_norm(&o, 5).is_empty());
        assert_eq!(elements_of_norm(&o, 1).len(), 2);
        assert_eq!(elements_of_norm(&o, 15).len(), 4);
        assert_eq!(elements_of_norm(&o, 0), vec![QElem::int(0)]);
    }

    #[test]
    fn chains_end_at_the_ideal() {
        let o = QuadOrder::new(14).unwrap();
        let i = o.scalar_ideal(&15.into());
        let mut rng = trial_stream(1, 0);
        let chain = greedy_descending_chain(&o, &i, &mut rng).unwrap();
        assert_eq!(chain.first(), Some(&o.unit_ideal()));
        assert_eq!(chain.last(), Some(&i));
        for w in chain.windows(2) {
            assert!(o.contains(&w[0], &w[1]) && w[0] != w[1]);
        }
        assert!(chain.len() - 1 <= 4);
    }

    #[test]
    fn reduced_rm_campaigns() {
        let r = run(CheckId::ReducedRm, &params(14, 50, 1), false).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.stats.max_chain >= 1);
        let r = run(CheckId::ReducedRm, &params(3, 50, 1), false).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let r = run(CheckId::ReducedRm, &params(14, 0, 1), false).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.stats.trials, 0);
    }

    #[test]
    fn cdr_campaigns() {
        assert_eq!(run(CheckId::Cdr, &params(14, 100, 7), false).unwrap().verdict, Verdict::Pass);
        assert_eq!(run(CheckId::Cdr, &params(1, 30, 7), false).unwrap().verdict, Verdict::Pass);
        let r = run(CheckId::Cdr, &params(3, 100, 7), false).unwrap();
        assert_eq!(r.verdict, Verdict::CounterexampleFoundAsExpected);
        let w = &r.witnesses[0];
        assert_eq!(w["divisor"], "(2, 1+1*w)");
        assert_eq!(w["dividend"], "(2, 0+2*w)");
        assert_eq!(w["divisor_invertible"], false);
    }

    #[test]
    fn ufd_campaign() {
        let r = run(CheckId::Ufd, &CheckParams::default(), false).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.to_json());
        assert_eq!(r.witnesses[0]["maximal_ideals"].as_array().unwrap().len(), 4);
    }
}
