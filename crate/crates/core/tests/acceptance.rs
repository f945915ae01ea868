//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and exits nonzero if
//! any criterion fails or overruns its time limit.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{all_ideals, ideals_by_subgroups, ideals_by_subsets, CosetOracle, PolyOracle};
use num_bigint::BigInt;
use rmring::cofinring::{ascending_chain, BoolSet};
use rmring::finring::{parse_ring, FiniteRing};
use rmring::quadorder::{Division, Factorization, QElem, QIdeal, QuadOrder, DEFAULT_STEP_CAP};
use rmring::rng::{seeded, trial_stream, uniform_signed};
use rmring::verifier::{
    default_corpus, run, sample_ideal_with_norm_cap, standard_corpus, CheckId, CheckParams,
    Verdict, VerifyReport,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn campaign(check: CheckId, params: &CheckParams) -> Result<VerifyReport, String> {
    run(check, params, false).map_err(|e| format!("{check}: {e}"))
}

fn expect_verdict(report: &VerifyReport, verdict: Verdict) -> Result<(), String> {
    ensure(report.verdict == verdict, || {
        let first = report.witnesses_of("violation").next().cloned().unwrap_or_default();
        format!("{} returned {} (first violation: {first})", report.check, report.verdict)
    })
}

fn golden_examples() -> Outcome {
    let r5 = parse_ring("Z5[x]/(x^2)").map_err(|e| e.to_string())?;
    let nil5 = r5.nilradical();
    ensure(r5.format_ideal(&nil5) == "(x)", || format!("nilradical {}", r5.format_ideal(&nil5)))?;
    ensure(nil5 == r5.principal_ideal(r5.element("x").unwrap()), || "nilradical is not (x)".into())?;
    ensure(r5.is_prime_ideal(&nil5), || "(x) is not prime in Z5[x]/(x^2)".into())?;

    let r6 = parse_ring("Z6[x]/(x^2)").map_err(|e| e.to_string())?;
    let (a, b) = (r6.element("x+2").unwrap(), r6.element("x+3").unwrap());
    let prod = r6.mul(a, b);
    ensure(r6.label(prod) == "5x", || format!("(x+2)(x+3) = {}", r6.label(prod)))?;
    let oracle = PolyOracle { n: 6, f: vec![0, 0, 1] };
    ensure(oracle.mul(&[2, 1], &[3, 1]) == vec![0, 5], || "schoolbook product differs".into())?;
    let nil6 = r6.nilradical();
    ensure(nil6.contains(prod) && !nil6.contains(a) && !nil6.contains(b), || {
        "membership of 5x, x+2, x+3 in the nilradical is wrong".into()
    })?;
    ensure(!r6.is_prime_ideal(&nil6), || "nilradical of Z6[x]/(x^2) is prime".into())?;
    let witness = r6.non_prime_witness(&nil6).map(|(p, q)| (r6.label(p).to_string(), r6.label(q).to_string()));
    ensure(witness == Some(("x+2".into(), "x+3".into())), || format!("witness {witness:?}"))?;
    Ok("Z5[x]/(x^2): (x) prime; Z6[x]/(x^2): (x+2)(x+3) = 5x, nilradical not prime".into())
}

fn akizuki_suite() -> Outcome {
    let corpus = standard_corpus();
    let params = CheckParams { corpus: Some(corpus.clone()), ..CheckParams::default() };
    let report = campaign(CheckId::Akizuki, &params)?;
    expect_verdict(&report, Verdict::Pass)?;
    let errors = report.witnesses_of("error").count();
    ensure(errors == 0, || format!("{errors} corpus rings could not be checked"))?;
    let rings = report.witnesses_of("ring").count();
    ensure(rings == corpus.len(), || format!("{rings} of {} rings reported", corpus.len()))?;
    Ok(format!("{rings} rings, zero failures"))
}

fn poly_rm_suite() -> Outcome {
    let mut field_products = 0;
    for d in standard_corpus() {
        let ring = parse_ring(&d).map_err(|e| e.to_string())?;
        let fields = ring.decompose_fields().map_err(|e| e.to_string())?.is_fields();
        if fields {
            field_products += 1;
            ensure(ring.rm_poly_criterion(), || format!("criterion false for field product {d}"))?;
        }
    }
    for d in ["Z4", "Z5[x]/(x^2)"] {
        let ring = parse_ring(d).unwrap();
        ensure(!ring.rm_poly_criterion(), || format!("criterion true for {d}"))?;
    }
    let params = CheckParams { corpus: Some(standard_corpus()), ..CheckParams::default() };
    expect_verdict(&campaign(CheckId::PolyRm, &params)?, Verdict::Pass)?;
    Ok(format!("true on {field_products} field products, false on Z4 and Z5[x]/(x^2)"))
}

/// `R/P` is a field. Small norms build the quotient ring; beyond the element cap a prime norm
/// makes `R/P` a ring of prime order, and an inert `(p)` has a residue field of order `p²`.
fn residue_is_field(order: &QuadOrder, p: &QIdeal) -> Result<bool, String> {
    if p.norm() <= BigInt::from(4096) {
        Ok(order.quotient_ring(p).map_err(|e| e.to_string())?.is_field())
    } else {
        order.is_maximal_ideal(p).map_err(|e| e.to_string())
    }
}

fn dedekind_side() -> Outcome {
    let order = QuadOrder::new(14).unwrap();
    let mut rng = seeded(2024);
    let mut pairs = 0;
    for _ in 0..100 {
        let i = order.random_ideal(20, &mut rng);
        let k = order.random_ideal(20, &mut rng);
        let j = order.ideal_mul(&i, &k);
        let sum = order.ideal_add(&i, &k);
        for (big, small) in [(&i, &j), (&sum, &k)] {
            ensure(order.contains(big, small), || format!("{big} does not contain {small}"))?;
            match order.divides(big, small) {
                Division::Divides { witness } if order.ideal_mul(big, &witness) == *small => {}
                other => return Err(format!("{big} does not divide {small}: {other:?}")),
            }
            pairs += 1;
        }
    }
    let mut factored = 0;
    let mut largest = BigInt::from(0);
    let cap = BigInt::from(1_000_000);
    while factored < 100 {
        // a principal part with coordinates up to 150 keeps norms large but within 10^6
        let g = QElem::new(uniform_signed(&mut rng, 150), uniform_signed(&mut rng, 150));
        let ideal = match order.principal(&g) {
            Ok(pg) => order.ideal_mul(&pg, &order.random_ideal(20, &mut rng)),
            Err(_) => continue,
        };
        if ideal.norm() > cap || ideal.is_unit() {
            continue;
        }
        largest = largest.max(ideal.norm());
        let factors = match order.factor_into_maximals(&ideal, DEFAULT_STEP_CAP) {
            Ok(Factorization::Factors { factors }) => factors,
            other => return Err(format!("{ideal}: {other:?}")),
        };
        for p in &factors {
            ensure(residue_is_field(&order, p)?, || format!("R/{p} is not a field"))?;
        }
        ensure(order.ideal_product_all(&factors) == ideal, || format!("{ideal}: product differs"))?;
        factored += 1;
    }
    let params = CheckParams { s: 14, trials: 200, ..CheckParams::default() };
    expect_verdict(&campaign(CheckId::Cdr, &params)?, Verdict::Pass)?;
    Ok(format!("{pairs} nested pairs divide; {factored} ideals factored (largest norm {largest})"))
}

fn converse_side() -> Outcome {
    let params = CheckParams { s: 3, trials: 100, ..CheckParams::default() };
    let report = campaign(CheckId::Cdr, &params)?;
    expect_verdict(&report, Verdict::CounterexampleFoundAsExpected)?;
    let w = report.witnesses_of("cdr_counterexample").next().ok_or("no witness")?;
    ensure(w["divisor"] == "(2, 1+1*w)" && w["dividend"] == "(2, 0+2*w)", || format!("witness {w}"))?;
    ensure(w["divisor_invertible"] == false, || "P reported invertible".into())?;

    let order = QuadOrder::new(3).unwrap();
    let p = order.ideal(2, 1, 1).unwrap();
    let two = order.scalar_ideal(&BigInt::from(2));
    ensure(order.contains(&p, &two), || "P does not contain (2)".into())?;
    ensure(!order.divides(&p, &two).holds(), || "P divides (2)".into())?;
    ensure(!order.is_invertible(&p), || "P is invertible".into())?;
    Ok(format!("P = {p} contains (2) without dividing it; P is not invertible"))
}

fn ufd_reconciliation() -> Outcome {
    let report = campaign(CheckId::Ufd, &CheckParams::default())?;
    expect_verdict(&report, Verdict::Pass)?;
    let order = QuadOrder::new(14).unwrap();
    for n in [3u64, 5] {
        let found = rmring::verifier::elements_of_norm(&order, n);
        ensure(found.is_empty(), || format!("elements of norm {n}: {found:?}"))?;
    }
    for (e, n) in [(QElem::int(3), 9), (QElem::int(5), 25), (QElem::new(1, 1), 15), (QElem::new(1, -1), 15)] {
        ensure(order.norm(&e) == BigInt::from(n), || format!("N({e}) is not {n}"))?;
    }
    let fifteen = order.scalar_ideal(&BigInt::from(15));
    let pr = |a: i64, b: i64| order.principal(&QElem::new(a, b)).unwrap();
    let mut multisets = Vec::new();
    for ideal in [fifteen.clone(), order.ideal_mul(&pr(3, 0), &pr(5, 0)), order.ideal_mul(&pr(1, 1), &pr(1, -1))] {
        let mut f = order
            .factor_into_maximals(&ideal, DEFAULT_STEP_CAP)
            .map_err(|e| e.to_string())?
            .factors()
            .ok_or("factorization failed")?
            .to_vec();
        f.sort();
        multisets.push(f);
    }
    ensure(multisets[0].len() == 4 && multisets.iter().all(|m| *m == multisets[0]), || {
        format!("factorizations differ: {multisets:?}")
    })?;
    let length = order.quotient_ring(&fifteen).unwrap().composition_length().unwrap();
    ensure(length == 4, || format!("composition length {length}"))?;
    let names: Vec<String> = multisets[0].iter().map(|p| p.to_string()).collect();
    Ok(format!("(15) = {}; length of R/(15) is 4", names.join(" ")))
}

fn chain_stabilization() -> Outcome {
    let mut parts = Vec::new();
    for s in [14u64, 3] {
        let params = CheckParams { s, trials: 100, ..CheckParams::default() };
        let report = campaign(CheckId::ReducedRm, &params)?;
        expect_verdict(&report, Verdict::Pass)?;
        ensure(report.stats.trials == 100, || format!("{} trials", report.stats.trials))?;
        parts.push(format!("s={s}: longest chain {}", report.stats.max_chain));
    }
    Ok(parts.join(", "))
}

fn cofinite_certificates() -> Outcome {
    let chain = ascending_chain(100).map_err(|e| e.to_string())?;
    ensure(chain.first_defect().is_none() && chain.ideals.len() == 100, || "chain is not strict".into())?;
    for (k, w) in chain.witnesses.iter().enumerate() {
        // the witness lies in the next ideal but not in the current one
        ensure(chain.ideals[k + 1].contains(w) && !chain.ideals[k].contains(w), || format!("step {k}"))?;
    }
    ensure(BoolSet::one().soc_projection() == 1, || "projection is not onto".into())?;
    let params = CheckParams { n: 100, trials: 10_000, ..CheckParams::default() };
    let report = campaign(CheckId::Cofinite, &params)?;
    expect_verdict(&report, Verdict::Pass)?;
    let ess = report.witnesses_of("essential_ideals").next().ok_or("no essential summary")?;
    let sampled = ess["sampled_proper_essential"].as_u64().unwrap_or(0);
    ensure(sampled > 0, || "no proper essential ideal sampled".into())?;
    Ok(format!("chain of 100, {} pairs, {sampled} proper essential ideals", report.stats.trials))
}

fn ideal_sets(ring: &FiniteRing) -> Result<std::collections::BTreeSet<Vec<usize>>, String> {
    Ok(ring
        .enumerate_ideals()
        .map_err(|e| e.to_string())?
        .iter()
        .map(|i| i.members().collect())
        .collect())
}

fn cross_oracle() -> Outcome {
    let mut rings = 0;
    for d in standard_corpus() {
        let ring = parse_ring(&d).map_err(|e| e.to_string())?;
        if ring.order() > 36 {
            continue;
        }
        let expected = if ring.order() <= 16 { ideals_by_subsets(&ring) } else { ideals_by_subgroups(&ring) };
        ensure(ideal_sets(&ring)? == expected, || format!("ideal lattice of {d} differs"))?;
        rings += 1;
    }
    let mut ideals_checked = 0;
    for s in [1i64, 2, 3, 5, 7, 14] {
        let order = QuadOrder::new(s).unwrap();
        let triples = all_ideals(s, 100);
        let ideals: Vec<QIdeal> = triples.iter().map(|&(a, b, c)| order.ideal(a, b, c).unwrap()).collect();
        let oracles: Vec<CosetOracle> =
            triples.iter().map(|&(a, b, c)| CosetOracle::new(s, &[(a, 0), (b, c)], a * c)).collect();
        for ((ideal, oracle), &(a, _, c)) in ideals.iter().zip(&oracles).zip(&triples) {
            ensure(oracle.index() == a * c, || format!("index of {ideal}"))?;
            for x in -10..=10 {
                for y in -10..=10 {
                    let e = QElem::new(x, y);
                    ensure(order.member(ideal, &e) == oracle.member(x, y), || format!("s={s}: {e} in {ideal}"))?;
                }
            }
            for (other, &(a2, b2, c2)) in ideals.iter().zip(&triples) {
                let expected = oracle.member(a2, 0) && oracle.member(b2, c2);
                ensure(order.contains(ideal, other) == expected, || format!("s={s}: {other} in {ideal}"))?;
            }
            ideals_checked += 1;
        }
    }
    Ok(format!("{rings} rings of order <= 36, {ideals_checked} quadratic ideals of norm <= 100"))
}

fn determinism() -> Outcome {
    let campaigns: Vec<(CheckId, CheckParams)> = vec![
        (CheckId::Akizuki, CheckParams { corpus: Some(default_corpus()), ..CheckParams::default() }),
        (CheckId::PolyRm, CheckParams { seed: 7, ..CheckParams::default() }),
        (CheckId::ReducedRm, CheckParams { s: 14, seed: 11, trials: 50, ..CheckParams::default() }),
        (CheckId::ReducedRm, CheckParams { s: 3, seed: 12, trials: 50, ..CheckParams::default() }),
        (CheckId::Cdr, CheckParams { s: 14, seed: 13, trials: 50, ..CheckParams::default() }),
        (CheckId::Cdr, CheckParams { s: 3, seed: 14, trials: 50, ..CheckParams::default() }),
        (CheckId::Cofinite, CheckParams { seed: 15, trials: 2_000, ..CheckParams::default() }),
        (CheckId::Ufd, CheckParams::default()),
    ];
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().map_err(|e| e.to_string())?;
    for (check, params) in &campaigns {
        let first = campaign(*check, params)?.to_json();
        let second = campaign(*check, params)?.to_json();
        let serial = single.install(|| campaign(*check, params))?.to_json();
        ensure(first == second && first == serial, || format!("{check} report is not reproducible"))?;
    }
    // the trial streams themselves are pinned
    let mut a = trial_stream(5, 9);
    let mut b = trial_stream(5, 9);
    let order = QuadOrder::new(14).unwrap();
    ensure(
        sample_ideal_with_norm_cap(&order, 20, 512, &mut a) == sample_ideal_with_norm_cap(&order, 20, 512, &mut b),
        || "trial stream differs".into(),
    )?;
    Ok(format!("{} campaigns byte-identical across runs and thread counts", campaigns.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<u64>, fn() -> Outcome); 10] = [
        ("golden finite-ring examples", Some(5), golden_examples),
        ("field decomposition and essential ideals over the corpus", Some(120), akizuki_suite),
        ("polynomial criterion over the corpus", None, poly_rm_suite),
        ("division and factorization in Z[sqrt(-14)]", Some(60), dedekind_side),
        ("containment without division in Z[sqrt(-3)]", Some(10), converse_side),
        ("two factorizations of 15 in Z[sqrt(-14)]", None, ufd_reconciliation),
        ("descending chains bounded by composition length", Some(60), chain_stabilization),
        ("finite/cofinite ring certificates", Some(10), cofinite_certificates),
        ("ideal enumeration and membership against brute force", None, cross_oracle),
        ("determinism of seeded campaigns", None, determinism),
    ];
    let mut failed = 0;
    for (k, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(secs)) = (&outcome, limit) {
            if elapsed > Duration::from_secs(secs) {
                outcome = Err(format!("took {:.1}s, limit {secs}s", elapsed.as_secs_f64()));
            }
        }
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({secs:.2}s)", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail} ({secs:.2}s)", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

