use std::collections::HashSet;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{CheckParams, Verdict, VerifyReport};
use crate::finring::{format_poly, parse_ring, Decomposition, FinRingError, FiniteRing};

pub fn default_corpus() -> Vec<String> {
    ["Z6", "Z4", "Z5[x]/(x^2)", "Z6[x]/(x^2)"].map(String::from).to_vec()
}

fn poly_rings(n: u64, degree: usize) -> impl Iterator<Item = String> {
    let count = n.pow(degree as u32);
    (0..count).map(move |mut k| {
        let mut coeffs = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            coeffs.push(k % n);
            k /= n;
        }
        coeffs.push(1);
        format!("Z{n}[x]/({})", format_poly(&coeffs))
    })
}

/// `Z_n` and every `Z_n[x]/(f)` with `f` monic of degree 1 or 2, for `2 <= n <= 12`; pairwise
/// products of `Z_n` and the degree-2 rings over `Z_2..Z_5` of order at most 64; and triple
/// products `Z_a × Z_b × Z_c` of order at most 64. Descriptors are canonical and distinct.
pub fn standard_corpus() -> Vec<String> {
    let mut singles = Vec::new();
    for n in 2..=12u64 {
        singles.push(format!("Z{n}"));
        singles.extend(poly_rings(n, 1));
        singles.extend(poly_rings(n, 2));
    }
    let mut factors: Vec<(String, u64)> = (2..=12u64).map(|n| (format!("Z{n}"), n)).collect();
    for n in 2..=5u64 {
        factors.extend(poly_rings(n, 2).map(|d| (d, n * n)));
    }
    let mut products = Vec::new();
    for (i, (x, ox)) in factors.iter().enumerate() {
        for (y, oy) in &factors[i..] {
            if ox * oy <= 64 {
                products.push(format!("{x} * {y}"));
            }
        }
    }
    for a in 2..=12u64 {
        for b in a..=12 {
            for c in b..=12 {
                if a * b * c <= 64 {
                    products.push(format!("Z{a} * Z{b} * Z{c}"));
                }
            }
        }
    }
    let mut seen = HashSet::new();
    singles
        .into_iter()
        .chain(products)
        .map(|d| parse_ring(&d).expect("corpus descriptors are valid").descriptor().to_string())
        .filter(|d| seen.insert(d.clone()))
        .collect()
}

fn corpus(params: &CheckParams) -> Vec<String> {
    params.corpus.clone().unwrap_or_else(default_corpus)
}

/// Per-ring result: a summary record plus any violated properties.
struct RingOutcome {
    record: Value,
    violations: Vec<Value>,
}

fn violation(ring: &FiniteRing, property: &str, detail: String) -> Value {
    json!({
        "kind": "violation",
        "descriptor": ring.descriptor(),
        "property": property,
        "detail": detail,
    })
}

fn error_entry(descriptor: &str, err: &FinRingError) -> Value {
    json!({ "kind": "error", "descriptor": descriptor, "message": err.to_string() })
}

fn akizuki_ring(ring: &FiniteRing) -> Result<RingOutcome, FinRingError> {
    let mut violations = Vec::new();
    let nil = ring.nilradical();
    let reduced = nil.is_zero();
    let decomposition = ring.decompose_fields()?;
    if decomposition.is_fields() != reduced {
        violations.push(violation(
            ring,
            "fields_iff_reduced",
            format!("reduced = {reduced} but field decomposition = {}", decomposition.is_fields()),
        ));
    }
    let primes = ring.prime_spectrum()?;
    let meet = primes.iter().fold(ring.unit_ideal(), |acc, p| acc.intersection(p));
    if meet != nil {
        violations.push(violation(
            ring,
            "nilradical_is_meet_of_primes",
            format!("{} vs {}", ring.format_ideal(&nil), ring.format_ideal(&meet)),
        ));
    }
    let jacobson = ring.jacobson_radical()?;
    if !ring.is_nilpotent_ideal(&jacobson) {
        violations.push(violation(
            ring,
            "jacobson_nilpotent",
            ring.format_ideal(&jacobson),
        ));
    }
    let ideals = ring.enumerate_ideals()?;
    for ideal in &ideals {
        let by_socle = ring.is_essential(ideal);
        let by_definition = ring.is_essential_by_definition(ideal)?;
        if by_socle != by_definition {
            violations.push(violation(
                ring,
                "essential_iff_contains_socle",
                format!(
                    "{}: socle test {by_socle}, definition {by_definition}",
                    ring.format_ideal(ideal)
                ),
            ));
        }
    }
    if !reduced {
        if let Err(e) = ring.quotient(&nil)?.check_correspondence() {
            violations.push(violation(ring, "correspondence", e.to_string()));
        }
    }
    let fields = match &decomposition {
        Decomposition::Fields(f) => json!(f.field_names()),
        Decomposition::Nilpotent { .. } => Value::Null,
    };
    let record = json!({
        "kind": "ring",
        "descriptor": ring.descriptor(),
        "order": ring.order(),
        "ideals": ideals.len(),
        "reduced": reduced,
        "fields": fields,
    });
    Ok(RingOutcome { record, violations })
}

fn poly_rm_ring(ring: &FiniteRing) -> Result<RingOutcome, FinRingError> {
    let criterion = ring.rm_poly_criterion();
    let fields = ring.decompose_fields()?.is_fields();
    let mut violations = Vec::new();
    if criterion != fields {
        violations.push(violation(
            ring,
            "criterion_iff_field_product",
            format!("criterion {criterion}, field product {fields}"),
        ));
    }
    let record = json!({
        "kind": "ring",
        "descriptor": ring.descriptor(),
        "criterion": criterion,
    });
    Ok(RingOutcome { record, violations })
}

/// Runs `per_ring` over the corpus in parallel and folds the outcomes into the report in corpus
/// order. Descriptors that fail to parse or exceed a cap become error entries.
fn run_corpus(
    report: &mut VerifyReport,
    corpus: &[String],
    per_ring: fn(&FiniteRing) -> Result<RingOutcome, FinRingError>,
) {
    let outcomes: Vec<Result<RingOutcome, FinRingError>> = corpus
        .par_iter()
        .map(|d| parse_ring(d).and_then(|r| per_ring(&r)))
        .collect();
    let mut failed = false;
    for (descriptor, outcome) in corpus.iter().zip(outcomes) {
        match outcome {
            Ok(o) => {
                report.stats.trials += 1;
                failed |= !o.violations.is_empty();
                report.witnesses.push(o.record);
                report.witnesses.extend(o.violations);
            }
            Err(e) => report.witnesses.push(error_entry(descriptor, &e)),
        }
    }
    if failed {
        report.verdict = Verdict::Fail;
    }
}

pub(super) fn check_akizuki(params: &CheckParams, report: &mut VerifyReport) {
    let corpus = corpus(params);
    report.param("corpus", corpus.clone());
    run_corpus(report, &corpus, akizuki_ring);
    let errors = report.witnesses_of("error").count();
    report.summary = format!(
        "{} rings checked, {} rejected: field decomposition exists iff the nilradical is zero; \
         the nilradical is the meet of the primes; the Jacobson radical is nilpotent; \
         essential iff containing the socle on every ideal",
        report.stats.trials, errors
    );
}

pub(super) fn check_polynomial_rm(params: &CheckParams, report: &mut VerifyReport) {
    let corpus = corpus(params);
    report.param("corpus", corpus.clone());
    run_corpus(report, &corpus, poly_rm_ring);
    // fixed instances: a local ring with nonzero nilpotents, and a product of fields
    for (descriptor, expected) in [("Z5[x]/(x^2)", false), ("Z2 * Z3", true)] {
        let ring = parse_ring(descriptor).expect("fixed instance parses");
        let criterion = ring.rm_poly_criterion();
        if criterion != expected {
            report.verdict = Verdict::Fail;
        }
        report.witnesses.push(json!({
            "kind": "instance",
            "descriptor": descriptor,
            "criterion": criterion,
            "expected": expected,
        }));
    }
    report.summary = format!(
        "{} rings checked: R[y] has the restricted minimum condition iff R is a finite product \
         of fields",
        report.stats.trials
    );
}
