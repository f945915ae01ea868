use rayon::prelude::*;
use serde_json::{json, Value};

use super::{CheckParams, Verdict, VerifyError, VerifyReport};
use crate::cofinring::{ascending_chain, BoolSet, CofinIdeal, Essentiality};
use crate::rng::{trial_stream, uniform_below};

/// Supports of sampled sets are drawn from `0..UNIVERSE`.
const UNIVERSE: u64 = 12;

#[derive(Default)]
struct TrialOutcome {
    essential_proper: u64,
    violations: Vec<Value>,
}

fn projection_violation(x: &BoolSet, y: &BoolSet) -> Option<&'static str> {
    let (px, py) = (x.soc_projection(), y.soc_projection());
    if x.add(y).soc_projection() != px ^ py {
        Some("projection does not preserve addition")
    } else if x.mul(y).soc_projection() != px & py {
        Some("projection does not preserve multiplication")
    } else if (px == 0) != CofinIdeal::socle().contains(x) {
        Some("projection kernel differs from the socle")
    } else {
        None
    }
}

/// Checks a classification against the membership rule directly.
fn classification_violation(ideal: &CofinIdeal, sample: &[BoolSet]) -> Option<String> {
    match ideal.classify() {
        Essentiality::NotEssential { witness } => {
            // I({w}) = {∅, {w}} meets the ideal only in 0
            let single = BoolSet::finite([witness]);
            ideal.contains(&single).then(|| format!("witness {{{witness}}} lies in {ideal}"))
        }
        Essentiality::EssentialProper { quotient_order } => {
            let one = BoolSet::one();
            if quotient_order != 2 || ideal.contains(&one) {
                return Some(format!("{ideal} is not proper with quotient of order 2"));
            }
            // every element is congruent to 0 or 1 modulo the ideal
            sample
                .iter()
                .find(|x| !ideal.contains(x) && !ideal.contains(&x.add(&one)))
                .map(|x| format!("{x} is congruent to neither 0 nor 1 modulo {ideal}"))
                .or_else(|| {
                    (0..UNIVERSE + 2)
                        .find(|&n| !ideal.contains(&BoolSet::finite([n])))
                        .map(|n| format!("{ideal} misses the simple ideal of {{{n}}}"))
                })
        }
        Essentiality::EssentialImproper { quotient_order } => {
            (quotient_order != 1 || !ideal.contains(&BoolSet::one()))
                .then(|| format!("{ideal} is not the whole ring"))
        }
    }
}

fn trial(params: &CheckParams, index: u64) -> TrialOutcome {
    let mut rng = trial_stream(params.seed, index);
    let x = BoolSet::random(&mut rng, UNIVERSE);
    let y = BoolSet::random(&mut rng, UNIVERSE);
    let mut out = TrialOutcome::default();
    let replay = |what: String| {
        json!({ "kind": "violation", "detail": what, "seed": params.seed, "trial": index })
    };
    if let Some(what) = projection_violation(&x, &y) {
        out.violations.push(replay(format!("{what}: x = {x}, y = {y}")));
    }
    let gens = (0..uniform_below(&mut rng, 3))
        .map(|_| BoolSet::random(&mut rng, UNIVERSE))
        .collect();
    let ideal = CofinIdeal {
        gens,
        plus_socle: uniform_below(&mut rng, 2) == 1,
    };
    if let Some(what) = classification_violation(&ideal, &[x, y]) {
        out.violations.push(replay(what));
    }
    if matches!(ideal.classify(), Essentiality::EssentialProper { .. }) {
        out.essential_proper = 1;
    }
    out
}

pub(super) fn check_cofinite(
    params: &CheckParams,
    report: &mut VerifyReport,
) -> Result<(), VerifyError> {
    report.param("n", params.n);
    report.param("trials", params.trials);
    report.param("seed", params.seed);
    let chain = ascending_chain(params.n)?;
    if let Some(step) = chain.first_defect() {
        report.verdict = Verdict::Fail;
        report.witnesses.push(json!({ "kind": "violation", "detail": "chain step not strict", "step": step }));
    }
    report.stats.max_chain = chain.ideals.len() as u64;
    report.witnesses.push(json!({
        "kind": "ascending_chain",
        "length": chain.ideals.len(),
        "first": chain.ideals[0],
        "last": chain.ideals[chain.ideals.len() - 1],
        "first_witness": chain.witnesses[0],
    }));

    let (zero, one) = (BoolSet::zero(), BoolSet::one());
    if zero.soc_projection() != 0 || one.soc_projection() != 1 {
        report.verdict = Verdict::Fail;
        report.witnesses.push(json!({ "kind": "violation", "detail": "projection is not unital and onto" }));
    }
    let outcomes: Vec<TrialOutcome> = (0..params.trials)
        .into_par_iter()
        .map(|t| trial(params, t))
        .collect();
    let mut essential_proper = 0;
    for o in outcomes {
        report.stats.trials += 1;
        essential_proper += o.essential_proper;
        if !o.violations.is_empty() {
            report.verdict = Verdict::Fail;
            report.witnesses.extend(o.violations);
        }
    }
    report.witnesses.push(json!({
        "kind": "essential_ideals",
        "sampled_proper_essential": essential_proper,
        "quotient_order": 2,
    }));
    report.summary = format!(
        "finite/cofinite subsets of N: ascending chain of {} principal ideals is strict, so the \
         ring is not Noetherian; the socle projection is a homomorphism onto F2 on {} random \
         pairs; {} sampled proper essential ideals all have quotient of order 2",
        chain.ideals.len(),
        report.stats.trials,
        essential_proper
    );
    Ok(())
}
