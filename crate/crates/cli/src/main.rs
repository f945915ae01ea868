//! `rmring`: inspect finite rings, ideals of `Z[√-s]` and the finite/cofinite Boolean ring, and
//! run the seeded verification campaigns.
//!
//! Exit status is 0 on success (including an expected counterexample), 1 when a campaign reports
//! `fail`, and 2 on usage, parse or module errors.

use std::error::Error;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rmring::cofinring::{ascending_chain, BoolSet, CofinIdeal};
use rmring::finring::{parse_ring, Decomposition, FiniteRing};
use rmring::quadorder::{Division, Factorization, QuadOrder, DEFAULT_STEP_CAP};
use rmring::verifier::{self, CheckId, CheckParams, Verdict};
use serde_json::{json, Value};

type CliResult = Result<ExitCode, Box<dyn Error>>;

#[derive(Parser)]
#[command(name = "rmring", version, about = "Ideal arithmetic and verification campaigns")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a finite ring such as "Z6[x]/(x^2)" or "Z2 * Z3".
    Ring {
        descriptor: String,
        #[command(flatten)]
        action: RingAction,
    },
    /// Ideal arithmetic in an order such as "Z[sqrt(-14)]".
    Order {
        descriptor: String,
        #[command(flatten)]
        action: OrderAction,
    },
    /// The ring of finite and cofinite subsets of N.
    Cofin {
        #[command(flatten)]
        action: CofinAction,
    },
    /// Run a seeded verification campaign.
    Verify(VerifyArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct RingAction {
    /// List every ideal.
    #[arg(long)]
    ideals: bool,
    /// Show the nilradical and whether it is prime.
    #[arg(long)]
    nilradical: bool,
    /// Show the socle, the sum of the minimal ideals.
    #[arg(long)]
    socle: bool,
    /// List the prime ideals.
    #[arg(long)]
    primes: bool,
    /// Split the ring into a product of fields, if it is reduced.
    #[arg(long)]
    decompose: bool,
    /// Show the composition length.
    #[arg(long)]
    length: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct OrderAction {
    /// Factor an ideal such as "(15, 0+15*w)" into maximal ideals.
    #[arg(long, value_name = "IDEAL")]
    factor: Option<String>,
    /// Decide whether I divides J.
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    divides: Option<Vec<String>>,
    /// Describe the finite quotient ring R/I.
    #[arg(long, value_name = "IDEAL")]
    quotient: Option<String>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CofinAction {
    /// Certify a strictly ascending chain of n principal ideals.
    #[arg(long, value_name = "N")]
    chain: Option<usize>,
    /// Project a set such as "{1,2}" or "~{3}" onto F2 = R/Soc.
    #[arg(long, value_name = "SET")]
    project: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of akizuki, reduced-rm, cdr, poly-rm, cofinite, ufd.
    check: String,
    #[arg(long, default_value_t = 14)]
    s: u64,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Coordinate bound for sampled generators.
    #[arg(long, default_value_t = 20)]
    bound: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Chain length for the cofinite check.
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Ring descriptor for the finite-ring checks; repeatable.
    #[arg(long = "ring", value_name = "DESCRIPTOR")]
    rings: Vec<String>,
    /// Use the full standard corpus for the finite-ring checks.
    #[arg(long, conflicts_with = "rings")]
    standard_corpus: bool,
    /// Record wall time in the report.
    #[arg(long)]
    timing: bool,
}

fn emit(json: bool, value: Value, text: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(&value).expect("values serialize"));
    } else {
        println!("{text}");
    }
}

fn ideal_list(ring: &FiniteRing, ideals: &[rmring::finring::Ideal]) -> Vec<String> {
    ideals.iter().map(|i| ring.format_ideal(i)).collect()
}

fn ring_command(descriptor: &str, action: &RingAction, json: bool) -> CliResult {
    let ring = parse_ring(descriptor)?;
    let name = ring.descriptor().to_string();
    if action.ideals {
        let ideals = ring.enumerate_ideals()?;
        let rows: Vec<Value> = ideals
            .iter()
            .map(|i| json!({ "ideal": ring.format_ideal(i), "size": i.size() }))
            .collect();
        let text = ideals
            .iter()
            .map(|i| format!("{:>6}  {}", i.size(), ring.format_ideal(i)))
            .collect::<Vec<_>>()
            .join("\n");
        emit(json, json!({ "ring": name, "ideals": rows }), format!("{name}: {} ideals\n{text}", ideals.len()));
    } else if action.nilradical {
        let nil = ring.nilradical();
        let shown = ring.format_ideal(&nil);
        match ring.non_prime_witness(&nil) {
            Some((a, b)) => {
                let (la, lb, lp) = (ring.label(a), ring.label(b), ring.label(ring.mul(a, b)));
                emit(
                    json,
                    json!({ "ring": name, "nilradical": shown, "prime": false,
                            "witness": { "left": la, "right": lb, "product": lp } }),
                    format!(
                        "nilradical: {shown}\nnot prime: ({la})({lb}) = {lp} lies in the nilradical, \
                         neither factor does"
                    ),
                );
            }
            None => {
                // the nilradical is proper in a nonzero ring, so this is a genuine prime
                emit(
                    json,
                    json!({ "ring": name, "nilradical": shown, "prime": true }),
                    format!("nilradical: {shown}\nprime: yes"),
                );
            }
        }
    } else if action.socle {
        let socle = ring.socle();
        let minimal = ideal_list(&ring, &ring.minimal_ideals());
        emit(
            json,
            json!({ "ring": name, "socle": ring.format_ideal(&socle), "minimal_ideals": minimal }),
            format!("socle: {}\nminimal ideals: {}", ring.format_ideal(&socle), minimal.join(" ")),
        );
    } else if action.primes {
        let primes = ideal_list(&ring, &ring.prime_spectrum()?);
        emit(
            json,
            json!({ "ring": name, "primes": primes }),
            format!("{} prime ideals, all maximal:\n{}", primes.len(), primes.join("\n")),
        );
    } else if action.decompose {
        match ring.decompose_fields()? {
            Decomposition::Fields(f) => {
                let fields = f.field_names();
                let maximals = ideal_list(&ring, &f.maximals);
                emit(
                    json,
                    json!({ "ring": name, "reduced": true, "fields": fields, "maximals": maximals }),
                    format!("{name} ≅ {}\nmaximal ideals: {}", fields.join(" × "), maximals.join(" ")),
                );
            }
            Decomposition::Nilpotent { witness } => {
                let w = ring.label(witness);
                emit(
                    json,
                    json!({ "ring": name, "reduced": false, "nilpotent": w }),
                    format!("{name} is not a product of fields: {w} is a nonzero nilpotent"),
                );
            }
        }
    } else {
        let length = ring.composition_length()?;
        emit(json, json!({ "ring": name, "length": length }), format!("composition length: {length}"));
    }
    Ok(ExitCode::SUCCESS)
}

fn order_command(descriptor: &str, action: &OrderAction, json: bool) -> CliResult {
    let order = QuadOrder::parse(descriptor)?;
    let name = order.descriptor();
    if let Some(text) = &action.factor {
        let ideal = order.parse_ideal(text)?;
        match order.factor_into_maximals(&ideal, DEFAULT_STEP_CAP)? {
            Factorization::Factors { factors } => {
                let shown: Vec<String> = factors.iter().map(|p| p.to_string()).collect();
                emit(
                    json,
                    json!({ "order": name, "ideal": ideal.to_string(), "factors": shown }),
                    format!("{ideal} = {}", shown.join(" · ")),
                );
            }
            Factorization::CdrFailure { maximal, current, candidate, extracted } => {
                let done: Vec<String> = extracted.iter().map(|p| p.to_string()).collect();
                emit(
                    json,
                    json!({ "order": name, "ideal": ideal.to_string(), "factors": null,
                            "maximal": maximal.to_string(), "current": current.to_string(),
                            "candidate": candidate.to_string(), "extracted": done }),
                    format!(
                        "{ideal} has no factorization into maximal ideals: {maximal} contains \
                         {current} but {maximal} · {candidate} ≠ {current}"
                    ),
                );
            }
        }
    } else if let Some(pair) = &action.divides {
        let (i, j) = (order.parse_ideal(&pair[0])?, order.parse_ideal(&pair[1])?);
        let contained = order.contains(&i, &j);
        match order.divides(&i, &j) {
            Division::Divides { witness } => emit(
                json,
                json!({ "order": name, "divisor": i.to_string(), "dividend": j.to_string(),
                        "contains": contained, "divides": true, "witness": witness.to_string() }),
                format!("{i} divides {j}: {j} = {i} · {witness}"),
            ),
            Division::Fails { candidate } => emit(
                json,
                json!({ "order": name, "divisor": i.to_string(), "dividend": j.to_string(),
                        "contains": contained, "divides": false, "colon": candidate.to_string(),
                        "divisor_invertible": order.is_invertible(&i) }),
                format!(
                    "{i} does not divide {j} (contains: {}); ({j} : {i}) = {candidate} and \
                     {i} · {candidate} = {}",
                    if contained { "yes" } else { "no" },
                    order.ideal_mul(&i, &candidate)
                ),
            ),
        }
    } else if let Some(text) = &action.quotient {
        let ideal = order.parse_ideal(text)?;
        let q = order.quotient_ring(&ideal)?;
        let length = q.composition_length()?;
        let fields = match q.decompose_fields()? {
            Decomposition::Fields(f) => Some(f.field_names()),
            Decomposition::Nilpotent { .. } => None,
        };
        let field_text = match &fields {
            Some(names) => names.join(" × "),
            None => "not reduced".to_string(),
        };
        emit(
            json,
            json!({ "order": name, "ideal": ideal.to_string(), "size": q.order(),
                    "is_field": q.is_field(), "length": length, "fields": fields }),
            format!(
                "R/{ideal}: {} elements, field: {}, composition length {length}, {field_text}",
                q.order(),
                if q.is_field() { "yes" } else { "no" }
            ),
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cofin_command(action: &CofinAction, json: bool) -> CliResult {
    if let Some(n) = action.chain {
        let chain = ascending_chain(n)?;
        let strict = chain.first_defect().is_none();
        let steps: Vec<String> = chain.ideals.iter().map(|i| i.to_string()).collect();
        emit(
            json,
            json!({ "length": n, "strict": strict, "ideals": steps, "witnesses": chain.witnesses }),
            format!("{}\nstrictly ascending: {}", steps.join(" ⊊ "), if strict { "yes" } else { "no" }),
        );
    } else if let Some(text) = &action.project {
        let x: BoolSet = text.parse()?;
        let image = x.soc_projection();
        let in_socle = CofinIdeal::socle().contains(&x);
        emit(
            json,
            json!({ "set": x, "image": image, "in_socle": in_socle }),
            format!("{x} ↦ {image} in F2 (in the socle: {})", if in_socle { "yes" } else { "no" }),
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_command(args: &VerifyArgs, json: bool) -> CliResult {
    let check: CheckId = args.check.parse()?;
    let corpus = if args.standard_corpus {
        Some(verifier::standard_corpus())
    } else if args.rings.is_empty() {
        None
    } else {
        Some(args.rings.clone())
    };
    let params = CheckParams {
        s: args.s,
        trials: args.trials,
        bound: args.bound,
        seed: args.seed,
        n: args.n,
        corpus,
    };
    let report = verifier::run(check, &params, args.timing)?;
    if json {
        println!("{}", report.to_json());
    } else {
        println!("{}: {}", report.check, report.verdict);
        println!("{}", report.summary);
        let s = &report.stats;
        print!("trials {}, longest chain {}, resampled {}", s.trials, s.max_chain, s.resampled);
        match s.ms {
            Some(ms) => println!(", {ms} ms"),
            None => println!(),
        }
        for w in report.witnesses.iter().filter(|w| w["kind"] != "ring") {
            println!("{w}");
        }
    }
    Ok(if report.verdict == Verdict::Fail { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Ring { descriptor, action } => ring_command(descriptor, action, cli.json),
        Command::Order { descriptor, action } => order_command(descriptor, action, cli.json),
        Command::Cofin { action } => cofin_command(action, cli.json),
        Command::Verify(args) => verify_command(args, cli.json),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn argument_definitions_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn exactly_one_action_is_required() {
        assert!(Cli::try_parse_from(["rmring", "ring", "Z6"]).is_err());
        assert!(Cli::try_parse_from(["rmring", "ring", "Z6", "--ideals", "--socle"]).is_err());
        assert!(Cli::try_parse_from(["rmring", "ring", "Z6", "--ideals"]).is_ok());
        assert!(Cli::try_parse_from(["rmring", "order", "Z[sqrt(-3)]", "--divides", "(2)"]).is_err());
    }

    #[test]
    fn verify_defaults() {
        let cli = Cli::try_parse_from(["rmring", "verify", "cdr", "--json"]).unwrap();
        assert!(cli.json);
        match cli.command {
            Command::Verify(v) => {
                assert_eq!((v.s, v.trials, v.bound, v.seed, v.n), (14, 100, 20, 0, 100));
            }
            _ => panic!("expected verify"),
        }
    }
}
