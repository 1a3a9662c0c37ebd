//! Command-line front end: compute invariants of posets and matroids, run
//! identity-verification suites, scan small matroids for -1 roots of the
//! J-Mobius polynomial, and check invariants against polytope subdivision
//! fixtures.
//!
//! Exit codes: 0 success (identities hold), 1 input error, 2 an identity
//! violation was found.

mod objects;
mod suites;

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use objects::{parse_object, Obj};
use trinc::incidence::mobius;
use trinc::invariants::{char_poly, j_char_poly, j_mobius_poly};
use trinc::matroid::{
    matroid_j_char, matroid_j_mobius, u24_split_fixture, valuation_check, FixtureDescriptor,
    SubdivisionFixture,
};
use trinc::poly::LaurentPoly;
use trinc::search::search_minus_one_roots;
use trinc::trincidence::j_fast;
use trinc::Error;

#[derive(Parser)]
#[command(
    name = "trinc",
    version,
    about = "Exact incidence-function and matroid-invariant computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an invariant of a poset or matroid
    Compute {
        /// Named object (B3, C4, U2,4, L2^3, K3, K4, K33, K33-dual) or JSON
        #[arg(long)]
        object: String,
        #[arg(long, value_enum)]
        invariant: Invariant,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Field size for the L object
        #[arg(long)]
        q: Option<u64>,
        /// Dimension for the L object
        #[arg(long)]
        n: Option<u32>,
    },
    /// Run an identity-verification suite; exits 2 on any violation
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Object to verify against (not needed for the qseries suite)
        #[arg(long)]
        object: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        q: Option<u64>,
        /// For qseries: largest symbolic n (capped internally); also the L dimension
        #[arg(long)]
        n: Option<u32>,
    },
    /// Catalog small simple matroids by whether -1 is a root of their
    /// J-Mobius polynomial
    Search {
        #[arg(long, default_value_t = 7)]
        max_ground: usize,
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate an invariant's inclusion-exclusion residual over a
    /// subdivision fixture
    Subdivision {
        /// Named fixture (u24-split) or fixture JSON
        #[arg(long)]
        fixture: String,
        #[arg(long, value_enum)]
        invariant: PolyInvariant,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Invariant {
    /// Mobius function table
    Mu,
    /// J-function table
    J,
    /// classical characteristic polynomial
    Chi,
    /// J-characteristic polynomial
    Jchar,
    /// J-Mobius polynomial
    Jmobius,
}

#[derive(Copy, Clone, ValueEnum)]
enum PolyInvariant {
    Jchar,
    Jmobius,
}

#[derive(Copy, Clone, ValueEnum, PartialEq)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, ValueEnum)]
enum Suite {
    Classical,
    #[value(name = "j-axioms")]
    JAxioms,
    Generalized,
    Polynomial,
    Structure,
    Qseries,
    All,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help / --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Compute {
            object,
            invariant,
            format,
            q,
            n,
        } => {
            let obj = parse_object(&object, q, n)?;
            compute(&obj, invariant, format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            object,
            format,
            q,
            n,
        } => {
            let obj = object.map(|o| parse_object(&o, q, n)).transpose()?;
            verify(suite, obj.as_ref(), format, n.unwrap_or(12) as usize)
        }
        Command::Search {
            max_ground,
            max_rank,
            format,
        } => {
            let rows = search_minus_one_roots(max_ground, max_rank)?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string(&rows).expect("serializable rows")
                ),
                Format::Text => {
                    println!(
                        "{:<44} {:>6} {:>4} {:>9} {:>7} {:>12}",
                        "matroid", "ground", "rank", "connected", "modular", "M(-1)"
                    );
                    for r in &rows {
                        println!(
                            "{:<44} {:>6} {:>4} {:>9} {:>7} {:>12}",
                            r.name, r.ground, r.rank, r.connected, r.modular, r.m_at_minus_one
                        );
                    }
                    let vanishing = rows.iter().filter(|r| r.vanishes).count();
                    println!(
                        "{} matroids scanned, {} with -1 as a root",
                        rows.len(),
                        vanishing
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Subdivision {
            fixture,
            invariant,
            format,
        } => {
            let fix = parse_fixture(&fixture)?;
            let report = match invariant {
                PolyInvariant::Jchar => valuation_check(&fix, matroid_j_char)?,
                PolyInvariant::Jmobius => valuation_check(&fix, matroid_j_mobius)?,
            };
            match format {
                Format::Json => {
                    let doc = serde_json::json!({
                        "parent": report.parent_value,
                        "inclusion_exclusion": report.inclusion_exclusion,
                        "residual": report.residual,
                    });
                    println!("{doc}");
                }
                Format::Text => {
                    println!("parent value:        {}", report.parent_value);
                    println!("inclusion-exclusion: {}", report.inclusion_exclusion);
                    println!("residual:            {}", report.residual);
                }
            }
            // The J-characteristic is additive over subdivisions; a nonzero
            // residual there is an identity violation. The J-Mobius residual
            // is reported as evidence only.
            match invariant {
                PolyInvariant::Jchar if !report.residual.is_zero() => Ok(ExitCode::from(2)),
                _ => Ok(ExitCode::SUCCESS),
            }
        }
    }
}

fn parse_fixture(text: &str) -> Result<SubdivisionFixture, Error> {
    let text = text.trim();
    if text == "u24-split" {
        return Ok(u24_split_fixture());
    }
    if text.starts_with('{') {
        let descr: FixtureDescriptor = serde_json::from_str(text)
            .map_err(|e| Error::Arity(format!("invalid fixture JSON: {e}")))?;
        return descr.build();
    }
    Err(Error::Arity(format!(
        "unknown fixture {text:?}; use u24-split or JSON"
    )))
}

fn bigint_json(v: &BigInt) -> serde_json::Value {
    serde_json::Value::Number(
        serde_json::Number::from_str(&v.to_string())
            .expect("decimal integer parses as a JSON number"),
    )
}

fn compute(obj: &Obj, invariant: Invariant, format: Format) -> Result<(), Error> {
    match invariant {
        Invariant::Mu => {
            let p = obj.poset()?;
            let mu = mobius(&p);
            match format {
                Format::Json => {
                    let values: Vec<serde_json::Value> = p
                        .flags2()
                        .map(|(x, y)| {
                            serde_json::json!({"flag": [x, y], "value": bigint_json(mu.value(x, y).unwrap())})
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::json!({"invariant": "mu", "values": values})
                    );
                }
                Format::Text => {
                    for (x, y) in p.flags2() {
                        println!(
                            "mu({}, {}) = {}",
                            p.name(x),
                            p.name(y),
                            mu.value(x, y).unwrap()
                        );
                    }
                }
            }
        }
        Invariant::J => {
            let p = obj.poset()?;
            let j = j_fast(&p);
            match format {
                Format::Json => {
                    let values: Vec<serde_json::Value> = p
                        .flags3()
                        .map(|(x, y, z)| {
                            serde_json::json!({"flag": [x, y, z], "value": bigint_json(j.value(x, y, z).unwrap())})
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::json!({"invariant": "j", "values": values})
                    );
                }
                Format::Text => {
                    for (x, y, z) in p.flags3() {
                        println!(
                            "J({}, {}, {}) = {}",
                            p.name(x),
                            p.name(y),
                            p.name(z),
                            j.value(x, y, z).unwrap()
                        );
                    }
                }
            }
        }
        Invariant::Chi | Invariant::Jchar | Invariant::Jmobius => {
            let l = obj.ranked_lattice()?;
            let (name, poly): (&str, LaurentPoly) = match invariant {
                Invariant::Chi => ("chi", char_poly(&l)),
                Invariant::Jchar => ("jchar", j_char_poly(&l)),
                Invariant::Jmobius => ("jmobius", j_mobius_poly(&l)),
                _ => unreachable!(),
            };
            match format {
                Format::Json => {
                    println!("{}", serde_json::json!({"invariant": name, "poly": poly}))
                }
                Format::Text => println!("{poly}"),
            }
        }
    }
    Ok(())
}

fn verify(
    suite: Suite,
    obj: Option<&Obj>,
    format: Format,
    max_n: usize,
) -> Result<ExitCode, Error> {
    let mut lines = Vec::new();
    let need_object = || -> Result<&Obj, Error> {
        obj.ok_or_else(|| Error::Arity("this suite needs --object".into()))
    };
    match suite {
        Suite::Classical => lines.extend(suites::classical_suite(&need_object()?.poset()?)?),
        Suite::JAxioms => lines.extend(suites::j_axioms_suite(&need_object()?.poset()?)?),
        Suite::Generalized => lines.extend(suites::generalized_suite(&need_object()?.poset()?)?),
        Suite::Polynomial => {
            lines.extend(suites::polynomial_suite(&need_object()?.ranked_lattice()?)?)
        }
        Suite::Structure => lines.extend(suites::structure_suite(&need_object()?.poset()?, 999)?),
        Suite::Qseries => lines.extend(suites::qseries_suite(max_n)?),
        Suite::All => {
            let o = need_object()?;
            let p = o.poset()?;
            lines.extend(suites::classical_suite(&p)?);
            lines.extend(suites::j_axioms_suite(&p)?);
            lines.extend(suites::generalized_suite(&p)?);
            lines.extend(suites::polynomial_suite(&o.ranked_lattice()?)?);
            lines.extend(suites::structure_suite(&p, 999)?);
            lines.extend(suites::qseries_suite(max_n)?);
        }
    }
    let failures = lines.iter().filter(|l| !l.ok).count();
    match format {
        Format::Json => {
            let checks: Vec<serde_json::Value> = lines
                .iter()
                .map(|l| serde_json::json!({"name": l.name, "ok": l.ok, "detail": l.detail}))
                .collect();
            let doc = serde_json::json!({
                "object": obj.map(Obj::describe),
                "checks": checks,
                "failures": failures,
            });
            println!("{doc}");
        }
        Format::Text => {
            if let Some(o) = obj {
                println!("object: {}", o.describe());
            }
            for line in &lines {
                if line.ok {
                    println!("ok   {}", line.name);
                } else {
                    println!("FAIL {} {}", line.name, line.detail);
                }
            }
            if failures == 0 {
                println!("{} checks passed", lines.len());
            } else {
                println!("{failures} of {} checks FAILED", lines.len());
            }
        }
    }
    if failures == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(2))
    }
}
