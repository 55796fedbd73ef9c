//! `scf`: command-line front end for the simplest-cubic-field library.
//!
//! Every verb prints human-readable text by default and a JSON document with
//! `--json`. Exact values are always rendered as `p/q` strings so that output
//! can be piped back into another invocation without precision loss; the only
//! decimals anywhere are the certified approximations printed by `roots`.
//!
//! Exit codes: 0 success (including a negative `equiv` answer), 2 usage
//! error, 3 domain error (degenerate parameter where a field is required,
//! vanishing determinant, the zero witness, unparsable numbers), 4 internal
//! consistency failure (a cross-check between two independent computation
//! routes disagreed, or a self-test suite failed).

use clap::{Parser, Subcommand};
use scf_core::{
    approx_roots, classify, degenerate_param, describe, equivalent, format_rational, orbit,
    orbit_parallel, parse_rational, selftest, transform_param, verify_witness, Classification,
    ClassWitness, Error, FieldSpec, Int, MoebiusElement, Rational,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "scf",
    version,
    about = "Exact calculator for the cubic family x^3 - k*x^2 + (k-3)*x + 1"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Report whether k is degenerate (rational roots) or generates a field
    Classify {
        #[arg(allow_hyphen_values = true)]
        k: String,
        #[arg(long)]
        json: bool,
    },
    /// Apply the witness (c, d) to the parameter k
    Transform {
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
        #[arg(allow_hyphen_values = true)]
        k: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether k and k2 are related by a witness, listing all witnesses
    Equiv {
        #[arg(allow_hyphen_values = true)]
        k: String,
        #[arg(allow_hyphen_values = true)]
        k2: String,
        #[arg(long)]
        json: bool,
    },
    /// List every parameter reachable from k by a witness of bounded height
    Orbit {
        #[arg(allow_hyphen_values = true)]
        k: String,
        /// Bound on max(|c|, |d|) for the witnesses tried
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        height: u32,
        /// Split the search across threads (output is identical)
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        json: bool,
    },
    /// Minimal polynomial of (a*A + b)/(c*A + d) in the field for k
    Minpoly {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
        #[arg(allow_hyphen_values = true)]
        k: String,
        #[arg(long)]
        json: bool,
    },
    /// Power-basis coordinates of (a*A + b)/(c*A + d) in the field for k
    Basis {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
        #[arg(allow_hyphen_values = true)]
        k: String,
        #[arg(long)]
        json: bool,
    },
    /// Roots of the cubic for k: certified decimals, or exact when degenerate
    Roots {
        #[arg(allow_hyphen_values = true)]
        k: String,
        /// Correct decimal digits demanded of each root
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
        digits: u32,
        #[arg(long)]
        json: bool,
    },
    /// The degenerate parameter whose cubic has p/q as a root
    Degenerate {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
        #[arg(long)]
        json: bool,
    },
    /// Run every built-in invariant suite
    Selftest {
        #[arg(long)]
        json: bool,
    },
}

/// CLI-facing failure with its process exit code.
enum Failure {
    Usage(String),
    Domain(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 3,
            Failure::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Domain(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            // Unparsable numbers are rejected data, not a malformed command
            // line, so they share the domain exit code.
            Error::Parse(_) | Error::Domain(_) => Failure::Domain(e.to_string()),
            Error::Internal(_) => Failure::Internal(e.to_string()),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(|| run(cli.verb));
    let code = match outcome {
        Ok(Ok(())) => 0,
        Ok(Err(f)) => {
            eprintln!("error: {}", f.message());
            f.code()
        }
        Err(_) => {
            eprintln!("error: internal consistency failure");
            4
        }
    };
    std::process::exit(code);
}

fn run(verb: Verb) -> Result<(), Failure> {
    match verb {
        Verb::Classify { k, json } => cmd_classify(&k, json),
        Verb::Transform { c, d, k, json } => cmd_transform(&c, &d, &k, json),
        Verb::Equiv { k, k2, json } => cmd_equiv(&k, &k2, json),
        Verb::Orbit {
            k,
            height,
            parallel,
            json,
        } => cmd_orbit(&k, height, parallel, json),
        Verb::Minpoly {
            a,
            b,
            c,
            d,
            k,
            json,
        } => cmd_minpoly(&a, &b, &c, &d, &k, json),
        Verb::Basis {
            a,
            b,
            c,
            d,
            k,
            json,
        } => cmd_basis(&a, &b, &c, &d, &k, json),
        Verb::Roots { k, digits, json } => cmd_roots(&k, digits, json),
        Verb::Degenerate { p, q, json } => cmd_degenerate(&p, &q, json),
        Verb::Selftest { json } => cmd_selftest(json),
    }
}

/// Parses an integer argument, accepting anything that reduces to one.
fn parse_int_arg(name: &str, s: &str) -> Result<Int, Failure> {
    let r = parse_rational(s)?;
    if !r.is_integer() {
        return Err(Failure::Domain(format!(
            "{name} must be an integer, got {}",
            format_rational(&r)
        )));
    }
    Ok(r.to_integer())
}

fn rational_strings(rs: &[Rational]) -> Vec<String> {
    rs.iter().map(format_rational).collect()
}

fn cmd_classify(k: &str, json: bool) -> Result<(), Failure> {
    let k = parse_rational(k)?;
    let class = classify(&k);
    if json {
        let doc = match &class {
            Classification::Degenerate { roots } => json!({
                "class": "degenerate",
                "roots": rational_strings(roots),
            }),
            Classification::Generating {
                discriminant,
                sqrt_discriminant,
            } => json!({
                "class": "generating",
                "discriminant": format_rational(discriminant),
                "sqrt_discriminant": format_rational(sqrt_discriminant),
            }),
        };
        println!("{doc}");
    } else {
        println!("{}", describe(&class));
    }
    Ok(())
}

fn cmd_transform(c: &str, d: &str, k: &str, json: bool) -> Result<(), Failure> {
    let c = parse_int_arg("c", c)?;
    let d = parse_int_arg("d", d)?;
    let w = ClassWitness::new(c, d)?;
    let k = parse_rational(k)?;
    let k2 = transform_param(&w, &k)?;
    if json {
        println!(
            "{}",
            json!({
                "k": format_rational(&k),
                "witness": w.to_string(),
                "k2": format_rational(&k2),
            })
        );
    } else {
        println!("{}", format_rational(&k2));
    }
    Ok(())
}

fn cmd_equiv(k: &str, k2: &str, json: bool) -> Result<(), Failure> {
    let k = parse_rational(k)?;
    let k2 = parse_rational(k2)?;
    let res = equivalent(&k, &k2);
    // Every reported witness must also check out symbolically: the minimal
    // polynomial route is independent of the parameter-transform route.
    if FieldSpec::new(k.clone()).is_ok() {
        for w in &res.witnesses {
            if !verify_witness(&k, &k2, w)? {
                return Err(Failure::Internal(format!(
                    "witness {w} maps k but fails the symbolic check"
                )));
            }
        }
    }
    let forward: Vec<String> = res.witnesses.iter().map(|w| w.to_string()).collect();
    let reverse: Vec<String> = res
        .witnesses
        .iter()
        .map(|w| w.inverse().to_string())
        .collect();
    if json {
        println!(
            "{}",
            json!({
                "equivalent": res.equivalent,
                "witnesses": forward,
                "reverse_witnesses": reverse,
            })
        );
    } else if res.equivalent {
        println!("equivalent");
        println!("witnesses: {}", forward.join(", "));
        println!("reverse:   {}", reverse.join(", "));
    } else {
        println!("not equivalent");
    }
    Ok(())
}

fn max_height_cap() -> Result<u32, Failure> {
    match std::env::var("SCF_MAX_HEIGHT") {
        Ok(v) => v.trim().parse::<u32>().map_err(|_| {
            Failure::Usage(format!("SCF_MAX_HEIGHT must be a non-negative integer, got {v:?}"))
        }),
        Err(_) => Ok(64),
    }
}

fn cmd_orbit(k: &str, height: u32, parallel: bool, json: bool) -> Result<(), Failure> {
    let cap = max_height_cap()?;
    if height > cap {
        return Err(Failure::Usage(format!(
            "height {height} exceeds the cap {cap} (override with SCF_MAX_HEIGHT)"
        )));
    }
    let k = parse_rational(k)?;
    let rows = if parallel {
        orbit_parallel(&k, height)?
    } else {
        orbit(&k, height)?
    };
    for (k2, w) in &rows {
        if !verify_witness(&k, k2, w)? {
            return Err(Failure::Internal(format!(
                "orbit row {} via {w} fails the symbolic check",
                format_rational(k2)
            )));
        }
        let k2s = format_rational(k2);
        if json {
            // Keys are emitted by hand to keep the documented field order;
            // both values are drawn from alphabets that need no escaping.
            println!("{{\"k\":\"{k2s}\",\"witness\":\"{w}\",\"verified\":true}}");
        } else {
            println!("{k2s}  witness {w}  verified");
        }
    }
    Ok(())
}

/// Builds the quotient element (a*A + b)/(c*A + d) over the field for k.
fn quotient_element(
    a: &str,
    b: &str,
    c: &str,
    d: &str,
    k: &str,
) -> Result<MoebiusElement, Failure> {
    let k = parse_rational(k)?;
    let spec = FieldSpec::new(k)?;
    let a = parse_rational(a)?;
    let b = parse_rational(b)?;
    let c = parse_rational(c)?;
    let d = parse_rational(d)?;
    Ok(MoebiusElement::new(spec, a, b, c, d)?)
}

fn cmd_minpoly(a: &str, b: &str, c: &str, d: &str, k: &str, json: bool) -> Result<(), Failure> {
    let m = quotient_element(a, b, c, d, k)?;
    let closed = m.minpoly_closed_form();
    let oracle = m.to_field_element().minpoly_oracle();
    if closed != oracle {
        eprintln!("closed form: {closed}");
        eprintln!("char poly:   {oracle}");
        return Err(Failure::Internal(
            "minimal-polynomial routes disagree".into(),
        ));
    }
    if json {
        let coeffs: Vec<String> = (0..4).map(|i| format_rational(&closed.coeff(i))).collect();
        println!(
            "{}",
            json!({
                "display": closed.to_string(),
                "coefficients": coeffs,
            })
        );
    } else {
        println!("{closed}");
    }
    Ok(())
}

fn cmd_basis(a: &str, b: &str, c: &str, d: &str, k: &str, json: bool) -> Result<(), Failure> {
    let m = quotient_element(a, b, c, d, k)?;
    let u = m.to_field_element();
    // The closed basis formulas must agree with actually dividing in the
    // field; the two routes share no code past the constructor.
    let by_division = m.to_field_element_by_division();
    if u != by_division {
        eprintln!("closed form: {u}");
        eprintln!("division:    {by_division}");
        return Err(Failure::Internal("basis routes disagree".into()));
    }
    if json {
        let coords: Vec<String> = u.coeffs().iter().map(format_rational).collect();
        println!(
            "{}",
            json!({
                "element": u.to_string(),
                "coordinates": coords,
            })
        );
    } else {
        println!("{u}");
    }
    Ok(())
}

fn cmd_roots(k: &str, digits: u32, json: bool) -> Result<(), Failure> {
    let k = parse_rational(k)?;
    match classify(&k) {
        Classification::Degenerate { roots } => {
            let shown = rational_strings(&roots);
            if json {
                println!("{}", json!({ "exact": true, "roots": shown }));
            } else {
                for r in shown {
                    println!("{r}");
                }
            }
        }
        Classification::Generating { .. } => {
            let roots = approx_roots(&k, digits)?;
            let shown: Vec<String> = roots
                .iter()
                .map(|r| scf_core::decimal_string(r, digits))
                .collect();
            if json {
                println!(
                    "{}",
                    json!({ "exact": false, "digits": digits, "roots": shown })
                );
            } else {
                for r in shown {
                    println!("{r}");
                }
            }
        }
    }
    Ok(())
}

fn cmd_degenerate(p: &str, q: &str, json: bool) -> Result<(), Failure> {
    let p = parse_int_arg("p", p)?;
    let q = parse_int_arg("q", q)?;
    let k = degenerate_param(&p, &q)?;
    if json {
        let roots = match classify(&k) {
            Classification::Degenerate { roots } => rational_strings(&roots),
            Classification::Generating { .. } => {
                return Err(Failure::Internal(
                    "constructed parameter is not degenerate".into(),
                ))
            }
        };
        println!(
            "{}",
            json!({ "k": format_rational(&k), "roots": roots })
        );
    } else {
        println!("{}", format_rational(&k));
    }
    Ok(())
}

fn cmd_selftest(json: bool) -> Result<(), Failure> {
    let results = selftest::run_all();
    let failed = results.iter().filter(|(_, r)| r.is_err()).count();
    if json {
        let suites: Vec<serde_json::Value> = results
            .iter()
            .map(|(name, r)| {
                json!({
                    "name": name,
                    "ok": r.is_ok(),
                    "error": r.as_ref().err(),
                })
            })
            .collect();
        println!(
            "{}",
            json!({ "ok": failed == 0, "suites": suites })
        );
    } else {
        for (name, r) in &results {
            match r {
                Ok(()) => println!("ok   {name}"),
                Err(e) => println!("FAIL {name}: {e}"),
            }
        }
        if failed == 0 {
            println!("all {} suites passed", results.len());
        } else {
            println!("{failed} of {} suites failed", results.len());
        }
    }
    if failed > 0 {
        return Err(Failure::Internal(format!("{failed} self-test suites failed")));
    }
    Ok(())
}
