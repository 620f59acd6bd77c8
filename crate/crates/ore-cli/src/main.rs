//! `ore`: exact calculator for Ore extensions `A[y][x; sigma, delta]` over
//! structure-constant algebras, octonions included.
//!
//! Results print as canonical element text, or as a JSON report with
//! `--json`. Timing always goes to stderr so stdout is byte-identical
//! across runs of the same command and seed.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ore_algebra::{
    annihilating_polynomial, canonical_text, check_d_condition, evaluate, find_annihilating,
    parse_coeff_poly, parse_element, verify_sigma_derivation, AlgebraSpec, CentralizerQuery,
    CoeffPoly, DCertificate, Degree, DeltaSpec, NucleusCheck, OreContext, OreElem, SigmaSpec,
    YdegCaps,
};

#[derive(Parser)]
#[command(
    name = "ore",
    version,
    about = "Exact non-associative Ore extension calculator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a machine-readable JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized verification commands (also env ORE_SEED).
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Args)]
struct CtxArgs {
    /// Context preset: diff-rat, diff-oct, subst-oct or custom.
    #[arg(long, default_value = "diff-rat")]
    ctx: String,
    /// sigma(y), a polynomial in y with rational coefficients
    /// (subst-oct default: y^2).
    #[arg(long)]
    s: Option<String>,
    /// delta(y) for the twisted derivation (subst-oct default: 1).
    #[arg(long)]
    delta_y: Option<String>,
    /// delta mode for custom contexts: ddy or zero (ignored when
    /// --delta-y is given).
    #[arg(long)]
    delta: Option<String>,
    /// JSON file holding a custom structure-constant algebra
    /// ({dim, names, unit, constants}); requires --ctx custom.
    #[arg(long)]
    algebra: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two elements with the twisted product.
    Mul {
        #[command(flatten)]
        ctx: CtxArgs,
        a: String,
        b: String,
    },
    /// Do two elements commute?
    Commutes {
        #[command(flatten)]
        ctx: CtxArgs,
        a: String,
        b: String,
    },
    /// The x-degree valuation of an element (-inf for zero).
    Chi {
        #[command(flatten)]
        ctx: CtxArgs,
        elem: String,
    },
    /// Bounded nucleus certificate: membership or a violating triple.
    NucleusCheck {
        #[command(flatten)]
        ctx: CtxArgs,
        elem: String,
        #[arg(long, default_value_t = 3)]
        xdeg_bound: usize,
        #[arg(long, default_value_t = 3)]
        ydeg_bound: usize,
    },
    /// Basis of the commuting elements of x-degree at most --deg.
    Centralizer {
        #[command(flatten)]
        ctx: CtxArgs,
        a: String,
        #[arg(long)]
        deg: usize,
        /// Explicit per-degree y-caps, comma separated (default: auto).
        #[arg(long)]
        caps: Option<String>,
        /// Slack added to the auto caps (default: deg_y(a) * degree).
        #[arg(long, conflicts_with = "caps")]
        slack: Option<usize>,
    },
    /// Greedy free-module basis of the centralizer.
    ModuleBasis {
        #[command(flatten)]
        ctx: CtxArgs,
        a: String,
        #[arg(long)]
        max_deg: usize,
        #[arg(long)]
        caps: Option<String>,
        /// Slack added to the auto caps (default: deg_y(a) * degree).
        #[arg(long, conflicts_with = "caps")]
        slack: Option<usize>,
    },
    /// Degree-drop certificate for equal-degree elements.
    Dcond {
        #[command(flatten)]
        ctx: CtxArgs,
        #[arg(long)]
        ell: usize,
        #[arg(required = true)]
        elems: Vec<String>,
    },
    /// Annihilating polynomial P(s, t) with P(a, b) = 0.
    BcPoly {
        #[command(flatten)]
        ctx: CtxArgs,
        a: String,
        b: String,
        /// Fixed degree box instead of the doubling search.
        #[arg(long)]
        max_t: Option<usize>,
        #[arg(long)]
        max_s: Option<usize>,
        /// Box doublings to attempt in search mode.
        #[arg(long, default_value_t = 4)]
        doublings: usize,
    },
    /// Sample the endomorphism and twisted-derivation laws of a context.
    VerifyContext {
        #[command(flatten)]
        ctx: CtxArgs,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let seed = cli
        .seed
        .or_else(|| std::env::var("ORE_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(0x0ace);
    // Reported errors are precondition or input failures (exit 2); a panic
    // is an internal error (exit 1).
    let outcome = std::panic::catch_unwind(|| run(&cli.command, cli.json, seed));
    eprintln!("elapsed: {} ms", started.elapsed().as_millis());
    match outcome {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(_) => {
            eprintln!("internal error");
            ExitCode::from(1)
        }
    }
}

fn build_context(args: &CtxArgs) -> anyhow::Result<(Arc<OreContext>, Value)> {
    let preset = args.ctx.as_str();
    let (ctx, desc) = match preset {
        "diff-rat" => (OreContext::diff_rat(), json!({"preset": "diff-rat"})),
        "diff-oct" => (OreContext::diff_oct(), json!({"preset": "diff-oct"})),
        "subst-oct" => {
            let algebra = AlgebraSpec::octonions();
            let sigma_y = match &args.s {
                Some(src) => parse_coeff_poly(src, &algebra)?,
                None => CoeffPoly::monomial(algebra.unit(), 2),
            };
            let delta_y = match &args.delta_y {
                Some(src) => parse_coeff_poly(src, &algebra)?,
                None => CoeffPoly::one(&algebra),
            };
            let ctx = OreContext::subst_oct(sigma_y, delta_y)?;
            let desc = json!({
                "preset": "subst-oct",
                "s": args.s.clone().unwrap_or_else(|| "y^2".into()),
                "delta_y": args.delta_y.clone().unwrap_or_else(|| "1".into()),
            });
            (ctx, desc)
        }
        "custom" => {
            let path = args
                .algebra
                .as_ref()
                .ok_or_else(|| anyhow::anyhow!("--ctx custom requires --algebra FILE"))?;
            let text = std::fs::read_to_string(path)?;
            let algebra = AlgebraSpec::from_json(&text)?;
            let sigma = match &args.s {
                Some(src) => SigmaSpec::substitution(parse_coeff_poly(src, &algebra)?, &algebra)?,
                None => SigmaSpec::Identity,
            };
            let delta = if let Some(src) = &args.delta_y {
                DeltaSpec::SigmaTwisted {
                    delta_of_y: parse_coeff_poly(src, &algebra)?,
                }
            } else {
                match args.delta.as_deref() {
                    Some("zero") => DeltaSpec::Zero,
                    Some("ddy") | None => DeltaSpec::DDy,
                    Some(other) => anyhow::bail!("unknown delta mode {other:?}"),
                }
            };
            let ctx = OreContext::new(algebra, sigma, delta)?;
            let desc = json!({
                "preset": "custom",
                "algebra": path.display().to_string(),
                "s": args.s.clone().unwrap_or_else(|| "identity".into()),
                "delta": args.delta_y.clone()
                    .unwrap_or_else(|| args.delta.clone().unwrap_or_else(|| "ddy".into())),
            });
            (ctx, desc)
        }
        other => anyhow::bail!("unknown context preset {other:?}"),
    };
    Ok((ctx, desc))
}

fn degree_json(d: Degree) -> Value {
    match d {
        Degree::NegInf => Value::Null,
        Degree::Finite(n) => json!(n),
    }
}

/// Structured element form: canonical text, x-degree and the nonzero terms
/// `coef * y^j * x^k` with coordinates as exact rational strings, ordered by
/// decreasing x-power then y-power.
fn element_json(e: &OreElem) -> Value {
    let mut terms = Vec::new();
    for (k, p) in e.coeffs().iter().enumerate().rev() {
        for (j, c) in p.coeffs().iter().enumerate().rev() {
            if !c.is_zero() {
                let coords: Vec<String> = c.coords().iter().map(|r| r.to_string()).collect();
                terms.push(json!({"x": k, "y": j, "coords": coords}));
            }
        }
    }
    json!({
        "text": canonical_text(e),
        "chi": degree_json(e.xdeg()),
        "terms": terms,
    })
}

fn report(json_mode: bool, command: &str, context: Value, inputs: Vec<String>, result: Value) {
    if json_mode {
        let report = json!({
            "command": command,
            "context": context,
            "inputs": inputs,
            "result": result,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        );
    } else {
        match &result {
            Value::String(s) => println!("{s}"),
            other => println!(
                "{}",
                serde_json::to_string_pretty(other).expect("serializable")
            ),
        }
    }
}

fn parse_caps(
    src: &Option<String>,
    slack: &Option<usize>,
    need: usize,
) -> anyhow::Result<YdegCaps> {
    match (src, slack) {
        (None, None) => Ok(YdegCaps::Auto),
        (None, Some(s)) => Ok(YdegCaps::AutoWithSlack(*s)),
        (Some(list), _) => {
            let caps: Result<Vec<usize>, _> =
                list.split(',').map(|s| s.trim().parse::<usize>()).collect();
            let caps =
                caps.map_err(|_| anyhow::anyhow!("--caps wants comma-separated integers"))?;
            anyhow::ensure!(
                caps.len() == need,
                "expected {need} caps, got {}",
                caps.len()
            );
            Ok(YdegCaps::Explicit(caps))
        }
    }
}

fn run(command: &Command, json_mode: bool, seed: u64) -> anyhow::Result<()> {
    match command {
        Command::Mul { ctx, a, b } => {
            let (ore_ctx, desc) = build_context(ctx)?;
            let a = parse_element(a, &ore_ctx)?;
            let b = parse_element(b, &ore_ctx)?;
            let product = a.mul(&b);
            let result = if json_mode {
                json!({"product": element_json(&product)})
            } else {
                json!(canonical_text(&product))
            };
            report(
                json_mode,
                "mul",
                desc,
                vec![canonical_text(&a), canonical_text(&b)],
                result,
            );
        }
        Command::Commutes { ctx, a, b } => {
            let (ore_ctx, desc) = build_context(ctx)?;
            let a = parse_element(a, &ore_ctx)?;
            let b = parse_element(b, &ore_ctx)?;
            let commutes = a.commutes_with(&b);
            let result = if json_mode {
                json!({"commutes": commutes})
            } else {
                json!(commutes.to_string())
            };
            report(
                json_mode,
                "commutes",
                desc,
                vec![canonical_text(&a), canonical_text(&b)],
                result,
            );
        }
        Command::Chi { ctx, elem } => {
            let (ore_ctx, desc) = build_context(ctx)?;
            let e = parse_element(elem, &ore_ctx)?;
            let result = if json_mode {
                json!({"chi": degree_json(e.xdeg())})
            } else {
                json!(e.xdeg().to_string())
            };
            report(json_mode, "chi", desc, vec![canonical_text(&e)], result);
        }
        Command::NucleusCheck {
            ctx,
            elem,
            xdeg_bound,
            ydeg_bound,
        } => {
            let (ore_ctx, desc) = build_context(ctx)?;
            let e = parse_element(elem, &ore_ctx)?;
            let outcome = e.nucleus_check(*xdeg_bound, *ydeg_bound)?;
            let result = match &outcome {
                NucleusCheck::Member => json!({
                    "member": true,
                    "xdeg_bound": xdeg_bound,
                    "ydeg_bound": ydeg_bound,
                }),
                NucleusCheck::Witness(w) => json!({
                    "member": false,
                    "witness": {
                        "slot": w.slot,
                        "b": canonical_text(&w.b),
                        "c": canonical_text(&w.c),
                    },
                }),
            };
            let result = if json_mode {
                result
            } else {
                match &outcome {
                    NucleusCheck::Member => json!(format!(
                        "member of the nucleus up to bounds ({xdeg_bound}, {ydeg_bound})"
                    )),
                    NucleusCheck::Witness(w) => json!(format!(
                        "not in the nucleus: slot {} fails against b = {}, c = {}",
                        w.slot,
                        canonical_text(&w.b),
                        canonical_text(&w.c)
                    )),
                }
            };
            report(
                json_mode,
                "nucleus-check",
                desc,
                vec![canonical_text(&e)],
                result,
            );
        }
        Command::Centralizer {
            ctx,
            a,
            deg,
            caps,
            slack,
        } => {
            let (ore_ctx, desc) = build_context(ctx)?;
            let a = parse_element(a, &ore_ctx)?;
            let text = canonical_text(&a);
            let query = CentralizerQuery::new(a, *deg, parse_caps(caps, slack, *deg + 1)?)?;
            let basis = query.space(*deg)?;
            let elems: Vec<String> = basis.iter().map(canonical_text).collect();
            let result = if json_mode {
                json!({"dimension": elems.len(), "basis": elems})
            } else {
                let mut lines = vec![format!("dimension {}", elems.len())];
                lines.extend(elems);
                json!(lines.join("\n"))
            };
            report(json_mode, "centralizer", desc, vec![text], result);
        }
        Command::ModuleBasis {
            ctx,
            a,
            max_deg,
            caps,
            slack,
        } => {
            let (ore_ctx, desc) = build_context(ctx)?;
            let a = parse_element(a, &ore_ctx)?;
            let text = canonical_text(&a);
            let query = CentralizerQuery::new(a, *max_deg, parse_caps(caps, slack, *max_deg + 1)?)?;
            let basis = query.module_basis()?;
            let elems: Vec<String> = basis.elements.iter().map(canonical_text).collect();
            let result = if json_mode {
                json!({
                    "rank": basis.rank(),
                    "degrees": basis.degrees,
                    "elements": elems,
                })
            } else {
                let mut lines = vec![format!("rank {}", basis.rank())];
                for (e, d) in elems.iter().zip(&basis.degrees) {
                    lines.push(format!("chi {d}: {e}"));
                }
                json!(lines.join("\n"))
            };
            report(json_mode, "module-basis", desc, vec![text], result);
        }
        Command::Dcond { ctx, ell, elems } => {
            let (ore_ctx, desc) = build_context(ctx)?;
            let parsed: Result<Vec<OreElem>, _> = elems
                .iter()
                .map(|src| parse_element(src, &ore_ctx))
                .collect();
            let parsed = parsed?;
            let inputs: Vec<String> = parsed.iter().map(canonical_text).collect();
            let cert = check_d_condition(&parsed, *ell)?;
            let result = match &cert {
                DCertificate::Dependent(alphas) => {
                    let coeffs: Vec<String> = alphas.iter().map(|r| r.to_string()).collect();
                    if json_mode {
                        json!({"dependent": true, "coefficients": coeffs})
                    } else {
                        json!(format!("dependent: [{}]", coeffs.join(", ")))
                    }
                }
                DCertificate::Independent { refutes_condition } => {
                    if json_mode {
                        json!({"dependent": false, "refutes_condition": refutes_condition})
                    } else if *refutes_condition {
                        json!(format!("independent (refutes condition D({ell}))"))
                    } else {
                        json!("independent")
                    }
                }
            };
            report(json_mode, "dcond", desc, inputs, result);
        }
        Command::BcPoly {
            ctx,
            a,
            b,
            max_t,
            max_s,
            doublings,
        } => {
            let (ore_ctx, desc) = build_context(ctx)?;
            let a = parse_element(a, &ore_ctx)?;
            let b = parse_element(b, &ore_ctx)?;
            let inputs = vec![canonical_text(&a), canonical_text(&b)];
            let found = match (max_t, max_s) {
                (Some(t), Some(s)) => annihilating_polynomial(&a, &b, *t, *s)?,
                (None, None) => find_annihilating(&a, &b, *doublings)?,
                _ => anyhow::bail!("--max-t and --max-s must be given together"),
            };
            let result = match &found {
                Some(p) => {
                    // Soundness is re-verified before reporting.
                    assert!(evaluate(p, &a, &b)?.is_zero());
                    if json_mode {
                        json!({
                            "found": true,
                            "polynomial": p.to_string(),
                            "terms": serde_json::from_str::<Value>(&p.to_json())?["terms"],
                        })
                    } else {
                        json!(p.to_string())
                    }
                }
                None => {
                    if json_mode {
                        json!({"found": false})
                    } else {
                        json!("none (no relation within the degree budget)")
                    }
                }
            };
            report(json_mode, "bc-poly", desc, inputs, result);
        }
        Command::VerifyContext { ctx, samples } => {
            let (ore_ctx, desc) = build_context(ctx)?;
            let spec = ore_ctx.algebra();
            let leibniz =
                verify_sigma_derivation(ore_ctx.delta(), ore_ctx.sigma(), spec, *samples, seed);
            // Endomorphism law on the same number of samples.
            let mut rng = ore_algebra::sample::SplitMix64::new(seed ^ 0x51);
            let mut ring_map = true;
            for _ in 0..*samples {
                let p = ore_algebra::sample::coeff_poly(spec, &mut rng, 3);
                let q = ore_algebra::sample::coeff_poly(spec, &mut rng, 3);
                let lhs = ore_ctx.apply_sigma(&p.mul(&q, spec));
                let rhs = ore_ctx.apply_sigma(&p).mul(&ore_ctx.apply_sigma(&q), spec);
                if lhs != rhs {
                    ring_map = false;
                    break;
                }
            }
            let ok = leibniz.is_ok() && ring_map;
            let result = if json_mode {
                json!({
                    "valid": ok,
                    "twisted_leibniz": leibniz.is_ok(),
                    "sigma_multiplicative": ring_map,
                    "samples": samples,
                })
            } else {
                json!(format!(
                    "context {} on {samples} samples (twisted Leibniz {}, sigma multiplicative {})",
                    if ok { "verifies" } else { "FAILS" },
                    leibniz.is_ok(),
                    ring_map
                ))
            };
            report(json_mode, "verify-context", desc, vec![], result);
        }
    }
    Ok(())
}
