//! `frobtau` command line: parse polynomials and divisor specs, dispatch the
//! core computations, and emit text or JSON certificates.
//!
//! JSON certificates have top-level keys {command, inputs, result, meta};
//! the `result` field is fully determined by the inputs (timings live in
//! `meta`), so re-running an invocation reproduces `result` byte-for-byte.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use frobtau::{
    check_perturbation, decompose, fpt_bracket, is_strongly_f_regular, jump_scan, mult_at_origin,
    nu, parse_divisor, parse_ideal_generators, parse_polynomial, parse_range, parse_ratio,
    root_ideal, smallest_jumping_number, stability_scan, test_ideal, test_ideal_divisor, trace,
    ChainOptions, DivisorSpec, FieldConfig, IdealHandle, JumpSearch, Polynomial, Ratio,
    TestIdealReport, DEFAULT_DEGREE_CAP,
};

#[derive(Parser)]
#[command(name = "frobtau", version, about = "Frobenius decompositions and test ideals over F_p[x1..xd]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Characteristic (a prime)
    #[arg(short, long, global = true, default_value_t = 2)]
    p: u64,
    /// Number of variables
    #[arg(short, long, global = true, default_value_t = 2)]
    d: usize,
    /// Frobenius level for decompose/trace/root; chain depth cap elsewhere
    #[arg(short, long = "emax", global = true)]
    e: Option<u32>,
    /// Largest denominator scanned for jumping numbers
    #[arg(long, global = true, default_value_t = 12)]
    max_den: u64,
    /// Emit a JSON certificate instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Hard bound on intermediate polynomial degrees in Groebner runs
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Frobenius decomposition f = sum_lambda f_lambda^{p^e} x^lambda
    Decompose {
        #[command(flatten)]
        common: Common,
        poly: String,
    },
    /// Trace map (the mu-part of the decomposition)
    Trace {
        #[command(flatten)]
        common: Common,
        poly: String,
    },
    /// p^e-th root ideal of a comma-separated generator list
    Root {
        #[command(flatten)]
        common: Common,
        generators: String,
    },
    /// Test ideal of a divisor, optionally paired with an ideal power a^t
    Testideal {
        #[command(flatten)]
        common: Common,
        /// Divisor spec `t1*div(f1); t2*div(f2); ...` (empty = zero divisor)
        #[arg(long, default_value = "")]
        divisor: String,
        /// Generators of the ideal part a (comma-separated)
        #[arg(long)]
        ideal: Option<String>,
        /// Exponent t on the ideal part
        #[arg(long, default_value = "1")]
        t: String,
    },
    /// F-pure threshold bracket (nu_e/p^e, (nu_e+1)/p^e]
    Fpt {
        #[command(flatten)]
        common: Common,
        poly: String,
    },
    /// F-jumping numbers of s -> tau(Delta + s*div(g)) on a rational grid
    Jumps {
        #[command(flatten)]
        common: Common,
        poly: String,
        #[arg(long, default_value = "")]
        divisor: String,
        /// Scan interval `lo,hi`
        #[arg(long, default_value = "0,1")]
        range: String,
        /// Report only the smallest jumping number (bisection)
        #[arg(long)]
        smallest: bool,
    },
    /// Whether tau(base + pert) equals tau(base)
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        base: String,
        #[arg(long)]
        pert: String,
    },
    /// Perturbation-stability scan over probes r and levels div(r)/p^n
    Scan {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "")]
        divisor: String,
        /// Probe polynomial (repeatable)
        #[arg(long = "probe", required = true)]
        probes: Vec<String>,
        /// Deepest perturbation level n
        #[arg(long, default_value_t = 3)]
        nmax: u32,
    },
    /// Reduced deg-lex Groebner basis of a generator list
    Gb {
        #[command(flatten)]
        common: Common,
        generators: String,
    },
}

fn chain_options(common: &Common) -> ChainOptions {
    let base = match common.e {
        Some(e) => ChainOptions::new(e),
        None => ChainOptions::for_characteristic(common.p),
    };
    base.with_degree_cap(common.degree_cap)
}

fn ideal_json(j: &IdealHandle) -> frobtau::Result<Value> {
    Ok(Value::from(j.canonical_strings()?))
}

fn report_json(report: &TestIdealReport) -> frobtau::Result<Value> {
    Ok(json!({
        "generators": ideal_json(&report.ideal)?,
        "stabilizedAt": report.stabilized_at,
        "capped": report.capped,
    }))
}

struct Output {
    command: &'static str,
    inputs: Value,
    result: Value,
    text: String,
}

fn run(cli: &Cli) -> frobtau::Result<(Output, &Common)> {
    match &cli.command {
        Command::Decompose { common, poly } => {
            let cfg = FieldConfig::new(common.p, common.d)?;
            let e = common.e.unwrap_or(1);
            let f = parse_polynomial(poly, cfg.p, cfg.d)?;
            let dec = decompose(&f, e)?;
            let mut parts = Vec::new();
            let mut text = String::new();
            for (lambda, part) in dec.parts() {
                let comps: Vec<u32> = lambda.components().to_vec();
                parts.push(json!({"lambda": comps, "part": part.to_string()}));
                text.push_str(&format!("lambda {:?}: {part}\n", lambda.components()));
            }
            Ok((
                Output {
                    command: "decompose",
                    inputs: json!({"p": cfg.p, "d": cfg.d, "e": e, "poly": f.to_string()}),
                    result: json!({"parts": parts}),
                    text,
                },
                common,
            ))
        }
        Command::Trace { common, poly } => {
            let cfg = FieldConfig::new(common.p, common.d)?;
            let e = common.e.unwrap_or(1);
            let f = parse_polynomial(poly, cfg.p, cfg.d)?;
            let t = trace(&f, e)?;
            Ok((
                Output {
                    command: "trace",
                    inputs: json!({"p": cfg.p, "d": cfg.d, "e": e, "poly": f.to_string()}),
                    result: json!({"trace": t.to_string()}),
                    text: format!("trace = {t}\n"),
                },
                common,
            ))
        }
        Command::Root { common, generators } => {
            let cfg = FieldConfig::new(common.p, common.d)?;
            let e = common.e.unwrap_or(1);
            let gens = parse_ideal_generators(generators, cfg.p, cfg.d)?;
            let j = IdealHandle::new(cfg.p, cfg.d, gens).with_degree_cap(common.degree_cap);
            let root = root_ideal(&j, e)?;
            Ok((
                Output {
                    command: "root",
                    inputs: json!({"p": cfg.p, "d": cfg.d, "e": e,
                                   "generators": j.canonical_strings()?}),
                    result: json!({"generators": ideal_json(&root)?}),
                    text: format!("I_{e} = ({})\n", root.canonical_strings()?.join(", ")),
                },
                common,
            ))
        }
        Command::Testideal {
            common,
            divisor,
            ideal,
            t,
        } => {
            let cfg = FieldConfig::new(common.p, common.d)?;
            let opts = chain_options(common);
            let delta = parse_divisor(divisor, cfg.p, cfg.d)?;
            let report = match ideal {
                Some(gens) => {
                    let a = IdealHandle::new(
                        cfg.p,
                        cfg.d,
                        parse_ideal_generators(gens, cfg.p, cfg.d)?,
                    )
                    .with_degree_cap(common.degree_cap);
                    test_ideal(&cfg, &delta, &a, &parse_ratio(t)?, &opts)?
                }
                None => test_ideal_divisor(&cfg, &delta, &opts)?,
            };
            let settled = report.settled(opts.e_max)?;
            let fregular = is_strongly_f_regular(&cfg, &delta, &opts).ok();
            let mut text = format!(
                "tau = ({})\nstabilized at n = {}\n",
                settled.canonical_strings()?.join(", "),
                report.stabilized_at
            );
            if ideal.is_none() {
                text.push_str(&format!(
                    "strongly F-regular: {}\n",
                    fregular.map_or("unknown".into(), |b| b.to_string())
                ));
            }
            Ok((
                Output {
                    command: "testideal",
                    inputs: json!({"p": cfg.p, "d": cfg.d, "eMax": opts.e_max,
                                   "divisor": divisor_json(&delta),
                                   "ideal": ideal.as_deref(), "t": t}),
                    result: report_json(&report)?,
                    text,
                },
                common,
            ))
        }
        Command::Fpt { common, poly } => {
            let cfg = FieldConfig::new(common.p, common.d)?;
            let e = common.e.unwrap_or(2);
            let f = parse_polynomial(poly, cfg.p, cfg.d)?;
            let v = nu(&f, e)?;
            let (lo, hi) = fpt_bracket(&f, e)?;
            Ok((
                Output {
                    command: "fpt",
                    inputs: json!({"p": cfg.p, "d": cfg.d, "e": e, "poly": f.to_string()}),
                    result: json!({"nu": v, "bracket": [lo.to_string(), hi.to_string()]}),
                    text: format!("nu = {v}\nfpt in ({lo}, {hi}]\n"),
                },
                common,
            ))
        }
        Command::Jumps {
            common,
            poly,
            divisor,
            range,
            smallest,
        } => {
            let cfg = FieldConfig::new(common.p, common.d)?;
            let opts = chain_options(common);
            let g = parse_polynomial(poly, cfg.p, cfg.d)?;
            let delta = parse_divisor(divisor, cfg.p, cfg.d)?;
            let (lo, hi) = parse_range(range)?;
            if *smallest {
                let found = smallest_jumping_number(&cfg, &delta, &g, common.max_den, &opts)?;
                let (result, text) = match found {
                    JumpSearch::Found(s) => (
                        json!({"smallest": s.to_string()}),
                        format!("smallest jumping number = {s}\n"),
                    ),
                    JumpSearch::NoneUpTo(b) => (
                        json!({"smallest": Value::Null, "noneUpTo": b.to_string()}),
                        format!("no jump found up to {b}\n"),
                    ),
                };
                return Ok((
                    Output {
                        command: "jumps",
                        inputs: json!({"p": cfg.p, "d": cfg.d, "eMax": opts.e_max,
                                       "poly": g.to_string(), "divisor": divisor_json(&delta),
                                       "maxDen": common.max_den, "smallest": true}),
                        result,
                        text,
                    },
                    common,
                ));
            }
            let jumps = jump_scan(&cfg, &delta, &g, (&lo, &hi), common.max_den, &opts)?;
            let strings: Vec<String> = jumps.iter().map(Ratio::to_string).collect();
            Ok((
                Output {
                    command: "jumps",
                    inputs: json!({"p": cfg.p, "d": cfg.d, "eMax": opts.e_max,
                                   "poly": g.to_string(), "divisor": divisor_json(&delta),
                                   "range": [lo.to_string(), hi.to_string()],
                                   "maxDen": common.max_den}),
                    result: json!({"jumps": strings}),
                    text: format!("jumps: {}\n", strings.join(", ")),
                },
                common,
            ))
        }
        Command::Check { common, base, pert } => {
            let cfg = FieldConfig::new(common.p, common.d)?;
            let opts = chain_options(common);
            let delta = parse_divisor(base, cfg.p, cfg.d)?;
            let e = parse_divisor(pert, cfg.p, cfg.d)?;
            let equal = check_perturbation(&cfg, &delta, &e, &opts)?;
            let mult = mult_at_origin(&e)?;
            Ok((
                Output {
                    command: "check",
                    inputs: json!({"p": cfg.p, "d": cfg.d, "eMax": opts.e_max,
                                   "base": divisor_json(&delta), "pert": divisor_json(&e)}),
                    result: json!({"equal": equal, "multAtOrigin": mult.to_string()}),
                    text: format!("equal = {equal} (perturbation multiplicity {mult})\n"),
                },
                common,
            ))
        }
        Command::Scan {
            common,
            divisor,
            probes,
            nmax,
        } => {
            let cfg = FieldConfig::new(common.p, common.d)?;
            let opts = chain_options(common);
            let delta = parse_divisor(divisor, cfg.p, cfg.d)?;
            let probe_polys: Vec<Polynomial> = probes
                .iter()
                .map(|s| parse_polynomial(s, cfg.p, cfg.d))
                .collect::<frobtau::Result<_>>()?;
            let report = stability_scan(&cfg, &delta, &probe_polys, *nmax, &opts)?;
            let mut witness_json = Vec::new();
            let mut text = String::new();
            for w in &report.witnesses {
                witness_json.push(json!({
                    "probe": w.probe.to_string(), "n": w.n,
                    "coefficient": w.coefficient.to_string(), "ord": w.ord,
                    "multiplicity": w.multiplicity.to_string(),
                    "equal": w.equal, "equalAtOrigin": w.equal_at_origin,
                }));
                text.push_str(&format!(
                    "probe {}, n={}: equal={} (mult {})\n",
                    w.probe, w.n, w.equal, w.multiplicity
                ));
            }
            let tails: Vec<Value> = report
                .tail_indices
                .iter()
                .map(|(r, n)| json!({"probe": r.to_string(), "tailFrom": n}))
                .collect();
            text.push_str(&format!("deltaLower = {}\n", report.delta_lower));
            if let Some((r, s)) = &report.first_jump {
                text.push_str(&format!("first jump: {s}*div({r})\n"));
            }
            Ok((
                Output {
                    command: "scan",
                    inputs: json!({"p": cfg.p, "d": cfg.d, "eMax": opts.e_max,
                                   "divisor": divisor_json(&delta),
                                   "probes": probes, "nMax": nmax}),
                    result: json!({
                        "baseTau": ideal_json(&report.base_tau)?,
                        "deltaLower": report.delta_lower.to_string(),
                        "witnesses": witness_json,
                        "tailIndices": tails,
                        "firstJump": report.first_jump.as_ref().map(|(r, s)|
                            json!({"probe": r.to_string(), "coefficient": s.to_string()})),
                    }),
                    text,
                },
                common,
            ))
        }
        Command::Gb { common, generators } => {
            let cfg = FieldConfig::new(common.p, common.d)?;
            let gens = parse_ideal_generators(generators, cfg.p, cfg.d)?;
            let j = IdealHandle::new(cfg.p, cfg.d, gens).with_degree_cap(common.degree_cap);
            let gb = j.canonical_strings()?;
            let mut text = String::new();
            print_ideal_into(&mut text, &gb);
            Ok((
                Output {
                    command: "gb",
                    inputs: json!({"p": cfg.p, "d": cfg.d,
                                   "generators": generators, "degreeCap": common.degree_cap}),
                    result: json!({"generators": gb}),
                    text,
                },
                common,
            ))
        }
    }
}

fn print_ideal_into(buf: &mut String, gb: &[String]) {
    buf.push_str(&format!("({})\n", gb.join(", ")));
}

fn divisor_json(d: &DivisorSpec) -> Value {
    let parts: Vec<Value> = d
        .parts()
        .iter()
        .map(|(f, t)| json!({"t": t.to_string(), "f": f.to_string()}))
        .collect();
    Value::from(parts)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli) {
        Ok((out, common)) => {
            if common.json {
                let cert = json!({
                    "command": out.command,
                    "inputs": out.inputs,
                    "result": out.result,
                    "meta": {
                        "elapsedMs": started.elapsed().as_millis() as u64,
                        "version": env!("CARGO_PKG_VERSION"),
                    },
                });
                println!("{}", serde_json::to_string_pretty(&cert).unwrap());
            } else {
                print!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
