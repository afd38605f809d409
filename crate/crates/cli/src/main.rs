use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use pasture_cli::expr::eval_str;
use pasture_cli::verify::{self, Suite};
use pasture_cli::{exit_code, parse_matroid};
use pasture_core::hexagons;
use pasture_core::lift::{lift, LiftKind};
use pasture_core::matroid::{class_map, representation_classes_with_cap, DEFAULT_SEARCH_CAP};
use pasture_core::morphism::{hom_set_with_cap, iso_check_with_cap, IsoResult, DEFAULT_CANDIDATE_CAP};
use pasture_core::pasture::{element_json, monomial};
use pasture_core::{Pasture, PastureMorphism};

/// Pastures, their hexagons, lifts, morphisms and matroid representations.
#[derive(Parser)]
#[command(name = "pasture", version)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Bound on candidate assignments (morphisms) or search nodes (reps).
    #[arg(long, global = true, value_name = "N")]
    max_candidates: Option<u64>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an expression and print the pasture.
    Pasture { expr: String },
    /// List hexagons of a pasture.
    Hexagons { expr: String },
    /// Compute a lift.
    Lift {
        expr: String,
        #[arg(long, value_parser = parse_kind)]
        kind: LiftKind,
    },
    /// Count (or list) morphisms.
    Hom {
        source: String,
        target: String,
        #[arg(long)]
        list: bool,
    },
    /// Decide isomorphism.
    Iso { left: String, right: String },
    /// Rescaling classes of representations of a matroid.
    Reps {
        #[arg(long)]
        matroid: String,
        #[arg(long)]
        pasture: String,
        #[arg(long)]
        list: bool,
    },
    /// Compare classes over a lift with classes over its source.
    LiftCheck {
        #[arg(long)]
        matroid: String,
        #[arg(long)]
        pasture: String,
        #[arg(long, value_parser = parse_kind)]
        kind: LiftKind,
    },
    /// Run a reproduction suite.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        /// Largest q for table1.
        #[arg(long, default_value_t = 64)]
        max_q: u64,
    },
}

fn parse_kind(s: &str) -> Result<LiftKind, String> {
    match s {
        "binary" | "Lb" => Ok(LiftKind::Binary),
        "ternary" | "Lt" => Ok(LiftKind::Ternary),
        "wlum" | "Lw" => Ok(LiftKind::Wlum),
        "grs" | "Lg" => Ok(LiftKind::Grs),
        _ => Err(format!("unknown lift kind {s}; use binary, ternary, wlum or grs")),
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, code: 0 }
    }
}

fn pasture_json(p: &Pasture) -> Value {
    let mut v = p.descriptor_json();
    v["hexagons"] = hexagons(p).iter().map(|h| h.to_json()).collect();
    v
}

fn generator_images(f: &PastureMorphism) -> Vec<(String, String, Value)> {
    let (s, t) = (f.source(), f.target());
    let n = s.generator_names().len();
    (0..n)
        .map(|i| {
            let mut w = vec![0i64; n];
            w[i] = 1;
            let img = f.apply_element(&monomial(s, false, &w));
            let unit = img.unit().cloned().unwrap_or_else(|| t.one());
            (s.generator_names()[i].clone(), t.format_element(&img), element_json(&unit))
        })
        .collect()
}

fn run(cli: &Cli) -> pasture_core::Result<Output> {
    let morph_cap = cli.max_candidates.unwrap_or(DEFAULT_CANDIDATE_CAP);
    let search_cap = cli.max_candidates.unwrap_or(DEFAULT_SEARCH_CAP);
    Ok(match &cli.cmd {
        Cmd::Pasture { expr } => {
            let p = eval_str(expr)?.into_pasture();
            Output::ok(p.to_string(), pasture_json(&p))
        }
        Cmd::Hexagons { expr } => {
            let p = eval_str(expr)?.into_pasture();
            let hs = hexagons(&p);
            let text: Vec<String> = hs.iter().map(|h| h.describe(&p)).collect();
            let json = json!({ "count": hs.len(), "hexagons": hs.iter().map(|h| h.to_json()).collect::<Vec<_>>() });
            Output::ok(format!("{} hexagons\n{}", hs.len(), text.join("\n")).trim_end().to_string(), json)
        }
        Cmd::Lift { expr, kind } => {
            let src = eval_str(expr)?.into_pasture();
            let l = lift(&src, *kind)?;
            let mut text = format!("{} lift\n{}", kind.as_str(), l.lift);
            if let Some(d) = &l.descriptor {
                text.push_str(&format!("\nfactors: {d}"));
            }
            let json = json!({
                "kind": kind.as_str(),
                "lift": pasture_json(&l.lift),
                "factor_descriptor": l.descriptor.as_ref().map(|d| d.to_json()),
                "lambda": l.lambda.images().iter().map(element_json).collect::<Vec<_>>(),
            });
            Output::ok(text.trim_end().to_string(), json)
        }
        Cmd::Hom { source, target, list } => {
            let (s, t) = (eval_str(source)?.into_pasture(), eval_str(target)?.into_pasture());
            let homs = hom_set_with_cap(&s, &t, morph_cap)?;
            let mut text = format!("{} morphisms", homs.len());
            let mut listed = Vec::new();
            if *list {
                for f in &homs {
                    let imgs = generator_images(f);
                    let line: Vec<String> = imgs.iter().map(|(g, x, _)| format!("{g} -> {x}")).collect();
                    text.push_str(&format!("\n  {}", line.join(", ")));
                    listed.push(Value::Object(imgs.into_iter().map(|(g, _, v)| (g, v)).collect()));
                }
            }
            let mut json = json!({ "count": homs.len() });
            if *list {
                json["morphisms"] = Value::Array(listed);
            }
            Output::ok(text, json)
        }
        Cmd::Iso { left, right } => {
            let (a, b) = (eval_str(left)?.into_pasture(), eval_str(right)?.into_pasture());
            match iso_check_with_cap(&a, &b, morph_cap) {
                IsoResult::Iso(f) => {
                    let imgs = generator_images(&f);
                    let line: Vec<String> = imgs.iter().map(|(g, x, _)| format!("{g} -> {x}")).collect();
                    let map: serde_json::Map<String, Value> = imgs.into_iter().map(|(g, _, v)| (g, v)).collect();
                    Output::ok(format!("isomorphic\n  {}", line.join(", ")), json!({ "result": "iso", "map": map }))
                }
                IsoResult::NotIso(why) => Output {
                    text: format!("not isomorphic: {why}"),
                    json: json!({ "result": "not-iso", "reason": why }),
                    code: 1,
                },
                IsoResult::Unknown(why) => Output {
                    text: format!("unknown: {why}"),
                    json: json!({ "result": "unknown", "reason": why }),
                    code: 2,
                },
            }
        }
        Cmd::Reps { matroid, pasture, list } => {
            let m = parse_matroid(matroid)?;
            let p = eval_str(pasture)?.into_pasture();
            let classes = representation_classes_with_cap(&m, &p, search_cap)?;
            let mut text = format!("{} rescaling classes", classes.len());
            let mut reps = Vec::new();
            for c in &classes {
                if *list {
                    let vals: Vec<String> = c.representative.values().iter().map(|v| p.format_unit(v)).collect();
                    text.push_str(&format!("\n  size {}: {}", c.size, vals.join(" ")));
                }
                reps.push(json!({
                    "size": c.size,
                    "values": c.representative.values().iter().map(element_json).collect::<Vec<_>>(),
                }));
            }
            let mut json = json!({ "count": classes.len(), "matroid": m.to_json() });
            if *list {
                json["classes"] = Value::Array(reps);
            }
            Output::ok(text, json)
        }
        Cmd::LiftCheck { matroid, pasture, kind } => {
            let m = parse_matroid(matroid)?;
            let p = eval_str(pasture)?.into_pasture();
            let l = lift(&p, *kind)?;
            let r = class_map(&m, &l.lambda)?;
            let ok = r.is_bijection();
            Output {
                text: format!(
                    "{} classes over the lift, {} over the source: {}",
                    r.lift_classes,
                    r.source_classes,
                    if ok { "bijection" } else { "not a bijection" }
                ),
                json: json!({
                    "lift_classes": r.lift_classes,
                    "source_classes": r.source_classes,
                    "image": r.image,
                    "split": r.split,
                    "bijection": ok,
                }),
                code: if ok { 0 } else { 1 },
            }
        }
        Cmd::Verify { suite, max_q } => {
            let r = verify::run(*suite, &verify::Options { max_q: *max_q });
            Output { text: r.to_string(), json: r.to_json(), code: if r.passed() { 0 } else { 1 } }
        }
    })
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    match run(&cli) {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("JSON values serialize")
            } else {
                out.text
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout(), "{body}");
            ExitCode::from(out.code)
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(std::io::stdout(), "{}", json!({ "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}

