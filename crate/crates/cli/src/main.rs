use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use grwb_core::certify::{classify_data, verify_with_cap, Certificate};
use grwb_core::corpus::{self, GroupData};
use grwb_core::group::{derived_series, is_soluble, perfect_radical, DEFAULT_ORDER_CAP};
use grwb_core::ideal::{augmentation_ideal, kappa_chain, omega, IdealLattice, KappaOutcome};
use grwb_core::parse::{parse_finite_element, parse_group_file, parse_matrix_json, parse_permutation};
use grwb_core::ring::hs_of_idempotent_matrix;
use grwb_core::{Error, FiniteGroup, LatticeIndex, Rational, Result, Subgroup};

/// Exact group-ring computations and certificates.
#[derive(Parser)]
#[command(name = "grwb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, classes, derived series, solubility, Hirsch data and certificate.
    Analyze {
        /// `corpus:NAME` or a group file.
        group: String,
        #[arg(long)]
        pretty: bool,
    },
    /// Augmentation ideal or ω(H) of a finite group.
    Ideal {
        group: String,
        /// `delta` or `omega:H` with H one of trivial, whole, derived,
        /// radical, or comma-separated generators in cycle notation.
        ideal: String,
        /// Report the n-th power instead.
        #[arg(long, conflicts_with_all = ["idempotent", "kappa"])]
        power: Option<u32>,
        /// Report whether I^2 = I.
        #[arg(long, conflicts_with = "kappa")]
        idempotent: bool,
        /// Compute powers until they stabilize or the budget runs out.
        #[arg(long, num_args = 0..=1, default_missing_value = "12")]
        kappa: Option<usize>,
        #[arg(long)]
        pretty: bool,
    },
    /// Class vector of the trace of an idempotent matrix over QG.
    Hs {
        group: String,
        /// JSON array of rows of group-ring literals.
        matrix: String,
        #[arg(long)]
        pretty: bool,
    },
    /// Replay a certificate produced by `analyze`.
    Verify {
        /// A certificate, or an `analyze` report containing one.
        certificate: String,
    },
}

fn order_cap() -> usize {
    std::env::var("GRWB_ORDER_CAP").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_ORDER_CAP)
}

fn load_group(source: &str) -> Result<GroupData> {
    let cap = order_cap();
    if let Some(name) = source.strip_prefix("corpus:") {
        return corpus::lookup(name, cap);
    }
    let text = std::fs::read_to_string(Path::new(source)).map_err(|e| Error::Parse(format!("{source}: {e}")))?;
    parse_group_file(&text, cap)
}

fn load_finite(source: &str) -> Result<Arc<FiniteGroup>> {
    match load_group(source)? {
        GroupData::Finite(g) => Ok(g),
        _ => Err(Error::UnsupportedShape("this command needs a finite group".into())),
    }
}

fn emit(value: &Value, pretty: bool) {
    let text = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
    println!("{}", text.expect("json"));
}

fn analyze(source: &str) -> Result<Value> {
    let data = load_group(source)?;
    let cert = classify_data(&data)?;
    let certificate = serde_json::to_value(&cert).expect("json");
    Ok(match &data {
        GroupData::Finite(g) => json!({
            "group": g.name(),
            "kind": "finite",
            "order": g.order(),
            "class_sizes": g.conjugacy_classes().iter().map(Vec::len).collect::<Vec<_>>(),
            "derived_series": derived_series(g).iter().map(Subgroup::order).collect::<Vec<_>>(),
            "soluble": is_soluble(g),
            "perfect_radical_order": perfect_radical(g).order(),
            "hirsch_number": 0,
            "certificate": certificate,
        }),
        GroupData::Pc(p) => json!({
            "group": p.to_string(),
            "kind": "pc",
            "order": null,
            "relative_orders": p.relative_orders(),
            "soluble": true,
            "hirsch_number": p.hirsch_number(),
            "consistent": p.consistency_check(),
            "certificate": certificate,
        }),
        GroupData::Product(d) => json!({
            "group": format!("{} x <{}>", d.finite.name(), d.pc),
            "kind": "product",
            "order": null,
            "finite_order": d.finite.order(),
            "finite_class_sizes": d.finite.conjugacy_classes().iter().map(Vec::len).collect::<Vec<_>>(),
            "derived_series": derived_series(&d.finite).iter().map(Subgroup::order).collect::<Vec<_>>(),
            "soluble": is_soluble(&d.finite),
            "hirsch_number": d.hirsch_number(),
            "certificate": certificate,
        }),
    })
}

fn parse_subgroup(g: &Arc<FiniteGroup>, h: &str) -> Result<Subgroup> {
    Ok(match h {
        "trivial" => Subgroup::trivial(g),
        "whole" => Subgroup::whole(g),
        "derived" => derived_series(g).get(1).cloned().unwrap_or_else(|| Subgroup::trivial(g)),
        "radical" => perfect_radical(g),
        gens => {
            let idx = gens
                .split(',')
                .map(|s| {
                    let p = parse_permutation(s.trim(), g.degree())?;
                    g.index_of(&p).ok_or_else(|| Error::Parse(format!("{s} is not in {}", g.name())))
                })
                .collect::<Result<Vec<_>>>()?;
            Subgroup::generated(g, &idx)
        }
    })
}

fn index_json(i: &LatticeIndex) -> Value {
    match i {
        LatticeIndex::Finite(n) => match i64::try_from(n) {
            Ok(v) => json!(v),
            Err(_) => json!(n.to_string()),
        },
        LatticeIndex::Infinite => json!("infinite"),
    }
}

fn lattice_json(i: &IdealLattice) -> Value {
    json!({
        "dimension": i.lattice().dim(),
        "group": i.group().name(),
        "rank": i.rank(),
        "rows": i.lattice().rows(),
    })
}

fn ideal(source: &str, which: &str, power: Option<u32>, idempotent: bool, kappa: Option<usize>) -> Result<Value> {
    let g = load_finite(source)?;
    let base = match which {
        "delta" => augmentation_ideal(&g),
        other => match other.strip_prefix("omega:") {
            Some(h) => omega(&parse_subgroup(&g, h)?)?,
            None => return Err(Error::Parse(format!("unknown ideal {other:?}; use delta or omega:H"))),
        },
    };
    if idempotent {
        return Ok(json!({ "idempotent": base.is_idempotent()? }));
    }
    if let Some(budget) = kappa {
        let chain = kappa_chain(&base, budget)?;
        let (outcome, gamma) = match chain.outcome {
            KappaOutcome::Stabilized(g) => ("stabilized", Some(g)),
            KappaOutcome::QSpanStableOnly => ("q-span-stable-only", None),
            KappaOutcome::BudgetExhausted => ("budget-exhausted", None),
        };
        return Ok(json!({
            "indices": chain.indices.iter().map(index_json).collect::<Vec<_>>(),
            "q_dims": chain.q_dims,
            "outcome": outcome,
            "gamma": gamma,
        }));
    }
    let mut result = base.clone();
    for _ in 1..power.unwrap_or(1).max(1) {
        result = result.product(&base)?;
    }
    Ok(lattice_json(&result))
}

fn hs(source: &str, matrix_path: &str) -> Result<Value> {
    let g = load_finite(source)?;
    let text = std::fs::read_to_string(matrix_path).map_err(|e| Error::Parse(format!("{matrix_path}: {e}")))?;
    let m = parse_matrix_json(&g, &text, |s| parse_finite_element::<Rational>(&g, s))?;
    let v = hs_of_idempotent_matrix(&m)?;
    Ok(json!({ "group": g.name(), "classes": v }))
}

fn verify(path: &str) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let cert_value = value.get("certificate").cloned().unwrap_or(value);
    let cert: Certificate = serde_json::from_value(cert_value).map_err(|e| Error::Parse(format!("certificate: {e}")))?;
    Ok(json!({ "variant": cert.variant_name(), "valid": verify_with_cap(&cert, order_cap())? }))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Analyze { group, pretty } => emit(&analyze(&group)?, pretty),
        Command::Ideal { group, ideal: which, power, idempotent, kappa, pretty } => {
            emit(&ideal(&group, &which, power, idempotent, kappa)?, pretty)
        }
        Command::Hs { group, matrix, pretty } => emit(&hs(&group, &matrix)?, pretty),
        Command::Verify { certificate } => {
            let report = verify(&certificate)?;
            emit(&report, false);
            return Ok(report["valid"] == json!(true));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
