//! One JSON report per subcommand. Rationals are "num/den" strings, keys keep insertion order.

use num_rational::BigRational;
use serde_json::{json, Value};
use torus_core::arith::{characters, decompose, residue};
use torus_core::cohomology::cohomology;
use torus_core::lattices::{trace_character, FGAbelian};
use torus_core::tamagawa::{gm_adelic_check, local_table, tamagawa_number, Grid};
use torus_core::tori::{classify_real, isogenous, rank_profile, Torus};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

fn rational(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

fn abelian(a: &FGAbelian) -> Value {
    json!({
        "free_rank": a.free_rank,
        "invariant_factors": a.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "order": a.order().map(|o| o.to_string()),
        "display": a.to_string(),
    })
}

fn envelope(command: &str, body: Value) -> Value {
    let mut out = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    if let (Value::Object(map), Value::Object(extra)) = (&mut out, body) {
        map.extend(extra);
    }
    out
}

/// Group elements labelled by their least unit representative when there is a field datum.
fn element_labels(t: &Torus) -> Vec<Value> {
    match t.datum() {
        Some(d) => d.representatives().iter().map(|&r| json!(r)).collect(),
        None => t.group().elements().map(|g| json!(g)).collect(),
    }
}

pub fn info(t: &Torus) -> Result<Value, CliError> {
    let profile = rank_profile(t);
    let traces: Vec<String> = trace_character(t.lattice()).iter().map(|x| x.to_string()).collect();
    let mut body = json!({
        "group_order": t.group().order(),
        "dim": t.dim(),
        "rank_profile": {
            "dim": profile.dim,
            "split_rank": profile.split_rank,
            "anisotropic_rank": profile.anisotropic_rank,
            "anisotropic": profile.is_anisotropic(),
        },
        "elements": element_labels(t),
        "character": traces,
    });
    if t.group().is_abelian() {
        let dec = decompose(t)?;
        let conductors: Option<Vec<u64>> = t.datum().map(|d| characters(d).iter().map(|c| c.conductor()).collect());
        let constituents: Vec<Value> = dec
            .characters
            .iter()
            .zip(&dec.multiplicities)
            .enumerate()
            .map(|(i, (ch, &m))| {
                let mut entry = json!({
                    "index": i,
                    "exponents": ch.exponents().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                    "multiplicity": m,
                });
                if let (Some(c), Value::Object(map)) = (&conductors, &mut entry) {
                    map.insert("conductor".into(), json!(c[i]));
                }
                entry
            })
            .collect();
        if let Value::Object(map) = &mut body {
            map.insert("d".into(), json!(dec.d()));
            map.insert("decomposition".into(), Value::Array(constituents));
        }
    }
    Ok(envelope("info", body))
}

pub fn cohomology_report(t: &Torus, q: u32) -> Result<Value, CliError> {
    let h = cohomology(t.lattice(), q)?;
    Ok(envelope("cohomology", json!({ "q": q, "group": abelian(&h) })))
}

pub fn classify_real_report(t: &Torus) -> Result<Value, CliError> {
    let c = classify_real(t)?;
    Ok(envelope("classify-real", json!({ "a": c.a, "b": c.b, "c": c.c })))
}

pub fn isogeny_report(a: &Torus, b: &Torus) -> Result<Value, CliError> {
    Ok(envelope("isogeny", json!({ "isogenous": isogenous(a, b)? })))
}

pub fn volumes(t: &Torus, pmax: u64) -> Result<Value, CliError> {
    let rows = local_table(t, pmax)?;
    let lambda: serde_json::Map<String, Value> = rows.iter().map(|r| (r.p.to_string(), rational(&r.coefficient))).collect();
    let table: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "p": r.p,
                "ramified": r.ramified,
                "frobenius": r.frobenius,
                "lambda": rational(&r.coefficient),
                "volume": r.volume.as_ref().map(rational),
            })
        })
        .collect();
    Ok(envelope("volumes", json!({ "pmax": pmax, "lambda": lambda, "table": table })))
}

pub fn residue_report(t: &Torus, prec: usize) -> Result<Value, CliError> {
    let r = residue(t)?;
    let factors: Vec<Value> = r
        .factors
        .iter()
        .map(|(i, m, l)| {
            json!({
                "character": i,
                "multiplicity": m,
                "l1_re": format!("{:.prec$}", l.re),
                "l1_im": format!("{:.prec$}", l.im),
            })
        })
        .collect();
    Ok(envelope("residue", json!({ "d": r.d, "residue": format!("{:.prec$}", r.value), "factors": factors })))
}

pub fn tamagawa_report(t: &Torus) -> Result<Value, CliError> {
    let tau = tamagawa_number(t)?;
    Ok(envelope(
        "tamagawa",
        json!({
            "tau": rational(&tau.tau),
            "numerator": tau.tau.numer().to_string(),
            "denominator": tau.tau.denom().to_string(),
            "h1": abelian(&tau.h1),
            "sha2": abelian(&tau.sha),
        }),
    ))
}

pub fn check_gm(pmax: u64, grid: &Grid, scale: f64) -> Result<Value, CliError> {
    let c = gm_adelic_check(pmax, grid, scale)?;
    Ok(envelope(
        "check-gm",
        json!({
            "pmax": pmax,
            "grid": { "steps": grid.steps, "u_min": grid.u_min, "u_max": grid.u_max, "t_max": grid.t_max },
            "local_product": rational(&c.local_product),
            "numerator": c.numerator,
            "denominator": c.denominator,
            "tau_hat": c.tau_hat,
            "deviation": c.deviation,
            "error_estimate": c.error_estimate,
        }),
    ))
}
