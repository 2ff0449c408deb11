use std::io::Write;

use anyhow::anyhow;
use hsp_core::contraction::{contracted_pair, contraction_tiling};
use hsp_core::coxeter::{quotient_size, suite_pairs};
use hsp_core::export;
use hsp_core::hecke_oracle::oracle_matrix;
use hsp_core::invariance::invariance_scan;
use hsp_core::koszul::{inverse_violation, resolution_table, verify_tau_independence};
use hsp_core::paths::{commutation_class_check, enumerate_paths, paths_poly};
use hsp_core::tetris::{hole_multiset, hook_multiset, omega_sigma};
use hsp_core::{decomposition_matrix, HermitianPair, Node, Region, TilePartition};
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::{Cli, Command, Failure, Format, Rows, TetrisKind};

type Run = Result<(), Failure>;

fn emit_json(v: &Value) -> Run {
    let mut text = serde_json::to_string_pretty(v).map_err(anyhow::Error::from)?;
    text.push('\n');
    emit_text(&text)
}

/// A closed pipe on stdout (e.g. `| head`) is not an error.
fn emit_text(s: &str) -> Run {
    match std::io::stdout().lock().write_all(s.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(anyhow::Error::from(e).into()),
        _ => Ok(()),
    }
}

fn unsupported(cmd: &str, f: Format) -> Failure {
    Failure::Usage(anyhow!("{cmd} does not support --format {}", format!("{f:?}").to_lowercase()))
}

fn partition(region: &Region, rows: &Rows) -> Result<TilePartition, Failure> {
    region.from_row_lengths(&rows.0).map_err(|e| Failure::Usage(anyhow!("{:?}: {e}", rows.0)))
}

/// Prints the report and signals exit code 1.
fn verification_failed(report: Value) -> Run {
    emit_json(&report)?;
    Err(Failure::Verification)
}

pub fn run(cli: &Cli) -> Run {
    let cache = Cache::new(cli.global.cache_dir.clone());
    let format = cli.global.format;
    match &cli.command {
        Command::Region { pair } => {
            let region = Region::new(*pair)?;
            match format {
                Format::Json => emit_json(&cache.get_or_compute(*pair, "region", || {
                    Ok(export::region_json(&region, &region.enumerate_partitions()))
                })?),
                Format::Dot => emit_text(&export::region_dot(&region)),
                Format::Csv => emit_text(&export::region_csv(&region)),
            }
        }
        Command::Poset { pair } => {
            let region = Region::new(*pair)?;
            match format {
                Format::Json => emit_json(&cache.get_or_compute(*pair, "poset", || {
                    Ok(export::poset_json(&region, &region.enumerate_partitions()))
                })?),
                Format::Dot => emit_text(&export::poset_dot(&region, &region.enumerate_partitions())),
                Format::Csv => emit_text(&export::poset_csv(&region, &region.enumerate_partitions())),
            }
        }
        Command::Paths { pair, lambda, mu } => {
            if format != Format::Json {
                return Err(unsupported("paths", format));
            }
            if !pair.is_simply_laced() {
                return Err(hsp_core::Error::NotSimplyLaced(*pair).into());
            }
            let region = Region::new(*pair)?;
            let lam = partition(&region, lambda)?;
            let mu_p = partition(&region, mu)?;
            let paths = enumerate_paths(&region, lam, mu_p);
            let list: Vec<Value> = paths.iter().map(|p| export::path_json(&region, p)).collect();
            emit_json(&json!({
                "pair": pair,
                "lambda": lambda.0,
                "mu": mu.0,
                "poly": export::poly_json(&paths_poly(&paths)),
                "paths": list,
            }))
        }
        Command::Klmatrix { pair } => match format {
            Format::Json => emit_json(
                &cache.get_or_compute(*pair, "klmatrix", || Ok(export::matrix_json(&decomposition_matrix(*pair)?)))?,
            ),
            Format::Csv => emit_text(&export::matrix_csv(&decomposition_matrix(*pair)?)),
            Format::Dot => Err(unsupported("klmatrix", format)),
        },
        Command::OracleVerify { pair } => oracle_verify(*pair, &cache),
        Command::Tetris { pair, mu, tile, kind } => {
            if format != Format::Json {
                return Err(unsupported("tetris", format));
            }
            let region = Region::new(*pair)?;
            let m = partition(&region, mu)?;
            let (r, c) = *tile;
            let body = match kind {
                TetrisKind::Hook => serde_json::to_value(hook_multiset(&region, m, r, c)?),
                TetrisKind::Hole => serde_json::to_value(hole_multiset(&region, m, r, c)?),
                TetrisKind::Omega => serde_json::to_value(omega_sigma(&region, m, r, c)?),
            }
            .map_err(anyhow::Error::from)?;
            emit_json(
                &json!({ "pair": pair, "mu": mu.0, "tile": [r, c], "kind": format!("{kind:?}").to_lowercase(), "result": body }),
            )
        }
        Command::Contract { pair, tau } => {
            let region = Region::new(*pair)?;
            let ct = contraction_tiling(*pair, Node(*tau))?;
            match format {
                Format::Json => {
                    let cp = contracted_pair(*pair, Node(*tau))?;
                    emit_json(&export::contraction_json(&region, &ct, &cp))
                }
                Format::Dot => emit_text(&export::contraction_dot(&region, &ct)),
                Format::Csv => Err(unsupported("contract", format)),
            }
        }
        Command::InvarianceScan { pair, max_interval_size, all_entries } => {
            if format != Format::Json {
                return Err(unsupported("invariance-scan", format));
            }
            let pairs = if pair.is_empty() { default_scan_pairs() } else { pair.clone() };
            let mut report = invariance_scan(&pairs, *max_interval_size)?;
            if !all_entries {
                report.entries.retain(|e| !e.matrices_equal || !e.colours_correspond);
            }
            let passed = report.passed();
            let mut v = serde_json::to_value(&report).map_err(anyhow::Error::from)?;
            v["pairs"] = json!(pairs);
            v["passed"] = json!(passed);
            if passed {
                emit_json(&v)
            } else {
                verification_failed(v)
            }
        }
        Command::Koszul { pair, lambda, verify } => koszul(*pair, lambda.as_ref(), *verify, format, &cache),
        Command::Selftest => {
            if format != Format::Json {
                return Err(unsupported("selftest", format));
            }
            selftest()
        }
    }
}

fn default_scan_pairs() -> Vec<HermitianPair> {
    let mut v = Vec::new();
    for n in 1..=5 {
        for k in 1..=n {
            v.push(HermitianPair::axa(n, k).expect("valid"));
        }
    }
    v.push(HermitianPair::da(5).expect("valid"));
    v.push(HermitianPair::dd(6).expect("valid"));
    v
}

fn oracle_verify(pair: HermitianPair, cache: &Cache) -> Run {
    let report = cache.get_or_compute(pair, "oracle-verify", || {
        let d = decomposition_matrix(pair)?;
        let o = oracle_matrix(pair)?;
        let region = Region::new(pair)?;
        let mut v = json!({ "pair": pair, "size": d.len(), "passed": true });
        if d.order != o.order {
            v["passed"] = json!(false);
            v["counterexample"] = json!("partition orders differ");
        } else if let Some((l, m)) = d.first_difference(&o) {
            v["passed"] = json!(false);
            v["counterexample"] = json!({
                "lambda": region.row_lengths(d.order[l]),
                "mu": region.row_lengths(d.order[m]),
                "paths": export::poly_json(d.get(l, m)),
                "oracle": export::poly_json(o.get(l, m)),
            });
        }
        Ok(v)
    })?;
    if report["passed"] == json!(true) {
        emit_json(&report)
    } else {
        verification_failed(report)
    }
}

fn koszul(pair: HermitianPair, lambda: Option<&Rows>, verify: bool, format: Format, cache: &Cache) -> Run {
    let table = resolution_table(pair)?;
    let mut out = match (lambda, format) {
        (Some(rows), Format::Json) => {
            let region = Region::new(pair)?;
            let lam = partition(&region, rows)?;
            let id = table.id_of(lam).ok_or(hsp_core::Error::NotPartition)?;
            export::resolution_json(&table, id)
        }
        (None, Format::Json) => cache.get_or_compute(pair, "koszul", || Ok(export::resolution_table_json(&table)))?,
        (None, Format::Csv) if !verify => return emit_text(&export::resolution_table_csv(&table)),
        _ => return Err(unsupported("koszul", format)),
    };
    if verify {
        let d = decomposition_matrix(pair)?;
        let violation = inverse_violation(&table, &d);
        let tau = verify_tau_independence(pair)?;
        out["inverse"] = json!(violation.is_none());
        out["tauIndependent"] = json!(tau);
        if let Some((lam, nu)) = violation {
            out["counterexample"] = json!({ "lambda": lam, "nu": nu });
        }
        if violation.is_some() || !tau {
            return verification_failed(out);
        }
    }
    emit_json(&out)
}

fn selftest() -> Run {
    let pairs = suite_pairs();
    let mut checks = Vec::new();
    let mut record = |name: &str, failure: Option<String>| {
        checks.push(json!({ "name": name, "passed": failure.is_none(), "detail": failure }));
    };
    let first = |f: &dyn Fn(HermitianPair) -> anyhow::Result<Option<String>>| -> Option<String> {
        for &p in &pairs {
            match f(p) {
                Ok(None) => {}
                Ok(Some(msg)) => return Some(format!("{p}: {msg}")),
                Err(e) => return Some(format!("{p}: {e}")),
            }
        }
        None
    };
    let oracle = first(&|p| {
        let d = decomposition_matrix(p)?;
        let o = oracle_matrix(p)?;
        Ok(d.first_difference(&o).map(|(l, m)| format!("entry ({l},{m}) differs")))
    });
    let grading = first(&|p| {
        let d = decomposition_matrix(p)?;
        Ok(d.first_grading_violation().map(|(l, m)| format!("entry ({l},{m}) is not in qN[q]")))
    });
    let koszul = first(&|p| {
        let t = resolution_table(p)?;
        let d = decomposition_matrix(p)?;
        if let Some((l, n)) = inverse_violation(&t, &d) {
            return Ok(Some(format!("inverse fails at ({l},{n})")));
        }
        Ok((!verify_tau_independence(p)?).then(|| "tau dependence".to_string()))
    });
    let counts = first(&|p| {
        let ideals = Region::new(p)?.enumerate_partitions().len() as u128;
        let index = quotient_size(p);
        Ok((ideals != index).then(|| format!("{ideals} ideals vs group index {index}")))
    });
    let commutation = first(&|p| {
        let r = Region::new(p)?;
        let bad = r.enumerate_partitions().elements().iter().find(|&&l| !commutation_class_check(&r, l)).copied();
        Ok(bad.map(|l| format!("{:?} is not fully commutative", r.row_lengths(l))))
    });
    record("oracle-equivalence", oracle);
    record("grading", grading);
    record("koszul-inverse", koszul);
    record("counts", counts);
    record("full-commutativity", commutation);
    let passed = checks.iter().all(|c| c["passed"] == json!(true));
    let report = json!({ "pairs": pairs.len(), "checks": checks, "passed": passed });
    if passed {
        emit_json(&report)
    } else {
        verification_failed(report)
    }
}
