//! Human-readable summaries of the JSON documents the other verbs emit,
//! plus `series,x,y` CSV export for plotting.

use std::fmt::Write as _;

use serde_json::Value;
use toric_contact::rational::{parse_rat, to_f64};

use crate::commands::{read_json, time_bound};
use crate::json::{CliResult, InputError};

type Row = (String, f64, f64);

/// Grid of `c₁` values for the displacement-time curve.
const CURVE_POINTS: usize = 99;

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or(f64::NAN)
}

fn rat_f64(v: &Value) -> f64 {
    v.as_str().and_then(|s| parse_rat(s).ok()).map_or(f64::NAN, |r| to_f64(&r))
}

fn verdict_word(passed: bool) -> &'static str {
    if passed {
        "passed"
    } else {
        "FAILED"
    }
}

fn sampled(r: &Value) -> String {
    let margin = r["min_margin"].as_f64().map_or(String::new(), |m| format!(", min margin {m:.3e}"));
    format!(
        "{} samples, max residual {:.3e}{margin}: {}",
        r["samples"],
        num(&r["max_residual"]),
        verdict_word(r["passed"].as_bool().unwrap_or(false))
    )
}

fn points(list: &Value, series: &str, rows: &mut Vec<Row>) {
    for p in list.as_array().into_iter().flatten() {
        let coords: Vec<f64> = p.as_array().into_iter().flatten().map(rat_f64).collect();
        rows.push((series.into(), coords.first().copied().unwrap_or(f64::NAN), coords.get(1).copied().unwrap_or(0.0)));
    }
}

fn summarize(doc: &Value) -> CliResult<(String, Vec<Row>)> {
    let mut out = String::new();
    let mut rows = Vec::new();
    if let Some(e) = doc.get("error") {
        writeln!(out, "error ({}): {}", e["kind"].as_str().unwrap_or("?"), e["message"].as_str().unwrap_or("")).ok();
        return Ok((out, rows));
    }
    if doc.get("reeb_type").is_some() && doc.get("kind").is_none() {
        writeln!(
            out,
            "cone: strictly convex {}, good {}, lineality {}, Reeb type {}",
            doc["strictly_convex"], doc["good"], doc["lineality"], doc["reeb_type"]
        )
        .ok();
        return Ok((out, rows));
    }
    match doc["kind"].as_str() {
        Some("probe_scan") => {
            writeln!(
                out,
                "probe scan at denominator {} radius {}: {} displaceable, {} undisplaced",
                doc["denominator"], doc["radius"], doc["displaceable_count"], doc["undisplaced_count"]
            )
            .ok();
            for u in doc["undisplaced"].as_array().into_iter().flatten() {
                writeln!(out, "  undisplaced {u}").ok();
            }
            for p in doc["points"].as_array().into_iter().flatten() {
                let series = if p["displaceable"].as_bool() == Some(true) { "displaceable" } else { "undisplaced" };
                points(&Value::Array(vec![p["point"].clone()]), series, &mut rows);
            }
        }
        Some("verdict") => {
            writeln!(
                out,
                "{} fiber {}: {} via {} (verified {})",
                doc["spec"].as_str().unwrap_or("?"),
                doc["fiber"],
                doc["status"].as_str().unwrap_or("?"),
                doc["method"].as_str().unwrap_or("none"),
                doc["verified"]
            )
            .ok();
            for step in doc["provenance"].as_array().into_iter().flatten() {
                writeln!(out, "  {}", step["step"].as_str().unwrap_or("?")).ok();
            }
        }
        Some("giroux") => {
            let (c1, t) = (num(&doc["c1"]), num(&doc["t"]));
            writeln!(
                out,
                "Giroux d={} c1={c1:.6} t={t:.6} bound={:.6} criterion={:.3e}; {}",
                doc["d"],
                num(&doc["time_bound"]),
                num(&doc["criterion"]),
                sampled(&doc["report"])
            )
            .ok();
            for i in 1..=CURVE_POINTS {
                let c = i as f64 / (CURVE_POINTS + 1) as f64;
                if let Some(tb) = time_bound(c) {
                    rows.push(("time_bound".into(), c, tb));
                }
            }
            rows.push(("fiber".into(), c1, t));
        }
        Some("contacto") => {
            writeln!(out, "contactomorphism check d={} map={}: {}", doc["d"], doc["map"].as_str().unwrap_or("?"), sampled(&doc["report"])).ok();
            rows.push(("max_residual".into(), num(&doc["t"]), num(&doc["report"]["max_residual"])));
        }
        Some("beta_g") => {
            writeln!(
                out,
                "beta_g profile {} over {} intervals: sign {}, min |E| {:.3e} at h={:.4}; {}",
                doc["profile"].as_str().unwrap_or("?"),
                doc["intervals"],
                doc["sign"].as_str().unwrap_or("?"),
                num(&doc["min_abs"]),
                num(&doc["argmin"]),
                verdict_word(doc["passed"].as_bool().unwrap_or(false))
            )
            .ok();
            for pair in doc["series"].as_array().into_iter().flatten() {
                rows.push(("E".into(), num(&pair[0]), num(&pair[1])));
            }
        }
        Some("flow") => {
            writeln!(
                out,
                "flow d={} H={} to t={} in {} steps: moment drift {:.3e}, constraint drift {:.3e}; {}",
                doc["d"],
                doc["hamiltonian"].as_str().unwrap_or("?"),
                doc["t_end"],
                doc["steps"],
                num(&doc["moment_drift"]),
                num(&doc["max_drift"]),
                verdict_word(doc["passed"].as_bool().unwrap_or(false))
            )
            .ok();
            for (series, key) in [("moment_start", "start"), ("moment_end", "point")] {
                let p: Vec<f64> = doc[key].as_array().into_iter().flatten().map(num).collect();
                for (j, c) in p.chunks(2).enumerate() {
                    rows.push((series.into(), (j + 1) as f64, std::f64::consts::PI * c.iter().map(|x| x * x).sum::<f64>()));
                }
            }
        }
        // synthesis and slice documents carry no kind tag
        None if doc.get("polytope").is_some() => {
            let p = &doc["polytope"];
            writeln!(
                out,
                "slice at level {} with Reeb vector {}: {} facets, {} vertices",
                doc["level"].as_str().unwrap_or("?"),
                doc["reeb"]["reeb"],
                p["facets"].as_array().map_or(0, Vec::len),
                p["vertices"].as_array().map_or(0, Vec::len)
            )
            .ok();
            points(&p["vertices"], "vertex", &mut rows);
        }
        None if doc.get("basis_witness").is_some() => {
            writeln!(out, "Reeb vector {} with coefficients {}", doc["reeb"], doc["coefficients"]).ok();
        }
        _ => return Err(InputError::new("unknown_report", "document is not a report emitted by this tool")),
    }
    Ok((out, rows))
}

pub fn report(input: &str, csv_path: Option<&str>) -> CliResult<String> {
    let (text, rows) = summarize(&read_json(input)?)?;
    if let Some(path) = csv_path {
        let io = |e: csv::Error| InputError::new("io_error", format!("{path}: {e}"));
        let mut w = csv::Writer::from_path(path).map_err(io)?;
        w.write_record(["series", "x", "y"]).map_err(io)?;
        for (s, x, y) in rows {
            w.serialize((s, x, y)).map_err(io)?;
        }
        w.flush().map_err(|e| InputError::new("io_error", format!("{path}: {e}")))?;
    }
    Ok(text)
}
