use std::fmt::{Display, Write as _};
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde_json::{json, Value};

use tlj::coeffs::{check_normalized, decay_sequence, spectral_check, vacuum_unchecked, Backend, CoeffError, VacuumEvaluator};
use tlj::forests::{ElementEnumerator, ThompsonElement};
use tlj::graphpoly::thompson_graph;
use tlj::scalars::Literal;
use tlj::subgroups::{jones_membership, sigma_jones_membership, stabilizer_scan_with, MembershipMethod, ScanOptions};
use tlj::tl::RSpec;
use tlj::Scalar;

use crate::params::{fmt_f64, literal, render, ParamArgs, Params, ScalarMode};
use crate::{CliError, Format, RunArgs, SpecArgs, Subgroup};

fn element(src: &str) -> Result<ThompsonElement, CliError> {
    src.parse().map_err(|e| CliError::Parse(format!("--element `{src}`: {e}")))
}

fn params(run: &RunArgs, spec: &SpecArgs) -> Result<Params, CliError> {
    ParamArgs {
        delta: &spec.delta,
        a: spec.a.as_deref(),
        b: spec.b.as_deref(),
        chromatic: spec.chromatic,
        mode: run.scalar,
    }
    .build()
}

fn format_or(run: &RunArgs, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
    let f = run.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Parse(format!("format {f:?} is not available for this command").to_lowercase()))
    }
}

/// Key/value lines with the values aligned.
fn aligned(rows: &[(String, String)]) -> String {
    let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<w$}  {v}\n")).collect()
}

fn json_out(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// A JSON array with one compact record per line.
fn json_lines(items: Vec<Value>) -> String {
    if items.is_empty() {
        return "[]\n".into();
    }
    let body: Vec<String> = items.iter().map(|v| format!("  {v}")).collect();
    format!("[\n{}\n]\n", body.join(",\n"))
}

fn coeff_error(e: CoeffError) -> CliError {
    match e {
        CoeffError::NotNormalized(r) => CliError::NotNormalized(r),
        CoeffError::NotChromatic => {
            CliError::Failed("this backend needs the chromatic point; pass --chromatic or pick another backend".into())
        }
        e => CliError::Failed(e.to_string()),
    }
}

pub fn eval(
    run: &RunArgs,
    spec: &SpecArgs,
    src: &str,
    backend: Backend,
    cross: Option<&[String]>,
) -> Result<String, CliError> {
    let g = element(src)?;
    let format = format_or(run, Format::Text, &[Format::Text, Format::Json])?;
    let checks = match cross {
        None => Vec::new(),
        Some(names) if names.iter().any(|n| n == "all") => Vec::new(),
        Some(names) => names
            .iter()
            .map(|n| n.parse::<Backend>().map_err(|e| CliError::Parse(e.to_string())))
            .collect::<Result<_, _>>()?,
    };
    let all = cross.is_some() && checks.is_empty();
    let p = params(run, spec)?;
    let scalars = if p.is_exact() { "exact" } else { "float" };
    let report = match p {
        Params::Exact(r) => eval_with(&r, &g, backend, &checks, all, run.tolerance)?,
        Params::Float(r) => eval_with(&r, &g, backend, &checks, all, run.tolerance)?,
    };
    let agree = report.checks.iter().all(|c| c.agrees);
    let out = match format {
        Format::Json => json_out(&json!({
            "element": g.to_string(),
            "value": report.value.0,
            "approx": report.value.1,
            "backend": backend.name(),
            "scalars": scalars,
            "checks": report.checks.iter().map(|c| json!({
                "backend": c.backend.name(),
                "value": c.value.0,
                "agrees": c.agrees,
            })).collect::<Vec<_>>(),
        })),
        _ => {
            let mut rows = vec![
                ("element".to_string(), g.to_string()),
                ("value".to_string(), report.value.0.clone()),
                ("approx".to_string(), fmt_f64(report.value.1)),
                ("backend".to_string(), backend.name().to_string()),
                ("scalars".to_string(), scalars.to_string()),
            ];
            for c in &report.checks {
                let verdict = if c.agrees { "agrees" } else { "DIFFERS" };
                rows.push((format!("check {}", c.backend), format!("{}  {verdict}", c.value.0)));
            }
            aligned(&rows)
        }
    };
    if agree {
        Ok(out)
    } else {
        Err(CliError::Mismatch(out))
    }
}

struct Check {
    backend: Backend,
    value: (String, f64),
    agrees: bool,
}

struct EvalReport {
    value: (String, f64),
    checks: Vec<Check>,
}

fn eval_with<S: Scalar + Display>(
    r: &RSpec<S>,
    g: &ThompsonElement,
    backend: Backend,
    checks: &[Backend],
    all: bool,
    tol: f64,
) -> Result<EvalReport, CliError> {
    let primary = VacuumEvaluator::new(r.clone(), backend).with_tolerance(tol);
    let value = primary.evaluate(g).map_err(coeff_error)?;
    let others: Vec<Backend> = if all {
        Backend::ALL
            .into_iter()
            .filter(|&b| b != backend && VacuumEvaluator::new(r.clone(), b).with_tolerance(tol).applicable())
            .collect()
    } else {
        checks.to_vec()
    };
    let mut out = Vec::new();
    for b in others {
        let v = VacuumEvaluator::new(r.clone(), b).with_tolerance(tol).evaluate(g).map_err(coeff_error)?;
        out.push(Check { backend: b, agrees: v.approx_eq(&value, tol), value: render(&v) });
    }
    Ok(EvalReport { value: render(&value), checks: out })
}

pub fn scan(run: &RunArgs, t_src: &str, max_leaves: usize) -> Result<String, CliError> {
    let format = format_or(run, Format::Json, &[Format::Json, Format::Csv, Format::Text])?;
    if max_leaves > 20 {
        return Err(CliError::Parse("--max-leaves above 20 is out of reach".into()));
    }
    let t = literal("t", t_src)?;
    let exact = match (run.scalar, &t) {
        (ScalarMode::Float, _) => None,
        (_, Literal::Exact(q)) => Some(q.clone()),
        (ScalarMode::Exact, Literal::Float(_)) => return Err(CliError::Parse("--t is not exact".into())),
        (ScalarMode::Auto, Literal::Float(_)) => None,
    };
    let last = AtomicUsize::new(0);
    let progress = |done: usize, total: usize| {
        let pct = done * 10 / total.max(1);
        if last.fetch_max(pct, Ordering::Relaxed) < pct {
            eprintln!("scan: {}% ({done}/{total} pairs)", pct * 10);
        }
    };
    let opts = ScanOptions {
        workers: None,
        tolerance: run.tolerance,
        progress: if run.quiet { None } else { Some(&progress) },
    };
    let bad_t = |e| CliError::Parse(format!("--t `{t_src}`: {e}"));
    let rows: Vec<(String, usize, Vec<(usize, usize)>, (String, f64))> = match exact {
        Some(q) => stabilizer_scan_with(&q, max_leaves, &opts)
            .map_err(bad_t)?
            .into_iter()
            .map(|r| (r.element.to_string(), r.leaves, r.edges, render(&r.gamma_t)))
            .collect(),
        None => stabilizer_scan_with(&t.to_f64(), max_leaves, &opts)
            .map_err(bad_t)?
            .into_iter()
            .map(|r| (r.element.to_string(), r.leaves, r.edges, render(&r.gamma_t)))
            .collect(),
    };
    Ok(match format {
        Format::Json => json_lines(
            rows.iter()
                .map(|(e, n, edges, gamma)| {
                    json!({
                        "element": e,
                        "leaves": n,
                        "edges": edges.iter().map(|&(u, v)| json!([u, v])).collect::<Vec<_>>(),
                        "gamma_t": gamma.0,
                    })
                })
                .collect(),
        ),
        Format::Csv => {
            let mut s = String::from("element,leaves,gamma_t\n");
            for (e, n, _, gamma) in &rows {
                writeln!(s, "{e},{n},{}", gamma.0).unwrap();
            }
            s
        }
        _ => rows.iter().map(|(e, n, _, gamma)| format!("{e}  {n}  {}\n", gamma.0)).collect(),
    })
}

fn opt_f64(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

pub fn decay(run: &RunArgs, spec: &SpecArgs, src: &str, powers: usize) -> Result<String, CliError> {
    let format = format_or(run, Format::Csv, &[Format::Csv, Format::Json, Format::Text])?;
    let base = element(src)?;
    let r = params(run, spec)?.to_float();
    check_normalized(&r, run.tolerance).map_err(coeff_error)?;
    let direct: Vec<f64> = (1..=powers as i64).into_par_iter().map(|k| vacuum_unchecked(&base.pow(k), &r)).collect();
    let is_x0 = base == ThompsonElement::x0();
    let (via, roots) = if is_x0 {
        let seq = decay_sequence(&r, powers);
        if !seq.via_matrix && !run.quiet {
            eprintln!("decay: a = 0, the transfer matrix is singular; via_A left empty");
        }
        let (rp, rm, _) = spectral_check(&r);
        (seq.via_matrix.then_some(seq.values), Some((rp.norm(), rm.norm())))
    } else {
        (None, None)
    };
    let tol = run.tolerance;
    let mut mismatch = false;
    let rows: Vec<[String; 6]> = (0..powers)
        .map(|i| {
            let d = direct[i];
            let v = via.as_ref().map(|v| v[i]);
            if let Some(v) = v {
                mismatch |= (d - v).abs() > tol * 1f64.max(d.abs()).max(v.abs());
            }
            let ratio = (i > 0 && direct[i - 1] != 0.0).then(|| d / direct[i - 1]);
            [
                (i + 1).to_string(),
                fmt_f64(d),
                opt_f64(v),
                opt_f64(roots.map(|r| r.0)),
                opt_f64(roots.map(|r| r.1)),
                opt_f64(ratio),
            ]
        })
        .collect();
    const HEADER: [&str; 6] = ["k", "direct", "via_A", "abs_r_plus", "abs_r_minus", "ratio"];
    let out = match format {
        Format::Json => json_lines(
            rows.iter()
                .map(|row| {
                    let obj = HEADER.iter().zip(row).map(|(h, c)| {
                        let v = match (c.parse::<u64>(), c.parse::<f64>()) {
                            (Ok(k), _) if *h == "k" => json!(k),
                            (_, Ok(x)) => json!(x),
                            _ => Value::Null,
                        };
                        (h.to_string(), v)
                    });
                    Value::Object(obj.collect())
                })
                .collect(),
        ),
        Format::Csv => {
            let mut s = HEADER.join(",") + "\n";
            for row in &rows {
                s += &(row.join(",") + "\n");
            }
            s
        }
        _ => {
            let mut width = HEADER.map(str::len);
            for row in &rows {
                for (w, c) in width.iter_mut().zip(row) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells.iter().zip(&width).map(|(c, &w)| format!("{c:>w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            let mut s = line(HEADER.to_vec());
            for row in &rows {
                s += &line(row.iter().map(String::as_str).collect());
            }
            s
        }
    };
    if mismatch {
        Err(CliError::Mismatch(out))
    } else {
        Ok(out)
    }
}

pub fn graph(run: &RunArgs, src: &str) -> Result<String, CliError> {
    let format = run.format.unwrap_or(Format::Text);
    let g = element(src)?;
    let tg = thompson_graph(&g);
    let edges = tg.graph.edge_list();
    Ok(match format {
        Format::Dot => tg.graph.to_dot("gamma"),
        Format::Json => json_out(&json!({
            "element": g.to_string(),
            "vertices": tg.graph.vertex_count(),
            "edges": edges.iter().map(|&(u, v)| json!([u, v])).collect::<Vec<_>>(),
            "bipartite": tg.graph.is_bipartite(),
        })),
        Format::Csv => {
            let mut s = String::from("u,v\n");
            for (u, v) in &edges {
                writeln!(s, "{u},{v}").unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = aligned(&[
                ("element".into(), g.to_string()),
                ("vertices".into(), tg.graph.vertex_count().to_string()),
                ("edges".into(), edges.len().to_string()),
            ]);
            for (u, v) in &edges {
                writeln!(s, "{u} {v}").unwrap();
            }
            s
        }
    })
}

pub fn member(run: &RunArgs, subgroup: Subgroup, src: &str) -> Result<String, CliError> {
    let format = format_or(run, Format::Text, &[Format::Text, Format::Json])?;
    let g = element(src)?;
    let (name, test): (&str, fn(&ThompsonElement, MembershipMethod) -> bool) = match subgroup {
        Subgroup::Jones => ("jones", jones_membership),
        Subgroup::SigmaJones => ("sigma-jones", sigma_jones_membership),
    };
    let verdicts: Vec<(MembershipMethod, bool)> = MembershipMethod::ALL.iter().map(|&m| (m, test(&g, m))).collect();
    let out = match format {
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("element".into(), json!(g.to_string()));
            obj.insert("subgroup".into(), json!(name));
            for (m, v) in &verdicts {
                obj.insert(m.to_string(), json!(v));
            }
            json_out(&Value::Object(obj))
        }
        _ => {
            let mut rows = vec![("element".to_string(), g.to_string()), ("subgroup".to_string(), name.to_string())];
            rows.extend(verdicts.iter().map(|(m, v)| (m.to_string(), v.to_string())));
            aligned(&rows)
        }
    };
    if verdicts.iter().all(|v| v.1 == verdicts[0].1) {
        Ok(out)
    } else {
        Err(CliError::Mismatch(out))
    }
}

pub fn enumerate(run: &RunArgs, max_leaves: usize, count: bool) -> Result<String, CliError> {
    let format = format_or(run, Format::Text, &[Format::Text, Format::Json, Format::Csv])?;
    if max_leaves > 20 {
        return Err(CliError::Parse("--max-leaves above 20 is out of reach".into()));
    }
    let en = ElementEnumerator::new(max_leaves);
    if count {
        let mut counts = vec![0usize; max_leaves + 1];
        for p in en.iter() {
            counts[p.leaves] += 1;
        }
        let rows: Vec<(usize, usize)> = (2..=max_leaves).map(|n| (n, counts[n])).collect();
        return Ok(match format {
            Format::Json => json_lines(
                rows.iter().map(|&(n, c)| json!({"leaves": n, "count": c})).collect(),
            ),
            Format::Csv => {
                std::iter::once("leaves,count\n".to_string()).chain(rows.iter().map(|(n, c)| format!("{n},{c}\n"))).collect()
            }
            _ => aligned(&rows.iter().map(|(n, c)| (n.to_string(), c.to_string())).collect::<Vec<_>>()),
        });
    }
    let elems: Vec<(String, usize)> = en.iter().map(|p| (p.element().to_string(), p.leaves)).collect();
    Ok(match format {
        Format::Json => json_lines(
            elems.iter().map(|(e, n)| json!({"element": e, "leaves": n})).collect(),
        ),
        Format::Csv => {
            std::iter::once("element,leaves\n".to_string()).chain(elems.iter().map(|(e, n)| format!("{e},{n}\n"))).collect()
        }
        _ => elems.iter().map(|(e, n)| format!("{e}  {n}\n")).collect(),
    })
}
