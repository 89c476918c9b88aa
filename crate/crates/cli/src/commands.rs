//! Subcommand implementations: each renders a human report or a JSON
//! document from the core library, with failures classed for exit codes.

use dioquad::curve::{Curve, Point};
use dioquad::diophantine::{
    check_tuple, induced_curve, parse_tuple_file, parse_tuple_str, DioError, DioTuple,
    InducedCurveBundle,
};
use dioquad::families::{
    evaluate_family, parse_param_grid, parse_param_list, CMode, FamilyError, FamilyName,
    FamilyParams,
};
use dioquad::fixtures;
use dioquad::numeric::Rat;
use dioquad::sweep::{run_sweep, SweepConfig};
use dioquad::torsion::{torsion_group, torsion_order_bound};
use serde_json::json;
use std::fs;
use std::path::Path;

/// Failure classes, mapped to exit codes 1, 2, and 3 respectively.
pub enum CmdError {
    /// Verification found a failing tuple (already reported on stdout).
    Failed,
    /// Malformed invocation or unparseable input.
    Usage(String),
    /// Well-formed input that names a degenerate object.
    Degenerate(String),
}

fn usage<E: std::fmt::Display>(e: E) -> CmdError {
    CmdError::Usage(e.to_string())
}

fn degenerate<E: std::fmt::Display>(e: E) -> CmdError {
    CmdError::Degenerate(e.to_string())
}

fn rat_strings(elems: &[Rat]) -> Vec<String> {
    elems.iter().map(Rat::to_string).collect()
}

/// Parses and fully validates a quadruple argument for the curve commands.
fn input_tuple(s: &str) -> Result<DioTuple, CmdError> {
    let elems = parse_tuple_str(s).map_err(usage)?;
    DioTuple::new(elems).map_err(degenerate)
}

fn input_bundle(s: &str) -> Result<InducedCurveBundle, CmdError> {
    let tuple = input_tuple(s)?;
    induced_curve(&tuple).map_err(degenerate)
}

pub fn verify(file: Option<&Path>, tuple: Option<&str>, json_mode: bool) -> Result<(), CmdError> {
    let sources: Vec<(String, Vec<Rat>)> = if let Some(s) = tuple {
        vec![("tuple".to_string(), parse_tuple_str(s).map_err(usage)?)]
    } else if let Some(path) = file {
        let text = fs::read_to_string(path)
            .map_err(|e| CmdError::Usage(format!("{}: {e}", path.display())))?;
        parse_tuple_file(&text)
            .map_err(usage)?
            .into_iter()
            .map(|entry| (format!("line {}", entry.line), entry.elements))
            .collect()
    } else {
        fixtures::CORPUS
            .iter()
            .map(|(name, _)| {
                (
                    name.to_string(),
                    fixtures::fixture(name).elements().to_vec(),
                )
            })
            .collect()
    };

    let mut results = Vec::new();
    let mut lines = Vec::new();
    let mut passed = 0usize;
    for (source, elems) in &sources {
        match check_tuple(elems) {
            Ok(certs) => {
                passed += 1;
                lines.push(format!(
                    "{source}: PASS ({} elements, {} square pairs)",
                    elems.len(),
                    certs.len()
                ));
                let pairs: Vec<_> = certs
                    .iter()
                    .map(|c| json!({"i": c.i, "j": c.j, "root": c.root.to_string()}))
                    .collect();
                results.push(json!({
                    "source": source,
                    "elements": rat_strings(elems),
                    "ok": true,
                    "pairs": pairs,
                }));
            }
            Err(e) => {
                let (line, detail) = match &e {
                    DioError::NotDiophantine { i, j, value } => (
                        format!(
                            "{source}: FAIL pair ({}, {}): product plus 1 = {value} is not a square",
                            elems[*i], elems[*j]
                        ),
                        json!({
                            "kind": "not-a-square",
                            "i": i,
                            "j": j,
                            "pair": [elems[*i].to_string(), elems[*j].to_string()],
                            "value": value.to_string(),
                            "message": e.to_string(),
                        }),
                    ),
                    other => (
                        format!("{source}: FAIL {other}"),
                        json!({"kind": "invalid", "message": other.to_string()}),
                    ),
                };
                lines.push(line);
                results.push(json!({
                    "source": source,
                    "elements": rat_strings(elems),
                    "ok": false,
                    "error": detail,
                }));
            }
        }
    }

    let all_pass = passed == sources.len();
    if json_mode {
        let doc = json!({
            "results": results,
            "passed": passed,
            "total": sources.len(),
            "all_pass": all_pass,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        for line in &lines {
            println!("{line}");
        }
        println!("{passed}/{} tuples pass", sources.len());
    }
    if all_pass {
        Ok(())
    } else {
        Err(CmdError::Failed)
    }
}

pub fn induce(tuple: &str, json_mode: bool) -> Result<(), CmdError> {
    let bundle = input_bundle(tuple)?;
    let c = bundle.curve();
    let elems = bundle.elements();
    let (ai, bi, s) = c.integer_coefficients();
    let ad_is_minus_one = &elems[0] * &elems[3] == Rat::from(-1);
    let root_names = ["ab", "ac", "ad", "bc", "bd", "cd"];
    if json_mode {
        let mut roots = serde_json::Map::new();
        for (name, root) in root_names.iter().zip(bundle.six_roots()) {
            roots.insert(name.to_string(), json!(root.to_string()));
        }
        let doc = json!({
            "elements": rat_strings(elems),
            "p1": c.p1().to_string(),
            "p2": c.p2().to_string(),
            "A": c.a().to_string(),
            "B": c.b().to_string(),
            "integer_model": {"A": ai.to_string(), "B": bi.to_string(), "s": s.to_string()},
            "P": bundle.point_p().to_string(),
            "Q": bundle.point_q().to_string(),
            "pair_roots": roots,
            "ad_is_minus_one": ad_is_minus_one,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        println!("elements: {}", rat_strings(elems).join(", "));
        println!("p1 = {}", c.p1());
        println!("p2 = {}", c.p2());
        println!("A = {}", c.a());
        println!("B = {}", c.b());
        println!("integer model: A = {ai}, B = {bi} (s = {s})");
        println!("P = {}", bundle.point_p());
        println!("Q = {}", bundle.point_q());
        let roots: Vec<String> = root_names
            .iter()
            .zip(bundle.six_roots())
            .map(|(n, r)| format!("{n} = {r}"))
            .collect();
        println!("pair roots: {}", roots.join(", "));
        println!("d = -1/a: {}", if ad_is_minus_one { "yes" } else { "no" });
    }
    Ok(())
}

pub fn torsion(
    tuple: Option<&str>,
    p1: Option<&str>,
    p2: Option<&str>,
    primes: usize,
    json_mode: bool,
) -> Result<(), CmdError> {
    if primes < 2 {
        return Err(CmdError::Usage("--primes must be at least 2".to_string()));
    }
    let (curve, source) = match (tuple, p1, p2) {
        (Some(s), None, None) => {
            let bundle = input_bundle(s)?;
            (bundle.curve().clone(), format!("quadruple {s}"))
        }
        (None, Some(p1), Some(p2)) => {
            let p1: Rat = p1.parse().map_err(usage)?;
            let p2: Rat = p2.parse().map_err(usage)?;
            let c = Curve::new(p1, p2).map_err(degenerate)?;
            let source = format!("model p1 = {}, p2 = {}", c.p1(), c.p2());
            (c, source)
        }
        _ => {
            return Err(CmdError::Usage(
                "give either --tuple or both --p1 and --p2".to_string(),
            ))
        }
    };
    let class = torsion_group(&curve);
    let gcd = torsion_order_bound(&curve, primes);
    let consistent = gcd.is_multiple_of(u64::from(class.order()));
    let witness = class.witness().map(Point::to_string);
    if json_mode {
        let doc = json!({
            "source": source,
            "p1": curve.p1().to_string(),
            "p2": curve.p2().to_string(),
            "torsion": class.to_string(),
            "k": class.k(),
            "order": class.order(),
            "witness": witness,
            "gcd_point_counts": gcd,
            "primes": primes,
            "order_divides_gcd": consistent,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        println!("curve: y^2 = x(x + {})(x + {})", curve.p1(), curve.p2());
        println!("torsion: {class} (order {})", class.order());
        println!("witness: {}", witness.as_deref().unwrap_or("none"));
        println!("gcd of #E(F_p) over {primes} good odd primes: {gcd}");
        println!(
            "torsion order divides gcd: {}",
            if consistent { "yes" } else { "no" }
        );
    }
    Ok(())
}

pub fn family(
    name: &str,
    params: &str,
    c_mode: &str,
    check_torsion: bool,
    json_mode: bool,
) -> Result<(), CmdError> {
    let family: FamilyName = name.parse().map_err(usage)?;
    let mode: CMode = c_mode.parse().map_err(usage)?;
    let pairs = parse_param_list(params).map_err(usage)?;
    let fp = FamilyParams::from_pairs(family, &pairs, mode).map_err(usage)?;
    let out = evaluate_family(&fp).map_err(|e| match e {
        FamilyError::Degenerate { .. } => degenerate(e),
        FamilyError::Params(_) => usage(e),
    })?;
    let advertised = out.advertised_torsion();
    let elems = out.quadruple().elements();

    let checked = if check_torsion {
        let bundle = induced_curve(out.quadruple()).map_err(degenerate)?;
        let actual = torsion_group(bundle.curve());
        let contains = actual.order().is_multiple_of(advertised.order());
        Some((actual, contains))
    } else {
        None
    };

    if json_mode {
        let param_pairs: Vec<_> = fp
            .pairs()
            .iter()
            .map(|(n, v)| json!([n, v.to_string()]))
            .collect();
        let mut doc = json!({
            "family": family.to_string(),
            "c_mode": mode.to_string(),
            "params": param_pairs,
            "quadruple": rat_strings(elems),
            "advertised_torsion": advertised.to_string(),
        });
        if let Some((actual, contains)) = &checked {
            let obj = doc.as_object_mut().expect("document is an object");
            obj.insert("actual_torsion".to_string(), json!(actual.to_string()));
            obj.insert(
                "witness".to_string(),
                json!(actual.witness().map(Point::to_string)),
            );
            obj.insert("contains_advertised".to_string(), json!(contains));
        }
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        println!("family: {family}");
        println!("params: {fp}");
        println!("quadruple: {}", rat_strings(elems).join(", "));
        println!("advertised torsion: {advertised}");
        if let Some((actual, contains)) = &checked {
            println!(
                "classified torsion: {actual} (contains advertised: {})",
                if *contains { "yes" } else { "no" }
            );
        }
    }
    Ok(())
}

/// Height bound of the witness search reported in every sweep row.
const SWEEP_WITNESS_BOUND: u64 = 20;

pub enum SweepFormat {
    Human,
    Json,
    Csv,
}

pub fn sweep(
    name: &str,
    params: &str,
    c_mode: &str,
    sieve_n: u64,
    top: usize,
    jobs: usize,
    format: SweepFormat,
) -> Result<(), CmdError> {
    if sieve_n < 2 {
        return Err(CmdError::Usage("--sieve-N must be at least 2".to_string()));
    }
    let family: FamilyName = name.parse().map_err(usage)?;
    let mode: CMode = c_mode.parse().map_err(usage)?;
    let axes = parse_param_grid(params).map_err(usage)?;
    let cfg = SweepConfig {
        family,
        c_mode: mode,
        axes,
        sieve_n,
        witness_bound: SWEEP_WITNESS_BOUND,
        top,
        jobs,
    };
    let report = run_sweep(&cfg).map_err(usage)?;
    match format {
        SweepFormat::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            );
        }
        SweepFormat::Csv => {
            print!("{}", report.to_csv());
        }
        SweepFormat::Human => {
            println!("family: {} (mode {})", report.family, report.c_mode);
            println!(
                "sieve N: {}, witness bound: {}, precision: {}",
                report.sieve_n, report.witness_bound, report.precision
            );
            println!(
                "evaluated: {} grid points, {} degenerate",
                report.evaluated, report.skipped_degenerate
            );
            if report.rows.is_empty() {
                println!("no nondegenerate points to rank");
            } else {
                println!(
                    "{:<5} {:<18} {:<6} {:<11} {:<10} params",
                    "rank", "score", "bound", "incomplete", "witnesses"
                );
                for (i, row) in report.rows.iter().enumerate() {
                    let params: Vec<String> = row
                        .params
                        .iter()
                        .map(|(n, v)| format!("{n}={v}"))
                        .collect();
                    println!(
                        "{:<5} {:<18} {:<6} {:<11} {:<10} {}",
                        i + 1,
                        row.score,
                        row.trivial_bound,
                        row.bound_incomplete,
                        row.witnesses,
                        params.join(", ")
                    );
                }
            }
        }
    }
    Ok(())
}

pub fn extend(tuple: &str, depth: i64, json_mode: bool) -> Result<(), CmdError> {
    if depth < 0 {
        return Err(CmdError::Usage("--depth must be nonnegative".to_string()));
    }
    let bundle = input_bundle(tuple)?;
    let c = bundle.curve();
    let q_multiples: Vec<Point> = (-depth..=depth)
        .map(|n| c.mul(n, bundle.point_q()))
        .collect();
    let mut combos = Vec::new();
    let mut points = Vec::new();
    for m in -depth..=depth {
        let mp = c.mul(m, bundle.point_p());
        for (n, nq) in (-depth..=depth).zip(&q_multiples) {
            combos.push((m, n));
            points.push(c.add(&mp, nq));
        }
    }
    let candidates = bundle.quintuple_candidates(&points);

    let mut extensions: Vec<String> = Vec::new();
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for (((m, n), point), candidate) in combos.iter().zip(&points).zip(&candidates) {
        match candidate {
            Some(cand) => {
                let x = cand.x.to_string();
                if cand.is_extension && !extensions.contains(&x) {
                    extensions.push(x.clone());
                }
                lines.push(format!(
                    "m={m} n={n}: X = {x} squares={:?} extension={}",
                    cand.square_conditions,
                    if cand.is_extension { "yes" } else { "no" }
                ));
                rows.push(json!({
                    "m": m,
                    "n": n,
                    "point": point.to_string(),
                    "x": x,
                    "squares": cand.square_conditions,
                    "is_extension": cand.is_extension,
                }));
            }
            None => {
                lines.push(format!("m={m} n={n}: no candidate (inverse undefined)"));
                rows.push(json!({
                    "m": m,
                    "n": n,
                    "point": point.to_string(),
                    "x": null,
                }));
            }
        }
    }

    if json_mode {
        let doc = json!({
            "tuple": rat_strings(bundle.elements()),
            "depth": depth,
            "candidates": rows,
            "extensions": extensions,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        println!(
            "searching m*P + n*Q for |m|, |n| <= {depth} ({} points)",
            lines.len()
        );
        for line in &lines {
            println!("{line}");
        }
        println!("extensions found: {}", extensions.len());
        for x in &extensions {
            println!("  X = {x}");
        }
    }
    Ok(())
}
