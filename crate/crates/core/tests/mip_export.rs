//! LP/MPS output checked by small independent readers and a golden snapshot.

use std::collections::BTreeMap;
use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use wsp_core::mip::{build_hof_model, build_wei_model, build_wsp_model, export_model, LinearModel, ModelFormat, ObjectiveSense, Sense, VarKind};
use wsp_core::sampling::random_grid_instance;
use wsp_core::{DirectedGraph, Release, WspInstance};

/// Format-neutral view: names -> data, terms as sorted maps.
#[derive(Debug, PartialEq)]
struct Parsed {
    maximize: bool,
    objective: BTreeMap<String, f64>,
    rows: BTreeMap<String, (BTreeMap<String, f64>, &'static str, f64)>,
    bounds: BTreeMap<String, (f64, f64)>,
    binaries: Vec<String>,
}

fn from_model(m: &LinearModel) -> Parsed {
    let name = |i: usize| m.variables()[i].name.clone();
    let terms = |t: &[(usize, f64)]| t.iter().map(|&(i, c)| (name(i), c)).collect::<BTreeMap<_, _>>();
    let mut binaries: Vec<String> =
        m.variables().iter().filter(|v| v.kind == VarKind::Binary).map(|v| v.name.clone()).collect();
    binaries.sort();
    Parsed {
        maximize: m.objective_sense == ObjectiveSense::Maximize,
        objective: terms(m.objective()),
        rows: m
            .constraints()
            .iter()
            .map(|c| {
                let s = match c.sense {
                    Sense::Le => "<=",
                    Sense::Ge => ">=",
                    Sense::Eq => "=",
                };
                (c.name.clone(), (terms(&c.terms), s, c.rhs))
            })
            .collect(),
        bounds: m.variables().iter().map(|v| (v.name.clone(), (v.lower, v.upper))).collect(),
        binaries,
    }
}

fn parse_num(s: &str) -> f64 {
    match s {
        "inf" | "+inf" | "infinity" => f64::INFINITY,
        "-inf" | "-infinity" => f64::NEG_INFINITY,
        _ => s.parse().unwrap_or_else(|_| panic!("bad number {s:?}")),
    }
}

/// Reads `[+|-] [coef] name ...` sequences.
fn lp_expr(tokens: &[&str]) -> BTreeMap<String, f64> {
    let mut out = BTreeMap::new();
    let mut sign = 1.0;
    let mut coef = None;
    for &t in tokens {
        match t {
            "+" => sign = 1.0,
            "-" => sign = -1.0,
            _ if t.parse::<f64>().is_ok() => coef = Some(t.parse::<f64>().unwrap()),
            name => {
                let c = sign * coef.take().unwrap_or(1.0);
                if c != 0.0 {
                    *out.entry(name.to_string()).or_insert(0.0) += c;
                }
                sign = 1.0;
            }
        }
    }
    out
}

fn parse_lp(text: &str) -> Parsed {
    // Join continuation lines (leading whitespace beyond one space).
    let mut lines: Vec<String> = Vec::new();
    for raw in text.lines().filter(|l| !l.starts_with('\\')) {
        if raw.starts_with("  ") {
            lines.last_mut().unwrap().push_str(raw);
        } else {
            lines.push(raw.to_string());
        }
    }
    let mut p = Parsed {
        maximize: false,
        objective: BTreeMap::new(),
        rows: BTreeMap::new(),
        bounds: BTreeMap::new(),
        binaries: Vec::new(),
    };
    let mut section = "";
    for line in &lines {
        let t = line.trim();
        match t {
            "Minimize" | "Maximize" | "Subject To" | "Bounds" | "Binaries" | "End" => {
                section = t;
                p.maximize |= t == "Maximize";
                continue;
            }
            _ => {}
        }
        let tokens: Vec<&str> = t.split_whitespace().collect();
        match section {
            "Minimize" | "Maximize" => p.objective = lp_expr(&tokens[1..]),
            "Subject To" => {
                let label = tokens[0].trim_end_matches(':').to_string();
                let k = tokens.iter().position(|x| ["<=", ">=", "="].contains(x)).unwrap();
                let sense = match tokens[k] {
                    "<=" => "<=",
                    ">=" => ">=",
                    _ => "=",
                };
                p.rows.insert(label, (lp_expr(&tokens[1..k]), sense, parse_num(tokens[k + 1])));
            }
            "Bounds" => match tokens.as_slice() {
                [l, "<=", v, "<=", u] => {
                    p.bounds.insert(v.to_string(), (parse_num(l), parse_num(u)));
                }
                [v, "=", x] => {
                    p.bounds.insert(v.to_string(), (parse_num(x), parse_num(x)));
                }
                [v, "free"] => {
                    p.bounds.insert(v.to_string(), (f64::NEG_INFINITY, f64::INFINITY));
                }
                other => panic!("unexpected bound {other:?}"),
            },
            "Binaries" => p.binaries.extend(tokens.iter().map(|s| s.to_string())),
            _ => panic!("text outside a section: {t}"),
        }
    }
    p
}

fn parse_mps(text: &str) -> Parsed {
    let mut p = Parsed {
        maximize: false,
        objective: BTreeMap::new(),
        rows: BTreeMap::new(),
        bounds: BTreeMap::new(),
        binaries: Vec::new(),
    };
    let mut section = "";
    let mut declared: Vec<String> = Vec::new();
    for line in text.lines() {
        if !line.starts_with(' ') {
            section = line.split_whitespace().next().unwrap();
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        match section {
            "OBJSENSE" => p.maximize = f[0] == "MAX",
            "ROWS" => {
                if f[0] != "N" {
                    let s = match f[0] {
                        "L" => "<=",
                        "G" => ">=",
                        _ => "=",
                    };
                    p.rows.insert(f[1].to_string(), (BTreeMap::new(), s, 0.0));
                }
            }
            "COLUMNS" => {
                if !declared.iter().any(|d| d == f[0]) {
                    declared.push(f[0].to_string());
                }
                for pair in f[1..].chunks(2) {
                    let a = parse_num(pair[1]);
                    if a == 0.0 {
                        continue;
                    }
                    if pair[0] == "obj" {
                        p.objective.insert(f[0].to_string(), a);
                    } else {
                        p.rows.get_mut(pair[0]).unwrap().0.insert(f[0].to_string(), a);
                    }
                }
            }
            "RHS" => p.rows.get_mut(f[1]).unwrap().2 = parse_num(f[2]),
            "BOUNDS" => {
                let b = p.bounds.entry(f[2].to_string()).or_insert((0.0, f64::INFINITY));
                match f[0] {
                    "UP" => b.1 = parse_num(f[3]),
                    "LO" => b.0 = parse_num(f[3]),
                    "FX" => *b = (parse_num(f[3]), parse_num(f[3])),
                    "MI" => b.0 = f64::NEG_INFINITY,
                    "BV" => {
                        *b = (0.0, 1.0);
                        p.binaries.push(f[2].to_string());
                    }
                    other => panic!("bound type {other}"),
                }
            }
            _ => panic!("unexpected section {section}"),
        }
    }
    for d in declared {
        p.bounds.entry(d).or_insert((0.0, f64::INFINITY));
    }
    p
}

/// LP leaves default bounds implicit; fill them in to compare.
fn with_default_bounds(mut p: Parsed, m: &LinearModel) -> Parsed {
    for v in m.variables() {
        let default = if v.kind == VarKind::Binary { (0.0, 1.0) } else { (0.0, f64::INFINITY) };
        p.bounds.entry(v.name.clone()).or_insert(default);
    }
    p.binaries.sort();
    p
}

fn two_by_two() -> WspInstance {
    let g = DirectedGraph::new(
        4,
        [(0, 1, 2.0), (1, 0, 3.0), (0, 2, 4.0), (2, 0, 1.0), (1, 3, 2.0), (3, 1, 2.0), (2, 3, 5.0), (3, 2, 1.0)],
    )
    .unwrap();
    WspInstance::new(g, 0, 6.0, 3.0, vec![Release { time: 1.0, count: 1 }], Value::Null).unwrap()
}

fn models() -> Vec<LinearModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut out = vec![build_wsp_model(&two_by_two()).unwrap()];
    for _ in 0..4 {
        let inst = random_grid_instance(&mut rng, 4, 3, 2);
        out.push(build_wsp_model(&inst).unwrap());
        let n = inst.vertex_count();
        let w: Vec<f64> = (0..n).map(|v| (v % 3) as f64 + 0.5).collect();
        let flame: Vec<f64> = (0..n).map(|v| (v % 4) as f64).collect();
        out.push(build_wei_model(&inst, &w, &flame, Some(2.0), 2).unwrap());
        let alpha = vec![2.0; n];
        let beta: Vec<f64> = (0..n).map(|v| 1.0 + (v % 5) as f64).collect();
        out.push(build_hof_model(inst.graph(), inst.ignition(), &[0, n - 1], &alpha, &beta, 1.5, false).unwrap());
        out.push(build_hof_model(inst.graph(), inst.ignition(), &[0], &alpha, &beta, 2.0, true).unwrap());
    }
    out
}

#[test]
fn lp_round_trip() {
    for m in models() {
        let text = export_model(&m, ModelFormat::Lp).unwrap();
        assert_eq!(with_default_bounds(parse_lp(&text), &m), from_model(&m), "{}", m.name);
    }
}

#[test]
fn mps_round_trip() {
    for m in models() {
        let text = export_model(&m, ModelFormat::Mps).unwrap();
        assert_eq!(with_default_bounds(parse_mps(&text), &m), from_model(&m), "{}", m.name);
    }
}

#[test]
fn export_is_deterministic_and_counts_rows() {
    for m in models() {
        let a = export_model(&m, ModelFormat::Lp).unwrap();
        assert_eq!(a, export_model(&m, ModelFormat::Lp).unwrap());
        let rows = a
            .split("Subject To\n")
            .nth(1)
            .unwrap()
            .split("Bounds\n")
            .next()
            .unwrap()
            .lines()
            .filter(|l| !l.starts_with("  "))
            .count();
        assert_eq!(rows, m.constraints().len());
        let mps = export_model(&m, ModelFormat::Mps).unwrap();
        let rows = mps.split("ROWS\n").nth(1).unwrap().split("COLUMNS\n").next().unwrap().lines().count();
        assert_eq!(rows, m.constraints().len() + 1);
    }
}

#[test]
fn golden_two_by_two() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let m = build_wsp_model(&two_by_two()).unwrap();
    for (format, file) in [(ModelFormat::Lp, "wsp_2x2_t1.lp"), (ModelFormat::Mps, "wsp_2x2_t1.mps")] {
        let text = export_model(&m, format).unwrap();
        let path = dir.join(file);
        if std::env::var_os("WSP_UPDATE_GOLDEN").is_some() {
            std::fs::write(&path, &text).unwrap();
        }
        let expected = std::fs::read_to_string(&path).expect("golden file present");
        assert_eq!(text, expected, "{file} drifted; rerun with WSP_UPDATE_GOLDEN=1 after review");
    }
}
