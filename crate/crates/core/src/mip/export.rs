//! CPLEX LP and free-format MPS writers.
//!
//! Names are made format-legal by replacing anything outside
//! `[A-Za-z0-9_.]` with `_` and prefixing `x_` when the result would start
//! with a digit or a period; clashes get a `__2`, `__3`, ... suffix.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{LinearModel, ObjectiveSense, Sense, VarKind};
use crate::error::{Result, WspError};

const MAX_NAME_LEN: usize = 255;
const TERMS_PER_LINE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelFormat {
    Lp,
    Mps,
}

impl FromStr for ModelFormat {
    type Err = WspError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lp" => Ok(ModelFormat::Lp),
            "mps" => Ok(ModelFormat::Mps),
            other => Err(WspError::domain(format!("unknown model format {other:?}"))),
        }
    }
}

pub fn sanitize_name(raw: &str) -> String {
    let mut s: String =
        raw.chars().map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '.' { c } else { '_' }).collect();
    if s.is_empty() || s.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
        s.insert_str(0, "x_");
    }
    s
}

fn sanitize_all<'a>(names: impl Iterator<Item = &'a str>, reserved: &[&str]) -> Result<Vec<String>> {
    let mut used: HashSet<String> = reserved.iter().map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    for raw in names {
        let base = sanitize_name(raw);
        let mut name = base.clone();
        let mut k = 2;
        while used.contains(&name) {
            name = format!("{base}__{k}");
            k += 1;
        }
        if name.len() > MAX_NAME_LEN {
            return Err(WspError::structural(format!("name {name:?} exceeds {MAX_NAME_LEN} characters")));
        }
        used.insert(name.clone());
        out.push(name);
    }
    Ok(out)
}

struct Names {
    vars: Vec<String>,
    rows: Vec<String>,
}

fn names(model: &LinearModel) -> Result<Names> {
    Ok(Names {
        vars: sanitize_all(model.variables().iter().map(|v| v.name.as_str()), &[])?,
        rows: sanitize_all(model.constraints().iter().map(|c| c.name.as_str()), &["obj"])?,
    })
}

fn num(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x}")
    }
}

pub fn export_model(model: &LinearModel, format: ModelFormat) -> Result<String> {
    match format {
        ModelFormat::Lp => to_lp(model),
        ModelFormat::Mps => to_mps(model),
    }
}

fn lp_terms(out: &mut String, terms: &[(usize, f64)], names: &[String]) {
    if terms.is_empty() {
        // An empty row still needs a variable to be well-formed.
        write!(out, " 0 {}", names[0]).unwrap();
        return;
    }
    for (k, &(v, c)) in terms.iter().enumerate() {
        if k > 0 && k % TERMS_PER_LINE == 0 {
            out.push_str("\n  ");
        }
        let sign = if c < 0.0 { '-' } else { '+' };
        let a = c.abs();
        if a == 1.0 {
            write!(out, " {sign} {}", names[v]).unwrap();
        } else {
            write!(out, " {sign} {} {}", num(a), names[v]).unwrap();
        }
    }
}

pub fn to_lp(model: &LinearModel) -> Result<String> {
    if model.variables().is_empty() {
        return Err(WspError::structural("model has no variables"));
    }
    let n = names(model)?;
    let mut out = String::new();
    writeln!(out, "\\ Model {}", sanitize_name(&model.name)).unwrap();
    for (k, v) in &model.notes {
        writeln!(out, "\\ {k}: {v}").unwrap();
    }
    out.push_str(match model.objective_sense {
        ObjectiveSense::Minimize => "Minimize\n",
        ObjectiveSense::Maximize => "Maximize\n",
    });
    out.push_str(" obj:");
    lp_terms(&mut out, model.objective(), &n.vars);
    out.push_str("\nSubject To\n");
    for (c, name) in model.constraints().iter().zip(&n.rows) {
        write!(out, " {name}:").unwrap();
        lp_terms(&mut out, &c.terms, &n.vars);
        writeln!(out, " {} {}", c.sense.symbol(), num(c.rhs)).unwrap();
    }
    out.push_str("Bounds\n");
    for (v, name) in model.variables().iter().zip(&n.vars) {
        if v.kind == VarKind::Binary && v.lower == 0.0 && v.upper == 1.0 {
            continue;
        }
        match (v.lower, v.upper) {
            (l, u) if l == u => writeln!(out, " {name} = {}", num(l)).unwrap(),
            (l, u) if l == f64::NEG_INFINITY && u == f64::INFINITY => writeln!(out, " {name} free").unwrap(),
            (l, u) if l == 0.0 && u == f64::INFINITY => {}
            (l, u) => writeln!(out, " {} <= {name} <= {}", num(l), num(u)).unwrap(),
        }
    }
    let binaries: Vec<&String> =
        model.variables().iter().zip(&n.vars).filter(|(v, _)| v.kind == VarKind::Binary).map(|(_, s)| s).collect();
    if !binaries.is_empty() {
        out.push_str("Binaries\n");
        for chunk in binaries.chunks(TERMS_PER_LINE) {
            let line: Vec<&str> = chunk.iter().map(|s| s.as_str()).collect();
            writeln!(out, " {}", line.join(" ")).unwrap();
        }
    }
    out.push_str("End\n");
    Ok(out)
}

pub fn to_mps(model: &LinearModel) -> Result<String> {
    let n = names(model)?;
    let mut out = String::new();
    writeln!(out, "NAME {}", sanitize_name(&model.name)).unwrap();
    if model.objective_sense == ObjectiveSense::Maximize {
        out.push_str("OBJSENSE\n    MAX\n");
    }
    out.push_str("ROWS\n N obj\n");
    for (c, name) in model.constraints().iter().zip(&n.rows) {
        let tag = match c.sense {
            Sense::Le => 'L',
            Sense::Ge => 'G',
            Sense::Eq => 'E',
        };
        writeln!(out, " {tag} {name}").unwrap();
    }
    // Column-major view of the coefficient matrix.
    let mut columns: Vec<Vec<(&str, f64)>> = vec![Vec::new(); model.variables().len()];
    for &(v, c) in model.objective() {
        columns[v].push(("obj", c));
    }
    for (c, name) in model.constraints().iter().zip(&n.rows) {
        for &(v, a) in &c.terms {
            columns[v].push((name, a));
        }
    }
    out.push_str("COLUMNS\n");
    for (col, name) in columns.iter().zip(&n.vars) {
        if col.is_empty() {
            writeln!(out, " {name} obj 0").unwrap();
        }
        for (row, a) in col {
            writeln!(out, " {name} {row} {}", num(*a)).unwrap();
        }
    }
    out.push_str("RHS\n");
    for (c, name) in model.constraints().iter().zip(&n.rows) {
        if c.rhs != 0.0 {
            writeln!(out, " RHS {name} {}", num(c.rhs)).unwrap();
        }
    }
    out.push_str("BOUNDS\n");
    for (v, name) in model.variables().iter().zip(&n.vars) {
        if v.kind == VarKind::Binary && v.lower == 0.0 && v.upper == 1.0 {
            writeln!(out, " BV BND {name}").unwrap();
            continue;
        }
        if v.lower == v.upper {
            writeln!(out, " FX BND {name} {}", num(v.lower)).unwrap();
            continue;
        }
        if v.lower == f64::NEG_INFINITY {
            writeln!(out, " MI BND {name}").unwrap();
        } else if v.lower != 0.0 {
            writeln!(out, " LO BND {name} {}", num(v.lower)).unwrap();
        }
        if v.upper != f64::INFINITY {
            writeln!(out, " UP BND {name} {}", num(v.upper)).unwrap();
        }
    }
    out.push_str("ENDATA\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sanitizing() {
        assert_eq!(sanitize_name("a_01"), "a_01");
        assert_eq!(sanitize_name("spread 1-2"), "spread_1_2");
        assert_eq!(sanitize_name("3x"), "x_3x");
        assert_eq!(sanitize_name(""), "x_");
        let v = sanitize_all(["a b", "a_b", "a-b", "obj"].into_iter(), &["obj"]).unwrap();
        assert_eq!(v, vec!["a_b", "a_b__2", "a_b__3", "obj__2"]);
        assert!(sanitize_all(std::iter::once("z".repeat(300).as_str()), &[]).is_err());
    }

    #[test]
    fn numbers() {
        assert_eq!(num(3.0), "3");
        assert_eq!(num(0.25), "0.25");
        assert_eq!(num(f64::INFINITY), "inf");
    }

    #[test]
    fn format_parsing() {
        assert_eq!("LP".parse::<ModelFormat>().unwrap(), ModelFormat::Lp);
        assert!("xls".parse::<ModelFormat>().is_err());
    }
}
