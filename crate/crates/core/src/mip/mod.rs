//! Solver-independent linear models for the WSP and two related models,
//! with validation of candidate assignments and LP/MPS export.

pub mod export;
pub mod related;
pub mod wsp;

pub use export::{export_model, ModelFormat};
pub use related::{build_hof_model, build_wei_model, AuxData};
pub use wsp::{allocation_to_assignment, allocation_values, build_wsp_model, WspNames};

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WspError};

/// Tolerance used when checking constraints, bounds and integrality.
pub const FEASIBILITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarKind {
    Continuous,
    Binary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub name: String,
    /// `(variable index, coefficient)`, zero coefficients removed.
    pub terms: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ObjectiveSense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearModel {
    pub name: String,
    variables: Vec<Variable>,
    constraints: Vec<Constraint>,
    pub objective_sense: ObjectiveSense,
    objective: Vec<(usize, f64)>,
    /// Free-form notes carried into exported files as comments.
    pub notes: BTreeMap<String, String>,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl LinearModel {
    pub fn new(name: impl Into<String>, sense: ObjectiveSense) -> Self {
        LinearModel {
            name: name.into(),
            variables: Vec::new(),
            constraints: Vec::new(),
            objective_sense: sense,
            objective: Vec::new(),
            notes: BTreeMap::new(),
            index: HashMap::new(),
        }
    }

    pub fn add_variable(&mut self, name: impl Into<String>, kind: VarKind, lower: f64, upper: f64) -> Result<usize> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(WspError::structural(format!("duplicate variable {name}")));
        }
        if lower.is_nan() || upper.is_nan() || lower > upper {
            return Err(WspError::structural(format!("invalid bounds [{lower}, {upper}] for {name}")));
        }
        let id = self.variables.len();
        self.index.insert(name.clone(), id);
        self.variables.push(Variable { name, kind, lower, upper });
        Ok(id)
    }

    pub fn add_constraint(
        &mut self,
        name: impl Into<String>,
        terms: impl IntoIterator<Item = (usize, f64)>,
        sense: Sense,
        rhs: f64,
    ) -> Result<usize> {
        let name = name.into();
        let terms = self.clean_terms(&name, terms)?;
        if !rhs.is_finite() {
            return Err(WspError::structural(format!("right-hand side of {name} is not finite")));
        }
        self.constraints.push(Constraint { name, terms, sense, rhs });
        Ok(self.constraints.len() - 1)
    }

    pub fn set_objective(&mut self, terms: impl IntoIterator<Item = (usize, f64)>) -> Result<()> {
        self.objective = self.clean_terms("objective", terms)?;
        Ok(())
    }

    /// Merges repeated variables, drops zero coefficients and checks indices.
    fn clean_terms(&self, owner: &str, terms: impl IntoIterator<Item = (usize, f64)>) -> Result<Vec<(usize, f64)>> {
        let mut out: Vec<(usize, f64)> = Vec::new();
        for (var, coef) in terms {
            if var >= self.variables.len() {
                return Err(WspError::structural(format!("{owner} references undeclared variable {var}")));
            }
            if !coef.is_finite() {
                return Err(WspError::structural(format!("{owner} has a non-finite coefficient")));
            }
            match out.iter_mut().find(|(v, _)| *v == var) {
                Some(t) => t.1 += coef,
                None => out.push((var, coef)),
            }
        }
        out.retain(|&(_, c)| c != 0.0);
        Ok(out)
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> &[(usize, f64)] {
        &self.objective
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn count_variables(&self, kind: VarKind) -> usize {
        self.variables.iter().filter(|v| v.kind == kind).count()
    }

    fn values(&self, assignment: &Assignment) -> Result<Vec<f64>> {
        self.variables
            .iter()
            .map(|v| {
                assignment
                    .get(&v.name)
                    .ok_or_else(|| WspError::structural(format!("assignment has no value for {}", v.name)))
            })
            .collect()
    }

    pub fn objective_value(&self, assignment: &Assignment) -> Result<f64> {
        let x = self.values(assignment)?;
        Ok(self.objective.iter().map(|&(v, c)| c * x[v]).sum())
    }
}

/// Variable values keyed by name.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment {
    values: BTreeMap<String, f64>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: impl Into<String>, value: f64) {
        self.values.insert(name.into(), value);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ViolationKind {
    Constraint,
    Bound,
    Integrality,
}

/// One violated row, bound or integrality requirement. `residual` is the
/// amount by which it is violated (always positive).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelViolation {
    pub name: String,
    pub kind: ViolationKind,
    pub residual: f64,
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} {} violated by {:.3e}", self.kind, self.name, self.residual)
    }
}

/// Signed slack `lhs - rhs` of every constraint, in declaration order.
pub fn constraint_activity(model: &LinearModel, assignment: &Assignment) -> Result<Vec<f64>> {
    let x = model.values(assignment)?;
    Ok(model
        .constraints
        .iter()
        .map(|c| c.terms.iter().map(|&(v, a)| a * x[v]).sum::<f64>() - c.rhs)
        .collect())
}

/// Every constraint, bound and integrality requirement the assignment
/// violates by more than `FEASIBILITY_TOL`.
pub fn validate_assignment(model: &LinearModel, assignment: &Assignment) -> Result<Vec<ModelViolation>> {
    let x = model.values(assignment)?;
    let mut out = Vec::new();
    for (c, diff) in model.constraints.iter().zip(constraint_activity(model, assignment)?) {
        let residual = match c.sense {
            Sense::Le => diff,
            Sense::Ge => -diff,
            Sense::Eq => diff.abs(),
        };
        if residual > FEASIBILITY_TOL {
            out.push(ModelViolation { name: c.name.clone(), kind: ViolationKind::Constraint, residual });
        }
    }
    for (v, &value) in model.variables.iter().zip(&x) {
        let residual = (v.lower - value).max(value - v.upper);
        if residual > FEASIBILITY_TOL || value.is_nan() {
            out.push(ModelViolation { name: v.name.clone(), kind: ViolationKind::Bound, residual });
        }
        if v.kind == VarKind::Binary {
            let frac = (value - value.round()).abs();
            if frac > FEASIBILITY_TOL {
                out.push(ModelViolation { name: v.name.clone(), kind: ViolationKind::Integrality, residual: frac });
            }
        }
    }
    Ok(out)
}

/// Zero-padded decimal of `i` with room for `max`.
pub(crate) fn padded(i: usize, max: usize) -> String {
    let width = max.max(1).to_string().len();
    format!("{i:0width$}")
}
