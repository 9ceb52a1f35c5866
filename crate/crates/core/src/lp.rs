//! Exact rational feasibility solver.
//!
//! [`solve_feasibility`] runs a phase-I simplex with Bland's rule over
//! canonical rationals. A feasible system yields an exact point; an
//! infeasible one yields Farkas multipliers, one per row followed by one per
//! nonnegativity bound, whose combination reads `0 >= positive`.
//! [`verify_certificate`] re-checks either kind without touching the solver.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::ratpoly::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    /// `coeffs · x = rhs`
    Eq,
    /// `coeffs · x >= rhs`
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    num_vars: usize,
    rows: Vec<Row>,
    nonneg: BTreeSet<usize>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            rows: Vec::new(),
            nonneg: BTreeSet::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Variables constrained `>= 0`, in increasing order.
    pub fn nonneg_vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.nonneg.iter().copied()
    }

    pub fn num_nonneg(&self) -> usize {
        self.nonneg.len()
    }

    pub fn is_nonneg(&self, var: usize) -> bool {
        self.nonneg.contains(&var)
    }

    pub fn set_nonneg(&mut self, var: usize) -> Result<()> {
        if var >= self.num_vars {
            return Err(Error::Dimension(format!(
                "variable {var} out of range for {} variables",
                self.num_vars
            )));
        }
        self.nonneg.insert(var);
        Ok(())
    }

    pub fn add_row(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Result<()> {
        if coeffs.len() != self.num_vars {
            return Err(Error::Dimension(format!(
                "row has {} coefficients, expected {}",
                coeffs.len(),
                self.num_vars
            )));
        }
        self.rows.push(Row {
            coeffs,
            relation,
            rhs,
        });
        Ok(())
    }

    /// Canonical text form; the certificate hash is taken over this.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "qlp-lp v1");
        let _ = writeln!(out, "vars {}", self.num_vars);
        let _ = write!(out, "nonneg");
        for v in &self.nonneg {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
        for row in &self.rows {
            let rel = match row.relation {
                Relation::Eq => "eq",
                Relation::Ge => "ge",
            };
            let _ = write!(out, "row {rel}");
            for c in &row.coeffs {
                let _ = write!(out, " {c}");
            }
            let _ = writeln!(out, " rhs {}", row.rhs);
        }
        out
    }

    pub fn hash_hex(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_text().as_bytes()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Feasible { point: Vec<Rational> },
    /// Multipliers for each row, then for each nonnegativity bound in
    /// increasing variable order.
    Infeasible { dual: Vec<Rational> },
}

impl Certificate {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Certificate::Feasible { .. })
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            Certificate::Feasible { point } => Some(point),
            Certificate::Infeasible { .. } => None,
        }
    }

    pub fn to_json(&self, lp: &LinearProgram) -> String {
        let file = match self {
            Certificate::Feasible { point } => CertificateJson {
                status: Status::Feasible,
                point: Some(point.clone()),
                dual: None,
                lp_hash: lp.hash_hex(),
            },
            Certificate::Infeasible { dual } => CertificateJson {
                status: Status::Infeasible,
                point: None,
                dual: Some(dual.clone()),
                lp_hash: lp.hash_hex(),
            },
        };
        serde_json::to_string(&file).expect("certificate serialization cannot fail")
    }

    /// Parses certificate JSON, returning the certificate and its `lp_hash`.
    pub fn from_json(text: &str) -> Result<(Certificate, String)> {
        let file: CertificateJson = serde_json::from_str(text)?;
        let cert = match (file.status, file.point, file.dual) {
            (Status::Feasible, Some(point), None) => Certificate::Feasible { point },
            (Status::Infeasible, None, Some(dual)) => Certificate::Infeasible { dual },
            _ => {
                return Err(Error::Parse(
                    "certificate needs exactly one of \"point\" (feasible) or \"dual\" (infeasible)"
                        .into(),
                ))
            }
        };
        Ok((cert, file.lp_hash))
    }
}

#[derive(Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Feasible,
    Infeasible,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    point: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dual: Option<Vec<Rational>>,
    lp_hash: String,
}

/// Exact check of `cert` against `lp`.
pub fn verify_certificate(lp: &LinearProgram, cert: &Certificate) -> Result<bool> {
    match cert {
        Certificate::Feasible { point } => {
            if point.len() != lp.num_vars {
                return Err(Error::Dimension(format!(
                    "point has {} entries, lp has {} variables",
                    point.len(),
                    lp.num_vars
                )));
            }
            if lp.nonneg.iter().any(|&v| point[v].is_negative()) {
                return Ok(false);
            }
            Ok(lp.rows.iter().all(|row| {
                let lhs: Rational = row
                    .coeffs
                    .iter()
                    .zip(point)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, x)| c * x)
                    .sum();
                match row.relation {
                    Relation::Eq => lhs == row.rhs,
                    Relation::Ge => lhs >= row.rhs,
                }
            }))
        }
        Certificate::Infeasible { dual } => {
            let expected = lp.rows.len() + lp.nonneg.len();
            if dual.len() != expected {
                return Err(Error::Dimension(format!(
                    "dual has {} entries, expected {} ({} rows + {} bounds)",
                    dual.len(),
                    expected,
                    lp.rows.len(),
                    lp.nonneg.len()
                )));
            }
            let (row_mult, bound_mult) = dual.split_at(lp.rows.len());
            for (row, y) in lp.rows.iter().zip(row_mult) {
                if row.relation == Relation::Ge && y.is_negative() {
                    return Ok(false);
                }
            }
            if bound_mult.iter().any(Rational::is_negative) {
                return Ok(false);
            }
            let mut combined = vec![Rational::zero(); lp.num_vars];
            let mut rhs = Rational::zero();
            for (row, y) in lp.rows.iter().zip(row_mult) {
                if y.is_zero() {
                    continue;
                }
                for (acc, c) in combined.iter_mut().zip(&row.coeffs) {
                    if !c.is_zero() {
                        *acc += y * c;
                    }
                }
                rhs += y * &row.rhs;
            }
            for (&v, z) in lp.nonneg.iter().zip(bound_mult) {
                combined[v] += z;
            }
            Ok(combined.iter().all(Rational::is_zero) && rhs.is_positive())
        }
    }
}

/// Dense phase-I tableau. Structural columns come first; free ones may enter
/// in either direction and never leave the basis once in it.
struct Tableau {
    /// `rows x (cols + 1)`; the last entry of each row is its right-hand side.
    body: Vec<Vec<Rational>>,
    /// reduced costs followed by `-w`, where `w` is the artificial sum
    cost: Vec<Rational>,
    basis: Vec<usize>,
    free: Vec<bool>,
    /// free columns currently standing for `-x` instead of `x`
    negated: Vec<bool>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, prow: usize, pcol: usize) {
        let cols = self.cols;
        let inv = self.body[prow][pcol].recip().expect("pivot element is nonzero");
        let pivot_row: Vec<Rational> = self.body[prow]
            .iter()
            .map(|v| if v.is_zero() { Rational::zero() } else { v * &inv })
            .collect();
        let nz: Vec<usize> = (0..=cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[pcol].clone();
            if f.is_zero() {
                return;
            }
            for &j in &nz {
                row[j] -= &f * &pivot_row[j];
            }
        };
        for (r, row) in self.body.iter_mut().enumerate() {
            if r != prow {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.body[prow] = pivot_row;
        self.basis[prow] = pcol;
    }

    fn negate_column(&mut self, j: usize) {
        for row in self.body.iter_mut().chain(std::iter::once(&mut self.cost)) {
            if !row[j].is_zero() {
                row[j] = -&row[j];
            }
        }
        self.negated[j] = !self.negated[j];
    }

    fn rhs(&self, r: usize) -> &Rational {
        &self.body[r][self.cols]
    }

    /// Bland's rule: the lowest-index improving column enters and ties in the
    /// ratio test go to the lowest-index basic variable.
    fn run(&mut self) {
        loop {
            let entering = (0..self.cols).find(|&j| {
                self.cost[j].is_negative() || (self.free[j] && self.cost[j].is_positive())
            });
            let Some(e) = entering else { return };
            if self.cost[e].is_positive() {
                self.negate_column(e);
            }
            let mut best: Option<(usize, Rational)> = None;
            for r in 0..self.body.len() {
                let a = &self.body[r][e];
                if !a.is_positive() || self.free[self.basis[r]] {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &best {
                    None => true,
                    Some((br, bratio)) => {
                        ratio < *bratio || (ratio == *bratio && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            // The phase-I objective is bounded below by zero, so some row
            // always limits the step.
            let (prow, _) = best.expect("phase-I objective is bounded");
            self.pivot(prow, e);
        }
    }
}

/// Decides feasibility of `lp` exactly.
pub fn solve_feasibility(lp: &LinearProgram) -> Certificate {
    let n = lp.num_vars;
    let m = lp.rows.len();

    // columns: x_0..x_{n-1}, then one surplus per `Ge` row, then artificials
    let mut cols = n;
    let mut surplus_col: Vec<Option<usize>> = vec![None; m];
    for (r, row) in lp.rows.iter().enumerate() {
        if row.relation == Relation::Ge {
            surplus_col[r] = Some(cols);
            cols += 1;
        }
    }
    // Every row gets an identity column: its surplus when that enters with
    // +1 after normalizing rhs >= 0, else an artificial.
    let mut flipped = vec![false; m];
    let mut identity_col = vec![0usize; m];
    let mut artificial = vec![false; m];
    for (r, row) in lp.rows.iter().enumerate() {
        match row.relation {
            Relation::Ge if !row.rhs.is_positive() => {
                flipped[r] = true;
                identity_col[r] = surplus_col[r].expect("ge rows have a surplus");
            }
            _ => {
                flipped[r] = row.rhs.is_negative();
                identity_col[r] = cols;
                artificial[r] = true;
                cols += 1;
            }
        }
    }

    let mut body = Vec::with_capacity(m);
    for (r, row) in lp.rows.iter().enumerate() {
        let mut line = vec![Rational::zero(); cols + 1];
        for (v, c) in row.coeffs.iter().enumerate() {
            if !c.is_zero() {
                line[v] = c.clone();
            }
        }
        if let Some(sc) = surplus_col[r] {
            line[sc] = Rational::from(-1);
        }
        line[cols] = row.rhs.clone();
        if flipped[r] {
            for v in line.iter_mut() {
                if !v.is_zero() {
                    *v = -&*v;
                }
            }
        }
        if artificial[r] {
            line[identity_col[r]] = Rational::one();
        }
        body.push(line);
    }

    let mut cost = vec![Rational::zero(); cols + 1];
    for r in (0..m).filter(|&r| artificial[r]) {
        for (j, v) in body[r].iter().enumerate() {
            if !v.is_zero() {
                cost[j] -= v;
            }
        }
    }
    for r in (0..m).filter(|&r| artificial[r]) {
        cost[identity_col[r]] = Rational::zero();
    }

    let mut free = vec![false; cols];
    for (v, f) in free.iter_mut().enumerate().take(n) {
        *f = !lp.nonneg.contains(&v);
    }
    let mut tab = Tableau {
        body,
        cost,
        basis: identity_col.clone(),
        free,
        negated: vec![false; cols],
        cols,
    };
    tab.run();

    let residual = -&tab.cost[cols];
    if residual.is_zero() {
        let mut z = vec![Rational::zero(); cols];
        for (r, &b) in tab.basis.iter().enumerate() {
            z[b] = tab.rhs(r).clone();
        }
        let point = (0..n)
            .map(|v| if tab.negated[v] { -&z[v] } else { z[v].clone() })
            .collect();
        return Certificate::Feasible { point };
    }

    // Simplex multipliers from the reduced costs of the identity columns:
    // artificial (cost 1): d = 1 - y; surplus used as slack (cost 0): d = -y.
    let mut dual: Vec<Rational> = (0..m)
        .map(|r| {
            let d = &tab.cost[identity_col[r]];
            let y = if artificial[r] { Rational::one() - d } else { -d };
            if flipped[r] {
                -y
            } else {
                y
            }
        })
        .collect();
    for v in lp.nonneg.iter().copied() {
        let combined: Rational = lp
            .rows
            .iter()
            .zip(&dual[..m])
            .filter(|(row, y)| !y.is_zero() && !row.coeffs[v].is_zero())
            .map(|(row, y)| y * &row.coeffs[v])
            .sum();
        dual.push(-combined);
    }
    Certificate::Infeasible { dual }
}
