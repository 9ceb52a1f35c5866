//! Quantum LP bound: constraint assembly in the `A`/`B`/`S` and `C`/`D`
//! formulations, verified feasibility checks, maximal-`K` search,
//! monotonicity audits and bound tables.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::enumerator::{
    ab_from_cd, average_subcode, check_cd_membership, check_membership, dual_transform,
    CodeParams, EnumeratorAbs, EnumeratorCd, MembershipReport,
};
use crate::error::{Error, Result};
use crate::lp::{solve_feasibility, verify_certificate, Certificate, LinearProgram, Relation};
use crate::ratpoly::{HomPoly, LinearMap2, Rational};

/// Default cap on `n` for [`table`].
pub const DEFAULT_MAX_N: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formulation {
    /// Variables `A_0..A_n`; `B` and `S` enter as linear images of `A`.
    Abs,
    /// Variables `C_0..C_n, D_0..D_n`; needs `K > 1`.
    Cd,
}

impl fmt::Display for Formulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Formulation::Abs => "abs",
            Formulation::Cd => "cd",
        })
    }
}

impl FromStr for Formulation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "abs" => Ok(Formulation::Abs),
            "cd" => Ok(Formulation::Cd),
            other => Err(Error::Parse(format!("unknown formulation {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStrategy {
    /// Bisection over `[1, 2ⁿ]`; relies on monotonicity in `K`.
    Binary,
    /// Scans `K = 2ⁿ, 2ⁿ-1, ...` and stops at the first feasible value.
    Linear,
}

impl FromStr for SearchStrategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "binary" => Ok(SearchStrategy::Binary),
            "linear" => Ok(SearchStrategy::Linear),
            other => Err(Error::Parse(format!("unknown strategy {other:?}"))),
        }
    }
}

fn unit_row(len: usize, entries: &[(usize, Rational)]) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); len];
    for (i, v) in entries {
        row[*i] += v;
    }
    row
}

/// LP over `A_0..A_n` (all nonnegative).
pub fn build_constraints_abs(params: &CodeParams) -> Result<LinearProgram> {
    params.validate()?;
    let n = params.n;
    let vars = n + 1;
    let k = &params.k;
    let inv_k = Rational::one() / k;
    let t_dual = LinearMap2::macwilliams().matrix(n);
    let t_shadow = LinearMap2::shadow().matrix(n);

    let mut lp = LinearProgram::new(vars);
    for v in 0..vars {
        lp.set_nonneg(v)?;
    }
    lp.add_row(unit_row(vars, &[(0, Rational::one())]), Relation::Eq, k * k)?;
    for (j, dual_row) in t_dual.iter().enumerate() {
        let mut row = dual_row.clone();
        row[j] -= &inv_k;
        let rel = if j < params.d { Relation::Eq } else { Relation::Ge };
        lp.add_row(row, rel, Rational::zero())?;
    }
    for shadow_row in &t_shadow {
        lp.add_row(shadow_row.clone(), Relation::Ge, Rational::zero())?;
    }
    if params.pure {
        for j in 1..params.d {
            lp.add_row(unit_row(vars, &[(j, Rational::one())]), Relation::Eq, Rational::zero())?;
        }
    }
    Ok(lp)
}

/// LP over free variables `C_0..C_n` (indices `0..=n`) and `D_0..D_n`
/// (indices `n+1..=2n+1`).
pub fn build_constraints_cd(params: &CodeParams) -> Result<LinearProgram> {
    params.validate()?;
    let k = &params.k;
    if *k <= Rational::one() {
        return Err(Error::Domain(format!("the C/D system needs K > 1, got K = {k}")));
    }
    let n = params.n;
    let vars = 2 * (n + 1);
    let c = |j: usize| j;
    let d = |j: usize| n + 1 + j;
    let t_dual = LinearMap2::macwilliams().matrix(n);
    let t_shadow = LinearMap2::shadow().matrix(n);
    let one = Rational::one();
    let zero = Rational::zero;
    let factor = (k - &one) / (Rational::from(2) * k);

    let mut lp = LinearProgram::new(vars);
    // MacWilliams-fixed C and MacWilliams-negated D
    for (j, dual_row) in t_dual.iter().enumerate() {
        let mut row = vec![Rational::zero(); vars];
        for (i, t) in dual_row.iter().enumerate() {
            row[c(i)] = t.clone();
        }
        row[c(j)] -= &one;
        lp.add_row(row, Relation::Eq, zero())?;
    }
    for (j, dual_row) in t_dual.iter().enumerate() {
        let mut row = vec![Rational::zero(); vars];
        for (i, t) in dual_row.iter().enumerate() {
            row[d(i)] = t.clone();
        }
        row[d(j)] += &one;
        lp.add_row(row, Relation::Eq, zero())?;
    }
    lp.add_row(unit_row(vars, &[(c(0), one.clone())]), Relation::Eq, one.clone())?;
    for j in 0..params.d {
        lp.add_row(
            unit_row(vars, &[(c(j), one.clone()), (d(j), -&one)]),
            Relation::Eq,
            zero(),
        )?;
    }
    // C - f (C - D) = (1 - f) C + f D >= 0
    for j in 0..=n {
        lp.add_row(
            unit_row(vars, &[(c(j), &one - &factor), (d(j), factor.clone())]),
            Relation::Ge,
            zero(),
        )?;
    }
    for j in 0..=n {
        lp.add_row(
            unit_row(vars, &[(c(j), one.clone()), (d(j), -&one)]),
            Relation::Ge,
            zero(),
        )?;
    }
    for offset in [c(0), d(0)] {
        for shadow_row in &t_shadow {
            let mut row = vec![Rational::zero(); vars];
            for (i, t) in shadow_row.iter().enumerate() {
                row[offset + i] = t.clone();
            }
            lp.add_row(row, Relation::Ge, zero())?;
        }
    }
    if params.pure {
        for j in 1..params.d {
            lp.add_row(unit_row(vars, &[(c(j), one.clone())]), Relation::Eq, zero())?;
        }
    }
    Ok(lp)
}

pub fn build_constraints(params: &CodeParams, formulation: Formulation) -> Result<LinearProgram> {
    match formulation {
        Formulation::Abs => build_constraints_abs(params),
        Formulation::Cd => build_constraints_cd(params),
    }
}

/// `K = 1` has no `C`/`D` system; such queries use `A`/`B`/`S`.
pub fn effective_formulation(params: &CodeParams, requested: Formulation) -> Formulation {
    if requested == Formulation::Cd && params.k <= Rational::one() {
        Formulation::Abs
    } else {
        requested
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Abs(EnumeratorAbs),
    Cd(EnumeratorCd),
}

impl Witness {
    /// The weight enumerator `A` of the witness.
    pub fn weight_enumerator(&self, k: &Rational) -> Result<HomPoly> {
        match self {
            Witness::Abs(e) => Ok(e.a.clone()),
            Witness::Cd(cd) => Ok(ab_from_cd(cd, k)?.0),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BoundResult {
    pub params: CodeParams,
    pub formulation: Formulation,
    pub feasible: bool,
    pub certificate: Certificate,
    pub lp: LinearProgram,
    pub witness: Option<Witness>,
}

fn witness_from_point(
    params: &CodeParams,
    formulation: Formulation,
    point: &[Rational],
) -> Result<Witness> {
    let n = params.n;
    match formulation {
        Formulation::Abs => {
            let a = HomPoly::new(point.to_vec())?;
            let report = check_membership(&a, params)?;
            if !report.all_passed() {
                return Err(Error::Inconsistent(format!(
                    "reconstructed enumerator fails membership for {params}:\n{report}"
                )));
            }
            Ok(Witness::Abs(EnumeratorAbs::from_a(a)))
        }
        Formulation::Cd => {
            let cd = EnumeratorCd {
                c: HomPoly::new(point[..=n].to_vec())?,
                d: HomPoly::new(point[n + 1..].to_vec())?,
            };
            let report = check_cd_membership(&cd, params)?;
            if !report.all_passed() {
                return Err(Error::Inconsistent(format!(
                    "reconstructed C/D pair fails the C/D constraints for {params}:\n{report}"
                )));
            }
            let (a, _) = ab_from_cd(&cd, &params.k)?;
            let report = check_membership(&a, params)?;
            if !report.all_passed() {
                return Err(Error::Inconsistent(format!(
                    "enumerator recovered from C/D fails membership for {params}:\n{report}"
                )));
            }
            Ok(Witness::Cd(cd))
        }
    }
}

/// Builds, solves and verifies the LP for `params`. Feasible results carry a
/// witness that has been re-validated against the constraints directly.
pub fn check(params: &CodeParams, formulation: Formulation) -> Result<BoundResult> {
    params.validate()?;
    let formulation = effective_formulation(params, formulation);
    let lp = build_constraints(params, formulation)?;
    let certificate = solve_feasibility(&lp);
    if !verify_certificate(&lp, &certificate)? {
        return Err(Error::Inconsistent(format!(
            "solver certificate for {params} ({formulation}) failed verification"
        )));
    }
    let witness = match certificate.point() {
        Some(point) => Some(witness_from_point(params, formulation, point)?),
        None => None,
    };
    Ok(BoundResult {
        params: params.clone(),
        formulation,
        feasible: certificate.is_feasible(),
        certificate,
        lp,
        witness,
    })
}

fn validate_nd(n: usize, d: usize) -> Result<()> {
    if n == 0 || d == 0 || d > n {
        return Err(Error::InvalidParams(format!(
            "need 1 <= d <= n, got n = {n}, d = {d}"
        )));
    }
    if n > 62 {
        return Err(Error::Limit(format!("n = {n} is too large for an integer K search")));
    }
    Ok(())
}

/// Largest integer `K` in `[1, 2ⁿ]` for which the bound is feasible, or
/// `None` when even `K = 1` is infeasible.
pub fn max_k(n: usize, d: usize, pure: bool, strategy: SearchStrategy) -> Result<Option<u64>> {
    max_k_with(n, d, strategy, |k| {
        Ok(check(&CodeParams::new(n, k, d, pure)?, Formulation::Abs)?.feasible)
    })
}

/// [`max_k`] against an arbitrary feasibility oracle.
pub fn max_k_with<F>(n: usize, d: usize, strategy: SearchStrategy, mut feasible: F) -> Result<Option<u64>>
where
    F: FnMut(u64) -> Result<bool>,
{
    validate_nd(n, d)?;
    let top = 1u64 << n;
    match strategy {
        SearchStrategy::Linear => {
            for k in (1..=top).rev() {
                if feasible(k)? {
                    return Ok(Some(k));
                }
            }
            Ok(None)
        }
        SearchStrategy::Binary => {
            if !feasible(1)? {
                return Ok(None);
            }
            // invariant: lo feasible; everything above hi infeasible
            let (mut lo, mut hi) = (1u64, top);
            while lo < hi {
                let mid = lo + (hi - lo).div_ceil(2);
                if feasible(mid)? {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            Ok(Some(lo))
        }
    }
}

#[derive(Clone, Debug)]
pub struct AuditEntry {
    pub k_sub: Rational,
    pub a_hat: HomPoly,
    pub report: MembershipReport,
    /// `Â_j = 0` for `1 <= j < d`.
    pub low_weight_vanishes: bool,
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub params: CodeParams,
    pub witness: HomPoly,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn all_passed(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.report.all_passed() && (!self.params.pure || e.low_weight_vanishes))
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "witness A = {}", self.witness)?;
        for e in &self.entries {
            let verdict = if e.report.all_passed() { "pass" } else { "FAIL" };
            write!(f, "K'={} {verdict}  A' = {}", e.k_sub, e.a_hat)?;
            if let Some(c) = e.report.failures().next() {
                write!(f, "  [{} at index {:?}]", c.constraint.name(), c.first_violation)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Pushes a feasible witness at `K` down to every integer `K' <= K` with the
/// averaged-subcode operator and re-checks membership at each `K'`.
pub fn monotonicity_audit(params: &CodeParams) -> Result<AuditReport> {
    let result = check(params, Formulation::Abs)?;
    let witness = match &result.witness {
        Some(w) => w.weight_enumerator(&params.k)?,
        None => return Err(Error::Infeasible(format!("{params} has no LP solution to audit"))),
    };
    audit_witness(params, &witness)
}

/// Audit of an explicit enumerator that already satisfies the constraints at
/// `params`.
pub fn audit_witness(params: &CodeParams, witness: &HomPoly) -> Result<AuditReport> {
    let start = check_membership(witness, params)?;
    if !start.all_passed() {
        return Err(Error::Infeasible(format!(
            "the starting enumerator fails membership at {params}:\n{start}"
        )));
    }
    let b = dual_transform(witness);
    let mut entries = Vec::new();
    let mut kp = Rational::one();
    while kp <= params.k {
        let a_hat = if kp == params.k {
            witness.clone()
        } else {
            average_subcode(witness, &b, &params.k, &kp)?.0
        };
        let report = check_membership(&a_hat, &params.with_k(kp.clone()))?;
        let low_weight_vanishes = (1..params.d).all(|j| a_hat.coeff(j).is_zero());
        entries.push(AuditEntry {
            k_sub: kp.clone(),
            a_hat,
            report,
            low_weight_vanishes,
        });
        kp += Rational::one();
    }
    Ok(AuditReport {
        params: params.clone(),
        witness: witness.clone(),
        entries,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCell {
    pub n: usize,
    pub d: usize,
    pub max_k: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundTable {
    pub pure: bool,
    pub cells: Vec<TableCell>,
}

impl BoundTable {
    pub fn get(&self, n: usize, d: usize) -> Option<&TableCell> {
        self.cells.iter().find(|c| c.n == n && c.d == d)
    }

    /// CSV with header `n,d,max_k,pure`; a missing `K` prints as `NONE`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,d,max_k,pure\n");
        for c in &self.cells {
            let k = c.max_k.map_or_else(|| "NONE".to_string(), |k| k.to_string());
            out.push_str(&format!("{},{},{},{}\n", c.n, c.d, k, self.pure));
        }
        out
    }
}

/// `max_k(n, d)` for `1 <= n <= n_max`, `1 <= d <= min(n, d_max)`. Cells are
/// evaluated on the current rayon pool.
pub fn table(n_max: usize, d_max: usize, pure: bool, limit: usize) -> Result<BoundTable> {
    if n_max > limit {
        return Err(Error::Limit(format!("n_max = {n_max} exceeds the limit {limit}")));
    }
    if n_max == 0 || d_max == 0 {
        return Err(Error::InvalidParams("n_max and d_max must be at least 1".into()));
    }
    let grid: Vec<(usize, usize)> = (1..=n_max)
        .flat_map(|n| (1..=n.min(d_max)).map(move |d| (n, d)))
        .collect();
    let cells = grid
        .par_iter()
        .map(|&(n, d)| {
            Ok(TableCell {
                n,
                d,
                max_k: max_k(n, d, pure, SearchStrategy::Binary)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    for pair in cells.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        // None sorts below Some, which is the order we need
        if a.n == b.n && b.max_k > a.max_k {
            return Err(Error::Inconsistent(format!(
                "max_k increases from d = {} to d = {} at n = {}",
                a.d, b.d, a.n
            )));
        }
    }
    Ok(BoundTable { pure, cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::Constraint;
    use crate::lp::verify_certificate;

    fn params(n: usize, k: i64, d: usize, pure: bool) -> CodeParams {
        CodeParams::new(n, k, d, pure).unwrap()
    }

    fn satisfies(lp: &LinearProgram, point: Vec<Rational>) -> bool {
        verify_certificate(lp, &Certificate::Feasible { point }).unwrap()
    }

    #[test]
    fn abs_full_space_n1() {
        let p = params(1, 2, 1, true);
        let lp = build_constraints_abs(&p).unwrap();
        assert!(satisfies(&lp, vec![Rational::from(4), Rational::zero()]));
        assert!(check(&p, Formulation::Abs).unwrap().feasible);
    }

    #[test]
    fn abs_rows_accept_four_qubit_code() {
        let lp = build_constraints_abs(&params(4, 4, 2, true)).unwrap();
        let a = HomPoly::from_ints(&[16, 0, 0, 0, 48]);
        assert!(satisfies(&lp, a.into_coeffs()));
    }

    #[test]
    fn abs_rows_accept_five_qubit_code() {
        let lp = build_constraints_abs(&params(5, 2, 3, true)).unwrap();
        let a = HomPoly::from_ints(&[4, 0, 0, 0, 60, 0]);
        assert!(satisfies(&lp, a.into_coeffs()));
    }

    #[test]
    fn cd_full_space_n1() {
        let p = params(1, 2, 1, false);
        let lp = build_constraints_cd(&p).unwrap();
        let point = [1, 1, 1, -3].iter().map(|&v| Rational::from(v as i64)).collect();
        assert!(satisfies(&lp, point));
        let res = check(&p, Formulation::Cd).unwrap();
        assert!(res.feasible);
        assert_eq!(res.formulation, Formulation::Cd);
    }

    #[test]
    fn cd_scaled_row_at_k2() {
        // C - (1/4)(C - D) = (3/4) C + (1/4) D
        let p = params(2, 2, 1, false);
        let lp = build_constraints_cd(&p).unwrap();
        let n = 2;
        let first = 2 * (n + 1) + 1 + 1; // two MacWilliams blocks, C0 row, one low-weight row
        let row = &lp.rows()[first];
        assert_eq!(row.relation, Relation::Ge);
        assert_eq!(row.coeffs[0], Rational::new(3, 4).unwrap());
        assert_eq!(row.coeffs[n + 1], Rational::new(1, 4).unwrap());
    }

    #[test]
    fn cd_rejects_k1() {
        assert!(matches!(
            build_constraints_cd(&params(3, 1, 1, false)),
            Err(Error::Domain(_))
        ));
        let res = check(&params(3, 1, 1, false), Formulation::Cd).unwrap();
        assert_eq!(res.formulation, Formulation::Abs);
    }

    #[test]
    fn anchors() {
        for f in [Formulation::Abs, Formulation::Cd] {
            assert!(!check(&params(4, 2, 3, false), f).unwrap().feasible);
            assert!(check(&params(5, 2, 3, false), f).unwrap().feasible);
        }
    }

    #[test]
    fn full_space_feasible() {
        for n in 1..=8usize {
            let p = CodeParams::new(n, 1i64 << n, 1, false).unwrap();
            assert!(check(&p, Formulation::Abs).unwrap().feasible, "n = {n}");
        }
    }

    #[test]
    fn max_k_small() {
        for n in 1..=4 {
            assert_eq!(
                max_k(n, 1, false, SearchStrategy::Binary).unwrap(),
                Some(1u64 << n)
            );
        }
        assert!(max_k(4, 3, false, SearchStrategy::Binary).unwrap().unwrap_or(0) <= 1);
        assert!(max_k(5, 3, false, SearchStrategy::Binary).unwrap().unwrap() >= 2);
        assert!(max_k(4, 5, false, SearchStrategy::Binary).is_err());
        assert!(max_k(4, 0, false, SearchStrategy::Binary).is_err());
    }

    #[test]
    fn binary_search_logic() {
        // threshold oracle
        for t in 0..=16u64 {
            let oracle = |k: u64| Ok(k <= t);
            let expect = (t >= 1).then_some(t);
            assert_eq!(max_k_with(4, 1, SearchStrategy::Binary, oracle).unwrap(), expect);
            assert_eq!(max_k_with(4, 1, SearchStrategy::Linear, oracle).unwrap(), expect);
        }
    }

    #[test]
    fn audit_five_qubit() {
        let report = monotonicity_audit(&params(5, 2, 3, true)).unwrap();
        assert!(report.all_passed(), "{report}");
        assert_eq!(report.entries.len(), 2);
        assert_eq!(report.entries[1].a_hat, report.witness);
    }

    #[test]
    fn audit_requires_feasible_start() {
        assert!(matches!(
            monotonicity_audit(&params(4, 2, 3, false)),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn audit_of_four_qubit_code_keeps_purity() {
        let a = HomPoly::from_ints(&[16, 0, 0, 0, 48]);
        let report = audit_witness(&params(4, 4, 2, true), &a).unwrap();
        assert!(report.all_passed(), "{report}");
        for e in &report.entries {
            assert!(e.low_weight_vanishes);
            assert!(e.report.get(Constraint::Purity).unwrap().passed);
        }
    }

    #[test]
    fn small_table() {
        let t = table(4, 4, false, DEFAULT_MAX_N).unwrap();
        assert_eq!(t.get(3, 1).unwrap().max_k, Some(8));
        assert!(t.to_csv().starts_with("n,d,max_k,pure\n1,1,2,false\n"));
        assert!(table(13, 2, false, DEFAULT_MAX_N).is_err());
    }

    #[test]
    fn parse_enums() {
        assert_eq!("CD".parse::<Formulation>().unwrap(), Formulation::Cd);
        assert!("xyz".parse::<Formulation>().is_err());
        assert_eq!("linear".parse::<SearchStrategy>().unwrap(), SearchStrategy::Linear);
    }
}
