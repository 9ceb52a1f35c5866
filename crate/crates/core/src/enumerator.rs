//! Enumerator-level identities: dual and shadow transforms, the averaged
//! subcode operator, the `C`/`D` change of variables and direct membership
//! checks against the LP constraints.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratpoly::{HomPoly, LinearMap2, Rational};

/// `((n, K, d))` plus the purity requirement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeParams {
    pub n: usize,
    pub k: Rational,
    pub d: usize,
    pub pure: bool,
}

impl CodeParams {
    pub fn new(n: usize, k: impl Into<Rational>, d: usize, pure: bool) -> Result<Self> {
        let params = CodeParams {
            n,
            k: k.into(),
            d,
            pure,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParams("n must be at least 1".into()));
        }
        if self.d == 0 || self.d > self.n {
            return Err(Error::InvalidParams(format!(
                "distance must satisfy 1 <= d <= n, got d = {} with n = {}",
                self.d, self.n
            )));
        }
        if self.k < Rational::one() {
            return Err(Error::InvalidParams(format!("K must be >= 1, got {}", self.k)));
        }
        Ok(())
    }

    pub fn with_k(&self, k: Rational) -> CodeParams {
        CodeParams { k, ..self.clone() }
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({},{},{}))", self.n, self.k, self.d)?;
        if self.pure {
            write!(f, " pure")?;
        }
        Ok(())
    }
}

/// Weight enumerator `A` with its dual `B` and shadow `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratorAbs {
    pub a: HomPoly,
    pub b: HomPoly,
    pub s: HomPoly,
}

impl EnumeratorAbs {
    pub fn from_a(a: HomPoly) -> Self {
        let b = dual_transform(&a);
        let s = shadow_transform(&a);
        EnumeratorAbs { a, b, s }
    }

    pub fn degree(&self) -> usize {
        self.a.degree()
    }
}

/// The `C = (A+B)/(K²+K)`, `D = (A-B)/(K²-K)` pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratorCd {
    pub c: HomPoly,
    pub d: HomPoly,
}

pub fn dual_transform(a: &HomPoly) -> HomPoly {
    a.substitute_linear(&LinearMap2::macwilliams())
}

pub fn shadow_transform(a: &HomPoly) -> HomPoly {
    a.substitute_linear(&LinearMap2::shadow())
}

fn require_k_above_one(k: &Rational, what: &str) -> Result<()> {
    if *k <= Rational::one() {
        return Err(Error::Domain(format!("{what} needs K > 1, got K = {k}")));
    }
    Ok(())
}

fn check_subdimension(k: &Rational, kp: &Rational) -> Result<()> {
    if kp.is_negative() || kp > k {
        return Err(Error::Domain(format!(
            "subcode dimension must satisfy 0 <= K' <= K, got K' = {kp}, K = {k}"
        )));
    }
    Ok(())
}

/// Coefficients `(own, partner)` of the averaged-subcode operator:
/// `Â = own·A + partner·B`, `B̂ = partner·A + own·B`.
pub fn average_subcode_coefficients(k: &Rational, kp: &Rational) -> Result<(Rational, Rational)> {
    require_k_above_one(k, "the averaged subcode operator")?;
    check_subdimension(k, kp)?;
    let denom = k * k * k - k;
    let own = (kp * (kp * k - Rational::one())) / &denom;
    let partner = (kp * (k - kp)) / &denom;
    Ok((own, partner))
}

/// Expected `(A, B)` enumerators of a uniformly random `K'`-dimensional
/// subcode of a `K`-dimensional code with enumerators `(A, B)`.
pub fn average_subcode(
    a: &HomPoly,
    b: &HomPoly,
    k: &Rational,
    kp: &Rational,
) -> Result<(HomPoly, HomPoly)> {
    let (own, partner) = average_subcode_coefficients(k, kp)?;
    let a_hat = a.combine(&own, b, &partner)?;
    let b_hat = a.combine(&partner, b, &own)?;
    Ok((a_hat, b_hat))
}

/// Averaged-subcode image of a shadow enumerator. The even part of `S` in
/// `x` scales by `(K'²+K')/(K²+K)` and the odd part by `(K'²-K')/(K²-K)`.
pub fn average_subcode_shadow(s: &HomPoly, k: &Rational, kp: &Rational) -> Result<HomPoly> {
    require_k_above_one(k, "the averaged subcode operator")?;
    check_subdimension(k, kp)?;
    let (even, odd) = parity_split(s);
    let even_scale = (kp * kp + kp) / (k * k + k);
    let odd_scale = (kp * kp - kp) / (k * k - k);
    even.combine(&even_scale, &odd, &odd_scale)
}

pub fn cd_from_ab(a: &HomPoly, b: &HomPoly, k: &Rational) -> Result<EnumeratorCd> {
    require_k_above_one(k, "D")?;
    let k2 = k * k;
    let c = a.add(b)?.scale(&(Rational::one() / (&k2 + k)));
    let d = a.sub(b)?.scale(&(Rational::one() / (&k2 - k)));
    Ok(EnumeratorCd { c, d })
}

/// Inverse of [`cd_from_ab`]: `A = K²C - ((K²-K)/2)(C-D)`, `B = (K²+K)C - A`.
pub fn ab_from_cd(cd: &EnumeratorCd, k: &Rational) -> Result<(HomPoly, HomPoly)> {
    if !k.is_positive() {
        return Err(Error::Domain(format!("K must be positive, got {k}")));
    }
    let k2 = k * k;
    let gap = cd.c.sub(&cd.d)?;
    let half_spread = (&k2 - k) / Rational::from(2);
    let a = cd.c.combine(&k2, &gap, &-half_spread)?;
    let b = cd.c.scale(&(&k2 + k)).sub(&a)?;
    Ok((a, b))
}

/// Average weight enumerator of a uniformly random `((n, K))` code:
/// `K(4ⁿK - 2ⁿ)/(4ⁿ-1) · xⁿ + K(2ⁿ - K)/(4ⁿ-1) · (x+3y)ⁿ`.
///
/// This is the averaged-subcode image of the full space `(4ⁿxⁿ, 2ⁿ(x+3y)ⁿ)`.
/// Note the sign of the second coefficient: `K(K - 2ⁿ)` would make the
/// enumerator negative for every `K < 2ⁿ`.
pub fn random_code_enumerator(n: usize, k: &Rational) -> Result<HomPoly> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let two_n = Rational::from(2).pow(n as u32);
    let four_n = &two_n * &two_n;
    if !k.is_positive() || *k > two_n {
        return Err(Error::Domain(format!("K must lie in (0, 2^{n}], got {k}")));
    }
    let denom = &four_n - Rational::one();
    let lead = k * (&four_n * k - &two_n) / &denom;
    let spread = k * (&two_n - k) / &denom;
    let full = HomPoly::linear_power(&Rational::one(), &Rational::from(3), n);
    HomPoly::monomial(n, 0, lead).combine(&Rational::one(), &full, &spread)
}

/// Splits `p` into parts even and odd under `x -> -x`.
pub fn parity_split(p: &HomPoly) -> (HomPoly, HomPoly) {
    let n = p.degree();
    let mut even = HomPoly::zero(n).into_coeffs();
    let mut odd = even.clone();
    for (i, c) in p.coeffs().iter().enumerate() {
        if (n - i).is_multiple_of(2) {
            even[i] = c.clone();
        } else {
            odd[i] = c.clone();
        }
    }
    (
        HomPoly::new(even).expect("nonempty"),
        HomPoly::new(odd).expect("nonempty"),
    )
}

/// One named constraint of the LP system, checked against explicit
/// polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    /// `A(1,0) = K²`
    Normalization,
    /// low-`y` coefficients of `B - A/K` vanish below `d`
    LowWeightAgreement,
    NonnegativeA,
    /// `B - A/K >= 0`
    NonnegativeGap,
    NonnegativeShadow,
    /// `A_j = 0` for `1 <= j < d` (pure), or `C_j = 0` in the `C`/`D` system
    Purity,
    /// `C` fixed by the MacWilliams map
    DualFixedC,
    /// `D` negated by the MacWilliams map
    DualNegatedD,
    /// `C(1,0) = 1`
    NormalizationC,
    /// low-`y` coefficients of `C - D` vanish below `d`
    LowWeightCd,
    /// `C - ((K-1)/2K)(C-D) >= 0`
    NonnegativeScaledA,
    /// `C - D >= 0`
    NonnegativeCdGap,
    NonnegativeShadowC,
    NonnegativeShadowD,
}

impl Constraint {
    pub fn name(&self) -> &'static str {
        match self {
            Constraint::Normalization => "normalization A(1,0)=K^2",
            Constraint::LowWeightAgreement => "B - A/K = O(y^d)",
            Constraint::NonnegativeA => "A >= 0",
            Constraint::NonnegativeGap => "B - A/K >= 0",
            Constraint::NonnegativeShadow => "S >= 0",
            Constraint::Purity => "purity",
            Constraint::DualFixedC => "C fixed by MacWilliams",
            Constraint::DualNegatedD => "D negated by MacWilliams",
            Constraint::NormalizationC => "C(1,0)=1",
            Constraint::LowWeightCd => "C - D = O(y^d)",
            Constraint::NonnegativeScaledA => "C - (K-1)/(2K)(C-D) >= 0",
            Constraint::NonnegativeCdGap => "C - D >= 0",
            Constraint::NonnegativeShadowC => "shadow(C) >= 0",
            Constraint::NonnegativeShadowD => "shadow(D) >= 0",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintCheck {
    pub constraint: Constraint,
    pub passed: bool,
    /// First coefficient index (y-degree) that violates the constraint.
    pub first_violation: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MembershipReport {
    pub checks: Vec<ConstraintCheck>,
}

impl MembershipReport {
    fn push(&mut self, constraint: Constraint, first_violation: Option<usize>) {
        self.checks.push(ConstraintCheck {
            constraint,
            passed: first_violation.is_none(),
            first_violation,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, constraint: Constraint) -> Option<&ConstraintCheck> {
        self.checks.iter().find(|c| c.constraint == constraint)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConstraintCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for MembershipReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match c.first_violation {
                None => writeln!(f, "pass  {}", c.constraint.name())?,
                Some(j) => writeln!(f, "FAIL  {} (index {j})", c.constraint.name())?,
            }
        }
        Ok(())
    }
}

fn first_nonzero_below(p: &HomPoly, range: std::ops::Range<usize>) -> Option<usize> {
    range.into_iter().find(|&j| !p.coeff(j).is_zero())
}

/// Checks an explicit enumerator `A` against every constraint of the LP
/// bound for `params`, deriving `B` and `S` by the transforms.
pub fn check_membership(a: &HomPoly, params: &CodeParams) -> Result<MembershipReport> {
    if a.degree() != params.n {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: params.n,
        });
    }
    let k = &params.k;
    let b = dual_transform(a);
    let s = shadow_transform(a);
    let gap = b.combine(&Rational::one(), a, &-(Rational::one() / k))?;
    let d = params.d.min(params.n + 1);

    let mut report = MembershipReport::default();
    let normalized = *a.coeff(0) == k * k;
    report.push(Constraint::Normalization, (!normalized).then_some(0));
    report.push(Constraint::LowWeightAgreement, first_nonzero_below(&gap, 0..d));
    report.push(Constraint::NonnegativeA, a.first_negative());
    report.push(Constraint::NonnegativeGap, gap.first_negative());
    report.push(Constraint::NonnegativeShadow, s.first_negative());
    if params.pure {
        report.push(Constraint::Purity, first_nonzero_below(a, 1..d));
    }
    Ok(report)
}

/// Checks a `(C, D)` pair against the reformulated constraint system.
pub fn check_cd_membership(cd: &EnumeratorCd, params: &CodeParams) -> Result<MembershipReport> {
    require_k_above_one(&params.k, "the C/D system")?;
    for p in [&cd.c, &cd.d] {
        if p.degree() != params.n {
            return Err(Error::DegreeMismatch {
                left: p.degree(),
                right: params.n,
            });
        }
    }
    let k = &params.k;
    let d = params.d.min(params.n + 1);
    let gap = cd.c.sub(&cd.d)?;
    let factor = (k - Rational::one()) / (Rational::from(2) * k);
    let scaled_a = cd.c.combine(&Rational::one(), &gap, &-factor)?;
    let first_diff = |p: &HomPoly, q: &HomPoly| {
        p.coeffs()
            .iter()
            .zip(q.coeffs())
            .position(|(x, y)| x != y)
    };

    let mut report = MembershipReport::default();
    report.push(Constraint::DualFixedC, first_diff(&dual_transform(&cd.c), &cd.c));
    let neg_d = cd.d.scale(&-Rational::one());
    report.push(Constraint::DualNegatedD, first_diff(&dual_transform(&cd.d), &neg_d));
    report.push(
        Constraint::NormalizationC,
        (!cd.c.coeff(0).is_one()).then_some(0),
    );
    report.push(Constraint::LowWeightCd, first_nonzero_below(&gap, 0..d));
    report.push(Constraint::NonnegativeScaledA, scaled_a.first_negative());
    report.push(Constraint::NonnegativeCdGap, gap.first_negative());
    report.push(
        Constraint::NonnegativeShadowC,
        shadow_transform(&cd.c).first_negative(),
    );
    report.push(
        Constraint::NonnegativeShadowD,
        shadow_transform(&cd.d).first_negative(),
    );
    if params.pure {
        report.push(Constraint::Purity, first_nonzero_below(&cd.c, 1..d));
    }
    Ok(report)
}

/// On-disk enumerator: `{"n": int, "K": "p/q", "A": [...], "B"?: [...], "S"?: [...]}`.
#[derive(Serialize, Deserialize)]
struct EnumeratorJson {
    n: usize,
    #[serde(rename = "K")]
    k: Rational,
    #[serde(rename = "A")]
    a: Vec<Rational>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    b: Option<Vec<Rational>>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    s: Option<Vec<Rational>>,
}

/// An enumerator together with the code dimension it belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratorRecord {
    pub k: Rational,
    pub abs: EnumeratorAbs,
}

impl EnumeratorRecord {
    pub fn new(a: HomPoly, k: Rational) -> Self {
        EnumeratorRecord {
            k,
            abs: EnumeratorAbs::from_a(a),
        }
    }

    pub fn n(&self) -> usize {
        self.abs.degree()
    }

    pub fn to_json(&self) -> String {
        let raw = EnumeratorJson {
            n: self.n(),
            k: self.k.clone(),
            a: self.abs.a.coeffs().to_vec(),
            b: Some(self.abs.b.coeffs().to_vec()),
            s: Some(self.abs.s.coeffs().to_vec()),
        };
        serde_json::to_string(&raw).expect("enumerator serialization cannot fail")
    }

    /// Parses an enumerator, recomputing `B` and `S` and rejecting the file
    /// if either stored copy disagrees.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: EnumeratorJson = serde_json::from_str(text)?;
        if raw.a.len() != raw.n + 1 {
            return Err(Error::Parse(format!(
                "n = {} needs {} coefficients in A, got {}",
                raw.n,
                raw.n + 1,
                raw.a.len()
            )));
        }
        let record = EnumeratorRecord::new(HomPoly::new(raw.a)?, raw.k);
        if let Some(b) = raw.b {
            if b != record.abs.b.coeffs() {
                return Err(Error::Inconsistent(
                    "stored B is not the MacWilliams transform of A".into(),
                ));
            }
        }
        if let Some(s) = raw.s {
            if s != record.abs.s.coeffs() {
                return Err(Error::Inconsistent(
                    "stored S is not the shadow transform of A".into(),
                ));
            }
        }
        Ok(record)
    }
}
