#![allow(dead_code)]

use std::collections::BTreeSet;

use qlp_core::{LinearProgram, Rational, Relation};
use rand::Rng;

/// `coeffs · x >= rhs`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Ineq {
    coeffs: Vec<Rational>,
    rhs: Rational,
}

impl Ineq {
    /// Scales so the largest |coefficient| is one; keeps trivial rows as-is.
    fn normalized(mut self) -> Ineq {
        let m = self.coeffs.iter().map(Rational::abs).max().unwrap_or_else(Rational::zero);
        if !m.is_zero() {
            for c in &mut self.coeffs {
                *c = &*c / &m;
            }
            self.rhs = &self.rhs / &m;
        }
        self
    }
}

/// Decides feasibility by substituting away equalities and then running
/// Fourier–Motzkin elimination on the remaining inequalities.
pub fn brute_force_feasible(lp: &LinearProgram) -> bool {
    let n = lp.num_vars();
    let mut eqs: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let mut ineqs: Vec<Ineq> = Vec::new();
    for row in lp.rows() {
        match row.relation {
            Relation::Eq => eqs.push((row.coeffs.clone(), row.rhs.clone())),
            Relation::Ge => ineqs.push(Ineq {
                coeffs: row.coeffs.clone(),
                rhs: row.rhs.clone(),
            }),
        }
    }
    for v in lp.nonneg_vars() {
        let mut coeffs = vec![Rational::zero(); n];
        coeffs[v] = Rational::one();
        ineqs.push(Ineq {
            coeffs,
            rhs: Rational::zero(),
        });
    }

    // x_j = (rhs - Σ_{i≠j} a_i x_i) / a_j, substituted everywhere.
    while let Some((coeffs, rhs)) = eqs.pop() {
        let Some(j) = coeffs.iter().position(|c| !c.is_zero()) else {
            if !rhs.is_zero() {
                return false;
            }
            continue;
        };
        let pivot = coeffs[j].clone();
        let substitute = |row: &mut Vec<Rational>, b: &mut Rational| {
            let f = &row[j] / &pivot;
            if f.is_zero() {
                return;
            }
            for (r, c) in row.iter_mut().zip(&coeffs) {
                *r = &*r - &(&f * c);
            }
            *b = &*b - &(&f * &rhs);
        };
        for (row, b) in &mut eqs {
            substitute(row, b);
        }
        for q in &mut ineqs {
            substitute(&mut q.coeffs, &mut q.rhs);
        }
    }

    for j in 0..n {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut rest = BTreeSet::new();
        for q in ineqs {
            if q.coeffs[j].is_positive() {
                pos.push(q);
            } else if q.coeffs[j].is_negative() {
                neg.push(q);
            } else {
                rest.insert(q.normalized());
            }
        }
        for p in &pos {
            for q in &neg {
                let fp = q.coeffs[j].abs();
                let fq = p.coeffs[j].clone();
                let coeffs = p
                    .coeffs
                    .iter()
                    .zip(&q.coeffs)
                    .map(|(a, b)| &(a * &fp) + &(b * &fq))
                    .collect();
                let rhs = &(&p.rhs * &fp) + &(&q.rhs * &fq);
                rest.insert(Ineq { coeffs, rhs }.normalized());
            }
        }
        ineqs = rest.into_iter().collect();
    }
    ineqs.iter().all(|q| !q.rhs.is_positive())
}

fn small_rational<R: Rng>(rng: &mut R, mag: i64) -> Rational {
    let num = rng.gen_range(-mag..=mag);
    let den = if rng.gen_bool(0.2) { rng.gen_range(1..=3) } else { 1 };
    Rational::new(num, den).unwrap()
}

/// Random LP with at most `max_vars` variables. Half the instances are
/// planted around a known feasible point, the rest use random right-hand
/// sides.
pub fn random_lp<R: Rng>(rng: &mut R, max_vars: usize, max_rows: usize) -> LinearProgram {
    let n = rng.gen_range(1..=max_vars);
    let m = rng.gen_range(1..=max_rows);
    let mut lp = LinearProgram::new(n);
    for v in 0..n {
        if rng.gen_bool(0.6) {
            lp.set_nonneg(v).unwrap();
        }
    }
    let planted: Option<Vec<Rational>> = rng.gen_bool(0.5).then(|| {
        (0..n)
            .map(|v| {
                let x = small_rational(rng, 3);
                if lp.is_nonneg(v) {
                    x.abs()
                } else {
                    x
                }
            })
            .collect()
    });
    for _ in 0..m {
        let coeffs: Vec<Rational> = (0..n)
            .map(|_| if rng.gen_bool(0.25) { Rational::zero() } else { small_rational(rng, 3) })
            .collect();
        let relation = if rng.gen_bool(0.3) { Relation::Eq } else { Relation::Ge };
        let rhs = match &planted {
            Some(x) => {
                let ax: Rational = coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
                match relation {
                    Relation::Eq => ax,
                    Relation::Ge => ax - Rational::from(rng.gen_range(0..=2i64)),
                }
            }
            None => small_rational(rng, 4),
        };
        lp.add_row(coeffs, relation, rhs).unwrap();
    }
    lp
}
