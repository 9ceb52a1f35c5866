//! Brute-force weight enumerators of small stabilizer codes.
//!
//! The code projector is built as an explicit `2ⁿ × 2ⁿ` matrix with exact
//! Gaussian-rational entries, and every one of the `4ⁿ` Pauli errors is
//! traced against it. Nothing here goes through the MacWilliams machinery,
//! so the results serve as ground truth for it.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ratpoly::{HomPoly, Rational};

/// Largest supported `n` for the dense oracle.
pub const MAX_ORACLE_QUBITS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn has_x(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    fn has_z(self) -> bool {
        matches!(self, Pauli::Z | Pauli::Y)
    }

    /// Single-qubit product `self · other` as `(i^k, letter)`.
    fn mul(self, other: Pauli) -> (u8, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (0, p),
            (a, b) if a == b => (0, I),
            (X, Y) => (1, Z),
            (Y, Z) => (1, X),
            (Z, X) => (1, Y),
            (Y, X) => (3, Z),
            (Z, Y) => (3, X),
            (X, Z) => (3, Y),
            _ => unreachable!(),
        }
    }
}

/// `i^phase · P_1 ⊗ ... ⊗ P_n`, with `phase` taken mod 4.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    letters: Vec<Pauli>,
    phase: u8,
}

impl PauliString {
    pub fn new(letters: Vec<Pauli>, phase: u8) -> Self {
        PauliString {
            letters,
            phase: phase % 4,
        }
    }

    pub fn identity(n: usize) -> Self {
        PauliString::new(vec![Pauli::I; n], 0)
    }

    pub fn n(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    /// Power of `i` in the overall phase.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    /// Number of non-identity tensor factors.
    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&p| p != Pauli::I).count()
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.weight() == 0
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let clashes = self
            .letters
            .iter()
            .zip(&other.letters)
            .filter(|(a, b)| **a != Pauli::I && **b != Pauli::I && a != b)
            .count();
        clashes % 2 == 0
    }

    pub fn mul(&self, other: &PauliString) -> PauliString {
        let mut phase = self.phase + other.phase;
        let letters = self
            .letters
            .iter()
            .zip(&other.letters)
            .map(|(a, b)| {
                let (k, p) = a.mul(*b);
                phase += k;
                p
            })
            .collect();
        PauliString::new(letters, phase)
    }

    /// Bit masks over basis indices; qubit `q` is bit `n-1-q`.
    fn masks(&self) -> (usize, usize, u8) {
        let n = self.n();
        let mut xmask = 0usize;
        let mut zmask = 0usize;
        let mut ys = 0u8;
        for (q, p) in self.letters.iter().enumerate() {
            let bit = 1usize << (n - 1 - q);
            if p.has_x() {
                xmask |= bit;
            }
            if p.has_z() {
                zmask |= bit;
            }
            if *p == Pauli::Y {
                ys += 1;
            }
        }
        (xmask, zmask, (self.phase + ys) % 4)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = ["+", "+i", "-", "-i"][self.phase as usize];
        write!(f, "{sign}")?;
        for p in &self.letters {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Letters `IXYZ` with an optional leading `+`, `-`, `i`, `+i` or `-i`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, body) = if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else {
            (0, s)
        };
        let letters = body
            .chars()
            .map(|c| {
                Pauli::from_char(c)
                    .ok_or_else(|| Error::Parse(format!("unexpected character {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if letters.is_empty() {
            return Err(Error::Parse(format!("empty Pauli string {s:?}")));
        }
        Ok(PauliString::new(letters, phase))
    }
}

pub fn weight(e: &PauliString) -> usize {
    e.weight()
}

/// A stabilizer code given by generators; validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCode {
    n: usize,
    generators: Vec<PauliString>,
}

impl StabilizerCode {
    pub fn new(generators: Vec<PauliString>) -> Result<Self> {
        let n = generators
            .first()
            .map(PauliString::n)
            .ok_or_else(|| Error::InvalidCode("no generators".into()))?;
        if let Some(g) = generators.iter().find(|g| g.n() != n) {
            return Err(Error::InvalidCode(format!(
                "generator {g} has {} qubits, expected {n}",
                g.n()
            )));
        }
        if let Some(g) = generators.iter().find(|g| g.phase() % 2 == 1) {
            return Err(Error::InvalidCode(format!(
                "generator {g} is not Hermitian (phase ±i)"
            )));
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if !a.commutes_with(b) {
                    return Err(Error::InvalidCode(format!("generators {a} and {b} anticommute")));
                }
            }
        }
        if generators.len() > 2 * n + 1 {
            return Err(Error::InvalidCode("too many generators".into()));
        }
        // every subset product; a nontrivial phase on the identity means -I
        for mask in 1u64..(1u64 << generators.len()) {
            let mut prod = PauliString::identity(n);
            for (j, g) in generators.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    prod = prod.mul(g);
                }
            }
            if prod.is_identity_up_to_phase() && prod.phase() != 0 {
                return Err(Error::InvalidCode(format!(
                    "the stabilizer group contains {prod}"
                )));
            }
        }
        Ok(StabilizerCode { n, generators })
    }

    /// Parses one generator per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let generators = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<PauliString>>>()?;
        StabilizerCode::new(generators)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    /// Exact code projector `Π (I + g)/2` as a dense row-major matrix.
    pub fn projector(&self) -> Result<Vec<Vec<Gaussian>>> {
        if self.n > MAX_ORACLE_QUBITS {
            return Err(Error::Limit(format!(
                "dense oracle supports n <= {MAX_ORACLE_QUBITS}, got n = {}",
                self.n
            )));
        }
        let dim = 1usize << self.n;
        let half = Rational::new(1, 2).expect("nonzero");
        let mut p: Vec<Vec<Gaussian>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|k| if i == k { Gaussian::one() } else { Gaussian::zero() })
                    .collect()
            })
            .collect();
        for g in &self.generators {
            let (xmask, zmask, ipow) = g.masks();
            // (P · g)[i][k] = P[i][k^x] · phase_g(k)
            p = p
                .iter()
                .map(|row| {
                    (0..dim)
                        .map(|k| {
                            let moved = row[k ^ xmask].rotate(monomial_phase(k, zmask, ipow));
                            (&row[k] + &moved).scale(&half)
                        })
                        .collect()
                })
                .collect();
        }
        Ok(p)
    }

    /// `(A, B)` with `A_w = Σ_{wt e = w} |Tr(P e)|²` and
    /// `B_w = Σ_{wt e = w} Tr(P e P e)` over unsigned Pauli errors `e`.
    pub fn enumerators_dense(&self) -> Result<(HomPoly, HomPoly)> {
        let n = self.n;
        let p = self.projector()?;
        let dim = 1usize << n;
        // nonzero entries per row
        let support: Vec<Vec<usize>> = p
            .iter()
            .map(|row| (0..dim).filter(|&k| !row[k].is_zero()).collect())
            .collect();

        let per_error = |code: usize| -> Result<(usize, Rational, Rational)> {
            let e = pauli_from_index(n, code);
            let (xmask, zmask, ipow) = e.masks();
            let w = e.weight();
            let ph = |k: usize| monomial_phase(k, zmask, ipow);

            let mut tr = Gaussian::zero();
            for i in 0..dim {
                let v = &p[i][i ^ xmask];
                if !v.is_zero() {
                    tr = &tr + &v.rotate(ph(i));
                }
            }
            // Tr(PePe) = Σ_{i,k} P[i][k^x] ph(k) P[k][i^x] ph(i)
            let mut tr2 = Gaussian::zero();
            for i in 0..dim {
                for &kx in &support[i] {
                    let k = kx ^ xmask;
                    let other = &p[k][i ^ xmask];
                    if other.is_zero() {
                        continue;
                    }
                    let term = (&p[i][kx] * other).rotate(ph(k) + ph(i));
                    tr2 = &tr2 + &term;
                }
            }
            if !tr2.im.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "Tr(PePe) has imaginary part for e = {e}"
                )));
            }
            let sq = &tr.re * &tr.re + &tr.im * &tr.im;
            Ok((w, sq, tr2.re))
        };

        let terms = (0..1usize << (2 * n))
            .into_par_iter()
            .map(per_error)
            .collect::<Result<Vec<_>>>()?;
        let mut a = vec![Rational::zero(); n + 1];
        let mut b = vec![Rational::zero(); n + 1];
        for (w, sq, tr2) in terms {
            a[w] += sq;
            b[w] += tr2;
        }
        Ok((HomPoly::new(a)?, HomPoly::new(b)?))
    }

    /// Code dimension `Tr(P)`.
    pub fn dimension(&self) -> Result<Rational> {
        let p = self.projector()?;
        let tr = p.iter().enumerate().fold(Gaussian::zero(), |acc, (i, row)| &acc + &row[i]);
        Ok(tr.re)
    }
}

/// Phase of a Pauli monomial on basis state `k`: `i^ipow · (-1)^{|k & zmask|}`.
fn monomial_phase(k: usize, zmask: usize, ipow: u8) -> u8 {
    let sign = ((k & zmask).count_ones() % 2) as u8;
    (ipow + 2 * sign) % 4
}

/// The `index`-th unsigned Pauli string in base-4 order `I, X, Y, Z`.
fn pauli_from_index(n: usize, mut index: usize) -> PauliString {
    let mut letters = vec![Pauli::I; n];
    for q in (0..n).rev() {
        letters[q] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][index % 4];
        index /= 4;
    }
    PauliString::new(letters, 0)
}

/// Exact complex number with rational parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn zero() -> Self {
        Gaussian {
            re: Rational::zero(),
            im: Rational::zero(),
        }
    }

    pub fn one() -> Self {
        Gaussian {
            re: Rational::one(),
            im: Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Multiplies by `i^k`.
    pub fn rotate(&self, k: u8) -> Gaussian {
        match k % 4 {
            0 => self.clone(),
            1 => Gaussian {
                re: -&self.im,
                im: self.re.clone(),
            },
            2 => Gaussian {
                re: -&self.re,
                im: -&self.im,
            },
            _ => Gaussian {
                re: self.im.clone(),
                im: -&self.re,
            },
        }
    }

    pub fn scale(&self, c: &Rational) -> Gaussian {
        Gaussian {
            re: &self.re * c,
            im: &self.im * c,
        }
    }
}

impl Add for &Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: &Gaussian) -> Gaussian {
        Gaussian {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Mul for &Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: &Gaussian) -> Gaussian {
        Gaussian {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

/// Generators of a few standard small codes.
pub mod codes {
    use super::StabilizerCode;

    fn build(gens: &[&str]) -> StabilizerCode {
        StabilizerCode::new(gens.iter().map(|g| g.parse().expect("valid literal")).collect())
            .expect("valid code")
    }

    /// Bell pair: `((2,1,2))`.
    pub fn bell_pair() -> StabilizerCode {
        build(&["XX", "ZZ"])
    }

    /// `((4,4,2))`.
    pub fn four_two_two() -> StabilizerCode {
        build(&["XXXX", "ZZZZ"])
    }

    /// The cyclic five-qubit `((5,2,3))` code.
    pub fn five_qubit() -> StabilizerCode {
        build(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"])
    }
}
