//! Restricted root systems of type C_n and BC_n in the e-basis, the
//! d-scaled pairing, and evaluation on points of the fundamental polytope.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, rat, Rational};

/// Restricted root system type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootKind {
    C,
    BC,
}

impl RootKind {
    pub fn name(self) -> &'static str {
        match self {
            RootKind::C => "C",
            RootKind::BC => "BC",
        }
    }
}

/// The three root lengths: `2e_i`, `e_i±e_j` and `e_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootClass {
    #[serde(rename = "2e")]
    Long,
    #[serde(rename = "e±e")]
    Middle,
    #[serde(rename = "e")]
    Short,
}

impl RootClass {
    pub const ALL: [RootClass; 3] = [RootClass::Long, RootClass::Middle, RootClass::Short];

    pub fn label(self) -> &'static str {
        match self {
            RootClass::Long => "2e",
            RootClass::Middle => "e±e",
            RootClass::Short => "e",
        }
    }
}

/// A restricted root as an integer coefficient vector in e₁…e_n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct RestrictedRoot {
    coeffs: Vec<i64>,
}

impl TryFrom<Vec<i64>> for RestrictedRoot {
    type Error = Error;

    fn try_from(coeffs: Vec<i64>) -> Result<Self> {
        RestrictedRoot::new(coeffs)
    }
}

impl From<RestrictedRoot> for Vec<i64> {
    fn from(r: RestrictedRoot) -> Self {
        r.coeffs
    }
}

impl RestrictedRoot {
    /// Accepts only ±e_i±e_j, ±2e_i and ±e_i.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        let support: Vec<i64> = coeffs.iter().copied().filter(|&c| c != 0).collect();
        let legal = match support.as_slice() {
            [c] => c.abs() == 1 || c.abs() == 2,
            [a, b] => a.abs() == 1 && b.abs() == 1,
            _ => false,
        };
        if legal {
            Ok(RestrictedRoot { coeffs })
        } else {
            Err(Error::IllegalRoot(coeffs))
        }
    }

    fn unit(n: usize, entries: &[(usize, i64)]) -> Self {
        let mut coeffs = vec![0; n];
        for &(i, c) in entries {
            coeffs[i] += c;
        }
        RestrictedRoot::new(coeffs).expect("constructed root is legal")
    }

    /// `e_i` (0-based index).
    pub fn e(i: usize, n: usize) -> Self {
        Self::unit(n, &[(i, 1)])
    }

    /// `2e_i` (0-based index).
    pub fn two_e(i: usize, n: usize) -> Self {
        Self::unit(n, &[(i, 2)])
    }

    /// `e_i + e_j` (0-based, i ≠ j).
    pub fn plus(i: usize, j: usize, n: usize) -> Self {
        Self::unit(n, &[(i, 1), (j, 1)])
    }

    /// `e_i − e_j` (0-based, i ≠ j).
    pub fn minus(i: usize, j: usize, n: usize) -> Self {
        Self::unit(n, &[(i, 1), (j, -1)])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn class(&self) -> RootClass {
        match self.dot(self) {
            4 => RootClass::Long,
            2 => RootClass::Middle,
            _ => RootClass::Short,
        }
    }

    pub fn dot(&self, other: &RestrictedRoot) -> i64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum()
    }

    pub fn neg(&self) -> RestrictedRoot {
        RestrictedRoot {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Sum of two roots if it is again a legal root vector.
    pub fn checked_add(&self, other: &RestrictedRoot) -> Option<RestrictedRoot> {
        let v: Vec<i64> = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        RestrictedRoot::new(v).ok()
    }

    /// True when the first nonzero coefficient is positive.
    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }

    /// For `e_i ± e_j` returns `e_i ∓ e_j`.
    pub fn partner(&self) -> Option<RestrictedRoot> {
        if self.class() != RootClass::Middle {
            return None;
        }
        let mut coeffs = self.coeffs.clone();
        let last = coeffs.iter().rposition(|&c| c != 0)?;
        coeffs[last] = -coeffs[last];
        Some(RestrictedRoot { coeffs })
    }

    /// Indices of the nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| self.coeffs[i] != 0).collect()
    }
}

impl fmt::Display for RestrictedRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            write!(f, "{sign}{mag}e{}", i + 1)?;
            first = false;
        }
        Ok(())
    }
}

/// The positive system Σ⁺ of type C_n (n ≥ 2) or BC_n (n ≥ 1).
pub fn positive_roots(kind: RootKind, n: usize) -> Result<Vec<RestrictedRoot>> {
    let min = match kind {
        RootKind::C => 2,
        RootKind::BC => 1,
    };
    if n < min {
        return Err(Error::InvalidRank { kind: kind.name(), n });
    }
    let mut roots = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            roots.push(RestrictedRoot::minus(i, j, n));
            roots.push(RestrictedRoot::plus(i, j, n));
        }
        roots.push(RestrictedRoot::two_e(i, n));
        if kind == RootKind::BC {
            roots.push(RestrictedRoot::e(i, n));
        }
    }
    Ok(roots)
}

/// Fundamental roots λ₁ = e₁−e₂, …, λ_{n−1} = e_{n−1}−e_n, λ_n = e_n.
pub fn fundamental_roots(n: usize) -> Vec<RestrictedRoot> {
    let mut f: Vec<RestrictedRoot> = (0..n.saturating_sub(1))
        .map(|i| RestrictedRoot::minus(i, i + 1, n))
        .collect();
    if n > 0 {
        f.push(RestrictedRoot::e(n - 1, n));
    }
    f
}

/// Highest root δ = 2e₁.
pub fn highest_root(n: usize) -> RestrictedRoot {
    RestrictedRoot::two_e(0, n)
}

/// (λ, μ) = dot(λ, μ)/d.
pub fn pairing(lambda: &RestrictedRoot, mu: &RestrictedRoot, d: Rational) -> Rational {
    int(lambda.dot(mu)) / d
}

/// Squared length 4/(λ,λ) of the coroot vector iA_λ.
pub fn coroot_norm_sq(lambda: &RestrictedRoot, d: Rational) -> Rational {
    int(4) / pairing(lambda, lambda, d)
}

/// A point H of the polytope Q, in units of π: 1/2 ≥ t₁ ≥ … ≥ t_n ≥ 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrbitPoint {
    #[serde(with = "crate::rational::serde_str::vec")]
    t: Vec<Rational>,
}

impl OrbitPoint {
    pub fn new(t: Vec<Rational>) -> Result<Self> {
        let p = OrbitPoint { t };
        if p.in_polytope() {
            Ok(p)
        } else {
            Err(Error::OutsidePolytope(p.to_string()))
        }
    }

    fn in_polytope(&self) -> bool {
        if self.t.is_empty() {
            return false;
        }
        let half = rat(1, 2);
        self.t[0] <= half
            && self.t.windows(2).all(|w| w[0] >= w[1])
            && *self.t.last().unwrap() >= Rational::zero()
    }

    pub fn origin(n: usize) -> Self {
        OrbitPoint { t: vec![Rational::zero(); n] }
    }

    /// The vertex Q_k = (1/2, …, 1/2, 0, …, 0) with k halves; Q₀ is the origin.
    pub fn vertex(k: usize, n: usize) -> Self {
        let t = (0..n)
            .map(|i| if i < k { rat(1, 2) } else { Rational::zero() })
            .collect();
        OrbitPoint { t }
    }

    /// C_i(t) = (1−t)Q_i + tQ_{i+1}, for 0 ≤ i < n and 0 ≤ t ≤ 1.
    pub fn segment(i: usize, t: Rational, n: usize) -> Result<Self> {
        if i >= n || t < Rational::zero() || t > Rational::one() {
            return Err(Error::InvalidParameter(format!("segment C_{i}({t}) in rank {n}")));
        }
        Ok(Self::vertex(i, n).scale(Rational::one() - t).add(&Self::vertex(i + 1, n).scale(t)))
    }

    pub fn coords(&self) -> &[Rational] {
        &self.t
    }

    pub fn rank(&self) -> usize {
        self.t.len()
    }

    pub fn is_origin(&self) -> bool {
        self.t.iter().all(|x| x.is_zero())
    }

    /// Unchecked affine helpers; callers re-validate when needed.
    pub fn scale(&self, s: Rational) -> Self {
        OrbitPoint { t: self.t.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &OrbitPoint) -> Self {
        OrbitPoint { t: self.t.iter().zip(&other.t).map(|(a, b)| a + b).collect() }
    }
}

impl fmt::Display for OrbitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.t.iter().map(crate::rational::format).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// λ(H)/π.
pub fn eval(lambda: &RestrictedRoot, h: &OrbitPoint) -> Rational {
    lambda
        .coeffs()
        .iter()
        .zip(h.coords())
        .map(|(&c, t)| int(c) * t)
        .sum()
}
