//! Ricci curvature of the polar M₁⁺ from multiplicities and a bracket-norm
//! table, the Einstein constant τ(d), and the Sasaki-Einstein value of d.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbits::cr_split;
use crate::rational::{int, rat, Rational};
use crate::rootsys::{pairing, OrbitPoint, RestrictedRoot, RootClass};
use crate::spaces::{catalog, polar_info, Family, FiberStructure, SpaceDescriptor};

/// Whether a basis vector T comes from a σ-swapped pair or a σ-fixed root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootLength {
    Longest,
    Shortest,
}

/// Position of β relative to the reference root α over e₁+e_k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaRelation {
    /// β over e₁±e_l, l ≠ k, longest.
    DiffFiberLongest,
    /// β over e₁±e_l, l ≠ k, shortest.
    DiffFiberShortest,
    /// The pair {α₁−α, σ(α₁−α)} over e₁−e_k, summed over both vectors.
    OppositeFiberLongestPairSum,
    /// Longest β over e₁−e_k orthogonal to α and σ(α).
    OppositeFiberOrthogonal,
    /// Shortest β over e₁−e_k with shortest α.
    OppositeFiberShortest,
    /// Longest vs shortest across e₁±e_k in rank two.
    CrossLength,
    /// Another longest pair over e₁+e_k.
    SameFiberOtherLongest,
    /// The σ-partner T^(2)_α of T^(1)_α.
    SameFiberPartner,
    /// A root of the other length over e₁+e_k.
    SameFiberOtherLength,
    /// β over e₁, longest.
    E1FiberLongest,
    /// Rank one, reference over e₁: the J-image of the reference vector.
    RankOneJPartner,
    /// Rank one, reference over e₁: vectors orthogonal to T and JT.
    RankOneOther,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormTableEntry {
    pub alpha_class: RootLength,
    pub beta_relation: BetaRelation,
    /// ⟨[T_α, T_β], [T_α, T_β]⟩ divided by d.
    #[serde(with = "crate::rational::serde_str")]
    pub value: Rational,
}

const fn entry(alpha_class: RootLength, beta_relation: BetaRelation, v: i64) -> (RootLength, BetaRelation, i64) {
    (alpha_class, beta_relation, v)
}

/// Values are per basis vector T_β, except the pair-sum entry.
/// Vectors are normalized by |T_λ|² = 4/(λ,λ).
const NORMS: [(RootLength, BetaRelation, i64); 14] = {
    use BetaRelation::*;
    use RootLength::*;
    [
        entry(Longest, DiffFiberLongest, 2),
        entry(Shortest, DiffFiberShortest, 2),
        entry(Longest, OppositeFiberLongestPairSum, 8),
        entry(Longest, OppositeFiberOrthogonal, 0),
        entry(Shortest, OppositeFiberShortest, 8),
        entry(Longest, CrossLength, 0),
        entry(Shortest, CrossLength, 0),
        entry(Longest, SameFiberOtherLongest, 8),
        entry(Longest, SameFiberPartner, 8),
        entry(Longest, SameFiberOtherLength, 8),
        entry(Shortest, SameFiberOtherLength, 8),
        entry(Longest, E1FiberLongest, 4),
        entry(Longest, RankOneJPartner, 64),
        entry(Longest, RankOneOther, 16),
    ]
};

pub fn norm_table() -> Vec<NormTableEntry> {
    NORMS
        .iter()
        .map(|&(alpha_class, beta_relation, v)| NormTableEntry { alpha_class, beta_relation, value: int(v) })
        .collect()
}

/// Norm value as a multiple of d.
pub fn norm_value(alpha: RootLength, rel: BetaRelation) -> Option<Rational> {
    NORMS
        .iter()
        .find(|(a, r, _)| *a == alpha && *r == rel)
        .map(|&(_, _, v)| int(v))
}

/// Reference root for r⁺: e₁+e₂, or e₁ in rank one.
pub fn reference_root(space: &SpaceDescriptor) -> RestrictedRoot {
    let n = space.rank;
    if n >= 2 {
        RestrictedRoot::plus(0, 1, n)
    } else {
        RestrictedRoot::e(0, n)
    }
}

pub fn reference_length(fiber: FiberStructure) -> RootLength {
    if fiber.n_longest_pairs > 0 {
        RootLength::Longest
    } else {
        RootLength::Shortest
    }
}

/// How the basis of m_λ contributes to Σ_β ⟨[T_α,T_β],[T_α,T_β]⟩:
/// a list of (relation, number of basis vectors or pairs).
pub fn fiber_terms(
    space: &SpaceDescriptor,
    lambda: &RestrictedRoot,
) -> Result<Vec<(BetaRelation, u32)>> {
    use BetaRelation::*;
    let reference = reference_root(space);
    let alpha = reference_length(space.fiber_of(&reference));
    let fs = space.fiber_of(lambda);
    let (p, s) = (fs.n_longest_pairs, fs.n_shortest_fixed);
    let unsupported = || {
        Err(Error::Unsupported(format!(
            "no norm entry for a {alpha:?} reference against the fiber over {lambda} in {}",
            space.name
        )))
    };

    if space.rank == 1 {
        if *lambda != reference || s > 0 {
            return unsupported();
        }
        return Ok(vec![(RankOneJPartner, 1), (RankOneOther, 2 * p - 2)]);
    }

    let opposite = reference.partner().expect("reference is e1+e2");
    let terms = if *lambda == reference {
        match alpha {
            RootLength::Longest => vec![
                (SameFiberPartner, 1),
                (SameFiberOtherLongest, 2 * (p - 1)),
                (SameFiberOtherLength, s),
            ],
            RootLength::Shortest => {
                if s > 1 {
                    return unsupported();
                }
                vec![(SameFiberOtherLength, 2 * p)]
            }
        }
    } else if *lambda == opposite {
        match alpha {
            RootLength::Longest => {
                let mut v = vec![(CrossLength, s)];
                if p > 0 {
                    v.push((OppositeFiberLongestPairSum, 1));
                    v.push((OppositeFiberOrthogonal, 2 * (p - 1)));
                }
                v
            }
            RootLength::Shortest => vec![(OppositeFiberShortest, s), (CrossLength, 2 * p)],
        }
    } else if lambda.class() == RootClass::Short {
        if alpha != RootLength::Longest || s > 0 {
            return unsupported();
        }
        vec![(E1FiberLongest, 2 * p)]
    } else {
        match alpha {
            RootLength::Longest if s == 0 => vec![(DiffFiberLongest, 2 * p)],
            RootLength::Shortest if p == 0 => vec![(DiffFiberShortest, s)],
            _ => return unsupported(),
        }
    };
    Ok(terms.into_iter().filter(|&(_, c)| c > 0).collect())
}

/// Σ over m_λ of ⟨[T_α,T_β],[T_α,T_β]⟩ as a multiple of d.
pub fn fiber_norm_sum(space: &SpaceDescriptor, lambda: &RestrictedRoot) -> Result<Rational> {
    let alpha = reference_length(space.fiber_of(&reference_root(space)));
    fiber_terms(space, lambda)?
        .into_iter()
        .map(|(rel, count)| {
            norm_value(alpha, rel)
                .map(|v| v * int(count as i64))
                .ok_or_else(|| Error::Unsupported(format!("missing norm entry {alpha:?}/{rel:?}")))
        })
        .sum()
}

/// Roots whose spaces make up m₁⁺: (Σ⁺_x)_C on the first segment.
pub fn polar_roots(space: &SpaceDescriptor) -> Vec<RestrictedRoot> {
    let h = OrbitPoint::segment(0, rat(1, 2), space.rank).expect("segment in range");
    cr_split(space, &h).expect("rank matches").complex.into_iter().collect()
}

/// r⁺(T,T) = (1/4) Σ_λ (λ,λ) Σ_β ⟨[T_λ,T],[T_λ,T]⟩ evaluated at a given d.
pub fn ricci_diagonal_at(space: &SpaceDescriptor, d: Rational) -> Result<Rational> {
    if d <= Rational::zero() {
        return Err(Error::InvalidParameter(format!("d = {d} must be positive")));
    }
    let mut total = Rational::zero();
    for lambda in polar_roots(space) {
        total += pairing(&lambda, &lambda, d) * fiber_norm_sum(space, &lambda)? * d;
    }
    Ok(total / int(4))
}

/// r⁺ on the reference direction; the d factors cancel.
pub fn ricci_diagonal(space: &SpaceDescriptor) -> Result<Rational> {
    ricci_diagonal_at(space, int(1))
}

/// τ(d) = c·(d+1)/d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EinsteinConstant {
    #[serde(with = "crate::rational::serde_str")]
    pub c: Rational,
}

impl EinsteinConstant {
    pub fn eval(&self, d: Rational) -> Rational {
        self.c * (d + int(1)) / d
    }
}

impl fmt::Display for EinsteinConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(d+1)/d", crate::rational::format(&self.c))
    }
}

/// τ = r⁺(T,T) / ((1/(d+1))⟨T,T⟩) with ⟨T,T⟩ = 4/(λ,λ).
pub fn einstein_constant_fn(space: &SpaceDescriptor) -> Result<EinsteinConstant> {
    let r = ricci_diagonal(space)?;
    let reference = reference_root(space);
    // ⟨T,T⟩ = 4d/dot(λ,λ), so τ = r·dot/4 · (d+1)/d.
    Ok(EinsteinConstant { c: r * int(reference.dot(&reference)) / int(4) })
}

pub fn einstein_constant(space: &SpaceDescriptor, d: Rational) -> Result<Rational> {
    if d <= Rational::zero() {
        return Err(Error::InvalidParameter(format!("d = {d} must be positive")));
    }
    Ok(einstein_constant_fn(space)?.eval(d))
}

/// Solves c(d+1)/d = dim M₁⁺ + 2 for d > 0.
pub fn solve_sasaki_einstein(space: &SpaceDescriptor) -> Option<Rational> {
    let polar = polar_info(space);
    if !polar.polar_einstein {
        return None;
    }
    let c = einstein_constant_fn(space).ok()?.c;
    let target = int(polar.polar_dim as i64 + 2);
    let denom = target - c;
    (denom > Rational::zero()).then(|| c / denom)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EinsteinAnswer {
    #[serde(with = "crate::rational::serde_str")]
    pub ricci_diag: Rational,
    /// τ(d) written as "c(d+1)/d".
    pub tau: String,
    #[serde(with = "crate::rational::serde_str")]
    pub tau_coefficient: Rational,
    #[serde(with = "crate::rational::serde_str::option")]
    pub solution_d: Option<Rational>,
    pub eta_einstein: bool,
}

pub fn einstein_answer(space: &SpaceDescriptor) -> Result<EinsteinAnswer> {
    let tau = einstein_constant_fn(space)?;
    Ok(EinsteinAnswer {
        ricci_diag: ricci_diagonal(space)?,
        tau: tau.to_string(),
        tau_coefficient: tau.c,
        solution_d: solve_sasaki_einstein(space),
        eta_einstein: polar_info(space).polar_einstein,
    })
}

/// (λ, μ) with r = λg + μ η⊗η on a Sasaki manifold of dimension 2n+1.
pub fn eta_einstein_coefficients(tau: Rational, sasaki_dim: u32) -> Result<(Rational, Rational)> {
    if sasaki_dim < 3 || sasaki_dim.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("Sasaki dimension {sasaki_dim} must be odd and at least 3")));
    }
    let n = int((sasaki_dim as i64 - 1) / 2);
    Ok((tau - int(2), int(2) * n + int(2) - tau))
}

/// sin²(tπ/2) = 1/(d+1).
pub fn submersion_scale(d: Rational) -> Rational {
    int(1) / (d + int(1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub space: String,
    pub params: String,
    /// Solution for d as "p/q", a symbolic formula, or "none".
    pub d_solution: String,
}

fn symbolic_rows() -> Vec<TableRow> {
    let row = |space: &str, params: &str, d: &str| TableRow {
        space: space.into(),
        params: params.into(),
        d_solution: d.into(),
    };
    vec![
        row("G_n(C^2n)", "n>=2", "n/(n-1)"),
        row("G~_2(R^n)", "n>=5", "n-4"),
        row("SO(2n)/U(n)", "n>=4", "n/(n-3)"),
        row("SO(2n)/U(n)", "n=3", "none"),
        row("Sp(n)/U(n)", "n>=2", "1"),
        row("EIII", "", "8/3"),
        row("EVII", "", "12/5"),
        row("CP^(n-1)", "n>=3", "none"),
        row("G_k(C^n)", "1<k<n-1, 2k!=n", "none"),
    ]
}

fn params_of(f: Family) -> String {
    match f {
        Family::Grassmannian { k, n } => format!("k={k},n={n}"),
        Family::OrientedGrassmannian { n } | Family::SoQuotient { n } | Family::SpQuotient { n } => {
            format!("n={n}")
        }
        Family::EIII | Family::EVII => String::new(),
    }
}

/// Families instantiated for n = 2…8 (where the catalog admits them).
pub fn table_instances() -> Vec<Family> {
    let mut out = Vec::new();
    for n in 2..=8u32 {
        out.push(Family::Grassmannian { k: n, n: 2 * n });
        out.push(Family::OrientedGrassmannian { n });
        out.push(Family::SoQuotient { n });
        out.push(Family::SpQuotient { n });
        out.push(Family::complex_projective(n));
        for k in 2..n {
            if 2 * k < n {
                out.push(Family::Grassmannian { k, n });
            }
        }
    }
    out.push(Family::EIII);
    out.push(Family::EVII);
    out.into_iter().filter(|f| catalog(*f).is_ok()).collect()
}

/// Symbolic rows followed by instantiated rows.
pub fn einstein_table() -> Vec<TableRow> {
    let mut rows = symbolic_rows();
    for f in table_instances() {
        let s = catalog(f).expect("filtered to valid");
        let d = solve_sasaki_einstein(&s).map_or_else(|| "none".to_string(), |d| crate::rational::format(&d));
        rows.push(TableRow { space: s.name, params: params_of(f), d_solution: d });
    }
    rows
}

pub fn table_markdown(rows: &[TableRow]) -> String {
    let mut s = String::from("| M | parameters | d |\n|---|---|---|\n");
    for r in rows {
        s.push_str(&format!("| {} | {} | {} |\n", r.space, r.params, r.d_solution));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::catalog;

    fn sp(f: Family) -> SpaceDescriptor {
        catalog(f).unwrap()
    }

    #[test]
    fn ricci_values_per_family() {
        assert_eq!(ricci_diagonal(&sp(Family::Grassmannian { k: 3, n: 6 })).unwrap(), int(12));
        assert_eq!(ricci_diagonal(&sp(Family::EIII)).unwrap(), int(32));
        assert_eq!(ricci_diagonal(&sp(Family::EVII)).unwrap(), int(48));
        assert_eq!(ricci_diagonal(&sp(Family::SpQuotient { n: 5 })).unwrap(), int(10));
    }

    #[test]
    fn tau_forms() {
        let t = einstein_constant_fn(&sp(Family::EVII)).unwrap();
        assert_eq!(t.c, int(24));
        assert_eq!(t.to_string(), "24(d+1)/d");
        let t = einstein_constant(&sp(Family::SpQuotient { n: 4 }), int(2)).unwrap();
        assert_eq!(t, int(4) * int(3) / int(2));
        let t = einstein_constant_fn(&sp(Family::OrientedGrassmannian { n: 9 })).unwrap();
        assert_eq!(t.c, int(10));
    }

    #[test]
    fn solutions() {
        assert_eq!(solve_sasaki_einstein(&sp(Family::EIII)), Some(rat(8, 3)));
        assert_eq!(solve_sasaki_einstein(&sp(Family::EVII)), Some(rat(12, 5)));
        assert_eq!(solve_sasaki_einstein(&sp(Family::SpQuotient { n: 6 })), Some(int(1)));
        assert_eq!(solve_sasaki_einstein(&sp(Family::complex_projective(4))), None);
        assert_eq!(solve_sasaki_einstein(&sp(Family::Grassmannian { k: 2, n: 5 })), None);
        assert_eq!(solve_sasaki_einstein(&sp(Family::SoQuotient { n: 3 })), None);
    }

    #[test]
    fn eta_einstein() {
        assert_eq!(eta_einstein_coefficients(int(8), 7).unwrap(), (int(6), int(0)));
        assert_eq!(eta_einstein_coefficients(int(2), 7).unwrap(), (int(0), int(6)));
        assert!(eta_einstein_coefficients(int(2), 6).is_err());
    }

    #[test]
    fn submersion() {
        assert_eq!(submersion_scale(int(1)), rat(1, 2));
        assert_eq!(submersion_scale(int(3)), rat(1, 4));
    }

    #[test]
    fn table_has_expected_rows() {
        let rows = einstein_table();
        let has = |space: &str, d: &str| rows.iter().any(|r| r.space == space && r.d_solution == d);
        assert!(has("Sp(3)/U(3)", "1"));
        assert!(has("EIII", "8/3"));
        assert!(has("EVII", "12/5"));
        assert!(has("SO(6)/U(3)", "none"));
        assert!(has("SO(8)/U(4)", "4"));
        let md = table_markdown(&rows);
        assert!(md.contains("| EIII |  | 8/3 |"));
    }
}
