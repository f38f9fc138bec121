//! Isotropy orbits parametrized by the polytope Q: active roots, the CR
//! split, and the CR / Hopf / ruled / contact / Sasaki decisions.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, rat, to_f64, Rational};
use crate::rootsys::{eval, fundamental_roots, highest_root, OrbitPoint, RestrictedRoot, RootClass, RootKind};
use crate::spaces::SpaceDescriptor;

pub type RootSet = BTreeSet<RestrictedRoot>;

/// A face Q_Δ of the polytope with a rational barycentric sample point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceDescriptor {
    /// 1-based indices i of the fundamental roots λ_i in Δ.
    pub fundamental: Vec<usize>,
    /// Whether the highest root δ is in Δ.
    pub highest: bool,
    pub sample: OrbitPoint,
}

impl FaceDescriptor {
    pub fn labels(&self) -> Vec<String> {
        let mut v: Vec<String> = self.fundamental.iter().map(|i| format!("λ{i}")).collect();
        if self.highest {
            v.push("δ".into());
        }
        v
    }
}

/// All 2^(n+1) subsets Δ ⊂ F ∪ {δ}. The barycenter of Q_{i₁…i_k} is the mean
/// of the vertices Q_{i_j}, with the origin added as a vertex when δ ∈ Δ.
/// The empty subset is assigned the origin.
pub fn faces(space: &SpaceDescriptor) -> Vec<FaceDescriptor> {
    let n = space.rank;
    (0u32..1 << (n + 1))
        .map(|mask| {
            let fundamental: Vec<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            let highest = mask & (1 << n) != 0;
            let vertices = fundamental.len() + usize::from(highest);
            let sample = if fundamental.is_empty() {
                OrbitPoint::origin(n)
            } else {
                fundamental
                    .iter()
                    .map(|&i| OrbitPoint::vertex(i, n))
                    .fold(OrbitPoint::origin(n), |acc, q| acc.add(&q))
                    .scale(rat(1, vertices as i64))
            };
            FaceDescriptor { fundamental, highest, sample }
        })
        .collect()
}

/// The face containing H.
pub fn face_of(h: &OrbitPoint) -> (Vec<usize>, bool) {
    let n = h.rank();
    let fundamental = fundamental_roots(n)
        .iter()
        .enumerate()
        .filter(|(_, l)| !eval(l, h).is_zero())
        .map(|(i, _)| i + 1)
        .collect();
    (fundamental, eval(&highest_root(n), h) < Rational::one())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActiveRoots {
    /// Σ⁺_x: roots with λ(H) ∉ πZ.
    pub active: RootSet,
    /// λ(H) = 0.
    pub zero_part: RootSet,
    /// λ(H) = π.
    pub pi_part: RootSet,
}

fn check_rank(space: &SpaceDescriptor, h: &OrbitPoint) -> Result<()> {
    if h.rank() != space.rank {
        return Err(Error::DimensionMismatch { expected: space.rank, got: h.rank() });
    }
    Ok(())
}

pub fn active_roots(space: &SpaceDescriptor, h: &OrbitPoint) -> Result<ActiveRoots> {
    check_rank(space, h)?;
    let mut out = ActiveRoots { active: RootSet::new(), zero_part: RootSet::new(), pi_part: RootSet::new() };
    for r in space.positive_roots() {
        let v = eval(&r, h);
        if v.is_zero() {
            out.zero_part.insert(r);
        } else if v == Rational::one() {
            out.pi_part.insert(r);
        } else {
            out.active.insert(r);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrSplit {
    /// (Σ⁺_x)_C
    pub complex: RootSet,
    /// (Σ⁺_x)_R
    pub real: RootSet,
}

/// J maps m_{2e_i} into a, m_{e_i} into itself and m_{e_i±e_j} onto
/// m_{e_i∓e_j}; a root is complex exactly when J keeps its space tangent.
pub fn cr_split(space: &SpaceDescriptor, h: &OrbitPoint) -> Result<CrSplit> {
    let active = active_roots(space, h)?.active;
    let mut split = CrSplit { complex: RootSet::new(), real: RootSet::new() };
    for r in &active {
        let complex = match r.class() {
            RootClass::Long => false,
            RootClass::Short => true,
            RootClass::Middle => active.contains(&r.partner().expect("middle root has a partner")),
        };
        if complex {
            split.complex.insert(r.clone());
        } else {
            split.real.insert(r.clone());
        }
    }
    Ok(split)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CrType {
    #[serde(rename = "fixed_point")]
    FixedPoint,
    #[serde(rename = "complex_polar")]
    ComplexPolar,
    #[serde(rename = "totally_real_lagrangian")]
    TotallyRealLagrangian,
    #[serde(rename = "proper_CR")]
    ProperCr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub i: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub t: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactStatus {
    pub real_rank: u32,
    pub contact: bool,
    pub segment: Option<Segment>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub active: RootSet,
    pub cr_complex: RootSet,
    pub cr_real: RootSet,
    pub orbit_dim: u32,
    pub cr_type: CrType,
    pub hopf: bool,
    pub ruled: bool,
    pub complex_dist_integrable: bool,
    pub real_rank: u32,
    pub contact: bool,
    #[serde(with = "crate::rational::serde_str::option")]
    pub sasaki_t: Option<Rational>,
}

fn mult_sum(space: &SpaceDescriptor, roots: &RootSet) -> u32 {
    roots.iter().map(|r| space.multiplicity(r)).sum()
}

/// Detects H = C_i(t) = (1/2, …, 1/2, t/2, 0, …, 0) with 0 < t < 1.
pub fn segment_of(h: &OrbitPoint) -> Option<Segment> {
    let half = rat(1, 2);
    let c = h.coords();
    let i = c.iter().take_while(|&&x| x == half).count();
    if i == c.len() {
        return None;
    }
    let s = c[i];
    if s.is_zero() || c[i + 1..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(Segment { i, t: s * int(2) })
}

fn contact_index(kind: RootKind, n: usize, i: usize) -> bool {
    match kind {
        RootKind::BC => i == 0,
        RootKind::C => i == 0 || i + 1 == n,
    }
}

pub fn contact_status(space: &SpaceDescriptor, h: &OrbitPoint) -> Result<ContactStatus> {
    let split = cr_split(space, h)?;
    let real_rank = mult_sum(space, &split.real);
    let segment = segment_of(h);
    let contact = segment.is_some_and(|s| contact_index(space.restricted_kind, space.rank, s.i));
    Ok(ContactStatus { real_rank, contact, segment })
}

/// tan²(tπ/2) when it is rational. By Niven's theorem cos(tπ) is rational
/// only for t ∈ ½Z ∪ ⅓Z, and tan²(tπ/2) = (1 − cos tπ)/(1 + cos tπ).
pub fn tan_sq_half_turn(t: Rational) -> Option<Rational> {
    let (p, q) = (*t.numer(), *t.denom());
    let cos = match q {
        1 => {
            if p.rem_euclid(2) == 0 {
                int(1)
            } else {
                int(-1)
            }
        }
        2 => int(0),
        3 => {
            if matches!(p.rem_euclid(6), 1 | 5) {
                rat(1, 2)
            } else {
                rat(-1, 2)
            }
        }
        _ => return None,
    };
    if cos == int(-1) {
        return None;
    }
    Some((int(1) - cos) / (int(1) + cos))
}

/// The exact Sasaki condition d·tan²(tπ/2) = 1.
pub fn sasaki_predicate(t: Rational, d: Rational) -> bool {
    tan_sq_half_turn(t).is_some_and(|v| v * d == int(1))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SasakiParameter {
    #[serde(with = "crate::rational::serde_str")]
    pub d: Rational,
    /// The unique t ∈ (0,1) with tan²(tπ/2) = 1/d.
    pub t: f64,
}

impl SasakiParameter {
    pub fn holds_at(&self, t: Rational) -> bool {
        sasaki_predicate(t, self.d)
    }
}

pub fn sasaki_parameter(d: Rational) -> Result<SasakiParameter> {
    if d <= Rational::zero() {
        return Err(Error::InvalidParameter(format!("d = {d} must be positive")));
    }
    let t = 2.0 / PI * (1.0 / to_f64(&d).sqrt()).atan();
    Ok(SasakiParameter { d, t })
}

/// k = (1/d)(1 + 2 cot(tπ/2) cot(tπ)).
pub fn k_constant(d: Rational, t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidParameter(format!("t = {t} must lie in (0, 1)")));
    }
    if d <= Rational::zero() {
        return Err(Error::InvalidParameter(format!("d = {d} must be positive")));
    }
    let cot = |x: f64| x.cos() / x.sin();
    let prod = if t == 0.5 { 0.0 } else { cot(t * PI / 2.0) * cot(t * PI) };
    Ok((1.0 + 2.0 * prod) / to_f64(&d))
}

pub fn classify(space: &SpaceDescriptor, h: &OrbitPoint, d: Rational) -> Result<OrbitReport> {
    if d <= Rational::zero() {
        return Err(Error::InvalidParameter(format!("d = {d} must be positive")));
    }
    let active = active_roots(space, h)?.active;
    let split = cr_split(space, h)?;
    let status = contact_status(space, h)?;
    let orbit_dim = mult_sum(space, &active);
    let fixed = active.is_empty();

    let cr_type = if fixed {
        CrType::FixedPoint
    } else if split.real.is_empty() {
        CrType::ComplexPolar
    } else if split.complex.is_empty() {
        CrType::TotallyRealLagrangian
    } else {
        CrType::ProperCr
    };

    let half = rat(1, 2);
    // A point orbit satisfies the foliation conditions vacuously.
    let ruled = split.real.iter().all(|r| eval(r, h) == half);

    let sasaki_t = status.segment.filter(|_| status.contact).and_then(|s| {
        let t = if s.i == 0 { s.t } else { int(1) - s.t };
        sasaki_predicate(t, d).then_some(t)
    });

    let split_real_empty = split.real.is_empty();
    Ok(OrbitReport {
        active,
        cr_complex: split.complex,
        cr_real: split.real,
        orbit_dim,
        cr_type,
        hopf: true,
        ruled,
        complex_dist_integrable: split_real_empty,
        real_rank: status.real_rank,
        contact: status.contact,
        sasaki_t,
    })
}
