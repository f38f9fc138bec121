//! Catalog of the irreducible compact Hermitian symmetric spaces: restricted
//! type, multiplicities, σ-fiber structure and the polar M₁⁺.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{positive_roots, RestrictedRoot, RootClass, RootKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// G_k(C^n); CP^{n−1} is `Grassmannian { k: 1, n }`.
    Grassmannian { k: u32, n: u32 },
    /// G̃₂(R^n), the oriented real 2-plane Grassmannian.
    OrientedGrassmannian { n: u32 },
    /// SO(2n)/U(n).
    SoQuotient { n: u32 },
    /// Sp(n)/U(n).
    SpQuotient { n: u32 },
    #[serde(rename = "eiii")]
    EIII,
    #[serde(rename = "evii")]
    EVII,
}

impl Family {
    pub fn complex_projective(n: u32) -> Family {
        Family::Grassmannian { k: 1, n }
    }

    pub fn is_exceptional(self) -> bool {
        matches!(self, Family::EIII | Family::EVII)
    }

    pub fn name(self) -> String {
        match self {
            Family::Grassmannian { k, n } => {
                if k == 1 || k + 1 == n {
                    format!("CP^{}", n - 1)
                } else {
                    format!("G_{k}(C^{n})")
                }
            }
            Family::OrientedGrassmannian { n } => format!("G~_2(R^{n})"),
            Family::SoQuotient { n } => format!("SO({})/U({n})", 2 * n),
            Family::SpQuotient { n } => format!("Sp({n})/U({n})"),
            Family::EIII => "EIII".into(),
            Family::EVII => "EVII".into(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// How the roots over one restricted root pair up under σ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct FiberStructure {
    pub n_longest_pairs: u32,
    pub n_shortest_fixed: u32,
}

impl FiberStructure {
    const fn new(n_longest_pairs: u32, n_shortest_fixed: u32) -> Self {
        FiberStructure { n_longest_pairs, n_shortest_fixed }
    }

    pub fn multiplicity(&self) -> u32 {
        2 * self.n_longest_pairs + self.n_shortest_fixed
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub family: Family,
    pub name: String,
    pub rank: usize,
    pub restricted_kind: RootKind,
    pub mult: BTreeMap<RootClass, u32>,
    pub fiber: BTreeMap<RootClass, FiberStructure>,
    /// Length of a shortest closed geodesic in terms of the metric parameter.
    pub shortest_geodesic: String,
}

impl SpaceDescriptor {
    pub fn multiplicity(&self, root: &RestrictedRoot) -> u32 {
        self.mult.get(&root.class()).copied().unwrap_or(0)
    }

    pub fn fiber_of(&self, root: &RestrictedRoot) -> FiberStructure {
        self.fiber.get(&root.class()).copied().unwrap_or_default()
    }

    pub fn positive_roots(&self) -> Vec<RestrictedRoot> {
        positive_roots(self.restricted_kind, self.rank).expect("catalog rank is valid")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarDescriptor {
    pub polar_space: String,
    pub polar_dim: u32,
    pub polar_einstein: bool,
}

fn out_of_range(family: Family) -> Error {
    Error::InvalidParameter(format!("{family:?} is outside the catalog range"))
}

/// Validated catalog entry.
pub fn catalog(family: Family) -> Result<SpaceDescriptor> {
    let ok = match family {
        Family::Grassmannian { k, n } => n >= 3 && k >= 1 && k < n,
        Family::OrientedGrassmannian { n } => n >= 5,
        Family::SoQuotient { n } => n >= 3,
        Family::SpQuotient { n } => n >= 2,
        Family::EIII | Family::EVII => true,
    };
    if !ok {
        return Err(out_of_range(family));
    }
    Ok(describe(family))
}

/// Builds the descriptor from the multiplicity tables without range checks.
/// Used directly only for the small members that appear as polars.
fn describe(family: Family) -> SpaceDescriptor {
    use RootClass::*;
    let long = FiberStructure::new(0, 1);
    let (rank, kind, middle, short) = match family {
        Family::Grassmannian { k, n } => {
            let k = k.min(n - k);
            if 2 * k == n && k > 1 {
                (k, RootKind::C, FiberStructure::new(1, 0), FiberStructure::default())
            } else {
                (k, RootKind::BC, FiberStructure::new(1, 0), FiberStructure::new(n - 2 * k, 0))
            }
        }
        Family::OrientedGrassmannian { n } => {
            let middle = if n % 2 == 0 {
                FiberStructure::new((n - 4) / 2, 0)
            } else {
                FiberStructure::new((n - 5) / 2, 1)
            };
            (2, RootKind::C, middle, FiberStructure::default())
        }
        Family::SoQuotient { n } => {
            if n % 2 == 0 {
                (n / 2, RootKind::C, FiberStructure::new(2, 0), FiberStructure::default())
            } else {
                ((n - 1) / 2, RootKind::BC, FiberStructure::new(2, 0), FiberStructure::new(2, 0))
            }
        }
        Family::SpQuotient { n } => {
            (n, RootKind::C, FiberStructure::new(0, 1), FiberStructure::default())
        }
        Family::EIII => (2, RootKind::BC, FiberStructure::new(3, 0), FiberStructure::new(4, 0)),
        Family::EVII => (3, RootKind::C, FiberStructure::new(4, 0), FiberStructure::default()),
    };
    // Rank one has no e_i ± e_j roots.
    let middle = if rank >= 2 { middle } else { FiberStructure::default() };
    let fiber: BTreeMap<RootClass, FiberStructure> =
        [(Long, long), (Middle, middle), (Short, short)].into_iter().collect();
    let mult = fiber.iter().map(|(c, f)| (*c, f.multiplicity())).collect();
    SpaceDescriptor {
        family,
        name: family.name(),
        rank: rank as usize,
        restricted_kind: kind,
        mult,
        fiber,
        shortest_geodesic: "sqrt(d)*pi".into(),
    }
}

/// rank + Σ_{λ∈Σ⁺} m(λ).
pub fn dimension(s: &SpaceDescriptor) -> u32 {
    s.rank as u32 + s.positive_roots().iter().map(|r| s.multiplicity(r)).sum::<u32>()
}

/// A factor of a polar, resolved to something with a descriptor.
#[derive(Debug, Clone, Copy)]
enum PolarFactor {
    Point,
    Space(Family),
}

fn cp(m: u32) -> PolarFactor {
    if m == 0 {
        PolarFactor::Point
    } else {
        PolarFactor::Space(Family::complex_projective(m + 1))
    }
}

fn factor_name(f: PolarFactor) -> Option<String> {
    match f {
        PolarFactor::Point => None,
        PolarFactor::Space(fam) => Some(fam.name()),
    }
}

fn factor_dim(f: PolarFactor) -> u32 {
    match f {
        PolarFactor::Point => 0,
        PolarFactor::Space(fam) => dimension(&describe(fam)),
    }
}

pub fn polar_info(s: &SpaceDescriptor) -> PolarDescriptor {
    let (factors, name, einstein) = match s.family {
        Family::Grassmannian { k, n } => {
            let k = k.min(n - k);
            let factors = vec![cp(k - 1), cp(n - k - 1)];
            let names: Vec<String> = factors.iter().filter_map(|f| factor_name(*f)).collect();
            (factors, names.join(" x "), k == 1 || 2 * k == n)
        }
        Family::OrientedGrassmannian { n } => {
            let m = n - 2;
            let factors = match m {
                3 => vec![cp(1)],
                4 => vec![cp(1), cp(1)],
                _ => vec![PolarFactor::Space(Family::OrientedGrassmannian { n: m })],
            };
            (factors, format!("G~_2(R^{m})"), true)
        }
        Family::SoQuotient { n } => {
            let f = PolarFactor::Space(Family::Grassmannian { k: 2, n });
            (vec![f], format!("G_2(C^{n})"), true)
        }
        Family::SpQuotient { n } => (vec![cp(n - 1)], format!("CP^{}", n - 1), true),
        Family::EIII => {
            let f = PolarFactor::Space(Family::SoQuotient { n: 5 });
            (vec![f], "SO(10)/U(5)".into(), true)
        }
        Family::EVII => (vec![PolarFactor::Space(Family::EIII)], "EIII".into(), true),
    };
    PolarDescriptor {
        polar_space: name,
        polar_dim: factors.into_iter().map(factor_dim).sum(),
        polar_einstein: einstein,
    }
}
