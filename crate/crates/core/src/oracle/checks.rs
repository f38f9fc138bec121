//! Numerical measurements of the identities the symbolic layers rely on.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::MatrixAlgebra;
use super::linalg::{exp_skew, hcat, max_abs, null_space, orth, outside_residual, project_out, Mat, Vector};
use super::report::Check;
use super::spectrum::{joint_eigenspaces, maximal_abelian, RestrictedSpectrum};
use crate::einstein::{
    fiber_norm_sum, norm_value, polar_roots, reference_length, reference_root, ricci_diagonal_at, BetaRelation,
    RootLength,
};
use crate::error::{Error, Result};
use crate::orbits::{classify, contact_status, cr_split, faces, k_constant, sasaki_parameter, CrType};
use crate::rational::{rat, to_f64, Rational};
use crate::rootsys::{OrbitPoint, RestrictedRoot, RootClass};
use crate::spaces::SpaceDescriptor;

const SEED: u64 = 0x0c0f_fee5;
const SUBSPACE_TOL: f64 = 1e-8;

pub const TOL_STRUCTURE: f64 = 1e-12;
pub const TOL_JACOBI: f64 = 1e-10;
pub const TOL_NORMALIZATION: f64 = 1e-10;
pub const TOL_J_ACTION: f64 = 1e-9;
pub const TOL_BRACKET: f64 = 1e-9;
pub const TOL_RICCI: f64 = 1e-8;
pub const TOL_CURVATURE: f64 = 1e-8;

/// max(|A−B outside B|, |B outside A|), or 1 when the dimensions differ.
pub fn subspace_distance(a: &Mat, b: &Mat) -> f64 {
    if a.ncols() != b.ncols() {
        return 1.0;
    }
    outside_residual(a, b).max(outside_residual(b, a))
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vector {
    let v = Vector::from_fn(dim, |_, _| rng.gen_range(-1.0..1.0));
    let n = v.norm();
    v / n
}

// ---------------------------------------------------------------- structure

pub fn jacobi_residual(alg: &MatrixAlgebra, samples: usize, rng: &mut ChaCha8Rng) -> f64 {
    let n = alg.dim();
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        let t1 = &alg.ad[i] * alg.ad[j].column(k);
        let t2 = &alg.ad[j] * alg.ad[k].column(i);
        let t3 = &alg.ad[k] * alg.ad[i].column(j);
        worst = worst.max((t1 + t2 + t3).amax());
    }
    worst
}

pub fn ad_invariance_residual(alg: &MatrixAlgebra, samples: usize, rng: &mut ChaCha8Rng) -> f64 {
    let n = alg.dim();
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let x = random_unit(rng, n);
        let y = random_unit(rng, n);
        let z = random_unit(rng, n);
        let r = alg.inner(&alg.bracket(&x, &y), &z) + alg.inner(&y, &alg.bracket(&x, &z));
        worst = worst.max(r.abs());
    }
    worst
}

pub fn structure_checks(alg: &MatrixAlgebra) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let dim = alg.dim();
    let theta_sq = &alg.theta * &alg.theta - Mat::identity(dim, dim);
    vec![
        Check::measured("structure/closure", "[B_i, B_j] lies in the span of the basis", alg.closure_residual, TOL_STRUCTURE),
        Check::measured("structure/j_in_algebra", "J lies in the span of the basis", alg.j_residual, TOL_STRUCTURE),
        Check::measured("structure/j_cube", "(ad J)^3 + ad J = 0", alg.j_cube_residual(), TOL_STRUCTURE),
        Check::measured("structure/theta_involution", "theta^2 = 1", max_abs(&theta_sq), TOL_STRUCTURE),
        Check::measured("structure/k_perp_m", "<k, m> = 0", alg.k_m_orthogonality_residual(), TOL_STRUCTURE),
        Check::measured(
            "structure/jacobi",
            "[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]] = 0 on 1000 basis triples",
            jacobi_residual(alg, 1000, &mut rng),
            TOL_JACOBI,
        ),
        Check::measured(
            "structure/ad_invariance",
            "<[X,Y],Z> + <Y,[X,Z]> = 0 on 1000 random triples",
            ad_invariance_residual(alg, 1000, &mut rng),
            TOL_JACOBI,
        ),
    ]
}

// ----------------------------------------------------------------- spectrum

pub fn spectrum_checks(alg: &MatrixAlgebra, spec: &RestrictedSpectrum) -> Vec<Check> {
    let delta = RestrictedRoot::two_e(0, spec.rank);
    let name = "spectrum/normalization";
    let identity = "4/(delta, delta) = |iA_delta|^2 = d";
    match spec.pairing(alg, &delta, &delta) {
        Ok(p) => vec![Check::measured(name, identity, (4.0 / p - alg.d).abs(), TOL_NORMALIZATION)],
        Err(e) => vec![Check::failed(name, identity, &e)],
    }
}

// ---------------------------------------------------------------- J action

/// J's coefficient on the unit vector of k_{2e_i}.
pub fn j_coefficients(alg: &MatrixAlgebra, spec: &RestrictedSpectrum) -> Result<Vec<f64>> {
    (0..spec.rank)
        .map(|i| {
            let k = &spec.root(&RestrictedRoot::two_e(i, spec.rank))?.k_fiber;
            if k.ncols() != 1 {
                return Err(Error::Oracle(format!("k_2e{} has dimension {}", i + 1, k.ncols())));
            }
            Ok(alg.scale.sqrt() * alg.j.dot(&k.column(0)))
        })
        .collect()
}

pub fn verify_j_action(alg: &MatrixAlgebra, spec: &RestrictedSpectrum) -> Vec<Check> {
    let (mut long, mut middle, mut short) = (0.0_f64, 0.0_f64, 0.0_f64);
    let mut has_middle = false;
    let mut has_short = false;
    for r in &spec.roots {
        let image = &alg.ad_j * &r.m_fiber;
        match r.root.class() {
            RootClass::Long => long = long.max(outside_residual(&image, &spec.a_basis)),
            RootClass::Short => {
                has_short = true;
                short = short.max(subspace_distance(&orth(&image, SUBSPACE_TOL), &r.m_fiber));
            }
            RootClass::Middle => {
                has_middle = true;
                let partner = r.root.partner().expect("middle root");
                let target = spec.root(&partner).map(|p| p.m_fiber.clone());
                middle = middle.max(match target {
                    Ok(t) => subspace_distance(&orth(&image, SUBSPACE_TOL), &t),
                    Err(_) => 1.0,
                });
            }
        }
    }
    let mut out = vec![Check::measured("j_action/long", "ad J maps m_2e_i into a", long, TOL_J_ACTION)];
    if has_middle {
        out.push(Check::measured("j_action/middle", "ad J maps m_(e_i+e_j) onto m_(e_i-e_j)", middle, TOL_J_ACTION));
    }
    if has_short {
        out.push(Check::measured("j_action/short", "ad J preserves m_e_i", short, TOL_J_ACTION));
    }
    let identity = "|a_i| = sqrt(d)/2 for J = sum a_i S_i + C";
    match j_coefficients(alg, spec) {
        Ok(a) => {
            let target = alg.d.sqrt() / 2.0;
            let r = a.iter().map(|x| (x.abs() - target).abs()).fold(0.0, f64::max);
            out.push(Check::measured("j_action/coefficients", identity, r, TOL_J_ACTION));
        }
        Err(e) => out.push(Check::failed("j_action/coefficients", identity, &e)),
    }
    out
}

// ------------------------------------------------------ σ-planes in a fiber

/// m_λ split into σ-planes (joint eigenspaces of ad(b)² with nonzero
/// eigenvalue) and the σ-fixed part (eigenvalue zero).
#[derive(Debug, Clone)]
pub struct FiberSplit {
    pub planes: Vec<Mat>,
    pub lines: Mat,
}

pub fn toral_complement(alg: &MatrixAlgebra, spec: &RestrictedSpectrum) -> Mat {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xb);
    maximal_abelian(alg, &spec.k0, &mut rng)
}

pub fn fiber_splits(alg: &MatrixAlgebra, spec: &RestrictedSpectrum) -> Result<BTreeMap<RestrictedRoot, FiberSplit>> {
    let b = toral_complement(alg, spec);
    let ad_b: Vec<Mat> = b.column_iter().map(|x| alg.ad_of(&x.into_owned())).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xf);
    let mut out = BTreeMap::new();
    for r in &spec.roots {
        let f = &r.m_fiber;
        let ops: Vec<Mat> = ad_b.iter().map(|ad| f.transpose() * ad * ad * f).collect();
        let mut planes = Vec::new();
        let mut lines = Vec::new();
        for (v, vals) in joint_eigenspaces(&ops, f.ncols(), &mut rng)? {
            if vals.iter().all(|x| x.abs() < 1e-8) {
                lines.push(f * v);
            } else {
                planes.push(f * v);
            }
        }
        let refs: Vec<&Mat> = lines.iter().collect();
        let lines = if refs.is_empty() { Mat::zeros(alg.dim(), 0) } else { hcat(&refs) };
        out.insert(r.root.clone(), FiberSplit { planes, lines });
    }
    Ok(out)
}

pub fn sigma_structure_check(space: &SpaceDescriptor, splits: &BTreeMap<RestrictedRoot, FiberSplit>) -> Check {
    let mut bad = Vec::new();
    for (root, s) in splits {
        let fs = space.fiber_of(root);
        let two_dim = s.planes.iter().all(|p| p.ncols() == 2);
        if !two_dim || s.planes.len() as u32 != fs.n_longest_pairs || s.lines.ncols() as u32 != fs.n_shortest_fixed {
            bad.push(format!(
                "{root}: {} planes {:?}, {} fixed",
                s.planes.len(),
                s.planes.iter().map(|p| p.ncols()).collect::<Vec<_>>(),
                s.lines.ncols()
            ));
        }
    }
    Check::exact(
        "spectrum/sigma_structure",
        "each m_lambda splits into the catalog's sigma-planes and sigma-fixed lines",
        bad.is_empty(),
        (!bad.is_empty()).then(|| bad.join("; ")),
    )
}

// ------------------------------------------------------- bracket norms, Ricci

/// One measured entry: Σ over a target subspace of |[X, T]|² / d.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuredNorm {
    pub target: RestrictedRoot,
    pub relation: Option<BetaRelation>,
    pub measured: f64,
    pub expected: Option<f64>,
}

struct NormSetup {
    x: Vector,
    x_sq: f64,
    alpha: RootLength,
}

fn reference_vector(
    alg: &MatrixAlgebra,
    spec: &RestrictedSpectrum,
    space: &SpaceDescriptor,
    splits: &BTreeMap<RestrictedRoot, FiberSplit>,
) -> Result<NormSetup> {
    let reference = reference_root(space);
    let alpha = reference_length(space.fiber_of(&reference));
    let s = splits.get(&reference).ok_or_else(|| Error::Oracle(format!("no fiber over {reference}")))?;
    let u = match alpha {
        RootLength::Longest => s.planes.first().map(|p| p.column(0).into_owned()),
        RootLength::Shortest => (s.lines.ncols() > 0).then(|| s.lines.column(0).into_owned()),
    }
    .ok_or_else(|| Error::Oracle("reference fiber has no vector of the required kind".into()))?;
    let x_sq = 4.0 / (alg.scale * spec.pairing(alg, &reference, &reference)?);
    Ok(NormSetup { x: u, x_sq, alpha })
}

/// Σ_w |[X, T_w]|² over the orthonormal columns w of `target`, with T_w
/// normalized to 4/(λ,λ), as a multiple of d.
fn bracket_sum(alg: &MatrixAlgebra, spec: &RestrictedSpectrum, setup: &NormSetup, lambda: &RestrictedRoot, target: &Mat) -> Result<f64> {
    let y_sq = 4.0 / (alg.scale * spec.pairing(alg, lambda, lambda)?);
    let ad_x = alg.ad_of(&setup.x);
    let raw: f64 = (&ad_x * target).column_iter().map(|c| c.norm_squared()).sum();
    Ok(alg.scale * setup.x_sq * y_sq * raw / alg.d)
}

fn per_vector(alpha: RootLength, rel: BetaRelation) -> Option<f64> {
    norm_value(alpha, rel).map(|v| to_f64(&v))
}

pub fn bracket_norms(
    alg: &MatrixAlgebra,
    spec: &RestrictedSpectrum,
    space: &SpaceDescriptor,
    splits: &BTreeMap<RestrictedRoot, FiberSplit>,
) -> Result<Vec<MeasuredNorm>> {
    use BetaRelation::*;
    let setup = reference_vector(alg, spec, space, splits)?;
    let reference = reference_root(space);
    let alpha = setup.alpha;
    let mut out = Vec::new();

    if space.rank == 1 {
        let fiber = &spec.root(&reference)?.m_fiber;
        let jx = &alg.ad_j * &setup.x;
        let jx = &jx / jx.norm();
        let partner = Mat::from_columns(std::slice::from_ref(&jx));
        let rest = orth(&project_out(fiber, &hcat(&[&Mat::from_columns(std::slice::from_ref(&setup.x)), &partner])), SUBSPACE_TOL);
        out.push(MeasuredNorm {
            target: reference.clone(),
            relation: Some(RankOneJPartner),
            measured: bracket_sum(alg, spec, &setup, &reference, &partner)?,
            expected: per_vector(alpha, RankOneJPartner),
        });
        out.push(MeasuredNorm {
            target: reference.clone(),
            relation: Some(RankOneOther),
            measured: bracket_sum(alg, spec, &setup, &reference, &rest)?,
            expected: per_vector(alpha, RankOneOther).map(|v| v * rest.ncols() as f64),
        });
        return Ok(out);
    }

    let opposite = reference.partner().expect("reference is e1+e2");
    for lambda in polar_roots(space) {
        let split = &splits[&lambda];
        let mut opposite_planes = Vec::new();
        for (idx, plane) in split.planes.iter().enumerate() {
            let k = plane.ncols() as f64 / 2.0;
            let measured = bracket_sum(alg, spec, &setup, &lambda, plane)?;
            let (relation, expected) = if lambda == reference {
                match alpha {
                    RootLength::Longest if idx == 0 => {
                        // X's own plane: the σ-partner plus k−1 further pairs.
                        let v = per_vector(alpha, SameFiberPartner)
                            .zip(per_vector(alpha, SameFiberOtherLongest))
                            .map(|(p, o)| p + o * 2.0 * (k - 1.0));
                        (Some(SameFiberPartner), v)
                    }
                    RootLength::Longest => (Some(SameFiberOtherLongest), per_vector(alpha, SameFiberOtherLongest).map(|v| v * 2.0 * k)),
                    RootLength::Shortest => (Some(SameFiberOtherLength), per_vector(alpha, SameFiberOtherLength).map(|v| v * 2.0 * k)),
                }
            } else if lambda == opposite {
                match alpha {
                    RootLength::Longest => {
                        opposite_planes.push(measured);
                        continue;
                    }
                    RootLength::Shortest => (Some(CrossLength), per_vector(alpha, CrossLength).map(|v| v * 2.0 * k)),
                }
            } else if lambda.class() == RootClass::Short {
                (Some(E1FiberLongest), per_vector(alpha, E1FiberLongest).map(|v| v * 2.0 * k))
            } else {
                match alpha {
                    RootLength::Longest => (Some(DiffFiberLongest), per_vector(alpha, DiffFiberLongest).map(|v| v * 2.0 * k)),
                    RootLength::Shortest => (None, None),
                }
            };
            out.push(MeasuredNorm { target: lambda.clone(), relation, measured, expected });
        }
        if !opposite_planes.is_empty() {
            // One pair carries the whole sum; the rest bracket to zero.
            let mut sorted = opposite_planes.clone();
            sorted.sort_by(|a, b| b.total_cmp(a));
            out.push(MeasuredNorm {
                target: lambda.clone(),
                relation: Some(OppositeFiberLongestPairSum),
                measured: sorted[0],
                expected: per_vector(alpha, OppositeFiberLongestPairSum),
            });
            for &m in &sorted[1..] {
                out.push(MeasuredNorm {
                    target: lambda.clone(),
                    relation: Some(OppositeFiberOrthogonal),
                    measured: m,
                    expected: per_vector(alpha, OppositeFiberOrthogonal).map(|v| v * 2.0),
                });
            }
        }
        if split.lines.ncols() > 0 {
            let measured_each: Vec<f64> = split
                .lines
                .column_iter()
                .map(|c| bracket_sum(alg, spec, &setup, &lambda, &Mat::from_columns(&[c.into_owned()])))
                .collect::<Result<_>>()?;
            let (relation, per) = if lambda == reference {
                match alpha {
                    RootLength::Longest => (Some(SameFiberOtherLength), per_vector(alpha, SameFiberOtherLength)),
                    RootLength::Shortest => (None, Some(0.0)),
                }
            } else if lambda == opposite {
                match alpha {
                    RootLength::Longest => (Some(CrossLength), per_vector(alpha, CrossLength)),
                    RootLength::Shortest => (Some(OppositeFiberShortest), per_vector(alpha, OppositeFiberShortest)),
                }
            } else {
                match alpha {
                    RootLength::Shortest => (Some(DiffFiberShortest), per_vector(alpha, DiffFiberShortest)),
                    RootLength::Longest => (None, None),
                }
            };
            // σ-fixed vectors in one fiber are only defined up to rotation,
            // so compare their sum.
            out.push(MeasuredNorm {
                target: lambda.clone(),
                relation,
                measured: measured_each.iter().sum(),
                expected: per.map(|v| v * measured_each.len() as f64),
            });
        }
    }
    Ok(out)
}

/// Ricci curvature of the polar on the reference direction, summed over an
/// orthonormal basis of m₁⁺.
pub fn ricci_polar_numeric(
    alg: &MatrixAlgebra,
    spec: &RestrictedSpectrum,
    space: &SpaceDescriptor,
    splits: &BTreeMap<RestrictedRoot, FiberSplit>,
) -> Result<f64> {
    let setup = reference_vector(alg, spec, space, splits)?;
    let roots = polar_roots(space);
    let basis = spec.m_sum(roots.iter())?;
    // Scaling the metric by 1/(d+1) rescales the orthonormal basis by
    // √(d+1) and the inner product by 1/(d+1); both are kept explicit.
    let factor = 1.0 + alg.d;
    let ad_x = alg.ad_of(&setup.x);
    let mut total = 0.0;
    for v in basis.column_iter() {
        let d_i = v.into_owned() * (factor / alg.scale).sqrt();
        let br = &ad_x * d_i * setup.x_sq.sqrt();
        total += alg.scale * br.norm_squared() / factor;
    }
    Ok(total)
}

pub fn einstein_checks(alg: &MatrixAlgebra, spec: &RestrictedSpectrum, space: &SpaceDescriptor, d: Rational) -> Vec<Check> {
    let splits = match fiber_splits(alg, spec) {
        Ok(s) => s,
        Err(e) => return vec![Check::failed("spectrum/sigma_structure", "sigma-planes from ad(b)^2", &e)],
    };
    let mut out = vec![sigma_structure_check(space, &splits)];

    match bracket_norms(alg, spec, space, &splits) {
        Ok(norms) => {
            let mut by_relation: BTreeMap<String, (f64, usize)> = BTreeMap::new();
            let mut unmatched = Vec::new();
            for m in &norms {
                match (m.relation, m.expected) {
                    (rel, Some(exp)) => {
                        // No relation: the reference vector's own line, where [X, X] = 0.
                        let key = rel.map_or_else(|| "ReferenceSelf".to_string(), |r| format!("{r:?}"));
                        let e = by_relation.entry(key).or_insert((0.0, 0));
                        e.0 = e.0.max((m.measured - exp).abs());
                        e.1 += 1;
                    }
                    _ => unmatched.push(format!("{} ({:.6})", m.target, m.measured)),
                }
            }
            for (rel, (r, count)) in by_relation {
                out.push(
                    Check::measured(
                        format!("bracket_norm/{rel}"),
                        "sum over the target subspace of |[T_alpha, T_beta]|^2 / d equals the table value",
                        r,
                        TOL_BRACKET,
                    )
                    .with_note(format!("{count} subspaces")),
                );
            }
            if !unmatched.is_empty() {
                out.push(Check::exact(
                    "bracket_norm/unclassified",
                    "every measured subspace has a table entry",
                    false,
                    Some(unmatched.join(", ")),
                ));
            }
            if space.rank >= 2 {
                let mut worst: f64 = 0.0;
                let mut err = None;
                for lambda in polar_roots(space) {
                    let measured: f64 = norms.iter().filter(|m| m.target == lambda).map(|m| m.measured).sum();
                    match fiber_norm_sum(space, &lambda) {
                        Ok(v) => worst = worst.max((measured - to_f64(&v)).abs()),
                        Err(e) => err = Some(e),
                    }
                }
                out.push(match err {
                    None => Check::measured(
                        "bracket_norm/fiber_totals",
                        "sum over m_lambda of |[T_alpha, T_beta]|^2 / d equals the symbolic fiber sum",
                        worst,
                        TOL_BRACKET,
                    ),
                    Some(e) => Check::failed("bracket_norm/fiber_totals", "symbolic fiber sum", &e),
                });
            }
        }
        Err(e) => out.push(Check::failed("bracket_norm", "table of |[T_alpha, T_beta]|^2", &e)),
    }

    let identity = "sum over an orthonormal basis D_i of m1+ of |[D_i, X]|^2 equals the symbolic r+(X, X)";
    match (ricci_polar_numeric(alg, spec, space, &splits), ricci_diagonal_at(space, d)) {
        (Ok(num), Ok(sym)) => {
            out.push(Check::measured("ricci/polar", identity, (num - to_f64(&sym)).abs(), TOL_RICCI).with_note(format!(
                "measured {num:.12}, symbolic {}",
                crate::rational::format(&sym)
            )))
        }
        (Err(e), _) | (_, Err(e)) => out.push(Check::failed("ricci/polar", identity, &e)),
    }
    out
}

// ---------------------------------------------------------- orbit geometry

/// Tangent data of the orbit through exp(H)·o, transported back to o.
#[derive(Debug, Clone)]
pub struct OrbitFrame {
    /// exp(−ad H).
    pub e: Mat,
    /// Orthonormal basis of T_xN pulled back into m.
    pub tangent: Mat,
    /// Orthonormal basis of the normal space in m.
    pub normal: Mat,
    /// The J-invariant part of the tangent space.
    pub complex: Mat,
}

pub fn orbit_frame(alg: &MatrixAlgebra, h: &Vector) -> OrbitFrame {
    let e = exp_skew(&alg.ad_of(h), -1.0);
    let pm = &alg.m_basis * alg.m_basis.transpose();
    let tangent = orth(&(&pm * &e * &alg.k_basis), SUBSPACE_TOL);
    let normal = orth(&project_out(&alg.m_basis, &tangent), 1e-6);
    let coupling = normal.transpose() * &alg.ad_j * &tangent;
    let complex = orth(&(&tangent * null_space(&coupling, SUBSPACE_TOL)), 1e-6);
    OrbitFrame { e, tangent, normal, complex }
}

impl OrbitFrame {
    /// An element Y ∈ k whose Killing field takes the value w at x.
    pub fn killing_preimage(&self, alg: &MatrixAlgebra, w: &Vector) -> Vector {
        let a = alg.m_basis.transpose() * &self.e * &alg.k_basis;
        let gram = &a * a.transpose();
        let eig = nalgebra::SymmetricEigen::new((&gram + gram.transpose()) * 0.5);
        let rhs = alg.m_basis.transpose() * w;
        let top = eig.eigenvalues.amax().max(1.0);
        let mut z = Vector::zeros(rhs.len());
        for (i, &lam) in eig.eigenvalues.iter().enumerate() {
            if lam > 1e-12 * top {
                let v = eig.eigenvectors.column(i);
                z += v * (v.dot(&rhs) / lam);
            }
        }
        &alg.k_basis * (a.transpose() * z)
    }

    /// Second fundamental form h(v, w) in algebra coordinates.
    pub fn second_fundamental_form(&self, alg: &MatrixAlgebra, v: &Vector, w: &Vector) -> Vector {
        let y = self.killing_preimage(alg, w);
        let ey = &self.e * y;
        let ey_k = &alg.k_basis * (alg.k_basis.transpose() * &ey);
        let br = alg.bracket(v, &ey_k);
        -(&self.normal * (self.normal.transpose() * br))
    }
}

/// Identities along C₀(t) with ξ the unit vector of m_2e1.
pub fn curvature_checks(
    alg: &MatrixAlgebra,
    spec: &RestrictedSpectrum,
    space: &SpaceDescriptor,
    d: Rational,
    t: f64,
) -> Result<(Vec<Check>, f64)> {
    let n = spec.rank;
    let mut coords = vec![0.0; n];
    coords[0] = t / 2.0;
    let frame = orbit_frame(alg, &spec.point_at(&coords));
    let tag = format!("t={t:.6}");
    let s = alg.scale;
    let xi = spec.root(&RestrictedRoot::two_e(0, n))?.m_fiber.column(0).into_owned();

    // The symbolic split at C₀(t) is the same for every t in (0, 1).
    let sample = OrbitPoint::segment(0, rat(1, 2), n)?;
    let split = cr_split(space, &sample)?;
    let active: Vec<RestrictedRoot> = split.complex.iter().chain(split.real.iter()).cloned().collect();
    let mut out = vec![
        Check::measured(
            format!("orbit/tangent_space {tag}"),
            "the tangent space at exp(H)o is the sum of m_lambda over active roots",
            subspace_distance(&frame.tangent, &spec.m_sum(active.iter())?),
            TOL_CURVATURE,
        ),
        Check::measured(
            format!("orbit/complex_part {tag}"),
            "the J-invariant part of the tangent space is the sum over complex roots",
            subspace_distance(&frame.complex, &spec.m_sum(split.complex.iter())?),
            TOL_CURVATURE,
        ),
    ];

    let big_t = &xi * (alg.d / s).sqrt();
    let mut double = 0.0_f64;
    let mut eigen = 0.0_f64;
    let mut k_dev = 0.0_f64;
    let mut sym = 0.0_f64;
    let k_expected = k_constant(d, t)?;
    let h_xx = frame.second_fundamental_form(alg, &xi, &xi);
    let mut k_first = f64::NAN;
    for y in frame.complex.column_iter() {
        let y = y.into_owned();
        let lhs = alg.bracket(&alg.bracket(&y, &big_t), &big_t);
        double = double.max((lhs + &y).amax());
        let yx = alg.bracket(&y, &xi);
        eigen = eigen.max((yx.norm_squared() / s - 1.0 / alg.d).abs());
        let h_yx = frame.second_fundamental_form(alg, &y, &xi);
        let h_xy = frame.second_fundamental_form(alg, &xi, &y);
        sym = sym.max((&h_yx - &h_xy).amax());
        let h_yy = frame.second_fundamental_form(alg, &y, &y);
        let k_num = (yx.norm_squared() - h_yx.norm_squared() + h_yy.dot(&h_xx)) / s;
        if k_first.is_nan() {
            k_first = k_num;
        }
        k_dev = k_dev.max((k_num - k_expected).abs());
    }
    let mut projection = 0.0_f64;
    let cols: Vec<Vector> = frame.complex.column_iter().map(|c| c.into_owned()).collect();
    for (i, yi) in cols.iter().enumerate() {
        let inner = alg.bracket(yi, &xi);
        for (j, yj) in cols.iter().enumerate() {
            let v = alg.bracket(&inner, yj);
            let proj = &frame.tangent * (frame.tangent.transpose() * v);
            let want = if i == j { &xi * (s / alg.d) } else { Vector::zeros(xi.len()) };
            projection = projection.max((proj - want).amax());
        }
    }
    out.push(Check::measured(
        format!("curvature/double_bracket {tag}"),
        "[[Y, T], T] = -Y for Y in D and T in m_2e1 with |T|^2 = d",
        double,
        TOL_CURVATURE,
    ));
    out.push(Check::measured(
        format!("curvature/tangent_projection {tag}"),
        "[[Y_i, xi], Y_j] projected to the tangent space = delta_ij (1/d) xi for unit vectors",
        projection,
        TOL_CURVATURE,
    ));
    out.push(Check::measured(
        format!("curvature/sectional {tag}"),
        "<R(Y, xi) xi, Y> = 1/d for unit Y in D",
        eigen,
        TOL_CURVATURE,
    ));
    out.push(Check::measured(
        format!("orbit/second_form_symmetry {tag}"),
        "h(Y, xi) = h(xi, Y)",
        sym,
        TOL_CURVATURE,
    ));
    out.push(
        Check::measured(
            format!("curvature/gauss_k {tag}"),
            "Gauss equation gives <R_N(Y, xi) xi, Y> = (1/d)(1 + 2 cot(t pi/2) cot(t pi))",
            k_dev,
            TOL_CURVATURE,
        )
        .with_note(format!("k = {k_expected:.12}")),
    );
    Ok((out, k_first))
}

pub fn curvature_suite(alg: &MatrixAlgebra, spec: &RestrictedSpectrum, space: &SpaceDescriptor, d: Rational) -> Vec<Check> {
    let mut ts = vec![1.0 / 3.0, 0.5, 2.0 / 3.0];
    match sasaki_parameter(d) {
        Ok(p) => ts.push(p.t),
        Err(e) => return vec![Check::failed("curvature", "Sasaki parameter", &e)],
    }
    let mut out = Vec::new();
    for t in ts {
        match curvature_checks(alg, spec, space, d, t) {
            Ok((c, _)) => out.extend(c),
            Err(e) => out.push(Check::failed(format!("curvature t={t:.6}"), "curvature identities", &e)),
        }
    }
    out
}

// ------------------------------------------------------------------ contact

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContactRank {
    pub rank: usize,
    pub dim: usize,
    pub indeterminate: bool,
}

impl ContactRank {
    pub fn full(&self) -> bool {
        self.rank == self.dim
    }
}

/// Rank of X, Y ↦ ⟨[S̄, X], Y⟩ on the sum of k_λ over complex roots, with
/// S̄ spanning k_{2e_{i+1}} for H = C_i(t).
pub fn contact_rank(spec: &RestrictedSpectrum, alg: &MatrixAlgebra, space: &SpaceDescriptor, h: &OrbitPoint) -> Result<ContactRank> {
    let status = contact_status(space, h)?;
    let seg = status
        .segment
        .ok_or_else(|| Error::InvalidParameter(format!("{h} is not on an open segment C_i(t)")))?;
    let split = cr_split(space, h)?;
    let kd = spec.k_sum(split.complex.iter())?;
    let s_bar = spec.root(&RestrictedRoot::two_e(seg.i, space.rank))?.k_fiber.column(0).into_owned();
    let form = kd.transpose() * alg.ad_of(&s_bar) * &kd;
    let size = form.amax().max(1e-300);
    let rank_at = |rel: f64| orth(&form, rel * size).ncols();
    let rank = rank_at(1e-8);
    Ok(ContactRank { rank, dim: kd.ncols(), indeterminate: rank_at(1e-10) != rank_at(1e-6) })
}

pub fn contact_suite(alg: &MatrixAlgebra, spec: &RestrictedSpectrum, space: &SpaceDescriptor) -> Vec<Check> {
    let n = space.rank;
    let mut idx = vec![0];
    if n >= 2 {
        idx.push(1);
    }
    if n >= 3 {
        idx.push(n - 1);
    }
    let mut out = Vec::new();
    for i in idx {
        let name = format!("contact/rank C{i}(1/3)");
        let identity = "d eta is nondegenerate on D exactly when the orbit is contact";
        let h = match OrbitPoint::segment(i, rat(1, 3), n) {
            Ok(h) => h,
            Err(e) => {
                out.push(Check::failed(name, identity, &e));
                continue;
            }
        };
        let result = contact_rank(spec, alg, space, &h).and_then(|r| Ok((r, contact_status(space, &h)?.contact)));
        out.push(match result {
            Ok((r, symbolic)) => Check::exact(
                name,
                identity,
                !r.indeterminate && r.full() == symbolic,
                Some(format!(
                    "rank {} of {}, symbolic {}{}",
                    r.rank,
                    r.dim,
                    if symbolic { "contact" } else { "not contact" },
                    if r.indeterminate { ", indeterminate" } else { "" }
                )),
            ),
            Err(e) => Check::failed(name, identity, &e),
        });
    }
    out
}

// ------------------------------------------------------------ per-face data

/// Whether the complex distribution of the orbit is integrable, from the
/// closure of its generating subspace of k under the bracket.
pub fn distribution_closure(alg: &MatrixAlgebra, frame: &OrbitFrame) -> f64 {
    let off_d = project_out(&(&alg.m_basis * alg.m_basis.transpose()), &frame.complex);
    let map = off_d * &frame.e * &alg.k_basis;
    let kd = &alg.k_basis * null_space(&map, SUBSPACE_TOL);
    let cols: Vec<Vector> = kd.column_iter().map(|c| c.into_owned()).collect();
    let mut worst: f64 = 0.0;
    for (i, x) in cols.iter().enumerate() {
        let ad = alg.ad_of(x);
        for y in &cols[i + 1..] {
            let br = Mat::from_columns(&[&ad * y]);
            worst = worst.max(outside_residual(&br, &kd));
        }
    }
    worst
}

pub fn face_suite(alg: &MatrixAlgebra, spec: &RestrictedSpectrum, space: &SpaceDescriptor, d: Rational) -> Vec<Check> {
    let mut split_dev: f64 = 0.0;
    let mut disagreements = Vec::new();
    let mut compared = 0;
    for face in faces(space) {
        let h = &face.sample;
        let label = if face.labels().is_empty() { "origin".to_string() } else { face.labels().join(",") };
        let report = match classify(space, h, d) {
            Ok(r) => r,
            Err(e) => return vec![Check::failed("faces", "classification", &e)],
        };
        let frame = orbit_frame(alg, &spec.point(h));
        let symbolic = match spec.m_sum(report.cr_complex.iter()) {
            Ok(m) => m,
            Err(e) => return vec![Check::failed("faces", "complex part", &e)],
        };
        split_dev = split_dev.max(subspace_distance(&frame.complex, &symbolic));
        if matches!(report.cr_type, CrType::FixedPoint | CrType::TotallyRealLagrangian) {
            continue;
        }
        compared += 1;
        let r = distribution_closure(alg, &frame);
        if (1e-10..1e-6).contains(&r) {
            disagreements.push(format!("{label}: indeterminate ({r:.2e})"));
        } else if (r < 1e-8) != report.complex_dist_integrable {
            disagreements.push(format!("{label}: measured {}", if r < 1e-8 { "integrable" } else { "not integrable" }));
        }
    }
    vec![
        Check::measured(
            "faces/cr_split",
            "the J-invariant tangent part equals the sum over (Sigma_x)_C on every face",
            split_dev,
            TOL_CURVATURE,
        ),
        Check::exact(
            "faces/integrability",
            "the complex distribution is integrable exactly on the complex orbits",
            disagreements.is_empty(),
            Some(if disagreements.is_empty() {
                format!("{compared} faces compared")
            } else {
                disagreements.join("; ")
            }),
        ),
    ]
}
