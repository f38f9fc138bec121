//! Restricted root data measured from a matrix model: a maximal abelian
//! a ⊂ m, the joint eigenspaces of ad(H)² on m, and the e-basis labels.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::MatrixAlgebra;
use super::linalg::{cluster, empty, from_columns, hcat, null_space, orth, project_out, Mat, Vector};
use crate::error::{Error, Result};
use crate::rational::to_f64;
use crate::rootsys::{OrbitPoint, RestrictedRoot, RootKind};
use crate::spaces::catalog;

const SEED: u64 = 0x05ee_d0a1;
const CLUSTER_TOL: f64 = 1e-6;
const NULL_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct RootSpace {
    pub root: RestrictedRoot,
    /// λ in coordinates dual to `a_basis`.
    pub functional: Vector,
    pub multiplicity: usize,
    /// Orthonormal basis of m_λ (trace-form coordinates).
    pub m_fiber: Mat,
    /// Orthonormal basis of k_λ = [a, m_λ].
    pub k_fiber: Mat,
}

#[derive(Debug, Clone)]
pub struct RestrictedSpectrum {
    /// Orthonormal basis of a, as columns in algebra coordinates.
    pub a_basis: Mat,
    pub kind: RootKind,
    pub rank: usize,
    /// The functionals e₁…e_n on a.
    pub e: Vec<Vector>,
    pub roots: Vec<RootSpace>,
    /// Centralizer of a in k.
    pub k0: Mat,
}

impl RestrictedSpectrum {
    /// |δ|² = |2e₁|² for the unscaled trace form.
    pub fn delta_norm_sq_unscaled(&self) -> f64 {
        4.0 * self.e[0].norm_squared()
    }

    pub fn root(&self, r: &RestrictedRoot) -> Result<&RootSpace> {
        self.roots
            .iter()
            .find(|s| &s.root == r)
            .ok_or_else(|| Error::Oracle(format!("root {r} not measured")))
    }

    pub fn multiplicity(&self, r: &RestrictedRoot) -> usize {
        self.root(r).map_or(0, |s| s.multiplicity)
    }

    /// The element H ∈ a with e_j(H) = π t_j.
    pub fn point(&self, h: &OrbitPoint) -> Vector {
        let t: Vec<f64> = h.coords().iter().map(to_f64).collect();
        self.point_at(&t)
    }

    /// Same as [`point`](Self::point) for real coordinates.
    pub fn point_at(&self, t: &[f64]) -> Vector {
        let mut ha = Vector::zeros(self.rank);
        for (e, &t) in self.e.iter().zip(t) {
            ha += e * (PI * t / e.norm_squared());
        }
        &self.a_basis * ha
    }

    /// Orthonormal basis of ⊕ m_λ over the given roots.
    pub fn m_sum<'a>(&self, roots: impl IntoIterator<Item = &'a RestrictedRoot>) -> Result<Mat> {
        let blocks: Vec<Mat> = roots.into_iter().map(|r| self.root(r).map(|s| s.m_fiber.clone())).collect::<Result<_>>()?;
        let refs: Vec<&Mat> = blocks.iter().collect();
        Ok(if refs.is_empty() { empty(self.a_basis.nrows()) } else { hcat(&refs) })
    }

    /// Orthonormal basis of ⊕ k_λ over the given roots.
    pub fn k_sum<'a>(&self, roots: impl IntoIterator<Item = &'a RestrictedRoot>) -> Result<Mat> {
        let blocks: Vec<Mat> = roots.into_iter().map(|r| self.root(r).map(|s| s.k_fiber.clone())).collect::<Result<_>>()?;
        let refs: Vec<&Mat> = blocks.iter().collect();
        Ok(if refs.is_empty() { empty(self.a_basis.nrows()) } else { hcat(&refs) })
    }

    /// (λ, μ) for the algebra's scaled metric.
    pub fn pairing(&self, alg: &MatrixAlgebra, l: &RestrictedRoot, m: &RestrictedRoot) -> Result<f64> {
        Ok(self.root(l)?.functional.dot(&self.root(m)?.functional) / alg.scale)
    }
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vector {
    let v = Vector::from_fn(dim, |_, _| rng.gen_range(-1.0..1.0));
    let n = v.norm();
    v / n
}

fn vstack(blocks: &[Mat]) -> Mat {
    let cols = blocks.first().map_or(0, |b| b.ncols());
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = Mat::zeros(rows, cols);
    let mut r = 0;
    for b in blocks {
        out.rows_mut(r, b.nrows()).copy_from(b);
        r += b.nrows();
    }
    out
}

/// Elements of span(sub) commuting with every column of `with`.
pub fn centralizer_in(alg: &MatrixAlgebra, with: &Mat, sub: &Mat) -> Mat {
    if with.ncols() == 0 {
        return sub.clone();
    }
    let blocks: Vec<Mat> = with.column_iter().map(|x| alg.ad_of(&x.into_owned()) * sub).collect();
    let ns = null_space(&vstack(&blocks), NULL_TOL);
    orth(&(sub * ns), NULL_TOL)
}

/// Greedy maximal abelian subspace of span(sub): repeatedly add a random
/// element of the centralizer of what has been chosen so far.
pub fn maximal_abelian(alg: &MatrixAlgebra, sub: &Mat, rng: &mut ChaCha8Rng) -> Mat {
    let mut a = empty(alg.dim());
    loop {
        let cand = centralizer_in(alg, &a, sub);
        let rest = orth(&project_out(&cand, &a), NULL_TOL);
        if rest.ncols() == 0 {
            return a;
        }
        let x = &rest * random_unit(rng, rest.ncols());
        a = orth(&hcat(&[&a, &Mat::from_columns(&[x])]), NULL_TOL);
    }
}

/// Joint eigenspaces of commuting symmetric matrices, with each
/// operator's eigenvalue on every space.
pub fn joint_eigenspaces(ops: &[Mat], dim: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(Mat, Vec<f64>)>> {
    if ops.is_empty() || dim == 0 {
        return Ok(vec![(Mat::identity(dim, dim), vec![0.0; ops.len()])]);
    }
    let size = ops.iter().map(|o| o.abs().max()).fold(1.0, f64::max);
    'attempt: for _ in 0..8 {
        let mut comb = Mat::zeros(dim, dim);
        for o in ops {
            comb += o * rng.gen_range(0.5..1.5);
        }
        let comb = (&comb + comb.transpose()) * 0.5;
        let eig = nalgebra::SymmetricEigen::new(comb);
        let values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        let groups = cluster(&values, CLUSTER_TOL * size);
        let means: Vec<f64> = groups.iter().map(|g| g.iter().map(|&i| values[i]).sum::<f64>() / g.len() as f64).collect();
        if means.windows(2).any(|w| (w[1] - w[0]).abs() < 1e3 * CLUSTER_TOL * size) {
            continue;
        }
        let mut out = Vec::new();
        for g in groups {
            let cols: Vec<Vector> = g.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect();
            let v = from_columns(dim, &cols);
            let mut vals = Vec::new();
            for o in ops {
                let restricted = v.transpose() * o * &v;
                let mean = restricted.trace() / g.len() as f64;
                let resid = o * &v - &v * mean;
                if resid.abs().max() > 1e-7 * size {
                    continue 'attempt;
                }
                vals.push(mean);
            }
            out.push((v, vals));
        }
        return Ok(out);
    }
    Err(Error::Oracle("clustering ambiguity in joint diagonalization".into()))
}

/// Measures the restricted root data without consulting the catalog.
pub fn measure(alg: &MatrixAlgebra) -> Result<RestrictedSpectrum> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let m = &alg.m_basis;
    let a = maximal_abelian(alg, m, &mut rng);
    let rank = a.ncols();
    if rank == 0 {
        return Err(Error::Oracle("empty maximal abelian subspace".into()));
    }
    let ad_h: Vec<Mat> = a.column_iter().map(|h| alg.ad_of(&h.into_owned())).collect();
    let ops: Vec<Mat> = ad_h.iter().map(|ad| m.transpose() * ad * ad * m).collect();
    let spaces = joint_eigenspaces(&ops, m.ncols(), &mut rng)?;

    let mut raw: Vec<(Vector, Mat)> = Vec::new();
    let mut zero_dim = 0;
    for (v, vals) in spaces {
        if vals.iter().all(|x| x.abs() < 1e-8) {
            zero_dim += v.ncols();
            continue;
        }
        let fiber = m * v;
        let k = fiber.ncols() as f64;
        let gram = Mat::from_fn(rank, rank, |i, j| -(fiber.transpose() * &ad_h[i] * &ad_h[j] * &fiber).trace() / k);
        let p = (0..rank).max_by(|&i, &j| gram[(i, i)].total_cmp(&gram[(j, j)])).unwrap();
        let lp = gram[(p, p)].sqrt();
        let lambda = Vector::from_fn(rank, |j, _| gram[(p, j)] / lp);
        if (&gram - &lambda * lambda.transpose()).abs().max() > 1e-8 * gram[(p, p)] {
            return Err(Error::Oracle("root Gram matrix is not rank one".into()));
        }
        raw.push((lambda, fiber));
    }
    if zero_dim != rank {
        return Err(Error::Oracle(format!("zero eigenspace has dimension {zero_dim}, expected {rank}")));
    }

    let max_norm = raw.iter().map(|(l, _)| l.norm_squared()).fold(0.0, f64::max);
    let e: Vec<Vector> = raw
        .iter()
        .filter(|(l, _)| (l.norm_squared() - max_norm).abs() < 1e-6 * max_norm)
        .map(|(l, _)| l / 2.0)
        .collect();
    if e.len() != rank {
        return Err(Error::Oracle(format!("found {} long roots in rank {rank}", e.len())));
    }

    let mut roots: Vec<RootSpace> = Vec::new();
    for (lambda, fiber) in raw {
        let coeffs: Vec<f64> = e.iter().map(|ej| lambda.dot(ej) / ej.norm_squared()).collect();
        if coeffs.iter().any(|c| (c - c.round()).abs() > 1e-6) {
            return Err(Error::Oracle(format!("non-integral root coordinates {coeffs:?}")));
        }
        let mut root = RestrictedRoot::new(coeffs.iter().map(|c| c.round() as i64).collect())
            .map_err(|e| Error::Oracle(format!("measured vector is not a C/BC root: {e}")))?;
        let mut functional = lambda;
        if !root.is_positive() {
            root = root.neg();
            functional = -functional;
        }
        if roots.iter().any(|r| r.root == root) {
            return Err(Error::Oracle(format!("root {root} measured twice")));
        }
        let h = &a * &functional;
        let k_fiber = orth(&(alg.ad_of(&h) * &fiber), NULL_TOL);
        roots.push(RootSpace { root, functional, multiplicity: fiber.ncols(), m_fiber: fiber, k_fiber });
    }
    roots.sort_by(|x, y| x.root.cmp(&y.root));
    let kind = if roots.iter().any(|r| r.root.class() == crate::rootsys::RootClass::Short) {
        RootKind::BC
    } else {
        RootKind::C
    };
    let k0 = centralizer_in(alg, &a, &alg.k_basis);
    Ok(RestrictedSpectrum { a_basis: a, kind, rank, e, roots, k0 })
}

/// Measures the spectrum and checks it against the catalog entry.
pub fn restricted_spectrum(alg: &MatrixAlgebra) -> Result<RestrictedSpectrum> {
    let s = measure(alg)?;
    let space = catalog(alg.family)?;
    if s.rank != space.rank {
        return Err(Error::Oracle(format!("dim a = {} but catalog rank is {}", s.rank, space.rank)));
    }
    if s.kind != space.restricted_kind {
        return Err(Error::Oracle(format!("measured type {:?}, catalog {:?}", s.kind, space.restricted_kind)));
    }
    for r in space.positive_roots() {
        let want = space.multiplicity(&r) as usize;
        let got = s.multiplicity(&r);
        if want != got {
            return Err(Error::Oracle(format!("m({r}) measured {got}, catalog {want}")));
        }
    }
    let total: usize = s.roots.iter().map(|r| r.multiplicity).sum::<usize>() + s.rank;
    if total != alg.m_basis.ncols() {
        return Err(Error::Oracle(format!("multiplicities sum to {total}, dim m = {}", alg.m_basis.ncols())));
    }
    Ok(s)
}
