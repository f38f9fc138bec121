//! Explicit compact matrix Lie algebras with a distinguished element J,
//! structure constants in an orthonormal basis, and the Cartan splitting.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::linalg::{exp_skew, from_columns, max_abs, Mat, Vector};
use crate::error::{Error, Result};
use crate::spaces::Family;

pub type CMat = DMatrix<Complex64>;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Re tr(X Y*), which is −tr(XY) on anti-Hermitian matrices.
pub fn trace_inner(x: &CMat, y: &CMat) -> f64 {
    x.iter().zip(y.iter()).map(|(a, b)| (a * b.conj()).re).sum()
}

fn unit(size: usize, a: usize, b: usize, z: Complex64) -> CMat {
    let mut m = CMat::zeros(size, size);
    m[(a, b)] += z;
    m
}

fn skew_real(size: usize, a: usize, b: usize) -> CMat {
    unit(size, a, b, ONE) - unit(size, b, a, ONE)
}

fn sym_imag(size: usize, a: usize, b: usize) -> CMat {
    unit(size, a, b, I) + unit(size, b, a, I)
}

fn su_span(n: usize) -> Vec<CMat> {
    let mut v = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            v.push(skew_real(n, a, b));
            v.push(sym_imag(n, a, b));
        }
    }
    for a in 0..n - 1 {
        v.push(unit(n, a, a, I) - unit(n, a + 1, a + 1, I));
    }
    v
}

fn so_span(n: usize) -> Vec<CMat> {
    let mut v = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            v.push(skew_real(n, a, b));
        }
    }
    v
}

fn u_span(n: usize) -> Vec<CMat> {
    let mut v = su_span(n);
    v.push(unit(n, 0, 0, I));
    v
}

/// sp(n) inside u(2n): blocks [[A, B], [−B̄, Ā]], A ∈ u(n), B symmetric.
fn sp_span(n: usize) -> Vec<CMat> {
    let size = 2 * n;
    let embed = |a: &CMat, b: &CMat| {
        let mut m = CMat::zeros(size, size);
        m.view_mut((0, 0), (n, n)).copy_from(a);
        m.view_mut((n, n), (n, n)).copy_from(&a.map(|z| z.conj()));
        m.view_mut((0, n), (n, n)).copy_from(b);
        m.view_mut((n, 0), (n, n)).copy_from(&b.map(|z| -z.conj()));
        m
    };
    let zero = CMat::zeros(n, n);
    let mut v: Vec<CMat> = u_span(n).iter().map(|a| embed(a, &zero)).collect();
    for a in 0..n {
        for b in a..n {
            let s = if a == b { unit(n, a, a, ONE) } else { unit(n, a, b, ONE) + unit(n, b, a, ONE) };
            v.push(embed(&zero, &s));
            v.push(embed(&zero, &s.map(|z| z * I)));
        }
    }
    v
}

/// Modified Gram–Schmidt (two passes) under the trace inner product.
fn orthonormalize(span: Vec<CMat>) -> Vec<CMat> {
    let mut basis: Vec<CMat> = Vec::new();
    for mut x in span {
        for _ in 0..2 {
            for b in &basis {
                let c = trace_inner(&x, b);
                x -= b.map(|z| z * c);
            }
        }
        let norm = trace_inner(&x, &x).sqrt();
        if norm > 1e-10 {
            basis.push(x.map(|z| z / norm));
        }
    }
    basis
}

fn model(family: Family) -> Result<(Vec<CMat>, CMat)> {
    match family {
        Family::Grassmannian { k, n } => {
            let (k, n) = (k as usize, n as usize);
            let mut j = CMat::zeros(n, n);
            for a in 0..n {
                let v = if a < k { (n - k) as f64 / n as f64 } else { -(k as f64) / n as f64 };
                j[(a, a)] = I * v;
            }
            Ok((su_span(n), j))
        }
        Family::OrientedGrassmannian { n } => {
            let n = n as usize;
            Ok((so_span(n), skew_real(n, 0, 1)))
        }
        Family::SoQuotient { n } => {
            let size = 2 * n as usize;
            let mut j = CMat::zeros(size, size);
            for a in 0..n as usize {
                j += skew_real(size, 2 * a, 2 * a + 1).map(|z| z * 0.5);
            }
            Ok((so_span(size), j))
        }
        Family::SpQuotient { n } => {
            let n = n as usize;
            let mut j = CMat::zeros(2 * n, 2 * n);
            for a in 0..2 * n {
                j[(a, a)] = I * if a < n { 0.5 } else { -0.5 };
            }
            Ok((sp_span(n), j))
        }
        Family::EIII | Family::EVII => {
            Err(Error::Unsupported(format!("{} has no matrix model", family.name())))
        }
    }
}

/// A compact matrix Lie algebra in an orthonormal basis of the trace form.
/// Vectors are coordinate columns; the metric is `scale` times the dot product.
#[derive(Debug, Clone)]
pub struct MatrixAlgebra {
    pub family: Family,
    pub matrix_size: usize,
    pub basis: Vec<CMat>,
    /// ad of each basis element: `ad[i][(k, j)] = ⟨[B_i, B_j], B_k⟩`.
    pub ad: Vec<Mat>,
    pub j: Vector,
    pub ad_j: Mat,
    pub theta: Mat,
    pub k_basis: Mat,
    pub m_basis: Mat,
    /// Target metric parameter.
    pub d: f64,
    /// Metric = scale · (trace form); fixed by the measured highest root.
    pub scale: f64,
    /// Largest coefficient error when expanding commutators in the basis.
    pub closure_residual: f64,
    /// Distance of J from the span of the basis.
    pub j_residual: f64,
}

impl MatrixAlgebra {
    /// Builds the model and fixes `scale` so that |iA_δ|² = d.
    pub fn build(family: Family, d: f64) -> Result<Self> {
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::InvalidParameter(format!("d = {d} must be positive")));
        }
        let mut alg = Self::build_unscaled(family)?;
        let spectrum = super::spectrum::measure(&alg)?;
        let delta_sq = spectrum.delta_norm_sq_unscaled();
        if delta_sq.is_nan() || delta_sq <= 1e-12 {
            return Err(Error::Oracle("normalization failed: degenerate highest root".into()));
        }
        alg.d = d;
        alg.scale = delta_sq * d / 4.0;
        Ok(alg)
    }

    /// The model with the bare trace form (scale 1).
    pub fn build_unscaled(family: Family) -> Result<Self> {
        let (span, j_mat) = model(family)?;
        let matrix_size = j_mat.nrows();
        if matrix_size > 12 {
            return Err(Error::Unsupported(format!("matrix size {matrix_size} exceeds 12")));
        }
        let basis = orthonormalize(span);
        let dim = basis.len();

        let coords = |x: &CMat| Vector::from_iterator(dim, basis.iter().map(|b| trace_inner(x, b)));
        let mut closure_residual: f64 = 0.0;
        let mut ad = vec![Mat::zeros(dim, dim); dim];
        for i in 0..dim {
            for jx in 0..dim {
                let c = &basis[i] * &basis[jx] - &basis[jx] * &basis[i];
                let v = coords(&c);
                let mut rebuilt = CMat::zeros(matrix_size, matrix_size);
                for (k, b) in basis.iter().enumerate() {
                    rebuilt += b.map(|z| z * v[k]);
                }
                closure_residual = closure_residual.max((c - rebuilt).iter().fold(0.0_f64, |m, z| m.max(z.norm())));
                ad[i].set_column(jx, &v);
            }
        }

        let j = coords(&j_mat);
        let mut j_rebuilt = CMat::zeros(matrix_size, matrix_size);
        for (k, b) in basis.iter().enumerate() {
            j_rebuilt += b.map(|z| z * j[k]);
        }
        let j_residual = (j_mat - j_rebuilt).iter().fold(0.0_f64, |m, z| m.max(z.norm()));

        let mut alg = MatrixAlgebra {
            family,
            matrix_size,
            basis,
            ad,
            j: j.clone(),
            ad_j: Mat::zeros(dim, dim),
            theta: Mat::zeros(dim, dim),
            k_basis: Mat::zeros(dim, 0),
            m_basis: Mat::zeros(dim, 0),
            d: 1.0,
            scale: 1.0,
            closure_residual,
            j_residual,
        };
        alg.ad_j = alg.ad_of(&j);
        alg.theta = exp_skew(&alg.ad_j, std::f64::consts::PI);

        let sym = (&alg.theta + alg.theta.transpose()) * 0.5;
        let eig = SymmetricEigen::new(sym);
        let mut k_cols = Vec::new();
        let mut m_cols = Vec::new();
        for i in 0..dim {
            let v = eig.eigenvectors.column(i).into_owned();
            let e = eig.eigenvalues[i];
            if (e - 1.0).abs() < 1e-6 {
                k_cols.push(v);
            } else if (e + 1.0).abs() < 1e-6 {
                m_cols.push(v);
            } else {
                return Err(Error::Oracle(format!("θ has eigenvalue {e}, not ±1")));
            }
        }
        alg.k_basis = from_columns(dim, &k_cols);
        alg.m_basis = from_columns(dim, &m_cols);
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ad_of(&self, x: &Vector) -> Mat {
        let n = self.dim();
        let mut out = Mat::zeros(n, n);
        for (i, a) in self.ad.iter().enumerate() {
            if x[i] != 0.0 {
                out += a * x[i];
            }
        }
        out
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        self.ad_of(x) * y
    }

    pub fn inner(&self, x: &Vector, y: &Vector) -> f64 {
        self.scale * x.dot(y)
    }

    pub fn norm_sq(&self, x: &Vector) -> f64 {
        self.inner(x, x)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = Vector::zeros(self.dim());
        v[i] = 1.0;
        v
    }

    /// Frobenius norm of (ad J)³ + ad J.
    pub fn j_cube_residual(&self) -> f64 {
        (&self.ad_j * &self.ad_j * &self.ad_j + &self.ad_j).norm()
    }

    /// Largest entry of θ² − I.
    pub fn theta_involution_residual(&self) -> f64 {
        max_abs(&(&self.theta * &self.theta - Mat::identity(self.dim(), self.dim())))
    }

    /// Largest |⟨k_i, m_j⟩|.
    pub fn k_m_orthogonality_residual(&self) -> f64 {
        max_abs(&(self.k_basis.transpose() * &self.m_basis))
    }

    /// Expands a matrix in the basis.
    pub fn coords_of(&self, x: &CMat) -> Vector {
        Vector::from_iterator(self.dim(), self.basis.iter().map(|b| trace_inner(x, b)))
    }

    /// Assembles the matrix with the given coordinates.
    pub fn matrix_of(&self, v: &Vector) -> CMat {
        let mut m = CMat::zeros(self.matrix_size, self.matrix_size);
        for (k, b) in self.basis.iter().enumerate() {
            m += b.map(|z| z * v[k]);
        }
        m
    }
}
