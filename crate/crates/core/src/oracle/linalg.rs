//! Dense helpers on top of nalgebra: spans, null spaces, clustering and the
//! exponential of a skew-symmetric matrix.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

pub type Mat = DMatrix<f64>;
pub type Vector = DVector<f64>;

pub fn empty(rows: usize) -> Mat {
    Mat::zeros(rows, 0)
}

pub fn hcat(blocks: &[&Mat]) -> Mat {
    let rows = blocks.first().map_or(0, |b| b.nrows());
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = Mat::zeros(rows, cols);
    let mut c = 0;
    for b in blocks {
        out.columns_mut(c, b.ncols()).copy_from(b);
        c += b.ncols();
    }
    out
}

pub fn from_columns(rows: usize, cols: &[Vector]) -> Mat {
    if cols.is_empty() {
        return empty(rows);
    }
    Mat::from_columns(cols)
}

/// Orthonormal basis of the column span, by Gram–Schmidt with column
/// pivoting and a second orthogonalization pass. Columns whose residual
/// norm falls below `tol` are treated as dependent.
pub fn orth(a: &Mat, tol: f64) -> Mat {
    let rows = a.nrows();
    let mut rest: Vec<Vector> = a.column_iter().map(|c| c.into_owned()).collect();
    let mut basis: Vec<Vector> = Vec::new();
    while !rest.is_empty() && basis.len() < rows {
        let (best, norm) = rest
            .iter()
            .enumerate()
            .map(|(i, v)| (i, v.norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if norm <= tol {
            break;
        }
        let mut q = rest.swap_remove(best);
        for b in &basis {
            q -= b * b.dot(&q);
        }
        let n = q.norm();
        if n <= tol {
            continue;
        }
        q /= n;
        for v in rest.iter_mut() {
            *v -= &q * q.dot(v);
        }
        basis.push(q);
    }
    from_columns(rows, &basis)
}

/// Orthonormal basis of {x : a x = 0}: the complement of the row space.
pub fn null_space(a: &Mat, tol: f64) -> Mat {
    let q = a.ncols();
    let rows = orth(&a.transpose(), tol);
    let complement = project_out(&Mat::identity(q, q), &rows);
    orth(&complement, 1e-6)
}

/// Removes from `a` its components along the orthonormal columns of `q`.
pub fn project_out(a: &Mat, q: &Mat) -> Mat {
    if q.ncols() == 0 {
        return a.clone();
    }
    a - q * (q.transpose() * a)
}

/// Largest column norm of the part of `a` outside span(q).
pub fn outside_residual(a: &Mat, q: &Mat) -> f64 {
    let r = project_out(a, q);
    (0..r.ncols()).map(|i| r.column(i).norm()).fold(0.0, f64::max)
}

pub fn max_abs(a: &Mat) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// exp(s·A) for skew-symmetric A, via the spectral decomposition of A².
pub fn exp_skew(a: &Mat, s: f64) -> Mat {
    let n = a.nrows();
    let sq = -(a * a);
    let sym = (&sq + sq.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut cos_part = Mat::zeros(n, n);
    let mut sin_part = Mat::zeros(n, n);
    for k in 0..n {
        let w = eig.eigenvalues[k].max(0.0).sqrt();
        let v = eig.eigenvectors.column(k);
        let p = v * v.transpose();
        cos_part += &p * (s * w).cos();
        let sinc = if w < 1e-12 { s } else { (s * w).sin() / w };
        sin_part += &p * sinc;
    }
    cos_part + sin_part * a
}

/// Groups sorted values into runs whose consecutive gaps are below `tol`.
pub fn cluster(values: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in idx {
        match groups.last_mut() {
            Some(g) if (values[i] - values[*g.last().unwrap()]).abs() <= tol => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    groups
}
