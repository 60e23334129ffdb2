//! Exact Gaussian elimination over [`RadicalScalar`].

use crate::error::Result;
use crate::scalar::RadicalScalar;

pub type Matrix = Vec<Vec<RadicalScalar>>;

/// Reduced row echelon form and pivot columns.
pub fn rref(mut m: Matrix) -> Result<(Matrix, Vec<usize>)> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inverse()?;
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    Ok((m, pivots))
}

/// Basis of `{x : m·x = 0}` for an `rows × cols` matrix.
pub fn kernel(m: Matrix, cols: usize) -> Result<Vec<Vec<RadicalScalar>>> {
    if m.is_empty() {
        return Ok((0..cols).map(|j| unit(cols, j)).collect());
    }
    let (r, pivots) = rref(m)?;
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = unit(cols, free);
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -&r[row][free];
        }
        out.push(v);
    }
    Ok(out)
}

pub fn rank(m: Matrix) -> Result<usize> {
    Ok(rref(m)?.1.len())
}

pub fn determinant(mut m: Matrix) -> Result<RadicalScalar> {
    let n = m.len();
    let mut det = RadicalScalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Ok(RadicalScalar::zero()) };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det = &det * &m[c][c];
        let inv = m[c][c].inverse()?;
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let d = &f * &m[c][j];
                m[i][j] -= &d;
            }
        }
    }
    Ok(det)
}

fn unit(n: usize, j: usize) -> Vec<RadicalScalar> {
    (0..n).map(|i| if i == j { RadicalScalar::one() } else { RadicalScalar::zero() }).collect()
}
