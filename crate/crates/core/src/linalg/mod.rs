//! Exact linear algebra over a principal ideal domain.
//!
//! Vectors are rows; matrices act on the right (`x -> x * A`), matching the
//! right-module convention used throughout the crate.

mod lattice;
mod smith;

pub use lattice::Lattice;
pub(crate) use lattice::scalar_norm;
pub use smith::{determinant, smith_normal_form, Smith};

use crate::scalar::{Pid, Scalar};

pub type Row = Vec<Scalar>;

pub fn zero_row(pid: Pid, n: usize) -> Row {
    vec![pid.zero(); n]
}

pub fn identity(pid: Pid, n: usize) -> Vec<Row> {
    (0..n)
        .map(|i| {
            let mut r = zero_row(pid, n);
            r[i] = pid.one();
            r
        })
        .collect()
}

pub fn is_zero_row(row: &[Scalar]) -> bool {
    row.iter().all(Scalar::is_zero)
}

pub fn row_add(pid: Pid, a: &[Scalar], b: &[Scalar]) -> Row {
    a.iter().zip(b).map(|(x, y)| pid.add(x, y)).collect()
}

pub fn row_sub(pid: Pid, a: &[Scalar], b: &[Scalar]) -> Row {
    a.iter().zip(b).map(|(x, y)| pid.sub(x, y)).collect()
}

pub fn row_scale(pid: Pid, c: &Scalar, a: &[Scalar]) -> Row {
    a.iter().map(|x| pid.mul(c, x)).collect()
}

/// `x * M` where `M` has `x.len()` rows and `cols` columns.
pub fn vec_mat(pid: Pid, x: &[Scalar], m: &[Row], cols: usize) -> Row {
    let mut out = zero_row(pid, cols);
    for (xi, mi) in x.iter().zip(m) {
        if xi.is_zero() {
            continue;
        }
        for (o, mij) in out.iter_mut().zip(mi) {
            if !mij.is_zero() {
                *o = pid.add(o, &pid.mul(xi, mij));
            }
        }
    }
    out
}

pub fn mat_mul(pid: Pid, a: &[Row], b: &[Row], cols: usize) -> Vec<Row> {
    a.iter().map(|r| vec_mat(pid, r, b, cols)).collect()
}

/// Row-style Hermite echelon form.
///
/// `transform * rows = basis ++ zeros`; the trailing `rows.len() - rank`
/// rows of `transform` span the left kernel of `rows`.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub basis: Vec<Row>,
    pub pivots: Vec<usize>,
    pub transform: Option<Vec<Row>>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn kernel(&self) -> Vec<Row> {
        self.transform
            .as_ref()
            .expect("echelon computed without a transform")
            .iter()
            .skip(self.basis.len())
            .cloned()
            .collect()
    }
}

// row_a <- s*row_a + t*row_b ; row_b <- -v*row_a + u*row_a (old values)
fn combine(pid: Pid, rows: &mut [Row], a: usize, b: usize, coeffs: [&Scalar; 4]) {
    let [s, t, u, v] = coeffs;
    let ra = rows[a].clone();
    let rb = rows[b].clone();
    rows[a] = row_add(pid, &row_scale(pid, s, &ra), &row_scale(pid, t, &rb));
    rows[b] = row_sub(pid, &row_scale(pid, u, &rb), &row_scale(pid, v, &ra));
}

pub fn echelon(pid: Pid, rows: &[Row], ncols: usize, with_transform: bool) -> Echelon {
    let m = rows.len();
    let mut a: Vec<Row> = rows.to_vec();
    let mut tr = with_transform.then(|| identity(pid, m));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(k) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, k);
        if let Some(t) = tr.as_mut() {
            t.swap(r, k);
        }
        for i in r + 1..m {
            if a[i][c].is_zero() {
                continue;
            }
            let (g, s, t) = pid.ext_gcd(&a[r][c], &a[i][c]);
            let u = pid.exact_div(&a[r][c], &g);
            let v = pid.exact_div(&a[i][c], &g);
            combine(pid, &mut a, r, i, [&s, &t, &u, &v]);
            if let Some(tm) = tr.as_mut() {
                combine(pid, tm, r, i, [&s, &t, &u, &v]);
            }
        }
        let (_, unit) = pid.normalize(&a[r][c]);
        if !pid.is_one(&unit) {
            a[r] = row_scale(pid, &unit, &a[r]);
            if let Some(t) = tr.as_mut() {
                t[r] = row_scale(pid, &unit, &t[r]);
            }
        }
        for i in 0..r {
            if a[i][c].is_zero() {
                continue;
            }
            let (q, _) = pid.div_rem(&a[i][c], &a[r][c]);
            if q.is_zero() {
                continue;
            }
            a[i] = row_sub(pid, &a[i], &row_scale(pid, &q, &a[r]));
            if let Some(t) = tr.as_mut() {
                t[i] = row_sub(pid, &t[i], &row_scale(pid, &q, &t[r]));
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon {
        basis: a,
        pivots,
        transform: tr,
    }
}

/// Basis of the left kernel `{x : x * rows = 0}`.
pub fn left_kernel(pid: Pid, rows: &[Row], ncols: usize) -> Vec<Row> {
    echelon(pid, rows, ncols, true).kernel()
}
