use super::{identity, mat_mul, row_add, row_scale, row_sub, Row};
use crate::error::{Error, Result};
use crate::scalar::{Pid, Scalar};

/// `u * a * v = diag(d)` with `d[0] | d[1] | ...` and `u`, `v` invertible.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Vec<Row>,
    pub d: Vec<Scalar>,
    pub v: Vec<Row>,
}

fn col_combine(pid: Pid, a: &mut [Row], x: usize, y: usize, s: &Scalar, t: &Scalar, u: &Scalar, v: &Scalar) {
    for row in a.iter_mut() {
        let cx = row[x].clone();
        let cy = row[y].clone();
        row[x] = pid.add(&pid.mul(s, &cx), &pid.mul(t, &cy));
        row[y] = pid.sub(&pid.mul(u, &cy), &pid.mul(v, &cx));
    }
}

fn row_combine(pid: Pid, a: &mut [Row], x: usize, y: usize, s: &Scalar, t: &Scalar, u: &Scalar, v: &Scalar) {
    let rx = a[x].clone();
    let ry = a[y].clone();
    a[x] = row_add(pid, &row_scale(pid, s, &rx), &row_scale(pid, t, &ry));
    a[y] = row_sub(pid, &row_scale(pid, u, &ry), &row_scale(pid, v, &rx));
}

// Coefficients (s, t, u, v) of the unimodular step clearing `b` against the
// pivot `a`. A pivot dividing `b` stays in place, otherwise the sweep can
// swap the two lines back and forth forever.
fn elimination(pid: Pid, a: &Scalar, b: &Scalar) -> (Scalar, Scalar, Scalar, Scalar) {
    if pid.divides(a, b) {
        return (pid.one(), pid.zero(), pid.one(), pid.exact_div(b, a));
    }
    let (g, s, t) = pid.ext_gcd(a, b);
    (s, t, pid.exact_div(a, &g), pid.exact_div(b, &g))
}

fn swap_cols(a: &mut [Row], x: usize, y: usize) {
    for row in a.iter_mut() {
        row.swap(x, y);
    }
}

pub fn smith_normal_form(pid: Pid, a: &[Row], ncols: usize) -> Result<Smith> {
    let m = a.len();
    let n = ncols;
    let mut w: Vec<Row> = a.to_vec();
    let mut u = identity(pid, m);
    let mut v = identity(pid, n);
    let steps = m.min(n);
    let mut t = 0;
    'outer: while t < steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if w[i][j].is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => pid.cmp_size(&w[i][j], &w[bi][bj]).is_lt(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'outer;
            };
            w.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut w, t, pj);
            swap_cols(&mut v, t, pj);

            for i in t + 1..m {
                if w[i][t].is_zero() {
                    continue;
                }
                let (s, tt, a0, b0) = elimination(pid, &w[t][t], &w[i][t]);
                row_combine(pid, &mut w, t, i, &s, &tt, &a0, &b0);
                row_combine(pid, &mut u, t, i, &s, &tt, &a0, &b0);
            }
            for j in t + 1..n {
                if w[t][j].is_zero() {
                    continue;
                }
                let (s, tt, a0, b0) = elimination(pid, &w[t][t], &w[t][j]);
                col_combine(pid, &mut w, t, j, &s, &tt, &a0, &b0);
                col_combine(pid, &mut v, t, j, &s, &tt, &a0, &b0);
            }
            let clean = (t + 1..m).all(|i| w[i][t].is_zero()) && (t + 1..n).all(|j| w[t][j].is_zero());
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !pid.divides(&w[t][t], &w[i][j])));
            match bad {
                Some(i) => {
                    w[t] = row_add(pid, &w[t], &w[i]);
                    u[t] = row_add(pid, &u[t], &u[i]);
                }
                None => break,
            }
        }
        let (_, unit) = pid.normalize(&w[t][t]);
        if !pid.is_one(&unit) {
            w[t] = row_scale(pid, &unit, &w[t]);
            u[t] = row_scale(pid, &unit, &u[t]);
        }
        t += 1;
    }
    let d: Vec<Scalar> = (0..steps).map(|i| w[i][i].clone()).collect();
    let out = Smith { u, d, v };
    verify(pid, a, n, &out)?;
    Ok(out)
}

fn verify(pid: Pid, a: &[Row], n: usize, s: &Smith) -> Result<()> {
    let m = a.len();
    let prod = mat_mul(pid, &mat_mul(pid, &s.u, a, n), &s.v, n);
    for (i, row) in prod.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let expected = if i == j { s.d[i].clone() } else { pid.zero() };
            if *x != expected {
                return Err(Error::VerificationFailed("smith form: U*A*V is not the diagonal".into()));
            }
        }
    }
    for w in s.d.windows(2) {
        if !pid.divides(&w[0], &w[1]) {
            return Err(Error::VerificationFailed("smith form: divisibility chain broken".into()));
        }
    }
    if !pid.is_unit(&determinant(pid, &s.u, m)) || !pid.is_unit(&determinant(pid, &s.v, n)) {
        return Err(Error::VerificationFailed("smith form: transform is not invertible".into()));
    }
    Ok(())
}

/// Fraction-free (Bareiss) determinant of a square matrix.
pub fn determinant(pid: Pid, a: &[Row], n: usize) -> Scalar {
    if n == 0 {
        return pid.one();
    }
    let mut m: Vec<Row> = a.to_vec();
    let mut negate = false;
    let mut prev = pid.one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(i) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return pid.zero();
            };
            m.swap(k, i);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = pid.sub(&pid.mul(&m[i][j], &m[k][k]), &pid.mul(&m[i][k], &m[k][j]));
                m[i][j] = pid.exact_div(&num, &prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        pid.neg(&det)
    } else {
        det
    }
}
