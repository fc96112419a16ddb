use num_traits::{One, Zero};

use super::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Determinant by Gaussian elimination over ℚ.
pub fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let piv = a[k][k].clone();
        det *= &piv;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &piv;
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
    }
    det
}

/// Solves `m · x = b`; `None` when `m` is singular.
pub fn solve(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut a: Matrix = m.iter().zip(b).map(|(row, bi)| row.iter().cloned().chain([bi.clone()]).collect()).collect();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(p, k);
        let piv = a[k][k].recip();
        for v in a[k].iter_mut() {
            *v *= &piv;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in k..=n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}
