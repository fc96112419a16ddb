use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Rational, UniPoly};
use crate::{Error, Result};

/// Polynomial in `x` whose coefficients are polynomials in `t`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    coeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<UniPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn constant(c: UniPoly) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![UniPoly::zero(), UniPoly::one()])
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> UniPoly {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&UniPoly> {
        self.coeffs.last()
    }

    /// Total degree in `(t, x)`.
    pub fn total_degree(&self) -> Option<usize> {
        self.coeffs.iter().enumerate().filter_map(|(i, c)| c.degree().map(|d| d + i)).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul_poly(&self, p: &UniPoly) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * p).collect())
    }

    /// Substitutes `x = q(t)`.
    pub fn eval_x(&self, q: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        acc
    }

    /// Specializes `t = t0`, giving a polynomial in `x` (returned as a `UniPoly`).
    pub fn eval_t(&self, t0: &Rational) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| c.eval(t0)).collect())
    }

    pub fn eval(&self, t0: &Rational, x0: &Rational) -> Rational {
        self.eval_t(t0).eval(x0)
    }

    pub fn derivative_x(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&Rational::from_integer(i.into())))
                .collect(),
        )
    }

    pub fn derivative_t(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.derivative()).collect())
    }

    /// Division by a polynomial whose leading `x`-coefficient is a nonzero
    /// constant, so the quotient and remainder stay in ℚ[t][x].
    pub fn divrem_monic(&self, d: &BiPoly) -> Result<(BiPoly, BiPoly)> {
        let dd = d.degree_x().ok_or(Error::DivisionByZero)?;
        let lc = d.coeffs[dd].clone();
        if lc.degree() != Some(0) {
            return Err(Error::invalid("divisor leading x-coefficient is not a constant"));
        }
        let inv = lc.coeff(0).recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![UniPoly::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = rem[i].scale(&inv);
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = &rem[idx] - &(&q * dc);
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Every coefficient reduced modulo `m(t)`.
    pub fn rem_t(&self, m: &UniPoly) -> Result<BiPoly> {
        Ok(Self::from_coeffs(self.coeffs.iter().map(|c| c.rem(m)).collect::<Result<_>>()?))
    }

    pub fn fmt_vars(&self, tv: &str, xv: &str) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let xm = match i {
                0 => String::new(),
                1 => xv.to_string(),
                _ => format!("{xv}^{i}"),
            };
            parts.push(if i == 0 { format!("({})", c.fmt_var(tv)) } else { format!("({})*{}", c.fmt_var(tv), xm) });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_vars("t", "x"))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        BiPoly::from_coeffs((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        BiPoly::from_coeffs((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![UniPoly::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::from_coeffs(out)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// Sylvester resultant with respect to `x`, computed by fraction-free
/// (Bareiss) elimination over ℚ[t].
pub fn resultant_x(f: &BiPoly, g: &BiPoly) -> Result<UniPoly> {
    let m = f.degree_x().ok_or(Error::ZeroPolynomial("resultant"))?;
    let n = g.degree_x().ok_or(Error::ZeroPolynomial("resultant"))?;
    if m == 0 && n == 0 {
        return Ok(UniPoly::one());
    }
    if m == 0 {
        return Ok(f.coeffs[0].pow(n as u32));
    }
    if n == 0 {
        return Ok(g.coeffs[0].pow(m as u32));
    }
    let size = m + n;
    let mut mat = vec![vec![UniPoly::zero(); size]; size];
    for i in 0..n {
        for (j, c) in f.coeffs.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.coeffs.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    Ok(bareiss_det(mat))
}

/// Determinant of a square matrix over ℚ[t].
pub(crate) fn bareiss_det(mut a: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = a.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut sign = false;
    let mut prev = UniPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = UniPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

impl BiPoly {
    pub fn is_const_leading(&self) -> bool {
        self.leading().is_some_and(|c| c.degree() == Some(0))
    }
}
