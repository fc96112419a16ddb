use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{fmt_rational, Rational};
use crate::{Error, Result};

/// Dense univariate polynomial in `t` over ℚ.
///
/// Coefficients are stored by ascending degree with no trailing zeros, so the
/// zero polynomial is the empty vector and has degree `None`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, d: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); d + 1];
        coeffs[d] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// `t - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::from_coeffs(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `None`, compared as `-∞`.
    pub fn degree_or(&self, zero: isize) -> isize {
        self.degree().map_or(zero, |d| d as isize)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        if self.coeffs.len() <= 1 {
            return self.coeffs.first().cloned().unwrap_or_default();
        }
        // homogenized Horner on the primitive part: Σ cᵢ aⁱ b^(n−i) / bⁿ
        let (content, ints) = self.primitive_integer();
        let (a, b) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for c in ints.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        let n = self.coeffs.len() - 1;
        content * Rational::new(acc, b.pow(n as u32))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(q(t))`.
    pub fn compose(&self, q: &UniPoly) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Self::constant(c.clone());
        }
        acc
    }

    /// `t^n · self(1/t)`; requires `n ≥ deg self`.
    pub fn reverse(&self, n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            assert!(i <= n, "reverse: degree exceeds the requested bound");
            coeffs[n - i] = c.clone();
        }
        Self::from_coeffs(coeffs)
    }

    /// `tᵏ · self`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    /// `self / tᵏ`, dropping the low coefficients.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Multiplicity of `t0` as a root; `None` for the zero polynomial.
    pub fn order_at(&self, t0: &Rational) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut p = self.clone();
        let mut k = 0;
        while p.eval(t0).is_zero() {
            // synthetic division by t − t0
            let n = p.coeffs.len() - 1;
            let mut q = vec![Rational::zero(); n];
            let mut carry = Rational::zero();
            for i in (1..=n).rev() {
                carry = &p.coeffs[i] + carry * t0;
                q[i - 1] = carry.clone();
            }
            p = Self::from_coeffs(q);
            k += 1;
        }
        Some(k)
    }

    /// Order of vanishing at `t = 0`.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn divrem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        // Work with primitive integer parts: lcᵏ·F = Q·D + R over ℤ, where a
        // power of lc is introduced only when a step does not divide evenly.
        let (cf, f) = self.primitive_integer();
        let (cd, dv) = d.primitive_integer();
        let lc = &dv[dd];
        let mut rem = f;
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        let mut scale = BigInt::one();
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (mut q, r) = rem[i].div_rem(lc);
            if !r.is_zero() {
                for c in rem.iter_mut().chain(quot.iter_mut()) {
                    *c *= lc;
                }
                scale *= lc;
                q = rem[i].clone() / lc;
            }
            for (j, dc) in dv.iter().enumerate() {
                rem[i - dd + j] -= &q * dc;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        let qs = &cf / (&cd * Rational::from_integer(scale.clone()));
        let rs = cf / Rational::from_integer(scale);
        Ok((Self::from_ints_scaled(quot, &qs), Self::from_ints_scaled(rem, &rs)))
    }

    fn from_ints_scaled(c: Vec<BigInt>, s: &Rational) -> UniPoly {
        Self::from_coeffs(c.into_iter().map(|a| Rational::from_integer(a) * s).collect())
    }

    pub fn rem(&self, d: &UniPoly) -> Result<UniPoly> {
        Ok(self.divrem(d)?.1)
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.divrem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    pub fn divides(&self, p: &UniPoly) -> bool {
        matches!(p.divrem(self), Ok((_, r)) if r.is_zero())
    }

    /// Splits off the rational content: `self = content · primitive` with the
    /// primitive part having coprime integer coefficients and a positive
    /// leading coefficient.
    pub fn primitive_integer(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for a in &ints {
            g = g.gcd(a);
        }
        if ints.last().is_some_and(|a| a.is_negative()) {
            g = -g;
        }
        let prim = ints.into_iter().map(|a| a / &g).collect();
        (Rational::new(g, lcm), prim)
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&fmt_rational(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", fmt_rational(&a), mono));
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("t"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl From<Rational> for UniPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        // integer products avoid a gcd per coefficient pair
        let (ca, a) = self.primitive_integer();
        let (cb, b) = o.primitive_integer();
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        UniPoly::from_ints_scaled(out, &(ca * cb))
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, o: UniPoly) -> UniPoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, o: &UniPoly) -> UniPoly {
                (&self).$m(o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

/// Monic greatest common divisor.
pub fn gcd(p: &UniPoly, q: &UniPoly) -> Result<UniPoly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroPolynomial("gcd of two zero polynomials"));
    }
    if p.is_zero() || q.is_zero() {
        return Ok(if p.is_zero() { q.monic() } else { p.monic() });
    }
    if p.is_constant() || q.is_constant() {
        return Ok(UniPoly::one());
    }
    let (_, a) = p.primitive_integer();
    let (_, b) = q.primitive_integer();
    if let Some(g) = super::modgcd::gcd_primitive(&a, &b) {
        return Ok(UniPoly::from_coeffs(g.into_iter().map(Rational::from_integer).collect()).monic());
    }
    let (mut a, mut b) = (p.monic(), q.monic());
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        b = r.monic();
    }
    Ok(a.monic())
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inverse_mod(a: &UniPoly, m: &UniPoly) -> Option<UniPoly> {
    if m.degree()? == 0 {
        return Some(UniPoly::zero());
    }
    let (mut r0, mut r1) = (m.clone(), a.rem(m).ok()?);
    let (mut s0, mut s1) = (UniPoly::zero(), UniPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1).ok()?;
        let s = &s0 - &(&q * &s1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.degree()? != 0 {
        return None;
    }
    let c = r0.coeffs[0].recip();
    s0.scale(&c).rem(m).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn divrem_factorization_identity() {
        let (q, r) = p(&[-1, 0, 1]).divrem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn multiplicative_identity() {
        let a = p(&[3, -2, 0, 7]);
        assert_eq!(&a * &UniPoly::one(), a);
    }

    #[test]
    fn quartic_constant_term_expansion() {
        let t = UniPoly::t();
        let l = &t - &UniPoly::constant(int(2025));
        let e = &(&l * &(&t * &t).scale(&int(36))) * &l;
        let expected = p(&[0, 0, 36 * 2025 * 2025, -72 * 2025, 36]);
        assert_eq!(e, expected);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(p(&[1, 1]).divrem(&UniPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&p(&[0, 0, 1]), &p(&[0, 0, 0, 1])).unwrap(), UniPoly::t().pow(2));
        assert_eq!(gcd(&p(&[0, 1]), &p(&[0, 0, 0, 1])).unwrap(), UniPoly::t());
        assert_eq!(gcd(&p(&[2, 4]), &UniPoly::zero()).unwrap(), p(&[1, 2]).monic());
        assert!(gcd(&UniPoly::zero(), &UniPoly::zero()).is_err());
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(UniPoly::zero().degree(), None);
        assert_eq!(UniPoly::one().degree(), Some(0));
        assert_eq!(UniPoly::from_coeffs(vec![int(1), int(0), int(0)]).degree(), Some(0));
    }

    #[test]
    fn order_and_reverse() {
        let f = p(&[0, 0, 1, -1]);
        assert_eq!(f.order_at(&int(0)), Some(2));
        assert_eq!(f.order_at(&int(1)), Some(1));
        assert_eq!(f.order_at(&int(5)), Some(0));
        assert_eq!(f.reverse(4), p(&[0, -1, 1]));
    }

    #[test]
    fn inverse_modulo() {
        let m = p(&[1, 0, 1]);
        let a = p(&[1, 1]);
        let inv = inverse_mod(&a, &m).unwrap();
        assert_eq!((&a * &inv).rem(&m).unwrap(), UniPoly::one());
        assert!(inverse_mod(&p(&[-1, 1]), &p(&[-1, 0, 1])).is_none());
    }

    #[test]
    fn primitive_part() {
        let f = UniPoly::from_coeffs(vec![rat(-1, 2), rat(3, 4)]);
        let (c, prim) = f.primitive_integer();
        assert_eq!(c, rat(1, 4));
        assert_eq!(prim, vec![BigInt::from(-2), BigInt::from(3)]);
    }

    #[test]
    fn display() {
        let f = UniPoly::from_coeffs(vec![int(-5670), rat(2637, 8), rat(-55, 32), rat(-1, 512)]);
        assert_eq!(f.to_string(), "-1/512*t^3 - 55/32*t^2 + 2637/8*t - 5670");
    }
}
