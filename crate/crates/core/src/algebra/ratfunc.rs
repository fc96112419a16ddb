use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Zero;

use super::{gcd, perfect_square, rational_sqrt, Rational, UniPoly};
use crate::{Error, Result};

/// Element of ℚ(t) in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = gcd(&num, &den)?;
        let (num, den) = if g.is_one() { (num, den) } else { (num.exact_div(&g)?, den.exact_div(&g)?) };
        let lc = den.leading().expect("nonzero").recip();
        Ok(RatFunc { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn zero() -> Self {
        RatFunc { num: UniPoly::zero(), den: UniPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc { num: p, den: UniPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&UniPoly> {
        self.is_poly().then_some(&self.num)
    }

    /// `deg num - deg den`, i.e. minus the order at infinity.
    pub fn degree(&self) -> Option<isize> {
        let n = self.num.degree()? as isize;
        Some(n - self.den.degree().unwrap_or(0) as isize)
    }

    /// Order of vanishing at `t0` (negative for poles).
    pub fn order_at(&self, t0: &Rational) -> Option<isize> {
        let n = self.num.order_at(t0)? as isize;
        Some(n - self.den.order_at(t0).unwrap_or(0) as isize)
    }

    pub fn eval(&self, t0: &Rational) -> Option<Rational> {
        let d = self.den.eval(t0);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(t0) / d)
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Square root in ℚ(t), if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (cn, hn) = perfect_square(&self.num)?;
        let (cd, hd) = perfect_square(&self.den)?;
        let c = rational_sqrt(&(cn / cd))?;
        Some(RatFunc { num: hn.scale(&c), den: hd })
    }

    /// `s^n · self(1/s)` as an element of ℚ(s).
    pub fn at_infinity(&self, n: isize) -> Self {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let shift = n - dn as isize + dd as isize;
        let mut num = self.num.reverse(dn);
        let mut den = self.den.reverse(dd);
        if shift >= 0 {
            num = num.shift_up(shift as usize);
        } else {
            den = den.shift_up((-shift) as usize);
        }
        // reversal keeps num and den coprime apart from common powers of s
        let common = num.low_order().unwrap_or(0).min(den.low_order().unwrap_or(0));
        let (num, den) = (num.shift_down(common), den.shift_down(common));
        let lc = den.leading().expect("nonzero").recip();
        RatFunc { num: num.scale(&lc), den: den.scale(&lc) }
    }
}

impl From<UniPoly> for RatFunc {
    fn from(p: UniPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone()).expect("nonzero");
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).expect("nonzero")
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.is_poly() && o.is_poly() {
            return RatFunc::from_poly(&self.num * &o.num);
        }
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero")
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        assert!(!o.is_zero(), "division by zero rational function");
        RatFunc::new(&self.num * &o.den, &self.den * &o.num).expect("nonzero")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &RatFunc) -> RatFunc {
                (&self).$m(o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn reduces_to_lowest_terms() {
        let f = RatFunc::new(p(&[-1, 0, 1]), p(&[-2, 2])).unwrap();
        assert_eq!(f.num(), &p(&[1, 1]).scale(&rat(1, 2)));
        assert_eq!(f.den(), &UniPoly::one());
    }

    #[test]
    fn field_operations() {
        let a = RatFunc::new(p(&[1, 1]), p(&[0, 1])).unwrap();
        let b = RatFunc::new(p(&[2]), p(&[-1, 1])).unwrap();
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(&a * &a.inv().unwrap(), RatFunc::one());
    }

    #[test]
    fn orders_and_infinity() {
        let f = RatFunc::new(p(&[0, 0, 3]), p(&[-1, 1]).pow(3)).unwrap();
        assert_eq!(f.order_at(&int(0)), Some(2));
        assert_eq!(f.order_at(&int(1)), Some(-3));
        assert_eq!(f.degree(), Some(-1));
        let x = RatFunc::from_poly(p(&[0, -32]));
        // s^2 * (-32/s) = -32 s
        assert_eq!(x.at_infinity(2), RatFunc::from_poly(p(&[0, -32])));
    }

    #[test]
    fn square_roots() {
        let h = RatFunc::new(p(&[1, 3]), p(&[0, 1])).unwrap();
        let sq = (&h * &h).scale(&int(4));
        let r = sq.sqrt().unwrap();
        assert!(r == h.scale(&int(2)) || r == h.scale(&int(-2)));
        assert!(RatFunc::from_poly(p(&[1, 0, 1])).sqrt().is_none());
    }
}
