//! Exact arithmetic over ℚ.
//!
//! Everything here is rational and exact. `UniPoly` is a dense polynomial in
//! `t`, `RatFunc` an element of ℚ(t), `BiPoly` a polynomial in `x` with
//! coefficients in ℚ[t], and `MPoly` a sparse polynomial in a fixed number of
//! variables (used for plane curves and local expansions).

mod bipoly;
mod linalg;
mod modgcd;
mod mpoly;
mod parse;
mod ratfunc;
mod roots;
mod squarefree;
mod unipoly;

pub use bipoly::{resultant_x, BiPoly};
pub use linalg::{determinant, solve, Matrix};
pub use mpoly::MPoly;
pub use parse::parse_mpoly;
pub use ratfunc::RatFunc;
pub use roots::rational_roots;
pub use squarefree::{perfect_square, squarefree_decompose, SquarefreePart};
pub use unipoly::{gcd, inverse_mod, UniPoly};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Reduced fraction with arbitrary-precision numerator and positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact square root in ℚ, if one exists.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some(Rational::zero());
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Renders a rational as `n` or `n/d`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `n` or `n/d` with optional sign.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_rationals() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-4, 1)), None);
    }

    #[test]
    fn rational_text_round_trip() {
        for q in [rat(-7, 3), int(0), int(123456789), rat(1, 20736)] {
            assert_eq!(parse_rational(&fmt_rational(&q)), Some(q));
        }
        assert_eq!(parse_rational("1/0"), None);
    }
}
