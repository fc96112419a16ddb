use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{squarefree_decompose, Rational, UniPoly};

/// Distinct rational roots of `p`, ascending. Empty for the zero polynomial.
///
/// With `q` the primitive integer radical of `p` and `a` its leading
/// coefficient, every rational root `r` makes `a·r` an integer root of the
/// monic integer polynomial `a^(n-1) q(u/a)`. Those integer roots are isolated
/// with a Sturm sequence on half-integer endpoints, so no endpoint is ever a root.
pub fn rational_roots(p: &UniPoly) -> Vec<Rational> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let radical = squarefree_decompose(p).expect("nonzero").radical();
    let (_, q) = radical.primitive_integer();
    let n = q.len() - 1;
    let a = q[n].clone();
    // monic integer polynomial in u = a·t
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut apow = BigInt::one();
    for i in (0..n).rev() {
        coeffs[i] = &q[i] * &apow;
        apow *= &a;
    }
    let mono = UniPoly::from_coeffs(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect());

    let bound = coeffs[..n].iter().map(|c| c.abs()).max().unwrap_or_default() + BigInt::one();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let lo = -Rational::from_integer(bound.clone()) - &half;
    let hi = Rational::from_integer(bound) + &half;

    let chain = sturm_chain(&mono);
    let mut roots = Vec::new();
    let mut stack = vec![(lo.clone(), variations(&chain, &lo), hi.clone(), variations(&chain, &hi))];
    while let Some((l, vl, h, vh)) = stack.pop() {
        if vl <= vh {
            continue;
        }
        let width = &h - &l;
        if width <= Rational::one() {
            let k = &l + &half;
            if mono.eval(&k).is_zero() {
                roots.push(k / Rational::from_integer(a.clone()));
            }
            continue;
        }
        let mid = (&l + &h) * &half;
        let mid = mid.floor() + &half;
        let vm = variations(&chain, &mid);
        stack.push((l, vl, mid.clone(), vm));
        stack.push((mid, vm, h, vh));
    }
    roots.sort();
    roots
}

fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]).expect("nonzero");
        if r.is_zero() {
            break;
        }
        chain.push(-r);
    }
    chain
}

fn variations(chain: &[UniPoly], x: &Rational) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for s in chain {
        let v = s.eval(x);
        let sign = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if sign != 0 {
            if last != 0 && sign != last {
                count += 1;
            }
            last = sign;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn finds_rational_roots_only() {
        // (3t - 2)(t + 5)^2 (t^2 - 2)
        let f = &(&UniPoly::from_ints(&[-2, 3]) * &UniPoly::from_ints(&[5, 1]).pow(2))
            * &UniPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(rational_roots(&f), vec![int(-5), rat(2, 3)]);
    }

    #[test]
    fn large_roots() {
        let f = &UniPoly::from_ints(&[-2025, 1]) * &UniPoly::from_ints(&[0, 1]);
        assert_eq!(rational_roots(&f), vec![int(0), int(2025)]);
        let g = UniPoly::from_ints(&[271350, 1]);
        assert_eq!(rational_roots(&g), vec![int(-271350)]);
    }

    #[test]
    fn constants_have_no_roots() {
        assert!(rational_roots(&UniPoly::one()).is_empty());
        assert!(rational_roots(&UniPoly::zero()).is_empty());
        assert!(rational_roots(&UniPoly::from_ints(&[1, 0, 1])).is_empty());
    }
}
