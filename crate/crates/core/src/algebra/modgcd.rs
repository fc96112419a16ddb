//! Modular gcd of integer polynomials.
//!
//! Images modulo word-sized primes give the degree of the gcd cheaply; most
//! calls are coprime and stop after one prime. Otherwise images of matching
//! degree are combined by CRT until the balanced lift divides both inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Primes below 2^31 in decreasing order, so products fit in u64.
fn primes() -> impl Iterator<Item = u64> {
    (1u64 << 16..1u64 << 31).rev().filter(|&n| is_prime(n))
}

/// Miller–Rabin with bases 2, 7, 61, exact below 4.7·10⁹.
fn is_prime(n: u64) -> bool {
    if n % 2 == 0 {
        return n == 2;
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    [2u64, 7, 61].iter().all(|&a| {
        if a % n == 0 {
            return true;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            return true;
        }
        for _ in 1..s {
            x = x * x % n;
            if x == n - 1 {
                return true;
            }
        }
        false
    })
}

fn reduce(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    a.iter().map(|c| c.mod_floor(&pb).to_u64().expect("reduced")).collect()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over 𝔽_p.
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = inv_mod(*b.last().expect("nonzero"), p);
        let db = b.len() - 1;
        while a.len() > db {
            let top = a.len() - 1;
            let q = a[top] * inv % p;
            if q != 0 {
                for (j, c) in b.iter().enumerate() {
                    let i = top - db + j;
                    a[i] = (a[i] + p - q * c % p) % p;
                }
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        for c in &mut a {
            *c = *c * inv % p;
        }
    }
    a
}

fn divides(d: &[BigInt], n: &[BigInt]) -> bool {
    let dl = d.len();
    if dl == 0 || dl > n.len() {
        return false;
    }
    let lead = &d[dl - 1];
    let mut r = n.to_vec();
    for i in (0..=n.len() - dl).rev() {
        let top = &r[i + dl - 1];
        if top.is_zero() {
            continue;
        }
        let (q, rem) = top.div_rem(lead);
        if !rem.is_zero() {
            return false;
        }
        for (j, c) in d.iter().enumerate() {
            r[i + j] -= &q * c;
        }
    }
    r.iter().all(|c| c.is_zero())
}

/// Primitive gcd (positive leading coefficient) of two nonzero primitive
/// integer polynomials, or `None` if the prime table is exhausted.
pub(crate) fn gcd_primitive(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let lc_g = a.last()?.gcd(b.last()?);
    let mut best_deg = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut previous: Option<Vec<BigInt>> = None;
    for p in primes().take(4000) {
        let lg = lc_g.mod_floor(&BigInt::from(p)).to_u64().expect("reduced");
        if lg == 0 {
            continue;
        }
        let g = gcd_mod(&reduce(a, p), &reduce(b, p), p);
        let deg = g.len() - 1;
        if deg == 0 {
            return Some(vec![BigInt::one()]);
        }
        if deg > best_deg {
            continue;
        }
        // scale the monic image so its leading coefficient is lc_g mod p
        let img: Vec<BigInt> = g.iter().map(|c| BigInt::from(c * lg % p)).collect();
        let pb = BigInt::from(p);
        if deg < best_deg {
            best_deg = deg;
            previous = None;
            acc = img;
            modulus = pb;
        } else {
            // CRT: x ≡ acc (mod modulus), x ≡ img (mod p)
            let m_inv = BigInt::from(inv_mod(modulus.mod_floor(&pb).to_u64().expect("reduced"), p));
            for (x, r) in acc.iter_mut().zip(&img) {
                let diff = (r - &*x).mod_floor(&pb);
                *x += &modulus * ((diff * &m_inv) % &pb);
            }
            modulus *= pb;
        }
        let half = &modulus >> 1;
        let lifted: Vec<BigInt> = acc.iter().map(|c| if c > &half { c - &modulus } else { c.clone() }).collect();
        let content = lifted.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if content.is_zero() {
            continue;
        }
        let mut cand: Vec<BigInt> = lifted.iter().map(|c| c / &content).collect();
        if cand.last().is_some_and(|c| c.is_negative()) {
            cand.iter_mut().for_each(|c| *c = -&*c);
        }
        // trial division only once the lift has stopped changing
        if previous.as_ref() == Some(&cand) && divides(&cand, a) && divides(&cand, b) {
            return Some(cand);
        }
        previous = Some(cand);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn coprime_and_common_factor() {
        assert_eq!(gcd_primitive(&v(&[1, 1]), &v(&[-1, 1])), Some(v(&[1])));
        // (t+1)(2t-3) and (t+1)(t+5)
        assert_eq!(gcd_primitive(&v(&[-3, -1, 2]), &v(&[5, 6, 1])), Some(v(&[1, 1])));
        // (3t+2)^2 and (3t+2)(t-7)
        assert_eq!(gcd_primitive(&v(&[4, 12, 9]), &v(&[-14, -19, 3])), Some(v(&[2, 3])));
    }

    #[test]
    fn prime_generator() {
        let ps: Vec<u64> = primes().take(3).collect();
        assert_eq!(ps, vec![2147483647, 2147483629, 2147483587]);
    }

    #[test]
    fn large_coefficients() {
        let big: BigInt = num_traits::pow(BigInt::from(10), 40) + 7;
        // (t + big)(t - 1) and (t + big)(t + 2)
        let a = vec![-big.clone(), &big - 1, BigInt::one()];
        let b = vec![&big * 2, &big + 2, BigInt::one()];
        assert_eq!(gcd_primitive(&a, &b), Some(vec![big, BigInt::one()]));
    }
}
