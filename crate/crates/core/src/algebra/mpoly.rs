use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{fmt_rational, Rational};

/// Sparse polynomial in `N` variables over ℚ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly<const N: usize> {
    terms: BTreeMap<[u32; N], Rational>,
}

impl<const N: usize> Default for MPoly<N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<const N: usize> MPoly<N> {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, [0; N])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        Self::monomial(Rational::one(), e)
    }

    pub fn monomial(c: Rational, e: [u32; N]) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = ([u32; N], Rational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: [u32; N], c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; N], &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32; N]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.total_degree() == self.min_degree()
    }

    /// Terms of exactly the given total degree.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        MPoly {
            terms: self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() == d).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rational; N]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (v, k) in point.iter().zip(e.iter()) {
                if *k > 0 {
                    m *= num_traits::pow(v.clone(), *k as usize);
                }
            }
            acc += m;
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = *e;
            f[i] -= 1;
            out.add_term(f, c * Rational::from_integer(e[i].into()));
        }
        out
    }

    /// Substitutes variable `i` by `images[i]`.
    pub fn substitute<const M: usize>(&self, images: &[MPoly<M>; N]) -> MPoly<M> {
        let maxdeg: Vec<u32> = (0..N).map(|i| self.degree_in(i).unwrap_or(0)).collect();
        let powers: Vec<Vec<MPoly<M>>> = (0..N)
            .map(|i| {
                let mut v = vec![MPoly::<M>::one()];
                for k in 1..=maxdeg[i] as usize {
                    let next = &v[k - 1] * &images[i];
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = MPoly::<M>::zero();
        for (e, c) in &self.terms {
            let mut m = MPoly::<M>::constant(c.clone());
            for i in 0..N {
                if e[i] > 0 {
                    m = &m * &powers[i][e[i] as usize];
                }
            }
            out = &out + &m;
        }
        out
    }

    /// Homogeneous linear change of variables: variable `i` becomes `Σ_j m[i][j]·v_j`.
    pub fn linear_substitute(&self, m: &[[Rational; N]; N]) -> Self {
        let images: [MPoly<N>; N] = std::array::from_fn(|i| {
            MPoly::from_terms((0..N).map(|j| {
                let mut e = [0; N];
                e[j] = 1;
                (e, m[i][j].clone())
            }))
        });
        self.substitute(&images)
    }

    pub fn fmt_vars(&self, names: &[&str; N]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        // descending total degree, then descending exponent vector
        let mut keys: Vec<&[u32; N]> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then(b.cmp(a))
        });
        for e in keys {
            let c = &self.terms[e];
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, k)| if *k == 1 { names[i].to_string() } else { format!("{}^{}", names[i], k) })
                .collect();
            if mono.is_empty() {
                out.push_str(&fmt_rational(&a));
            } else if a.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", fmt_rational(&a), mono.join("*")));
            }
        }
        out
    }
}

impl<const N: usize> fmt::Debug for MPoly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: [String; N] = std::array::from_fn(|i| format!("v{i}"));
        let refs: [&str; N] = std::array::from_fn(|i| names[i].as_str());
        write!(f, "MPoly({})", self.fmt_vars(&refs))
    }
}

impl<'a, const N: usize> Add<&'a MPoly<N>> for &'a MPoly<N> {
    type Output = MPoly<N>;
    fn add(self, o: &MPoly<N>) -> MPoly<N> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a, const N: usize> Sub<&'a MPoly<N>> for &'a MPoly<N> {
    type Output = MPoly<N>;
    fn sub(self, o: &MPoly<N>) -> MPoly<N> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a, const N: usize> Mul<&'a MPoly<N>> for &'a MPoly<N> {
    type Output = MPoly<N>;
    fn mul(self, o: &MPoly<N>) -> MPoly<N> {
        let mut out = MPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: [u32; N] = std::array::from_fn(|i| ea[i] + eb[i]);
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl<const N: usize> Neg for &MPoly<N> {
    type Output = MPoly<N>;
    fn neg(self) -> MPoly<N> {
        MPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    type P3 = MPoly<3>;

    #[test]
    fn arithmetic_and_eval() {
        let (t, x, z) = (P3::var(0), P3::var(1), P3::var(2));
        let f = &(&x.pow(3) * &z) + &t.pow(4);
        assert_eq!(f.total_degree(), Some(4));
        assert!(f.is_homogeneous());
        assert_eq!(f.eval(&[int(1), int(2), int(3)]), int(25));
        assert_eq!(f.partial(1), (&x.pow(2) * &z).scale(&int(3)));
    }

    #[test]
    fn substitution() {
        let (t, x) = (MPoly::<2>::var(0), MPoly::<2>::var(1));
        let f = &(&t * &t) - &x;
        // t -> t + x, x -> t
        let g = f.substitute(&[&t + &x, t.clone()]);
        let expected = &(&(&t * &t) + &(&(&t * &x).scale(&int(2)) + &(&x * &x))) - &t;
        assert_eq!(g, expected);
    }

    #[test]
    fn linear_change_round_trip() {
        let (t, x, z) = (P3::var(0), P3::var(1), P3::var(2));
        let f = &(&(&t * &x) + &z.pow(2)) - &x.pow(2);
        let m = [[int(1), int(2), int(0)], [int(0), int(1), int(0)], [int(3), int(0), int(1)]];
        let minv = [[int(1), int(-2), int(0)], [int(0), int(1), int(0)], [int(-3), int(6), int(1)]];
        assert_eq!(f.linear_substitute(&m).linear_substitute(&minv), f);
    }

    #[test]
    fn formatting() {
        let (t, x) = (MPoly::<2>::var(0), MPoly::<2>::var(1));
        let f = &(&t * &x).scale(&int(-3)) + &MPoly::constant(int(7));
        assert_eq!(f.fmt_vars(&["t", "x"]), "-3*t*x + 7");
    }
}
