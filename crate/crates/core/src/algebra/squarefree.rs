use num_traits::One;

use super::{gcd, Rational, UniPoly};
use crate::{Error, Result};

/// `content · Π fᵢ^mᵢ` with monic, squarefree, pairwise coprime `fᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreePart {
    pub content: Rational,
    pub factors: Vec<(UniPoly, u32)>,
}

impl SquarefreePart {
    pub fn reconstruct(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.content.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }

    /// Product of the distinct monic factors (the radical).
    pub fn radical(&self) -> UniPoly {
        self.factors.iter().fold(UniPoly::one(), |acc, (f, _)| &acc * f)
    }

    /// Number of distinct roots over ℚ̄.
    pub fn distinct_roots(&self) -> usize {
        self.factors.iter().map(|(f, _)| f.degree().unwrap_or(0)).sum()
    }

    /// Root-multiplicity multiset over ℚ̄, sorted descending.
    pub fn multiplicity_pattern(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(*m, f.degree().unwrap_or(0)))
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

/// Yun's squarefree decomposition over ℚ.
pub fn squarefree_decompose(p: &UniPoly) -> Result<SquarefreePart> {
    let lc = p.leading().ok_or(Error::ZeroPolynomial("squarefree decomposition"))?.clone();
    let f = p.monic();
    let mut factors = Vec::new();
    if f.degree() == Some(0) {
        return Ok(SquarefreePart { content: lc, factors });
    }
    let df = f.derivative();
    let a0 = gcd(&f, &df)?;
    let mut b = f.exact_div(&a0)?;
    let mut c = df.exact_div(&a0)?;
    let mut d = &c - &b.derivative();
    let mut i = 1u32;
    while b.degree() != Some(0) {
        let a = gcd(&b, &d)?;
        if a.degree() != Some(0) {
            factors.push((a.clone(), i));
        }
        b = b.exact_div(&a)?;
        c = d.exact_div(&a)?;
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(SquarefreePart { content: lc, factors })
}

/// Writes `p = c · h²` with `h` monic, if possible.
pub fn perfect_square(p: &UniPoly) -> Option<(Rational, UniPoly)> {
    let sf = squarefree_decompose(p).ok()?;
    let mut h = UniPoly::one();
    for (f, m) in &sf.factors {
        if m % 2 == 1 {
            return None;
        }
        h = &h * &f.pow(m / 2);
    }
    debug_assert!(h.leading().is_some_and(|c| c.is_one()));
    Some((sf.content, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn yun_multiplicities() {
        let f = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        let sf = squarefree_decompose(&f).unwrap();
        assert_eq!(sf.factors, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]);
        assert_eq!(sf.reconstruct(), f);
    }

    #[test]
    fn squarefree_input_is_one_factor() {
        let f = p(&[3, 0, 6]);
        let sf = squarefree_decompose(&f).unwrap();
        assert_eq!(sf.factors, vec![(f.monic(), 1)]);
        assert_eq!(sf.content, int(6));
    }

    #[test]
    fn zero_is_rejected() {
        assert!(squarefree_decompose(&UniPoly::zero()).is_err());
    }

    #[test]
    fn perfect_squares() {
        let t = UniPoly::t();
        let h = &t * &(&t - &UniPoly::constant(int(2025)));
        assert_eq!(perfect_square(&(&h * &h).scale(&int(36))), Some((int(36), h)));
        assert_eq!(perfect_square(&t.pow(4).scale(&int(16))), Some((int(16), t.pow(2))));
        assert_eq!(perfect_square(&p(&[1, 0, 1])), None);
        assert_eq!(perfect_square(&p(&[5])), Some((int(5), UniPoly::one())));
    }

    #[test]
    fn multiplicity_pattern_counts_roots() {
        let f = &p(&[1, 0, 1]).pow(2) * &p(&[0, 1]);
        let sf = squarefree_decompose(&f).unwrap();
        assert_eq!(sf.multiplicity_pattern(), vec![2, 2, 1]);
        assert_eq!(sf.distinct_roots(), 3);
    }
}
