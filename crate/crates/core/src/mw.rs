//! The elliptic curve `y² = x³ + b₂x² + b₃x + b₄` over ℚ(t) attached to a
//! normal-form quartic, its singular fibers, and the height pairing on its
//! Mordell–Weil lattice.
//!
//! Cross pairings are obtained by polarization from self pairings, so only
//! `P·O` and the component met by `P` on each reducible fiber are needed:
//!
//! ```text
//! ⟨P, P⟩ = 2χ + 2(P·O) − Σ_v contr_v(P),   χ = 1
//! ```

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{
    determinant, gcd, int, perfect_square, rat, rational_roots, rational_sqrt, solve, squarefree_decompose,
    Matrix, RatFunc, Rational, UniPoly,
};
use crate::catalog::{BasisLine, Branch};
use crate::quartic::{club_check, PlaneCurve, QuarticModel};
use crate::{Error, Result};

/// A ℚ(t)-rational point of the generic fiber.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FFPoint {
    O,
    Affine { x: RatFunc, y: RatFunc },
}

impl FFPoint {
    pub fn new(x: RatFunc, y: RatFunc) -> Self {
        FFPoint::Affine { x, y }
    }

    pub fn from_polys(x: UniPoly, y: UniPoly) -> Self {
        FFPoint::Affine { x: x.into(), y: y.into() }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FFPoint::O)
    }

    pub fn x(&self) -> Option<&RatFunc> {
        match self {
            FFPoint::O => None,
            FFPoint::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&RatFunc> {
        match self {
            FFPoint::O => None,
            FFPoint::Affine { y, .. } => Some(y),
        }
    }
}

impl fmt::Display for FFPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FFPoint::O => f.write_str("O"),
            FFPoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl fmt::Debug for FFPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Rational),
    /// All roots of a squarefree factor with no rational roots.
    Algebraic(UniPoly),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(t) => write!(f, "t = {}", crate::algebra::fmt_rational(t)),
            Place::Algebraic(p) => write!(f, "roots of {p}"),
            Place::Infinity => f.write_str("t = oo"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kodaira {
    I(u32),
    II,
    III,
}

impl Kodaira {
    pub fn components(self) -> u32 {
        match self {
            Kodaira::I(n) => n,
            Kodaira::II => 1,
            Kodaira::III => 2,
        }
    }

    pub fn euler_number(self) -> u32 {
        match self {
            Kodaira::I(n) => n,
            Kodaira::II => 2,
            Kodaira::III => 3,
        }
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::II => f.write_str("II"),
            Kodaira::III => f.write_str("III"),
        }
    }
}

/// Local contribution `contr_v(i, j)` to the height pairing.
pub fn contribution(kind: Kodaira, i: u32, j: u32) -> Rational {
    if i == 0 || j == 0 {
        return Rational::zero();
    }
    match kind {
        Kodaira::III => rat(1, 2),
        Kodaira::I(n) => {
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            rat((a * (n - b)) as i64, n as i64)
        }
        Kodaira::II => Rational::zero(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularFiber {
    pub place: Place,
    pub kodaira: Kodaira,
    /// `x`-coordinate of the singular point of the fiber (in the `s = 1/t`
    /// chart at infinity); present for reducible fibers.
    pub singular_x: Option<Rational>,
    /// Number of fibers represented (the degree of an algebraic place).
    pub count: u32,
}

impl SingularFiber {
    pub fn is_reducible(&self) -> bool {
        self.kodaira.components() >= 2
    }
}

/// The elliptic surface of a normal-form quartic, with its fibers analyzed.
#[derive(Clone, Debug)]
pub struct SurfaceModel {
    quartic: QuarticModel,
    fibers: Vec<SingularFiber>,
}

impl SurfaceModel {
    pub fn new(quartic: QuarticModel) -> Result<Self> {
        let club = club_check(&quartic);
        if !club.satisfied {
            return Err(Error::invalid(format!(
                "tangent line at the base point meets the quartic with pattern {:?}, need [2, 1, 1] or [3, 1]",
                club.pattern
            )));
        }
        let fibers = singular_fibers_of(&quartic)?;
        let euler: u32 = fibers.iter().map(|f| f.kodaira.euler_number() * f.count).sum();
        if euler != 12 {
            return Err(Error::unsupported(format!("fiber Euler numbers sum to {euler}, not 12")));
        }
        Ok(SurfaceModel { quartic, fibers })
    }

    pub fn quartic(&self) -> &QuarticModel {
        &self.quartic
    }

    pub fn fibers(&self) -> &[SingularFiber] {
        &self.fibers
    }

    pub fn reducible_fibers(&self) -> impl Iterator<Item = &SingularFiber> {
        self.fibers.iter().filter(|f| f.is_reducible())
    }

    pub fn infinity_fiber(&self) -> Option<&SingularFiber> {
        self.fibers.iter().find(|f| f.place == Place::Infinity)
    }

    /// `x³ + b₂x² + b₃x + b₄`.
    pub fn cubic_at(&self, x: &RatFunc) -> RatFunc {
        let (n, d) = (x.num(), x.den());
        let q = self.quartic();
        let n2 = n * n;
        let d2 = d * d;
        let top = &(&(&(&n2 * n) + &(&(q.b2() * &n2) * d)) + &(&(q.b3() * n) * &d2)) + &(q.b4() * &(&d2 * d));
        RatFunc::new(top, &d2 * d).expect("nonzero denominator")
    }

    pub fn on_curve(&self, p: &FFPoint) -> bool {
        match p {
            FFPoint::O => true,
            FFPoint::Affine { x, y } => {
                // y² = top/D³ with x = N/D, cross-multiplied to avoid gcds
                let (n, d) = (x.num(), x.den());
                let q = self.quartic();
                let n2 = n * n;
                let d2 = d * d;
                let top = &(&(&(&n2 * n) + &(&(q.b2() * &n2) * d)) + &(&(q.b3() * n) * &d2)) + &(q.b4() * &(&d2 * d));
                let (yn, yd) = (y.num(), y.den());
                &(yn * yn) * &(&d2 * d) == &top * &(yd * yd)
            }
        }
    }

    fn check(&self, p: &FFPoint) -> Result<()> {
        if self.on_curve(p) {
            Ok(())
        } else {
            Err(Error::invalid(format!("point {p} is not on the curve")))
        }
    }

    pub fn neg(&self, p: &FFPoint) -> FFPoint {
        match p {
            FFPoint::O => FFPoint::O,
            FFPoint::Affine { x, y } => FFPoint::Affine { x: x.clone(), y: -y },
        }
    }

    pub fn add(&self, p: &FFPoint, q: &FFPoint) -> Result<FFPoint> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &FFPoint, q: &FFPoint) -> FFPoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (FFPoint::O, _) => return q.clone(),
            (_, FFPoint::O) => return p.clone(),
            (FFPoint::Affine { x: x1, y: y1 }, FFPoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let a2 = RatFunc::from_poly(self.quartic.b2().clone());
        let lambda = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return FFPoint::O;
            }
            let a4 = RatFunc::from_poly(self.quartic.b3().clone());
            let num = &(&(x1 * x1).scale(&int(3)) + &(&a2 * x1).scale(&int(2))) + &a4;
            &num / &y1.scale(&int(2))
        } else {
            &(y2 - y1) / &(x2 - x1)
        };
        let x3 = &(&(&(&lambda * &lambda) - &a2) - x1) - x2;
        let y3 = -(&(&lambda * &(&x3 - x1)) + y1);
        FFPoint::Affine { x: x3, y: y3 }
    }

    pub fn sub(&self, p: &FFPoint, q: &FFPoint) -> Result<FFPoint> {
        self.add(p, &self.neg(q))
    }

    pub fn mul(&self, m: i64, p: &FFPoint) -> Result<FFPoint> {
        self.check(p)?;
        Ok(self.mul_unchecked(m, p))
    }

    fn mul_unchecked(&self, m: i64, p: &FFPoint) -> FFPoint {
        let base = if m < 0 { self.neg(p) } else { p.clone() };
        let mut k = m.unsigned_abs();
        let mut acc = FFPoint::O;
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &pow);
            }
            k >>= 1;
            if k > 0 {
                pow = self.add_unchecked(&pow, &pow);
            }
        }
        acc
    }

    /// `Σ [aᵢ] sᵢ`.
    pub fn combination(&self, coeffs: &[i64], sections: &[FFPoint]) -> Result<FFPoint> {
        if coeffs.len() != sections.len() {
            return Err(Error::invalid("coefficient count does not match the basis"));
        }
        for s in sections {
            self.check(s)?;
        }
        Ok(self.combination_unchecked(coeffs, sections))
    }

    fn combination_unchecked(&self, coeffs: &[i64], sections: &[FFPoint]) -> FFPoint {
        let mut acc = FFPoint::O;
        for (a, s) in coeffs.iter().zip(sections) {
            if *a != 0 {
                acc = self.add_unchecked(&acc, &self.mul_unchecked(*a, s));
            }
        }
        acc
    }

    /// The two sections cut out by a line avoiding `z_o` whose restriction of
    /// `F` is a square: `(x, +√e·h)` then `(x, −√e·h)`, with `h` monic.
    pub fn line_section(&self, line: &PlaneCurve) -> Result<(FFPoint, FFPoint)> {
        if line.degree() != 1 {
            return Err(Error::invalid("expected a line"));
        }
        let f = line.form();
        let (a, b, c) = (f.coeff(&[1, 0, 0]), f.coeff(&[0, 1, 0]), f.coeff(&[0, 0, 1]));
        if b.is_zero() {
            return Err(Error::invalid(format!("line {line} passes through the base point")));
        }
        let x = UniPoly::from_coeffs(vec![-&c / &b, -&a / &b]);
        let restricted = self.cubic_at(&RatFunc::from_poly(x.clone()));
        let restricted = restricted.as_poly().expect("polynomial").clone();
        if restricted.is_zero() {
            return Err(Error::invalid(format!("line {line} is a component of the quartic")));
        }
        let (e, h) = perfect_square(&restricted)
            .ok_or_else(|| Error::invalid(format!("line {line} is not dp-free: F restricted is not a square")))?;
        let r = rational_sqrt(&e).ok_or_else(|| {
            Error::unsupported(format!("line {line}: leading coefficient {} is not a rational square", e))
        })?;
        let y = h.scale(&r);
        Ok((FFPoint::from_polys(x.clone(), y.clone()), FFPoint::from_polys(x, -y)))
    }

    /// The section of a basis line on the requested branch.
    pub fn basis_section(&self, line: &BasisLine) -> Result<FFPoint> {
        let (p, m) = self.line_section(&line.line)?;
        Ok(match line.branch {
            Branch::Plus => p,
            Branch::Minus => m,
        })
    }

    /// `P·O` from the pole orders of `x`.
    pub fn intersection_with_zero(&self, p: &FFPoint) -> Result<Rational> {
        let x = match p {
            FFPoint::O => return Err(Error::invalid("P·O is undefined for P = O")),
            FFPoint::Affine { x, .. } => x,
        };
        let dd = x.den().degree().unwrap_or(0);
        if dd % 2 == 1 {
            return Err(Error::verification("odd pole order of x at a finite place"));
        }
        let xi = x.at_infinity(2);
        let pole = xi.den().low_order().unwrap_or(0) as i64 - xi.num().low_order().unwrap_or(0) as i64;
        let inf = pole.max(0);
        if inf % 2 == 1 {
            return Err(Error::verification("odd pole order of x at infinity"));
        }
        Ok(rat(dd as i64 + inf, 2))
    }

    /// Component index `k ∈ {0, …, m_v − 1}` met by `P` on a fiber, reduced
    /// to `k ≤ n/2` on `I_n`.
    pub fn component_of(&self, p: &FFPoint, fiber: &SingularFiber) -> Result<u32> {
        let (x, y) = match p {
            FFPoint::O => return Ok(0),
            FFPoint::Affine { x, y } => (x, y),
        };
        let Some(x0) = &fiber.singular_x else {
            return Ok(0);
        };
        let (xv, yv, at) = match &fiber.place {
            Place::Finite(t0) => (x.clone(), y.clone(), t0.clone()),
            Place::Infinity => (x.at_infinity(2), y.at_infinity(3), Rational::zero()),
            Place::Algebraic(_) => return Ok(0),
        };
        let ox = xv.order_at(&at).unwrap_or(isize::MAX);
        if ox < 0 {
            return Ok(0);
        }
        if xv.eval(&at).as_ref() != Some(x0) || !yv.eval(&at).is_some_and(|v| v.is_zero()) {
            return Ok(0);
        }
        match fiber.kodaira {
            Kodaira::III => Ok(1),
            Kodaira::I(n) => {
                let oy = yv.order_at(&at).map_or(u32::MAX, |o| o as u32);
                Ok(oy.min(n / 2))
            }
            Kodaira::II => Ok(0),
        }
    }

    /// Component label in `0..m_v`. On `I_n` with `n ≥ 3` a section through
    /// the node with `k < n/2` is labelled `k` on the branch
    /// `y ≈ +β(x − x₀)` (β > 0) and `n − k` on the other.
    pub fn component_label(&self, p: &FFPoint, fiber: &SingularFiber) -> Result<u32> {
        let k = self.component_of(p, fiber)?;
        let Kodaira::I(n) = fiber.kodaira else {
            return Ok(k);
        };
        if k == 0 || 2 * k == n {
            return Ok(k);
        }
        let (FFPoint::Affine { x, y }, Some(x0)) = (p, &fiber.singular_x) else {
            return Ok(k);
        };
        let (xv, yv, at, a2) = match &fiber.place {
            Place::Finite(t0) => (x.clone(), y.clone(), t0.clone(), self.quartic.b2().eval(t0)),
            Place::Infinity => (x.at_infinity(2), y.at_infinity(3), Rational::zero(), self.quartic.b2().reverse(2).coeff(0)),
            Place::Algebraic(_) => return Ok(k),
        };
        // the fiber cubic is (x − x₀)²(x − x₁) with x₀ + x₀ + x₁ = −a₂
        let x1 = -a2 - x0 - x0;
        let beta = rational_sqrt(&(x0 - &x1))
            .ok_or_else(|| Error::unsupported(format!("branches of the {} fiber at {} are not rational", fiber.kodaira, fiber.place)))?;
        let dx = &xv - &RatFunc::constant(x0.clone());
        let ratio = &yv / &dx;
        let lead = ratio
            .eval(&at)
            .ok_or_else(|| Error::verification("section is tangent to a branch of the fiber node"))?;
        Ok(if lead == beta { k } else { n - k })
    }

    /// Labelled components met by `P` on every reducible fiber.
    pub fn component_assignment(&self, p: &FFPoint) -> Result<Vec<(SingularFiber, u32)>> {
        self.reducible_fibers().map(|f| Ok((f.clone(), self.component_label(p, f)?))).collect()
    }

    fn self_pairing_oriented(&self, p: &FFPoint, flipped: bool) -> Result<Rational> {
        if p.is_zero() {
            return Ok(Rational::zero());
        }
        let mut h = int(2) + self.intersection_with_zero(p)? * int(2);
        for f in self.reducible_fibers() {
            let mut k = self.component_of(p, f)?;
            if flipped && k > 0 {
                k = f.kodaira.components() - k;
            }
            h -= contribution(f.kodaira, k, k);
        }
        if h.is_zero() {
            return Err(Error::verification(format!("point {p} has height 0 but is not O")));
        }
        Ok(h)
    }

    pub fn self_pairing(&self, p: &FFPoint) -> Result<Rational> {
        self.check(p)?;
        self.self_pairing_oriented(p, false)
    }

    /// Height pairing by polarization.
    pub fn height_pairing(&self, p: &FFPoint, q: &FFPoint) -> Result<Rational> {
        self.height_pairing_oriented(p, q, false)
    }

    /// Same pairing with every component label `k` replaced by `m_v − k`.
    pub fn height_pairing_flipped(&self, p: &FFPoint, q: &FFPoint) -> Result<Rational> {
        self.height_pairing_oriented(p, q, true)
    }

    fn height_pairing_oriented(&self, p: &FFPoint, q: &FFPoint, flipped: bool) -> Result<Rational> {
        self.check(p)?;
        self.check(q)?;
        self.pairing_unchecked(p, q, flipped)
    }

    fn pairing_unchecked(&self, p: &FFPoint, q: &FFPoint, flipped: bool) -> Result<Rational> {
        if p.is_zero() || q.is_zero() {
            return Ok(Rational::zero());
        }
        let s = self.add_unchecked(p, q);
        let hs = self.self_pairing_oriented(&s, flipped)?;
        let hp = self.self_pairing_oriented(p, flipped)?;
        let hq = self.self_pairing_oriented(q, flipped)?;
        Ok((hs - hp - hq) / int(2))
    }

    pub fn gram_matrix(&self, sections: &[FFPoint]) -> Result<Matrix> {
        self.gram_oriented(sections, false)
    }

    pub fn gram_matrix_flipped(&self, sections: &[FFPoint]) -> Result<Matrix> {
        self.gram_oriented(sections, true)
    }

    fn gram_oriented(&self, sections: &[FFPoint], flipped: bool) -> Result<Matrix> {
        for s in sections {
            self.check(s)?;
        }
        let n = sections.len();
        let diag = sections.iter().map(|s| self.self_pairing_oriented(s, flipped)).collect::<Result<Vec<_>>>()?;
        let mut m = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            m[i][i] = diag[i].clone();
            for j in i + 1..n {
                let v = if sections[i].is_zero() || sections[j].is_zero() {
                    Rational::zero()
                } else {
                    let s = self.add_unchecked(&sections[i], &sections[j]);
                    (self.self_pairing_oriented(&s, flipped)? - &diag[i] - &diag[j]) / int(2)
                };
                m[i][j] = v.clone();
                m[j][i] = v;
            }
        }
        Ok(m)
    }

    /// Basis from named sections; the Gram matrix must be nonsingular.
    pub fn basis(&self, names: Vec<String>, sections: Vec<FFPoint>) -> Result<MWBasis> {
        let gram = self.gram_matrix(&sections)?;
        let det = determinant(&gram);
        if det.is_zero() {
            return Err(Error::verification("Gram matrix of the basis is singular"));
        }
        Ok(MWBasis { names, sections, gram, det })
    }

    /// Basis from dp-free lines with chosen branches.
    pub fn basis_from_lines(&self, lines: &[BasisLine]) -> Result<MWBasis> {
        let sections = lines.iter().map(|l| self.basis_section(l)).collect::<Result<Vec<_>>>()?;
        self.basis(lines.iter().map(|l| l.name.to_string()).collect(), sections)
    }

    /// Integer coordinates of `P` in the basis, checked by reconstruction.
    pub fn mw_coordinates(&self, p: &FFPoint, basis: &MWBasis) -> Result<MWVector> {
        self.check(p)?;
        if p.is_zero() {
            return Ok(MWVector { coords: vec![0; basis.len()] });
        }
        let hp = self.self_pairing_oriented(p, false)?;
        let mut rhs = Vec::with_capacity(basis.len());
        for (i, s) in basis.sections.iter().enumerate() {
            let sum = self.add_unchecked(p, s);
            let hs = if sum.is_zero() { Rational::zero() } else { self.self_pairing_oriented(&sum, false)? };
            rhs.push((hs - &hp - &basis.gram[i][i]) / int(2));
        }
        let sol = solve(&basis.gram, &rhs).ok_or_else(|| Error::verification("Gram matrix is singular"))?;
        let mut coords = Vec::with_capacity(sol.len());
        for a in &sol {
            if !a.is_integer() {
                return Err(Error::verification(format!(
                    "non-integral coordinate {} for {p}",
                    crate::algebra::fmt_rational(a)
                )));
            }
            let v: i64 = a
                .to_integer()
                .try_into()
                .map_err(|_| Error::unsupported("coordinate does not fit in 64 bits"))?;
            coords.push(v);
        }
        let back = self.combination_unchecked(&coords, &basis.sections);
        if &back != p {
            return Err(Error::verification(format!("reconstruction of {p} from {coords:?} does not match")));
        }
        Ok(MWVector { coords })
    }
}

/// Ordered dp-free basis with its Gram matrix.
#[derive(Clone, Debug)]
pub struct MWBasis {
    pub names: Vec<String>,
    pub sections: Vec<FFPoint>,
    pub gram: Matrix,
    pub det: Rational,
}

impl MWBasis {
    pub fn len(&self) -> usize {
        self.sections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sections.is_empty()
    }

    pub fn expect_det(&self, expected: &Rational) -> Result<()> {
        if &self.det == expected {
            Ok(())
        } else {
            Err(Error::verification(format!(
                "Gram determinant {} differs from the expected {}",
                crate::algebra::fmt_rational(&self.det),
                crate::algebra::fmt_rational(expected)
            )))
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Integer coordinates with respect to an [`MWBasis`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MWVector {
    pub coords: Vec<i64>,
}

impl MWVector {
    pub fn neg(&self) -> MWVector {
        MWVector { coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn equal_up_to_sign(&self, other: &MWVector) -> bool {
        self == other || &self.neg() == other
    }
}

impl fmt::Display for MWVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// True iff every coordinate is even.
pub fn two_divisible(v: &MWVector) -> bool {
    v.coords.iter().all(|c| c % 2 == 0)
}

fn singular_fibers_of(q: &QuarticModel) -> Result<Vec<SingularFiber>> {
    let (a2, a4, a6) = (q.b2(), q.b3(), q.b4());
    let disc = discriminant(a2, a4, a6);
    if disc.is_zero() {
        return Err(Error::invalid("generic fiber is singular (discriminant vanishes identically)"));
    }
    let c4 = c4_invariant(a2, a4);
    let mut fibers = Vec::new();
    for (factor, m) in squarefree_decompose(&disc)?.factors {
        let mut rest = factor.clone();
        for t0 in rational_roots(&factor) {
            rest = rest.exact_div(&UniPoly::linear_root(&t0))?;
            let c4_vanishes = c4.eval(&t0).is_zero();
            let kodaira = kodaira_type(m, c4_vanishes, &Place::Finite(t0.clone()))?;
            let singular_x = if kodaira.components() >= 2 {
                let cubic = UniPoly::from_coeffs(vec![a6.eval(&t0), a4.eval(&t0), a2.eval(&t0), Rational::one()]);
                Some(double_root(&cubic)?)
            } else {
                None
            };
            fibers.push(SingularFiber { place: Place::Finite(t0), kodaira, singular_x, count: 1 });
        }
        if rest.degree().unwrap_or(0) > 0 {
            let c4_vanishes = c4.is_zero() || rest.divides(&c4) || gcd(&rest, &c4)?.degree().unwrap_or(0) > 0;
            let kodaira = kodaira_type(m, c4_vanishes, &Place::Algebraic(rest.clone()))?;
            if kodaira.components() >= 2 {
                return Err(Error::unsupported(format!(
                    "reducible fiber of type {kodaira} at irrational location (roots of {rest})"
                )));
            }
            if c4_vanishes && !rest.divides(&c4) {
                return Err(Error::unsupported(format!("fibers at roots of {rest} have mixed types")));
            }
            let count = rest.degree().expect("nonconstant") as u32;
            fibers.push(SingularFiber { place: Place::Algebraic(rest), kodaira, singular_x: None, count });
        }
    }
    // place at infinity, in the chart s = 1/t
    let deg_disc = disc.degree().expect("nonzero");
    if deg_disc > 12 {
        return Err(Error::invalid("discriminant degree exceeds 12"));
    }
    let ord_inf = 12 - deg_disc as u32;
    if ord_inf > 0 {
        let c4_vanishes = c4.is_zero() || c4.degree().unwrap_or(0) < 4;
        let kodaira = kodaira_type(ord_inf, c4_vanishes, &Place::Infinity)?;
        let singular_x = if kodaira.components() >= 2 {
            let cubic = UniPoly::from_coeffs(vec![
                a6.reverse(6).coeff(0),
                a4.reverse(4).coeff(0),
                a2.reverse(2).coeff(0),
                Rational::one(),
            ]);
            Some(double_root(&cubic)?)
        } else {
            None
        };
        fibers.push(SingularFiber { place: Place::Infinity, kodaira, singular_x, count: 1 });
    }
    Ok(fibers)
}

fn kodaira_type(ord_disc: u32, c4_vanishes: bool, place: &Place) -> Result<Kodaira> {
    let k = if !c4_vanishes {
        Kodaira::I(ord_disc)
    } else {
        match ord_disc {
            2 => Kodaira::II,
            3 => Kodaira::III,
            _ => {
                return Err(Error::unsupported(format!(
                    "additive fiber with discriminant order {ord_disc} at {place} (only II and III are supported)"
                )))
            }
        }
    };
    if let Kodaira::I(n) = k {
        if n > 4 {
            return Err(Error::unsupported(format!("fiber of type I{n} at {place} (only I1..I4 are supported)")));
        }
    }
    Ok(k)
}

/// The repeated root of a cubic with a multiple root.
fn double_root(cubic: &UniPoly) -> Result<Rational> {
    let g = gcd(cubic, &cubic.derivative())?;
    let sf = squarefree_decompose(&g)?;
    match sf.factors.as_slice() {
        [(lin, _)] if lin.degree() == Some(1) => Ok(-lin.coeff(0)),
        _ => Err(Error::verification("singular fiber cubic has no unique multiple root")),
    }
}

/// Discriminant of `x³ + a2 x² + a4 x + a6`, scaled by 16.
pub fn discriminant(a2: &UniPoly, a4: &UniPoly, a6: &UniPoly) -> UniPoly {
    let a2sq = a2 * a2;
    let terms = [
        (&(&a2sq * a2) * a6).scale(&int(-4)),
        &a2sq * &(a4 * a4),
        (&(a2 * a4) * a6).scale(&int(18)),
        (&(a4 * a4) * a4).scale(&int(-4)),
        (a6 * a6).scale(&int(-27)),
    ];
    terms.iter().fold(UniPoly::zero(), |acc, t| &acc + t).scale(&int(16))
}

pub fn c4_invariant(a2: &UniPoly, a4: &UniPoly) -> UniPoly {
    (&(a2 * a2) - &a4.scale(&int(3))).scale(&int(16))
}

impl SurfaceModel {
    /// The MW element of the bisection `y = αx + β`: minus the third point of
    /// the line `y = αx + β` on the cubic.
    pub fn bisection_element(&self, alpha: &UniPoly, beta: &UniPoly, g1: &UniPoly) -> FFPoint {
        // x³ + b₂x² + … − (αx + β)² = (x² + g1 x + g0)(x − x_R)
        let x_r = &(g1 - self.quartic.b2()) + &(alpha * alpha);
        let y_r = &(alpha * &x_r) + beta;
        FFPoint::from_polys(x_r, -y_r)
    }
}
