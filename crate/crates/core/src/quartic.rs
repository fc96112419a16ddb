//! Plane quartics in the normal form `X³Z + b₂X² + b₃X + b₄` with
//! distinguished point `z_o = [0:1:0]` and tangent line `Z = 0`.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{
    determinant, rational_roots, resultant_x, squarefree_decompose, BiPoly, MPoly, Rational, UniPoly,
};
use crate::{Error, Result};

pub const T: usize = 0;
pub const X: usize = 1;
pub const Z: usize = 2;

pub type ProjPoint = [Rational; 3];
pub type Mat3 = [[Rational; 3]; 3];

/// Rescales so the last nonzero coordinate is 1.
pub fn normalize_point(p: &ProjPoint) -> Result<ProjPoint> {
    let k = (0..3).rev().find(|&i| !p[i].is_zero()).ok_or_else(|| Error::invalid("the zero vector is not a point"))?;
    let inv = p[k].recip();
    Ok(std::array::from_fn(|i| &p[i] * &inv))
}

pub fn same_point(p: &ProjPoint, q: &ProjPoint) -> bool {
    match (normalize_point(p), normalize_point(q)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

pub fn fmt_point(p: &ProjPoint) -> String {
    let p = normalize_point(p).unwrap_or_else(|_| p.clone());
    format!(
        "[{}:{}:{}]",
        crate::algebra::fmt_rational(&p[0]),
        crate::algebra::fmt_rational(&p[1]),
        crate::algebra::fmt_rational(&p[2])
    )
}

pub fn mat3_identity() -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Rational::one() } else { Rational::zero() }))
}

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| &a[i][k] * &b[k][j]).sum()))
}

pub fn mat3_apply(a: &Mat3, v: &ProjPoint) -> ProjPoint {
    std::array::from_fn(|i| (0..3).map(|k| &a[i][k] * &v[k]).sum())
}

pub fn mat3_inverse(a: &Mat3) -> Option<Mat3> {
    let rows: Vec<Vec<Rational>> = a.iter().map(|r| r.to_vec()).collect();
    let det = determinant(&rows);
    if det.is_zero() {
        return None;
    }
    let m = |i: usize, j: usize| &a[i % 3][j % 3];
    // adjugate via cyclic cofactors
    Some(std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let c = m(j + 1, i + 1) * m(j + 2, i + 2) - m(j + 1, i + 2) * m(j + 2, i + 1);
            c / &det
        })
    }))
}

/// Homogeneous plane curve in `(T, X, Z)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlaneCurve {
    form: MPoly<3>,
    degree: u32,
}

impl PlaneCurve {
    pub fn new(form: MPoly<3>) -> Result<Self> {
        let degree = form.total_degree().ok_or_else(|| Error::invalid("curve equation is identically zero"))?;
        if !form.is_homogeneous() {
            return Err(Error::invalid("curve equation is not homogeneous"));
        }
        Ok(PlaneCurve { form, degree })
    }

    /// The line `aT + bX + cZ = 0`.
    pub fn line(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        Self::new(MPoly::from_terms([([1, 0, 0], a), ([0, 1, 0], b), ([0, 0, 1], c)]))
    }

    /// Homogenizes `f(t, x)` to the given degree.
    pub fn from_affine(f: &BiPoly, degree: u32) -> Result<Self> {
        let mut form = MPoly::zero();
        for (i, c) in f.coeffs().iter().enumerate() {
            for (a, q) in c.coeffs().iter().enumerate() {
                let d = (a + i) as u32;
                if d > degree {
                    return Err(Error::invalid("affine equation exceeds the requested degree"));
                }
                form.add_term([a as u32, i as u32, degree - d], q.clone());
            }
        }
        Self::new(form)
    }

    pub fn form(&self) -> &MPoly<3> {
        &self.form
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn eval(&self, p: &ProjPoint) -> Rational {
        self.form.eval(p)
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.eval(p).is_zero()
    }

    pub fn gradient_at(&self, p: &ProjPoint) -> [Rational; 3] {
        std::array::from_fn(|i| self.form.partial(i).eval(p))
    }

    pub fn is_singular_at(&self, p: &ProjPoint) -> bool {
        self.contains(p) && self.gradient_at(p).iter().all(|g| g.is_zero())
    }

    /// The pulled-back curve `C'(v) = C(M v)`.
    pub fn transform(&self, m: &Mat3) -> Self {
        let form = self.form.linear_substitute(m);
        PlaneCurve { form, degree: self.degree }
    }

    /// `C(t, x, 1)` as a polynomial in `x` over ℚ[t].
    pub fn affine(&self) -> BiPoly {
        let dx = self.form.degree_in(X).unwrap_or(0) as usize;
        let mut coeffs = vec![vec![Rational::zero(); self.degree as usize + 1]; dx + 1];
        for (e, c) in self.form.terms() {
            coeffs[e[X] as usize][e[T] as usize] += c;
        }
        BiPoly::from_coeffs(coeffs.into_iter().map(UniPoly::from_coeffs).collect())
    }

    /// Scales to coprime integer coefficients, with the coefficient of the
    /// lexicographically largest monomial positive.
    pub fn primitive(&self) -> Self {
        use num_integer::Integer;
        let mut lcm = num_bigint::BigInt::one();
        for (_, c) in self.form.terms() {
            lcm = lcm.lcm(c.denom());
        }
        let mut g = num_bigint::BigInt::zero();
        for (_, c) in self.form.terms() {
            g = g.gcd(&(c * Rational::from_integer(lcm.clone())).to_integer());
        }
        let mut s = Rational::new(lcm, g);
        if self.leading_coefficient() * &s < Rational::zero() {
            s = -s;
        }
        PlaneCurve { form: self.form.scale(&s), degree: self.degree }
    }

    fn leading_coefficient(&self) -> Rational {
        let mut best: Option<(&[u32; 3], &Rational)> = None;
        for (e, c) in self.form.terms() {
            if best.is_none_or(|(b, _)| e > b) {
                best = Some((e, c));
            }
        }
        best.map(|(_, c)| c.clone()).unwrap_or_default()
    }

    pub fn equal_up_to_scalar(&self, other: &PlaneCurve) -> bool {
        self.primitive() == other.primitive()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PlaneCurve { form: self.form.scale(c), degree: self.degree }
    }
}

impl fmt::Display for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.form.fmt_vars(&["T", "X", "Z"]))
    }
}

impl fmt::Debug for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlaneCurve({self})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SingularityKind {
    Node,
    Tacnode,
}

impl fmt::Display for SingularityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SingularityKind::Node => "node",
            SingularityKind::Tacnode => "tacnode",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub point: ProjPoint,
    pub kind: SingularityKind,
}

/// Intersection pattern of the tangent line at `z_o` with the quartic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClubReport {
    pub tangent_line: PlaneCurve,
    pub pattern: Vec<u32>,
    pub satisfied: bool,
}

/// A quartic in normal form, with the coordinate change that produced it.
#[derive(Clone, Debug)]
pub struct QuarticModel {
    curve: PlaneCurve,
    affine: BiPoly,
    b2: UniPoly,
    b3: UniPoly,
    b4: UniPoly,
    transform: Mat3,
    singular_points: Vec<SingularPoint>,
}

impl QuarticModel {
    /// Accepts a quartic already in normal form.
    pub fn from_normal_form(curve: PlaneCurve) -> Result<Self> {
        Self::with_transform(curve, mat3_identity())
    }

    fn with_transform(curve: PlaneCurve, transform: Mat3) -> Result<Self> {
        if curve.degree() != 4 {
            return Err(Error::invalid("quartic must have degree 4"));
        }
        let f = curve.form();
        if !f.coeff(&[0, 4, 0]).is_zero() || !f.coeff(&[1, 3, 0]).is_zero() || !f.coeff(&[0, 3, 1]).is_one() {
            return Err(Error::invalid(
                "quartic is not in normal form: need X^3*Z with coefficient 1 and no X^4, T*X^3 terms",
            ));
        }
        let affine = curve.affine();
        let (b2, b3, b4) = (affine.coeff(2), affine.coeff(1), affine.coeff(0));
        let mut model = QuarticModel { curve, affine, b2, b3, b4, transform, singular_points: Vec::new() };
        model.singular_points = classify_singularities(&model.curve)?;
        Ok(model)
    }

    pub fn curve(&self) -> &PlaneCurve {
        &self.curve
    }

    /// `F(t, x, 1)`.
    pub fn affine(&self) -> &BiPoly {
        &self.affine
    }

    pub fn b2(&self) -> &UniPoly {
        &self.b2
    }

    pub fn b3(&self) -> &UniPoly {
        &self.b3
    }

    pub fn b4(&self) -> &UniPoly {
        &self.b4
    }

    /// `M` with `F(v) = G(M v)` for the original quartic `G`.
    pub fn transform(&self) -> &Mat3 {
        &self.transform
    }

    pub fn singular_points(&self) -> &[SingularPoint] {
        &self.singular_points
    }

    /// The distinguished point in the original coordinates.
    pub fn base_point(&self) -> ProjPoint {
        normalize_point(&mat3_apply(&self.transform, &[Rational::zero(), Rational::one(), Rational::zero()]))
            .expect("invertible transform")
    }

    /// Pulls a curve given in the original coordinates into model coordinates.
    pub fn pull(&self, c: &PlaneCurve) -> PlaneCurve {
        c.transform(&self.transform)
    }

    /// The original quartic, recovered from the model.
    pub fn original(&self) -> PlaneCurve {
        self.curve.transform(&mat3_inverse(&self.transform).expect("invertible transform"))
    }
}

/// Moves `z` to `[0:1:0]` and its tangent line to `Z = 0`, with the `X³Z`
/// coefficient scaled to 1.
pub fn normalize_quartic(g: &PlaneCurve, z: &ProjPoint) -> Result<QuarticModel> {
    if g.degree() != 4 {
        return Err(Error::invalid("quartic must have degree 4"));
    }
    if !g.contains(z) {
        return Err(Error::invalid(format!("point {} is not on the quartic", fmt_point(z))));
    }
    let grad = g.gradient_at(z);
    if grad.iter().all(|c| c.is_zero()) {
        return Err(Error::invalid(format!("point {} is singular on the quartic", fmt_point(z))));
    }
    let k = (0..3).find(|&i| !z[i].is_zero()).expect("nonzero point");
    let unit = |i: usize| -> [Rational; 3] {
        std::array::from_fn(|j| if i == j { Rational::one() } else { Rational::zero() })
    };
    let mut t_row = None;
    for i in (0..3).filter(|&i| i != k) {
        // z_k e_i - z_i e_k vanishes at z
        let row: [Rational; 3] = std::array::from_fn(|j| {
            let a = if j == i { z[k].clone() } else { Rational::zero() };
            let b = if j == k { z[i].clone() } else { Rational::zero() };
            a - b
        });
        let independent = (0..3).any(|a| {
            (a + 1..3).any(|b| !(&row[a] * &grad[b] - &row[b] * &grad[a]).is_zero())
        });
        if independent {
            t_row = Some(row);
            break;
        }
    }
    let t_row = t_row.expect("two independent forms vanish at z");
    let a: Mat3 = [t_row, unit(k), grad.clone()];
    let ainv = mat3_inverse(&a).ok_or_else(|| Error::invalid("degenerate coordinate change"))?;
    let g1 = g.transform(&ainv);
    let lambda = g1.form().coeff(&[0, 3, 1]);
    if lambda.is_zero() {
        return Err(Error::invalid("X^3*Z coefficient vanishes after the coordinate change"));
    }
    let mut scale = mat3_identity();
    scale[2][2] = lambda.recip();
    let m = mat3_mul(&ainv, &scale);
    QuarticModel::with_transform(g.transform(&m), m)
}

/// Intersection pattern of `Z = 0` with the model quartic.
pub fn club_check(q: &QuarticModel) -> ClubReport {
    let tangent_line = PlaneCurve::line(Rational::zero(), Rational::zero(), Rational::one()).expect("line");
    // F(T, X, 0) = T^m G(T, X); the T^m factor is the contact at z_o
    let mut coeffs = vec![Rational::zero(); 5];
    for (e, c) in q.curve.form().terms() {
        if e[Z] == 0 {
            coeffs[e[T] as usize] += c;
        }
    }
    // coefficient of T^a X^(4-a); as a polynomial in u = T/X
    let binary = UniPoly::from_coeffs(coeffs);
    let pattern = match binary.low_order() {
        None => Vec::new(),
        Some(m) => {
            // roots in X/T with T = 1: reverse to a polynomial in X
            let residual = binary.reverse(4);
            let mut pat = vec![m as u32];
            if residual.degree().unwrap_or(0) > 0 {
                pat.extend(squarefree_decompose(&residual).expect("nonzero").multiplicity_pattern());
            }
            pat.sort_unstable_by(|a, b| b.cmp(a));
            pat
        }
    };
    let satisfied = pattern == vec![2, 1, 1] || pattern == vec![3, 1];
    ClubReport { tangent_line, pattern, satisfied }
}

/// Finds and classifies all singular points; only ℚ-rational nodes and
/// tacnodes are supported.
pub fn classify_singularities(curve: &PlaneCurve) -> Result<Vec<SingularPoint>> {
    let m = chart_shear(curve);
    let moved = curve.transform(&m);
    let mut out = Vec::new();
    for p in singular_points(&moved)? {
        let kind = classify_at(&moved, &p)?;
        out.push(SingularPoint { point: normalize_point(&mat3_apply(&m, &p))?, kind });
    }
    Ok(out)
}

/// A unimodular `M` with `M·[0:1:0]` off the curve, so the search chart has
/// a constant leading coefficient in `x`.
fn chart_shear(curve: &PlaneCurve) -> Mat3 {
    let mut m = mat3_identity();
    let d = i64::from(curve.degree()) + 1;
    for j in 0..=d {
        for k in 0..=d {
            let column = [Rational::from_integer(k.into()), Rational::one(), Rational::from_integer(j.into())];
            if !curve.contains(&column) {
                m[T][X] = column[0].clone();
                m[Z][X] = column[2].clone();
                return m;
            }
        }
    }
    m
}

fn singular_points(curve: &PlaneCurve) -> Result<Vec<ProjPoint>> {
    let mut pts = Vec::new();
    // affine part Z = 1
    let f = curve.affine();
    if f.degree_x().unwrap_or(0) == 0 {
        return Err(Error::unsupported("curve has no x-dependence in the affine chart"));
    }
    let fx = f.derivative_x();
    let ft = f.derivative_t();
    let d = f.degree_x().expect("nonzero");
    // t0 carries a singular point iff f and fx + λ ft share a root for d + 1 values of λ
    let mut common: Option<UniPoly> = None;
    for lam in 0..=d as i64 {
        let h = &fx + &ft.scale(&Rational::from_integer(lam.into()));
        if h.is_zero() {
            continue;
        }
        let r = resultant_x(&f, &h)?;
        if r.is_zero() {
            return Err(Error::invalid("curve is not reduced"));
        }
        common = Some(match common {
            None => r,
            Some(c) => crate::algebra::gcd(&c, &r)?,
        });
    }
    let mut common = common.expect("at least one resultant");
    if !f.is_const_leading() {
        return Err(Error::unsupported("affine chart leading coefficient is not constant"));
    }
    for t0 in rational_roots(&common) {
        let g = crate::algebra::gcd(&f.eval_t(&t0), &fx.eval_t(&t0))?;
        let g = crate::algebra::gcd(&g, &ft.eval_t(&t0))?;
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        let xs = rational_roots(&g);
        if xs.len() != squarefree_decompose(&g)?.distinct_roots() {
            return Err(Error::unsupported("unclassified, non-rational singular point"));
        }
        for x0 in xs {
            pts.push([t0.clone(), x0, Rational::one()]);
        }
        while let Ok(q) = common.exact_div(&UniPoly::linear_root(&t0)) {
            common = q;
        }
    }
    if common.degree().unwrap_or(0) > 0 {
        return Err(Error::unsupported("unclassified, non-rational singular point"));
    }
    // line at infinity Z = 0
    let grads: Vec<MPoly<3>> = (0..3).map(|i| curve.form().partial(i)).collect();
    let zero = Rational::zero();
    let one = Rational::one();
    if curve.is_singular_at(&[zero.clone(), one.clone(), zero.clone()]) {
        pts.push([zero.clone(), one.clone(), zero.clone()]);
    }
    // points [1 : u : 0]
    let restrict = |m: &MPoly<3>| -> UniPoly {
        let mut c = vec![Rational::zero(); curve.degree() as usize + 1];
        for (e, v) in m.terms() {
            if e[Z] == 0 {
                c[e[X] as usize] += v;
            }
        }
        UniPoly::from_coeffs(c)
    };
    let mut g = restrict(curve.form());
    for gr in &grads {
        let r = restrict(gr);
        if !(g.is_zero() && r.is_zero()) {
            g = crate::algebra::gcd(&g, &r)?;
        }
    }
    if g.is_zero() {
        return Err(Error::invalid("curve is not reduced along Z = 0"));
    }
    if g.degree().unwrap_or(0) > 0 {
        let xs = rational_roots(&g);
        if xs.len() != squarefree_decompose(&g)?.distinct_roots() {
            return Err(Error::unsupported("unclassified, non-rational singular point"));
        }
        for u in xs {
            pts.push([one.clone(), u, zero.clone()]);
        }
    }
    Ok(pts)
}

/// Local equation at `p` in an affine chart, with `p` moved to the origin.
fn local_equation(curve: &PlaneCurve, p: &ProjPoint) -> MPoly<2> {
    let k = (0..3).rev().find(|&i| !p[i].is_zero()).expect("nonzero point");
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let images: [MPoly<2>; 3] = std::array::from_fn(|i| {
        if i == k {
            MPoly::one()
        } else {
            let slot = others.iter().position(|&o| o == i).expect("index");
            &MPoly::constant(&p[i] / &p[k]) + &MPoly::var(slot)
        }
    });
    curve.form().substitute(&images)
}

fn classify_at(curve: &PlaneCurve, p: &ProjPoint) -> Result<SingularityKind> {
    let f = local_equation(curve, p);
    let (a, b, c) = (f.coeff(&[2, 0]), f.coeff(&[1, 1]), f.coeff(&[0, 2]));
    let here = fmt_point(p);
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::unsupported(format!("singularity at {here} has multiplicity at least 3")));
    }
    let disc = &b * &b - Rational::from_integer(4.into()) * &a * &c;
    if !disc.is_zero() {
        return Ok(SingularityKind::Node);
    }
    // tangent form l = v + βu (or u + βv); rotate so the tangent line is V = 0
    let two = Rational::from_integer(2.into());
    let (u, v) = (MPoly::<2>::var(0), MPoly::<2>::var(1));
    let images: [MPoly<2>; 2] = if !c.is_zero() {
        let beta = &b / (&two * &c);
        // l = v + βu: u = U, v = V - βU
        [u.clone(), &v - &u.scale(&beta)]
    } else {
        let beta = &b / (&two * &a);
        // l = u + βv: v = U, u = V - βU
        [&v - &u.scale(&beta), u.clone()]
    };
    let g = f.substitute(&images);
    // blow up V = U W and divide by U^2
    let mut strict = MPoly::<2>::zero();
    for (e, coef) in g.terms() {
        let du = e[0] + e[1];
        strict.add_term([du - 2, e[1]], coef.clone());
    }
    let lin = (strict.coeff(&[1, 0]), strict.coeff(&[0, 1]));
    if !strict.coeff(&[0, 0]).is_zero() {
        return Err(Error::unsupported(format!("singularity at {here}: unexpected blowup")));
    }
    if !lin.0.is_zero() || !lin.1.is_zero() {
        return Err(Error::unsupported(format!("singularity at {here} is a cusp")));
    }
    let (a2, b2, c2) = (strict.coeff(&[2, 0]), strict.coeff(&[1, 1]), strict.coeff(&[0, 2]));
    let disc2 = &b2 * &b2 - Rational::from_integer(4.into()) * &a2 * &c2;
    if disc2.is_zero() {
        return Err(Error::unsupported(format!("singularity at {here} is worse than a tacnode")));
    }
    Ok(SingularityKind::Tacnode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn form(terms: &[([u32; 3], i64)]) -> PlaneCurve {
        PlaneCurve::new(MPoly::from_terms(terms.iter().map(|(e, c)| (*e, int(*c))))).unwrap()
    }

    #[test]
    fn fermat_quartic_is_smooth() {
        let f = form(&[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]);
        assert!(classify_singularities(&f).unwrap().is_empty());
    }

    #[test]
    fn node_and_tacnode_and_cusp() {
        // x^2 - t^2 + higher terms, homogenized to degree 4 with a smooth tail
        let node = form(&[([0, 2, 2], 1), ([2, 0, 2], -1), ([4, 0, 0], 1), ([0, 4, 0], 1)]);
        let sp = classify_singularities(&node).unwrap();
        assert_eq!(sp.len(), 1);
        assert_eq!(sp[0].kind, SingularityKind::Node);

        // x^2 - t^4 (two tangent branches) plus x^4
        let tac = form(&[([0, 2, 2], 1), ([4, 0, 0], -1), ([0, 4, 0], 1)]);
        let sp = classify_singularities(&tac).unwrap();
        assert_eq!(sp[0].point, [int(0), int(0), int(1)]);
        assert_eq!(sp[0].kind, SingularityKind::Tacnode);

        // x^2 Z^2 - t^3 Z + x^4: cusp
        let cusp = form(&[([0, 2, 2], 1), ([3, 0, 1], -1), ([0, 4, 0], 1)]);
        assert!(matches!(classify_singularities(&cusp), Err(Error::Unsupported(_))));
    }

    #[test]
    fn singularities_through_the_chart_point() {
        // the model quartic passes through [0:1:0], its shear does not
        let q = crate::catalog::two_nodal_quartic();
        let m: Mat3 = [[int(1), int(1), int(0)], [int(0), int(1), int(0)], [int(0), int(0), int(1)]];
        for (curve, back) in [(q.clone(), mat3_identity()), (q.transform(&m), m)] {
            let sp = classify_singularities(&curve).unwrap();
            let pts: Vec<ProjPoint> =
                sp.iter().map(|p| normalize_point(&mat3_apply(&back, &p.point)).unwrap()).collect();
            assert_eq!(pts.len(), 2);
            assert!(pts.contains(&[int(0), int(0), int(1)]));
            assert!(pts.contains(&[int(2025), int(0), int(1)]));
            assert!(sp.iter().all(|p| p.kind == SingularityKind::Node));
        }
    }

    #[test]
    fn transform_inverse() {
        let m: Mat3 = [[int(1), int(2), int(0)], [int(0), int(1), int(5)], [int(1), int(0), int(1)]];
        let inv = mat3_inverse(&m).unwrap();
        assert_eq!(mat3_mul(&m, &inv), mat3_identity());
    }

    #[test]
    fn affine_round_trip() {
        let f = form(&[([0, 3, 1], 1), ([1, 2, 1], -98), ([2, 1, 1], 3), ([4, 0, 0], 36)]);
        assert_eq!(PlaneCurve::from_affine(&f.affine(), 4).unwrap(), f);
    }

    #[test]
    fn bitangent_pattern_fails_club() {
        // X^3 Z + T^2 X^2 - 2 T^3 X + T^4 + Z^4: F(T,X,0) = T^2 (X - T)^2
        let f = form(&[([0, 3, 1], 1), ([2, 2, 0], 1), ([3, 1, 0], -2), ([4, 0, 0], 1), ([0, 0, 4], 1)]);
        let q = QuarticModel::from_normal_form(f).unwrap();
        let r = club_check(&q);
        assert_eq!(r.pattern, vec![2, 2]);
        assert!(!r.satisfied);
    }
}
