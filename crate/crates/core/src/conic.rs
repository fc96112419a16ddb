//! Conics from bisections of the elliptic surface, and exact checks of how
//! they meet the quartic and each other.
//!
//! A line `y = l(x) = r(t)(x − x_P) + y_P` through a section `P` meets the
//! cubic in `P` and in the two points cut out by a monic quadratic
//! `g(t, x) = x² + g₁x + g₀`; `g = 0` is the conic, and the branch `y = l`
//! over it represents `−P` in the Mordell–Weil group.
//!
//! Intersection questions are answered with resultants in `x` after a
//! coordinate shear that puts every intersection point in the affine chart
//! and separates points with the same `t`.

use std::fmt;

use num_traits::Zero;

use crate::algebra::{
    determinant, gcd, int, inverse_mod, perfect_square, rational_sqrt, resultant_x, squarefree_decompose, BiPoly,
    MPoly, RatFunc, Rational, UniPoly,
};
use crate::mw::{FFPoint, SurfaceModel};
use crate::quartic::{classify_singularities, mat3_identity, Mat3, PlaneCurve, QuarticModel, SingularPoint};
use crate::{Error, Result};

/// How a conic was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicRecipe {
    pub r: UniPoly,
    pub point: FFPoint,
    pub word: Option<Vec<i64>>,
}

/// A smooth plane conic, stored with a primitive integer equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicCurve {
    curve: PlaneCurve,
    recipe: Option<ConicRecipe>,
}

impl ConicCurve {
    pub fn new(curve: PlaneCurve) -> Result<Self> {
        if curve.degree() != 2 {
            return Err(Error::invalid(format!("expected a conic, got degree {}", curve.degree())));
        }
        let c = ConicCurve { curve: curve.primitive(), recipe: None };
        if determinant(&c.matrix()).is_zero() {
            return Err(Error::invalid(format!("conic {} is singular", c.curve)));
        }
        Ok(c)
    }

    pub fn with_recipe(mut self, recipe: ConicRecipe) -> Self {
        self.recipe = Some(recipe);
        self
    }

    pub fn curve(&self) -> &PlaneCurve {
        &self.curve
    }

    pub fn recipe(&self) -> Option<&ConicRecipe> {
        self.recipe.as_ref()
    }

    /// The MW element carried by the bisection, `−P` for `C(r, P)`.
    pub fn element(&self, s: &SurfaceModel) -> Option<FFPoint> {
        self.recipe.as_ref().map(|r| s.neg(&r.point))
    }

    pub fn affine(&self) -> BiPoly {
        self.curve.affine()
    }

    /// Symmetric coefficient matrix in the order `(T, X, Z)`.
    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        let f = self.curve.form();
        let half = Rational::new(1.into(), 2.into());
        let mut m = vec![vec![Rational::zero(); 3]; 3];
        for i in 0..3 {
            for j in i..3 {
                let mut e = [0u32; 3];
                e[i] += 1;
                e[j] += 1;
                let c = f.coeff(&e);
                if i == j {
                    m[i][i] = c;
                } else {
                    m[i][j] = &c * &half;
                    m[j][i] = c * &half;
                }
            }
        }
        m
    }

    pub fn same_curve(&self, other: &ConicCurve) -> bool {
        self.curve.equal_up_to_scalar(&other.curve)
    }
}

impl fmt::Display for ConicCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.curve)
    }
}

/// Monic `g` with `F − l² = (x − x_P)·g` over ℚ(t), as `(g₁, g₀)`.
fn bisect_quotient(p: &FFPoint, r: &UniPoly, s: &SurfaceModel) -> Result<(RatFunc, RatFunc)> {
    let (xp, yp) = match p {
        FFPoint::O => return Err(Error::invalid("bisection needs a finite section, not O")),
        FFPoint::Affine { x, y } => (x, y),
    };
    if !s.on_curve(p) {
        return Err(Error::invalid(format!("point {p} is not on the curve")));
    }
    let q = s.quartic();
    let r = RatFunc::from_poly(r.clone());
    let m = yp - &(&r * xp);
    // x³ + (b₂ − r²)x² + (b₃ − 2rm)x + (b₄ − m²), synthetic division by x − x_P
    let c2 = &RatFunc::from_poly(q.b2().clone()) - &(&r * &r);
    let c1 = &RatFunc::from_poly(q.b3().clone()) - &(&r * &m).scale(&int(2));
    let c0 = &RatFunc::from_poly(q.b4().clone()) - &(&m * &m);
    let g1 = &c2 + xp;
    let g0 = &c1 + &(xp * &g1);
    let rem = &c0 + &(xp * &g0);
    if !rem.is_zero() {
        return Err(Error::verification("F − l² is not divisible by x − x(P)"));
    }
    Ok((g1, g0))
}

/// The conic `C(r, P)`.
pub fn bisect_conic(p: &FFPoint, r: &UniPoly, s: &SurfaceModel) -> Result<ConicCurve> {
    let (g1, g0) = bisect_quotient(p, r, s)?;
    let (Some(g1), Some(g0)) = (g1.as_poly(), g0.as_poly()) else {
        return Err(Error::invalid("bisection quotient has non-polynomial coefficients, not a conic"));
    };
    if g1.degree().unwrap_or(0) > 1 || g0.degree().unwrap_or(0) > 2 {
        return Err(Error::invalid("bisection quotient has total degree above 2, not a conic"));
    }
    let g = BiPoly::from_coeffs(vec![g0.clone(), g1.clone(), UniPoly::one()]);
    let conic = ConicCurve::new(PlaneCurve::from_affine(&g, 2)?)?;
    Ok(conic.with_recipe(ConicRecipe { r: r.clone(), point: p.clone(), word: None }))
}

/// The family `C(r₁t + a, P)` with `a` symbolic, as a polynomial in
/// `(a, t, x)`, scaled to be monic in `x`.
pub fn conic_family(p: &FFPoint, r1: &Rational, s: &SurfaceModel) -> Result<MPoly<3>> {
    // the quotient is quadratic in a: interpolate at 0, 1, 2 and confirm at 3
    let sample = |a: i64| -> Result<BiPoly> {
        let r = UniPoly::from_coeffs(vec![int(a), r1.clone()]);
        let (g1, g0) = bisect_quotient(p, &r, s)?;
        let (Some(g1), Some(g0)) = (g1.as_poly(), g0.as_poly()) else {
            return Err(Error::invalid("family member has non-polynomial coefficients"));
        };
        Ok(BiPoly::from_coeffs(vec![g0.clone(), g1.clone(), UniPoly::one()]))
    };
    let v: Vec<BiPoly> = (0..4).map(sample).collect::<Result<_>>()?;
    let half = Rational::new(1.into(), 2.into());
    // Newton form: v0 + a·d1 + a(a−1)/2·d2
    let d1 = &v[1] - &v[0];
    let d2 = &(&v[2] - &v[1].scale(&int(2))) + &v[0];
    let c0 = v[0].clone();
    let c2 = d2.scale(&half);
    let c1 = &d1 - &c2;
    let predicted = &(&c0 + &c1.scale(&int(3))) + &c2.scale(&int(9));
    if predicted != v[3] {
        return Err(Error::verification("bisection family is not quadratic in the parameter"));
    }
    let mut out = MPoly::zero();
    for (k, c) in [c0, c1, c2].iter().enumerate() {
        for (i, q) in c.coeffs().iter().enumerate() {
            for (j, coef) in q.coeffs().iter().enumerate() {
                if !coef.is_zero() {
                    out.add_term([k as u32, j as u32, i as u32], coef.clone());
                }
            }
        }
    }
    Ok(out)
}

/// A branch `y = αx + β` of the double cover over a conic
/// `x² + g₁x + g₀ = 0`, with the MW element it represents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicLift {
    pub alpha: UniPoly,
    pub beta: UniPoly,
    pub element: FFPoint,
}

/// Finds `δ = αx + β` with `δ² ≡ F (mod g)` by the norm/trace formula for
/// square roots in a quadratic extension.
pub fn lift(conic: &ConicCurve, s: &SurfaceModel) -> Result<ConicLift> {
    let (alpha, beta) = contact_branch(conic, s.quartic())?;
    let g1 = monic_affine(conic.curve()).coeff(1);
    let x_r = &(&g1 - s.quartic().b2()) + &(&alpha * &alpha);
    let y_r = &(&alpha * &x_r) + &beta;
    let third = FFPoint::from_polys(x_r, y_r);
    if !s.on_curve(&third) {
        return Err(Error::verification("third intersection of the lift line is off the curve"));
    }
    Ok(ConicLift { element: s.neg(&third), alpha, beta })
}

/// `(α, β)` with `(αx + β)² ≡ F(t, x, 1)` modulo the conic.
pub fn contact_branch(conic: &ConicCurve, q: &QuarticModel) -> Result<(UniPoly, UniPoly)> {
    let g = conic.affine();
    if g.degree_x() != Some(2) || !g.is_const_leading() {
        return Err(Error::unsupported("conic passes through the base point; lift needs x² with constant coefficient"));
    }
    let g = g.scale(&g.coeff(2).coeff(0).recip());
    let (g1, g0) = (g.coeff(1), g.coeff(0));
    let f = q.affine().clone();
    let (_, gamma) = f.divrem_monic(&g)?;
    let (c1, c0) = (gamma.coeff(1), gamma.coeff(0));
    let norm = &(&(&c0 * &c0) - &(&(&c0 * &c1) * &g1)) + &(&(&c1 * &c1) * &g0);
    let trace = &c0.scale(&int(2)) - &(&c1 * &g1);

    let mut candidates = Vec::new();
    if let Some(n) = poly_sqrt(&norm) {
        for n in [n.clone(), -&n] {
            let tau2 = &trace + &n.scale(&int(2));
            if tau2.is_zero() {
                continue;
            }
            let Some(tau) = poly_sqrt(&tau2) else { continue };
            let (Ok(alpha), Ok(beta)) = (c1.exact_div(&tau), (&c0 + &n).exact_div(&tau)) else {
                continue;
            };
            candidates.push((alpha, beta));
        }
        if c1.is_zero() {
            // τ = 0 branch: δ = α(x + g₁/2) with α² = γ₀ / (g₁²/4 − g₀)
            let disc = &(&g1 * &g1).scale(&Rational::new(1.into(), 4.into())) - &g0;
            if let Ok(a2) = c0.exact_div(&disc) {
                if let Some(alpha) = poly_sqrt(&a2) {
                    let beta = (&alpha * &g1).scale(&Rational::new(1.into(), 2.into()));
                    candidates.push((alpha, beta));
                }
            }
        }
    }
    for (alpha, beta) in candidates {
        if alpha.degree().unwrap_or(0) > 1 || beta.degree().unwrap_or(0) > 2 {
            continue;
        }
        let delta = BiPoly::from_coeffs(vec![beta.clone(), alpha.clone()]);
        let (_, r) = (&(&delta * &delta) - &f).divrem_monic(&g)?;
        if r.is_zero() {
            return Ok((alpha, beta));
        }
    }
    Err(Error::verification(format!("conic {conic} is not a contact conic: F is not a square modulo its equation")))
}

/// Square root in ℚ[t] including the scalar.
fn poly_sqrt(p: &UniPoly) -> Option<UniPoly> {
    if p.is_zero() {
        return Some(UniPoly::zero());
    }
    let (c, h) = perfect_square(p)?;
    Some(h.scale(&rational_sqrt(&c)?))
}

/// Coordinate changes tried in order: the identity, then
/// `(T, X, Z) ↦ (T + pX, X, qT + rX + Z)` by increasing `|p| + |q| + |r|`.
pub fn shears() -> impl Iterator<Item = Mat3> {
    let max = 4i64;
    (0..=max).flat_map(move |n| {
        let mut v = Vec::new();
        for p in -n..=n {
            for q in -n..=n {
                for r in -n..=n {
                    if p.abs() + q.abs() + r.abs() == n {
                        v.push([[int(1), int(p), int(0)], [int(0), int(1), int(0)], [int(q), int(r), int(1)]]);
                    }
                }
            }
        }
        v
    })
}

fn base_point_free(c: &PlaneCurve) -> bool {
    !c.contains(&[int(0), int(1), int(0)])
}

/// Affine equation scaled so the `x²` coefficient is 1.
fn monic_affine(c: &PlaneCurve) -> BiPoly {
    let a = c.affine();
    let lc = a.coeff(2).coeff(0);
    a.scale(&lc.recip())
}

/// Proof that a conic is a contact conic of the quartic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactCertificate {
    pub resultant: UniPoly,
    pub c: Rational,
    pub h: UniPoly,
    pub tangency_count: u32,
    pub infinity_handled: bool,
    pub shear: Mat3,
}

impl ContactCertificate {
    /// `c·h²` reproduces the resultant.
    pub fn recheck(&self) -> bool {
        (&self.h * &self.h).scale(&self.c) == self.resultant
    }
}

pub fn contact_verify(conic: &ConicCurve, q: &QuarticModel) -> Result<ContactCertificate> {
    contact_verify_with(conic, q.curve(), q.singular_points())
}

/// [`contact_verify`] for a quartic in arbitrary coordinates.
pub fn contact_verify_curve(conic: &ConicCurve, quartic: &PlaneCurve) -> Result<ContactCertificate> {
    contact_verify_with(conic, quartic, &classify_singularities(quartic)?)
}

fn contact_verify_with(conic: &ConicCurve, quartic: &PlaneCurve, singular: &[SingularPoint]) -> Result<ContactCertificate> {
    for sp in singular {
        if conic.curve().contains(&sp.point) {
            return Err(Error::verification(format!(
                "conic passes through the {} of the quartic at {}",
                sp.kind,
                crate::quartic::fmt_point(&sp.point)
            )));
        }
    }
    let mut last_err = None;
    for m in shears() {
        let c = conic.curve().transform(&m);
        if !base_point_free(&c) {
            continue;
        }
        let cg = monic_affine(&c);
        let f = quartic.transform(&m).affine();
        let res = resultant_x(&cg, &f)?;
        if res.degree() != Some(8) {
            // some intersection lies on Z = 0 in these coordinates
            continue;
        }
        let (_, rho) = f.divrem_monic(&cg)?;
        let rho1 = rho.coeff(1);
        let Some((c0, h)) = perfect_square(&res) else {
            return Err(Error::verification(format!(
                "conic meets the quartic with odd multiplicity (resultant {res} is not a square)"
            )));
        };
        if gcd(&h, &rho1)?.degree() != Some(0) {
            last_err = Some("intersection points share a vertical line in every tried chart");
            continue;
        }
        let sf = squarefree_decompose(&h)?;
        if !sf.is_squarefree() {
            return Err(Error::verification(format!(
                "fewer than 4 distinct tangencies (multiplicity pattern {:?})",
                sf.multiplicity_pattern().iter().map(|m| 2 * m).collect::<Vec<_>>()
            )));
        }
        let count = h.degree().expect("degree 4") as u32;
        return Ok(ContactCertificate {
            resultant: res,
            c: c0,
            h,
            tangency_count: count,
            infinity_handled: m != mat3_identity(),
            shear: m,
        });
    }
    Err(Error::unsupported(last_err.unwrap_or("no shear puts the intersection in general position")))
}

/// Pair data in a chart where both conics' intersection points are affine
/// and separated by `t`: the resultant and `x` as a function of `t` on it.
struct PairChart {
    shear: Mat3,
    res: UniPoly,
    x_on_res: UniPoly,
}

fn pair_chart(a: &ConicCurve, b: &ConicCurve) -> Result<PairChart> {
    if a.same_curve(b) {
        return Err(Error::invalid("identical conics"));
    }
    for m in shears() {
        let ca = a.curve().transform(&m);
        if !base_point_free(&ca) {
            continue;
        }
        let ga = monic_affine(&ca);
        let gb = b.curve().transform(&m).affine();
        let res = resultant_x(&ga, &gb)?;
        if res.degree() != Some(4) {
            continue;
        }
        let (_, rho) = gb.divrem_monic(&ga)?;
        let (rho1, rho0) = (rho.coeff(1), rho.coeff(0));
        let Some(inv) = inverse_mod(&rho1, &res) else { continue };
        if rho1.is_zero() {
            continue;
        }
        let x_on_res = (-&(&rho0 * &inv)).rem(&res)?;
        return Ok(PairChart { shear: m, res, x_on_res });
    }
    Err(Error::unsupported("no shear separates the intersection points of the two conics"))
}

/// True iff the conics meet in four distinct points.
pub fn transversal(a: &ConicCurve, b: &ConicCurve) -> Result<bool> {
    let chart = pair_chart(a, b)?;
    Ok(squarefree_decompose(&chart.res)?.is_squarefree())
}

/// Triples `(i, j, k)` of conics with a common point.
pub fn triple_points(conics: &[ConicCurve]) -> Result<Vec<[usize; 3]>> {
    let n = conics.len();
    for i in 0..n {
        for j in i + 1..n {
            if conics[i].same_curve(&conics[j]) {
                return Err(Error::invalid(format!("conics {i} and {j} coincide")));
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if j + 1 >= n {
                continue;
            }
            let chart = pair_chart(&conics[i], &conics[j])?;
            for (k, ck) in conics.iter().enumerate().skip(j + 1) {
                let g = ck.curve().transform(&chart.shear).affine();
                let on = g.eval_x(&chart.x_on_res).rem(&chart.res)?;
                let common = if on.is_zero() { chart.res.clone() } else { gcd(&chart.res, &on)? };
                if common.degree().unwrap_or(0) > 0 {
                    out.push([i, j, k]);
                }
            }
        }
    }
    Ok(out)
}

/// True iff no three of the conics pass through one point.
pub fn no_triple_point(conics: &[ConicCurve]) -> Result<bool> {
    Ok(triple_points(conics)?.is_empty())
}

/// Chart data for splitting computations: the pair resultant, `x` on it, and
/// the shear used.
pub fn pair_intersection(a: &ConicCurve, b: &ConicCurve) -> Result<(Mat3, UniPoly, UniPoly)> {
    let c = pair_chart(a, b)?;
    Ok((c.shear, c.res, c.x_on_res))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conic(terms: &[([u32; 3], i64)]) -> ConicCurve {
        ConicCurve::new(PlaneCurve::new(MPoly::from_terms(terms.iter().map(|(e, c)| (*e, int(*c))))).unwrap()).unwrap()
    }

    fn circle(a: i64, b: i64, r2: i64) -> ConicCurve {
        // (T − aZ)² + (X − bZ)² − r2 Z²
        conic(&[
            ([2, 0, 0], 1),
            ([0, 2, 0], 1),
            ([1, 0, 1], -2 * a),
            ([0, 1, 1], -2 * b),
            ([0, 0, 2], a * a + b * b - r2),
        ])
    }

    #[test]
    fn line_pair_is_singular() {
        let f = MPoly::from_terms([([2, 0, 0], int(1)), ([0, 2, 0], int(-1))]);
        assert!(matches!(ConicCurve::new(PlaneCurve::new(f).unwrap()), Err(Error::Invalid(_))));
    }

    #[test]
    fn matrix_of_circle() {
        let m = circle(0, 0, 1).matrix();
        assert_eq!(m[0][0], int(1));
        assert_eq!(m[2][2], int(-1));
        assert_eq!(m[0][1], int(0));
    }

    #[test]
    fn transversal_circles() {
        assert!(transversal(&circle(0, 0, 25), &circle(1, 0, 25)).unwrap());
        // tangent at (5, 0)
        assert!(!transversal(&circle(0, 0, 25), &circle(7, 0, 4)).unwrap());
        assert!(matches!(transversal(&circle(0, 0, 1), &circle(0, 0, 1)), Err(Error::Invalid(_))));
    }

    #[test]
    fn triple_point_detection() {
        // circles share the circular points at infinity
        assert_eq!(triple_points(&[circle(0, 0, 25), circle(6, 0, 25), circle(3, 8, 1)]).unwrap(), vec![[0, 1, 2]]);
        let c0 = circle(0, 0, 25);
        let c1 = conic(&[([2, 0, 0], 1), ([0, 2, 0], -1), ([0, 0, 2], 7)]);
        let through = conic(&[([1, 1, 0], 1), ([0, 0, 2], -12)]);
        let away = conic(&[([1, 1, 0], 1), ([0, 0, 2], -13)]);
        assert_eq!(triple_points(&[c0.clone(), c1.clone(), through]).unwrap(), vec![[0, 1, 2]]);
        assert!(no_triple_point(&[c0.clone(), c1.clone(), away]).unwrap());
        assert!(no_triple_point(&[c0, c1]).unwrap());
    }

    #[test]
    fn shear_order_starts_with_identity() {
        let v: Vec<Mat3> = shears().take(2).collect();
        assert_eq!(v[0], mat3_identity());
        assert_ne!(v[1], mat3_identity());
        assert_eq!(shears().count(), 1 + 6 + 18 + 38 + 66);
    }
}
