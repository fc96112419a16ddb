use proptest::prelude::*;
use zf_core::algebra::{int, perfect_square, resultant_x, BiPoly, Rational, UniPoly};
use zf_core::catalog;
use zf_core::conic::{bisect_conic, contact_verify, contact_verify_curve, ConicCurve};
use zf_core::mw::{FFPoint, MWBasis, SurfaceModel};
use zf_core::quartic::{Mat3, PlaneCurve, QuarticModel};
use zf_core::zariski::splitting_type;

fn uni(c: &[i64]) -> UniPoly {
    UniPoly::from_ints(c)
}

fn bipoly() -> impl Strategy<Value = BiPoly> {
    // x-degree 1..=2 with constant leading coefficient, t-degree ≤ 2 below it
    (1usize..=2, prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 2), 1i64..=3).prop_map(|(dx, low, lead)| {
        let mut cs: Vec<UniPoly> = low.iter().take(dx).map(|c| uni(c)).collect();
        cs.push(uni(&[lead]));
        BiPoly::from_coeffs(cs)
    })
}

fn small_poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-9i64..=9, 1..=5).prop_map(|c| uni(&c)).prop_filter("nonzero", |p| !p.is_zero())
}

fn two_nodal() -> (SurfaceModel, MWBasis) {
    let s = SurfaceModel::new(QuarticModel::from_normal_form(catalog::two_nodal_quartic()).unwrap()).unwrap();
    let b = s.basis_from_lines(&catalog::two_nodal_lines()).unwrap();
    (s, b)
}

fn tacnodal() -> (SurfaceModel, MWBasis) {
    let s = SurfaceModel::new(QuarticModel::from_normal_form(catalog::tacnodal_quartic()).unwrap()).unwrap();
    let b = s.basis_from_lines(&catalog::tacnodal_lines()[..4]).unwrap();
    (s, b)
}

fn point(s: &SurfaceModel, b: &MWBasis, w: &[i64]) -> FFPoint {
    s.combination(w, &b.sections).unwrap()
}

fn word() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-1i64..=1, 4)
}

/// Product of elementary matrices, so the determinant is 1.
fn unimodular() -> impl Strategy<Value = Mat3> {
    prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 3).prop_map(|steps| {
        let mut m: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| int(i64::from(i == j))));
        for (i, j, k) in steps {
            if i == j {
                continue;
            }
            // row_i += k * row_j
            for c in 0..3 {
                let add = &m[j][c] * int(k);
                m[i][c] += add;
            }
        }
        m
    })
}

fn first_conic(s: &SurfaceModel, b: &MWBasis) -> ConicCurve {
    let r = &catalog::five_plet_recipes()[0];
    let p = s.combination(&r.word, &b.sections).unwrap();
    bisect_conic(&p, &UniPoly::from_coeffs(vec![r.r0.clone(), r.r1.clone()]), s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn resultant_is_multiplicative(f in bipoly(), g in bipoly(), h in bipoly()) {
        let fg = &f * &g;
        let lhs = resultant_x(&fg, &h).unwrap();
        let rhs = &resultant_x(&f, &h).unwrap() * &resultant_x(&g, &h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn perfect_square_round_trip(h in small_poly(), c in 1i64..=50) {
        let sq = (&h * &h).scale(&int(c));
        let (c2, h2) = perfect_square(&sq).unwrap();
        prop_assert_eq!((&h2 * &h2).scale(&c2), sq.clone());
        // h times a non-square linear factor is never a square
        let skewed = &sq * &uni(&[c, 1]);
        prop_assert!(perfect_square(&skewed).is_none());
    }

    #[test]
    fn group_axioms(u in word(), v in word(), w in word()) {
        let (s, b) = tacnodal();
        let (p, q, r) = (point(&s, &b, &u), point(&s, &b, &v), point(&s, &b, &w));
        prop_assert_eq!(s.add(&p, &FFPoint::O).unwrap(), p.clone());
        prop_assert!(s.add(&p, &s.neg(&p)).unwrap().is_zero());
        let pq = s.add(&p, &q).unwrap();
        prop_assert_eq!(&pq, &s.add(&q, &p).unwrap());
        prop_assert_eq!(s.add(&pq, &r).unwrap(), s.add(&p, &s.add(&q, &r).unwrap()).unwrap());
    }

    #[test]
    fn height_is_bilinear_and_symmetric(u in word(), v in word(), w in word()) {
        let (s, b) = tacnodal();
        let (p, q, r) = (point(&s, &b, &u), point(&s, &b, &v), point(&s, &b, &w));
        let pair = |a: &FFPoint, c: &FFPoint| -> Rational {
            if a.is_zero() || c.is_zero() { int(0) } else { s.height_pairing(a, c).unwrap() }
        };
        let pq = s.add(&p, &q).unwrap();
        prop_assert_eq!(pair(&pq, &r), pair(&p, &r) + pair(&q, &r));
        prop_assert_eq!(pair(&p, &q), pair(&q, &p));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn contact_verdict_is_shear_invariant(m in unimodular()) {
        let (s, b) = two_nodal();
        let c = first_conic(&s, &b);
        let q = s.quartic().curve().clone();
        let base = contact_verify(&c, s.quartic()).unwrap();
        let moved = ConicCurve::new(c.curve().transform(&m)).unwrap();
        let cert = contact_verify_curve(&moved, &q.transform(&m)).unwrap();
        prop_assert_eq!(cert.tangency_count, base.tangency_count);
        prop_assert!(cert.recheck());

        let mut f = c.curve().form().clone();
        f.add_term([0, 0, 2], int(1));
        let bad = ConicCurve::new(PlaneCurve::new(f).unwrap()).unwrap();
        let moved_bad = ConicCurve::new(bad.curve().transform(&m)).unwrap();
        prop_assert!(contact_verify(&bad, s.quartic()).is_err());
        prop_assert!(contact_verify_curve(&moved_bad, &q.transform(&m)).is_err());
    }
}

#[test]
fn splitting_type_is_symmetric_on_the_five_plet() {
    let (s, b) = two_nodal();
    let cs: Vec<ConicCurve> = catalog::five_plet_recipes()
        .iter()
        .map(|r| {
            let p = s.combination(&r.word, &b.sections).unwrap();
            bisect_conic(&p, &UniPoly::from_coeffs(vec![r.r0.clone(), r.r1.clone()]), &s).unwrap()
        })
        .collect();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            let a = splitting_type(&cs[i], &cs[j], s.quartic()).unwrap();
            assert_eq!(a, splitting_type(&cs[j], &cs[i], s.quartic()).unwrap());
            assert_eq!(a.low + a.high, 4);
        }
    }
}
