use zf_core::algebra::{int, UniPoly};
use zf_core::catalog;
use zf_core::conic::{bisect_conic, ConicCurve};
use zf_core::mw::{MWBasis, SurfaceModel};
use zf_core::quartic::QuarticModel;
use zf_core::zariski::{
    base_point_invariance, distinguish, find_club_point, invariants, phi1, splitting_table, splitting_type,
    sub_arrangements, Arrangement, SplittingType,
};

fn two_nodal() -> (SurfaceModel, MWBasis, Vec<ConicCurve>) {
    let s = SurfaceModel::new(QuarticModel::from_normal_form(catalog::two_nodal_quartic()).unwrap()).unwrap();
    let b = s.basis_from_lines(&catalog::two_nodal_lines()).unwrap();
    let cs = catalog::five_plet_recipes()
        .iter()
        .map(|r| {
            let p = s.combination(&r.word, &b.sections).unwrap();
            bisect_conic(&p, &UniPoly::from_coeffs(vec![r.r0.clone(), r.r1.clone()]), &s).unwrap()
        })
        .collect();
    (s, b, cs)
}

fn st(low: u32, high: u32) -> SplittingType {
    SplittingType { low, high }
}

fn five_arrangements() -> Vec<Arrangement> {
    let (s, b, cs) = two_nodal();
    catalog::five_plet_arrangements()
        .into_iter()
        .map(|(label, [i, j])| Arrangement::new(label, s.clone(), b.clone(), vec![cs[i].clone(), cs[j].clone()]).unwrap())
        .collect()
}

#[test]
fn pairwise_splitting_types() {
    let (s, _, cs) = two_nodal();
    let q = s.quartic();
    let expected = [((2, 3), st(0, 4)), ((2, 4), st(1, 3)), ((2, 5), st(2, 2)), ((0, 1), st(0, 4)), ((0, 2), st(2, 2))];
    for ((i, j), t) in expected {
        assert_eq!(splitting_type(&cs[i], &cs[j], q).unwrap(), t, "C{} C{}", i + 1, j + 1);
        assert_eq!(splitting_type(&cs[j], &cs[i], q).unwrap(), t);
    }
}

#[test]
fn five_plet_is_distinguished() {
    let arrs = five_arrangements();
    let report = distinguish(&arrs).unwrap();
    let counts: Vec<usize> = report.entries.iter().map(|e| e.phi1.count_ones).collect();
    assert_eq!(counts, vec![2, 1, 0, 0, 0]);
    assert!(report.distinguished);
    let table = splitting_table(&report);
    assert_eq!(table[&(st(0, 4), 2)], vec!["B1"]);
    assert_eq!(table[&(st(2, 2), 1)], vec!["B2"]);
    assert_eq!(table[&(st(0, 4), 0)], vec!["B3"]);
    assert_eq!(table[&(st(1, 3), 0)], vec!["B4"]);
    assert_eq!(table[&(st(2, 2), 0)], vec!["B5"]);

    let twice = distinguish(&[arrs[0].clone(), arrs[0].clone()]).unwrap();
    assert!(!twice.distinguished);
}

#[test]
fn phi1_follows_conic_order() {
    let arrs = five_arrangements();
    let b2 = &arrs[1];
    let swapped = Arrangement::new("B2'", b2.surface.clone(), b2.basis.clone(), vec![b2.conics[1].clone(), b2.conics[0].clone()])
        .unwrap();
    assert_eq!(phi1(b2).unwrap().bits, vec![1, 0]);
    assert_eq!(phi1(&swapped).unwrap().bits, vec![0, 1]);
    assert_eq!(invariants(&swapped).unwrap().key(), invariants(b2).unwrap().key());
}

#[test]
fn sub_arrangement_counts() {
    let (s, b, cs) = two_nodal();
    let all = Arrangement::new("C1..C5", s, b, cs[..5].to_vec()).unwrap();
    assert_eq!(sub_arrangements(&all, 1).unwrap().len(), 5);
    assert_eq!(sub_arrangements(&all, 2).unwrap().len(), 10);
    assert_eq!(sub_arrangements(&all, 5).unwrap().len(), 1);
    assert!(sub_arrangements(&all, 0).is_err());
    assert!(sub_arrangements(&all, 6).is_err());
    let pair = &five_arrangements()[0];
    assert_eq!(sub_arrangements(pair, 1).unwrap().len(), 2);
    assert_eq!(sub_arrangements(pair, 2).unwrap().len(), 1);
    let labels: Vec<String> = sub_arrangements(&all, 2).unwrap().iter().take(2).map(|a| a.label.clone()).collect();
    assert_eq!(labels, vec!["C1..C5[1,2]", "C1..C5[1,3]"]);
}

#[test]
fn tacnodal_pair_is_distinguished_by_phi1() {
    let s = SurfaceModel::new(QuarticModel::from_normal_form(catalog::tacnodal_quartic()).unwrap()).unwrap();
    let b = s.basis_from_lines(&catalog::tacnodal_lines()[..4]).unwrap();
    let doubled = s.mul(2, &b.sections[0]).unwrap();
    let diff = s.sub(&b.sections[1], &b.sections[2]).unwrap();
    let r = |r1: i64, r0: i64, d: i64| UniPoly::from_coeffs(vec![int(r0), zf_core::algebra::rat(r1, d)]);
    let splitting = bisect_conic(&doubled, &r(-1, 0, 8), &s).unwrap();
    let irreducible = bisect_conic(&diff, &r(-1, 0, 1), &s).unwrap();
    let a = Arrangement::new("split", s.clone(), b.clone(), vec![splitting]).unwrap();
    let c = Arrangement::new("irreducible", s, b, vec![irreducible]).unwrap();
    let report = distinguish(&[a, c]).unwrap();
    assert!(report.distinguished);
    assert_eq!(report.witnesses[0].invariant, Some("phi1"));
}

#[test]
fn lift_vector_is_independent_of_base_point() {
    let (_, _, cs) = two_nodal();
    let curve = catalog::two_nodal_quartic();
    let z1 = [int(0), int(1), int(0)];
    let z2 = find_club_point(&curve, &z1, 3).unwrap().expect("a second rational base point");
    assert_eq!(z2, [int(0), int(-271350), int(1)]);
    let report = base_point_invariance(&cs[0], &curve, &catalog::two_nodal_lines(), &z1, &z2).unwrap();
    assert!(report.agree, "{} vs {}", report.first.vector, report.second.vector);
    assert!(report.first.vector.coords == vec![-2, 0, 0, 0, 0] || report.first.vector.coords == vec![2, 0, 0, 0, 0]);
    let same = base_point_invariance(&cs[0], &curve, &catalog::two_nodal_lines(), &z1, &z1).unwrap();
    assert!(same.agree);
}
