//! Invariants of arrangements `𝒬 + Σ 𝒞ᵢ` of a quartic and contact conics.
//!
//! Two invariants are computed. The Φ¹ vector records, per conic, whether the
//! quartic splits in the double cover branched along that conic; it is read
//! off the conic's Mordell–Weil vector (`±(2, 0, …, 0)` splits). The
//! splitting type of a pair of conics compares the two lift branches of `F`
//! at the four points where the conics meet.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{gcd, rational_roots, BiPoly, Matrix, Rational, UniPoly};
use crate::catalog::BasisLine;
use crate::conic::{contact_branch, contact_verify, lift, pair_intersection, triple_points, ConicCurve, ContactCertificate};
use crate::mw::{MWBasis, MWVector, SurfaceModel};
use crate::quartic::{club_check, fmt_point, normalize_quartic, same_point, PlaneCurve, ProjPoint};
use crate::{Error, Result};

/// Intersection data shared by arrangements of the same combinatorial type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub singularities: Vec<String>,
    pub conic_count: usize,
    /// Multiplicity pattern of each conic against the quartic, sorted.
    pub contact_patterns: Vec<Vec<u32>>,
    /// Multiplicity pattern of each pair of conics, sorted.
    pub pair_patterns: Vec<Vec<u32>>,
}

/// A verified arrangement: every conic is a contact conic, the conics meet
/// pairwise transversally and no three share a point.
#[derive(Clone, Debug)]
pub struct Arrangement {
    pub label: String,
    pub surface: SurfaceModel,
    pub basis: MWBasis,
    pub conics: Vec<ConicCurve>,
    pub certificates: Vec<ContactCertificate>,
    pub fingerprint: Fingerprint,
}

impl Arrangement {
    pub fn new(label: impl Into<String>, surface: SurfaceModel, basis: MWBasis, conics: Vec<ConicCurve>) -> Result<Self> {
        let label = label.into();
        let certificates = conics
            .iter()
            .enumerate()
            .map(|(i, c)| {
                contact_verify(c, surface.quartic())
                    .map_err(|e| e.context(format!("{label}: conic {} is not a contact conic", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut pair_patterns = Vec::new();
        for i in 0..conics.len() {
            for j in i + 1..conics.len() {
                if !crate::conic::transversal(&conics[i], &conics[j])? {
                    return Err(Error::invalid(format!("{label}: conics {} and {} are not transversal", i + 1, j + 1)));
                }
                pair_patterns.push(vec![1; 4]);
            }
        }
        if let Some([i, j, k]) = triple_points(&conics)?.first() {
            return Err(Error::invalid(format!("{label}: conics {}, {}, {} share a point", i + 1, j + 1, k + 1)));
        }
        let mut contact_patterns: Vec<Vec<u32>> =
            certificates.iter().map(|c| vec![2; c.tangency_count as usize]).collect();
        contact_patterns.sort();
        let fingerprint = Fingerprint {
            singularities: surface.quartic().singular_points().iter().map(|s| s.kind.to_string()).collect(),
            conic_count: conics.len(),
            contact_patterns,
            pair_patterns,
        };
        Ok(Arrangement { label, surface, basis, conics, certificates, fingerprint })
    }

    /// The arrangement restricted to the conics at `indices`.
    pub fn restrict(&self, indices: &[usize]) -> Arrangement {
        let conics: Vec<ConicCurve> = indices.iter().map(|&i| self.conics[i].clone()).collect();
        let certificates: Vec<ContactCertificate> = indices.iter().map(|&i| self.certificates[i].clone()).collect();
        let mut contact_patterns: Vec<Vec<u32>> =
            certificates.iter().map(|c| vec![2; c.tangency_count as usize]).collect();
        contact_patterns.sort();
        let n = conics.len();
        let fingerprint = Fingerprint {
            singularities: self.fingerprint.singularities.clone(),
            conic_count: n,
            contact_patterns,
            pair_patterns: vec![vec![1; 4]; n * n.saturating_sub(1) / 2],
        };
        let label = format!("{}[{}]", self.label, indices.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","));
        Arrangement {
            label,
            surface: self.surface.clone(),
            basis: self.basis.clone(),
            conics,
            certificates,
            fingerprint,
        }
    }
}

/// `Sub_k`: all sub-arrangements with `k` of the conics, in lexicographic
/// order of index sets.
pub fn sub_arrangements(a: &Arrangement, k: usize) -> Result<Vec<Arrangement>> {
    let n = a.conics.len();
    if k == 0 || k > n {
        return Err(Error::invalid(format!("k = {k} is out of range 1..={n}")));
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(a.restrict(&idx));
        let Some(pos) = (0..k).rev().find(|&i| idx[i] < n - k + i) else { break };
        idx[pos] += 1;
        for i in pos + 1..k {
            idx[i] = idx[i - 1] + 1;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Phi1Vector {
    pub bits: Vec<u8>,
    pub count_ones: usize,
}

impl fmt::Display for Phi1Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: Vec<String> = self.bits.iter().map(|b| b.to_string()).collect();
        write!(f, "[{}] ({} splitting)", bits.join(","), self.count_ones)
    }
}

/// Mordell–Weil vector of the conic's lift, from its recipe if it has one.
pub fn conic_vector(c: &ConicCurve, s: &SurfaceModel, basis: &MWBasis) -> Result<MWVector> {
    let element = match c.element(s) {
        Some(e) => e,
        None => lift(c, s)?.element,
    };
    s.mw_coordinates(&element, basis)
}

/// Splitting criterion: the lift is `±[2]s₀` in the basis.
pub fn splits(v: &MWVector) -> bool {
    let mut target = vec![0; v.coords.len()];
    if let Some(first) = target.first_mut() {
        *first = 2;
    }
    v.equal_up_to_sign(&MWVector { coords: target })
}

pub fn phi1(a: &Arrangement) -> Result<Phi1Vector> {
    let bits = a
        .conics
        .iter()
        .map(|c| conic_vector(c, &a.surface, &a.basis).map(|v| u8::from(splits(&v))))
        .collect::<Result<Vec<_>>>()?;
    let count_ones = bits.iter().filter(|&&b| b == 1).count();
    Ok(Phi1Vector { bits, count_ones })
}

/// Unordered agreement pattern `(a, 4 − a)` with `a ≤ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplittingType {
    pub low: u32,
    pub high: u32,
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.low, self.high)
    }
}

/// The quadratic form `H` with `H² ≡ F` modulo the conic.
fn branch_form(c: &ConicCurve, q: &crate::quartic::QuarticModel) -> Result<PlaneCurve> {
    let (alpha, beta) = contact_branch(c, q)?;
    PlaneCurve::from_affine(&BiPoly::from_coeffs(vec![beta, alpha]), 2)
}

pub fn splitting_type(ci: &ConicCurve, cj: &ConicCurve, q: &crate::quartic::QuarticModel) -> Result<SplittingType> {
    let (hi, hj) = (branch_form(ci, q)?, branch_form(cj, q)?);
    let (shear, res, x_on_res) = pair_intersection(ci, cj)?;
    if res.degree() != Some(4) {
        return Err(Error::unsupported("conics do not meet in four affine points"));
    }
    // values of the two branches at the intersection points, as classes mod res
    let at = |h: &PlaneCurve| -> Result<UniPoly> { h.transform(&shear).affine().eval_x(&x_on_res).rem(&res) };
    let (vi, vj) = (at(&hi)?, at(&hj)?);
    let count = |d: UniPoly| -> Result<u32> {
        if d.is_zero() {
            return Ok(4);
        }
        Ok(gcd(&res, &d)?.degree().unwrap_or(0) as u32)
    };
    let agree = count(&vi - &vj)?;
    let opposite = count(&vi + &vj)?;
    if agree + opposite != 4 {
        return Err(Error::verification(format!(
            "branch values do not pair up at the intersection points ({agree} agree, {opposite} opposite)"
        )));
    }
    Ok(SplittingType { low: agree.min(opposite), high: agree.max(opposite) })
}

/// Invariants of one arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementInvariants {
    pub label: String,
    pub phi1: Phi1Vector,
    /// Splitting type of every pair `(i, j)`, `i < j`.
    pub splitting: Vec<((usize, usize), SplittingType)>,
}

impl ArrangementInvariants {
    /// Order-independent comparison key.
    pub fn key(&self) -> (usize, Vec<SplittingType>) {
        let mut types: Vec<SplittingType> = self.splitting.iter().map(|(_, t)| *t).collect();
        types.sort();
        (self.phi1.count_ones, types)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub first: usize,
    pub second: usize,
    /// `"phi1"`, `"splitting"`, or `None` when nothing separates the pair.
    pub invariant: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub entries: Vec<ArrangementInvariants>,
    pub witnesses: Vec<Witness>,
    pub distinguished: bool,
}

pub fn invariants(a: &Arrangement) -> Result<ArrangementInvariants> {
    let phi1 = phi1(a)?;
    let mut splitting = Vec::new();
    for i in 0..a.conics.len() {
        for j in i + 1..a.conics.len() {
            splitting.push(((i, j), splitting_type(&a.conics[i], &a.conics[j], a.surface.quartic())?));
        }
    }
    Ok(ArrangementInvariants { label: a.label.clone(), phi1, splitting })
}

pub fn distinguish(arrangements: &[Arrangement]) -> Result<InvariantReport> {
    if let Some(first) = arrangements.first() {
        for a in &arrangements[1..] {
            if a.fingerprint != first.fingerprint {
                return Err(Error::invalid(format!(
                    "arrangements {} and {} have different combinatorics, so the comparison is vacuous",
                    first.label, a.label
                )));
            }
        }
    }
    let entries = arrangements.iter().map(invariants).collect::<Result<Vec<_>>>()?;
    Ok(report_from(entries))
}

/// Pairwise comparison of already computed invariants.
pub fn report_from(entries: Vec<ArrangementInvariants>) -> InvariantReport {
    let mut witnesses = Vec::new();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let (ki, kj) = (entries[i].key(), entries[j].key());
            let invariant = if ki.0 != kj.0 {
                Some("phi1")
            } else if ki.1 != kj.1 {
                Some("splitting")
            } else {
                None
            };
            witnesses.push(Witness { first: i, second: j, invariant });
        }
    }
    let distinguished = witnesses.iter().all(|w| w.invariant.is_some());
    InvariantReport { entries, witnesses, distinguished }
}

/// The 3×3 table of arrangements by splitting type (rows `(0,4)`, `(1,3)`,
/// `(2,2)`) and Φ¹ count (columns 0, 1, 2), for two-conic arrangements.
pub fn splitting_table(report: &InvariantReport) -> BTreeMap<(SplittingType, usize), Vec<String>> {
    let mut table: BTreeMap<(SplittingType, usize), Vec<String>> = BTreeMap::new();
    for e in &report.entries {
        if let [(_, t)] = e.splitting.as_slice() {
            table.entry((*t, e.phi1.count_ones)).or_default().push(e.label.clone());
        }
    }
    table
}

/// Rational points `[t:x:1]` of the curve with `|t| ≤ bound` and the
/// rational points on `Z = 0`, in scan order `t = 0, 1, −1, 2, …`.
pub fn rational_points(curve: &PlaneCurve, bound: i64) -> Result<Vec<ProjPoint>> {
    let one = Rational::from_integer(1.into());
    let zero = Rational::from_integer(0.into());
    let mut out = Vec::new();
    let f = curve.affine();
    for k in 0..=2 * bound {
        let t0 = if k % 2 == 0 { -(k / 2) } else { k / 2 + 1 };
        let t0 = Rational::from_integer(t0.into());
        let fx = f.eval_t(&t0);
        if fx.is_zero() {
            continue;
        }
        for x0 in rational_roots(&fx) {
            out.push([t0.clone(), x0, one.clone()]);
        }
    }
    // Z = 0: binary form in (T, X)
    let form = curve.form();
    let mut at_inf = vec![zero.clone(); curve.degree() as usize + 1];
    for (e, c) in form.terms() {
        if e[2] == 0 {
            at_inf[e[1] as usize] += c;
        }
    }
    let bin = UniPoly::from_coeffs(at_inf);
    if !bin.is_zero() {
        // roots in x with T = 1, plus [0:1:0] when the X^d coefficient vanishes
        for x0 in rational_roots(&bin) {
            out.push([one.clone(), x0, zero.clone()]);
        }
        if bin.degree() < Some(curve.degree() as usize) {
            out.push([zero.clone(), one.clone(), zero.clone()]);
        }
    }
    Ok(out)
}

/// First scanned smooth rational point other than `exclude` where the
/// tangent line meets the quartic as required for the elliptic model.
pub fn find_club_point(curve: &PlaneCurve, exclude: &ProjPoint, bound: i64) -> Result<Option<ProjPoint>> {
    for p in rational_points(curve, bound)? {
        if same_point(&p, exclude) || curve.is_singular_at(&p) {
            continue;
        }
        let Ok(q) = normalize_quartic(curve, &p) else { continue };
        if club_check(&q).satisfied {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Coordinates of a conic's lift at one base point.
#[derive(Clone, Debug)]
pub struct BasePointView {
    pub point: ProjPoint,
    pub signs: Vec<i64>,
    pub vector: MWVector,
}

#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub first: BasePointView,
    pub second: BasePointView,
    pub agree: bool,
}

/// Surface at `z` with the sections cut out by `lines`, each sign chosen so
/// the Gram matrix equals `reference` (first match in a fixed order).
fn basis_at(curve: &PlaneCurve, z: &ProjPoint, lines: &[BasisLine], reference: Option<&Matrix>) -> Result<(SurfaceModel, MWBasis, Vec<i64>)> {
    let q = normalize_quartic(curve, z)?;
    if !club_check(&q).satisfied {
        return Err(Error::invalid(format!("base point {} does not satisfy the tangency condition", fmt_point(z))));
    }
    let s = SurfaceModel::new(q)?;
    let mut plus = Vec::new();
    for l in lines {
        let pulled = s.quartic().pull(&l.line);
        let (p, m) = s
            .line_section(&pulled)
            .map_err(|e| e.context(format!("line {} at base point {}", l.name, fmt_point(z))))?;
        plus.push(match (reference, l.branch) {
            (Some(_), _) | (None, crate::catalog::Branch::Plus) => p,
            (None, crate::catalog::Branch::Minus) => m,
        });
    }
    let names: Vec<String> = lines.iter().map(|l| l.name.to_string()).collect();
    let gram = s.gram_matrix(&plus)?;
    let n = lines.len();
    let Some(reference) = reference else {
        let b = s.basis(names, plus)?;
        return Ok((s, b, lines.iter().map(|l| l.branch.sign()).collect()));
    };
    for mask in 0u32..(1 << n) {
        let signs: Vec<i64> = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        let matches = (0..n).all(|i| {
            (0..n).all(|j| gram[i][j].clone() * Rational::from_integer((signs[i] * signs[j]).into()) == reference[i][j])
        });
        if matches {
            let sections = plus.iter().zip(&signs).map(|(p, &e)| if e < 0 { s.neg(p) } else { p.clone() }).collect();
            let b = s.basis(names, sections)?;
            return Ok((s, b, signs));
        }
    }
    Err(Error::verification(format!(
        "no choice of branches at {} reproduces the reference Gram matrix",
        fmt_point(z)
    )))
}

/// Compares the conic's lift coordinates in the line bases at `z1` and `z2`;
/// the conic is given in the coordinates of `curve`.
pub fn base_point_invariance(
    c: &ConicCurve,
    curve: &PlaneCurve,
    lines: &[BasisLine],
    z1: &ProjPoint,
    z2: &ProjPoint,
) -> Result<InvarianceReport> {
    let view = |z: &ProjPoint, reference: Option<&Matrix>| -> Result<(BasePointView, Matrix)> {
        if c.curve().contains(z) {
            return Err(Error::invalid(format!("conic passes through the base point {}", fmt_point(z))));
        }
        let (s, b, signs) = basis_at(curve, z, lines, reference)?;
        let pulled = ConicCurve::new(s.quartic().pull(c.curve()))?;
        let vector = s.mw_coordinates(&lift(&pulled, &s)?.element, &b)?;
        Ok((BasePointView { point: z.clone(), signs, vector }, b.gram))
    };
    let (first, gram) = view(z1, None)?;
    let (second, _) = view(z2, Some(&gram))?;
    let agree = first.vector.equal_up_to_sign(&second.vector);
    Ok(InvarianceReport { first, second, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn v(c: &[i64]) -> MWVector {
        MWVector { coords: c.to_vec() }
    }

    #[test]
    fn splitting_criterion_is_sign_invariant() {
        assert!(splits(&v(&[2, 0, 0, 0, 0])));
        assert!(splits(&v(&[-2, 0, 0, 0, 0])));
        assert!(!splits(&v(&[2, 0, 0, 0, 2])));
        assert!(!splits(&v(&[0, -1, -1, -2, -2])));
    }

    fn entry(label: &str, ones: usize, t: (u32, u32)) -> ArrangementInvariants {
        ArrangementInvariants {
            label: label.into(),
            phi1: Phi1Vector { bits: vec![], count_ones: ones },
            splitting: vec![((0, 1), SplittingType { low: t.0, high: t.1 })],
        }
    }

    #[test]
    fn report_names_the_separating_invariant() {
        let r = report_from(vec![entry("A", 2, (0, 4)), entry("B", 0, (0, 4)), entry("C", 0, (2, 2))]);
        assert!(r.distinguished);
        let inv: Vec<_> = r.witnesses.iter().map(|w| w.invariant).collect();
        assert_eq!(inv, vec![Some("phi1"), Some("phi1"), Some("splitting")]);
        let r = report_from(vec![entry("A", 1, (2, 2)), entry("A'", 1, (2, 2))]);
        assert!(!r.distinguished);
    }

    #[test]
    fn points_on_a_conic() {
        // T² + X² − Z²
        let c = PlaneCurve::new(crate::algebra::parse_mpoly("t^2 + x^2 - z^2", &["t", "x", "z"]).unwrap()).unwrap();
        let pts = rational_points(&c, 1).unwrap();
        assert!(pts.iter().all(|p| c.contains(p)));
        assert!(pts.contains(&[int(0), int(1), int(1)]));
        assert!(pts.contains(&[int(1), int(0), int(1)]));
    }
}
