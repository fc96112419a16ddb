//! Reference quartics with known dp-free line systems.

use crate::algebra::{int, rat, MPoly, Rational};
use crate::quartic::PlaneCurve;

/// Which of the two sections `(x, ±√e·h)` cut out by a line is meant; `Plus`
/// is the branch with `h` monic and `√e > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> i64 {
        match self {
            Branch::Plus => 1,
            Branch::Minus => -1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BasisLine {
    pub name: String,
    pub line: PlaneCurve,
    pub branch: Branch,
}

fn v(i: usize) -> MPoly<3> {
    MPoly::var(i)
}

fn c(n: i64) -> MPoly<3> {
    MPoly::constant(int(n))
}

fn lin(a: i64, b: i64, cz: i64) -> PlaneCurve {
    PlaneCurve::line(int(a), int(b), int(cz)).expect("nonzero line")
}

/// The 2-nodal quartic with nodes at `[0:0:1]` and `[2025:0:1]`.
pub fn two_nodal_quartic() -> PlaneCurve {
    let (t, x, z) = (v(0), v(1), v(2));
    let b2 = &z * &(&z.scale(&int(271350)) - &t.scale(&int(98)));
    let b3 = &(&t * &(&t - &z.scale(&int(5825)))) * &(&t - &z.scale(&int(2025)));
    let b4 = &(&t.pow(2) * &(&t - &z.scale(&int(2025))).pow(2)) * &c(36);
    let f = &(&(&(&x.pow(3) * &z) + &(&b2 * &x.pow(2))) + &(&b3 * &x)) + &b4;
    PlaneCurve::new(f).expect("quartic")
}

pub fn two_nodal_lines() -> Vec<BasisLine> {
    vec![
        BasisLine { name: "s0".into(), line: lin(0, 1, 0), branch: Branch::Plus },
        BasisLine { name: "s1".into(), line: lin(32, 1, 0), branch: Branch::Plus },
        BasisLine { name: "s2".into(), line: lin(28, -1, 0), branch: Branch::Plus },
        BasisLine { name: "s3".into(), line: lin(20, 1, 0), branch: Branch::Plus },
        BasisLine { name: "s4".into(), line: lin(35, 1, -70875), branch: Branch::Plus },
    ]
}

/// The quartic with a single tacnode at `[0:0:1]`.
pub fn tacnodal_quartic() -> PlaneCurve {
    let (t, x, z) = (v(0), v(1), v(2));
    let b2 = &(&t.scale(&int(25)) + &z.scale(&int(9))) * &z;
    let b3 = &(&t.pow(2) * &z).scale(&int(144)) + &t.pow(3);
    let b4 = t.pow(4).scale(&int(16));
    let f = &(&(&(&x.pow(3) * &z) + &(&b2 * &x.pow(2))) + &(&b3 * &x)) + &b4;
    PlaneCurve::new(f).expect("quartic")
}

pub fn tacnodal_lines() -> Vec<BasisLine> {
    vec![
        BasisLine { name: "s0".into(), line: lin(0, 1, 0), branch: Branch::Plus },
        BasisLine { name: "s1".into(), line: lin(16, 1, 0), branch: Branch::Minus },
        BasisLine { name: "s2".into(), line: lin(15, 1, 0), branch: Branch::Minus },
        BasisLine { name: "s3".into(), line: lin(7, 1, 0), branch: Branch::Plus },
        BasisLine { name: "s4".into(), line: lin(12, 1, 0), branch: Branch::Plus },
    ]
}

/// Gram matrix of `s0..s4` on the 2-nodal quartic (lattice `A₁* ⊕ D₄*`).
pub fn two_nodal_gram() -> Vec<Vec<Rational>> {
    let h = rat(1, 2);
    let m = rat(-1, 2);
    let (o, z) = (int(1), int(0));
    vec![
        vec![h.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), o.clone(), z.clone(), z.clone(), m.clone()],
        vec![z.clone(), z.clone(), o.clone(), z.clone(), m.clone()],
        vec![z.clone(), z.clone(), z.clone(), o.clone(), m.clone()],
        vec![z, m.clone(), m.clone(), m, o],
    ]
}

/// Gram matrix of `s0..s3` on the tacnodal quartic (lattice `A₁* ⊕ A₃*`).
pub fn tacnodal_gram() -> Vec<Vec<Rational>> {
    let (a, b, z) = (rat(3, 4), rat(-1, 4), int(0));
    vec![
        vec![rat(1, 2), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), a.clone(), b.clone(), b.clone()],
        vec![z.clone(), b.clone(), a.clone(), b.clone()],
        vec![z, b.clone(), b, a],
    ]
}

/// A conic recipe `C(r(t), Σ aᵢ sᵢ)` with `r = r1·t + r0`.
#[derive(Clone, Debug)]
pub struct Recipe {
    pub name: &'static str,
    pub r1: Rational,
    pub r0: Rational,
    pub word: Vec<i64>,
}

/// The six conics of the 2-nodal five-plet, with words in the basis `s0..s4`
/// of [`two_nodal_lines`].
pub fn five_plet_recipes() -> Vec<Recipe> {
    let r = |name, r1, r0: i64, word: [i64; 5]| Recipe { name, r1, r0: int(r0), word: word.to_vec() };
    vec![
        r("C1", rat(-1, 12), 0, [2, 0, 0, 0, 0]),
        r("C2", rat(-1, 12), 1, [2, 0, 0, 0, 0]),
        r("C3", rat(1, 20), 0, [0, -1, -1, -2, -2]),
        r("C4", rat(1, 20), 1, [0, -1, -1, -2, -2]),
        r("C5", rat(-1, 24), 0, [0, 1, 2, 1, 2]),
        r("C6", rat(1, 6), 0, [0, 1, -1, 0, 0]),
    ]
}

/// Conic pairs of the five arrangements, by index into [`five_plet_recipes`].
pub fn five_plet_arrangements() -> Vec<(&'static str, [usize; 2])> {
    vec![("B1", [0, 1]), ("B2", [0, 2]), ("B3", [2, 3]), ("B4", [2, 4]), ("B5", [2, 5])]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quartic::{club_check, mat3_identity, normalize_quartic, SingularityKind};

    fn base() -> [Rational; 3] {
        [int(0), int(1), int(0)]
    }

    #[test]
    fn two_nodal_is_its_own_normal_form() {
        let q = normalize_quartic(&two_nodal_quartic(), &base()).unwrap();
        assert_eq!(q.transform(), &mat3_identity());
        assert_eq!(q.curve(), &two_nodal_quartic());
        assert!(club_check(&q).satisfied);
        let nodes: Vec<_> = q.singular_points().iter().map(|s| (s.point.clone(), s.kind)).collect();
        assert_eq!(
            nodes,
            vec![([int(0), int(0), int(1)], SingularityKind::Node), ([int(2025), int(0), int(1)], SingularityKind::Node)]
        );
    }

    #[test]
    fn tacnodal_is_its_own_normal_form() {
        let q = normalize_quartic(&tacnodal_quartic(), &base()).unwrap();
        assert_eq!(q.transform(), &mat3_identity());
        assert!(club_check(&q).satisfied);
        let sing: Vec<_> = q.singular_points().iter().map(|s| (s.point.clone(), s.kind)).collect();
        assert_eq!(sing, vec![([int(0), int(0), int(1)], SingularityKind::Tacnode)]);
    }

    #[test]
    fn basis_lines_pass_through_singular_points() {
        let q = normalize_quartic(&two_nodal_quartic(), &base()).unwrap();
        for l in two_nodal_lines() {
            assert!(q.singular_points().iter().any(|s| l.line.contains(&s.point)), "{}", l.name);
        }
    }

    #[test]
    fn recipe_words_have_basis_length() {
        assert!(five_plet_recipes().iter().all(|r| r.word.len() == two_nodal_lines().len()));
    }
}
