use proptest::prelude::*;
use zf_cli::scenario::{
    parse_scenario, ArrangementDecl, BasePointSpec, ConicDecl, ConicSource, FamilyDecl, InvarianceDecl, LineDecl,
    MWWord, QuarticSource, Scenario, SweepDecl, CHECKS,
};
use zf_core::algebra::{rat, MPoly, Rational, UniPoly};
use zf_core::catalog::Branch;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rational> {
    small_rat().prop_filter("nonzero", |q| *q != rat(0, 1))
}

/// Nonzero form of degree `d` in `T, X, Z`.
fn form(d: u32) -> impl Strategy<Value = MPoly<3>> {
    let monomials: Vec<[u32; 3]> =
        (0..=d).flat_map(|a| (0..=d - a).map(move |b| [a, b, d - a - b])).collect();
    let n = monomials.len();
    prop::collection::vec(prop::option::weighted(0.4, nonzero_rat()), n)
        .prop_map(move |cs| MPoly::from_terms(monomials.iter().zip(cs).filter_map(|(e, c)| c.map(|c| (*e, c)))))
        .prop_filter("nonzero", |f| !f.is_zero())
}

fn word(n_lines: usize) -> impl Strategy<Value = MWWord> {
    prop::collection::vec(prop::sample::select(vec![-2i64, -1, 1, 2, 3]), n_lines)
        .prop_flat_map(move |cs| {
            prop::sample::subsequence((0..n_lines).collect::<Vec<_>>(), 1..=n_lines)
                .prop_shuffle()
                .prop_map(move |idx| MWWord { terms: idx.iter().map(|&i| (cs[i], format!("s{i}"))).collect() })
        })
}

fn slope() -> impl Strategy<Value = UniPoly> {
    (small_rat(), small_rat())
        .prop_map(|(r0, r1)| UniPoly::from_coeffs(vec![r0, r1]))
        .prop_filter("nonzero", |r| !r.is_zero())
}

fn family_slope() -> impl Strategy<Value = MPoly<2>> {
    (nonzero_rat(), small_rat(), nonzero_rat()).prop_map(|(r1, c, k)| {
        MPoly::from_terms([([1, 0], r1), ([0, 0], c), ([0, 1], k)])
    })
}

fn scenario() -> impl Strategy<Value = Scenario> {
    (1usize..=4).prop_flat_map(|n_lines| {
        let lines = prop::collection::vec((form(1), any::<bool>()), n_lines);
        let conic = prop_oneof![
            (slope(), word(n_lines)).prop_map(|(r, word)| ConicSource::Recipe { r, word }),
            form(2).prop_map(ConicSource::Equation),
        ];
        let quartic = prop_oneof![
            prop::sample::select(vec!["two-nodal-shioda-usui", "tacnodal-shioda-usui"])
                .prop_map(|n| QuarticSource::Builtin(n.to_string())),
            form(4).prop_map(QuarticSource::Equation),
        ];
        (
            "[a-z][a-z0-9-]{0,8}",
            quartic,
            (small_rat(), small_rat(), nonzero_rat()),
            lines,
            prop::option::of(nonzero_rat()),
            prop::collection::vec(conic, 0..4),
            prop::collection::vec((prop::sample::select(vec!["a", "b", "u"]), family_slope(), word(n_lines)), 0..3),
            prop::collection::vec(prop::collection::vec(small_rat(), 0..4), 0..2),
            prop::collection::vec(prop::sample::select(CHECKS.to_vec()), 0..3),
            (any::<bool>(), 0u32..5),
        )
    })
    .prop_map(|(name, quartic, (t, x, z), lines, det, conics, fams, grids, checks, (scan, bound))| {
        let lines: Vec<LineDecl> = lines
            .into_iter()
            .enumerate()
            .map(|(i, (form, plus))| LineDecl {
                name: format!("s{i}"),
                form,
                branch: if plus { Branch::Plus } else { Branch::Minus },
            })
            .collect();
        let conics: Vec<ConicDecl> =
            conics.into_iter().enumerate().map(|(i, source)| ConicDecl { name: format!("C{i}"), source }).collect();
        let families: Vec<FamilyDecl> = fams
            .into_iter()
            .enumerate()
            .map(|(i, (p, r, word))| FamilyDecl { name: format!("F{i}"), param: p.to_string(), r, word })
            .collect();
        let arrangements = if conics.len() >= 2 {
            vec![ArrangementDecl { name: "B".into(), conics: conics.iter().map(|c| c.name.clone()).collect() }]
        } else {
            Vec::new()
        };
        let invariance = conics
            .first()
            .map(|c| {
                let target = if scan { BasePointSpec::Scan(bound) } else { BasePointSpec::Point([rat(1, 1), rat(-3, 2), rat(0, 1)]) };
                vec![InvarianceDecl { conic: c.name.clone(), target }]
            })
            .unwrap_or_default();
        let sweeps = match families.first() {
            Some(f) => grids.into_iter().map(|grid| SweepDecl { family: f.name.clone(), grid }).collect(),
            None => Vec::new(),
        };
        Scenario {
            name,
            quartic,
            point: [t, x, z],
            lines,
            expect_det: det,
            conics,
            families,
            arrangements,
            invariance,
            sweeps,
            checks: checks.into_iter().map(String::from).collect(),
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_parse_round_trip(s in scenario()) {
        let text = s.to_string();
        let back = parse_scenario(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&back, &s, "{}", text);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn words_with_undeclared_symbols_are_rejected(k in 0usize..3) {
        let src = format!("quartic builtin x\nline s0 = X : +\nconic C = C(t, s0 + s{})\n", k + 1);
        let e = parse_scenario(&src).unwrap_err();
        prop_assert_eq!(e.line, 3);
        prop_assert!(e.message.contains("unknown basis symbol"));
    }
}
