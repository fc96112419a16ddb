//! The check pipeline behind every subcommand.

use std::fmt;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use zf_core::algebra::{fmt_rational, gcd, parse_mpoly, parse_rational, Rational, UniPoly};
use zf_core::catalog::{self, BasisLine};
use zf_core::conic::{
    bisect_conic, conic_family, contact_verify, transversal, triple_points, ConicCurve, ContactCertificate,
};
use zf_core::mw::{FFPoint, MWBasis, SurfaceModel};
use zf_core::quartic::{fmt_point, mat3_inverse, normalize_quartic, same_point, Mat3, PlaneCurve, QuarticModel};
use zf_core::zariski::{
    base_point_invariance, conic_vector, distinguish, find_club_point, splits, splitting_table, splitting_type,
    Arrangement,
};
use zf_core::Error;

use crate::report::{
    q, sha256_hex, ArrangementReport, CertificateData, CheckOutcome, ConicReport, ContactOutcome, FamilyReport,
    FiberReport, InvarianceOutcome, LatticeReport, NpletReport, PairReport, Report, SweepEntry, SweepReport, TableCell,
    WitnessReport, SCHEMA,
};
use crate::scenario::{parse_grid, parse_scenario, BasePointSpec, ConicSource, QuarticSource, Scenario, CHECKS};

/// Errors that stop a run before a verdict exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    Input(String),
    Unsupported(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Unsupported(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "input error: {m}"),
            Failure::Unsupported(m) => write!(f, "unsupported configuration: {m}"),
        }
    }
}

impl std::error::Error for Failure {}

fn failure(e: Error, what: &str) -> Failure {
    match e {
        Error::Unsupported(m) => Failure::Unsupported(format!("{what}: {m}")),
        Error::Invalid(m) | Error::Verification(m) => Failure::Input(format!("{what}: {m}")),
        other => Failure::Input(format!("{what}: {other}")),
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Worker threads; `None` lets rayon decide.
    pub jobs: Option<usize>,
    /// Grid for `sweep`, overriding the scenario's.
    pub param_grid: Option<String>,
    /// Family for `sweep`, overriding the scenario's.
    pub family: Option<String>,
}

/// Names of the builtin scenarios.
pub const BUILTINS: [&str; 3] = ["two-nodal-shioda-usui", "tacnodal-shioda-usui", "five-plet"];

pub fn builtin_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "two-nodal-shioda-usui" => include_str!("../scenarios/two-nodal-shioda-usui.zfs"),
        "tacnodal-shioda-usui" => include_str!("../scenarios/tacnodal-shioda-usui.zfs"),
        "five-plet" => include_str!("../scenarios/five-plet.zfs"),
        _ => return None,
    })
}

pub fn builtin(name: &str) -> Result<Scenario, Failure> {
    let text = builtin_text(name)
        .ok_or_else(|| Failure::Input(format!("unknown builtin '{name}' (known: {})", BUILTINS.join(", "))))?;
    Ok(parse_scenario(text).expect("builtin scenarios parse"))
}

fn builtin_quartic(name: &str) -> Result<PlaneCurve, Failure> {
    match name {
        "two-nodal-shioda-usui" => Ok(catalog::two_nodal_quartic()),
        "tacnodal-shioda-usui" => Ok(catalog::tacnodal_quartic()),
        _ => Err(Failure::Input(format!("unknown builtin quartic '{name}'"))),
    }
}

/// The subcommands a bare `run` performs: the scenario's `check` lines, or
/// everything it declares enough data for.
pub fn default_commands(s: &Scenario) -> Vec<String> {
    if !s.checks.is_empty() {
        return s.checks.clone();
    }
    let mut out = vec!["verify-gram"];
    if !s.conics.is_empty() {
        out.extend(["verify-contact", "classify-splitting"]);
    }
    if !s.families.is_empty() {
        out.push("construct-conics");
    }
    if !s.arrangements.is_empty() {
        out.push("nplet-report");
    }
    if !s.invariance.is_empty() {
        out.push("invariance");
    }
    if !s.sweeps.is_empty() {
        out.push("sweep");
    }
    out.into_iter().map(String::from).collect()
}

/// Runs `commands` in order on a thread pool of `opts.jobs` workers.
pub fn run_checks(s: &Scenario, commands: &[String], opts: &Options) -> Result<Report, Failure> {
    for c in commands {
        if !CHECKS.contains(&c.as_str()) {
            return Err(Failure::Input(format!("unknown check '{c}'")));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure::Input(format!("thread pool: {e}")))?;
    pool.install(|| {
        let mut r = Runner::new(s, commands, opts)?;
        for c in commands {
            r.dispatch(c)?;
        }
        r.report.passed = r.report.checks.iter().all(|c| c.passed);
        Ok(r.report)
    })
}

/// Re-runs the commands recorded in `report` on its embedded scenario and
/// returns the fresh report; the caller compares verdicts.
pub fn recheck(report: &Report, jobs: Option<usize>) -> Result<Report, Failure> {
    if report.schema != SCHEMA {
        return Err(Failure::Unsupported(format!("report schema '{}', expected '{SCHEMA}'", report.schema)));
    }
    if sha256_hex(&report.scenario_text) != report.scenario_hash {
        return Err(Failure::Input("scenario hash does not match the embedded scenario text".into()));
    }
    let s = parse_scenario(&report.scenario_text).map_err(|e| Failure::Input(format!("embedded scenario: {e}")))?;
    let opts = Options { jobs, param_grid: report.param_grid.clone(), family: report.family.clone() };
    run_checks(&s, &report.commands, &opts)
}

/// Checks a stored certificate on its own terms: `resultant = c·h²` with `h`
/// squarefree of the recorded degree.
pub fn certificate_holds(d: &CertificateData) -> Result<bool, String> {
    let resultant = uni(&d.resultant)?;
    let h = uni(&d.h)?;
    let c = parse_rational(&d.c).ok_or_else(|| format!("bad rational '{}'", d.c))?;
    let mut shear: Mat3 = Default::default();
    for (i, row) in d.shear.iter().enumerate().take(3) {
        for (j, x) in row.iter().enumerate().take(3) {
            shear[i][j] = parse_rational(x).ok_or_else(|| format!("bad rational '{x}'"))?;
        }
    }
    let cert = ContactCertificate {
        resultant,
        c,
        h: h.clone(),
        tangency_count: d.tangencies,
        infinity_handled: d.infinity_handled,
        shear,
    };
    let squarefree = gcd(&h, &h.derivative()).map_err(|e| e.to_string())?.is_constant();
    Ok(cert.recheck() && squarefree && h.degree() == Some(d.tangencies as usize))
}

fn uni(text: &str) -> Result<UniPoly, String> {
    let p = parse_mpoly(text, &["t"]).map_err(|e| e.to_string())?;
    let d = p.total_degree().unwrap_or(0);
    Ok(UniPoly::from_coeffs((0..=d).map(|k| p.coeff(&[k])).collect()))
}

fn certificate_data(c: &ContactCertificate) -> CertificateData {
    CertificateData {
        resultant: c.resultant.to_string(),
        c: q(&c.c),
        h: c.h.to_string(),
        tangencies: c.tangency_count,
        infinity_handled: c.infinity_handled,
        shear: c.shear.iter().map(|row| row.iter().map(q).collect()).collect(),
    }
}

struct Runner<'a> {
    sc: &'a Scenario,
    opts: &'a Options,
    original: PlaneCurve,
    surface: SurfaceModel,
    to_original: Mat3,
    basis: Option<Result<MWBasis, String>>,
    conics: Option<Vec<ConicCurve>>,
    report: Report,
}

impl<'a> Runner<'a> {
    fn new(sc: &'a Scenario, commands: &[String], opts: &'a Options) -> Result<Self, Failure> {
        let original = match &sc.quartic {
            QuarticSource::Builtin(n) => builtin_quartic(n)?,
            QuarticSource::Equation(f) => PlaneCurve::new(f.clone()).map_err(|e| failure(e, "quartic"))?,
        };
        let infinity = [Rational::from_integer(0.into()), Rational::from_integer(1.into()), Rational::from_integer(0.into())];
        let model = match QuarticModel::from_normal_form(original.clone()) {
            Ok(m) if same_point(&sc.point, &infinity) => m,
            _ => normalize_quartic(&original, &sc.point).map_err(|e| failure(e, "quartic"))?,
        };
        let to_original = mat3_inverse(model.transform()).expect("invertible model transform");
        let surface = SurfaceModel::new(model).map_err(|e| failure(e, "elliptic surface"))?;
        let text = sc.to_string();
        let generated_unix = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let report = Report {
            schema: SCHEMA.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            scenario: sc.name.clone(),
            scenario_hash: sha256_hex(&text),
            scenario_text: text,
            generated_unix,
            commands: commands.to_vec(),
            param_grid: opts.param_grid.clone(),
            family: opts.family.clone(),
            passed: false,
            checks: Vec::new(),
            lattice: None,
            conics: Vec::new(),
            families: Vec::new(),
            pairs: Vec::new(),
            triple_points: None,
            nplet: None,
            invariance: Vec::new(),
            sweeps: Vec::new(),
        };
        Ok(Runner { sc, opts, original, surface, to_original, basis: None, conics: None, report })
    }

    fn dispatch(&mut self, command: &str) -> Result<(), Failure> {
        match command {
            "verify-gram" => self.verify_gram(),
            "construct-conics" => self.construct_conics(),
            "verify-contact" => self.verify_contact(),
            "classify-splitting" => self.classify_splitting(),
            "nplet-report" => self.nplet_report(),
            "invariance" => self.invariance(),
            "sweep" => self.sweep(),
            other => Err(Failure::Input(format!("unknown check '{other}'"))),
        }
    }

    fn outcome(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.report.checks.push(CheckOutcome { name: name.into(), passed, detail: detail.into() });
    }

    /// Verification errors fail the check; anything else aborts the run.
    fn checked<T>(&mut self, name: &str, r: zf_core::Result<T>) -> Result<Option<T>, Failure> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(Error::Verification(m)) => {
                self.outcome(name, false, m);
                Ok(None)
            }
            Err(e) => Err(failure(e, name)),
        }
    }

    fn model_line(&self, form: &zf_core::algebra::MPoly<3>) -> Result<PlaneCurve, Failure> {
        let l = PlaneCurve::new(form.clone()).map_err(|e| failure(e, "line"))?;
        if l.degree() != 1 {
            return Err(Failure::Input(format!("line {l} is not linear")));
        }
        Ok(l)
    }

    fn basis_lines(&self, in_model: bool) -> Result<Vec<BasisLine>, Failure> {
        self.sc
            .lines
            .iter()
            .map(|l| {
                let line = self.model_line(&l.form)?;
                let line = if in_model { self.surface.quartic().pull(&line) } else { line };
                Ok(BasisLine { name: l.name.clone(), line, branch: l.branch })
            })
            .collect()
    }

    fn basis(&mut self) -> Result<Result<MWBasis, String>, Failure> {
        if let Some(b) = &self.basis {
            return Ok(b.clone());
        }
        let lines = self.basis_lines(true)?;
        let b = match self.surface.basis_from_lines(&lines) {
            Ok(b) => Ok(b),
            Err(Error::Verification(m)) => Err(m),
            Err(e) => return Err(failure(e, "basis")),
        };
        self.basis = Some(b.clone());
        Ok(b)
    }

    /// The basis, or a failed `name` check if it is degenerate.
    fn basis_for(&mut self, name: &str) -> Result<Option<MWBasis>, Failure> {
        match self.basis()? {
            Ok(b) => Ok(Some(b)),
            Err(m) => {
                self.outcome(name, false, format!("basis: {m}"));
                Ok(None)
            }
        }
    }

    fn equation(&self, c: &ConicCurve) -> String {
        c.curve().transform(&self.to_original).primitive().to_string()
    }

    fn point_of_word(&self, coords: &[i64], basis: &MWBasis) -> Result<FFPoint, Failure> {
        self.surface.combination(coords, &basis.sections).map_err(|e| failure(e, "word"))
    }

    /// Builds every declared conic in model coordinates, once.
    fn conics(&mut self, name: &str) -> Result<Option<Vec<ConicCurve>>, Failure> {
        if let Some(c) = &self.conics {
            return Ok(Some(c.clone()));
        }
        let needs_basis = self.sc.conics.iter().any(|c| matches!(c.source, ConicSource::Recipe { .. }));
        let basis = if needs_basis {
            match self.basis_for(name)? {
                Some(b) => Some(b),
                None => return Ok(None),
            }
        } else {
            None
        };
        let mut out = Vec::new();
        let mut reports = Vec::new();
        for decl in &self.sc.conics {
            let what = format!("conic {}", decl.name);
            let (c, recipe) = match &decl.source {
                ConicSource::Recipe { r, word } => {
                    let b = basis.as_ref().expect("basis built for recipes");
                    let coords = word.coordinates(&b.names).map_err(|m| Failure::Input(format!("{what}: {m}")))?;
                    let p = self.point_of_word(&coords, b)?;
                    let c = match bisect_conic(&p, r, &self.surface) {
                        Ok(c) => c,
                        Err(Error::Verification(m)) => {
                            self.outcome(name, false, format!("{what}: {m}"));
                            return Ok(None);
                        }
                        Err(e) => return Err(failure(e, &what)),
                    };
                    let mut rec = c.recipe().cloned().expect("bisected conics carry a recipe");
                    rec.word = Some(coords);
                    (c.with_recipe(rec), Some(format!("C({r}, {word})")))
                }
                ConicSource::Equation(f) => {
                    let curve = PlaneCurve::new(f.clone()).map_err(|e| failure(e, &what))?;
                    if curve.degree() != 2 {
                        return Err(Failure::Input(format!("{what}: equation has degree {}", curve.degree())));
                    }
                    let c = ConicCurve::new(self.surface.quartic().pull(&curve)).map_err(|e| failure(e, &what))?;
                    (c, None)
                }
            };
            reports.push(ConicReport {
                name: decl.name.clone(),
                equation: self.equation(&c),
                recipe,
                contact: None,
                lift_vector: None,
                phi1: None,
            });
            out.push(c);
        }
        self.report.conics = reports;
        self.conics = Some(out.clone());
        Ok(Some(out))
    }

    fn verify_gram(&mut self) -> Result<(), Failure> {
        const NAME: &str = "verify-gram";
        let s = &self.surface;
        let singularities = s
            .quartic()
            .singular_points()
            .iter()
            .map(|p| format!("{} at {}", p.kind, fmt_point(&self.to_original_point(&p.point))))
            .collect();
        let fibers = s
            .fibers()
            .iter()
            .map(|f| FiberReport { place: f.place.to_string(), kodaira: f.kodaira.to_string(), count: f.count })
            .collect();
        let basis = self.basis()?;
        let mut lattice = LatticeReport {
            singularities,
            fibers,
            basis: self.sc.basis_names(),
            gram: Vec::new(),
            det: String::new(),
            expected_det: self.sc.expect_det.as_ref().map(q),
        };
        match basis {
            Err(m) => {
                lattice.det = q(&Rational::from_integer(0.into()));
                self.report.lattice = Some(lattice);
                self.outcome(NAME, false, m);
            }
            Ok(b) => {
                lattice.gram = b.gram.iter().map(|row| row.iter().map(q).collect()).collect();
                lattice.det = q(&b.det);
                self.report.lattice = Some(lattice);
                let n = b.len();
                match &self.sc.expect_det {
                    Some(e) if *e != b.det => self.outcome(
                        NAME,
                        false,
                        format!("det = {}, expected {}", fmt_rational(&b.det), fmt_rational(e)),
                    ),
                    Some(_) => self.outcome(NAME, true, format!("{n}x{n} Gram matrix, det = {} as expected", fmt_rational(&b.det))),
                    None => self.outcome(NAME, true, format!("{n}x{n} Gram matrix, det = {}", fmt_rational(&b.det))),
                }
            }
        }
        Ok(())
    }

    fn to_original_point(&self, p: &[Rational; 3]) -> [Rational; 3] {
        zf_core::quartic::mat3_apply(self.surface.quartic().transform(), p)
    }

    fn construct_conics(&mut self) -> Result<(), Failure> {
        const NAME: &str = "construct-conics";
        let Some(conics) = self.conics(NAME)? else { return Ok(()) };
        let mut families = Vec::new();
        if !self.sc.families.is_empty() {
            let Some(b) = self.basis_for(NAME)? else { return Ok(()) };
            for f in &self.sc.families {
                let coords = f.word.coordinates(&b.names).map_err(|m| Failure::Input(format!("family {}: {m}", f.name)))?;
                let p = self.point_of_word(&coords, &b)?;
                let polynomial = match (f.is_translation(), f.slope_t_coefficient()) {
                    (true, Some(r1)) if f.slope_at(&Rational::from_integer(0.into())).coeff(0) == Rational::from_integer(0.into()) => {
                        let poly = conic_family(&p, &r1, &self.surface).map_err(|e| failure(e, &format!("family {}", f.name)))?;
                        Some(poly.fmt_vars(&[&f.param, "t", "x"]))
                    }
                    _ => None,
                };
                families.push(FamilyReport {
                    name: f.name.clone(),
                    slope: f.r.fmt_vars(&["t", &f.param]),
                    word: f.word.to_string(),
                    polynomial,
                });
            }
        }
        let nf = families.len();
        self.report.families = families;
        self.outcome(NAME, true, format!("{} conics, {nf} families", conics.len()));
        Ok(())
    }

    fn verify_contact(&mut self) -> Result<(), Failure> {
        const NAME: &str = "verify-contact";
        let Some(conics) = self.conics(NAME)? else { return Ok(()) };
        if conics.is_empty() {
            self.outcome(NAME, true, "no conics declared");
            return Ok(());
        }
        let q = self.surface.quartic();
        let verdicts: Vec<zf_core::Result<ContactCertificate>> = conics.par_iter().map(|c| contact_verify(c, q)).collect();
        let mut failed = Vec::new();
        for (i, v) in verdicts.into_iter().enumerate() {
            let name = self.sc.conics[i].name.clone();
            let outcome = match v {
                Ok(cert) => ContactOutcome { passed: true, diagnosis: None, certificate: Some(certificate_data(&cert)) },
                Err(Error::Verification(m)) => {
                    failed.push(format!("{name}: {m}"));
                    ContactOutcome { passed: false, diagnosis: Some(m), certificate: None }
                }
                Err(e) => return Err(failure(e, &format!("conic {name}"))),
            };
            self.report.conics[i].contact = Some(outcome);
        }

        let pairs: Vec<(usize, usize)> =
            (0..conics.len()).flat_map(|i| (i + 1..conics.len()).map(move |j| (i, j))).collect();
        let results: Vec<zf_core::Result<bool>> =
            pairs.par_iter().map(|&(i, j)| transversal(&conics[i], &conics[j])).collect();
        let mut bad_pairs = Vec::new();
        for (&(i, j), r) in pairs.iter().zip(results) {
            let (a, b) = (self.sc.conics[i].name.clone(), self.sc.conics[j].name.clone());
            let t = r.map_err(|e| failure(e, &format!("pair {a}/{b}")))?;
            if !t {
                bad_pairs.push(format!("{a}/{b}"));
            }
            self.set_pair(&a, &b, |p| p.transversal = Some(t));
        }
        let triples = triple_points(&conics).map_err(|e| failure(e, "triple points"))?;
        let triple_names: Vec<[String; 3]> =
            triples.iter().map(|t| t.map(|k| self.sc.conics[k].name.clone())).collect();
        self.report.triple_points = Some(triple_names.clone());

        let n = conics.len();
        if failed.is_empty() && bad_pairs.is_empty() && triple_names.is_empty() {
            self.outcome(
                NAME,
                true,
                format!("{n} contact conics, {} transversal pairs, no triple points", pairs.len()),
            );
        } else {
            let mut why = failed;
            if !bad_pairs.is_empty() {
                why.push(format!("not transversal: {}", bad_pairs.join(", ")));
            }
            if !triple_names.is_empty() {
                let t: Vec<String> = triple_names.iter().map(|t| t.join("/")).collect();
                why.push(format!("common points: {}", t.join(", ")));
            }
            self.outcome(NAME, false, why.join("; "));
        }
        Ok(())
    }

    fn set_pair(&mut self, a: &str, b: &str, f: impl FnOnce(&mut PairReport)) {
        let pos = self.report.pairs.iter().position(|p| p.first == a && p.second == b);
        let idx = pos.unwrap_or_else(|| {
            self.report.pairs.push(PairReport { first: a.into(), second: b.into(), transversal: None, splitting: None });
            self.report.pairs.len() - 1
        });
        f(&mut self.report.pairs[idx]);
    }

    /// Pairs to classify: those inside declared arrangements, else all.
    fn splitting_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        if self.sc.arrangements.is_empty() {
            let n = self.sc.conics.len();
            out.extend((0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))));
        } else {
            for a in &self.sc.arrangements {
                let idx: Vec<usize> = a.conics.iter().filter_map(|c| self.sc.conic_index(c)).collect();
                for (x, &i) in idx.iter().enumerate() {
                    for &j in &idx[x + 1..] {
                        let p = (i.min(j), i.max(j));
                        if !out.contains(&p) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }

    fn classify_splitting(&mut self) -> Result<(), Failure> {
        const NAME: &str = "classify-splitting";
        let Some(conics) = self.conics(NAME)? else { return Ok(()) };
        if conics.is_empty() {
            self.outcome(NAME, true, "no conics declared");
            return Ok(());
        }
        let Some(b) = self.basis_for(NAME)? else { return Ok(()) };
        let s = &self.surface;
        let vectors: Vec<zf_core::Result<_>> = conics.par_iter().map(|c| conic_vector(c, s, &b)).collect();
        let mut split = 0;
        for (i, v) in vectors.into_iter().enumerate() {
            let Some(v) = self.checked(NAME, v)? else { return Ok(()) };
            let bit = u8::from(splits(&v));
            split += usize::from(bit);
            self.report.conics[i].lift_vector = Some(v.coords);
            self.report.conics[i].phi1 = Some(bit);
        }
        let pairs = self.splitting_pairs();
        let q = self.surface.quartic();
        let types: Vec<zf_core::Result<_>> =
            pairs.par_iter().map(|&(i, j)| splitting_type(&conics[i], &conics[j], q)).collect();
        for (&(i, j), t) in pairs.iter().zip(types) {
            let Some(t) = self.checked(NAME, t)? else { return Ok(()) };
            let (a, b) = (self.sc.conics[i].name.clone(), self.sc.conics[j].name.clone());
            self.set_pair(&a, &b, |p| p.splitting = Some(t.to_string()));
        }
        self.outcome(
            NAME,
            true,
            format!("{split} of {} conics splitting, {} pair types", conics.len(), pairs.len()),
        );
        Ok(())
    }

    fn nplet_report(&mut self) -> Result<(), Failure> {
        const NAME: &str = "nplet-report";
        if self.sc.arrangements.is_empty() {
            return Err(Failure::Input("nplet-report needs at least one 'arrangement' declaration".into()));
        }
        let Some(conics) = self.conics(NAME)? else { return Ok(()) };
        let Some(b) = self.basis_for(NAME)? else { return Ok(()) };
        let built: Vec<zf_core::Result<Arrangement>> = self
            .sc
            .arrangements
            .par_iter()
            .map(|a| {
                let cs = a.conics.iter().map(|c| conics[self.sc.conic_index(c).expect("declared")].clone()).collect();
                Arrangement::new(a.name.clone(), self.surface.clone(), b.clone(), cs)
            })
            .collect();
        let mut arrangements = Vec::new();
        for a in built {
            let Some(a) = self.checked(NAME, a)? else { return Ok(()) };
            arrangements.push(a);
        }
        let Some(inv) = self.checked(NAME, distinguish(&arrangements))? else { return Ok(()) };
        let table = splitting_table(&inv)
            .into_iter()
            .map(|((t, k), names)| TableCell { splitting: t.to_string(), phi1_count: k, arrangements: names })
            .collect();
        let reports = inv
            .entries
            .iter()
            .zip(&self.sc.arrangements)
            .map(|(e, d)| ArrangementReport {
                name: e.label.clone(),
                conics: d.conics.clone(),
                phi1: e.phi1.bits.clone(),
                phi1_count: e.phi1.count_ones,
                splitting: e
                    .splitting
                    .iter()
                    .map(|((i, j), t)| format!("{}/{}={t}", d.conics[*i], d.conics[*j]))
                    .collect(),
            })
            .collect();
        let witnesses = inv
            .witnesses
            .iter()
            .map(|w| WitnessReport {
                first: inv.entries[w.first].label.clone(),
                second: inv.entries[w.second].label.clone(),
                invariant: w.invariant.map(String::from),
            })
            .collect();
        let counts: Vec<String> = inv.entries.iter().map(|e| e.phi1.count_ones.to_string()).collect();
        let detail = if inv.distinguished {
            format!("{} arrangements pairwise distinguished, phi1 counts ({})", inv.entries.len(), counts.join(","))
        } else {
            let same: Vec<String> = inv
                .witnesses
                .iter()
                .filter(|w| w.invariant.is_none())
                .map(|w| format!("{}={}", inv.entries[w.first].label, inv.entries[w.second].label))
                .collect();
            format!("invariants coincide for {}", same.join(", "))
        };
        self.outcome(NAME, inv.distinguished, detail);
        self.report.nplet = Some(NpletReport { arrangements: reports, witnesses, distinguished: inv.distinguished, table });
        Ok(())
    }

    fn invariance(&mut self) -> Result<(), Failure> {
        const NAME: &str = "invariance";
        if self.sc.invariance.is_empty() {
            return Err(Failure::Input("invariance needs an 'invariance' declaration".into()));
        }
        let Some(conics) = self.conics(NAME)? else { return Ok(()) };
        let lines = self.basis_lines(false)?;
        let z1 = self.sc.point.clone();
        let mut all_pass = true;
        let mut notes = Vec::new();
        for decl in &self.sc.invariance {
            let c = &conics[self.sc.conic_index(&decl.conic).expect("declared")];
            let c = ConicCurve::new(c.curve().transform(&self.to_original)).map_err(|e| failure(e, NAME))?;
            let z2 = match &decl.target {
                BasePointSpec::Point(p) => Some(p.clone()),
                BasePointSpec::Scan(n) => find_club_point(&self.original, &z1, i64::from(*n)).map_err(|e| failure(e, NAME))?,
            };
            let mut out = InvarianceOutcome {
                conic: decl.conic.clone(),
                first_point: fmt_point(&z1),
                second_point: z2.as_ref().map(fmt_point),
                first_vector: None,
                second_vector: None,
                second_signs: None,
                agree: None,
                note: String::new(),
            };
            match z2 {
                None => {
                    let BasePointSpec::Scan(n) = decl.target else { unreachable!() };
                    out.note = format!(
                        "downgraded: no second rational base point with coordinates up to {n}; property suites stand in"
                    );
                }
                Some(z2) => match base_point_invariance(&c, &self.original, &lines, &z1, &z2) {
                    Ok(r) => {
                        out.first_vector = Some(r.first.vector.coords.clone());
                        out.second_vector = Some(r.second.vector.coords.clone());
                        out.second_signs = Some(r.second.signs.clone());
                        out.agree = Some(r.agree);
                        out.note = if r.agree { "agree up to sign".into() } else { "DISAGREE".into() };
                        all_pass &= r.agree;
                    }
                    Err(Error::Verification(m)) => {
                        out.note = m;
                        all_pass = false;
                    }
                    Err(e) => return Err(failure(e, NAME)),
                },
            }
            notes.push(format!("{}: {}", out.conic, out.note));
            self.report.invariance.push(out);
        }
        self.outcome(NAME, all_pass, notes.join("; "));
        Ok(())
    }

    fn sweep(&mut self) -> Result<(), Failure> {
        const NAME: &str = "sweep";
        let mut jobs: Vec<(String, Vec<Rational>)> = Vec::new();
        let grid_override = match &self.opts.param_grid {
            Some(g) => Some(parse_grid(g).map_err(|m| Failure::Input(format!("--param-grid: {m}")))?),
            None => None,
        };
        let family = self.opts.family.clone().or_else(|| self.sc.sweeps.first().map(|s| s.family.clone()));
        match (grid_override, family) {
            (Some(g), Some(f)) => jobs.push((f, g)),
            (Some(g), None) => match self.sc.families.first() {
                Some(f) => jobs.push((f.name.clone(), g)),
                None => return Err(Failure::Input("sweep needs a 'family' declaration".into())),
            },
            (None, Some(f)) if self.opts.family.is_some() => {
                let grid = self.sc.sweeps.iter().find(|s| s.family == f).map(|s| s.grid.clone());
                let grid = grid.ok_or_else(|| Failure::Input(format!("no grid for family '{f}'; pass --param-grid")))?;
                jobs.push((f, grid));
            }
            (None, _) => jobs.extend(self.sc.sweeps.iter().map(|s| (s.family.clone(), s.grid.clone()))),
        }
        if jobs.is_empty() {
            return Err(Failure::Input("sweep needs a 'sweep' declaration or --param-grid".into()));
        }
        let Some(b) = self.basis_for(NAME)? else { return Ok(()) };
        let mut details = Vec::new();
        for (fname, grid) in jobs {
            let fam = self.sc.family(&fname).ok_or_else(|| Failure::Input(format!("unknown family '{fname}'")))?.clone();
            let coords = fam.word.coordinates(&b.names).map_err(|m| Failure::Input(format!("family {fname}: {m}")))?;
            let p = self.point_of_word(&coords, &b)?;
            let report = self.sweep_family(&fam.name, &fam, &p, &grid)?;
            let accepted = report.entries.iter().filter(|e| e.accepted).count();
            details.push(format!("{fname}: {accepted} of {} accepted", grid.len()));
            self.report.sweeps.push(report);
        }
        self.outcome(NAME, true, details.join("; "));
        Ok(())
    }

    fn sweep_family(
        &self,
        name: &str,
        fam: &crate::scenario::FamilyDecl,
        p: &FFPoint,
        grid: &[Rational],
    ) -> Result<SweepReport, Failure> {
        let s = &self.surface;
        // independent per value, so verified concurrently
        let candidates: Vec<Result<(ConicCurve, ContactCertificate), String>> = grid
            .par_iter()
            .map(|a| {
                let c = bisect_conic(p, &fam.slope_at(a), s).map_err(|e| e.to_string())?;
                let cert = contact_verify(&c, s.quartic()).map_err(|e| e.to_string())?;
                Ok((c, cert))
            })
            .collect();
        // acceptance against earlier members, in grid order
        let mut accepted: Vec<(String, ConicCurve)> = Vec::new();
        let mut entries = Vec::new();
        for (a, cand) in grid.iter().zip(candidates) {
            let value = q(a);
            let entry = match cand {
                Err(m) => SweepEntry { value, accepted: false, reason: Some(m), equation: None, certificate: None },
                Ok((c, cert)) => {
                    let equation = Some(self.equation(&c));
                    match self.conflict(&accepted, &c)? {
                        Some(reason) => {
                            SweepEntry { value, accepted: false, reason: Some(reason), equation, certificate: None }
                        }
                        None => {
                            accepted.push((fmt_rational(a), c));
                            SweepEntry { value, accepted: true, reason: None, equation, certificate: Some(certificate_data(&cert)) }
                        }
                    }
                }
            };
            entries.push(entry);
        }
        Ok(SweepReport { family: name.into(), grid: grid.iter().map(q).collect(), entries })
    }

    /// Why `c` cannot join the accepted members, if it cannot.
    fn conflict(&self, accepted: &[(String, ConicCurve)], c: &ConicCurve) -> Result<Option<String>, Failure> {
        let checks: Vec<zf_core::Result<bool>> = accepted.par_iter().map(|(_, d)| transversal(d, c)).collect();
        for ((label, _), t) in accepted.iter().zip(checks) {
            match t {
                Ok(true) => {}
                Ok(false) => return Ok(Some(format!("not transversal to the member at {label}"))),
                Err(e) => return Ok(Some(format!("member at {label}: {e}"))),
            }
        }
        if accepted.len() >= 2 {
            let mut group: Vec<ConicCurve> = accepted.iter().map(|(_, d)| d.clone()).collect();
            group.push(c.clone());
            let last = group.len() - 1;
            let triples = triple_points(&group).map_err(|e| failure(e, "sweep"))?;
            if let Some(t) = triples.iter().find(|t| t.contains(&last)) {
                let labels: Vec<&str> = t.iter().filter(|&&k| k != last).map(|&k| accepted[k].0.as_str()).collect();
                return Ok(Some(format!("common point with the members at {}", labels.join(" and "))));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_parse_and_print_stably() {
        for name in BUILTINS {
            let s = builtin(name).unwrap();
            assert_eq!(s.name, name);
            assert_eq!(parse_scenario(&s.to_string()).unwrap(), s);
        }
        assert!(matches!(builtin("nope"), Err(Failure::Input(_))));
    }

    #[test]
    fn builtin_lines_match_the_catalog() {
        let s = builtin("two-nodal-shioda-usui").unwrap();
        for (decl, line) in s.lines.iter().zip(catalog::two_nodal_lines()) {
            assert_eq!(decl.name, line.name);
            assert!(PlaneCurve::new(decl.form.clone()).unwrap().equal_up_to_scalar(&line.line));
            assert_eq!(decl.branch, line.branch);
        }
        let s = builtin("tacnodal-shioda-usui").unwrap();
        for (decl, line) in s.lines.iter().zip(catalog::tacnodal_lines()) {
            assert!(PlaneCurve::new(decl.form.clone()).unwrap().equal_up_to_scalar(&line.line));
            assert_eq!(decl.branch, line.branch);
        }
    }

    #[test]
    fn default_commands_follow_declarations() {
        let s = parse_scenario("quartic builtin tacnodal-shioda-usui\n").unwrap();
        assert_eq!(default_commands(&s), vec!["verify-gram"]);
        let s = builtin("five-plet").unwrap();
        assert_eq!(default_commands(&s), s.checks);
    }

    #[test]
    fn unknown_checks_are_input_errors() {
        let s = parse_scenario("quartic builtin tacnodal-shioda-usui\n").unwrap();
        let e = run_checks(&s, &["frobnicate".into()], &Options::default()).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn certificate_data_round_trips() {
        let d = CertificateData {
            resultant: "4*t^2 - 8*t + 4".into(),
            c: "4/1".into(),
            h: "t - 1".into(),
            tangencies: 1,
            infinity_handled: false,
            shear: vec![vec!["1/1".into(), "0/1".into(), "0/1".into()]; 3],
        };
        assert_eq!(certificate_holds(&d), Ok(true));
        let bad = CertificateData { c: "3/1".into(), ..d.clone() };
        assert_eq!(certificate_holds(&bad), Ok(false));
        let wrong_degree = CertificateData { tangencies: 2, ..d };
        assert_eq!(certificate_holds(&wrong_degree), Ok(false));
    }
}
