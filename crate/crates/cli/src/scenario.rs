//! Scenario files (`.zfs`).
//!
//! One declaration per line; `#` starts a comment. Homogeneous equations use
//! `T, X, Z`, slope expressions use `t`, and family slopes may use one extra
//! parameter name.
//!
//! ```text
//! scenario five-plet
//! quartic builtin two-nodal-shioda-usui      # or: quartic X^3*Z + ...
//! point [0:1:0]
//! line s0 = X : +                            # branch + or -
//! expect det 1/8
//! conic C1 = C(-1/12*t, [2]s0)
//! conic D = equation T^2 + X^2 - Z^2
//! family A over a = C(-1/12*t + a, [2]s0)
//! arrangement B1 = C1, C2
//! invariance C1 scan 3                       # or: invariance C1 at [0:-271350:1]
//! sweep A grid 0, 1
//! check verify-gram
//! ```

use std::fmt;

use zf_core::algebra::{fmt_rational, parse_mpoly, parse_rational, MPoly, Rational, UniPoly};
use zf_core::catalog::Branch;
use zf_core::quartic::ProjPoint;

const FORM_VARS: [&str; 3] = ["T", "X", "Z"];

/// Syntax or reference error with a 1-based position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuarticSource {
    Builtin(String),
    Equation(MPoly<3>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineDecl {
    pub name: String,
    pub form: MPoly<3>,
    pub branch: Branch,
}

/// `Σ [nᵢ] sᵢ` over declared basis symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MWWord {
    pub terms: Vec<(i64, String)>,
}

impl MWWord {
    /// Coefficient vector against `names`; unknown symbols are an error.
    pub fn coordinates(&self, names: &[String]) -> Result<Vec<i64>, String> {
        let mut v = vec![0; names.len()];
        for (c, s) in &self.terms {
            let i = names.iter().position(|n| n == s).ok_or_else(|| format!("unknown basis symbol '{s}'"))?;
            v[i] += c;
        }
        Ok(v)
    }

    pub fn from_coordinates(v: &[i64], names: &[String]) -> Self {
        MWWord { terms: v.iter().zip(names).filter(|(c, _)| **c != 0).map(|(c, n)| (*c, n.clone())).collect() }
    }
}

impl fmt::Display for MWWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, s)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if i > 0 { "+" } else { "" };
            f.write_str(sign)?;
            match c.abs() {
                1 => write!(f, "{s}")?,
                n => write!(f, "[{n}]{s}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConicSource {
    Recipe { r: UniPoly, word: MWWord },
    Equation(MPoly<3>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicDecl {
    pub name: String,
    pub source: ConicSource,
}

/// A recipe whose slope depends on one free parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDecl {
    pub name: String,
    pub param: String,
    /// Slope in `(t, param)`, linear in `t`.
    pub r: MPoly<2>,
    pub word: MWWord,
}

impl FamilyDecl {
    pub fn slope_at(&self, a: &Rational) -> UniPoly {
        let mut c = vec![Rational::from_integer(0.into()); 2];
        for (e, v) in self.r.terms() {
            let mut term = v.clone();
            for _ in 0..e[1] {
                term *= a;
            }
            c[e[0] as usize] += term;
        }
        UniPoly::from_coeffs(c)
    }

    /// Coefficient of `t` in the slope, if it does not involve the parameter.
    pub fn slope_t_coefficient(&self) -> Option<Rational> {
        let mut out = Rational::from_integer(0.into());
        for (e, v) in self.r.terms() {
            if e[0] == 1 {
                if e[1] != 0 {
                    return None;
                }
                out += v;
            }
        }
        Some(out)
    }

    /// True when the slope is `r₁t + c + param`.
    pub fn is_translation(&self) -> bool {
        self.r.terms().all(|(e, v)| e[1] == 0 || (*e == [0, 1] && v == &Rational::from_integer(1.into())))
            && self.r.terms().any(|(e, _)| e[1] == 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementDecl {
    pub name: String,
    pub conics: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasePointSpec {
    Scan(u32),
    Point(ProjPoint),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceDecl {
    pub conic: String,
    pub target: BasePointSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepDecl {
    pub family: String,
    pub grid: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub name: String,
    pub quartic: QuarticSource,
    pub point: ProjPoint,
    pub lines: Vec<LineDecl>,
    pub expect_det: Option<Rational>,
    pub conics: Vec<ConicDecl>,
    pub families: Vec<FamilyDecl>,
    pub arrangements: Vec<ArrangementDecl>,
    pub invariance: Vec<InvarianceDecl>,
    pub sweeps: Vec<SweepDecl>,
    pub checks: Vec<String>,
}

impl Scenario {
    pub fn basis_names(&self) -> Vec<String> {
        self.lines.iter().map(|l| l.name.clone()).collect()
    }

    pub fn conic_index(&self, name: &str) -> Option<usize> {
        self.conics.iter().position(|c| c.name == name)
    }

    pub fn family(&self, name: &str) -> Option<&FamilyDecl> {
        self.families.iter().find(|f| f.name == name)
    }
}

fn default_point() -> ProjPoint {
    [Rational::from_integer(0.into()), Rational::from_integer(1.into()), Rational::from_integer(0.into())]
}

pub const CHECKS: [&str; 7] =
    ["verify-gram", "construct-conics", "verify-contact", "classify-splitting", "nplet-report", "invariance", "sweep"];

struct Line<'a> {
    no: usize,
    text: &'a str,
    /// Byte offset of `text` within the raw line.
    offset: usize,
}

impl Line<'_> {
    fn err(&self, at: &str, message: impl Into<String>) -> ParseError {
        let rel = (at.as_ptr() as usize).checked_sub(self.text.as_ptr() as usize).filter(|r| *r <= self.text.len());
        let col = rel.unwrap_or(0) + self.offset + 1;
        ParseError { line: self.no, column: col, message: message.into() }
    }
}

pub fn parse_scenario(src: &str) -> Result<Scenario, ParseError> {
    let mut s = Scenario {
        name: String::new(),
        quartic: QuarticSource::Builtin(String::new()),
        point: default_point(),
        lines: Vec::new(),
        expect_det: None,
        conics: Vec::new(),
        families: Vec::new(),
        arrangements: Vec::new(),
        invariance: Vec::new(),
        sweeps: Vec::new(),
        checks: Vec::new(),
    };
    let mut have_quartic = false;
    for (i, raw) in src.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let text = body.trim();
        if text.is_empty() {
            continue;
        }
        let line = Line { no: i + 1, text, offset: body.len() - body.trim_start().len() };
        let (kw, rest) = split_word(text);
        match kw {
            "scenario" => s.name = ident(&line, rest)?.to_string(),
            "quartic" => {
                let (w, tail) = split_word(rest);
                s.quartic = if w == "builtin" {
                    QuarticSource::Builtin(ident(&line, tail)?.to_string())
                } else {
                    QuarticSource::Equation(form(&line, rest)?)
                };
                have_quartic = true;
            }
            "point" => s.point = point(&line, rest)?,
            "line" => {
                let (name, rhs) = assignment(&line, rest)?;
                let (eq, br) = rhs.rsplit_once(':').ok_or_else(|| line.err(rhs, "expected ': +' or ': -' after the line"))?;
                let branch = match br.trim() {
                    "+" => Branch::Plus,
                    "-" => Branch::Minus,
                    other => return Err(line.err(br, format!("branch must be + or -, got '{other}'"))),
                };
                if s.lines.iter().any(|l| l.name == name) {
                    return Err(line.err(name, format!("basis symbol '{name}' declared twice")));
                }
                s.lines.push(LineDecl { name: name.to_string(), form: form(&line, eq)?, branch });
            }
            "expect" => {
                let (w, tail) = split_word(rest);
                if w != "det" {
                    return Err(line.err(rest, "expected 'expect det <rational>'"));
                }
                s.expect_det = Some(rational(&line, tail)?);
            }
            "conic" => {
                let (name, rhs) = assignment(&line, rest)?;
                if s.conic_index(name).is_some() {
                    return Err(line.err(name, format!("conic '{name}' declared twice")));
                }
                let (w, tail) = split_word(rhs);
                let source = if w == "equation" {
                    ConicSource::Equation(form(&line, tail)?)
                } else {
                    let (r, word) = recipe(&line, rhs, &s.basis_names())?;
                    let r = parse_mpoly(r, &["t"]).map_err(|e| line.err(r, e.to_string()))?;
                    let uni = UniPoly::from_coeffs(
                        (0..=r.total_degree().unwrap_or(0)).map(|k| r.coeff(&[k])).collect(),
                    );
                    ConicSource::Recipe { r: uni, word }
                };
                s.conics.push(ConicDecl { name: name.to_string(), source });
            }
            "family" => {
                let (name, tail) = split_word(rest);
                let (over, tail) = split_word(tail);
                if over != "over" {
                    return Err(line.err(tail, "expected 'family NAME over PARAM = C(...)'"));
                }
                let (param, rhs) = assignment(&line, tail)?;
                let (r, word) = recipe(&line, rhs, &s.basis_names())?;
                let rp = parse_mpoly(r, &["t", param]).map_err(|e| line.err(r, e.to_string()))?;
                if rp.degree_in(0).unwrap_or(0) > 1 {
                    return Err(line.err(r, "family slope must be linear in t"));
                }
                s.families.push(FamilyDecl { name: ident(&line, name)?.to_string(), param: param.to_string(), r: rp, word });
            }
            "arrangement" => {
                let (name, rhs) = assignment(&line, rest)?;
                let mut conics = Vec::new();
                for c in rhs.split(',') {
                    let c = ident(&line, c)?;
                    if s.conic_index(c).is_none() {
                        return Err(line.err(c, format!("unknown conic '{c}'")));
                    }
                    conics.push(c.to_string());
                }
                s.arrangements.push(ArrangementDecl { name: name.to_string(), conics });
            }
            "invariance" => {
                let (name, tail) = split_word(rest);
                let (mode, arg) = split_word(tail);
                let target = match mode {
                    "scan" => BasePointSpec::Scan(arg.trim().parse().map_err(|_| line.err(arg, "expected a scan bound"))?),
                    "at" => BasePointSpec::Point(point(&line, arg)?),
                    _ => return Err(line.err(tail, "expected 'scan N' or 'at [T:X:Z]'")),
                };
                let conic = ident(&line, name)?;
                if s.conic_index(conic).is_none() {
                    return Err(line.err(conic, format!("unknown conic '{conic}'")));
                }
                s.invariance.push(InvarianceDecl { conic: conic.to_string(), target });
            }
            "sweep" => {
                let (name, tail) = split_word(rest);
                let (g, spec) = split_word(tail);
                if g != "grid" {
                    return Err(line.err(tail, "expected 'sweep FAMILY grid SPEC'"));
                }
                let grid = parse_grid(spec).map_err(|m| line.err(spec, m))?;
                let family = ident(&line, name)?;
                if s.family(family).is_none() {
                    return Err(line.err(family, format!("unknown family '{family}'")));
                }
                s.sweeps.push(SweepDecl { family: family.to_string(), grid });
            }
            "check" => {
                let c = ident(&line, rest)?;
                if !CHECKS.contains(&c) {
                    return Err(line.err(rest, format!("unknown check '{c}'")));
                }
                s.checks.push(c.to_string());
            }
            _ => return Err(line.err(text, format!("unknown declaration '{kw}'"))),
        }
    }
    if !have_quartic {
        return Err(ParseError { line: 1, column: 1, message: "missing 'quartic' declaration".into() });
    }
    Ok(s)
}

fn split_word(s: &str) -> (&str, &str) {
    let s = s.trim_start();
    match s.find(char::is_whitespace) {
        Some(i) => (&s[..i], s[i..].trim_start()),
        None => (s, ""),
    }
}

fn ident<'a>(line: &Line, s: &'a str) -> Result<&'a str, ParseError> {
    let s = s.trim();
    let ok = !s.is_empty()
        && s.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_');
    if ok {
        Ok(s)
    } else {
        Err(line.err(s, format!("expected a name, got '{s}'")))
    }
}

fn assignment<'a>(line: &Line, s: &'a str) -> Result<(&'a str, &'a str), ParseError> {
    let (name, rhs) = s.split_once('=').ok_or_else(|| line.err(s, "expected 'NAME = ...'"))?;
    Ok((ident(line, name)?, rhs.trim()))
}

fn form(line: &Line, s: &str) -> Result<MPoly<3>, ParseError> {
    let f = parse_mpoly(s, &FORM_VARS).map_err(|e| line.err(s, e.to_string()))?;
    if f.is_zero() || !f.is_homogeneous() {
        return Err(line.err(s, "expected a nonzero homogeneous polynomial in T, X, Z"));
    }
    Ok(f)
}

fn rational(line: &Line, s: &str) -> Result<Rational, ParseError> {
    parse_rational(s).ok_or_else(|| line.err(s, format!("expected a rational number, got '{}'", s.trim())))
}

fn point(line: &Line, s: &str) -> Result<ProjPoint, ParseError> {
    let inner = s.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(|| line.err(s, "expected [T:X:Z]"))?;
    let parts: Vec<&str> = inner.split(':').collect();
    if parts.len() != 3 {
        return Err(line.err(s, "expected three coordinates"));
    }
    let p = [rational(line, parts[0])?, rational(line, parts[1])?, rational(line, parts[2])?];
    if p.iter().all(|c| c == &Rational::from_integer(0.into())) {
        return Err(line.err(s, "[0:0:0] is not a point"));
    }
    Ok(p)
}

/// `C(r, word)`: returns the slope text and the word.
fn recipe<'a>(line: &Line, s: &'a str, basis: &[String]) -> Result<(&'a str, MWWord), ParseError> {
    let inner = s
        .trim()
        .strip_prefix("C(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| line.err(s, "expected C(slope, word) or 'equation ...'"))?;
    let (r, w) = inner.rsplit_once(',').ok_or_else(|| line.err(inner, "expected C(slope, word)"))?;
    let parsed = word(line, w)?;
    parsed.coordinates(basis).map_err(|m| line.err(w.trim(), m))?;
    Ok((r.trim(), parsed))
}

fn word(line: &Line, s: &str) -> Result<MWWord, ParseError> {
    let mut terms: Vec<(i64, String)> = Vec::new();
    let mut rest = s.trim();
    if rest.is_empty() {
        return Err(line.err(s, "empty Mordell-Weil word"));
    }
    let mut first = true;
    while !rest.is_empty() {
        let at = rest;
        let mut sign = 1;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        } else if !first {
            return Err(line.err(at, "expected + or - between word terms"));
        }
        let mut coeff = 1i64;
        if let Some(r) = rest.strip_prefix('[') {
            let (n, tail) = r.split_once(']').ok_or_else(|| line.err(rest, "unclosed '['"))?;
            coeff = n.trim().parse().map_err(|_| line.err(n, "expected an integer multiplier"))?;
            rest = tail.trim_start();
        }
        let end = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
        let sym = &rest[..end];
        if sym.is_empty() || !sym.starts_with(|c: char| c.is_ascii_alphabetic()) {
            return Err(line.err(rest, "expected a basis symbol"));
        }
        if terms.iter().any(|(_, t)| t == sym) {
            return Err(line.err(rest, format!("basis symbol '{sym}' repeated in word")));
        }
        terms.push((sign * coeff, sym.to_string()));
        rest = rest[end..].trim_start();
        first = false;
    }
    Ok(MWWord { terms })
}

/// `a, b, c` (rationals) or `START..END` with integer steps, or
/// `START..END:STEP` with a rational step.
pub fn parse_grid(spec: &str) -> Result<Vec<Rational>, String> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Ok(Vec::new());
    }
    if let Some((a, b)) = spec.split_once("..") {
        let (b, step) = match b.split_once(':') {
            Some((b, st)) => (b, parse_rational(st).ok_or_else(|| format!("bad step '{st}'"))?),
            None => (b, Rational::from_integer(1.into())),
        };
        let a = parse_rational(a).ok_or_else(|| format!("bad grid start '{a}'"))?;
        let b = parse_rational(b).ok_or_else(|| format!("bad grid end '{b}'"))?;
        if step <= Rational::from_integer(0.into()) {
            return Err("grid step must be positive".into());
        }
        let mut out = Vec::new();
        let mut x = a;
        while x <= b {
            out.push(x.clone());
            x += &step;
            if out.len() > 100_000 {
                return Err("grid has more than 100000 points".into());
            }
        }
        return Ok(out);
    }
    spec.split(',').map(|p| parse_rational(p).ok_or_else(|| format!("bad grid value '{}'", p.trim()))).collect()
}

fn fmt_point(p: &ProjPoint) -> String {
    format!("[{}:{}:{}]", fmt_rational(&p[0]), fmt_rational(&p[1]), fmt_rational(&p[2]))
}

/// Canonical text; `parse_scenario` of it gives back an equal scenario.
impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.name.is_empty() {
            writeln!(f, "scenario {}", self.name)?;
        }
        match &self.quartic {
            QuarticSource::Builtin(n) => writeln!(f, "quartic builtin {n}")?,
            QuarticSource::Equation(q) => writeln!(f, "quartic {}", q.fmt_vars(&FORM_VARS))?,
        }
        writeln!(f, "point {}", fmt_point(&self.point))?;
        for l in &self.lines {
            let b = match l.branch {
                Branch::Plus => "+",
                Branch::Minus => "-",
            };
            writeln!(f, "line {} = {} : {b}", l.name, l.form.fmt_vars(&FORM_VARS))?;
        }
        if let Some(d) = &self.expect_det {
            writeln!(f, "expect det {}", fmt_rational(d))?;
        }
        for c in &self.conics {
            match &c.source {
                ConicSource::Recipe { r, word } => writeln!(f, "conic {} = C({}, {word})", c.name, r)?,
                ConicSource::Equation(e) => writeln!(f, "conic {} = equation {}", c.name, e.fmt_vars(&FORM_VARS))?,
            }
        }
        for fam in &self.families {
            writeln!(f, "family {} over {} = C({}, {})", fam.name, fam.param, fam.r.fmt_vars(&["t", &fam.param]), fam.word)?;
        }
        for a in &self.arrangements {
            writeln!(f, "arrangement {} = {}", a.name, a.conics.join(", "))?;
        }
        for inv in &self.invariance {
            match &inv.target {
                BasePointSpec::Scan(n) => writeln!(f, "invariance {} scan {n}", inv.conic)?,
                BasePointSpec::Point(p) => writeln!(f, "invariance {} at {}", inv.conic, fmt_point(p))?,
            }
        }
        for sw in &self.sweeps {
            let g: Vec<String> = sw.grid.iter().map(fmt_rational).collect();
            writeln!(f, "sweep {} grid {}", sw.family, g.join(", "))?;
        }
        for c in &self.checks {
            writeln!(f, "check {c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use zf_core::algebra::{int, rat};

    const SMALL: &str = "\
scenario demo
quartic builtin two-nodal-shioda-usui
line s0 = X : +
line s1 = 32*T + X : +   # through a node
conic C1 = C(-1/12*t, [2]s0)
conic C9 = C(1/6*t, [2]s1-s0)
";

    #[test]
    fn recipe_line() {
        let s = parse_scenario(SMALL).unwrap();
        let ConicSource::Recipe { r, word } = &s.conics[0].source else { panic!() };
        assert_eq!(r, &UniPoly::from_coeffs(vec![int(0), rat(-1, 12)]));
        assert_eq!(word.terms, vec![(2, "s0".to_string())]);
        let ConicSource::Recipe { word, .. } = &s.conics[1].source else { panic!() };
        assert_eq!(word.coordinates(&s.basis_names()).unwrap(), vec![-1, 2]);
        assert_eq!(s.point, default_point());
    }

    #[test]
    fn empty_conic_list_is_valid() {
        let s = parse_scenario("quartic builtin tacnodal-shioda-usui\n").unwrap();
        assert!(s.conics.is_empty());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_scenario("quartic builtin x\nconic C1 = C(-1/12*t, [2]s7)\n").unwrap_err();
        assert!(e.message.contains("unknown basis symbol 's7'"), "{e}");
        let e = parse_scenario("quartic builtin x\nline s0 = X + y : +\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("unknown variable 'y'"), "{e}");
        let e = parse_scenario("quartic builtin x\nexpect det 1/x\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 12));
        assert!(parse_scenario("conic C1 = C(t, s0)\n").is_err());
        assert!(parse_scenario("quartic builtin x\nline s0 = X : +\nconic C = C(t, s0+s0)\n").is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        let mut src = SMALL.to_string();
        src.push_str(
            "family A over a = C(-1/12*t + a, [2]s0)\narrangement B = C1, C9\ninvariance C1 at [0:-271350:1]\n\
             sweep A grid 0..1:1/2\nexpect det 1/8\nconic E = equation T^2 + X^2 - 3/2*Z^2\ncheck nplet-report\n",
        );
        let s = parse_scenario(&src).unwrap();
        let printed = s.to_string();
        assert_eq!(parse_scenario(&printed).unwrap(), s);
        assert_eq!(s.sweeps[0].grid, vec![int(0), rat(1, 2), int(1)]);
    }

    #[test]
    fn family_slope() {
        let s = parse_scenario("quartic builtin x\nline s0 = X : +\nfamily A over a = C(-t/12 + a, [2]s0)\n").unwrap();
        let f = &s.families[0];
        assert_eq!(f.slope_at(&int(3)), UniPoly::from_coeffs(vec![int(3), rat(-1, 12)]));
        assert_eq!(f.slope_t_coefficient(), Some(rat(-1, 12)));
        assert!(f.is_translation());
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("").unwrap(), Vec::<Rational>::new());
        assert_eq!(parse_grid("-1..1").unwrap(), vec![int(-1), int(0), int(1)]);
        assert_eq!(parse_grid("1/2, 3").unwrap(), vec![rat(1, 2), int(3)]);
        assert!(parse_grid("0..1:0").is_err());
    }
}
