//! Machine-readable reports and their human rendering.
//!
//! Every rational is written as a `"num/den"` string. `generated_unix` is the
//! only field that differs between two runs on the same input.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use zf_core::algebra::Rational;

pub const SCHEMA: &str = "zf-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool_version: String,
    pub scenario: String,
    pub scenario_hash: String,
    /// Canonical scenario text, so the report can be re-verified on its own.
    pub scenario_text: String,
    pub generated_unix: u64,
    pub commands: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param_grid: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conics: Vec<ConicReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<FamilyReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<PairReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triple_points: Option<Vec<[String; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nplet: Option<NpletReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub invariance: Vec<InvarianceOutcome>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sweeps: Vec<SweepReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub singularities: Vec<String>,
    pub fibers: Vec<FiberReport>,
    pub basis: Vec<String>,
    pub gram: Vec<Vec<String>>,
    pub det: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_det: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    pub place: String,
    pub kodaira: String,
    pub count: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicReport {
    pub name: String,
    /// Integer-cleared equation in the scenario's `T, X, Z`.
    pub equation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recipe: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contact: Option<ContactOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift_vector: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi1: Option<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactOutcome {
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnosis: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateData>,
}

/// A contact certificate in the model chart: `resultant = c·h²` with `h`
/// squarefree of degree `tangencies`, after applying `shear`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateData {
    pub resultant: String,
    pub c: String,
    pub h: String,
    pub tangencies: u32,
    pub infinity_handled: bool,
    pub shear: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub name: String,
    pub slope: String,
    pub word: String,
    /// Monic-in-`x` quadratic in `(param, t, x)` on the Weierstrass model.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub first: String,
    pub second: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transversal: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splitting: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NpletReport {
    pub arrangements: Vec<ArrangementReport>,
    pub witnesses: Vec<WitnessReport>,
    pub distinguished: bool,
    pub table: Vec<TableCell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementReport {
    pub name: String,
    pub conics: Vec<String>,
    pub phi1: Vec<u8>,
    pub phi1_count: usize,
    pub splitting: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub first: String,
    pub second: String,
    pub invariant: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCell {
    pub splitting: String,
    pub phi1_count: usize,
    pub arrangements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceOutcome {
    pub conic: String,
    pub first_point: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_point: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_vector: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_vector: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_signs: Option<Vec<i64>>,
    pub agree: Option<bool>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub family: String,
    pub grid: Vec<String>,
    pub entries: Vec<SweepEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub value: String,
    pub accepted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateData>,
}

/// `"num/den"`, also for integers.
pub fn q(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// The report with the timestamp cleared, for comparisons.
    pub fn without_timestamp(&self) -> Report {
        Report { generated_unix: 0, ..self.clone() }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario {} ({})", self.scenario, &self.scenario_hash[..12.min(self.scenario_hash.len())]);
        if let Some(l) = &self.lattice {
            render_lattice(&mut out, l);
        }
        if !self.families.is_empty() {
            let rows: Vec<Vec<String>> = self
                .families
                .iter()
                .map(|f| vec![f.name.clone(), format!("C({}, {})", f.slope, f.word), f.polynomial.clone().unwrap_or("-".into())])
                .collect();
            section(&mut out, "families", &["name", "recipe", "quadratic"], &rows);
        }
        if !self.conics.is_empty() {
            let rows: Vec<Vec<String>> = self
                .conics
                .iter()
                .map(|c| {
                    let contact = match &c.contact {
                        None => "-".to_string(),
                        Some(o) if o.passed => {
                            format!("{} tangencies", o.certificate.as_ref().map_or(0, |c| c.tangencies))
                        }
                        Some(o) => format!("FAIL: {}", o.diagnosis.as_deref().unwrap_or("")),
                    };
                    let lift = c.lift_vector.as_ref().map_or("-".into(), |v| vec_str(v));
                    let phi = c.phi1.map_or("-".into(), |b| b.to_string());
                    vec![c.name.clone(), c.recipe.clone().unwrap_or("-".into()), contact, lift, phi, c.equation.clone()]
                })
                .collect();
            section(&mut out, "conics", &["name", "recipe", "contact", "lift", "phi1", "equation"], &rows);
        }
        if !self.pairs.is_empty() {
            let rows: Vec<Vec<String>> = self
                .pairs
                .iter()
                .map(|p| {
                    let tr = p.transversal.map_or("-".into(), |t| if t { "yes".into() } else { "NO".into() });
                    vec![p.first.clone(), p.second.clone(), tr, p.splitting.clone().unwrap_or("-".into())]
                })
                .collect();
            section(&mut out, "pairs", &["first", "second", "transversal", "splitting"], &rows);
        }
        if let Some(t) = &self.triple_points {
            if t.is_empty() {
                let _ = writeln!(out, "\ntriple points: none");
            } else {
                let list: Vec<String> = t.iter().map(|x| x.join("/")).collect();
                let _ = writeln!(out, "\ntriple points: {}", list.join(", "));
            }
        }
        if let Some(n) = &self.nplet {
            render_nplet(&mut out, n);
        }
        if !self.invariance.is_empty() {
            let rows: Vec<Vec<String>> = self
                .invariance
                .iter()
                .map(|i| {
                    vec![
                        i.conic.clone(),
                        i.first_point.clone(),
                        i.second_point.clone().unwrap_or("-".into()),
                        i.first_vector.as_ref().map_or("-".into(), |v| vec_str(v)),
                        i.second_vector.as_ref().map_or("-".into(), |v| vec_str(v)),
                        i.note.clone(),
                    ]
                })
                .collect();
            section(&mut out, "base-point invariance", &["conic", "z1", "z2", "vector at z1", "vector at z2", "verdict"], &rows);
        }
        for sw in &self.sweeps {
            let rows: Vec<Vec<String>> = sw
                .entries
                .iter()
                .map(|e| {
                    let verdict = if e.accepted { "accepted".to_string() } else { e.reason.clone().unwrap_or_default() };
                    vec![short(&e.value), verdict, e.equation.clone().unwrap_or("-".into())]
                })
                .collect();
            let title = format!("sweep {} ({} values)", sw.family, sw.grid.len());
            section(&mut out, &title, &["value", "verdict", "equation"], &rows);
        }
        let _ = writeln!(out);
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let v = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{v} {:<width$}  {}", c.name, c.detail);
        }
        out
    }
}

fn vec_str(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn render_lattice(out: &mut String, l: &LatticeReport) {
    let _ = writeln!(out, "\nsingular points: {}", if l.singularities.is_empty() { "none".into() } else { l.singularities.join(", ") });
    let rows: Vec<Vec<String>> =
        l.fibers.iter().map(|f| vec![f.place.clone(), f.kodaira.clone(), f.count.to_string()]).collect();
    section(out, "singular fibers", &["place", "type", "count"], &rows);
    let mut header = vec![""];
    header.extend(l.basis.iter().map(String::as_str));
    let rows: Vec<Vec<String>> = l
        .gram
        .iter()
        .zip(&l.basis)
        .map(|(row, n)| std::iter::once(n.clone()).chain(row.iter().map(|x| short(x))).collect())
        .collect();
    section(out, "gram matrix", &header, &rows);
    let _ = write!(out, "det = {}", short(&l.det));
    if let Some(e) = &l.expected_det {
        let _ = write!(out, " (expected {})", short(e));
    }
    let _ = writeln!(out);
}

fn render_nplet(out: &mut String, n: &NpletReport) {
    let rows: Vec<Vec<String>> = n
        .arrangements
        .iter()
        .map(|a| {
            let bits: Vec<String> = a.phi1.iter().map(u8::to_string).collect();
            vec![a.name.clone(), a.conics.join(","), bits.join(""), a.phi1_count.to_string(), a.splitting.join(" ")]
        })
        .collect();
    section(out, "arrangements", &["name", "conics", "phi1", "#1", "splitting types"], &rows);

    let mut types: Vec<&str> = n.table.iter().map(|c| c.splitting.as_str()).collect();
    types.dedup();
    let max = n.table.iter().map(|c| c.phi1_count).max().unwrap_or(0);
    let cols: Vec<String> = (0..=max).rev().map(|k| format!("#1 = {k}")).collect();
    let mut header = vec!["type"];
    header.extend(cols.iter().map(String::as_str));
    let rows: Vec<Vec<String>> = types
        .iter()
        .map(|t| {
            let mut row = vec![t.to_string()];
            for k in (0..=max).rev() {
                let cell = n.table.iter().find(|c| c.splitting == *t && c.phi1_count == k);
                row.push(cell.map_or("-".into(), |c| c.arrangements.join(",")));
            }
            row
        })
        .collect();
    section(out, "invariant table", &header, &rows);
    let _ = writeln!(out, "distinguished: {}", if n.distinguished { "yes" } else { "no" });
}

/// `n/1` shown as `n` in human output.
fn short(x: &str) -> String {
    x.strip_suffix("/1").unwrap_or(x).to_string()
}

fn section(out: &mut String, title: &str, header: &[&str], rows: &[Vec<String>]) {
    let _ = writeln!(out, "\n{title}");
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            width[i] = width[i].max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let last = cells.len() - 1;
        let mut s = String::from("  ");
        for (i, c) in cells.into_iter().enumerate() {
            if i == last {
                s.push_str(c);
            } else {
                let _ = write!(s, "{c:<w$}  ", w = width[i]);
            }
        }
        s.trim_end().to_string()
    };
    let _ = writeln!(out, "{}", line(header.to_vec()));
    for r in rows {
        let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use zf_core::algebra::{int, rat};

    #[test]
    fn rationals_are_fractions() {
        assert_eq!(q(&rat(-1, 8)), "-1/8");
        assert_eq!(q(&int(3)), "3/1");
        assert_eq!(short("3/1"), "3");
    }

    #[test]
    fn hash_is_hex_sha256() {
        assert_eq!(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn aligned_columns() {
        let mut out = String::new();
        section(&mut out, "t", &["a", "bb"], &[vec!["long".into(), "x".into()]]);
        assert_eq!(out, "\nt\n  a     bb\n  long  x\n");
    }
}
