use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{render_staircase, LocusKind, PointVerdict, Window};
use crate::polycore::Exponent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(Error::usage(format!(
                "unknown format `{other}`; expected text or json"
            ))),
        }
    }
}

/// A coefficient ideal at one exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub exponent: Vec<u32>,
    pub monomial: String,
    pub ideal: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitialTerm {
    pub exponent: Vec<u32>,
    pub monomial: String,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusPart {
    pub label: String,
    pub coefficient_ideal: Vec<String>,
    pub ideal: Vec<String>,
    pub by_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub element: String,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictEntry {
    pub exponent: Vec<u32>,
    pub monomial: String,
    pub verdict: PointVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientEntry {
    pub exponent: Vec<u32>,
    pub monomial: String,
    pub extended: Vec<String>,
    pub recomputed: Vec<String>,
    pub equal: bool,
}

/// A principal coefficient ideal over `Z` or `Z/n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoCell {
    pub exponent: Vec<u32>,
    pub monomial: String,
    pub generator: String,
}

/// Output of one command. Ideals are lists of canonical polynomial strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "report", rename_all = "kebab-case")]
pub enum Report {
    Empty,
    Basis {
        ideal: String,
        ring: String,
        basis: Vec<String>,
    },
    Initial {
        ideal: String,
        terms: Vec<String>,
        entries: Vec<InitialTerm>,
    },
    Coefficients {
        ideal: String,
        vars: Vec<String>,
        window: Window,
        leading: Vec<Cell>,
        cells: Vec<Cell>,
    },
    Contraction {
        ideal: String,
        generators: Vec<String>,
        mod_base: bool,
    },
    Locus {
        ideal: String,
        kind: LocusKind,
        parts: Vec<LocusPart>,
        combined: Vec<String>,
        contraction: Vec<String>,
        witness: Option<WitnessReport>,
        mod_base: bool,
    },
    GoodPoint {
        ideal: String,
        prime: Vec<String>,
        contraction_escapes: bool,
        entries: Vec<VerdictEntry>,
        good: bool,
    },
    Specialization {
        ideal: String,
        point: String,
        predicted: Vec<String>,
        actual: Vec<String>,
        equal: bool,
        contained: bool,
    },
    Saturation {
        ideal: String,
        by: String,
        generators: Vec<String>,
        mod_base: bool,
    },
    QuotientCheck {
        ideal: String,
        contraction: Vec<String>,
        entries: Vec<QuotientEntry>,
        equal: bool,
    },
    MonoCoefficients {
        ideal: String,
        base: String,
        generators: String,
        cells: Vec<MonoCell>,
    },
    MonoFiber {
        ideal: String,
        base: String,
        prime: u64,
        generators: Vec<String>,
    },
    MonoDiagram {
        ideal: String,
        base: String,
        vars: Vec<String>,
        window: Window,
        cells: Vec<MonoCell>,
    },
}

/// `(g1, g2)`, or `(0)` for an empty list.
pub fn format_list(items: &[String]) -> String {
    if items.is_empty() {
        "(0)".into()
    } else {
        format!("({})", items.join(", "))
    }
}

fn sub(label: &str) -> String {
    if label.chars().all(|c| c.is_alphanumeric()) {
        label.to_string()
    } else {
        format!("{{{label}}}")
    }
}

fn suffix(mod_base: bool) -> &'static str {
    if mod_base {
        " mod base"
    } else {
        ""
    }
}

fn exps(cells: &[(Vec<u32>, String)]) -> Vec<(Exponent, String)> {
    cells
        .iter()
        .map(|(e, t)| (Exponent::new(e.clone()), t.clone()))
        .collect()
}

impl Report {
    pub fn is_empty(&self) -> bool {
        matches!(self, Report::Empty)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
        }
    }

    /// Stable-keyed JSON; the empty report is `{}`.
    pub fn to_json(&self) -> String {
        if self.is_empty() {
            return "{}".into();
        }
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Report> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::usage(format!("invalid report JSON: {e}")))?;
        if value.as_object().is_some_and(|o| o.is_empty()) {
            return Ok(Report::Empty);
        }
        serde_json::from_value(value).map_err(|e| Error::usage(format!("invalid report JSON: {e}")))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Empty => {}
            Report::Basis { ideal, ring, basis } => {
                let _ = writeln!(out, "reduced basis of {ideal} in {ring}:");
                for g in basis {
                    let _ = writeln!(out, "  {g}");
                }
            }
            Report::Initial { ideal, terms, .. } => {
                let _ = writeln!(out, "in({ideal}) = {}", format_list(terms));
            }
            Report::Coefficients {
                vars,
                window,
                leading,
                cells,
                ..
            } => {
                let grid: Vec<(Vec<u32>, String)> = cells
                    .iter()
                    .map(|c| (c.exponent.clone(), format_list(&c.ideal)))
                    .collect();
                out.push_str(&render_staircase(vars, *window, &exps(&grid)));
                if !leading.is_empty() {
                    out.push_str("leading exponents:\n");
                    for c in leading {
                        let _ = writeln!(out, "  {}: {}", c.monomial, format_list(&c.ideal));
                    }
                }
            }
            Report::Contraction {
                ideal,
                generators,
                mod_base,
            } => {
                let _ = writeln!(
                    out,
                    "{ideal} ∩ A = {}{}",
                    format_list(generators),
                    suffix(*mod_base)
                );
            }
            Report::Locus {
                kind,
                parts,
                combined,
                witness,
                mod_base,
                ..
            } => {
                for p in parts {
                    match kind {
                        LocusKind::Flat => {
                            let _ = write!(
                                out,
                                "J_{} = {}; (J^2 + base) : J = {}",
                                sub(&p.label),
                                format_list(&p.coefficient_ideal),
                                format_list(&p.ideal)
                            );
                            if p.by_zero {
                                out.push_str(" (colon by the zero ideal)");
                            }
                            out.push('\n');
                        }
                        LocusKind::Iso | LocusKind::Finite => {
                            let _ = writeln!(
                                out,
                                "in(I)_{} = {}",
                                sub(&p.label),
                                format_list(&p.ideal)
                            );
                        }
                    }
                }
                let name = if *kind == LocusKind::Flat {
                    "S"
                } else {
                    "combined"
                };
                let _ = write!(
                    out,
                    "{name} = {}{}; witness: ",
                    format_list(combined),
                    suffix(*mod_base)
                );
                match witness {
                    Some(w) => {
                        let _ = writeln!(out, "{}", w.element);
                        for n in &w.notes {
                            let _ = writeln!(out, "  {n}");
                        }
                    }
                    None => out.push_str("none (inconclusive)\n"),
                }
            }
            Report::GoodPoint {
                prime,
                contraction_escapes,
                entries,
                good,
                ..
            } => {
                let p = format_list(prime);
                if *contraction_escapes {
                    let _ = writeln!(
                        out,
                        "I ∩ A is not contained in {p}: the local quotient is zero"
                    );
                }
                for e in entries {
                    let _ = writeln!(out, "in(I)_{}: {}", sub(&e.monomial), e.verdict);
                }
                let verdict = if *good { "good" } else { "not good" };
                let _ = writeln!(out, "{p} is {verdict} (assuming {p} is prime)");
            }
            Report::Specialization {
                point,
                predicted,
                actual,
                equal,
                ..
            } => {
                let _ = writeln!(
                    out,
                    "at {point}: predicted {}, actual {}, {}",
                    format_list(predicted),
                    format_list(actual),
                    if *equal { "EQUAL" } else { "NOT EQUAL" }
                );
            }
            Report::Saturation {
                ideal,
                by,
                generators,
                mod_base,
            } => {
                let _ = writeln!(
                    out,
                    "({ideal} : ({by})^∞) = {}{}",
                    format_list(generators),
                    suffix(*mod_base)
                );
            }
            Report::QuotientCheck {
                contraction,
                entries,
                equal,
                ..
            } => {
                let _ = writeln!(out, "I ∩ A = {}", format_list(contraction));
                for e in entries {
                    let _ = writeln!(
                        out,
                        "  {}: {} vs {}: {}",
                        e.monomial,
                        format_list(&e.extended),
                        format_list(&e.recomputed),
                        if e.equal { "equal" } else { "DIFFERENT" }
                    );
                }
                let _ = writeln!(out, "{}", if *equal { "equal" } else { "NOT EQUAL" });
            }
            Report::MonoCoefficients {
                base,
                generators,
                cells,
                ..
            } => {
                let _ = writeln!(out, "{generators} over {base}");
                for c in cells {
                    let _ = writeln!(out, "  {}: ({})", c.monomial, c.generator);
                }
            }
            Report::MonoFiber {
                prime, generators, ..
            } => {
                let _ = writeln!(out, "fiber at q={prime}: {}", format_list(generators));
            }
            Report::MonoDiagram {
                vars,
                window,
                cells,
                ..
            } => {
                let grid: Vec<(Vec<u32>, String)> = cells
                    .iter()
                    .map(|c| (c.exponent.clone(), format!("({})", c.generator)))
                    .collect();
                out.push_str(&render_staircase(vars, *window, &exps(&grid)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report() {
        assert_eq!(Report::Empty.to_text(), "");
        assert_eq!(Report::Empty.to_json(), "{}");
        assert_eq!(Report::from_json("{}").unwrap(), Report::Empty);
    }

    #[test]
    fn json_round_trip() {
        let r = Report::Specialization {
            ideal: "I".into(),
            point: "a=0".into(),
            predicted: vec![],
            actual: vec!["y".into()],
            equal: false,
            contained: true,
        };
        assert_eq!(
            r.to_text(),
            "at a=0: predicted (0), actual (y), NOT EQUAL\n"
        );
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        assert!(Report::from_json("[1").is_err());
    }
}
