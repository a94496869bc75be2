use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;

use super::report::{
    Cell, InitialTerm, LocusPart, MonoCell, QuotientEntry, Report, VerdictEntry, WitnessReport,
};
use super::session::{parse_assignment, parse_param_list, parse_param_poly, NamedIdeal, Session};
use crate::error::{Error, Result};
use crate::families::{
    base_contraction, coefficient_table, finite_locus, flat_locus, good_point, iso_locus,
    localize_contract, quotient_extension_check, relative_initial, specialization_check,
    FamilyIdeal, FamilyRing, LocusReport, PrimeSpec, RationalPoint, Window,
};
use crate::idealops::IdealHandle;
use crate::monofam::{
    mono_base_change, mono_coeff_ideal, mono_diagram, mono_fiber, MonomialIdealOverPIR,
};
use crate::polycore::{Exponent, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Gb,
    Initial,
    Coeffs,
    Contract,
    FlatLocus,
    GoodPoint,
    Specialize,
    IsoLocus,
    FiniteLocus,
    Saturate,
    QuolemCheck,
    MonoCoeffs,
    MonoFiber,
    MonoDiagram,
}

impl Command {
    pub const ALL: [Command; 14] = [
        Command::Gb,
        Command::Initial,
        Command::Coeffs,
        Command::Contract,
        Command::FlatLocus,
        Command::GoodPoint,
        Command::Specialize,
        Command::IsoLocus,
        Command::FiniteLocus,
        Command::Saturate,
        Command::QuolemCheck,
        Command::MonoCoeffs,
        Command::MonoFiber,
        Command::MonoDiagram,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Command::Gb => "gb",
            Command::Initial => "initial",
            Command::Coeffs => "coeffs",
            Command::Contract => "contract",
            Command::FlatLocus => "flat-locus",
            Command::GoodPoint => "good-point",
            Command::Specialize => "specialize",
            Command::IsoLocus => "iso-locus",
            Command::FiniteLocus => "finite-locus",
            Command::Saturate => "saturate",
            Command::QuolemCheck => "quolem-check",
            Command::MonoCoeffs => "mono-coeffs",
            Command::MonoFiber => "mono-fiber",
            Command::MonoDiagram => "mono-diagram",
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .iter()
            .find(|c| c.name() == s)
            .copied()
            .ok_or_else(|| Error::usage(format!("unknown command `{s}`")))
    }
}

/// Options shared by all commands; each command reads the ones it needs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandArgs {
    pub ideal: Option<String>,
    /// A point name or an assignment `a=1, b=0`.
    pub point: Option<String>,
    /// A prime name or `(gens)`; an integer for `mono-fiber`.
    pub prime: Option<String>,
    pub window: Option<Window>,
    /// Localizing element for `saturate`.
    pub by: Option<String>,
    /// Base change target for the monomial commands.
    pub modulus: Option<String>,
}

fn exponent_cell(fam_vars: &[String], e: &Exponent) -> (Vec<u32>, String) {
    let m = crate::polycore::format_monomial(fam_vars, e);
    (
        e.as_slice().to_vec(),
        if m.is_empty() { "1".into() } else { m },
    )
}

fn strings(polys: &[Polynomial]) -> Vec<String> {
    polys.iter().map(|p| p.to_string()).collect()
}

fn ideal_strings(i: &IdealHandle) -> Result<Vec<String>> {
    Ok(strings(&i.reduced_generators()?))
}

fn monomials(vars: &[String], exps: &[Exponent]) -> Vec<String> {
    exps.iter().map(|e| exponent_cell(vars, e).1).collect()
}

fn resolve_ideal<'a>(
    session: &'a Session,
    args: &CommandArgs,
) -> Result<(&'a str, &'a NamedIdeal)> {
    match &args.ideal {
        Some(name) => session
            .ideals()
            .iter()
            .find(|(n, _)| n == name)
            .map(|(n, i)| (n.as_str(), i))
            .ok_or_else(|| Error::usage(format!("no ideal named `{name}`"))),
        None => session
            .ideals()
            .first()
            .map(|(n, i)| (n.as_str(), i))
            .ok_or_else(|| Error::usage("the input declares no ideal")),
    }
}

fn family_ideal<'a>(
    session: &'a Session,
    args: &CommandArgs,
    cmd: Command,
) -> Result<(&'a str, &'a FamilyIdeal)> {
    match resolve_ideal(session, args)? {
        (n, NamedIdeal::Family(i)) => Ok((n, i)),
        _ => Err(Error::usage(format!(
            "`{}` needs a ring over Q or Fp; use the mono-* commands over Z",
            cmd.name()
        ))),
    }
}

fn mono_ideal(
    session: &Session,
    args: &CommandArgs,
    cmd: Command,
) -> Result<(String, MonomialIdealOverPIR)> {
    let (name, j) = match resolve_ideal(session, args)? {
        (n, NamedIdeal::Monomial(j)) => (n, j),
        _ => {
            return Err(Error::usage(format!(
                "`{}` needs a ring over Z or Zmod(n)",
                cmd.name()
            )))
        }
    };
    match &args.modulus {
        Some(m) => {
            let n = BigInt::from_str(m.trim())
                .map_err(|_| Error::usage(format!("modulus `{m}` is not an integer")))?;
            Ok((format!("{name} ⊗ Z/{n}"), mono_base_change(j, n)?))
        }
        None => Ok((name.to_string(), j.clone())),
    }
}

fn resolve_point(session: &Session, fam: &FamilyRing, args: &CommandArgs) -> Result<RationalPoint> {
    let text = args
        .point
        .as_deref()
        .ok_or_else(|| Error::usage("this command needs --point"))?;
    match session.point(text.trim()) {
        Some(p) => Ok(p.clone()),
        None => parse_assignment(fam, text),
    }
}

fn resolve_prime(session: &Session, fam: &FamilyRing, args: &CommandArgs) -> Result<PrimeSpec> {
    let text = args
        .prime
        .as_deref()
        .ok_or_else(|| Error::usage("this command needs --prime"))?;
    let gens = match session.prime(text.trim()) {
        Some(g) => g.to_vec(),
        None => parse_param_list(fam, text)?,
    };
    PrimeSpec::new(fam, gens)
}

fn locus_report(name: &str, r: LocusReport, fam: &FamilyRing) -> Result<Report> {
    let mut parts = Vec::new();
    for c in &r.components {
        parts.push(LocusPart {
            label: c.label.clone(),
            coefficient_ideal: ideal_strings(&c.coefficient_ideal)?,
            ideal: ideal_strings(&c.ideal)?,
            by_zero: c.by_zero,
        });
    }
    Ok(Report::Locus {
        ideal: name.into(),
        kind: r.kind,
        parts,
        combined: ideal_strings(&r.combined)?,
        contraction: ideal_strings(&r.contraction)?,
        witness: r.witness.map(|w| WitnessReport {
            element: w.element.to_string(),
            notes: w.notes,
        }),
        mod_base: fam.has_base(),
    })
}

pub fn execute_command(session: &Session, cmd: Command, args: &CommandArgs) -> Result<Report> {
    use Command::*;
    match cmd {
        MonoCoeffs | MonoFiber | MonoDiagram => execute_mono(session, cmd, args),
        _ => {
            let (name, ideal) = family_ideal(session, args, cmd)?;
            execute_family(session, cmd, args, name, ideal)
        }
    }
}

fn execute_family(
    session: &Session,
    cmd: Command,
    args: &CommandArgs,
    name: &str,
    ideal: &FamilyIdeal,
) -> Result<Report> {
    let fam: &Arc<FamilyRing> = ideal.family();
    let mains = fam.mains();
    match cmd {
        Command::Gb => Ok(Report::Basis {
            ideal: name.into(),
            ring: fam.total_ring().to_string(),
            basis: strings(ideal.basis()?.polys()),
        }),
        Command::Initial => {
            let rel = relative_initial(ideal)?;
            let entries = rel
                .entries()
                .iter()
                .map(|en| {
                    let (exponent, monomial) = exponent_cell(mains, &en.exponent);
                    InitialTerm {
                        exponent,
                        monomial,
                        coefficient: en.coefficient.to_string(),
                    }
                })
                .collect();
            Ok(Report::Initial {
                ideal: name.into(),
                terms: strings(&rel.terms_in_total()?),
                entries,
            })
        }
        Command::Coeffs => {
            let window = args.window.unwrap_or_default();
            let table = coefficient_table(ideal, window)?;
            let cell = |c: &crate::families::CoefficientEntry| {
                let (exponent, monomial) = exponent_cell(mains, &c.exponent);
                Cell {
                    exponent,
                    monomial,
                    ideal: strings(&c.generators),
                }
            };
            Ok(Report::Coefficients {
                ideal: name.into(),
                vars: mains.to_vec(),
                window,
                leading: table.leading.iter().map(cell).collect(),
                cells: table.cells.iter().map(cell).collect(),
            })
        }
        Command::Contract => Ok(Report::Contraction {
            ideal: name.into(),
            generators: ideal_strings(&base_contraction(ideal)?)?,
            mod_base: fam.has_base(),
        }),
        Command::FlatLocus => locus_report(name, flat_locus(ideal)?, fam),
        Command::IsoLocus => locus_report(name, iso_locus(ideal)?, fam),
        Command::FiniteLocus => locus_report(name, finite_locus(ideal)?, fam),
        Command::GoodPoint => {
            let prime = resolve_prime(session, fam, args)?;
            let v = good_point(ideal, &prime)?;
            Ok(Report::GoodPoint {
                ideal: name.into(),
                prime: ideal_strings(prime.ideal())?,
                contraction_escapes: v.contraction_escapes,
                entries: v
                    .entries
                    .iter()
                    .map(|(e, verdict)| {
                        let (exponent, monomial) = exponent_cell(mains, e);
                        VerdictEntry {
                            exponent,
                            monomial,
                            verdict: *verdict,
                        }
                    })
                    .collect(),
                good: v.good,
            })
        }
        Command::Specialize => {
            let point = resolve_point(session, fam, args)?;
            let r = specialization_check(ideal, &point)?;
            Ok(Report::Specialization {
                ideal: name.into(),
                point: point.describe(fam),
                predicted: monomials(mains, &r.predicted),
                actual: monomials(mains, &r.actual),
                equal: r.equal,
                contained: r.contained,
            })
        }
        Command::Saturate => {
            let by = args
                .by
                .as_deref()
                .ok_or_else(|| Error::usage("saturate needs --by"))?;
            let s = parse_param_poly(fam, by)?;
            let sat = localize_contract(ideal, &s)?;
            Ok(Report::Saturation {
                ideal: name.into(),
                by: s.to_string(),
                generators: ideal_strings(sat.ideal())?,
                mod_base: fam.has_base(),
            })
        }
        Command::QuolemCheck => {
            let q = quotient_extension_check(ideal)?;
            let mut entries = Vec::new();
            for e in &q.entries {
                let (exponent, monomial) = exponent_cell(mains, &e.exponent);
                entries.push(QuotientEntry {
                    exponent,
                    monomial,
                    extended: ideal_strings(&e.extended)?,
                    recomputed: ideal_strings(&e.recomputed)?,
                    equal: e.equal,
                });
            }
            Ok(Report::QuotientCheck {
                ideal: name.into(),
                contraction: ideal_strings(&q.contraction)?,
                entries,
                equal: q.equal,
            })
        }
        Command::MonoCoeffs | Command::MonoFiber | Command::MonoDiagram => {
            unreachable!("dispatched above")
        }
    }
}

fn execute_mono(session: &Session, cmd: Command, args: &CommandArgs) -> Result<Report> {
    let (name, j) = mono_ideal(session, args, cmd)?;
    let vars = j.vars().to_vec();
    let mono_cell = |e: &Exponent, g: &BigInt| {
        let (exponent, monomial) = exponent_cell(&vars, e);
        MonoCell {
            exponent,
            monomial,
            generator: g.to_string(),
        }
    };
    match cmd {
        Command::MonoCoeffs => {
            let window = args.window.unwrap_or_default();
            let mut cells = Vec::new();
            for e in window.exponents(vars.len()) {
                cells.push(mono_cell(&e, &mono_coeff_ideal(&j, &e)?));
            }
            Ok(Report::MonoCoefficients {
                ideal: name,
                base: j.base().to_string(),
                generators: j.to_string(),
                cells,
            })
        }
        Command::MonoFiber => {
            let text = args
                .prime
                .as_deref()
                .ok_or_else(|| Error::usage("mono-fiber needs --prime q"))?;
            let q: u64 = text
                .trim()
                .parse()
                .map_err(|_| Error::usage(format!("prime `{text}` is not an integer")))?;
            let fiber = mono_fiber(&j, q)?;
            Ok(Report::MonoFiber {
                ideal: name,
                base: j.base().to_string(),
                prime: q,
                generators: monomials(&vars, &fiber),
            })
        }
        Command::MonoDiagram => {
            let d = mono_diagram(&j, args.window.unwrap_or_default())?;
            Ok(Report::MonoDiagram {
                ideal: name,
                base: j.base().to_string(),
                vars: d.vars.clone(),
                window: d.window,
                cells: d.cells.iter().map(|(e, g)| mono_cell(e, g)).collect(),
            })
        }
        _ => unreachable!("dispatched above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_session;
    use crate::frontend::Format;

    fn run(src: &str, cmd: &str, args: CommandArgs) -> Result<String> {
        let s = parse_session(src)?;
        Ok(execute_command(&s, cmd.parse()?, &args)?.render(Format::Text))
    }

    const EX1: &str = "ring Q[a][x,y]; order lex(x,y), lex(a); ideal I = (a*x - y);";
    const REDEX: &str =
        "ring Q[a,b,c,d][x,y]; base (a*c, a*d, b*c, b*d); ideal I = (a*x + b, c*y + d);";

    #[test]
    fn specialize_text() {
        let args = CommandArgs {
            point: Some("a=0".into()),
            ..Default::default()
        };
        assert_eq!(
            run(EX1, "specialize", args).unwrap(),
            "at a=0: predicted (0), actual (y), NOT EQUAL\n"
        );
    }

    #[test]
    fn flat_locus_text() {
        let out = run(REDEX, "flat-locus", CommandArgs::default()).unwrap();
        assert!(out.contains("S = (a, c) mod base; witness: a"), "{out}");
    }

    #[test]
    fn usage_errors() {
        assert!(matches!(
            run(EX1, "specialize", CommandArgs::default()),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            run(EX1, "frobnicate", CommandArgs::default()),
            Err(Error::Usage(_))
        ));
        let args = CommandArgs {
            ideal: Some("J".into()),
            ..Default::default()
        };
        assert!(matches!(run(EX1, "gb", args), Err(Error::Usage(_))));
        assert!(matches!(
            run(EX1, "mono-fiber", CommandArgs::default()),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn precondition_errors() {
        let args = CommandArgs {
            prime: Some("(a)".into()),
            ..Default::default()
        };
        assert!(matches!(
            run(REDEX, "good-point", args),
            Err(Error::Precondition(_))
        ));
        let args = CommandArgs {
            by: Some("0".into()),
            ..Default::default()
        };
        assert!(matches!(
            run(EX1, "saturate", args),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn mono_commands() {
        let src = "ring Z[][x,y]; ideal J = (9*x, 2*y, x^2, y^2);";
        let args = CommandArgs {
            prime: Some("2".into()),
            ..Default::default()
        };
        assert_eq!(
            run(src, "mono-fiber", args).unwrap(),
            "fiber at q=2: (x, y^2)\n"
        );
        let args = CommandArgs {
            window: Some(Window::new(3, 3).unwrap()),
            ..Default::default()
        };
        let out = run(src, "mono-diagram", args).unwrap();
        assert!(
            out.starts_with("y^2 | (1)\n  y | (2) (1)\n  1 | (0) (9) (1)\n"),
            "{out}"
        );
        let args = CommandArgs {
            modulus: Some("18".into()),
            window: Some(Window::new(1, 2).unwrap()),
            ..Default::default()
        };
        let out = run(src, "mono-coeffs", args).unwrap();
        assert!(out.contains("x: (9)"), "{out}");
    }
}
