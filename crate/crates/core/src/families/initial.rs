use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{FamilyIdeal, FamilyRing};
use crate::error::{Error, Result};
use crate::groebner;
use crate::idealops::{format_generators, IdealHandle};
use crate::polycore::{Exponent, Polynomial, Term};

/// One basis element seen over `A`: its leading `x`-exponent and the full
/// coefficient of that monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialEntry {
    pub exponent: Exponent,
    pub coefficient: Polynomial,
}

/// `in(I)` as the list of `(E_g, c_g)` over the reduced basis, in basis order.
#[derive(Clone, Debug)]
pub struct RelativeInitial {
    family: Arc<FamilyRing>,
    entries: Vec<InitialEntry>,
}

/// Splits each basis element into its leading `x`-exponent and coefficient.
pub fn relative_initial(ideal: &FamilyIdeal) -> Result<RelativeInitial> {
    let family = ideal.family();
    let mut entries = Vec::new();
    for g in ideal.basis()?.polys() {
        let lead = family.main_part(&g.leading_term()?.exp);
        // terms sharing the leading x-part form a prefix since the x block dominates
        let prefix: Vec<Term> = g
            .terms()
            .iter()
            .take_while(|t| family.main_part(&t.exp) == lead)
            .map(|t| Term {
                coeff: t.coeff.clone(),
                exp: family.param_part(&t.exp),
            })
            .collect();
        entries.push(InitialEntry {
            exponent: lead,
            coefficient: Polynomial::from_sorted_terms(family.param_ring(), prefix),
        });
    }
    Ok(RelativeInitial {
        family: family.clone(),
        entries,
    })
}

impl RelativeInitial {
    pub fn family(&self) -> &Arc<FamilyRing> {
        &self.family
    }

    pub fn entries(&self) -> &[InitialEntry] {
        &self.entries
    }

    /// Distinct leading `x`-exponents, decreasing in the main order.
    pub fn leading_exponents(&self) -> Vec<Exponent> {
        let mut out: Vec<Exponent> = Vec::new();
        for e in &self.entries {
            if !out.contains(&e.exponent) {
                out.push(e.exponent.clone());
            }
        }
        let order = self.family.main_ring().order().clone();
        out.sort_by(|a, b| order.cmp(b, a));
        out
    }

    fn check_exponent(&self, e: &Exponent) -> Result<()> {
        if e.len() != self.family.mains().len() {
            return Err(Error::DimensionMismatch {
                expected: self.family.mains().len(),
                found: e.len(),
            });
        }
        Ok(())
    }

    /// `in(I)_E = (c_g : E_g <= E) + J0`.
    pub fn coefficient_ideal(&self, e: &Exponent) -> Result<IdealHandle> {
        self.check_exponent(e)?;
        let gens = self
            .entries
            .iter()
            .filter(|en| en.exponent.divides(e))
            .map(|en| en.coefficient.clone())
            .collect();
        self.family.param_ideal(gens)
    }

    /// `in(I)_E` with `s` inverted, contracted back to `k[a]/J0`.
    pub fn localized_coefficient_ideal(&self, e: &Exponent, s: &Polynomial) -> Result<IdealHandle> {
        self.coefficient_ideal(e)?.saturate(s)
    }

    /// `in(I)_{x_i^∞}`: coefficients of entries that are pure powers of `x_i`
    /// or constant.
    pub fn pure_power_ideal(&self, var: usize) -> Result<IdealHandle> {
        let n = self.family.mains().len();
        if var >= n {
            return Err(Error::UnknownVariable(format!("main variable #{var}")));
        }
        let gens = self
            .entries
            .iter()
            .filter(|en| (0..n).all(|j| j == var || en.exponent.get(j) == 0))
            .map(|en| en.coefficient.clone())
            .collect();
        self.family.param_ideal(gens)
    }

    /// The generators `c_g x^{E_g}` in `k[a, x]`.
    pub fn terms_in_total(&self) -> Result<Vec<Polynomial>> {
        self.entries
            .iter()
            .map(|en| self.family.term_in_total(&en.coefficient, &en.exponent))
            .collect()
    }
}

impl fmt::Display for RelativeInitial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.terms_in_total() {
            Ok(terms) => write!(f, "{}", format_generators(&terms)),
            Err(_) => write!(f, "<initial ideal>"),
        }
    }
}

/// `I ∩ A`, computed by eliminating the main variables.
pub fn base_contraction(ideal: &FamilyIdeal) -> Result<IdealHandle> {
    let family = ideal.family();
    let drop: Vec<usize> = family.main_indices().collect();
    let gb = ideal.basis()?;
    let kept = groebner::eliminate(family.total_ring(), gb.polys(), &drop)?;
    let gens = kept
        .iter()
        .map(|g| family.to_param(g))
        .collect::<Result<Vec<_>>>()?;
    family.param_ideal(gens)
}

/// The exponents `T`: nonzero leading `x`-exponents whose coefficient ideal
/// differs from `I ∩ A`.
pub fn minimal_exponents(ideal: &FamilyIdeal) -> Result<Vec<Exponent>> {
    super::criteria::minimal_exponents_of(&relative_initial(ideal)?, &base_contraction(ideal)?)
}

/// `rows` exponents of the second main variable by `cols` of the first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub rows: u32,
    pub cols: u32,
}

impl Window {
    pub fn new(rows: u32, cols: u32) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::precondition("window must be at least 1x1"));
        }
        Ok(Window { rows, cols })
    }

    /// Exponents covered by the window, row by row from `y^0` upward.
    pub fn exponents(&self, nvars: usize) -> Vec<Exponent> {
        match nvars {
            0 => vec![Exponent::zero(0)],
            1 => (0..self.cols).map(|i| Exponent::new(vec![i])).collect(),
            n => {
                let mut out = Vec::new();
                for j in 0..self.rows {
                    for i in 0..self.cols {
                        let mut e = vec![0; n];
                        e[0] = i;
                        e[1] = j;
                        out.push(Exponent::new(e));
                    }
                }
                out
            }
        }
    }
}

impl Default for Window {
    fn default() -> Self {
        Window { rows: 4, cols: 4 }
    }
}

impl FromStr for Window {
    type Err = Error;

    /// `RxC`, for example `4x4`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::precondition(format!("window `{s}` is not of the form RxC"));
        let (r, c) = s.trim().split_once(['x', 'X']).ok_or_else(bad)?;
        let rows = r.trim().parse().map_err(|_| bad())?;
        let cols = c.trim().parse().map_err(|_| bad())?;
        Window::new(rows, cols)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// A coefficient ideal at one exponent, by its reduced generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientEntry {
    pub exponent: Exponent,
    pub generators: Vec<Polynomial>,
}

impl CoefficientEntry {
    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn ideal_text(&self) -> String {
        format_generators(&self.generators)
    }
}

/// Coefficient ideals at the leading exponents and over a window.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    pub mains: Vec<String>,
    pub window: Window,
    pub leading: Vec<CoefficientEntry>,
    pub cells: Vec<CoefficientEntry>,
}

pub fn coefficient_table(ideal: &FamilyIdeal, window: Window) -> Result<CoefficientTable> {
    let rel = relative_initial(ideal)?;
    let family = ideal.family();
    let entry = |e: Exponent| -> Result<CoefficientEntry> {
        Ok(CoefficientEntry {
            generators: rel.coefficient_ideal(&e)?.reduced_generators()?,
            exponent: e,
        })
    };
    let leading = rel
        .leading_exponents()
        .into_iter()
        .map(entry)
        .collect::<Result<Vec<_>>>()?;
    let cells = window
        .exponents(family.mains().len())
        .into_iter()
        .map(entry)
        .collect::<Result<Vec<_>>>()?;
    Ok(CoefficientTable {
        mains: family.mains().to_vec(),
        window,
        leading,
        cells,
    })
}

impl CoefficientTable {
    /// Window rows from `y^0` upward, each cut after its first `(1)`.
    pub fn staircase_rows(&self) -> Vec<Vec<&CoefficientEntry>> {
        let width = if self.mains.is_empty() {
            1
        } else {
            self.window.cols as usize
        };
        self.cells
            .chunks(width)
            .map(|row| {
                let mut out = Vec::new();
                for c in row {
                    out.push(c);
                    if c.is_unit() {
                        break;
                    }
                }
                out
            })
            .collect()
    }

    pub fn get(&self, e: &Exponent) -> Option<&CoefficientEntry> {
        self.cells
            .iter()
            .chain(&self.leading)
            .find(|c| &c.exponent == e)
    }

    /// Staircase diagram with the second variable running upward.
    pub fn render(&self) -> String {
        let cells: Vec<(Exponent, String)> = self
            .cells
            .iter()
            .map(|c| (c.exponent.clone(), c.ideal_text()))
            .collect();
        render_staircase(&self.mains, self.window, &cells)
    }
}

fn monomial_label(vars: &[String], e: &Exponent) -> String {
    let s = crate::polycore::format_monomial(vars, e);
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// Lays out window cells as a grid, `y` upward and `x` rightward, each row
/// cut after its first `(1)`.
pub fn render_staircase(vars: &[String], window: Window, cells: &[(Exponent, String)]) -> String {
    let width = if vars.is_empty() {
        1
    } else {
        window.cols as usize
    };
    let rows: Vec<&[(Exponent, String)]> = cells
        .chunks(width.max(1))
        .map(|row| {
            let cut = row
                .iter()
                .position(|(_, t)| t == "(1)")
                .map_or(row.len(), |i| i + 1);
            &row[..cut]
        })
        .collect();
    let cw = rows
        .iter()
        .flat_map(|r| r.iter())
        .map(|(_, t)| t.chars().count())
        .max()
        .unwrap_or(3);
    let labels: Vec<String> = rows
        .iter()
        .map(|r| match r.first() {
            Some((e, _)) if vars.len() >= 2 => {
                let mut y = vec![0; vars.len()];
                y[1] = e.get(1);
                monomial_label(vars, &Exponent::new(y))
            }
            _ => String::new(),
        })
        .collect();
    let lw = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (row, label) in rows.iter().zip(&labels).rev() {
        let texts: Vec<String> = row.iter().map(|(_, t)| format!("{t:<cw$}")).collect();
        out.push_str(format!("{label:>lw$} | {}", texts.join(" ")).trim_end());
        out.push('\n');
    }
    let ncols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    out.push_str(&format!("{:>lw$} +{}\n", "", "-".repeat(ncols * (cw + 1))));
    let heads: Vec<String> = (0..ncols)
        .map(|i| {
            let mut e = vec![0; vars.len()];
            if let Some(first) = e.first_mut() {
                *first = i as u32;
            }
            format!("{:<cw$}", monomial_label(vars, &Exponent::new(e)))
        })
        .collect();
    out.push_str(format!("{:>lw$}   {}", "", heads.join(" ")).trim_end());
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::Field;

    fn fitex() -> FamilyIdeal {
        let fam = FamilyRing::lex(Field::Rationals, &["a"], &["x", "y"], &[]).unwrap();
        FamilyIdeal::parse(&fam, &["a*x + y", "x^3", "x^2*y", "x*y^2", "y^3"]).unwrap()
    }

    fn texts(row: &[&CoefficientEntry]) -> Vec<String> {
        row.iter().map(|c| c.ideal_text()).collect()
    }

    #[test]
    fn fitex_staircase() {
        let t = coefficient_table(&fitex(), Window::new(4, 4).unwrap()).unwrap();
        let rows: Vec<Vec<String>> = t.staircase_rows().iter().map(|r| texts(r)).collect();
        assert_eq!(
            rows,
            vec![
                vec!["(0)", "(a)", "(a)", "(1)"],
                vec!["(0)", "(a)", "(1)"],
                vec!["(0)", "(1)"],
                vec!["(1)"],
            ]
        );
        let text = t.render();
        assert!(text.starts_with("y^3 | (1)"), "{text}");
    }

    #[test]
    fn ex1_window() {
        let fam = FamilyRing::lex(Field::Rationals, &["a"], &["x", "y"], &[]).unwrap();
        let i = FamilyIdeal::parse(&fam, &["a*x - y"]).unwrap();
        let t = coefficient_table(&i, Window::new(2, 2).unwrap()).unwrap();
        let cells: Vec<String> = t.cells.iter().map(|c| c.ideal_text()).collect();
        assert_eq!(cells, vec!["(0)", "(a)", "(0)", "(a)"]);
        assert_eq!(relative_initial(&i).unwrap().to_string(), "(a*x)");
    }

    #[test]
    fn contraction_and_minimal() {
        let fam = FamilyRing::lex(Field::Rationals, &["a"], &["x"], &[]).unwrap();
        let i = FamilyIdeal::parse(&fam, &["a*x - 1"]).unwrap();
        assert!(base_contraction(&i).unwrap().is_zero().unwrap());
        assert_eq!(minimal_exponents(&i).unwrap(), vec![Exponent::new(vec![1])]);

        let fam = FamilyRing::lex(Field::Rationals, &["a", "b"], &["x"], &["a*b"]).unwrap();
        let i = FamilyIdeal::parse(&fam, &["a*x + 1"]).unwrap();
        assert_eq!(base_contraction(&i).unwrap().display().unwrap(), "(b)");
    }

    #[test]
    fn window_parse() {
        assert_eq!(
            "3x5".parse::<Window>().unwrap(),
            Window { rows: 3, cols: 5 }
        );
        assert!("3by5".parse::<Window>().is_err());
        assert!("0x2".parse::<Window>().is_err());
    }
}
