//! Cross-checks of the final list of Koszul operads.

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use setoperads::koszul;
use setoperads::linear::{relation_space, ungraded_dims, GeneratorSpace, LinearRelationSpace};
use setoperads::presentations::{extended_catalog, find_entry, parse_presentation};
use setoperads::series::{elementary, factorial_big, gk_dual_candidate, RationalSeries};

use crate::context::Settings;
use crate::reference::{TheoremOperad, THEOREM};
use crate::tables::{check_ode, OdeResult};

#[derive(Clone, Debug, Serialize)]
pub struct FormCheck {
    pub form: String,
    /// Degrees `k <= max_arity` where the coefficient of `t^k` differs from
    /// `dim(k)/k!`.
    pub mismatched_degrees: Vec<usize>,
}

impl FormCheck {
    pub fn matches(&self) -> bool {
        self.mismatched_degrees.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremRow {
    pub name: String,
    pub entry: String,
    pub dims: Vec<u64>,
    pub printed: FormCheck,
    pub candidate: Option<FormCheck>,
    pub self_dual: bool,
    pub self_dual_expected: bool,
    pub mirror_invariant: bool,
    pub mirror_invariant_expected: bool,
    /// Order-1 equation derived for the agreeing closed form.
    pub equation: OdeResult,
    /// Dual dimensions in arities `1..`, and `n!` times the coefficients of
    /// `rev(-f(-t))`.
    pub dual_dims: Vec<u64>,
    pub gk_dual_dims: Vec<String>,
    pub series_consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub max_arity: usize,
    pub rows: Vec<TheoremRow>,
    /// Printed closed forms that disagree with the computed dimensions.
    pub discrepancies: Vec<String>,
    pub failures: Vec<String>,
}

fn form_check(form: &str, dims: &[u64]) -> setoperads::Result<FormCheck> {
    let n = dims.len();
    let f: RationalSeries = elementary(form, n)?;
    let d = RationalSeries::from_dimension_list(dims);
    Ok(FormCheck {
        form: form.to_string(),
        mismatched_degrees: (0..=n).filter(|&k| f.coeff(k) != d.coeff(k)).collect(),
    })
}

fn dual_space(
    t: &TheoremOperad,
    r: &LinearRelationSpace,
) -> setoperads::Result<LinearRelationSpace> {
    match t.dual_presentation {
        Some(text) => Ok(
            LinearRelationSpace::from_presentation(&parse_presentation(text)?)?
                .restrict_generators(GeneratorSpace::Antisymmetric),
        ),
        None => koszul::dual(r),
    }
}

pub fn theorem_row(t: &TheoremOperad, settings: &Settings) -> setoperads::Result<TheoremRow> {
    let catalog = extended_catalog();
    let e = find_entry(&catalog, t.entry)
        .ok_or_else(|| setoperads::Error::Argument(format!("unknown entry {}", t.entry)))?;
    let dims = settings.dims(e)?;
    let printed = form_check(t.printed, &dims)?;
    let candidate = t.candidate.map(|c| form_check(c, &dims)).transpose()?;

    let agreeing = t.candidate.unwrap_or(t.printed);
    let f: RationalSeries = elementary(agreeing, settings.order + 1)?;
    let equation = check_ode(&f, t.equation, settings.order)?;

    let r = relation_space(&e.congruence, e.symmetrize);
    let dual = dual_space(t, &r)?;
    let n = settings.linear_arity.min(5).min(dims.len());
    let dual_dims = ungraded_dims(&dual, n)?.entries;
    let g = gk_dual_candidate(&RationalSeries::from_dimension_list(&dims[..n]), n)?;
    let gk_dual: Vec<BigRational> = (1..=n)
        .map(|k| g.coeff(k) * BigRational::from_integer(factorial_big(k)))
        .collect();
    let series_consistent = gk_dual
        .iter()
        .zip(&dual_dims)
        .all(|(a, &b)| *a == BigRational::from_integer(b.into()));

    let self_dual = if e.symmetrize {
        dual_dims[..] == dims[..n]
    } else {
        koszul::self_dual(&r)?.is_self_dual()
    };
    let mirror_invariant = e.symmetrize || e.congruence.mirror() == e.congruence;
    Ok(TheoremRow {
        name: t.name.to_string(),
        entry: t.entry.to_string(),
        dims,
        printed,
        candidate,
        self_dual,
        self_dual_expected: t.self_dual,
        mirror_invariant,
        mirror_invariant_expected: t.mirror_invariant,
        equation,
        dual_dims,
        gk_dual_dims: gk_dual.iter().map(ToString::to_string).collect(),
        series_consistent,
    })
}

pub fn theorem(settings: &Settings) -> setoperads::Result<TheoremReport> {
    let rows: Vec<TheoremRow> = THEOREM
        .par_iter()
        .map(|t| theorem_row(t, settings))
        .collect::<setoperads::Result<_>>()?;
    let mut discrepancies = Vec::new();
    let mut failures = Vec::new();
    for r in &rows {
        match &r.candidate {
            None if !r.printed.matches() => failures.push(format!(
                "{}: {} disagrees with the dimensions at t^{:?}",
                r.name, r.printed.form, r.printed.mismatched_degrees
            )),
            None => {}
            Some(c) => {
                if r.printed.matches() {
                    failures.push(format!(
                        "{}: printed {} unexpectedly matches",
                        r.name, r.printed.form
                    ));
                } else {
                    discrepancies.push(format!(
                        "{}: printed {} disagrees with the dimensions at t^{:?}; {} {}",
                        r.name,
                        r.printed.form,
                        r.printed.mismatched_degrees,
                        c.form,
                        if c.matches() {
                            "agrees"
                        } else {
                            "disagrees too"
                        }
                    ));
                }
                if !c.matches() {
                    failures.push(format!(
                        "{}: candidate {} disagrees at t^{:?}",
                        r.name, c.form, c.mismatched_degrees
                    ));
                }
            }
        }
        if r.self_dual != r.self_dual_expected {
            failures.push(format!(
                "{}: self-dual is {}, expected {}",
                r.name, r.self_dual, r.self_dual_expected
            ));
        }
        if r.mirror_invariant != r.mirror_invariant_expected {
            failures.push(format!(
                "{}: mirror invariance is {}, expected {}",
                r.name, r.mirror_invariant, r.mirror_invariant_expected
            ));
        }
        if !r.equation.passed {
            failures.push(format!(
                "{}: equation {} fails",
                r.name, r.equation.equation
            ));
        }
        if !r.series_consistent {
            failures.push(format!(
                "{}: dual dimensions {:?} differ from rev(-f(-t)) {:?}",
                r.name, r.dual_dims, r.gk_dual_dims
            ));
        }
    }
    Ok(TheoremReport {
        max_arity: settings.max_arity,
        rows,
        discrepancies,
        failures,
    })
}
