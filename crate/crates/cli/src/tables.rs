//! Reproduction of the two summary tables.

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use setoperads::presentations::{find_entry, standard_catalog};
use setoperads::series::{
    elementary, gk_first_negative, verify_ode, OdeExpression, RationalSeries,
};

use crate::classify::gk_term;
use crate::context::Settings;
use crate::reference::{Table1Row, Table2Row, TABLE1, TABLE2};

#[derive(Clone, Debug, Serialize)]
pub struct ComputedPrefix {
    pub operad: String,
    pub dims: Vec<u64>,
    /// First arity where the computed value differs from the printed one.
    pub first_mismatch: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Result {
    pub operads: Vec<String>,
    pub printed_dims: Vec<u64>,
    pub printed_term: String,
    pub computed: Vec<ComputedPrefix>,
    pub prefix_matches: bool,
    /// Arity from which printed coefficients were appended, if any.
    pub paper_tail_from: Option<usize>,
    /// First negative term of the printed series.
    pub printed_series_term: Option<String>,
    pub printed_series_matches: bool,
    /// First negative term of the computed prefix (plus the printed tail when
    /// the prefix agrees).
    pub computed_term: Option<String>,
    pub computed_matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Report {
    pub max_arity: usize,
    pub paper_tail: bool,
    pub rows: Vec<Table1Result>,
    pub failures: Vec<String>,
}

fn printed_term(row: &Table1Row) -> String {
    format!("{}/{}!*t^{}", row.numerator, row.degree, row.degree)
}

fn first_negative_term(dims: &[u64]) -> setoperads::Result<Option<(usize, BigRational, String)>> {
    let f = RationalSeries::from_dimension_list(dims);
    Ok(gk_first_negative(&f, dims.len())?.map(|o| {
        let (_, _, term) = gk_term(&o);
        (o.degree, o.negative_term.clone(), term)
    }))
}

fn matches_row(found: &Option<(usize, BigRational, String)>, row: &Table1Row) -> bool {
    let want = BigRational::new(
        row.numerator.into(),
        setoperads::series::factorial_big(row.degree),
    );
    matches!(found, Some((d, c, _)) if *d == row.degree && *c == want)
}

pub fn table1_row(row: &Table1Row, settings: &Settings) -> setoperads::Result<Table1Result> {
    let catalog = standard_catalog();
    let n = settings.max_arity.min(row.dims.len());
    let mut computed = Vec::new();
    for name in row.operads {
        let e = find_entry(&catalog, name)
            .ok_or_else(|| setoperads::Error::Argument(format!("unknown operad {name}")))?;
        let dims = settings.dims_to(e, n)?;
        let first_mismatch = dims
            .iter()
            .zip(row.dims)
            .position(|(a, b)| a != b)
            .map(|i| i + 1);
        computed.push(ComputedPrefix {
            operad: name.to_string(),
            dims,
            first_mismatch,
        });
    }
    let prefix_matches = computed.iter().all(|c| c.first_mismatch.is_none());
    let printed = first_negative_term(row.dims)?;
    let printed_series_matches = matches_row(&printed, row);

    let mut series = computed[0].dims.clone();
    let mut paper_tail_from = None;
    if prefix_matches && settings.paper_tail && row.dims.len() > n {
        series.extend_from_slice(&row.dims[n..]);
        paper_tail_from = Some(n + 1);
    }
    let from_computed = first_negative_term(&series)?;
    let computed_matches = prefix_matches && matches_row(&from_computed, row);
    Ok(Table1Result {
        operads: row.operads.iter().map(|s| s.to_string()).collect(),
        printed_dims: row.dims.to_vec(),
        printed_term: printed_term(row),
        computed,
        prefix_matches,
        paper_tail_from,
        printed_series_term: printed.map(|p| p.2),
        printed_series_matches,
        computed_term: from_computed.map(|p| p.2),
        computed_matches,
    })
}

pub fn table1(settings: &Settings) -> setoperads::Result<Table1Report> {
    let rows: Vec<Table1Result> = TABLE1
        .par_iter()
        .map(|r| table1_row(r, settings))
        .collect::<setoperads::Result<_>>()?;
    let mut failures = Vec::new();
    for r in &rows {
        let label = r.operads.join(", ");
        for c in &r.computed {
            if let Some(k) = c.first_mismatch {
                failures.push(format!(
                    "row {label}: {} has dimension {} in arity {k}, printed {}",
                    c.operad,
                    c.dims[k - 1],
                    r.printed_dims[k - 1]
                ));
            }
        }
        if !r.printed_series_matches {
            failures.push(format!(
                "row {label}: printed series does not give {}",
                r.printed_term
            ));
        }
        if r.prefix_matches && !r.computed_matches {
            failures.push(format!(
                "row {label}: computed series does not give {}",
                r.printed_term
            ));
        }
    }
    Ok(Table1Report {
        max_arity: settings.max_arity,
        paper_tail: settings.paper_tail,
        rows,
        failures,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct OdeResult {
    pub equation: String,
    pub passed: bool,
    pub checked_to: usize,
    /// Lowest nonzero coefficient of the defect, as `(degree, num/den)`.
    pub first_defect: Option<(usize, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table2Result {
    pub operad: String,
    pub oeis: Option<String>,
    pub series: String,
    pub printed: OdeResult,
    pub corrected: Option<OdeResult>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table2Report {
    pub order: usize,
    pub rows: Vec<Table2Result>,
    pub failures: Vec<String>,
}

pub fn check_ode(
    f: &RationalSeries,
    equation: &str,
    order: usize,
) -> setoperads::Result<OdeResult> {
    let e: OdeExpression = equation.parse()?;
    let check = verify_ode(f, &e, order)?;
    Ok(OdeResult {
        equation: equation.to_string(),
        passed: check.passed(),
        checked_to: check.checked_to,
        first_defect: check
            .first_nonzero
            .map(|(k, c)| (k, format!("{}/{}", c.numer(), c.denom()))),
    })
}

pub fn table2_row(row: &Table2Row, order: usize) -> setoperads::Result<Table2Result> {
    // one spare order: f' loses one
    let f: RationalSeries = elementary(row.series, order + 1)?;
    Ok(Table2Result {
        operad: row.operad.to_string(),
        oeis: row.oeis.map(str::to_string),
        series: row.series.to_string(),
        printed: check_ode(&f, row.equation, order)?,
        corrected: row.corrected.map(|c| check_ode(&f, c, order)).transpose()?,
    })
}

pub fn table2(settings: &Settings) -> setoperads::Result<Table2Report> {
    let rows: Vec<Table2Result> = TABLE2
        .par_iter()
        .map(|r| table2_row(r, settings.order))
        .collect::<setoperads::Result<_>>()?;
    let mut failures = Vec::new();
    for r in &rows {
        if !r.printed.passed {
            let (k, c) = r.printed.first_defect.clone().unwrap_or_default();
            failures.push(format!(
                "row {}: {} leaves {c}*t^{k} for {}",
                r.operad, r.printed.equation, r.series
            ));
        }
        if let Some(c) = &r.corrected {
            if !c.passed {
                failures.push(format!(
                    "row {}: corrected equation {} fails too",
                    r.operad, c.equation
                ));
            }
        }
    }
    Ok(Table2Report {
        order: settings.order,
        rows,
        failures,
    })
}
