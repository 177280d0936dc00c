//! The verdict pipeline over the extended catalog.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use setoperads::koszul::{self, SelfDuality};
use setoperads::linear::{
    graded_dims_with_cap, monomial_certificate, orbit_representatives, relation_space,
};
use setoperads::presentations::{extended_catalog, iso_collapse, CatalogEntry, Witness};
use setoperads::series::{
    elementary, gk_first_negative, gk_pair_check, Coeff, GkObstruction, GradedSeries,
    RationalSeries,
};

use crate::context::Settings;
use crate::reference::{self, GRADED, TABLE1};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    KoszulByMonomialCertificate,
    #[serde(rename = "not-koszul-by-GK")]
    NotKoszulByGk,
    #[serde(rename = "not-koszul-by-paired-GK")]
    NotKoszulByPairedGk,
    KnownKoszulByCitation,
    Undecided,
}

impl Verdict {
    pub fn is_koszul(self) -> bool {
        matches!(
            self,
            Verdict::KoszulByMonomialCertificate | Verdict::KnownKoszulByCitation
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::KoszulByMonomialCertificate => "koszul-by-monomial-certificate",
            Verdict::NotKoszulByGk => "not-koszul-by-GK",
            Verdict::NotKoszulByPairedGk => "not-koszul-by-paired-GK",
            Verdict::KnownKoszulByCitation => "known-koszul-by-citation",
            Verdict::Undecided => "undecided",
        }
    }
}

/// Where the series behind a criterion came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesSource {
    /// Coefficients up to this arity were computed.
    pub computed_to: usize,
    /// Reference row or closed form supplying the rest, if any.
    pub tail_from: Option<String>,
    /// The whole input, `dims[n - 1]` per arity (ungraded) or per weight.
    pub dims: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// Orbit representatives of the monomials spanning the relations; empty
    /// for a free operad.
    MonomialCertificate {
        monomials: Vec<String>,
    },
    GkObstruction {
        degree: usize,
        /// Exact coefficient as `num/den` strings, lowest power of `u` first.
        coefficient: Vec<String>,
        term: String,
        graded: bool,
        source: SeriesSource,
    },
    PairedGkDefect {
        degree: usize,
        coefficient: String,
        term: String,
        source: SeriesSource,
    },
    Citation {
        operad: String,
        via: Option<String>,
    },
    Nothing {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityInfo {
    pub dual_dim: usize,
    pub self_dual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRecord {
    pub name: String,
    pub key: String,
    pub symmetrize: bool,
    /// Representative of the isomorphism class and how this entry maps to it.
    pub iso_class: String,
    pub witness: String,
    pub dims: Vec<u64>,
    pub verdict: Verdict,
    pub evidence: Evidence,
    pub duality: Option<DualityInfo>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub max_arity: usize,
    pub paper_tail: bool,
    pub records: Vec<ClassificationRecord>,
    /// Representatives of the isomorphism classes found Koszul.
    pub koszul_classes: Vec<String>,
    pub verdict_counts: BTreeMap<String, usize>,
    pub failures: Vec<String>,
}

fn witness_str(w: Witness) -> &'static str {
    match w {
        Witness::Representative => "representative",
        Witness::EqualCongruence => "equal-congruence",
        Witness::Mirror => "mirror",
    }
}

pub(crate) fn gk_term<C: Coeff>(o: &GkObstruction<C>) -> (usize, Vec<String>, String) {
    (
        o.degree,
        o.negative_term.to_strings(),
        format!("{}*t^{}", o.factorial_form(), o.degree),
    )
}

/// The reference row whose printed prefix agrees with `dims` and runs longer.
pub(crate) fn tail_row(dims: &[u64]) -> Option<&'static reference::Table1Row> {
    TABLE1
        .iter()
        .find(|r| r.dims.len() > dims.len() && r.dims[..dims.len()] == *dims)
}

fn plain_gk(dims: &[u64], settings: &Settings) -> setoperads::Result<Option<Evidence>> {
    let f = RationalSeries::from_dimension_list(dims);
    if let Some(o) = gk_first_negative(&f, dims.len())? {
        let (degree, coefficient, term) = gk_term(&o);
        return Ok(Some(Evidence::GkObstruction {
            degree,
            coefficient,
            term,
            graded: false,
            source: SeriesSource {
                computed_to: dims.len(),
                tail_from: None,
                dims: dims.iter().map(|&d| vec![d]).collect(),
            },
        }));
    }
    if !settings.paper_tail {
        return Ok(None);
    }
    let Some(row) = tail_row(dims) else {
        return Ok(None);
    };
    let f = RationalSeries::from_dimension_list(row.dims);
    Ok(gk_first_negative(&f, row.dims.len())?.map(|o| {
        let (degree, coefficient, term) = gk_term(&o);
        Evidence::GkObstruction {
            degree,
            coefficient,
            term,
            graded: false,
            source: SeriesSource {
                computed_to: dims.len(),
                tail_from: Some(format!("table row {}", row.label())),
                dims: row.dims.iter().map(|&d| vec![d]).collect(),
            },
        }
    }))
}

fn graded_gk(e: &CatalogEntry, settings: &Settings) -> setoperads::Result<Option<Evidence>> {
    let r = relation_space(&e.congruence, e.symmetrize);
    if !r.weight_homogeneous() {
        return Ok(None);
    }
    let n = settings.linear_arity.min(settings.max_arity);
    let table = graded_dims_with_cap(&r, n, settings.linear_arity)?;
    let graded = table.graded.expect("graded table");
    let trimmed: Vec<Vec<u64>> = graded.iter().map(|row| trim(row)).collect();
    let computed = GradedSeries::from_graded_dims(&graded);
    if let Some(o) = gk_first_negative(&computed, n)? {
        let (degree, coefficient, term) = gk_term(&o);
        return Ok(Some(Evidence::GkObstruction {
            degree,
            coefficient,
            term,
            graded: true,
            source: SeriesSource {
                computed_to: n,
                tail_from: None,
                dims: trimmed,
            },
        }));
    }
    if !settings.paper_tail {
        return Ok(None);
    }
    for form in &GRADED {
        let f: GradedSeries = elementary(form.series, settings.order.max(form.degree))?;
        if f.truncate(n) != GradedSeries::from_graded_dims(&graded) {
            continue;
        }
        if let Some(o) = gk_first_negative(&f, f.order())? {
            let (degree, coefficient, term) = gk_term(&o);
            return Ok(Some(Evidence::GkObstruction {
                degree,
                coefficient,
                term,
                graded: true,
                source: SeriesSource {
                    computed_to: n,
                    tail_from: Some(format!("closed form {} of {}", form.series, form.operad)),
                    dims: trimmed,
                },
            }));
        }
    }
    Ok(None)
}

fn trim(row: &[u64]) -> Vec<u64> {
    let mut v = row.to_vec();
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn paired_gk(dims: &[u64], duality: &Option<DualityInfo>) -> setoperads::Result<Option<Evidence>> {
    if !duality.as_ref().is_some_and(|d| d.self_dual != "no") {
        return Ok(None);
    }
    let f = RationalSeries::from_dimension_list(dims);
    let defect = gk_pair_check(&f, &f, dims.len())?;
    Ok(defect
        .coeffs()
        .iter()
        .enumerate()
        .find(|(_, c)| !Coeff::is_zero(*c))
        .map(|(k, c)| Evidence::PairedGkDefect {
            degree: k,
            coefficient: format!("{}/{}", c.numer(), c.denom()),
            term: format!("{}*t^{k}", rational_text(c)),
            source: SeriesSource {
                computed_to: dims.len(),
                tail_from: None,
                dims: dims.iter().map(|&d| vec![d]).collect(),
            },
        }))
}

fn rational_text(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn duality(e: &CatalogEntry) -> setoperads::Result<Option<DualityInfo>> {
    if e.symmetrize {
        return Ok(None);
    }
    let r = relation_space(&e.congruence, false);
    let d = koszul::dual(&r)?;
    let self_dual = match koszul::self_dual(&r)? {
        SelfDuality::Identity => "identity",
        SelfDuality::Mirror => "mirror",
        SelfDuality::NotSelfDual => "no",
    };
    Ok(Some(DualityInfo {
        dual_dim: d.dim(),
        self_dual: self_dual.to_string(),
    }))
}

/// Runs the pipeline for one entry. `citation` is the known identification
/// of the entry or of its isomorphism class.
pub fn classify_entry(
    e: &CatalogEntry,
    citation: Option<(String, Option<String>)>,
    settings: &Settings,
) -> setoperads::Result<(Vec<u64>, Verdict, Evidence, Option<DualityInfo>)> {
    let dims = settings.dims(e)?;
    let duality = duality(e)?;
    if let Some(ev) = plain_gk(&dims, settings)? {
        return Ok((dims, Verdict::NotKoszulByGk, ev, duality));
    }
    let cert = monomial_certificate(&relation_space(&e.congruence, e.symmetrize));
    if cert.is_certified() {
        let monomials = orbit_representatives(cert.monomials())
            .iter()
            .map(ToString::to_string)
            .collect();
        return Ok((
            dims,
            Verdict::KoszulByMonomialCertificate,
            Evidence::MonomialCertificate { monomials },
            duality,
        ));
    }
    if let Some((operad, via)) = citation {
        return Ok((
            dims,
            Verdict::KnownKoszulByCitation,
            Evidence::Citation { operad, via },
            duality,
        ));
    }
    if let Some(ev) = graded_gk(e, settings)? {
        return Ok((dims, Verdict::NotKoszulByGk, ev, duality));
    }
    if let Some(ev) = paired_gk(&dims, &duality)? {
        return Ok((dims, Verdict::NotKoszulByPairedGk, ev, duality));
    }
    Ok((
        dims,
        Verdict::Undecided,
        Evidence::Nothing {
            reason: format!("no obstruction up to arity {}", settings.max_arity),
        },
        duality,
    ))
}

pub fn classify(settings: &Settings) -> setoperads::Result<ClassifyReport> {
    let catalog = extended_catalog();
    let classes = iso_collapse(&catalog);
    // (entry index) -> (representative index, witness)
    let mut rep_of = vec![(0, Witness::Representative); catalog.len()];
    for class in &classes {
        let rep = class.members[0].0;
        for &(i, w) in &class.members {
            rep_of[i] = (rep, w);
        }
    }
    let records: Vec<ClassificationRecord> = catalog
        .par_iter()
        .enumerate()
        .map(|(i, e)| {
            let (rep, witness) = rep_of[i];
            let citation = match (e.known, catalog[rep].known) {
                (Some(k), _) => Some((k.name().to_string(), None)),
                (None, Some(k)) => Some((
                    k.name().to_string(),
                    Some(format!("{} of {}", witness_str(witness), catalog[rep].name)),
                )),
                (None, None) => None,
            };
            let (dims, verdict, evidence, duality) = classify_entry(e, citation, settings)?;
            Ok(ClassificationRecord {
                name: e.name.clone(),
                key: e.congruence.key().to_string(),
                symmetrize: e.symmetrize,
                iso_class: catalog[rep].name.clone(),
                witness: witness_str(witness).to_string(),
                dims,
                verdict,
                evidence,
                duality,
            })
        })
        .collect::<setoperads::Result<_>>()?;

    let mut koszul_classes: Vec<String> = Vec::new();
    for class in &classes {
        let rep = class.members[0].0;
        if records[rep].verdict.is_koszul() {
            koszul_classes.push(records[rep].name.clone());
        }
    }
    let mut verdict_counts = BTreeMap::new();
    for r in &records {
        *verdict_counts
            .entry(r.verdict.as_str().to_string())
            .or_insert(0) += 1;
    }
    let failures = expected_failures(&records, &koszul_classes);
    Ok(ClassifyReport {
        max_arity: settings.max_arity,
        paper_tail: settings.paper_tail,
        records,
        koszul_classes,
        verdict_counts,
        failures,
    })
}

/// The final list of Koszul operads, by catalog entry.
pub fn expected_koszul_classes() -> Vec<&'static str> {
    reference::THEOREM.iter().map(|t| t.entry).collect()
}

fn expected_failures(records: &[ClassificationRecord], koszul_classes: &[String]) -> Vec<String> {
    let mut failures = Vec::new();
    let find = |name: &str| records.iter().find(|r| r.name == name);
    let mut want: Vec<&str> = expected_koszul_classes();
    want.sort_unstable();
    let mut got: Vec<&str> = koszul_classes.iter().map(String::as_str).collect();
    got.sort_unstable();
    if got != want {
        failures.push(format!("Koszul classes are {got:?}, expected {want:?}"));
    }
    for name in reference::table1_operads() {
        match find(name) {
            Some(r) if matches!(r.evidence, Evidence::GkObstruction { graded: false, .. }) => {}
            Some(r) => failures.push(format!(
                "{name}: expected plain GK obstruction, got {}",
                r.verdict.as_str()
            )),
            None => failures.push(format!("{name}: missing from catalog")),
        }
    }
    for name in reference::GRADED_OPERADS {
        match find(name) {
            Some(r) if matches!(r.evidence, Evidence::GkObstruction { graded: true, .. }) => {}
            Some(r) => failures.push(format!(
                "{name}: expected graded GK obstruction, got {}",
                r.verdict.as_str()
            )),
            None => failures.push(format!("{name}: missing from catalog")),
        }
    }
    match find(reference::PAIRED) {
        Some(r) if r.verdict == Verdict::NotKoszulByPairedGk => {}
        Some(r) => failures.push(format!(
            "{}: expected paired GK defect, got {}",
            reference::PAIRED,
            r.verdict.as_str()
        )),
        None => failures.push(format!("{}: missing from catalog", reference::PAIRED)),
    }
    for r in records.iter().filter(|r| r.verdict == Verdict::Undecided) {
        failures.push(format!("{}: undecided", r.name));
    }
    failures
}
