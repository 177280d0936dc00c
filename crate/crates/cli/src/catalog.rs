//! The catalog of 57 presentations and its consistency checks.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use setoperads::presentations::{
    enumerate_all_equivariant, iso_collapse, standard_catalog, CongruenceKey, Family, Witness,
};

use crate::reference::{CATALOG_SIZE, ISO_COUPLES, ISO_TRIPLES};

#[derive(Clone, Debug, Serialize)]
pub struct CatalogRow {
    pub name: String,
    pub relations: Vec<String>,
    pub key: String,
    pub known: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoGroup {
    pub members: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub entries: Vec<CatalogRow>,
    /// Classes of coinciding or mirrored congruences.
    pub iso_classes: Vec<IsoGroup>,
    /// Groups of `RR;RL` entries with equal congruences, by size.
    pub equal_congruence_groups: Vec<Vec<String>>,
    pub equivariant_congruences: usize,
    /// Equivariant congruences that are neither a catalog entry nor a mirror
    /// of one.
    pub outside_catalog: Vec<String>,
    pub failures: Vec<String>,
}

pub fn enumerate() -> CatalogReport {
    let catalog = standard_catalog();
    let entries = catalog
        .iter()
        .map(|e| CatalogRow {
            name: e.name.clone(),
            relations: e.family.relations().iter().map(|s| s.to_string()).collect(),
            key: e.congruence.key().to_string(),
            known: e.known.map(|k| k.name().to_string()),
        })
        .collect::<Vec<_>>();
    let iso_classes = iso_collapse(&catalog)
        .into_iter()
        .map(|c| IsoGroup {
            members: c
                .members
                .iter()
                .map(|&(i, w)| {
                    let w = match w {
                        Witness::Representative => "representative",
                        Witness::EqualCongruence => "equal-congruence",
                        Witness::Mirror => "mirror",
                    };
                    (catalog[i].name.clone(), w.to_string())
                })
                .collect(),
        })
        .collect();

    let mut by_key: BTreeMap<CongruenceKey, Vec<String>> = BTreeMap::new();
    for e in &catalog {
        if matches!(e.family, Family::RrRl(i, _) if i < 5) {
            by_key
                .entry(e.congruence.key())
                .or_default()
                .push(e.name.clone());
        }
    }
    let equal_congruence_groups: Vec<Vec<String>> =
        by_key.into_values().filter(|g| g.len() > 1).collect();

    let mut known: BTreeSet<CongruenceKey> = BTreeSet::new();
    for e in &catalog {
        known.insert(e.congruence.key());
        known.insert(e.congruence.mirror().key());
    }
    let all = enumerate_all_equivariant();
    let found: BTreeSet<CongruenceKey> = all.iter().map(|c| c.key()).collect();
    let outside_catalog: Vec<String> = all
        .iter()
        .filter(|c| !known.contains(&c.key()))
        .map(|c| c.key().to_string())
        .collect();

    let mut failures = Vec::new();
    if entries.len() != CATALOG_SIZE {
        failures.push(format!(
            "catalog has {} entries, expected {CATALOG_SIZE}",
            entries.len()
        ));
    }
    if !outside_catalog.is_empty() {
        failures.push(format!(
            "congruences outside the catalog: {outside_catalog:?}"
        ));
    }
    for e in &catalog {
        if !found.contains(&e.congruence.key()) {
            failures.push(format!("{} is missing from the enumeration", e.name));
        }
    }
    let mut want: BTreeSet<Vec<String>> = BTreeSet::new();
    for g in ISO_COUPLES
        .iter()
        .map(|g| g.to_vec())
        .chain(ISO_TRIPLES.iter().map(|g| g.to_vec()))
    {
        let mut g: Vec<String> = g.iter().map(|s| s.to_string()).collect();
        g.sort();
        want.insert(g);
    }
    let got: BTreeSet<Vec<String>> = equal_congruence_groups
        .iter()
        .map(|g| {
            let mut g = g.clone();
            g.sort();
            g
        })
        .collect();
    if got != want {
        failures.push(format!(
            "equal-congruence groups {got:?} differ from {want:?}"
        ));
    }
    CatalogReport {
        entries,
        iso_classes,
        equal_congruence_groups,
        equivariant_congruences: all.len(),
        outside_catalog,
        failures,
    }
}
