//! A curated catalog of small groups and tower surveys over it.
//!
//! Orders 1 to 15 are covered completely; larger orders carry a selection.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automorphism::automorphism_group_with_cap;
use crate::error::{Error, Result};
use crate::group::{Fingerprint, FiniteGroup};
use crate::limits;
use crate::named::construct_named;
use crate::ordinal::Ordinal;
use crate::tower::{run_tower, Budget, TowerRun, TowerStatus};

/// Specs in catalog order: by group order, then as listed.
const SPECS: &[&str] = &[
    "T",
    "C2",
    "C3",
    "C4", "C2xC2",
    "C5",
    "C6", "S3",
    "C7",
    "C8", "C4xC2", "C2xC2xC2", "D8", "Q8",
    "C9", "C3xC3",
    "C10", "D10",
    "C11",
    "C12", "C6xC2", "D12", "A4", "Dic12",
    "C13",
    "C14", "D14",
    "C15",
    "C16", "C8xC2", "C4xC4", "C4:C4", "D16", "D8xC2", "Q8xC2", "Dic16",
    "D18", "S3xC3",
    "C5:C4", "D20", "Dic20",
    "C7:C3",
    "D22",
    "S4", "A4xC2", "D24", "Dic24", "S3xC4", "Q8xC3", "D12xC2",
    "D26",
    "D30",
    "S3xS3", "D36",
    "C13:C3",
    "C7:C6", "D42",
    "S4xC2",
];

/// Groups too large for [`catalog_list`] that the tower code still handles.
const EXTENDED: &[&str] = &["A5", "S5"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tags {
    pub abelian: bool,
    pub centerless: bool,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub spec: String,
    pub group: FiniteGroup,
    pub fingerprint: Fingerprint,
    pub tags: Tags,
}

impl CatalogEntry {
    pub fn new(spec: &str) -> Result<Self> {
        let group = construct_named(spec)?;
        let fingerprint = group.fingerprint();
        let centerless = fingerprint.center_order == 1;
        let complete = centerless
            && automorphism_group_with_cap(&group, limits::MAX_AUT_BASE_ORDER)?.order() == group.order();
        Ok(CatalogEntry {
            spec: spec.to_string(),
            tags: Tags {
                abelian: fingerprint.abelian,
                centerless,
                complete,
            },
            group,
            fingerprint,
        })
    }
}

/// Catalog entries of order at most `max_order`, in catalog order.
pub fn catalog_list(max_order: usize) -> Result<Vec<CatalogEntry>> {
    if max_order > limits::MAX_CATALOG_ORDER {
        return Err(Error::OutOfRange {
            what: "catalog order",
            value: max_order,
            limit: limits::MAX_CATALOG_ORDER,
        });
    }
    SPECS
        .iter()
        .map(|s| construct_named(s).map(|g| (s, g.order())))
        .filter(|r| r.as_ref().map_or(true, |&(_, n)| n <= max_order))
        .map(|r| r.and_then(|(s, _)| CatalogEntry::new(s)))
        .collect()
}

/// Entries past the catalog's order limit.
pub fn catalog_extended() -> Vec<CatalogEntry> {
    EXTENDED
        .iter()
        .map(|s| CatalogEntry::new(s).expect("extended specs build"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub spec: String,
    pub order: usize,
    pub center_order: usize,
    pub termination: Option<Ordinal>,
    pub status: TowerStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Least computed ordinal whose stage is centerless.
    pub centerless_onset: Option<Ordinal>,
    /// First period `(n, m)` found in the first block.
    pub period: Option<(usize, usize)>,
    /// Stage orders, one list per block.
    pub stage_orders: Vec<Vec<usize>>,
}

impl SurveyRow {
    pub fn from_run(spec: &str, g: &FiniteGroup, run: &TowerRun) -> Self {
        SurveyRow {
            spec: spec.to_string(),
            order: g.order(),
            center_order: g.center().order(),
            termination: run.termination,
            status: run.status.clone(),
            error: run.error.clone(),
            centerless_onset: run.centerless_onset(),
            period: run.blocks[0].period.as_ref().map(|p| (p.start, p.end)),
            stage_orders: run
                .blocks
                .iter()
                .map(|b| b.stages.iter().map(FiniteGroup::order).collect())
                .collect(),
        }
    }

    /// Re-runs the tower for this row's spec.
    pub fn recompute(spec: &str, budget: Budget) -> Result<Self> {
        let g = construct_named(spec)?;
        Ok(Self::from_run(spec, &g, &run_tower(&g, budget)))
    }
}

/// One row per entry, in entry order. Entries run in parallel.
pub fn survey(entries: &[CatalogEntry], budget: Budget) -> Vec<SurveyRow> {
    entries
        .par_iter()
        .map(|e| SurveyRow::from_run(&e.spec, &e.group, &run_tower(&e.group, budget)))
        .collect()
}

/// Aligned plain-text table of survey rows.
pub fn survey_table(rows: &[SurveyRow]) -> String {
    let header = ["spec", "order", "center", "termination", "onset", "period", "stages"];
    let cells: Vec<[String; 7]> = rows
        .iter()
        .map(|r| {
            let term = match (&r.termination, &r.status) {
                (Some(t), _) => t.to_string(),
                (None, s) => serde_json::to_value(s)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default(),
            };
            let stages = r
                .stage_orders
                .iter()
                .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join(" | ");
            [
                r.spec.clone(),
                r.order.to_string(),
                r.center_order.to_string(),
                term,
                r.centerless_onset.map_or("-".into(), |o| o.to_string()),
                r.period.map_or("-".into(), |(n, m)| format!("({n},{m})")),
                stages,
            ]
        })
        .collect();
    let mut width = header.map(|h| h.chars().count());
    for row in &cells {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |row: &[String]| -> String {
        let padded: Vec<String> = row
            .iter()
            .zip(width)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = line(&header.map(String::from));
    out.push('\n');
    for row in &cells {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::find_isomorphism;

    #[test]
    fn small_orders() {
        let one = catalog_list(1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].spec, "T");
        let eight: Vec<_> = catalog_list(8).unwrap().into_iter().filter(|e| e.group.order() == 8).collect();
        assert_eq!(eight.len(), 5);
        assert!(eight.iter().any(|e| e.spec == "D8") && eight.iter().any(|e| e.spec == "Q8"));
        assert!(catalog_list(49).is_err());
    }

    #[test]
    fn counts_up_to_fifteen() {
        let all = catalog_list(15).unwrap();
        let counts: Vec<usize> = (1..=15).map(|n| all.iter().filter(|e| e.group.order() == n).count()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1]);
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert!(find_isomorphism(&a.group, &b.group).is_none(), "{} ~ {}", a.spec, b.spec);
            }
        }
    }

    #[test]
    fn whole_catalog_is_free_of_duplicates() {
        let all = catalog_list(48).unwrap();
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                if a.fingerprint == b.fingerprint {
                    assert!(find_isomorphism(&a.group, &b.group).is_none(), "{} ~ {}", a.spec, b.spec);
                }
            }
        }
    }

    #[test]
    fn tags() {
        let all = catalog_list(6).unwrap();
        let s3 = all.iter().find(|e| e.spec == "S3").unwrap();
        assert_eq!(
            s3.tags,
            Tags {
                abelian: false,
                centerless: true,
                complete: true
            }
        );
        assert!(all.iter().find(|e| e.spec == "C6").unwrap().tags.abelian);
    }

    #[test]
    fn survey_rows() {
        let entries: Vec<_> = catalog_list(8)
            .unwrap()
            .into_iter()
            .filter(|e| ["S3", "D8", "T"].contains(&e.spec.as_str()))
            .collect();
        let rows = survey(&entries, Budget::default());
        assert_eq!(rows.iter().map(|r| r.spec.as_str()).collect::<Vec<_>>(), ["T", "S3", "D8"]);
        let d8 = &rows[2];
        assert_eq!(d8.termination, Some(Ordinal::new(1, 1)));
        assert_eq!(d8.centerless_onset, Some(Ordinal::new(1, 1)));
        assert_eq!(rows[1].termination, Some(Ordinal::ZERO));
        assert_eq!(SurveyRow::recompute("D8", Budget::default()).unwrap(), *d8);
        let table = survey_table(&rows);
        assert!(table.lines().next().unwrap().starts_with("spec"));
        assert!(table.contains("ω+1"));
    }
}
