//! Per-instance and aggregate scoring.
//!
//! A solution without obtuse triangles scores `1/2 + k_B / (2 k_Y)` where
//! `k_Y` is its Steiner count and `k_B` the best known count, capped at 1.
//! A solution with `v` obtuse triangles scores `0.97^v / 2` regardless of
//! its Steiner points. Invalid solutions score nothing.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::verify::VerifyReport;

pub const INFEASIBLE_DECAY: f64 = 0.97;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScoreError {
    #[error("best-known table is inconsistent: k_Y = {k_y} is below k_B = {k_b}")]
    BelowBestKnown { k_b: usize, k_y: usize },
    #[error("a solution with no obtuse triangles is feasible; score it with score_feasible")]
    NotInfeasible,
    #[error("no best-known entry for instance {0:?}")]
    MissingBestKnown(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InstanceScore {
    pub value: f64,
    pub feasible: bool,
    pub obtuse_count: usize,
    pub steiner_count: usize,
}

impl InstanceScore {
    pub fn zero() -> Self {
        InstanceScore {
            value: 0.0,
            feasible: false,
            obtuse_count: 0,
            steiner_count: 0,
        }
    }
}

/// Fewest Steiner points among known feasible solutions, per instance uid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BestKnownTable(BTreeMap<String, usize>);

impl BestKnownTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, uid: &str) -> Option<usize> {
        self.0.get(uid).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self, serde_json::Error> {
        serde_json::from_slice(bytes)
    }

    pub fn to_json(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(self).expect("table serializes");
        out.push(b'\n');
        out
    }
}

pub fn score_feasible(k_b: usize, k_y: usize) -> Result<f64, ScoreError> {
    if k_y < k_b {
        return Err(ScoreError::BelowBestKnown { k_b, k_y });
    }
    if k_y == k_b {
        return Ok(1.0);
    }
    Ok((0.5 + k_b as f64 / (2.0 * k_y as f64)).min(1.0))
}

pub fn score_infeasible(v: usize) -> Result<f64, ScoreError> {
    if v == 0 {
        return Err(ScoreError::NotInfeasible);
    }
    let v = i32::try_from(v).unwrap_or(i32::MAX);
    Ok(0.5 * INFEASIBLE_DECAY.powi(v))
}

pub fn score_instance(report: &VerifyReport, uid: &str, table: &BestKnownTable) -> Result<InstanceScore, ScoreError> {
    if !report.valid {
        return Ok(InstanceScore::zero());
    }
    let (feasible, value) = if report.obtuse_count == 0 {
        let k_b = table
            .get(uid)
            .ok_or_else(|| ScoreError::MissingBestKnown(uid.to_string()))?;
        (true, score_feasible(k_b, report.steiner_count)?)
    } else {
        (false, score_infeasible(report.obtuse_count)?)
    };
    Ok(InstanceScore {
        value,
        feasible,
        obtuse_count: report.obtuse_count,
        steiner_count: report.steiner_count,
    })
}

pub fn score_team(scores: &[InstanceScore]) -> f64 {
    scores.iter().map(|s| s.value).sum()
}

/// Records `k` for `uid` if it beats (or creates) the current entry.
pub fn update_best_known(mut table: BestKnownTable, uid: &str, k: usize) -> BestKnownTable {
    table
        .0
        .entry(uid.to_string())
        .and_modify(|e| *e = (*e).min(k))
        .or_insert(k);
    table
}
