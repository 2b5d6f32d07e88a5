//! The two-bridge and Montesinos scans.

use std::collections::BTreeSet;

use definite_bounds::links::{
    cover_table, genus_obstruction_with, invariants, link_taylor_bracket, mod_inverse,
    LinkDescriptor, LinkInvariants,
};
use definite_bounds::obstruction::SearchOptions;
use definite_bounds::{Error, Result};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Taylor's invariant, exact or as a bracket `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Taylor {
    Exact(i64),
    Bracket([i64; 2]),
}

impl std::fmt::Display for Taylor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Taylor::Exact(m) => write!(f, "{m}"),
            Taylor::Bracket([lo, hi]) => write!(f, "[{lo},{hi}]"),
        }
    }
}

/// One line of a genus table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub link: String,
    pub mu: usize,
    pub sigma: i64,
    /// Invariant factors of `H_1` of the branched double cover.
    pub h1: Vec<u64>,
    pub m: Option<Taylor>,
    /// `k` in `g* > k`, or `None` when the obstruction is silent.
    pub genus_gt: Option<i64>,
}

/// Settings shared by every scan.
#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub search: SearchOptions,
    /// Coefficient bound for the Taylor search; `None` skips it.
    pub taylor_bound: Option<i64>,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            search: SearchOptions::default(),
            taylor_bound: Some(definite_bounds::links::DEFAULT_TAYLOR_BOUND),
            jobs: 0,
        }
    }
}

fn taylor_cell(d: &LinkDescriptor, bound: Option<i64>) -> Result<Option<Taylor>> {
    let Some(b) = bound else { return Ok(None) };
    let t = link_taylor_bracket(d, b)?;
    Ok(Some(match t.exact() {
        Some(m) => Taylor::Exact(m),
        None => Taylor::Bracket([t.lo, t.hi]),
    }))
}

/// The full row of a descriptor, with the genus verdict.
pub fn link_row(d: &LinkDescriptor, inv: &LinkInvariants, opts: &ScanOptions) -> Result<ScanRow> {
    let report = genus_obstruction_with(d, inv, opts.search)?;
    let genus_gt = if report.obstructed() {
        Some(
            report
                .murasugi_bound
                .to_integer()
                .to_i64()
                .expect("genus bound fits i64"),
        )
    } else {
        None
    };
    let m = if inv.mu == 1 {
        taylor_cell(d, opts.taylor_bound)?
    } else {
        None
    };
    let h1 = cover_table(d)?.group.factors().to_vec();
    Ok(ScanRow {
        link: d.to_string(),
        mu: inv.mu,
        sigma: inv.sigma,
        h1,
        m,
        genus_gt,
    })
}

/// Row of `d` if `1 <= |sigma| <= sigma_max` and the bound is strict.
fn obstructed_row(
    d: &LinkDescriptor,
    sigma_max: i64,
    opts: &ScanOptions,
) -> Result<Option<ScanRow>> {
    let inv = invariants(d, None)?;
    if inv.sigma == 0 || inv.sigma.abs() > sigma_max {
        return Ok(None);
    }
    if !genus_obstruction_with(d, &inv, opts.search)?.obstructed() {
        return Ok(None);
    }
    link_row(d, &inv, opts).map(Some)
}

fn run_parallel(
    descs: Vec<LinkDescriptor>,
    sigma_max: i64,
    opts: &ScanOptions,
) -> Result<Vec<ScanRow>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Diagram(format!("thread pool: {e}")))?;
    let rows: Vec<Option<ScanRow>> = pool.install(|| {
        descs
            .par_iter()
            .map(|d| obstructed_row(d, sigma_max, opts))
            .collect::<Result<_>>()
    })?;
    Ok(rows.into_iter().flatten().collect())
}

/// One `S(p,q)` per two-bridge class with `p <= pmax`, named by the smaller of `q` and `q^{-1} mod p`.
pub fn two_bridge_descriptors(pmax: i64) -> Vec<LinkDescriptor> {
    let mut out = Vec::new();
    for p in 2..=pmax {
        for q in 1..p {
            if q.gcd(&p) == 1 && q <= mod_inverse(q, p) {
                out.push(LinkDescriptor::TwoBridge { p, q });
            }
        }
    }
    out
}

/// Obstructed two-bridge links with `p <= pmax` and `1 <= |sigma| <= sigma_max`.
pub fn scan_twobridge(pmax: i64, sigma_max: i64, opts: &ScanOptions) -> Result<Vec<ScanRow>> {
    run_parallel(two_bridge_descriptors(pmax), sigma_max, opts)
}

/// Ranges of the Montesinos scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MontesinosRange {
    pub emin: i64,
    pub emax: i64,
    pub alpha_max: i64,
    /// Determinants must be below this.
    pub det_max: u64,
    pub sigma_max: i64,
}

impl Default for MontesinosRange {
    fn default() -> Self {
        MontesinosRange {
            emin: -2,
            emax: 1,
            alpha_max: 5,
            det_max: 150,
            sigma_max: 4,
        }
    }
}

/// Three-tangle descriptors in range with nonzero determinant below `det_max`, one per equivalence class.
pub fn montesinos_descriptors(r: &MontesinosRange) -> Vec<LinkDescriptor> {
    let mut tangles = Vec::new();
    for a in 2..=r.alpha_max {
        for b in 1..a {
            if a.gcd(&b) == 1 {
                tangles.push((a, b));
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for e in r.emin..=r.emax {
        for i in 0..tangles.len() {
            for j in i..tangles.len() {
                for k in j..tangles.len() {
                    let Ok(d) =
                        LinkDescriptor::montesinos(e, vec![tangles[i], tangles[j], tangles[k]])
                    else {
                        continue;
                    };
                    let det = d.determinant();
                    if det == 0 || det >= r.det_max || !seen.insert(d.canonical()) {
                        continue;
                    }
                    out.push(d);
                }
            }
        }
    }
    out
}

/// Obstructed Montesinos links in range.
pub fn scan_montesinos(r: &MontesinosRange, opts: &ScanOptions) -> Result<Vec<ScanRow>> {
    run_parallel(montesinos_descriptors(r), r.sigma_max, opts)
}
