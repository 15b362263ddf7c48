//! Node counts from Euler characteristic bookkeeping.

use std::fmt;

use serde::Serialize;

use crate::error::{inconsistent, invalid, Result};
use crate::threefold::{BaseKind, ThreefoldModel};

/// `h^{1,2}` of the smooth del Pezzo threefold of each degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HodgeTable;

impl HodgeTable {
    const VALUES: [i64; 8] = [21, 10, 5, 2, 0, 0, 0, 0];

    pub fn get(&self, d: u8) -> Result<i64> {
        match d {
            1..=8 => Ok(Self::VALUES[d as usize - 1]),
            _ => invalid(format!("degree must be in 1..=8, got {d}")),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (u8, i64)> {
        (1u8..=8).zip(Self::VALUES)
    }
}

pub fn h12_smooth(d: u8) -> Result<i64> {
    HodgeTable.get(d)
}

pub fn euler_smooth(rho: i64, h12: i64) -> i64 {
    2 + 2 * rho - 2 * h12
}

/// Each point blowup adds 4.
pub fn beta_update(beta: i64, blowups: i64) -> i64 {
    beta + 4 * blowups
}

/// `s = constant`, or `s = constant - h` with `h` the unknown `h^{1,2}` of
/// the factorialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NodeCountResult {
    pub constant: i64,
    pub depends_on_h: bool,
}

impl fmt::Display for NodeCountResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.depends_on_h {
            write!(f, "{}-h", self.constant)
        } else {
            write!(f, "{}", self.constant)
        }
    }
}

/// Whether a count is exact (all singular points are nodes) or an upper
/// bound (arbitrary nondegenerate singularities).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SRelation {
    #[serde(rename = "=")]
    Equal,
    #[serde(rename = "<=")]
    AtMost,
}

/// `h^{1,2}` of the factorialization, or `None` when it is not determined
/// by the lattice data.
pub fn factorialization_h12(base: BaseKind) -> Option<i64> {
    match base {
        BaseKind::FactorialRank1(1..=4) | BaseKind::QuadricBundleOverP1(_) => None,
        _ => Some(0),
    }
}

/// `s = r - rho + h12(d) - h12(factorialization)` for nodal models.
pub fn node_count(model: &ThreefoldModel, r: usize) -> Result<NodeCountResult> {
    let base_term = r as i64 - model.rho() as i64 + h12_smooth(model.degree())?;
    match factorialization_h12(model.base()) {
        None => Ok(NodeCountResult { constant: base_term, depends_on_h: true }),
        Some(h) => {
            let s = base_term - h;
            if s < 0 {
                return inconsistent(format!("{model}: negative node count {s}"));
            }
            Ok(NodeCountResult { constant: s, depends_on_h: false })
        }
    }
}

/// The same quantity read as a bound on the number of singular points when
/// they need not be nodes.
pub fn node_count_upper_bound(model: &ThreefoldModel, r: usize) -> Result<(NodeCountResult, SRelation)> {
    Ok((node_count(model, r)?, SRelation::AtMost))
}

/// Euler number bookkeeping: a variety of Picard rank `r + s` with
/// `h^{1,2}` equal to that of the factorialization, against the smooth
/// degeneration's Euler number updated by `s` point blowups. `h` stands in
/// for the factorialization's `h^{1,2}` when it is free.
pub fn euler_accounting_holds(model: &ThreefoldModel, r: usize, h: i64) -> Result<bool> {
    let count = node_count(model, r)?;
    let hhat = factorialization_h12(model.base()).unwrap_or(h);
    let s = if count.depends_on_h { count.constant - h } else { count.constant };
    let direct = euler_smooth(r as i64 + s, hhat);
    let updated = beta_update(euler_smooth(model.rho() as i64, h12_smooth(model.degree())?), s);
    Ok(direct == updated)
}
