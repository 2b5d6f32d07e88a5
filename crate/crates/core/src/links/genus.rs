//! Link invariants and the four-ball genus driver.

use std::fmt;

use crate::algebra::{format_rational, rat, signature_i64, ExactRational};
use crate::dinv::{correction_table, lens_table, CorrectionTable};
use crate::error::{Error, Result};
use crate::obstruction::{check_bound_with, check_rational_ball, ObstructionReport, SearchOptions};

use super::construct::{surface_diagram, SurfaceDiagram};
use super::descriptor::LinkDescriptor;
use super::surface::{boundary_orientation, goeritz_signature, seifert_form};
use super::taylor::{taylor_bracket, TaylorBracket};

/// Sign of the two-bridge sum formula under the descriptor convention.
const TWO_BRIDGE_SIGN: i64 = 1;

/// Default coefficient bound of the null-sublattice search.
pub const DEFAULT_TAYLOR_BOUND: i64 = 2;

/// A Seifert matrix of the oriented spanning surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    pub m: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn size(&self) -> usize {
        self.m.len()
    }

    /// `M + M^T`.
    pub fn symmetrized(&self) -> Vec<Vec<i64>> {
        let a = self.size();
        (0..a)
            .map(|i| (0..a).map(|j| self.m[i][j] + self.m[j][i]).collect())
            .collect()
    }

    pub fn signature(&self) -> i64 {
        signature_i64(&self.symmetrized())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkInvariants {
    pub mu: usize,
    pub sigma: i64,
    pub h: u64,
    pub taylor: Option<TaylorBracket>,
}

/// The spanning-surface diagram of a descriptor.
pub fn build_diagram(d: &LinkDescriptor) -> Result<SurfaceDiagram> {
    surface_diagram(d)
}

pub fn component_count(d: &LinkDescriptor) -> Result<usize> {
    Ok(build_diagram(d)?.diagram.component_count())
}

/// Seifert matrix of the spanning surface, oriented as its boundary.
pub fn seifert_matrix(d: &LinkDescriptor) -> Result<SeifertMatrix> {
    let sd = build_diagram(d)?;
    Ok(SeifertMatrix {
        m: seifert_form(&sd.diagram, sd.surface)?,
    })
}

/// Signature from the Goeritz form of the other checkerboard surface, with its correction term.
pub fn goeritz_backend_signature(d: &LinkDescriptor) -> Result<i64> {
    let sd = build_diagram(d)?;
    let o = boundary_orientation(&sd.diagram, sd.surface)?;
    Ok(goeritz_signature(&sd.diagram, 1 - sd.surface, &o))
}

/// `sig(M + M^T)`, cross-checked against the Goeritz backend.
pub fn signature(d: &LinkDescriptor) -> Result<i64> {
    let s = seifert_matrix(d)?.signature();
    let g = goeritz_backend_signature(d)?;
    if s != g {
        return Err(Error::Diagram(format!(
            "signature backends disagree on {d}: {s} vs {g}"
        )));
    }
    Ok(s)
}

/// Signature of a two-bridge knot from `sum (-1)^floor(iq/p)` with `q` odd.
pub fn two_bridge_signature(p: i64, q: i64) -> Result<i64> {
    if p % 2 == 0 {
        return Err(Error::NotAKnot(2));
    }
    let q = q.rem_euclid(p);
    let q = if q % 2 == 0 { q + p } else { q };
    let s: i64 = (1..p)
        .map(|i| if (i * q / p) % 2 == 0 { 1 } else { -1 })
        .sum();
    Ok(TWO_BRIDGE_SIGN * s)
}

/// Component count of `S(p,q)`: one for odd `p`, two for even.
pub fn two_bridge_components(p: i64) -> usize {
    if p % 2 == 0 {
        2
    } else {
        1
    }
}

/// `sigma_omega` at `omega = exp(2 pi i k / n)`.
pub fn tristram_levine_signature(d: &LinkDescriptor, n: usize, k: usize) -> Result<i64> {
    super::cyclotomic::tristram_levine(&seifert_matrix(d)?.m, n, k)
}

/// Taylor bracket of a knot.
pub fn link_taylor_bracket(d: &LinkDescriptor, bound: i64) -> Result<TaylorBracket> {
    let mu = component_count(d)?;
    if mu != 1 {
        return Err(Error::NotAKnot(mu));
    }
    taylor_bracket(&seifert_matrix(d)?.m, bound)
}

/// Component count, signature, determinant and (for knots, when requested) the Taylor bracket.
pub fn invariants(d: &LinkDescriptor, taylor_bound: Option<i64>) -> Result<LinkInvariants> {
    let (mu, sigma) = match d {
        LinkDescriptor::TwoBridge { p, q } if p % 2 == 1 => (1, two_bridge_signature(*p, *q)?),
        _ => {
            let sd = build_diagram(d)?;
            (sd.diagram.component_count(), signature(d)?)
        }
    };
    let taylor = match taylor_bound {
        Some(b) if mu == 1 => Some(link_taylor_bracket(d, b)?),
        _ => None,
    };
    Ok(LinkInvariants {
        mu,
        sigma,
        h: d.determinant(),
        taylor,
    })
}

/// Correction terms of the branched double cover.
pub fn cover_table(d: &LinkDescriptor) -> Result<CorrectionTable> {
    match d {
        LinkDescriptor::TwoBridge { p, q } => lens_table(*p, q.rem_euclid(*p)),
        LinkDescriptor::Montesinos { .. } => correction_table(&d.double_cover()?),
    }
}

/// Which oriented cover the filling search ran on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverOrientation {
    Y,
    MinusY,
}

impl fmt::Display for CoverOrientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoverOrientation::Y => "Y",
            CoverOrientation::MinusY => "-Y",
        })
    }
}

#[derive(Debug, Clone)]
pub struct GenusReport {
    pub mu: usize,
    pub sigma: i64,
    /// `(|sigma| - mu + 1)/2`.
    pub murasugi_bound: ExactRational,
    pub b: usize,
    pub orientation_used: CoverOrientation,
    /// `None` when the bound is vacuous and no search was run.
    pub search: Option<ObstructionReport>,
}

impl GenusReport {
    pub fn obstructed(&self) -> bool {
        self.search.as_ref().is_some_and(|r| r.obstructed)
    }

    /// `"g* > k"` or `"inconclusive"`.
    pub fn conclusion(&self) -> String {
        if self.obstructed() {
            format!("g* > {}", format_rational(&self.murasugi_bound))
        } else {
            "inconclusive".to_string()
        }
    }
}

/// Decide whether Murasugi's bound is strict: a genus-`g` surface would give a definite filling of rank `|sigma|`.
pub fn genus_obstruction(d: &LinkDescriptor, opts: SearchOptions) -> Result<GenusReport> {
    let inv = invariants(d, None)?;
    genus_obstruction_with(d, &inv, opts)
}

/// As [`genus_obstruction`] with precomputed invariants.
pub fn genus_obstruction_with(
    d: &LinkDescriptor,
    inv: &LinkInvariants,
    opts: SearchOptions,
) -> Result<GenusReport> {
    let (mu, sigma) = (inv.mu, inv.sigma);
    let b = sigma.unsigned_abs() as usize;
    let murasugi_bound = rat(b as i64 - mu as i64 + 1, 2);
    let orientation_used = if sigma < 0 || b == 0 {
        CoverOrientation::Y
    } else {
        CoverOrientation::MinusY
    };
    let mut report = GenusReport {
        mu,
        sigma,
        murasugi_bound,
        b,
        orientation_used,
        search: None,
    };
    if (b as i64) < mu as i64 - 1 || (b == 0 && mu != 1) {
        return Ok(report);
    }
    let table = cover_table(d)?;
    let table = match orientation_used {
        CoverOrientation::Y => table,
        CoverOrientation::MinusY => table.negated(),
    };
    report.search = Some(if b == 0 {
        check_rational_ball(&table)
    } else {
        check_bound_with(&table, b, opts)?
    });
    Ok(report)
}

/// For a knot, whether the double cover fails to bound a rational ball (so the knot is not slice).
pub fn slice_check(d: &LinkDescriptor) -> Result<ObstructionReport> {
    let mu = match d {
        LinkDescriptor::TwoBridge { p, .. } => two_bridge_components(*p),
        _ => component_count(d)?,
    };
    if mu != 1 {
        return Err(Error::NotAKnot(mu));
    }
    Ok(check_rational_ball(&cover_table(d)?))
}
