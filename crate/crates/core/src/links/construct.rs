//! Diagrams for Montesinos and two-bridge links with the spanning surface of each.

use num_integer::Integer;

use crate::error::{Error, Result};

use super::descriptor::{normalize_montesinos, LinkDescriptor, SurfaceCase};
use super::diagram::{Builder, Diagram};
use super::surface::is_orientable;

/// Whether descriptors are drawn as the mirror of the raw twist convention; pinned by `10_145` having signature +2.
pub const DESCRIPTOR_MIRROR: bool = true;

/// Minus continued fraction of `num/den` where `rule(k)` says whether term `k` (1-based) must be even and whether the expansion may stop there.
pub fn parity_cf(num: i64, den: i64, rule: impl Fn(usize) -> (bool, bool)) -> Result<Vec<i64>> {
    let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
    let mut out = Vec::new();
    for k in 1.. {
        if d == 0 || k > 256 {
            return Err(Error::Diagram(format!(
                "no parity expansion of {num}/{den}"
            )));
        }
        let (even, stop) = rule(k);
        if d == 1 && stop && (!even || n % 2 == 0) {
            out.push(n);
            return Ok(out);
        }
        let a = if even {
            if d == 1 {
                // odd integer where an even term is needed: step toward zero
                n - n.signum()
            } else {
                2 * Integer::div_floor(&(n + d), &(2 * d))
            }
        } else {
            Integer::div_floor(&(2 * n + d), &(2 * d))
        };
        out.push(a);
        let next = a * d - n;
        (n, d) = if next < 0 { (-d, -next) } else { (d, next) };
    }
    unreachable!()
}

/// A diagram together with the colour of its spanning surface.
#[derive(Debug, Clone)]
pub struct SurfaceDiagram {
    pub diagram: Diagram,
    pub surface: u8,
}

/// The diagram of `N(R_1 + ... + R_r + [-e])` with the parity-constrained expansions and the matching surface.
pub fn montesinos_diagram(e: i64, pairs: &[(i64, i64)]) -> Result<SurfaceDiagram> {
    let (case, e, pairs) = normalize_montesinos(e, pairs);
    let rule: fn(usize) -> (bool, bool) = match case {
        SurfaceCase::AllOdd => |k| (k % 2 == 1, k % 2 == 0),
        SurfaceCase::SomeEven => |k| (k % 2 == 0, k % 2 == 1),
    };
    let mut b = Builder::new(DESCRIPTOR_MIRROR);
    let mut total = None;
    let mut middle = None;
    for &(a, beta) in &pairs {
        let t = b.rational(&parity_cf(a, beta, rule)?);
        if middle.is_none() {
            middle = b.port(t.sw).map(|p| super::diagram::Port {
                c: p.c,
                k: (p.k + 3) % 4,
            });
        }
        total = Some(match total {
            None => t,
            Some(s) => b.sum(s, t),
        });
    }
    let z = b.zero();
    let first_e = b.crossing_count();
    let et = b.twist_h(z, -e);
    if middle.is_none() && e != 0 {
        middle = Some(b.nw_port(first_e));
    }
    let t = match total {
        None => et,
        Some(s) => b.sum(s, et),
    };
    let diagram = b.close(t, middle)?;
    let m = middle.ok_or_else(|| Error::Diagram("no middle face".into()))?;
    let black = diagram.corner_colour(m);
    let surface = match case {
        SurfaceCase::AllOdd => 1 - black,
        SurfaceCase::SomeEven => black,
    };
    if !is_orientable(&diagram, surface) {
        return Err(Error::Diagram(
            "prescribed spanning surface is not orientable".into(),
        ));
    }
    Ok(SurfaceDiagram { diagram, surface })
}

/// The spanning-surface diagram of any descriptor.
pub fn surface_diagram(d: &LinkDescriptor) -> Result<SurfaceDiagram> {
    let (e, pairs) = d.montesinos_data();
    montesinos_diagram(e, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(cf: &[i64]) -> num_rational::Ratio<i64> {
        let mut x = num_rational::Ratio::from_integer(cf[cf.len() - 1]);
        for &a in cf[..cf.len() - 1].iter().rev() {
            x = num_rational::Ratio::from_integer(a) - x.recip();
        }
        x
    }

    #[test]
    fn parity_expansions_have_requested_shape() {
        for a in 2..40i64 {
            for b in 1..2 * a {
                if a.gcd(&b) != 1 {
                    continue;
                }
                if a % 2 == 1 {
                    let cf = parity_cf(a, b, |k| (k % 2 == 1, k % 2 == 0)).unwrap();
                    assert_eq!(cf.len() % 2, 0);
                    assert!(cf.iter().step_by(2).all(|x| x % 2 == 0));
                    assert_eq!(value(&cf), num_rational::Ratio::new(a, b));
                }
                if b % 2 == 1 {
                    let cf = parity_cf(a, b, |k| (k % 2 == 0, k % 2 == 1)).unwrap();
                    assert_eq!(cf.len() % 2, 1);
                    assert!(cf.iter().skip(1).step_by(2).all(|x| x % 2 == 0));
                    assert_eq!(value(&cf), num_rational::Ratio::new(a, b));
                }
            }
        }
    }
}
