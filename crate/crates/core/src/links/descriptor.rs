//! Link descriptors `S(p,q)` and `M(e;a1/b1,...)`, their moves and double covers.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::algebra::{rat, ExactRational};
use crate::dinv::SeifertData;
use crate::error::{Error, Result};

/// A two-bridge link `S(p,q)` or a Montesinos link `M(e;(a1,b1),...)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinkDescriptor {
    TwoBridge { p: i64, q: i64 },
    Montesinos { e: i64, pairs: Vec<(i64, i64)> },
}

/// Which normalization of the Montesinos invariants fixes the spanning surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceCase {
    /// All `alpha` odd: `0 < beta < alpha`, white surface.
    AllOdd,
    /// Some `alpha` even: every `beta` odd, `e = r (mod 2)`, black surface.
    SomeEven,
}

impl LinkDescriptor {
    pub fn two_bridge(p: i64, q: i64) -> Result<Self> {
        if p < 1 || q.gcd(&p) != 1 {
            return Err(Error::Descriptor(format!(
                "S({p},{q}) needs p >= 1 and gcd(p,q) = 1"
            )));
        }
        Ok(LinkDescriptor::TwoBridge { p, q })
    }

    pub fn montesinos(e: i64, pairs: Vec<(i64, i64)>) -> Result<Self> {
        for &(a, b) in &pairs {
            if a <= 1 {
                return Err(Error::Descriptor(format!("alpha = {a} must exceed 1")));
            }
            if a.gcd(&b) != 1 {
                return Err(Error::NotCoprime(a, b));
            }
        }
        Ok(LinkDescriptor::Montesinos { e, pairs })
    }

    /// The Montesinos form `(e, pairs)`; `S(p,q)` is `M(0;(q,p))`, or `M(-p;)` when `q = 1 (mod p)`.
    pub fn montesinos_data(&self) -> (i64, Vec<(i64, i64)>) {
        match self {
            LinkDescriptor::Montesinos { e, pairs } => (*e, pairs.clone()),
            LinkDescriptor::TwoBridge { p, q } => {
                let q = q.rem_euclid(*p);
                if *p == 1 || q == 1 {
                    (-p, vec![])
                } else {
                    (0, vec![(q, *p)])
                }
            }
        }
    }

    /// `|H_1|` of the branched double cover, `|prod(alpha) * (-e + sum(beta/alpha))|`.
    pub fn determinant(&self) -> u64 {
        match self {
            LinkDescriptor::TwoBridge { p, .. } => p.unsigned_abs(),
            LinkDescriptor::Montesinos { e, pairs } => {
                let mut s = rat(-e, 1);
                let mut prod: i64 = 1;
                for &(a, b) in pairs {
                    s += rat(b, a);
                    prod *= a;
                }
                let v = (s * rat(prod, 1)).abs();
                v.to_integer().try_into().unwrap_or(u64::MAX)
            }
        }
    }

    /// Mirror image: `M(r-e;(a,a-b),...)`; `S(p,q)` goes to `S(p,p-q)`.
    pub fn reflect(&self) -> Self {
        match self {
            LinkDescriptor::TwoBridge { p, q } => LinkDescriptor::TwoBridge {
                p: *p,
                q: (p - q).rem_euclid(*p),
            },
            LinkDescriptor::Montesinos { e, pairs } => LinkDescriptor::Montesinos {
                e: pairs.len() as i64 - e,
                pairs: pairs.iter().map(|&(a, b)| (a, a - b)).collect(),
            },
        }
    }

    /// The branched double cover: `M(e;...)` goes to `Y(-e;...)` and `S(p,q)` to `L(p,q)`.
    pub fn double_cover(&self) -> Result<SeifertData> {
        if self.determinant() == 0 {
            return Err(Error::NotRationalHomologySphere);
        }
        let (e, pairs) = self.montesinos_data();
        SeifertData::new(-e, pairs)
    }

    /// Sorted Montesinos invariants with `0 < beta < alpha`, the canonical name under the `alpha + beta` move.
    pub fn canonical(&self) -> Self {
        match self {
            LinkDescriptor::TwoBridge { p, q } => {
                let q = q.rem_euclid(*p);
                let inv = mod_inverse(q, *p);
                LinkDescriptor::TwoBridge {
                    p: *p,
                    q: q.min(inv),
                }
            }
            LinkDescriptor::Montesinos { e, pairs } => {
                let mut e = *e;
                let mut out: Vec<(i64, i64)> = pairs
                    .iter()
                    .map(|&(a, b)| {
                        let k = Integer::div_floor(&b, &a);
                        e -= k;
                        (a, b - k * a)
                    })
                    .collect();
                out.sort();
                LinkDescriptor::Montesinos { e, pairs: out }
            }
        }
    }
}

/// Inverse of `q` modulo `p` (0 when `p = 1`).
pub fn mod_inverse(q: i64, p: i64) -> i64 {
    if p == 1 {
        return 0;
    }
    let g = q.extended_gcd(&p);
    g.x.rem_euclid(p)
}

/// Apply the `alpha + beta` moves that fix the spanning surface.
pub fn normalize_montesinos(e: i64, pairs: &[(i64, i64)]) -> (SurfaceCase, i64, Vec<(i64, i64)>) {
    let mut e = e;
    let case = if pairs.iter().all(|(a, _)| a % 2 != 0) {
        SurfaceCase::AllOdd
    } else {
        SurfaceCase::SomeEven
    };
    let mut out: Vec<(i64, i64)> = pairs
        .iter()
        .map(|&(a, b)| {
            let mut k = Integer::div_floor(&b, &a);
            if case == SurfaceCase::SomeEven && (b - k * a) % 2 == 0 {
                // alpha odd and the residue even: use residue + alpha
                k -= 1;
            }
            e -= k;
            (a, b - k * a)
        })
        .collect();
    if case == SurfaceCase::SomeEven && (e - out.len() as i64).rem_euclid(2) != 0 {
        let j = (0..out.len())
            .filter(|&i| out[i].0 % 2 == 0)
            .min_by(|&i, &j| {
                rat(out[i].1, out[i].0)
                    .cmp(&rat(out[j].1, out[j].0))
                    .then(i.cmp(&j))
            })
            .expect("some alpha is even");
        out[j].1 += out[j].0;
        e += 1;
    }
    (case, e, out)
}

impl fmt::Display for LinkDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkDescriptor::TwoBridge { p, q } => write!(f, "S({p},{q})"),
            LinkDescriptor::Montesinos { e, pairs } => {
                write!(f, "M({e};")?;
                let parts: Vec<String> = pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
                write!(f, "{})", parts.join(","))
            }
        }
    }
}

const GRAMMAR: &str = "expected S(p,q) or M(e;a1/b1,...,ar/br)";

fn parse_int(s: &str) -> Result<i64> {
    let t = s.trim().replace('\u{2212}', "-");
    t.parse::<i64>()
        .map_err(|_| Error::Descriptor(format!("bad integer {s:?}; {GRAMMAR}")))
}

impl FromStr for LinkDescriptor {
    type Err = Error;

    /// Accepts `S(p,q)`, `M(e;a/b,...)` and the pair form `M(e;(a,b),...)`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Descriptor(format!("{s:?}: {GRAMMAR}"));
        let body = |prefix: &str| -> Option<&str> { s.strip_prefix(prefix)?.strip_suffix(')') };
        if let Some(inner) = body("S(") {
            let (p, q) = inner.split_once(',').ok_or_else(bad)?;
            return LinkDescriptor::two_bridge(parse_int(p)?, parse_int(q)?);
        }
        let inner = body("M(").ok_or_else(bad)?;
        let (e, rest) = inner.split_once(';').ok_or_else(bad)?;
        let e = parse_int(e)?;
        let mut pairs = Vec::new();
        if rest.starts_with('(') {
            let rest = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(bad)?;
            for part in rest.split("),(") {
                let (a, b) = part.split_once(',').ok_or_else(bad)?;
                pairs.push((parse_int(a)?, parse_int(b)?));
            }
        } else if !rest.is_empty() {
            for part in rest.split(',') {
                let (a, b) = part.split_once('/').ok_or_else(bad)?;
                pairs.push((parse_int(a)?, parse_int(b)?));
            }
        }
        LinkDescriptor::montesinos(e, pairs)
    }
}

/// Signed sum of the Montesinos slopes, `-e + sum(beta/alpha)`.
pub fn slope_sum(e: i64, pairs: &[(i64, i64)]) -> ExactRational {
    pairs
        .iter()
        .fold(rat(-e, 1), |acc, &(a, b)| acc + rat(b, a))
}

/// True when the descriptor has a rational homology sphere cover.
pub fn has_qhs_cover(d: &LinkDescriptor) -> bool {
    match d {
        LinkDescriptor::TwoBridge { .. } => true,
        LinkDescriptor::Montesinos { e, pairs } => !slope_sum(*e, pairs).is_zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let d: LinkDescriptor = "M(1;3/1,3/1,5/2)".parse().unwrap();
        assert_eq!(d.to_string(), "M(1;(3,1),(3,1),(5,2))");
        assert_eq!(d.to_string().parse::<LinkDescriptor>().unwrap(), d);
        assert_eq!(
            "S(107,28)".parse::<LinkDescriptor>().unwrap().to_string(),
            "S(107,28)"
        );
        assert!("M(1;3/3)".parse::<LinkDescriptor>().is_err());
        assert!("X(1,2)".parse::<LinkDescriptor>().is_err());
    }

    #[test]
    fn reflection_rule() {
        let d: LinkDescriptor = "M(1;3/1,3/1,5/2)".parse().unwrap();
        assert_eq!(d.reflect().to_string(), "M(2;(3,2),(3,2),(5,3))");
        let d: LinkDescriptor = "M(5;2/1,2/1,2/1)".parse().unwrap();
        assert_eq!(d.reflect().to_string(), "M(-2;(2,1),(2,1),(2,1))");
        assert_eq!(d.reflect().reflect(), d);
    }

    #[test]
    fn determinants() {
        assert_eq!(
            "M(1;3/1,3/1,5/2)"
                .parse::<LinkDescriptor>()
                .unwrap()
                .determinant(),
            3
        );
        assert_eq!(
            "M(1;5/2,5/2,5/2)"
                .parse::<LinkDescriptor>()
                .unwrap()
                .determinant(),
            25
        );
        assert_eq!(
            "M(-2;3/1,3/1,5/3)"
                .parse::<LinkDescriptor>()
                .unwrap()
                .determinant(),
            147
        );
    }

    #[test]
    fn alpha_plus_beta_move_is_recognized() {
        let a: LinkDescriptor = "M(0;3/1)".parse().unwrap();
        let b: LinkDescriptor = "M(1;3/4)".parse().unwrap();
        assert_eq!(a.canonical(), b.canonical());
    }

    #[test]
    fn normalization_cases() {
        let (c, e, p) = normalize_montesinos(1, &[(3, 1), (3, 1), (5, 2)]);
        assert_eq!(
            (c, e, p),
            (SurfaceCase::AllOdd, 1, vec![(3, 1), (3, 1), (5, 2)])
        );
        // e = 0, r = 3: the parity fix moves the even pair with least slope
        let (c, e, p) = normalize_montesinos(0, &[(2, 1), (2, 1), (3, 2)]);
        assert_eq!(
            (c, e, p),
            (SurfaceCase::SomeEven, 1, vec![(2, 1), (2, 1), (3, 5)])
        );
        let (_, e, p) = normalize_montesinos(0, &[(2, 1), (4, 1), (3, 1)]);
        assert_eq!((e, p), (1, vec![(2, 1), (4, 5), (3, 1)]));
    }
}
