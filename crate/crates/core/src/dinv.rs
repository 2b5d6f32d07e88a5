//! Correction terms of lens spaces and Seifert fibered rational homology
//! spheres.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::algebra::{rat, ExactRational, FinAbGroup, GroupElement, IntSymMatrix};
use crate::error::{Error, Result};
use crate::qforms::{sq_table_auto, QuadraticForm, SqTable};

/// `Y(e; (a_1,b_1), ..., (a_r,b_r))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeifertData {
    pub e: i64,
    pub pairs: Vec<(i64, i64)>,
}

impl SeifertData {
    pub fn new(e: i64, pairs: Vec<(i64, i64)>) -> Result<Self> {
        for &(a, b) in &pairs {
            if a < 1 || a.gcd(&b) != 1 {
                return Err(Error::NotCoprime(a, b));
            }
        }
        Ok(SeifertData { e, pairs })
    }

    /// `e + Σ b_i/a_i`.
    pub fn euler(&self) -> ExactRational {
        self.pairs
            .iter()
            .fold(rat(self.e, 1), |acc, &(a, b)| acc + rat(b, a))
    }

    /// `|H_1| = |Π a_i| |e + Σ b_i/a_i|`.
    pub fn h1_order(&self) -> u64 {
        let prod: i64 = self.pairs.iter().map(|p| p.0).product();
        let v = (self.euler() * rat(prod, 1)).abs();
        v.to_integer().to_u64().expect("order fits u64")
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y({};", self.e)?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, ")")
    }
}

/// `d(L(p,q), i)` for `i = 0..p` by the recursion.
pub fn lens_d(p: i64, q: i64) -> Result<Vec<ExactRational>> {
    if p < 1 || p.gcd(&q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    let q = q.rem_euclid(p);
    Ok((0..p).map(|i| lens_d_at(p, q, i)).collect())
}

fn lens_d_at(p: i64, q: i64, i: i64) -> ExactRational {
    if p == 1 {
        return rat(0, 1);
    }
    let t = 2 * i + 1 - p - q;
    rat(p * q - t * t, 4 * p * q) - lens_d_at(q, p % q, i % q)
}

/// The conjugation `j(i) = q - i - 1 (mod p)`.
pub fn lens_conjugate(p: i64, q: i64, i: i64) -> i64 {
    (q - i - 1).rem_euclid(p)
}

/// A label fixed by conjugation.
pub fn lens_spin_label(p: i64, q: i64) -> i64 {
    let q = q.rem_euclid(p.max(1));
    if (q - 1) % 2 == 0 {
        (q - 1) / 2
    } else {
        (p + q - 1) / 2
    }
}

/// Brings every pair into `0 < b < a` by moves `(a,b) -> (a,b-a)`, `e -> e+1`.
/// Pairs with `a = 1` are absorbed into `e`.
pub fn normalize_seifert(data: &SeifertData) -> Result<SeifertData> {
    if data.euler() == rat(0, 1) {
        return Err(Error::NotRationalHomologySphere);
    }
    let mut e = data.e;
    let mut pairs = Vec::new();
    for &(a, b) in &data.pairs {
        let r = b.rem_euclid(a);
        e += (b - r) / a;
        if a > 1 {
            pairs.push((a, r));
        }
    }
    Ok(SeifertData { e, pairs })
}

/// `Y(e;(a_i,b_i)) -> Y(-e;(a_i,-b_i))`, normalized.
pub fn reverse_orientation(data: &SeifertData) -> Result<SeifertData> {
    normalize_seifert(&SeifertData {
        e: -data.e,
        pairs: data.pairs.iter().map(|&(a, b)| (a, -b)).collect(),
    })
}

/// Continued fraction `x/y = [a_1, ..., a_m]` with `a_1 - 1/(a_2 - ...)` and
/// all `a_i >= 2`, for `x > y > 0`.
pub fn minus_cf(mut x: i64, mut y: i64) -> Vec<i64> {
    let mut out = Vec::new();
    while y > 0 {
        let a = Integer::div_ceil(&x, &y);
        out.push(a);
        let r = a * y - x;
        x = y;
        y = r;
    }
    out
}

/// A weighted plumbing tree with its intersection form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlumbingGraph {
    pub weights: Vec<i64>,
    pub edges: Vec<(usize, usize)>,
}

impl PlumbingGraph {
    pub fn form(&self) -> IntSymMatrix {
        let mut q = IntSymMatrix::diagonal(&self.weights);
        for &(u, v) in &self.edges {
            q.set(u, v, 1);
        }
        q
    }

    /// Linear graph `-a_1, ..., -a_m` with `p/q = [a_1, ..., a_m]`.
    pub fn linear(p: i64, q: i64) -> Self {
        let cf = minus_cf(p, q);
        PlumbingGraph {
            weights: cf.iter().map(|a| -a).collect(),
            edges: (1..cf.len()).map(|i| (i - 1, i)).collect(),
        }
    }
}

/// Star-shaped plumbing: central weight `-e-r`, leg `i` from
/// `a_i/(a_i-b_i)`.
pub fn plumbing_from_seifert(data: &SeifertData) -> Result<PlumbingGraph> {
    if data.pairs.iter().any(|&(a, b)| !(0 < b && b < a)) {
        return Err(Error::NotNormalized);
    }
    let r = data.pairs.len() as i64;
    let mut weights = vec![-data.e - r];
    let mut edges = Vec::new();
    for &(a, b) in &data.pairs {
        let mut prev = 0;
        for eta in minus_cf(a, a - b) {
            weights.push(-eta);
            let v = weights.len() - 1;
            edges.push((prev, v));
            prev = v;
        }
    }
    Ok(PlumbingGraph { weights, edges })
}

/// `d(Y, .)` on `H^2(Y)`, labelled so that the zero element is a spin
/// structure and conjugation is negation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectionTable {
    pub group: FinAbGroup,
    /// Indexed by group element index.
    pub d: Vec<ExactRational>,
    /// Spin structures: the two-torsion elements.
    pub spin: Vec<GroupElement>,
    /// Whether the values were negated from the opposite orientation.
    pub reversed: bool,
}

impl CorrectionTable {
    pub fn from_values(group: FinAbGroup, d: Vec<ExactRational>, reversed: bool) -> Self {
        let spin = group
            .elements()
            .filter(|x| group.is_zero(&group.add(x, x)))
            .collect();
        CorrectionTable {
            group,
            d,
            spin,
            reversed,
        }
    }

    pub fn d_of(&self, x: &GroupElement) -> &ExactRational {
        &self.d[self.group.index_of(x)]
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    /// The table of the oppositely oriented manifold.
    pub fn negated(&self) -> Self {
        CorrectionTable {
            group: self.group.clone(),
            d: self.d.iter().map(|v| -v).collect(),
            spin: self.spin.clone(),
            reversed: !self.reversed,
        }
    }

    pub fn sorted_values(&self) -> Vec<ExactRational> {
        let mut v = self.d.clone();
        v.sort();
        v
    }
}

/// Table from a negative definite plumbing: `d = (sq + |G|)/4`.
pub fn plumbing_table(graph: &PlumbingGraph) -> Result<CorrectionTable> {
    let q = graph.form();
    if !q.is_negative_definite() {
        return Err(Error::NoDefinitePlumbing);
    }
    let n = q.rank() as i64;
    let t: SqTable = sq_table_auto(&QuadraticForm::new(q)?);
    let d = t.sq.iter().map(|s| (s + rat(n, 1)) / rat(4, 1)).collect();
    Ok(CorrectionTable::from_values(
        t.presentation.group.clone(),
        d,
        false,
    ))
}

/// Table from the lens recursion, relabelled around a spin label.
pub fn lens_table(p: i64, q: i64) -> Result<CorrectionTable> {
    let vals = lens_d(p, q)?;
    let i0 = lens_spin_label(p, q);
    let group = FinAbGroup::cyclic(p as u64);
    let d = (0..p)
        .map(|x| vals[((i0 + x) % p) as usize].clone())
        .collect();
    Ok(CorrectionTable::from_values(group, d, false))
}

/// Correction terms of a Seifert fibered rational homology sphere, from
/// whichever orientation has a negative definite star plumbing.
pub fn correction_table(data: &SeifertData) -> Result<CorrectionTable> {
    let norm = normalize_seifert(data)?;
    let g = plumbing_from_seifert(&norm)?;
    if g.form().is_negative_definite() {
        return plumbing_table(&g);
    }
    let rev = reverse_orientation(&norm)?;
    let g = plumbing_from_seifert(&rev)?;
    if g.form().is_negative_definite() {
        return Ok(plumbing_table(&g)?.negated());
    }
    Err(Error::NoDefinitePlumbing)
}
