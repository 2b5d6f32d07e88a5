//! Bracketing Taylor's invariant `m(K) = a/2 - z(M)` of a knot.

use num_integer::Integer;

use crate::error::Result;

use super::cyclotomic::tristram_levine;

/// Root-of-unity orders sampled for the lower bound.
pub const SAMPLE_ORDERS: [usize; 8] = [2, 3, 4, 5, 6, 8, 10, 12];

/// Node budget for the null-sublattice search.
const SEARCH_BUDGET: usize = 500_000;

/// Most vectors enumerated per search.
const MAX_CANDIDATES: usize = 2_000_000;

/// `lo <= m(K) <= hi`, with the null vectors that certify `hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaylorBracket {
    pub lo: i64,
    pub hi: i64,
    pub null_vectors: Vec<Vec<i64>>,
}

impl TaylorBracket {
    pub fn exact(&self) -> Option<i64> {
        (self.lo == self.hi).then_some(self.lo)
    }
}

fn form(m: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut s = 0;
    for (i, xi) in x.iter().enumerate() {
        if *xi != 0 {
            s += xi * m[i].iter().zip(y).map(|(a, b)| a * b).sum::<i64>();
        }
    }
    s
}

/// Nonzero vectors with entries in `[-bound, bound]`, first nonzero entry positive, by support size.
fn candidates(m: &[Vec<i64>], bound: i64) -> Vec<Vec<i64>> {
    let a = m.len();
    let mut out = Vec::new();
    for support in 1..=a {
        let mut idx: Vec<usize> = (0..support).collect();
        loop {
            // every sign/magnitude pattern on this support
            let mut vals = vec![1i64; support];
            loop {
                let mut x = vec![0i64; a];
                for (&i, &v) in idx.iter().zip(&vals) {
                    x[i] = v;
                }
                if x[idx[0]] > 0 && form(m, &x, &x) == 0 {
                    out.push(x);
                    if out.len() >= MAX_CANDIDATES {
                        return out;
                    }
                }
                let mut t = 0;
                loop {
                    if t == support {
                        break;
                    }
                    vals[t] = if vals[t] == bound {
                        -bound
                    } else if vals[t] == -1 {
                        1
                    } else {
                        vals[t] + 1
                    };
                    if vals[t] != 1 {
                        break;
                    }
                    t += 1;
                }
                if t == support {
                    break;
                }
            }
            // next support set
            let mut i = support;
            while i > 0 && idx[i - 1] == a - support + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..support {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    out
}

/// Row-echelon basis over the rationals, kept as primitive integer rows.
#[derive(Clone, Default)]
struct Echelon {
    rows: Vec<(usize, Vec<i128>)>,
}

impl Echelon {
    fn reduce(&self, x: &[i64]) -> Vec<i128> {
        let mut v: Vec<i128> = x.iter().map(|&t| t as i128).collect();
        for (p, r) in &self.rows {
            if v[*p] != 0 {
                let (a, b) = (r[*p], v[*p]);
                for (vi, ri) in v.iter_mut().zip(r) {
                    *vi = *vi * a - ri * b;
                }
                let g = v.iter().fold(0i128, |g, t| g.gcd(t));
                if g > 1 {
                    v.iter_mut().for_each(|t| *t /= g);
                }
            }
        }
        v
    }

    fn insert(&mut self, x: &[i64]) -> bool {
        let v = self.reduce(x);
        match v.iter().position(|&t| t != 0) {
            Some(p) => {
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }
}

struct Search<'a> {
    m: &'a [Vec<i64>],
    cands: Vec<Vec<i64>>,
    target: usize,
    best: Vec<usize>,
    nodes: usize,
}

impl Search<'_> {
    fn dfs(&mut self, chosen: &mut Vec<usize>, basis: &Echelon, from: usize, pool: &[usize]) {
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        if self.best.len() >= self.target || self.nodes >= SEARCH_BUDGET {
            return;
        }
        for (pos, &c) in pool.iter().enumerate() {
            if c < from {
                continue;
            }
            self.nodes += 1;
            if self.nodes >= SEARCH_BUDGET || chosen.len() + (pool.len() - pos) <= self.best.len() {
                return;
            }
            let mut b = basis.clone();
            if !b.insert(&self.cands[c]) {
                continue;
            }
            let x = &self.cands[c];
            let next: Vec<usize> = pool[pos + 1..]
                .iter()
                .copied()
                .filter(|&d| {
                    form(self.m, x, &self.cands[d]) == 0 && form(self.m, &self.cands[d], x) == 0
                })
                .collect();
            chosen.push(c);
            self.dfs(chosen, &b, c + 1, &next);
            chosen.pop();
            if self.best.len() >= self.target {
                return;
            }
        }
    }
}

/// Largest null sublattice found among vectors with entries in `[-bound, bound]`, up to `target` vectors.
pub fn null_sublattice(m: &[Vec<i64>], bound: i64, target: usize) -> Vec<Vec<i64>> {
    if target == 0 || m.is_empty() {
        return vec![];
    }
    let cands = candidates(m, bound.max(1));
    let pool: Vec<usize> = (0..cands.len()).collect();
    let mut s = Search {
        m,
        cands,
        target,
        best: vec![],
        nodes: 0,
    };
    s.dfs(&mut vec![], &Echelon::default(), 0, &pool);
    s.best.iter().map(|&i| s.cands[i].clone()).collect()
}

/// Lower bound from sampled Tristram-Levine signatures; uncertifiable samples are skipped.
pub fn signature_lower_bound(m: &[Vec<i64>]) -> i64 {
    let mut lo = 0;
    for n in SAMPLE_ORDERS {
        for k in 1..=n / 2 {
            if k.gcd(&n) != 1 {
                continue;
            }
            if let Ok(s) = tristram_levine(m, n, k) {
                lo = lo.max((s.abs() + 1) / 2);
            }
        }
    }
    lo
}

/// The bracket `[lo, hi]` for `m(K)` from a Seifert matrix of a knot.
pub fn taylor_bracket(m: &[Vec<i64>], bound: i64) -> Result<TaylorBracket> {
    let a = m.len() as i64;
    let lo = signature_lower_bound(m);
    let want = (a / 2 - lo).max(0) as usize;
    let null_vectors = null_sublattice(m, bound, want);
    Ok(TaylorBracket {
        lo,
        hi: a / 2 - null_vectors.len() as i64,
        null_vectors,
    })
}
