use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type BigMatrix = Vec<Vec<BigInt>>;

/// Smith normal form `U * M * V = D` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: BigMatrix,
    pub d: BigMatrix,
    pub v: BigMatrix,
}

impl Snf {
    /// Diagonal entries `d_1 | d_2 | ...` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.d.first().map_or(0, |r| r.len()));
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }
}

pub fn identity(n: usize) -> BigMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &BigMatrix, b: &BigMatrix) -> BigMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

pub fn from_i64(m: &[Vec<i64>]) -> BigMatrix {
    m.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

struct Work {
    a: BigMatrix,
    u: BigMatrix,
    v: BigMatrix,
    rows: usize,
    cols: usize,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.a.iter_mut() {
            r.swap(i, j);
        }
        for r in self.v.iter_mut() {
            r.swap(i, j);
        }
    }

    /// row_i += f * row_j
    fn add_row(&mut self, i: usize, j: usize, f: &BigInt) {
        for c in 0..self.cols {
            let t = &self.a[j][c] * f;
            self.a[i][c] += t;
        }
        for c in 0..self.rows {
            let t = &self.u[j][c] * f;
            self.u[i][c] += t;
        }
    }

    /// col_i += f * col_j
    fn add_col(&mut self, i: usize, j: usize, f: &BigInt) {
        for r in 0..self.rows {
            let t = &self.a[r][j] * f;
            self.a[r][i] += t;
        }
        for r in 0..self.cols {
            let t = &self.v[r][j] * f;
            self.v[r][i] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -x.clone();
        }
        for x in self.u[i].iter_mut() {
            *x = -x.clone();
        }
    }
}

/// Smith normal form over the integers with explicit transforms.
pub fn smith_normal_form(m: &BigMatrix) -> Snf {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut w = Work {
        a: m.clone(),
        u: identity(rows),
        v: identity(cols),
        rows,
        cols,
    };
    let k = rows.min(cols);
    for t in 0..k {
        loop {
            // smallest nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if w.a[i][j].is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if w.a[bi][bj].abs() <= w.a[i][j].abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(w);
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = w.a[i][t].div_floor(&w.a[t][t]);
                w.add_row(i, t, &-q);
                if !w.a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = w.a[t][j].div_floor(&w.a[t][t]);
                w.add_col(j, t, &-q);
                if !w.a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let piv = w.a[t][t].clone();
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&w.a[i][j] % &piv).is_zero()));
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    finish(w)
}

fn finish(w: Work) -> Snf {
    Snf {
        u: w.u,
        d: w.a,
        v: w.v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::det_big;
    use proptest::prelude::*;

    fn check(m: &BigMatrix) -> Snf {
        let s = smith_normal_form(m);
        assert_eq!(mat_mul(&mat_mul(&s.u, m), &s.v), s.d);
        assert_eq!(det_big(&s.u).abs(), BigInt::one());
        assert_eq!(det_big(&s.v).abs(), BigInt::one());
        let diag = s.diagonal();
        for (i, row) in s.d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j {
                    assert!(x.is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            assert!(!w[0].is_negative() && !w[1].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
        s
    }

    #[test]
    fn examples() {
        let s = check(&from_i64(&[vec![-2, -1], vec![-1, -2]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(3)]);
        let s = check(&identity(3));
        assert_eq!(s.d, identity(3));
        let s = check(&from_i64(&[vec![-3]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(3)]);
    }

    #[test]
    fn rectangular_and_zero() {
        check(&from_i64(&[vec![2, 4, 4], vec![-6, 6, 12]]));
        check(&from_i64(&[vec![0, 0], vec![0, 0], vec![0, 0]]));
        let s = check(&from_i64(&[vec![6, 0], vec![0, 4]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(12)]);
    }

    proptest! {
        #[test]
        fn snf_postcondition(n in 1usize..=8, m in 1usize..=8, seed in prop::collection::vec(-20i64..=20, 64)) {
            let mat: Vec<Vec<i64>> = (0..n).map(|i| (0..m).map(|j| seed[i * 8 + j]).collect()).collect();
            check(&from_i64(&mat));
        }
    }
}
