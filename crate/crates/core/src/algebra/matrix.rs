use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer symmetric bilinear form on `Z^n`, stored row-major.
///
/// The rank-0 form is allowed and behaves as the empty form with
/// determinant `+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntSymMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IntSymMatrix {
    pub fn new(n: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Dimension(format!(
                "{} entries for rank {}",
                entries.len(),
                n
            )));
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(IntSymMatrix { n, entries })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("rows of unequal length".into()));
        }
        Self::new(n, rows.iter().flatten().copied().collect())
    }

    pub fn diagonal(diag: &[i64]) -> Self {
        let n = diag.len();
        let mut entries = vec![0; n * n];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * n + i] = d;
        }
        IntSymMatrix { n, entries }
    }

    pub fn zero(n: usize) -> Self {
        IntSymMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    /// Sets entry `(i,j)` and its mirror `(j,i)`.
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.n + j] = v;
        self.entries[j * self.n + i] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn diag(&self) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn negated(&self) -> Self {
        IntSymMatrix {
            n: self.n,
            entries: self.entries.iter().map(|v| -v).collect(),
        }
    }

    /// `x^T Q y`.
    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut acc = 0i64;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            let mut row = 0i64;
            for j in 0..self.n {
                row += self.get(i, j) * y[j];
            }
            acc += x[i] * row;
        }
        acc
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// `U^T Q U` for a square integer matrix `U` given by rows.
    pub fn congruent(&self, u: &[Vec<i64>]) -> Self {
        let n = self.n;
        let mut out = IntSymMatrix::zero(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = 0i64;
                for k in 0..n {
                    for l in 0..n {
                        acc += u[k][i] * self.get(k, l) * u[l][j];
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn to_big(&self) -> Vec<Vec<BigInt>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| BigInt::from(self.get(i, j))).collect())
            .collect()
    }

    pub fn det(&self) -> BigInt {
        det_big(&self.to_big())
    }

    /// Leading principal minors of sizes `1..=n`.
    pub fn leading_minors(&self) -> Vec<BigInt> {
        let big = self.to_big();
        (1..=self.n)
            .map(|k| {
                let sub: Vec<Vec<BigInt>> = big[..k].iter().map(|r| r[..k].to_vec()).collect();
                det_big(&sub)
            })
            .collect()
    }

    /// Sylvester's criterion: the k-th leading minor has sign `(-1)^k`.
    pub fn is_negative_definite(&self) -> bool {
        self.leading_minors().iter().enumerate().all(|(k, m)| {
            if (k + 1) % 2 == 1 {
                m.is_negative()
            } else {
                m.is_positive()
            }
        })
    }

    /// Integer adjugate `adj(Q)` with `Q * adj(Q) = det(Q) * I`.
    pub fn adjugate(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        if n == 0 {
            return vec![];
        }
        if n == 1 {
            return vec![vec![1]];
        }
        let big = self.to_big();
        let mut adj = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<BigInt>> = (0..n)
                    .filter(|&r| r != j)
                    .map(|r| {
                        (0..n)
                            .filter(|&c| c != i)
                            .map(|c| big[r][c].clone())
                            .collect()
                    })
                    .collect();
                let m = det_big(&minor);
                let v: i64 = i64::try_from(m).expect("adjugate entry overflows i64");
                adj[i][j] = if (i + j) % 2 == 0 { v } else { -v };
            }
        }
        adj
    }

    /// `x Q^{-1} x^T` as an exact rational.
    pub fn inverse_square(&self, x: &[i64]) -> Result<BigRational> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::DegenerateForm);
        }
        let adj = self.adjugate();
        let mut acc = BigInt::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                acc += BigInt::from(x[i]) * BigInt::from(adj[i][j]) * BigInt::from(x[j]);
            }
        }
        Ok(BigRational::new(acc, det))
    }
}

impl fmt::Display for IntSymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Fraction-free (Bareiss) determinant. The empty matrix has determinant 1.
pub fn det_big(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Determinant of a small `i64` matrix.
pub fn det_i64(m: &[Vec<i64>]) -> BigInt {
    let big: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    det_big(&big)
}

/// Signature (positive minus negative inertia) of a symmetric rational
/// matrix, by congruence diagonalization.
pub fn signature_rational(m: &[Vec<BigRational>]) -> i64 {
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let n = a.len();
    let mut sig = 0i64;
    let mut k = 0;
    while k < n {
        let pivot = (k..n).find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // all remaining diagonal entries vanish; use e_i + e_j
                let pair = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero());
                match pair {
                    Some((i, j)) => {
                        for c in 0..n {
                            let v = a[j][c].clone();
                            a[i][c] += v;
                        }
                        for r in 0..n {
                            let v = a[r][j].clone();
                            a[r][i] += v;
                        }
                        i
                    }
                    None => break,
                }
            }
        };
        a.swap(k, p);
        for row in a.iter_mut() {
            row.swap(k, p);
        }
        let d = a[k][k].clone();
        if d.is_positive() {
            sig += 1;
        } else {
            sig -= 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &d;
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
        for j in k + 1..n {
            a[k][j] = BigRational::zero();
        }
        for i in k + 1..n {
            a[i][k] = BigRational::zero();
        }
        k += 1;
    }
    sig
}

/// Signature of a symmetric integer matrix.
pub fn signature_i64(m: &[Vec<i64>]) -> i64 {
    let q: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect()
        })
        .collect();
    signature_rational(&q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_zero_conventions() {
        let q = IntSymMatrix::zero(0);
        assert_eq!(q.det(), BigInt::one());
        assert!(q.is_negative_definite());
    }

    #[test]
    fn rejects_asymmetric() {
        assert_eq!(
            IntSymMatrix::from_rows(&[vec![1, 2], vec![3, 4]]),
            Err(Error::NotSymmetric)
        );
    }

    #[test]
    fn definiteness_examples() {
        assert!(IntSymMatrix::diagonal(&[-1, -3]).is_negative_definite());
        assert!(!IntSymMatrix::diagonal(&[-1, 1]).is_negative_definite());
        // central -1 with legs (-3), (-3), (-3,-2): minors decide
        let q = IntSymMatrix::from_rows(&[
            vec![-1, 1, 1, 1, 0],
            vec![1, -3, 0, 0, 0],
            vec![1, 0, -3, 0, 0],
            vec![1, 0, 0, -3, 1],
            vec![0, 0, 0, 1, -2],
        ])
        .unwrap();
        let minors = q.leading_minors();
        let by_minors = minors.iter().enumerate().all(|(k, m)| {
            if k % 2 == 0 {
                m.is_negative()
            } else {
                m.is_positive()
            }
        });
        assert_eq!(q.is_negative_definite(), by_minors);
        // -1 + 1/3 + 1/3 + 1/(3 - 1/2) = 0.066.. > 0, so not definite
        assert!(!q.is_negative_definite());
    }

    #[test]
    fn adjugate_inverts() {
        let q = IntSymMatrix::from_rows(&[vec![-2, -1], vec![-1, -2]]).unwrap();
        let adj = q.adjugate();
        assert_eq!(adj, vec![vec![-2, 1], vec![1, -2]]);
        assert_eq!(q.det(), BigInt::from(3));
    }

    #[test]
    fn signature_needs_off_diagonal_pivot() {
        assert_eq!(signature_i64(&[vec![0, 1], vec![1, 0]]), 0);
        assert_eq!(signature_i64(&[vec![2, -1], vec![-1, 2]]), 2);
        assert_eq!(signature_i64(&[vec![0, 0], vec![0, -5]]), -1);
    }
}
