//! Exact arithmetic in the cyclotomic field `Q(zeta_n)` and signatures of Hermitian matrices over it.

use std::f64::consts::PI;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{rat, ExactRational};
use crate::error::{Error, Result};

/// Integer coefficients of the cyclotomic polynomial `Phi_n`, lowest degree first.
pub fn cyclotomic_poly(n: usize) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] / b[db];
        q[i] = c;
        for j in 0..=db {
            r[i + j] -= c * b[j];
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// The field `Q(zeta_n)` with the chosen embedding `zeta = exp(2 pi i k / n)`.
#[derive(Debug, Clone)]
pub struct CyclotomicField {
    pub n: usize,
    pub k: usize,
    phi: Vec<i64>,
}

/// An element of `Q(zeta_n)` as a polynomial in `zeta` of degree below `phi(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyc(pub Vec<ExactRational>);

impl CyclotomicField {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k % n == 0 {
            return Err(Error::TrivialOmega);
        }
        Ok(CyclotomicField {
            n,
            k,
            phi: cyclotomic_poly(n),
        })
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    fn reduce(&self, mut c: Vec<ExactRational>) -> Cyc {
        let d = self.degree();
        for i in (d..c.len()).rev() {
            let lead = std::mem::replace(&mut c[i], ExactRational::zero());
            if lead.is_zero() {
                continue;
            }
            for j in 0..d {
                c[i - d + j] -= &lead * rat(self.phi[j], 1);
            }
        }
        c.truncate(d);
        c.resize(d, ExactRational::zero());
        Cyc(c)
    }

    pub fn int(&self, v: i64) -> Cyc {
        self.reduce(vec![rat(v, 1)])
    }

    /// `zeta^j` for any integer `j`.
    pub fn zeta_pow(&self, j: i64) -> Cyc {
        let j = j.rem_euclid(self.n as i64) as usize;
        let mut c = vec![ExactRational::zero(); j + 1];
        c[j] = ExactRational::one();
        self.reduce(c)
    }

    pub fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        let mut c = vec![ExactRational::zero(); 2 * self.degree()];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        self.reduce(c)
    }

    pub fn scale(&self, a: &Cyc, v: i64) -> Cyc {
        Cyc(a.0.iter().map(|x| x * rat(v, 1)).collect())
    }

    /// Complex conjugation, `zeta -> zeta^{-1}`.
    pub fn conj(&self, a: &Cyc) -> Cyc {
        let mut c = vec![ExactRational::zero(); self.n];
        for (j, x) in a.0.iter().enumerate() {
            c[(self.n - j) % self.n] += x;
        }
        self.reduce(c)
    }

    /// Inverse by solving the multiplication-by-`a` system.
    pub fn inv(&self, a: &Cyc) -> Result<Cyc> {
        let d = self.degree();
        // columns: a * zeta^j
        let cols: Vec<Cyc> = (0..d)
            .map(|j| self.mul(a, &self.zeta_pow(j as i64)))
            .collect();
        let mut m: Vec<Vec<ExactRational>> = (0..d)
            .map(|i| {
                let mut row: Vec<ExactRational> = cols.iter().map(|c| c.0[i].clone()).collect();
                row.push(if i == 0 {
                    ExactRational::one()
                } else {
                    ExactRational::zero()
                });
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d)
                .find(|&r| !m[r][col].is_zero())
                .ok_or(Error::DegenerateForm)?;
            m.swap(col, piv);
            let p = m[col][col].clone();
            for v in m[col].iter_mut() {
                *v /= &p;
            }
            for r in 0..d {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..=d {
                        let t = &f * &m[col][c];
                        m[r][c] -= t;
                    }
                }
            }
        }
        Ok(Cyc(m.into_iter().map(|row| row[d].clone()).collect()))
    }

    pub fn is_zero(&self, a: &Cyc) -> bool {
        a.0.iter().all(|x| x.is_zero())
    }

    /// Numerical value under the embedding.
    pub fn eval(&self, a: &Cyc) -> (f64, f64) {
        let t = 2.0 * PI * self.k as f64 / self.n as f64;
        a.0.iter().enumerate().fold((0.0, 0.0), |(re, im), (j, x)| {
            let v = x.to_f64().unwrap_or(f64::NAN);
            (re + v * (t * j as f64).cos(), im + v * (t * j as f64).sin())
        })
    }

    /// Sign of a real element, certified against the floating-point error.
    pub fn real_sign(&self, a: &Cyc) -> Result<i64> {
        if self.is_zero(a) {
            return Ok(0);
        }
        let (re, _) = self.eval(a);
        let scale: f64 =
            a.0.iter()
                .map(|x| x.abs().to_f64().unwrap_or(f64::INFINITY))
                .sum();
        if re.is_finite() && re.abs() > 1e-9 * scale.max(1.0) {
            Ok(if re > 0.0 { 1 } else { -1 })
        } else {
            Err(Error::UncertifiedSign)
        }
    }

    /// Signature of a Hermitian matrix by congruence diagonalization.
    pub fn hermitian_signature(&self, mut a: Vec<Vec<Cyc>>) -> Result<i64> {
        let mut sig = 0;
        while !a.is_empty() {
            let n = a.len();
            let pivot = (0..n).find(|&i| !self.is_zero(&a[i][i]));
            let i = match pivot {
                Some(i) => i,
                None => {
                    let Some((i, j)) = (0..n)
                        .flat_map(|i| (0..n).map(move |j| (i, j)))
                        .find(|&(i, j)| i != j && !self.is_zero(&a[i][j]))
                    else {
                        break;
                    };
                    // e_i + u e_j has square 2 Re(u a_ij)
                    let re = self.add(&a[i][j], &self.conj(&a[i][j]));
                    let u = if self.is_zero(&re) {
                        self.zeta_pow(1)
                    } else {
                        self.int(1)
                    };
                    let ub = self.conj(&u);
                    for r in 0..n {
                        let t = self.mul(&a[r][j], &u);
                        a[r][i] = self.add(&a[r][i], &t);
                    }
                    for c in 0..n {
                        let t = self.mul(&ub, &a[j][c]);
                        a[i][c] = self.add(&a[i][c], &t);
                    }
                    i
                }
            };
            let p = a[i][i].clone();
            sig += self.real_sign(&p)?;
            let pinv = self.inv(&p)?;
            let mut next = Vec::with_capacity(n - 1);
            for r in (0..n).filter(|&r| r != i) {
                let f = self.mul(&a[r][i], &pinv);
                let row: Vec<Cyc> = (0..n)
                    .filter(|&c| c != i)
                    .map(|c| self.sub(&a[r][c], &self.mul(&f, &a[i][c])))
                    .collect();
                next.push(row);
            }
            a = next;
        }
        Ok(sig)
    }
}

/// The Tristram-Levine signature of a Seifert matrix at `omega = exp(2 pi i k / n)`.
pub fn tristram_levine(m: &[Vec<i64>], n: usize, k: usize) -> Result<i64> {
    let f = CyclotomicField::new(n, k)?;
    let w = f.zeta_pow(1);
    let one_minus_w = f.sub(&f.int(1), &w);
    let one_minus_wb = f.conj(&one_minus_w);
    let a = m.len();
    let h: Vec<Vec<Cyc>> = (0..a)
        .map(|i| {
            (0..a)
                .map(|j| {
                    f.add(
                        &f.scale(&one_minus_w, m[i][j]),
                        &f.scale(&one_minus_wb, m[j][i]),
                    )
                })
                .collect()
        })
        .collect();
    f.hermitian_signature(h)
}
