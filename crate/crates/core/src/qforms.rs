//! Negative definite integer forms: enumeration up to equivalence and the
//! maximal-square function on the discriminant group.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::algebra::{
    cokernel, rat, ExactRational, FinAbGroup, GroupElement, IntSymMatrix, Presentation,
};
use crate::error::{Error, Result};

/// A negative definite form together with `|det Q|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticForm {
    pub q: IntSymMatrix,
    pub det_abs: u64,
}

impl QuadraticForm {
    pub fn new(q: IntSymMatrix) -> Result<Self> {
        if !q.is_negative_definite() {
            return Err(Error::DegenerateForm);
        }
        let det_abs = q.det().abs().to_u64().expect("determinant fits u64");
        Ok(QuadraticForm { q, det_abs })
    }

    pub fn rank(&self) -> usize {
        self.q.rank()
    }
}

/// Reduced rank-2 forms `[[a,b],[b,c]]` with `0 >= 2b >= a >= c` and
/// `ac - b^2 = r`.
pub fn enumerate_rank2_reduced(r: u64) -> Vec<QuadraticForm> {
    let r = r as i64;
    let mut out = Vec::new();
    let mut amax = 0i64;
    // 3 a^2 <= 4 r
    while 3 * (amax + 1) * (amax + 1) <= 4 * r {
        amax += 1;
    }
    for a in (-amax..=-1).rev() {
        let bmin = -((-a) / 2);
        for b in bmin..=0 {
            let num = r + b * b;
            if num % (-a) != 0 {
                continue;
            }
            let c = -num / (-a);
            if c > a {
                continue;
            }
            let q = IntSymMatrix::from_rows(&[vec![a, b], vec![b, c]]).unwrap();
            out.push(QuadraticForm {
                q,
                det_abs: r as u64,
            });
        }
    }
    out
}

/// `Π p_ii <= num/den * det` holds for Minkowski reduced positive forms.
fn product_bound(n: usize) -> (i64, i64) {
    match n {
        0 | 1 => (1, 1),
        2 => (4, 3),
        3 => (2, 1),
        _ => (4, 1),
    }
}

/// Complete list (up to equivalence) of negative definite forms of the given
/// rank and `|det|`, optionally restricted to those presenting `present`.
pub fn enumerate_definite_forms(
    rank: usize,
    det_abs: u64,
    present: Option<&FinAbGroup>,
) -> Result<Vec<QuadraticForm>> {
    if rank > 4 {
        return Err(Error::RankUnsupported(rank));
    }
    let mut raw = Vec::new();
    if rank == 0 {
        if det_abs == 1 {
            raw.push(IntSymMatrix::zero(0));
        }
    } else {
        let mut p = vec![vec![0i64; rank]; rank];
        fill_row(&mut p, 0, det_abs as i64, 1, &mut raw);
    }
    let mut classes: BTreeMap<Vec<u64>, Vec<QuadraticForm>> = BTreeMap::new();
    let mut order = Vec::new();
    for pos in raw {
        let q = pos.negated();
        if let Some(g) = present {
            match cokernel(&q) {
                Ok(c) if &c.group == g => {}
                _ => continue,
            }
        }
        let key = theta_key(&pos);
        let bucket = classes.entry(key.clone()).or_default();
        if bucket.iter().any(|f| forms_equivalent(&f.q, &q)) {
            continue;
        }
        let form = QuadraticForm { q, det_abs };
        bucket.push(form.clone());
        order.push(form);
    }
    Ok(order)
}

/// Determinant of a small integer matrix by cofactor expansion.
fn det_small(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0] as i128,
        2 => m[0][0] as i128 * m[1][1] as i128 - m[0][1] as i128 * m[1][0] as i128,
        _ => {
            let mut acc = 0i128;
            for c in 0..n {
                if m[0][c] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let t = m[0][c] as i128 * det_small(&minor);
                acc += if c % 2 == 0 { t } else { -t };
            }
            acc
        }
    }
}

fn leading(p: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    p[..k].iter().map(|r| r[..k].to_vec()).collect()
}

/// Fills row `k` of the positive form. Rows before the last fix their
/// diagonal first; the last row fixes its off-diagonal entries and then
/// solves for the diagonal from the determinant.
fn fill_row(
    p: &mut Vec<Vec<i64>>,
    k: usize,
    det: i64,
    diag_prod: i64,
    out: &mut Vec<IntSymMatrix>,
) {
    let n = p.len();
    if k + 1 == n {
        fill_last(p, 0, det, diag_prod, out);
        return;
    }
    let (num, den) = product_bound(n);
    let lo = if k == 0 { 1 } else { p[k - 1][k - 1] };
    let remaining = (n - k) as u32;
    let mut d = lo;
    // the remaining diagonal entries are all at least d
    while (diag_prod as i128) * (d as i128).pow(remaining) * den as i128 <= (num * det) as i128 {
        p[k][k] = d;
        fill_off(p, k, 0, det, diag_prod * d, out);
        d += 1;
    }
    p[k][k] = 0;
}

fn fill_off(
    p: &mut Vec<Vec<i64>>,
    k: usize,
    j: usize,
    det: i64,
    diag_prod: i64,
    out: &mut Vec<IntSymMatrix>,
) {
    if j == k {
        if det_small(&leading(p, k + 1)) <= 0 {
            return;
        }
        fill_row(p, k + 1, det, diag_prod, out);
        return;
    }
    let bound = p[j][j] / 2;
    let lo = if j == 0 { 0 } else { -bound };
    for v in lo..=bound {
        p[k][j] = v;
        p[j][k] = v;
        fill_off(p, k, j + 1, det, diag_prod, out);
    }
    p[k][j] = 0;
    p[j][k] = 0;
}

fn fill_last(
    p: &mut Vec<Vec<i64>>,
    j: usize,
    det: i64,
    diag_prod: i64,
    out: &mut Vec<IntSymMatrix>,
) {
    let k = p.len() - 1;
    if j == k {
        let (num, den) = product_bound(k + 1);
        p[k][k] = 0;
        let rest = det_small(p);
        let minor = det_small(&leading(p, k));
        let diff = det as i128 - rest;
        if diff % minor != 0 {
            return;
        }
        let d = diff / minor;
        let lo = if k == 0 { 1 } else { p[k - 1][k - 1] as i128 };
        if d < lo || diag_prod as i128 * d * den as i128 > (num * det) as i128 {
            return;
        }
        p[k][k] = d as i64;
        out.push(IntSymMatrix::from_rows(p).unwrap());
        p[k][k] = 0;
        return;
    }
    let bound = p[j][j] / 2;
    let lo = if j == 0 { 0 } else { -bound };
    for v in lo..=bound {
        p[k][j] = v;
        p[j][k] = v;
        fill_last(p, j + 1, det, diag_prod, out);
    }
    p[k][j] = 0;
    p[j][k] = 0;
}

/// All nonzero `x` with `x^T P x <= bound` for positive definite `P`
/// (Fincke–Pohst), with their norms.
pub fn short_vectors(p: &IntSymMatrix, bound: i64) -> Vec<(Vec<i64>, i64)> {
    let n = p.rank();
    if n == 0 {
        return vec![];
    }
    // q[i][i] and q[i][j] (j > i) with x^T P x = Σ q_ii (x_i + Σ_j q_ij x_j)^2
    let mut q = vec![vec![0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            q[i][j] = p.get(i, j) as f64;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    let slack = 1e-7 * (bound as f64 + 1.0);
    enumerate_fp(p, &q, n - 1, bound as f64 + slack, &mut x, bound, &mut out);
    out
}

fn enumerate_fp(
    p: &IntSymMatrix,
    q: &[Vec<f64>],
    i: usize,
    rem: f64,
    x: &mut Vec<i64>,
    bound: i64,
    out: &mut Vec<(Vec<i64>, i64)>,
) {
    let n = x.len();
    let center: f64 = -(i + 1..n).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
    let radius = (rem.max(0.0) / q[i][i]).sqrt();
    let lo = (center - radius - 1e-9).ceil() as i64;
    let hi = (center + radius + 1e-9).floor() as i64;
    for v in lo..=hi {
        x[i] = v;
        let t = v as f64 - center;
        let r = rem - q[i][i] * t * t;
        if r < -1e-9 {
            continue;
        }
        if i == 0 {
            if x.iter().any(|&c| c != 0) {
                let norm = p.pair(x, x);
                if norm <= bound {
                    out.push((x.clone(), norm));
                }
            }
        } else {
            enumerate_fp(p, q, i - 1, r, x, bound, out);
        }
    }
    x[i] = 0;
}

/// Vector counts by norm up to a fixed bound: an equivalence invariant used
/// to bucket forms before the exact test.
fn theta_key(pos: &IntSymMatrix) -> Vec<u64> {
    let top = 6;
    let mut counts = vec![0u64; top as usize + 1];
    for (_, norm) in short_vectors(pos, top) {
        counts[norm as usize] += 1;
    }
    counts
}

/// Whether `U^T Q1 U = Q2` for some unimodular integer `U`.
pub fn forms_equivalent(q1: &IntSymMatrix, q2: &IntSymMatrix) -> bool {
    let n = q1.rank();
    if n != q2.rank() || q1.det() != q2.det() {
        return false;
    }
    if n == 0 {
        return true;
    }
    let (p1, p2) = if q1.get(0, 0) < 0 {
        (q1.negated(), q2.negated())
    } else {
        (q1.clone(), q2.clone())
    };
    if p2.diag().iter().any(|&d| d <= 0) || p1.diag().iter().any(|&d| d <= 0) {
        // indefinite input: fall back to comparing the forms directly
        return q1 == q2;
    }
    let top = p2.diag().into_iter().max().unwrap();
    let vecs = short_vectors(&p1, top);
    let cands: Vec<Vec<&Vec<i64>>> = (0..n)
        .map(|i| {
            vecs.iter()
                .filter(|(_, m)| *m == p2.get(i, i))
                .map(|(v, _)| v)
                .collect()
        })
        .collect();
    let mut chosen: Vec<&Vec<i64>> = Vec::with_capacity(n);
    backtrack(&p1, &p2, &cands, &mut chosen)
}

fn backtrack<'a>(
    p1: &IntSymMatrix,
    p2: &IntSymMatrix,
    cands: &[Vec<&'a Vec<i64>>],
    chosen: &mut Vec<&'a Vec<i64>>,
) -> bool {
    let i = chosen.len();
    if i == cands.len() {
        let u: Vec<Vec<i64>> = (0..i)
            .map(|r| chosen.iter().map(|c| c[r]).collect())
            .collect();
        return crate::algebra::matrix::det_i64(&u).abs() == BigInt::from(1);
    }
    for &v in &cands[i] {
        // the first image may be taken up to sign
        if i == 0 && v.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
            continue;
        }
        if chosen
            .iter()
            .enumerate()
            .all(|(j, w)| p1.pair(w, v) == p2.get(j, i))
        {
            chosen.push(v);
            if backtrack(p1, p2, cands, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Maximal squares of characteristic covectors, per discriminant class.
#[derive(Clone, Debug)]
pub struct SqTable {
    pub form: QuadraticForm,
    pub presentation: Presentation,
    /// Indexed by group element index.
    pub sq: Vec<ExactRational>,
    /// A maximizing characteristic covector per class.
    pub class_reps: Vec<Vec<i64>>,
    pub jfixed: Vec<GroupElement>,
    /// Characteristic covector in the image of `Q` labelling the zero class.
    pub origin: Vec<i64>,
}

impl SqTable {
    pub fn group(&self) -> &FinAbGroup {
        &self.presentation.group
    }

    pub fn sq_of(&self, x: &GroupElement) -> &ExactRational {
        &self.sq[self.group().index_of(x)]
    }

    /// Class of a characteristic covector: `(c - origin)/2` in the cokernel.
    pub fn class_of(&self, c: &[i64]) -> GroupElement {
        let half: Vec<i64> = c
            .iter()
            .zip(&self.origin)
            .map(|(a, b)| {
                debug_assert!((a - b) % 2 == 0, "covector is not characteristic");
                (a - b) / 2
            })
            .collect();
        self.presentation.project(&half)
    }

    /// `c Q^{-1} c^T`.
    pub fn square(&self, c: &[i64]) -> ExactRational {
        self.form.q.inverse_square(c).expect("nondegenerate")
    }
}

/// Solves `Q x = diag(Q)` mod 2 and returns `Q x`, a characteristic covector
/// in the image of `Q`.
fn characteristic_in_image(q: &IntSymMatrix) -> Vec<i64> {
    let n = q.rank();
    let mut rows: Vec<Vec<u8>> = (0..n)
        .map(|i| {
            let mut r: Vec<u8> = (0..n).map(|j| q.get(i, j).rem_euclid(2) as u8).collect();
            r.push(q.get(i, i).rem_euclid(2) as u8);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&r| rows[r][col] == 1) else {
            continue;
        };
        rows.swap(row, pr);
        for r in 0..n {
            if r != row && rows[r][col] == 1 {
                let src = rows[row].clone();
                for (a, b) in rows[r].iter_mut().zip(src) {
                    *a ^= b;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    // consistency is guaranteed: diag(Q) is orthogonal to ker(Q mod 2)
    debug_assert!(rows[row..].iter().all(|r| r[n] == 0));
    let mut x = vec![0i64; n];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = rows[r][n] as i64;
    }
    q.apply(&x)
}

pub fn sq_table(form: &QuadraticForm) -> SqTable {
    let q = &form.q;
    let n = q.rank();
    let presentation = cokernel(q).expect("definite form");
    let group = presentation.group.clone();
    let origin = characteristic_in_image(q);
    let det = q.det().to_i64().expect("determinant fits i64");
    let adj = q.adjugate();
    let order = group.order() as usize;
    let mut best: Vec<Option<(i64, Vec<i64>)>> = vec![None; order];
    let mut c: Vec<i64> = q.diag();
    let table_stub = SqTable {
        form: form.clone(),
        presentation: presentation.clone(),
        sq: vec![],
        class_reps: vec![],
        jfixed: vec![],
        origin: origin.clone(),
    };
    // class of the current covector, updated incrementally
    let steps: Vec<GroupElement> = (0..n)
        .map(|i| {
            let mut e = vec![0i64; n];
            e[i] = 1;
            presentation.project(&e)
        })
        .collect();
    let wraps: Vec<GroupElement> = (0..n)
        .map(|i| group.scale(&steps[i], q.get(i, i)))
        .collect();
    let mut cls = table_stub.class_of(&c);
    loop {
        // numerator of c adj c / det; det has sign (-1)^n
        let mut num = 0i64;
        for i in 0..n {
            if c[i] == 0 {
                continue;
            }
            let mut row = 0i64;
            for j in 0..n {
                row += adj[i][j] * c[j];
            }
            num += c[i] * row;
        }
        let idx = group.index_of(&cls);
        // compare num/det: larger square means num/det larger
        let better = match &best[idx] {
            None => true,
            Some((b, _)) => {
                if det > 0 {
                    num > *b
                } else {
                    num < *b
                }
            }
        };
        if better {
            best[idx] = Some((num, c.clone()));
        }
        // odometer over Q_ii <= c_i < -Q_ii in steps of 2
        let mut i = 0;
        loop {
            if i == n {
                return finish_table(table_stub, best, det);
            }
            c[i] += 2;
            cls = group.add(&cls, &steps[i]);
            if c[i] < -q.get(i, i) {
                break;
            }
            c[i] = q.get(i, i);
            cls = group.add(&cls, &wraps[i]);
            i += 1;
        }
    }
}

fn finish_table(mut t: SqTable, best: Vec<Option<(i64, Vec<i64>)>>, det: i64) -> SqTable {
    let group = t.presentation.group.clone();
    for (idx, b) in best.into_iter().enumerate() {
        let (num, c) = b.unwrap_or_else(|| panic!("class {idx} received no covector"));
        t.sq.push(rat(num, det));
        t.class_reps.push(c);
    }
    t.jfixed = group
        .elements()
        .filter(|x| group.is_zero(&group.add(x, x)))
        .collect();
    t
}

/// Adjacency lists if the off-diagonal pattern of `q` is a forest.
fn forest(q: &IntSymMatrix) -> Option<Vec<Vec<usize>>> {
    let n = q.rank();
    let mut adj = vec![Vec::new(); n];
    let mut edges = 0;
    for i in 0..n {
        for j in i + 1..n {
            if q.get(i, j) != 0 {
                adj[i].push(j);
                adj[j].push(i);
                edges += 1;
            }
        }
    }
    // a graph is a forest iff edges = vertices - components
    let mut seen = vec![false; n];
    let mut comps = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        comps += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    (edges + comps == n).then_some(adj)
}

/// Rooted forest: parents and a vertex order with children after parents.
fn rooted(adj: &[Vec<usize>]) -> (Vec<Option<usize>>, Vec<usize>) {
    let n = adj.len();
    let mut parent = vec![None; n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    stack.push(w);
                }
            }
        }
    }
    (parent, order)
}

/// Exact solve of `Q x = b` for a forest-shaped `Q` by leaf elimination.
fn forest_solve(
    q: &IntSymMatrix,
    parent: &[Option<usize>],
    order: &[usize],
    b: &[ExactRational],
) -> Vec<ExactRational> {
    let n = q.rank();
    let mut piv: Vec<ExactRational> = (0..n).map(|i| rat(q.get(i, i), 1)).collect();
    let mut rhs = b.to_vec();
    for &v in order.iter().rev() {
        if let Some(u) = parent[v] {
            let a = rat(q.get(u, v), 1);
            let f = &a / &piv[v];
            piv[u] = &piv[u] - &f * &a;
            rhs[u] = &rhs[u] - &f * &rhs[v];
        }
    }
    let mut x: Vec<ExactRational> = vec![rat(0, 1); n];
    for &v in order {
        let mut r = rhs[v].clone();
        if let Some(u) = parent[v] {
            r -= rat(q.get(u, v), 1) * &x[u];
        }
        x[v] = r / &piv[v];
    }
    x
}

/// Maximal squares for a forest-shaped form (plumbing graphs), where the
/// hypercube is exponentially large. Each class is searched as
/// `c = c0 + 2Qy`, maximizing `h(y) = c0.y + yQy` by dynamic programming on
/// the forest over a window around the real optimum; the window is widened
/// until an exact bound shows no better `y` lies outside it.
pub fn sq_table_forest(form: &QuadraticForm) -> Option<SqTable> {
    let q = &form.q;
    let n = q.rank();
    let adj = forest(q)?;
    let (parent, order) = rooted(&adj);
    let presentation = cokernel(q).expect("definite form");
    let group = presentation.group.clone();
    let origin = characteristic_in_image(q);
    let lifts = presentation.lifts(n);
    // diagonal of -Q^{-1}
    let pinv: Vec<ExactRational> = (0..n)
        .map(|v| {
            let mut e = vec![rat(0, 1); n];
            e[v] = rat(1, 1);
            -forest_solve(q, &parent, &order, &e)[v].clone()
        })
        .collect();
    let mut sq = Vec::with_capacity(lifts.len());
    let mut reps = Vec::with_capacity(lifts.len());
    for lift in &lifts {
        let c0: Vec<i64> = origin.iter().zip(lift).map(|(o, l)| o + 2 * l).collect();
        let c0r: Vec<ExactRational> = c0.iter().map(|&v| rat(v, 1)).collect();
        let qc = forest_solve(q, &parent, &order, &c0r);
        let c0qc: ExactRational = c0r.iter().zip(&qc).map(|(a, b)| a * b).sum();
        let ystar: Vec<ExactRational> = qc.iter().map(|v| -v / rat(2, 1)).collect();
        let center: Vec<i64> = ystar
            .iter()
            .map(|v| v.round().to_integer().to_i64().unwrap())
            .collect();
        let hstar = -&c0qc / rat(4, 1);
        let mut k = 2i64;
        let (hbest, y) = loop {
            let (hbest, y) = tree_dp(q, &adj, &parent, &order, &c0, &center, k);
            let r = &hstar - rat(hbest as i64, 1);
            let covered = (0..n).all(|v| {
                let rho2 = &r * &pinv[v];
                let lo = &ystar[v] - rat(center[v] - k, 1);
                let hi = rat(center[v] + k, 1) - &ystar[v];
                let sign_ok = lo >= rat(0, 1) && hi >= rat(0, 1);
                sign_ok && &lo * &lo >= rho2 && &hi * &hi >= rho2
            });
            if covered {
                break (hbest, y);
            }
            k *= 2;
        };
        let qy = q.apply(&y);
        let c: Vec<i64> = c0.iter().zip(&qy).map(|(a, b)| a + 2 * b).collect();
        sq.push(c0qc + rat(4 * hbest as i64, 1));
        reps.push(c);
    }
    let jfixed = group
        .elements()
        .filter(|x| group.is_zero(&group.add(x, x)))
        .collect();
    Some(SqTable {
        form: form.clone(),
        presentation,
        sq,
        class_reps: reps,
        jfixed,
        origin,
    })
}

/// Maximizes `c0.y + yQy` over `|y_v - center_v| <= k` on a forest.
fn tree_dp(
    q: &IntSymMatrix,
    adj: &[Vec<usize>],
    parent: &[Option<usize>],
    order: &[usize],
    c0: &[i64],
    center: &[i64],
    k: i64,
) -> (i128, Vec<i64>) {
    let n = q.rank();
    let w = (2 * k + 1) as usize;
    let val = |v: usize, t: usize| center[v] - k + t as i64;
    // best[v][t]: best value of the subtree at v given y_v = val(v,t)
    let mut best = vec![vec![0i128; w]; n];
    // choice[c][t]: best index of child c given its parent's index t
    let mut choice = vec![vec![0usize; w]; n];
    for &v in order.iter().rev() {
        for t in 0..w {
            let y = val(v, t) as i128;
            let mut acc = q.get(v, v) as i128 * y * y + c0[v] as i128 * y;
            for &c in &adj[v] {
                if parent[c] != Some(v) {
                    continue;
                }
                let a = 2 * q.get(v, c) as i128 * y;
                let (mut bi, mut bv) = (0, i128::MIN);
                for s in 0..w {
                    let cand = best[c][s] + a * val(c, s) as i128;
                    if cand > bv {
                        bv = cand;
                        bi = s;
                    }
                }
                acc += bv;
                choice[c][t] = bi;
            }
            best[v][t] = acc;
        }
    }
    let mut idx = vec![0usize; n];
    let mut total = 0i128;
    for &v in order {
        match parent[v] {
            None => {
                let (bi, bv) = best[v]
                    .iter()
                    .enumerate()
                    .max_by_key(|(_, x)| **x)
                    .map(|(i, x)| (i, *x))
                    .unwrap();
                idx[v] = bi;
                total += bv;
            }
            Some(u) => idx[v] = choice[v][idx[u]],
        }
    }
    (total, (0..n).map(|v| val(v, idx[v])).collect())
}

/// Uses the forest search when the form is a forest, else the hypercube.
pub fn sq_table_auto(form: &QuadraticForm) -> SqTable {
    sq_table_forest(form).unwrap_or_else(|| sq_table(form))
}

/// A characteristic lattice point of the region `Ω_Q` with its class and
/// square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaPoint {
    pub covector: (i64, i64),
    pub class: GroupElement,
    pub square: ExactRational,
}

/// Characteristic points of `Ω_Q` for a reduced rank-2 form.
pub fn omega_points_rank2(a: i64, b: i64, c: i64) -> Result<Vec<OmegaPoint>> {
    if !(0 >= 2 * b && 2 * b >= a && a >= c && a * c - b * b > 0) {
        return Err(Error::NotReduced(format!("[[{a},{b}],[{b},{c}]]")));
    }
    let form = QuadraticForm::new(IntSymMatrix::from_rows(&[vec![a, b], vec![b, c]])?)?;
    let table = sq_table(&form);
    let s = a - 2 * b + c;
    let mut out = Vec::new();
    let mut x = a;
    while x < -a {
        let mut y = c;
        while y < -c {
            let diff = x - y;
            if s <= diff && diff < -s {
                out.push(OmegaPoint {
                    covector: (x, y),
                    class: table.class_of(&[x, y]),
                    square: table.square(&[x, y]),
                });
            }
            y += 2;
        }
        x += 2;
    }
    Ok(out)
}

/// `true` iff `sq` is `0` on the class of a characteristic zero covector.
pub fn is_even(q: &IntSymMatrix) -> bool {
    q.diag().iter().all(|d| d % 2 == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(rows: &[Vec<i64>]) -> QuadraticForm {
        QuadraticForm::new(IntSymMatrix::from_rows(rows).unwrap()).unwrap()
    }

    fn sorted_sq(t: &SqTable) -> Vec<ExactRational> {
        let mut v = t.sq.clone();
        v.sort();
        v
    }

    #[test]
    fn rank2_reduced_examples() {
        let f: Vec<IntSymMatrix> = enumerate_rank2_reduced(3)
            .into_iter()
            .map(|f| f.q)
            .collect();
        assert_eq!(f.len(), 2);
        assert!(f.contains(&IntSymMatrix::diagonal(&[-1, -3])));
        assert!(f.contains(&IntSymMatrix::from_rows(&[vec![-2, -1], vec![-1, -2]]).unwrap()));
        let f = enumerate_rank2_reduced(1);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].q, IntSymMatrix::diagonal(&[-1, -1]));
        let fives: Vec<IntSymMatrix> = enumerate_rank2_reduced(25)
            .into_iter()
            .map(|f| f.q)
            .filter(|q| q.get(0, 0) % 5 == 0 && q.get(0, 1) % 5 == 0 && q.get(1, 1) % 5 == 0)
            .collect();
        assert_eq!(fives, vec![IntSymMatrix::diagonal(&[-5, -5])]);
    }

    #[test]
    fn small_enumerations() {
        let f = enumerate_definite_forms(1, 7, None).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].q, IntSymMatrix::diagonal(&[-7]));
        let f = enumerate_definite_forms(4, 1, None).unwrap();
        assert_eq!(f.len(), 1);
        assert!(forms_equivalent(&f[0].q, &IntSymMatrix::diagonal(&[-1; 4])));
        assert_eq!(enumerate_definite_forms(2, 3, None).unwrap().len(), 2);
        assert_eq!(enumerate_definite_forms(0, 1, None).unwrap().len(), 1);
        assert!(enumerate_definite_forms(0, 2, None).unwrap().is_empty());
        assert_eq!(
            enumerate_definite_forms(5, 1, None),
            Err(Error::RankUnsupported(5))
        );
    }

    #[test]
    fn rank3_det1_and_det2() {
        // odd unimodular lattices of rank <= 7 are diagonal
        assert_eq!(enumerate_definite_forms(3, 1, None).unwrap().len(), 1);
        // rank 3 det 2: I_2 + [2] and A_1-free variants; classes are I2+<2>
        let f = enumerate_definite_forms(3, 2, None).unwrap();
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn equivalence_examples() {
        let a = IntSymMatrix::diagonal(&[-1, -3]);
        let b = IntSymMatrix::from_rows(&[vec![-2, -1], vec![-1, -2]]).unwrap();
        assert!(!forms_equivalent(&a, &b));
        let u = vec![vec![1, 2, 0], vec![0, 1, -1], vec![1, 3, 0]];
        let q = IntSymMatrix::from_rows(&[vec![-2, 1, 0], vec![1, -3, 1], vec![0, 1, -4]]).unwrap();
        assert!(forms_equivalent(&q, &q.congruent(&u)));
    }

    #[test]
    fn sq_table_examples() {
        let t = sq_table(&form(&[vec![-3]]));
        assert_eq!(sorted_sq(&t), vec![rat(-3, 1), rat(-1, 3), rat(-1, 3)]);
        assert_eq!(t.jfixed.len(), 1);
        assert_eq!(t.sq_of(&t.jfixed[0]), &rat(-3, 1));

        let t = sq_table(&form(&[vec![-1, 0], vec![0, -3]]));
        assert_eq!(sorted_sq(&t), vec![rat(-4, 1), rat(-4, 3), rat(-4, 3)]);
        let t = sq_table(&form(&[vec![-2, -1], vec![-1, -2]]));
        assert_eq!(sorted_sq(&t), vec![rat(-8, 3), rat(-8, 3), rat(0, 1)]);
        let t = sq_table(&QuadraticForm::new(IntSymMatrix::diagonal(&[-1; 4])).unwrap());
        assert_eq!(t.sq, vec![rat(-4, 1)]);
    }

    #[test]
    fn rank_one_closed_form() {
        for s in 1..=30i64 {
            let t = sq_table(&form(&[vec![-s]]));
            for i in 0..s {
                let c = 2 * i - s;
                assert_eq!(t.sq_of(&t.class_of(&[c])), &rat(-(c * c), s));
            }
        }
    }

    #[test]
    fn omega_examples() {
        let pts = omega_points_rank2(-1, 0, -3).unwrap();
        let cov: Vec<(i64, i64)> = pts.iter().map(|p| p.covector).collect();
        assert_eq!(cov, vec![(-1, -3), (-1, -1), (-1, 1)]);
        let sq: Vec<ExactRational> = pts.iter().map(|p| p.square.clone()).collect();
        assert_eq!(sq, vec![rat(-4, 1), rat(-4, 3), rat(-4, 3)]);
        let pts = omega_points_rank2(-2, -1, -2).unwrap();
        let mut cov: Vec<(i64, i64)> = pts.iter().map(|p| p.covector).collect();
        cov.sort();
        assert_eq!(cov, vec![(-2, -2), (-2, 0), (0, 0)]);
        let pts = omega_points_rank2(-1, 0, -1).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].square, rat(-2, 1));
        assert!(omega_points_rank2(-3, 0, -1).is_err());
    }
}
