use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::snf::{smith_normal_form, BigMatrix};
use crate::algebra::matrix::IntSymMatrix;
use crate::error::{Error, Result};

/// Finite abelian group `Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ... | d_k`,
/// each `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinAbGroup {
    factors: Vec<u64>,
}

/// Element of a [`FinAbGroup`], one residue per invariant factor. Elements
/// carry no back-reference; the owning group interprets the coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

impl GroupElement {
    pub fn new(coords: Vec<u64>) -> Self {
        GroupElement { coords }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FinAbGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        let ok = factors.iter().all(|&d| d >= 2) && factors.windows(2).all(|w| w[1] % w[0] == 0);
        if !ok {
            return Err(Error::InvalidFactors(factors));
        }
        Ok(FinAbGroup { factors })
    }

    pub fn trivial() -> Self {
        FinAbGroup { factors: vec![] }
    }

    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            FinAbGroup { factors: vec![n] }
        }
    }

    /// Normal form of `Z/n_1 + ... + Z/n_k` for arbitrary positive `n_i`.
    pub fn from_orders(orders: &[u64]) -> Self {
        let rel: BigMatrix = (0..orders.len())
            .map(|i| {
                (0..orders.len())
                    .map(|j| {
                        if i == j {
                            BigInt::from(orders[i])
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        presentation(&rel).expect("positive orders").group
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::new(vec![0; self.factors.len()])
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement::new(
            self.factors
                .iter()
                .zip(x.coords.iter().zip(&y.coords))
                .map(|(&d, (&a, &b))| (a + b) % d)
                .collect(),
        )
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        GroupElement::new(
            self.factors
                .iter()
                .zip(&x.coords)
                .map(|(&d, &a)| (d - a) % d)
                .collect(),
        )
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, x: &GroupElement, k: i64) -> GroupElement {
        GroupElement::new(
            self.factors
                .iter()
                .zip(&x.coords)
                .map(|(&d, &a)| {
                    let d = d as i128;
                    ((a as i128 * k as i128).rem_euclid(d)) as u64
                })
                .collect(),
        )
    }

    /// Reduces integer coordinates into the group.
    pub fn reduce(&self, coords: &[i64]) -> GroupElement {
        GroupElement::new(
            self.factors
                .iter()
                .zip(coords)
                .map(|(&d, &a)| a.rem_euclid(d as i64) as u64)
                .collect(),
        )
    }

    pub fn is_zero(&self, x: &GroupElement) -> bool {
        x.coords.iter().all(|&c| c == 0)
    }

    pub fn element_order(&self, x: &GroupElement) -> u64 {
        self.factors
            .iter()
            .zip(&x.coords)
            .map(|(&d, &a)| d / num_integer::gcd(d, a))
            .fold(1, num_integer::lcm)
    }

    /// Mixed-radix index in `0..order()`.
    pub fn index_of(&self, x: &GroupElement) -> usize {
        let mut idx = 0usize;
        for (&d, &a) in self.factors.iter().zip(&x.coords) {
            idx = idx * d as usize + a as usize;
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut coords = vec![0u64; self.factors.len()];
        for (i, &d) in self.factors.iter().enumerate().rev() {
            coords[i] = (idx % d as usize) as u64;
            idx /= d as usize;
        }
        GroupElement::new(coords)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order() as usize).map(move |i| self.element_at(i))
    }

    /// Standard generators `e_i`.
    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.factors.len())
            .map(|i| {
                let mut c = vec![0; self.factors.len()];
                c[i] = 1;
                GroupElement::new(c)
            })
            .collect()
    }

    /// Whether some subgroup of `self` is isomorphic to `sub`: the invariant
    /// factors, aligned from the largest, must divide.
    pub fn admits_subgroup(&self, sub: &FinAbGroup) -> bool {
        if sub.factors.len() > self.factors.len() {
            return false;
        }
        sub.factors
            .iter()
            .rev()
            .zip(self.factors.iter().rev())
            .all(|(&s, &g)| g % s == 0)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// A finite abelian group presented as `Z^n / (column span of R)`, with the
/// projection from `Z^n`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub group: FinAbGroup,
    /// One row per invariant factor: the coordinate functional on `Z^n`.
    pub projection: Vec<Vec<i64>>,
}

impl Presentation {
    /// A lift in `Z^n` of every group element, indexed by element index,
    /// found by breadth-first search over images of the standard basis.
    pub fn lifts(&self, n: usize) -> Vec<Vec<i64>> {
        let g = &self.group;
        let order = g.order() as usize;
        let mut lift: Vec<Option<Vec<i64>>> = vec![None; order];
        lift[0] = Some(vec![0; n]);
        let basis: Vec<GroupElement> = (0..n)
            .map(|j| {
                let mut e = vec![0i64; n];
                e[j] = 1;
                self.project(&e)
            })
            .collect();
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let x = g.element_at(i);
            let base = lift[i].clone().unwrap();
            for (j, b) in basis.iter().enumerate() {
                let k = g.index_of(&g.add(&x, b));
                if lift[k].is_none() {
                    let mut v = base.clone();
                    v[j] += 1;
                    lift[k] = Some(v);
                    queue.push_back(k);
                }
            }
        }
        lift.into_iter()
            .map(|v| v.expect("basis generates"))
            .collect()
    }

    pub fn project(&self, x: &[i64]) -> GroupElement {
        let coords: Vec<i64> = self
            .projection
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect();
        self.group.reduce(&coords)
    }
}

/// Quotient of `Z^n` by the columns of `relations` (an `n x m` matrix).
/// Fails if the quotient is infinite.
pub fn presentation(relations: &BigMatrix) -> Result<Presentation> {
    let n = relations.len();
    let snf = smith_normal_form(relations);
    let diag = snf.diagonal();
    if diag.len() < n || diag.iter().any(|d| d.is_zero()) {
        return Err(Error::DegenerateForm);
    }
    let mut factors = Vec::new();
    let mut projection = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        let d = d.to_u64().expect("invariant factor fits u64");
        if d > 1 {
            factors.push(d);
            projection.push(
                snf.u[i]
                    .iter()
                    .map(|x| {
                        let r = x % BigInt::from(d);
                        r.to_i64().unwrap()
                    })
                    .collect(),
            );
        }
    }
    Ok(Presentation {
        group: FinAbGroup::new(factors)?,
        projection,
    })
}

/// `Z^n / Q Z^n` with its projection.
pub fn cokernel(q: &IntSymMatrix) -> Result<Presentation> {
    if q.rank() == 0 {
        return Ok(Presentation {
            group: FinAbGroup::trivial(),
            projection: vec![],
        });
    }
    presentation(&q.to_big())
}

/// Subgroup stored as its sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.members
    }

    pub fn elements(&self, g: &FinAbGroup) -> Vec<GroupElement> {
        self.members.iter().map(|&i| g.element_at(i)).collect()
    }

    pub fn contains(&self, g: &FinAbGroup, x: &GroupElement) -> bool {
        self.members.binary_search(&g.index_of(x)).is_ok()
    }
}

fn cyclic_subgroup(g: &FinAbGroup, x: &GroupElement) -> BTreeSet<usize> {
    let mut set = BTreeSet::new();
    let mut cur = g.zero();
    loop {
        if !set.insert(g.index_of(&cur)) {
            break;
        }
        cur = g.add(&cur, x);
    }
    set
}

fn join(g: &FinAbGroup, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for &i in a {
        let x = g.element_at(i);
        for &j in b {
            out.insert(g.index_of(&g.add(&x, &g.element_at(j))));
        }
    }
    out
}

/// Every subgroup of `g`, sorted by order then by members.
pub fn all_subgroups(g: &FinAbGroup) -> Vec<Subgroup> {
    let cyclics: BTreeSet<BTreeSet<usize>> = g.elements().map(|x| cyclic_subgroup(g, &x)).collect();
    let mut found: BTreeSet<BTreeSet<usize>> = cyclics.clone();
    let mut frontier: Vec<BTreeSet<usize>> = cyclics.iter().cloned().collect();
    // every subgroup needs at most num_factors generators
    for _ in 1..g.num_factors().max(1) {
        let mut next = Vec::new();
        for s in &frontier {
            for c in &cyclics {
                if c.is_subset(s) {
                    continue;
                }
                let j = join(g, s, c);
                if found.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut subs: Vec<Subgroup> = found
        .into_iter()
        .map(|s| Subgroup {
            members: s.into_iter().collect(),
        })
        .collect();
    subs.sort_by(|a, b| a.members.len().cmp(&b.members.len()).then(a.cmp(b)));
    subs
}

pub fn subgroups_of_order(g: &FinAbGroup, k: u64) -> Vec<Subgroup> {
    if k == 0 || g.order() % k != 0 {
        return vec![];
    }
    if k == 1 {
        return vec![Subgroup { members: vec![0] }];
    }
    if k == g.order() {
        return vec![Subgroup {
            members: (0..g.order() as usize).collect(),
        }];
    }
    if g.num_factors() == 1 {
        // the unique subgroup of order k in Z/n: multiples of n/k
        let step = g.order() / k;
        let mut members: Vec<usize> = (0..k)
            .map(|i| {
                g.index_of(&GroupElement {
                    coords: vec![i * step],
                })
            })
            .collect();
        members.sort_unstable();
        return vec![Subgroup { members }];
    }
    all_subgroups(g)
        .into_iter()
        .filter(|s| s.order() as u64 == k)
        .collect()
}

pub fn two_torsion(g: &FinAbGroup) -> Vec<GroupElement> {
    g.elements().filter(|x| g.is_zero(&g.add(x, x))).collect()
}

/// `G / T` with the map sending each element index of `G` to its coset.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FinAbGroup,
    /// `coset_of[i]` is the quotient element of `g.element_at(i)`.
    pub coset_of: Vec<GroupElement>,
    /// For each quotient element index, one lift into `G`.
    pub lift: Vec<GroupElement>,
}

pub fn quotient(g: &FinAbGroup, t: &Subgroup) -> Quotient {
    let k = g.num_factors();
    let mut cols: Vec<Vec<i64>> = Vec::new();
    for (i, &d) in g.factors().iter().enumerate() {
        let mut c = vec![0i64; k];
        c[i] = d as i64;
        cols.push(c);
    }
    for x in t.elements(g) {
        cols.push(x.coords.iter().map(|&v| v as i64).collect());
    }
    let rel: BigMatrix = (0..k)
        .map(|r| cols.iter().map(|c| BigInt::from(c[r])).collect())
        .collect();
    let pres = if k == 0 {
        Presentation {
            group: FinAbGroup::trivial(),
            projection: vec![],
        }
    } else {
        presentation(&rel).expect("finite quotient")
    };
    let coset_of: Vec<GroupElement> = g
        .elements()
        .map(|x| {
            let v: Vec<i64> = x.coords.iter().map(|&c| c as i64).collect();
            pres.project(&v)
        })
        .collect();
    let qg = pres.group.clone();
    let mut lift: Vec<Option<GroupElement>> = vec![None; qg.order() as usize];
    for (i, c) in coset_of.iter().enumerate() {
        let slot = &mut lift[qg.index_of(c)];
        if slot.is_none() {
            *slot = Some(g.element_at(i));
        }
    }
    Quotient {
        group: qg,
        coset_of,
        lift: lift.into_iter().map(|x| x.expect("surjective")).collect(),
    }
}

/// Homomorphism given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: FinAbGroup,
    pub target: FinAbGroup,
    pub images: Vec<GroupElement>,
    pub injective: bool,
}

impl GroupHom {
    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        let mut acc = self.target.zero();
        for (img, &c) in self.images.iter().zip(&x.coords) {
            acc = self.target.add(&acc, &self.target.scale(img, c as i64));
        }
        acc
    }

    pub fn kernel(&self) -> Vec<GroupElement> {
        self.source
            .elements()
            .filter(|x| self.target.is_zero(&self.apply(x)))
            .collect()
    }
}

/// All homomorphisms `S -> H` (or only the injective ones).
pub fn homomorphisms(s: &FinAbGroup, h: &FinAbGroup, injective_only: bool) -> Vec<GroupHom> {
    if injective_only && !h.admits_subgroup(s) {
        return vec![];
    }
    let candidates: Vec<Vec<GroupElement>> = s
        .factors()
        .iter()
        .map(|&d| {
            h.elements()
                .filter(|y| h.is_zero(&h.scale(y, d as i64)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; candidates.len()];
    loop {
        let images: Vec<GroupElement> = choice
            .iter()
            .zip(&candidates)
            .map(|(&c, cand)| cand[c].clone())
            .collect();
        let mut hom = GroupHom {
            source: s.clone(),
            target: h.clone(),
            images,
            injective: false,
        };
        hom.injective = hom.kernel().len() == 1;
        if hom.injective || !injective_only {
            out.push(hom);
        }
        // odometer
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[u64]) -> FinAbGroup {
        FinAbGroup::new(f.to_vec()).unwrap()
    }

    #[test]
    fn validates_factors() {
        assert!(FinAbGroup::new(vec![2, 3]).is_err());
        assert!(FinAbGroup::new(vec![1]).is_err());
        assert_eq!(FinAbGroup::from_orders(&[2, 3]), g(&[6]));
        assert_eq!(FinAbGroup::from_orders(&[4, 6]), g(&[2, 12]));
    }

    #[test]
    fn cokernel_examples() {
        let c = cokernel(&IntSymMatrix::diagonal(&[-1, -3])).unwrap();
        assert_eq!(c.group, g(&[3]));
        let c = cokernel(&IntSymMatrix::from_rows(&[vec![-2, -1], vec![-1, -2]]).unwrap()).unwrap();
        assert_eq!(c.group, g(&[3]));
        let c = cokernel(&IntSymMatrix::diagonal(&[-5, -5])).unwrap();
        assert_eq!(c.group, g(&[5, 5]));
        assert_eq!(
            cokernel(&IntSymMatrix::diagonal(&[-1, 0])).unwrap_err(),
            Error::DegenerateForm
        );
    }

    #[test]
    fn cokernel_kernel_is_image() {
        let q = IntSymMatrix::from_rows(&[vec![-2, -1], vec![-1, -2]]).unwrap();
        let p = cokernel(&q).unwrap();
        for col in 0..2 {
            let v: Vec<i64> = (0..2).map(|r| q.get(r, col)).collect();
            assert!(p.group.is_zero(&p.project(&v)));
        }
        assert!(!p.group.is_zero(&p.project(&[1, 0])));
    }

    #[test]
    fn subgroup_examples() {
        let s = subgroups_of_order(&g(&[4]), 2);
        assert_eq!(s.len(), 1);
        assert_eq!(
            s[0].elements(&g(&[4])),
            vec![GroupElement::new(vec![0]), GroupElement::new(vec![2])]
        );
        assert_eq!(subgroups_of_order(&g(&[5, 5]), 5).len(), 6);
        let s = subgroups_of_order(&g(&[12]), 3);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].indices(), &[0, 4, 8]);
        assert!(subgroups_of_order(&g(&[12]), 5).is_empty());
    }

    #[test]
    fn cyclic_groups_have_one_subgroup_per_divisor() {
        for n in 1..=40u64 {
            let grp = FinAbGroup::cyclic(n);
            for k in 1..=n {
                let expected = if n % k == 0 { 1 } else { 0 };
                let fast = subgroups_of_order(&grp, k);
                assert_eq!(fast.len(), expected, "n={n} k={k}");
                let slow: Vec<Subgroup> = all_subgroups(&grp)
                    .into_iter()
                    .filter(|s| s.order() as u64 == k)
                    .collect();
                assert_eq!(fast, slow, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn noncyclic_subgroup_counts() {
        // Z/2+Z/4 has subgroups of orders 1,2,2,2,4,4,4,8
        let grp = g(&[2, 4]);
        let counts: Vec<usize> = [1, 2, 4, 8]
            .iter()
            .map(|&k| subgroups_of_order(&grp, k).len())
            .collect();
        assert_eq!(counts, vec![1, 3, 3, 1]);
        // (Z/2)^3: 1, 7, 7, 1
        let grp = g(&[2, 2, 2]);
        let counts: Vec<usize> = [1, 2, 4, 8]
            .iter()
            .map(|&k| subgroups_of_order(&grp, k).len())
            .collect();
        assert_eq!(counts, vec![1, 7, 7, 1]);
    }

    #[test]
    fn hom_examples() {
        let z3 = g(&[3]);
        let homs = homomorphisms(&z3, &z3, true);
        assert_eq!(homs.len(), 2);
        assert!(homomorphisms(&g(&[2]), &z3, true).is_empty());
        assert_eq!(homomorphisms(&g(&[2]), &z3, false).len(), 1);
        let z55 = g(&[5, 5]);
        assert_eq!(homomorphisms(&z55, &z55, true).len(), 480);
    }

    #[test]
    fn homs_respect_addition() {
        let s = g(&[2, 4]);
        let h = g(&[4, 8]);
        for f in homomorphisms(&s, &h, false) {
            for x in s.elements() {
                for y in s.elements() {
                    assert_eq!(f.apply(&s.add(&x, &y)), h.add(&f.apply(&x), &f.apply(&y)));
                }
            }
        }
    }

    #[test]
    fn two_torsion_examples() {
        assert_eq!(two_torsion(&g(&[3])), vec![GroupElement::new(vec![0])]);
        assert_eq!(
            two_torsion(&g(&[12])),
            vec![GroupElement::new(vec![0]), GroupElement::new(vec![6])]
        );
        let t = two_torsion(&g(&[2, 4]));
        let want: Vec<GroupElement> = [[0, 0], [0, 2], [1, 0], [1, 2]]
            .iter()
            .map(|c| GroupElement::new(c.to_vec()))
            .collect();
        assert_eq!(t, want);
    }

    #[test]
    fn quotient_orders() {
        let grp = g(&[3, 9]);
        for sub in all_subgroups(&grp) {
            let q = quotient(&grp, &sub);
            assert_eq!(q.group.order() as usize * sub.order(), grp.order() as usize);
            for (i, c) in q.coset_of.iter().enumerate() {
                let x = grp.element_at(i);
                let l = &q.lift[q.group.index_of(c)];
                assert!(sub.contains(&grp, &grp.sub(&x, l)));
            }
        }
    }
}
