//! Decides whether a rational homology sphere can bound a negative definite
//! four-manifold with given `b_2`, by exhausting filling data.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::ToPrimitive;

use crate::algebra::{
    homomorphisms, quotient, subgroups_of_order, ExactRational, GroupElement, GroupHom, Subgroup,
};
use crate::dinv::CorrectionTable;
use crate::error::Result;
use crate::qforms::{enumerate_definite_forms, sq_table_auto, QuadraticForm, SqTable};

/// `h = s t^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub h: u64,
    pub s: u64,
    pub t: u64,
}

pub fn factorizations(h: u64) -> Vec<Factorization> {
    (1..)
        .take_while(|t| t * t <= h)
        .filter(|t| h % (t * t) == 0)
        .map(|t| Factorization {
            h,
            s: h / (t * t),
            t,
        })
        .collect()
}

/// One choice of filling data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combination {
    pub factorization: Factorization,
    /// Elements of the subgroup `T` of `H`.
    pub t_subgroup: Vec<GroupElement>,
    pub form: QuadraticForm,
    pub rho: GroupHom,
    /// Offset with `2 origin` in `T`, so `origin + T` is closed under conjugation.
    pub origin: GroupElement,
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "s={} t={} Q={} origin={} rho=[",
            self.factorization.s, self.factorization.t, self.form.q, self.origin
        )?;
        for (i, x) in self.rho.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub combinations: u64,
    pub forms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub obstructed: bool,
    pub b: usize,
    pub witness: Option<Combination>,
    pub stats: SearchStats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Check one representative of each `{a, -a}` pair.
    pub orbit_reduction: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            orbit_reduction: true,
        }
    }
}

/// Exact rational as a reduced `i128` fraction, for fast comparisons.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Frac {
    num: i128,
    den: i128,
}

impl Frac {
    fn from(x: &ExactRational) -> Self {
        Frac {
            num: x.numer().to_i128().expect("numerator fits i128"),
            den: x.denom().to_i128().expect("denominator fits i128"),
        }
    }

    fn cmp(&self, o: &Frac) -> Ordering {
        (self.num * o.den).cmp(&(o.num * self.den))
    }
}

/// `min { d(origin + lift + tau) : tau in T }`.
pub fn d_rho_min(
    table: &CorrectionTable,
    t: &Subgroup,
    origin: &GroupElement,
    lift: &GroupElement,
) -> ExactRational {
    let g = &table.group;
    let base = g.add(origin, lift);
    t.elements(g)
        .iter()
        .map(|tau| table.d_of(&g.add(&base, tau)).clone())
        .min()
        .expect("subgroup is nonempty")
}

/// Minima of `d(origin + .)` over each coset of `T`, indexed by quotient
/// element index.
fn coset_minima(
    table: &CorrectionTable,
    t: &Subgroup,
    origin: &GroupElement,
) -> (crate::algebra::Quotient, Vec<Frac>) {
    let g = &table.group;
    let q = quotient(g, t);
    let mut mins: Vec<Option<Frac>> = vec![None; q.group.order() as usize];
    for x in g.elements() {
        let k = q.group.index_of(&q.coset_of[g.index_of(&x)]);
        let v = Frac::from(table.d_of(&g.add(origin, &x)));
        if mins[k].is_none_or(|m| v.cmp(&m) == Ordering::Less) {
            mins[k] = Some(v);
        }
    }
    (q, mins.into_iter().map(|m| m.unwrap()).collect())
}

/// A form with its square table in comparison-ready form.
pub struct FormEntry {
    pub form: QuadraticForm,
    pub table: SqTable,
    sq: Vec<Frac>,
    /// Element indices to check: all, or one per `{a, -a}` pair.
    reps: Vec<usize>,
    all: Vec<usize>,
}

impl FormEntry {
    pub fn new(form: QuadraticForm) -> Self {
        let table = sq_table_auto(&form);
        let g = table.group().clone();
        let sq = table.sq.iter().map(Frac::from).collect();
        let all: Vec<usize> = (0..g.order() as usize).collect();
        let reps = all
            .iter()
            .copied()
            .filter(|&i| i <= g.index_of(&g.neg(&g.element_at(i))))
            .collect();
        FormEntry {
            form,
            table,
            sq,
            reps,
            all,
        }
    }
}

type FormCache = Mutex<HashMap<(usize, u64), Arc<Vec<FormEntry>>>>;

fn cache() -> &'static FormCache {
    static CACHE: OnceLock<FormCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Forms of the given rank and `|det|` with square tables, memoized.
pub fn forms_with_tables(rank: usize, det: u64) -> Result<Arc<Vec<FormEntry>>> {
    if let Some(v) = cache().lock().unwrap().get(&(rank, det)) {
        return Ok(v.clone());
    }
    let entries: Vec<FormEntry> = enumerate_definite_forms(rank, det, None)?
        .into_iter()
        .map(FormEntry::new)
        .collect();
    let arc = Arc::new(entries);
    cache().lock().unwrap().insert((rank, det), arc.clone());
    Ok(arc)
}

/// Tests `sq(a) + b <= 4 d_rho(a)` for every `a`; returns the first failure.
pub fn check_single(
    table: &CorrectionTable,
    b: usize,
    combo: &Combination,
    opts: SearchOptions,
) -> (bool, Option<GroupElement>) {
    let g = &table.group;
    let t = subgroup_from(g, &combo.t_subgroup);
    let sqt = sq_table_auto(&combo.form);
    let s = sqt.group();
    let elems: Vec<GroupElement> = s
        .elements()
        .filter(|a| !opts.orbit_reduction || s.index_of(a) <= s.index_of(&s.neg(a)))
        .collect();
    let q = quotient(g, &t);
    for a in elems {
        let image = combo.rho.apply(&a);
        let lift = &q.lift[q.group.index_of(&image)];
        let m = d_rho_min(table, &t, &combo.origin, lift);
        let lhs = sqt.sq_of(&a) + ExactRational::from_integer((b as i64).into());
        if lhs > m * ExactRational::from_integer(4.into()) {
            return (false, Some(a));
        }
    }
    (true, None)
}

fn subgroup_from(g: &crate::algebra::FinAbGroup, elems: &[GroupElement]) -> Subgroup {
    subgroups_of_order(g, elems.len() as u64)
        .into_iter()
        .find(|s| elems.iter().all(|x| s.contains(g, x)))
        .expect("elements form a subgroup")
}

/// Representatives mod `T` of the `o` whose coset `o + T` is closed under
/// conjugation, i.e. `2o` in `T` with spin structures at the labels `2x = 0`.
fn origins(table: &CorrectionTable, t: &Subgroup) -> Vec<GroupElement> {
    let g = &table.group;
    let mut out: Vec<GroupElement> = Vec::new();
    for o in g.elements() {
        if !t.contains(g, &g.scale(&o, 2)) {
            continue;
        }
        if !out.iter().any(|p| t.contains(g, &g.sub(&o, p))) {
            out.push(o.clone());
        }
    }
    out
}

/// Exhausts factorizations, subgroups, forms, origins and monomorphisms;
/// obstructed iff every combination fails.
pub fn check_bound(table: &CorrectionTable, b: usize) -> Result<ObstructionReport> {
    check_bound_with(table, b, SearchOptions::default())
}

pub fn check_bound_with(
    table: &CorrectionTable,
    b: usize,
    opts: SearchOptions,
) -> Result<ObstructionReport> {
    if b == 0 {
        return Ok(check_rational_ball(table));
    }
    search(table, b, opts, |s| forms_with_tables(b, s))
}

/// The same search restricted to an explicit list of candidate forms, for
/// ranks beyond the enumeration range. A pass is a genuine witness; an
/// obstruction only rules out the given forms.
pub fn check_bound_candidates(
    table: &CorrectionTable,
    b: usize,
    candidates: &[QuadraticForm],
    opts: SearchOptions,
) -> Result<ObstructionReport> {
    let entries: Vec<FormEntry> = candidates
        .iter()
        .filter(|f| f.rank() == b)
        .cloned()
        .map(FormEntry::new)
        .collect();
    let mut by_det: HashMap<u64, Vec<FormEntry>> = HashMap::new();
    for e in entries {
        by_det.entry(e.form.det_abs).or_default().push(e);
    }
    let by_det: HashMap<u64, Arc<Vec<FormEntry>>> =
        by_det.into_iter().map(|(k, v)| (k, Arc::new(v))).collect();
    search(table, b, opts, |s| {
        Ok(by_det.get(&s).cloned().unwrap_or_default())
    })
}

fn search(
    table: &CorrectionTable,
    b: usize,
    opts: SearchOptions,
    forms_for: impl Fn(u64) -> Result<Arc<Vec<FormEntry>>>,
) -> Result<ObstructionReport> {
    let g = &table.group;
    let four = Frac { num: 4, den: 1 };
    let mut stats = SearchStats::default();
    for f in factorizations(g.order()) {
        let forms = forms_for(f.s)?;
        if forms.is_empty() {
            continue;
        }
        for t in subgroups_of_order(g, f.t) {
            for origin in origins(table, &t) {
                let (q, mins) = coset_minima(table, &t, &origin);
                for entry in forms.iter() {
                    let s = entry.table.group();
                    if !q.group.admits_subgroup(s) {
                        continue;
                    }
                    stats.forms += 1;
                    let idx = if opts.orbit_reduction {
                        &entry.reps
                    } else {
                        &entry.all
                    };
                    for rho in homomorphisms(s, &q.group, true) {
                        stats.combinations += 1;
                        let pass = idx.iter().all(|&i| {
                            let img = rho.apply(&s.element_at(i));
                            let m = mins[q.group.index_of(&img)];
                            let sq = entry.sq[i];
                            // sq + b <= 4 m
                            let lhs = Frac {
                                num: sq.num + b as i128 * sq.den,
                                den: sq.den,
                            };
                            let rhs = Frac {
                                num: four.num * m.num,
                                den: m.den,
                            };
                            lhs.cmp(&rhs) != Ordering::Greater
                        });
                        if pass {
                            return Ok(ObstructionReport {
                                obstructed: false,
                                b,
                                witness: Some(Combination {
                                    factorization: f,
                                    t_subgroup: t.elements(g),
                                    form: entry.form.clone(),
                                    rho,
                                    origin,
                                }),
                                stats,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(ObstructionReport {
        obstructed: true,
        b,
        witness: None,
        stats,
    })
}

/// Result of the rational ball test, with the vanishing coset if found.
pub fn rational_ball_witness(table: &CorrectionTable) -> Option<(GroupElement, Vec<GroupElement>)> {
    let g = &table.group;
    let h = g.order();
    let t = (1..=h).find(|t| t * t >= h)?;
    if t * t != h {
        return None;
    }
    let zero = ExactRational::from_integer(0.into());
    for sub in subgroups_of_order(g, t) {
        for o in origins(table, &sub) {
            let elems = sub.elements(g);
            if elems.iter().all(|b| table.d_of(&g.add(&o, b)) == &zero) {
                return Some((o.clone(), elems.iter().map(|b| g.add(&o, b)).collect()));
            }
        }
    }
    None
}

/// `b_2 = 0`: unobstructed iff `|H| = t^2` and `d` vanishes on `t_0 + T` for
/// some subgroup `T` of order `t` and some conjugation-invariant coset `t_0 + T`.
pub fn check_rational_ball(table: &CorrectionTable) -> ObstructionReport {
    let found = rational_ball_witness(table);
    let witness = found.map(|(origin, coset)| {
        let g = &table.group;
        let t = coset.len() as u64;
        let form = QuadraticForm::new(crate::algebra::IntSymMatrix::zero(0)).unwrap();
        let trivial = crate::algebra::FinAbGroup::trivial();
        Combination {
            factorization: Factorization {
                h: g.order(),
                s: 1,
                t,
            },
            t_subgroup: coset.iter().map(|x| g.sub(x, &origin)).collect(),
            form,
            rho: GroupHom {
                source: trivial,
                target: g.clone(),
                images: vec![],
                injective: true,
            },
            origin,
        }
    });
    ObstructionReport {
        obstructed: witness.is_none(),
        b: 0,
        witness,
        stats: SearchStats::default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, FinAbGroup, IntSymMatrix};
    use crate::dinv::lens_table;

    fn table(vals: &[(i64, i64)]) -> CorrectionTable {
        CorrectionTable::from_values(
            FinAbGroup::cyclic(vals.len() as u64),
            vals.iter().map(|&(n, d)| rat(n, d)).collect(),
            false,
        )
    }

    #[test]
    fn factorization_examples() {
        let f = |h| {
            factorizations(h)
                .into_iter()
                .map(|f| (f.s, f.t))
                .collect::<Vec<_>>()
        };
        assert_eq!(f(3), vec![(3, 1)]);
        assert_eq!(f(25), vec![(25, 1), (1, 5)]);
        assert_eq!(f(36), vec![(36, 1), (9, 2), (4, 3), (1, 6)]);
    }

    #[test]
    fn d_rho_min_examples() {
        let l = lens_table(9, 2).unwrap();
        let g = &l.group;
        let t = subgroups_of_order(g, 3).pop().unwrap();
        assert_eq!(d_rho_min(&l, &t, &g.zero(), &g.zero()), rat(0, 1));
        let triv = subgroups_of_order(g, 1).pop().unwrap();
        let x = g.element_at(4);
        assert_eq!(&d_rho_min(&l, &triv, &g.zero(), &x), l.d_of(&x));
    }

    fn combo(t: &CorrectionTable, q: IntSymMatrix, rho_img: Vec<GroupElement>) -> Combination {
        let form = QuadraticForm::new(q).unwrap();
        let s = crate::qforms::sq_table(&form).group().clone();
        let g = t.group.clone();
        Combination {
            factorization: Factorization {
                h: g.order(),
                s: g.order(),
                t: 1,
            },
            t_subgroup: vec![g.zero()],
            form,
            rho: GroupHom {
                source: s,
                target: g.clone(),
                images: rho_img,
                injective: true,
            },
            origin: g.zero(),
        }
    }

    #[test]
    fn single_checks() {
        let l = lens_table(3, 1).unwrap();
        let g = l.group.clone();
        let c = combo(&l, IntSymMatrix::diagonal(&[-3]), vec![g.element_at(1)]);
        assert_eq!(
            check_single(&l, 1, &c, SearchOptions::default()),
            (true, None)
        );

        let y = table(&[(-3, 2), (-1, 6), (-1, 6)]);
        for img in [1, 2] {
            let c = combo(
                &y,
                IntSymMatrix::diagonal(&[-1, -3]),
                vec![g.element_at(img)],
            );
            assert_eq!(
                check_single(&y, 2, &c, SearchOptions::default()),
                (false, Some(g.zero()))
            );
            let c = combo(
                &y,
                IntSymMatrix::from_rows(&[vec![-2, -1], vec![-1, -2]]).unwrap(),
                vec![g.element_at(img)],
            );
            assert_eq!(
                check_single(&y, 2, &c, SearchOptions::default()),
                (false, Some(g.zero()))
            );
        }
    }

    #[test]
    fn bound_examples() {
        let y = table(&[(-3, 2), (-1, 6), (-1, 6)]);
        assert!(check_bound(&y, 2).unwrap().obstructed);
        for p in 2..=30 {
            let r = check_bound(&lens_table(p, 1).unwrap(), 1).unwrap();
            assert!(!r.obstructed, "L({p},1)");
            assert_eq!(r.witness.unwrap().form.q, IntSymMatrix::diagonal(&[-p]));
        }
    }

    #[test]
    fn rational_ball_examples() {
        let l = lens_table(9, 2).unwrap();
        let r = check_rational_ball(&l);
        assert!(!r.obstructed);
        assert!(check_rational_ball(&lens_table(3, 1).unwrap()).obstructed);
        // L(4,1) bounds a rational ball; d vanishes on the coset {1, 3}, which
        // is closed under conjugation but holds no spin structure
        let (origin, coset) = rational_ball_witness(&lens_table(4, 1).unwrap()).unwrap();
        assert_eq!(coset.len(), 2);
        assert!(origin.coords[0] % 2 == 1);
        for m in [5, 7] {
            // L(m^2, m - 1) bounds a rational ball
            let t = lens_table(m * m, m - 1).unwrap();
            assert!(!check_rational_ball(&t).obstructed);
        }
    }
}
