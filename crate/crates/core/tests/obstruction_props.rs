use definite_bounds::algebra::{homomorphisms, rat};
use definite_bounds::dinv::*;
use definite_bounds::obstruction::*;
use definite_bounds::qforms::QuadraticForm;
use num_integer::Integer;
use proptest::prelude::*;

fn reversed_cover(e: i64, pairs: Vec<(i64, i64)>) -> CorrectionTable {
    correction_table(&SeifertData::new(e, pairs).unwrap())
        .unwrap()
        .negated()
}

#[test]
fn ten_one_four_five() {
    let t = reversed_cover(-1, vec![(3, 1), (3, 1), (5, 2)]);
    let r = check_bound(&t, 2).unwrap();
    assert!(r.obstructed);
    assert!(r.witness.is_none());
}

#[test]
fn noncyclic_example_both_branches() {
    let t = reversed_cover(-1, vec![(5, 2); 3]);
    assert!(check_bound(&t, 4).unwrap().obstructed);
    // unimodular branch: the only class is -I with sq = -4, so d >= 0 is
    // needed at the spin element, where d = -1
    assert_eq!(t.d_of(&t.group.zero()), &rat(-1, 1));
    // determinant-25 branch: at most 6 elements have d >= 0
    assert_eq!(t.d.iter().filter(|v| **v >= rat(0, 1)).count(), 6);
}

#[test]
fn lens_spaces_bound_their_plumbings() {
    for p in 2..=30i64 {
        assert!(
            !check_bound(&lens_table(p, 1).unwrap(), 1)
                .unwrap()
                .obstructed
        );
        for q in 1..p {
            if p.gcd(&q) != 1 {
                continue;
            }
            let g = PlumbingGraph::linear(p, q);
            let b = g.weights.len();
            let t = lens_table(p, q).unwrap();
            let r = if b <= 4 {
                check_bound(&t, b).unwrap()
            } else {
                let f = QuadraticForm::new(g.form()).unwrap();
                check_bound_candidates(&t, b, &[f], SearchOptions::default()).unwrap()
            };
            assert!(!r.obstructed, "L({p},{q}) b={b}");
        }
    }
}

#[test]
fn rational_ball_l92() {
    let t = lens_table(9, 2).unwrap();
    let (origin, coset) = rational_ball_witness(&t).unwrap();
    // relabel back to recursion labels: element x is label 5 + x
    let label = |x: &definite_bounds::algebra::GroupElement| (5 + x.coords[0]) % 9;
    assert_eq!(label(&origin), 5);
    let mut labels: Vec<u64> = coset.iter().map(label).collect();
    labels.sort();
    assert_eq!(labels, vec![2, 5, 8]);
}

#[test]
fn origin_may_be_a_non_spin_coset_fixed_by_conjugation() {
    // H = Z/104, T = {0, 52}: the passing origin o has 2o = 52, so o + T is
    // conjugation invariant without containing a spin structure
    let t = reversed_cover(0, vec![(3, 2), (4, 3), (4, 3)]);
    let r = check_bound(&t, 1).unwrap();
    assert!(!r.obstructed);
    let w = r.witness.unwrap();
    assert_eq!(w.factorization.t, 2);
    let g = &t.group;
    assert!(!g.scale(&w.origin, 2).coords.iter().all(|c| *c == 0));
    let no_orbits = SearchOptions {
        orbit_reduction: false,
    };
    assert_eq!(check_single(&t, 1, &w, no_orbits), (true, None));
    // the unreversed cover is obstructed
    let y = correction_table(&SeifertData::new(0, vec![(3, 2), (4, 3), (4, 3)]).unwrap()).unwrap();
    assert!(check_bound(&y, 1).unwrap().obstructed);
}

fn relabel(t: &CorrectionTable, phi: &definite_bounds::algebra::GroupHom) -> CorrectionTable {
    let g = &t.group;
    let d = g
        .elements()
        .map(|x| t.d_of(&phi.apply(&x)).clone())
        .collect();
    CorrectionTable::from_values(g.clone(), d, t.reversed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn verdicts_are_relabelling_invariant(p in 2i64..40, q in 1i64..40, b in 1usize..=3, k in 0usize..1000) {
        prop_assume!(q < p && p.gcd(&q) == 1);
        let t = lens_table(p, q).unwrap();
        let auts = homomorphisms(&t.group, &t.group, true);
        let phi = &auts[k % auts.len()];
        let r1 = check_bound(&t, b).unwrap().obstructed;
        let r2 = check_bound(&relabel(&t, phi), b).unwrap().obstructed;
        prop_assert_eq!(r1, r2);
    }

    #[test]
    fn orbit_reduction_changes_nothing(p in 2i64..60, q in 1i64..60, b in 1usize..=3, neg in any::<bool>()) {
        prop_assume!(q < p && p.gcd(&q) == 1);
        let mut t = lens_table(p, q).unwrap();
        if neg { t = t.negated(); }
        let fast = check_bound_with(&t, b, SearchOptions { orbit_reduction: true }).unwrap();
        let slow = check_bound_with(&t, b, SearchOptions { orbit_reduction: false }).unwrap();
        prop_assert_eq!(fast.obstructed, slow.obstructed);
    }

    #[test]
    fn rational_ball_ignores_orientation(p in 2i64..200, q in 1i64..200) {
        prop_assume!(q < p && p.gcd(&q) == 1);
        let t = lens_table(p, q).unwrap();
        prop_assert_eq!(check_rational_ball(&t).obstructed, check_rational_ball(&t.negated()).obstructed);
    }

    #[test]
    fn d_rho_min_ignores_lift(p in 2i64..60, q in 1i64..60, pick in 0usize..100) {
        prop_assume!(q < p && p.gcd(&q) == 1);
        let t = lens_table(p, q).unwrap();
        let g = &t.group;
        let divisors: Vec<u64> = (1..=p as u64).filter(|d| p as u64 % d == 0).collect();
        let order = divisors[pick % divisors.len()];
        let sub = definite_bounds::algebra::subgroups_of_order(g, order).pop().unwrap();
        let x = g.element_at(pick % p as usize);
        let base = d_rho_min(&t, &sub, &g.zero(), &x);
        for tau in sub.elements(g) {
            prop_assert_eq!(&d_rho_min(&t, &sub, &g.zero(), &g.add(&x, &tau)), &base);
        }
    }
}
