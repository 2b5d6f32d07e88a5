use definite_bounds::algebra::{matrix::det_i64, signature_i64};
use definite_bounds::dinv::{correction_table, lens_table};
use definite_bounds::links::*;
use definite_bounds::obstruction::SearchOptions;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn link(s: &str) -> LinkDescriptor {
    s.parse().unwrap()
}

/// Coefficients of `det(M - t M^T)` by interpolation, with leading and trailing zeros removed and a positive lead.
fn alexander(m: &[Vec<i64>]) -> Vec<BigInt> {
    let a = m.len();
    let vals: Vec<BigInt> = (0..=a as i64)
        .map(|t| {
            let x: Vec<Vec<i64>> = (0..a)
                .map(|i| (0..a).map(|j| m[i][j] - t * m[j][i]).collect())
                .collect();
            det_i64(&x)
        })
        .collect();
    // Newton forward differences, then expand into monomials
    let n = vals.len();
    let mut coef = vec![num_rational::BigRational::zero(); n];
    let mut table = vals.clone();
    let mut basis = vec![num_rational::BigRational::from_integer(1.into())];
    let mut fact = BigInt::from(1);
    for k in 0..n {
        if k > 0 {
            fact *= k;
            for i in 0..n - k {
                table[i] = &table[i + 1] - &table[i];
            }
        }
        let c = num_rational::BigRational::new(table[0].clone(), fact.clone());
        for (i, b) in basis.iter().enumerate() {
            coef[i] += &c * b;
        }
        // basis *= (t - k)
        let mut next = vec![num_rational::BigRational::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b;
            next[i] -= b * num_rational::BigRational::from_integer(k.into());
        }
        basis = next;
    }
    let mut out: Vec<BigInt> = coef.into_iter().map(|c| c.to_integer()).collect();
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    while out.first().is_some_and(|c| c.is_zero()) {
        out.remove(0);
    }
    if out.last().is_some_and(|c| c.is_negative()) {
        out.iter_mut().for_each(|c| *c = -c.clone());
    }
    out
}

#[test]
fn ten_one_four_five() {
    let d = link("M(1;3/1,3/1,5/2)");
    assert_eq!(component_count(&d).unwrap(), 1);
    assert_eq!(d.determinant(), 3);
    assert_eq!(signature(&d).unwrap(), 2);
    let m = seifert_matrix(&d).unwrap();
    let reference = vec![
        vec![1, -1, -1, 0],
        vec![0, 1, -1, 0],
        vec![0, 0, 1, -1],
        vec![0, 0, 0, 1],
    ];
    assert_eq!(m.size(), 4);
    assert_eq!(alexander(&m.m), alexander(&reference));
    assert_eq!(det_i64(&m.symmetrized()).abs(), BigInt::from(3));
    let t = link_taylor_bracket(&d, DEFAULT_TAYLOR_BOUND).unwrap();
    assert_eq!(t.exact(), Some(1));
    let g = genus_obstruction(&d, SearchOptions::default()).unwrap();
    assert_eq!(g.orientation_used, CoverOrientation::MinusY);
    assert_eq!(g.conclusion(), "g* > 1");
    assert_eq!(
        d.double_cover().unwrap().to_string(),
        "Y(-1;(3,1),(3,1),(5,2))"
    );
}

#[test]
fn pretzel_with_noncyclic_cover() {
    let d = link("M(1;5/2,5/2,5/2)");
    assert_eq!(component_count(&d).unwrap(), 1);
    assert_eq!(d.determinant(), 25);
    assert_eq!(signature(&d).unwrap(), 4);
    let g = genus_obstruction(&d, SearchOptions::default()).unwrap();
    assert_eq!(g.conclusion(), "g* > 2");
}

#[test]
fn table_signatures_and_components() {
    assert_eq!(invariants(&link("S(107,28)"), None).unwrap().sigma, -2);
    assert_eq!(invariants(&link("S(107,42)"), None).unwrap().sigma, 2);
    assert_eq!(signature(&link("M(0;2/1,2/1,3/2)")).unwrap(), -1);
    assert_eq!(component_count(&link("M(-1;2/1,2/1,5/2)")).unwrap(), 2);
    let f8 = link("S(5,3)");
    assert_eq!((signature(&f8).unwrap(), f8.determinant()), (0, 5));
    let s = seifert_matrix(&f8).unwrap();
    assert_eq!(det_i64(&s.symmetrized()).abs(), BigInt::from(5));
}

#[test]
fn e_only_diagram_is_a_twisted_band() {
    let sd = build_diagram(&link("M(3;)")).unwrap();
    assert_eq!(sd.diagram.crossings(), 3);
    assert_eq!(sd.diagram.component_count(), 1);
}

#[test]
fn two_bridge_rules_hold() {
    for p in 2..=120i64 {
        for q in 1..p {
            if q.gcd(&p) != 1 {
                continue;
            }
            let d = LinkDescriptor::two_bridge(p, q).unwrap();
            let sd = build_diagram(&d).unwrap();
            assert_eq!(
                sd.diagram.component_count(),
                two_bridge_components(p),
                "S({p},{q})"
            );
            if p <= 60 && p % 2 == 1 {
                assert_eq!(
                    two_bridge_signature(p, q).unwrap(),
                    signature(&d).unwrap(),
                    "S({p},{q})"
                );
            }
        }
    }
}

#[test]
fn two_bridge_cover_is_the_lens_space() {
    for p in 2..=30i64 {
        for q in 1..p {
            if q.gcd(&p) != 1 {
                continue;
            }
            let d = LinkDescriptor::two_bridge(p, q).unwrap();
            let a = correction_table(&d.double_cover().unwrap()).unwrap();
            let b = lens_table(p, q).unwrap();
            assert_eq!(a.sorted_values(), b.sorted_values(), "S({p},{q})");
        }
    }
}

#[test]
fn orientation_sensitivity() {
    let d = link("M(5;2/1,2/1,2/1)");
    let r = d.reflect();
    assert_eq!(r, link("M(-2;2/1,2/1,2/1)"));
    for (x, want) in [(&d, true), (&r, false)] {
        let inv = invariants(x, None).unwrap();
        assert_eq!((inv.mu, inv.sigma), (3, -2));
        assert_eq!(
            genus_obstruction(x, SearchOptions::default())
                .unwrap()
                .obstructed(),
            want
        );
    }
}

#[test]
fn knots_with_equal_alexander_polynomials() {
    let a = link("S(187,101)");
    let b = link("S(187,117)");
    assert_eq!(a.determinant(), b.determinant());
    let ga = genus_obstruction(&a, SearchOptions::default()).unwrap();
    let gb = genus_obstruction(&b, SearchOptions::default()).unwrap();
    assert_eq!(ga.b, 2);
    assert!(ga.obstructed());
    assert!(!gb.obstructed());
}

#[test]
fn slice_checks() {
    assert!(!slice_check(&link("S(9,2)")).unwrap().obstructed);
    for p in [3i64, 5, 7, 11, 13] {
        assert!(
            slice_check(&LinkDescriptor::two_bridge(p, 1).unwrap())
                .unwrap()
                .obstructed
        );
    }
    assert!(slice_check(&link("S(92,33)")).is_err());
}

/// `q` with `S(m^2, q)` in the known ribbon families, closed under `q -> -q` and `q -> q^{-1}`.
fn ribbon_family(m: i64) -> std::collections::BTreeSet<i64> {
    let p = m * m;
    let mut base = Vec::new();
    for k in 1..m {
        if k.gcd(&m) == 1 {
            base.extend([m * k + 1, m * k - 1]);
        }
    }
    for s in [1i64, -1] {
        for d in 2..=2 * m + 1 {
            if (2 * m - s) % d == 0 || (d % 2 == 1 && (m + s) % d == 0) {
                base.push(d * (m + s));
            }
        }
    }
    let mut out = std::collections::BTreeSet::new();
    for q in base.into_iter().map(|q| q.rem_euclid(p)) {
        if q != 0 && q.gcd(&p) == 1 {
            let qi = mod_inverse(q, p);
            out.extend([q, p - q, qi, p - qi]);
        }
    }
    out
}

// Consistency log for S(t^2, q), t <= 30 odd: the rational ball test is
// silent exactly on the ribbon families.
#[test]
fn slice_verdicts_match_ribbon_families() {
    let mut agree = 0;
    let mut disagree = Vec::new();
    for m in (3..=30i64).step_by(2) {
        let p = m * m;
        let family = ribbon_family(m);
        let mut silent = 0;
        for q in (1..p).filter(|q| q.gcd(&p) == 1) {
            let open = !slice_check(&LinkDescriptor::two_bridge(p, q).unwrap())
                .unwrap()
                .obstructed;
            silent += open as usize;
            if open == family.contains(&q) {
                agree += 1;
            } else {
                disagree.push(format!("S({p},{q})"));
            }
        }
        println!(
            "t={m}: {silent} unobstructed, {} in ribbon families",
            family.len()
        );
    }
    println!("agree {agree}, disagree {}", disagree.len());
    assert!(disagree.is_empty(), "{disagree:?}");
}

#[test]
fn tristram_levine_at_minus_one_is_the_signature() {
    for s in [
        "M(1;3/1,3/1,5/2)",
        "S(67,39)",
        "S(92,33)",
        "M(0;3/1,5/2,5/3)",
    ] {
        let d = link(s);
        assert_eq!(
            tristram_levine_signature(&d, 2, 1).unwrap(),
            signature(&d).unwrap()
        );
    }
    assert!(tristram_levine_signature(&link("S(5,3)"), 1, 0).is_err());
}

fn montesinos_strategy() -> impl Strategy<Value = LinkDescriptor> {
    (
        -3i64..=3,
        prop::collection::vec((2i64..=6, 1i64..=11), 1..=3),
    )
        .prop_filter_map("valid", |(e, raw)| {
            let d = LinkDescriptor::montesinos(e, raw).ok()?;
            (d.determinant() != 0).then_some(d)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn spanning_surface_invariants(d in montesinos_strategy()) {
        let m = seifert_matrix(&d).unwrap();
        let sym = m.symmetrized();
        prop_assert_eq!(det_i64(&sym).abs(), BigInt::from(d.determinant()));
        let sigma = signature_i64(&sym);
        prop_assert_eq!(sigma, goeritz_backend_signature(&d).unwrap());
        let mu = component_count(&d).unwrap() as i64;
        // Murasugi parity
        prop_assert_eq!((sigma.abs() - mu + 1).rem_euclid(2), 0);
        if mu == 1 {
            let anti: Vec<Vec<i64>> = (0..m.size()).map(|i| (0..m.size()).map(|j| m.m[i][j] - m.m[j][i]).collect()).collect();
            prop_assert_eq!(det_i64(&anti).abs(), BigInt::from(1));
            prop_assert_eq!(signature(&d.reflect()).unwrap(), -sigma);
        }
    }

    #[test]
    fn equivalent_names_give_the_same_link(d in montesinos_strategy(), i in 0usize..3, k in -2i64..=2) {
        let LinkDescriptor::Montesinos { e, pairs } = d.clone() else { unreachable!() };
        let i = i % pairs.len();
        let mut moved = pairs.clone();
        moved[i].1 += k * moved[i].0;
        let d2 = LinkDescriptor::montesinos(e + k, moved).unwrap();
        prop_assert_eq!(d.canonical(), d2.canonical());
        prop_assert_eq!(d.determinant(), d2.determinant());
        prop_assert_eq!(component_count(&d).unwrap(), component_count(&d2).unwrap());
        prop_assert_eq!(signature(&d).unwrap(), signature(&d2).unwrap());
    }

    #[test]
    fn reflection_negates_the_cover(d in montesinos_strategy()) {
        let a = correction_table(&d.double_cover().unwrap()).unwrap();
        let b = correction_table(&d.reflect().double_cover().unwrap()).unwrap();
        prop_assert_eq!(a.sorted_values(), b.negated().sorted_values());
        prop_assert_eq!(d.reflect().reflect().canonical(), d.canonical());
    }

    #[test]
    fn descriptor_round_trip(d in montesinos_strategy()) {
        prop_assert_eq!(d.to_string().parse::<LinkDescriptor>().unwrap(), d);
    }
}
