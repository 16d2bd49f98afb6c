use std::cmp::Ordering;

use detq_lattice::chambers::Chamber;
use detq_lattice::*;
use proptest::prelude::*;

const X: BlowupP3 = BlowupP3::new(10, 11);

fn class() -> impl Strategy<Value = DivisorClass> {
    (-50i64..50, -50i64..50).prop_map(|(n, k)| DivisorClass::new(n, k))
}

/// Expansion of `prod (n_i H - k_i E)` term by term.
fn triple_oracle(x: BlowupP3, a: DivisorClass, b: DivisorClass, c: DivisorClass) -> i64 {
    let (n, k) = ([a.n, b.n, c.n], [a.k, b.k, c.k]);
    let e3 = 2 - 2 * x.g - 4 * x.d;
    n[0] * n[1] * n[2] - x.d * (k[0] * k[1] * n[2] + k[0] * n[1] * k[2] + n[0] * k[1] * k[2])
        - k[0] * k[1] * k[2] * e3
}

/// `p/q < r/s` for positive denominators.
fn frac_lt(p: i64, q: i64, r: i64, s: i64) -> bool {
    (p as i128) * (s as i128) < (r as i128) * (q as i128)
}

/// Position of `d` against ray `r` by slope, with `E` at minus infinity.
fn slope_cmp(d: DivisorClass, r: DivisorClass) -> Ordering {
    match (d.n == 0, r.n == 0) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ if frac_lt(d.k, d.n, r.k, r.n) => Ordering::Less,
        _ if frac_lt(r.k, r.n, d.k, d.n) => Ordering::Greater,
        _ => Ordering::Equal,
    }
}

fn in_chamber_by_slope(c: &Chamber, d: DivisorClass) -> bool {
    let lo_ok = match slope_cmp(d, c.lower) {
        Ordering::Greater => true,
        Ordering::Equal => c.lower_closed,
        Ordering::Less => false,
    };
    let hi_ok = match slope_cmp(d, c.upper) {
        Ordering::Less => true,
        Ordering::Equal => c.upper_closed,
        Ordering::Greater => false,
    };
    lo_ok && hi_ok
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn chi_forms_agree_on_random_pairs(n in -100i64..=100, k in -100i64..=100) {
        prop_assert_eq!(chi_hrr(n, k).unwrap(), chi_closed(n, k));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn classification_matches_slopes(n in 0i64..200, k in -200i64..200, case in 0usize..3) {
        let table = chambers(CurveCase::ALL[case]);
        let d = DivisorClass::new(n, k);
        prop_assume!(table.is_effective(d));
        let rec = table.classify(d).unwrap();
        let hits: Vec<usize> = (0..table.chambers.len())
            .filter(|&i| in_chamber_by_slope(&table.chambers[i], d))
            .collect();
        prop_assert_eq!(hits, vec![rec.chamber]);
        prop_assert_eq!(&rec.base_locus, &table.chambers[rec.chamber].base_locus);
    }

    #[test]
    fn effective_cone_is_covered(n in -60i64..60, k in -60i64..60, case in 0usize..3) {
        let table = chambers(CurveCase::ALL[case]);
        let d = DivisorClass::new(n, k);
        let far = table.far_ray();
        let effective = (n, k) != (0, 0)
            && n >= 0
            && (n > 0 || k < 0)
            && (n == 0 || !frac_lt(far.k, far.n, k, n));
        prop_assert_eq!(table.classify(d).is_ok(), effective);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn flop_is_an_involution(d in class()) {
        prop_assert_eq!(flop_pushforward(flop_pushforward(d)), d);
    }

    #[test]
    fn triple_is_symmetric_and_trilinear(a in class(), b in class(), c in class(), dd in 1i64..20, g in 0i64..30) {
        let x = BlowupP3::new(dd, g);
        let v = x.triple(a, b, c);
        for (p, q, r) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
            prop_assert_eq!(x.triple(p, q, r), v);
        }
        prop_assert_eq!(v, triple_oracle(x, a, b, c));
    }

    #[test]
    fn iterated_triple_is_symmetric(
        coeffs in prop::collection::vec(-9i64..9, 12),
        secancy in 0i64..6,
        normal in -6i64..2,
    ) {
        let y = IteratedBlowup::new(X, vec![
            ExtraCenter::secant_line(secancy),
            ExtraCenter { genus: 0, h_degree: 2, e_degree: 1, normal_degree: normal },
        ]);
        let cls: Vec<Class> = coeffs
            .chunks(4)
            .map(|c| Class { h: c[0], e: c[1], extra: vec![c[2], c[3]] })
            .collect();
        let v = y.triple(&cls[0], &cls[1], &cls[2]).unwrap();
        prop_assert_eq!(y.triple(&cls[2], &cls[0], &cls[1]).unwrap(), v);
        prop_assert_eq!(y.triple(&cls[1], &cls[0], &cls[2]).unwrap(), v);
        // pulled-back classes see the base intersection form
        let base: Vec<DivisorClass> = cls.iter().map(|c| DivisorClass::new(c.h, -c.e)).collect();
        let pulled: Vec<Class> = base.iter().map(|&d| d.into()).collect();
        prop_assert_eq!(
            y.triple(&pulled[0], &pulled[1], &pulled[2]).unwrap(),
            X.triple(base[0], base[1], base[2])
        );
    }

    #[test]
    fn cremona_moves_preserve_invariants(d in 1i64..40, a in prop::collection::vec(0i64..15, 6)) {
        let c = SurfaceClass::new(d, a.try_into().unwrap());
        prop_assume!(lines().iter().all(|l| c.dot(l) >= 0));
        let (std, path) = c.reduce().unwrap();
        for w in path.windows(2) {
            prop_assert_eq!((w[1].degree(), w[1].genus()), (c.degree(), c.genus()));
            prop_assert!(w[1].d < w[0].d);
        }
        prop_assert!(std.is_standard());
        prop_assert_eq!(cubic_secant_tally(&c).values().sum::<usize>(), 27);
    }
}

#[test]
fn chi_forms_agree_on_grid() {
    for n in -15..=15 {
        for k in -15..=15 {
            assert_eq!(chi_hrr(n, k).unwrap(), chi_closed(n, k), "({n}, {k})");
        }
    }
}

#[test]
fn chamber_rays_ordered() {
    for case in CurveCase::ALL {
        let t = chambers(case);
        let rays = t.rays();
        for w in rays.windows(2) {
            assert!(w[0].cross(w[1]) > 0, "{case}: {} then {}", w[0], w[1]);
        }
        assert_eq!(rays[0], DivisorClass::E);
        assert_eq!(rays[1], DivisorClass::H);
        let nef = t.chambers.iter().find(|c| c.lower == DivisorClass::H).unwrap();
        assert_eq!(nef.base_locus, "empty");
        assert!(nef.lower_closed && nef.upper_closed);
        for (a, b) in t.chambers.iter().zip(&t.chambers[1..]) {
            assert_eq!(a.upper, b.lower);
            assert_ne!(a.upper_closed, b.lower_closed, "{case}: shared ray claimed twice or never");
        }
    }
}

#[test]
fn recorded_identities() {
    let (h, e, k) = (DivisorClass::H, DivisorClass::E, DivisorClass::anticanonical());
    let dc = DivisorClass::new;
    assert_eq!(X.cube(k), 4);
    assert_eq!(X.triple(h, k, k), 6);
    assert_eq!(X.triple(k, k, dc(8, 2)), 8);
    assert_eq!(X.triple(k, dc(3, 1), h), 2);
    assert_eq!(X.triple(dc(11, 3), dc(11, 3), h) - 20, 11);
    assert_eq!(X.triple(dc(11, 3), dc(11, 3), e) - 80, 40);
    assert_eq!(flop_pushforward(k), k);
}

#[test]
fn line_classes() {
    let k = SurfaceClass::anticanonical();
    let all = lines();
    assert_eq!(all.len(), 27);
    for l in &all {
        assert_eq!(l.dot(l), -1);
        assert_eq!(-l.dot(&k), -1);
    }
}
