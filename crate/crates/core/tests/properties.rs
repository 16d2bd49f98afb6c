mod common;

use std::sync::OnceLock;

use common::*;
use detq_core::cohomology::CurveAnalysis;
use detq_core::hilbert::binom;
use detq_core::linalg;
use detq_core::resolution::{koszul_betti, minimal_resolution_betti};
use detq_core::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = Rationals;

fn q3() -> RingRef<Q> {
    Ring::new(Rationals, &["x", "y", "z"], MonoOrder::Grevlex).unwrap().into_ref()
}

fn poly_strategy() -> impl Strategy<Value = Vec<([u16; 3], i64)>> {
    prop::collection::vec(([0u16..4, 0u16..4, 0u16..4], -20i64..20), 0..6)
}

fn build(r: &Ring<Q>, terms: &[([u16; 3], i64)]) -> Poly<<Q as Field>::Elem> {
    r.from_terms(terms.iter().map(|(e, c)| (Mono::from_exps(e), r.field().from_i64(*c))))
}

fn entries<F: Field>(m: &PolyMatrix<F>) -> Vec<Poly<F::Elem>> {
    (0..m.nrows()).flat_map(|i| m.row(i).to_vec()).collect()
}

fn fixtures() -> &'static Vec<(&'static str, Ideal<PrimeField>)> {
    static F: OnceLock<Vec<(&'static str, Ideal<PrimeField>)>> = OnceLock::new();
    F.get_or_init(|| {
        let r = p3(fp());
        let ci = Ideal::parse(r.clone(), "x^4 + y^4 + z*w^3, x*y*z*w - z^4 + w^4").unwrap();
        let union = d2_union(&r, &mut ChaCha8Rng::seed_from_u64(0));
        vec![
            ("twisted cubic", twisted_cubic(&r)),
            ("acm", acm(&r)),
            ("d1", d1(&r)),
            ("quartic ci", ci),
            ("sextic union", union),
        ]
    })
}

fn curves() -> &'static Vec<(&'static str, Ideal<PrimeField>, &'static str)> {
    static C: OnceLock<Vec<(&'static str, Ideal<PrimeField>, &'static str)>> = OnceLock::new();
    C.get_or_init(|| {
        let r = p3(fp());
        vec![("acm", acm(&r), "ACM"), ("d1", d1(&r), "D1-semicanonical"), ("d2", d2(&r, 0), "D2-on-cubic")]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws(a in poly_strategy(), b in poly_strategy(), c in poly_strategy(), seed in any::<u64>()) {
        let r = q3();
        let (p, q, s) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(r.add(&r.add(&p, &q), &s), r.add(&p, &r.add(&q, &s)));
        prop_assert_eq!(r.mul(&p, &r.add(&q, &s)), r.add(&r.mul(&p, &q), &r.mul(&p, &s)));
        prop_assert_eq!(r.mul(&p, &q), r.mul(&q, &p));
        prop_assert!(r.add(&p, &r.neg(&p)).is_zero());
        let mut shuffled = a.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(build(&r, &shuffled), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn determinant_alternates(entries in prop::collection::vec(prop::collection::vec(-5i64..5, 3), 9), i in 0usize..3, j in 0usize..3) {
        prop_assume!(i != j);
        let r = q3();
        let rows: Vec<Vec<_>> = entries
            .chunks(3)
            .map(|row| {
                row.iter()
                    .map(|cs| r.from_terms(cs.iter().enumerate().map(|(v, c)| (Mono::var(v), r.field().from_i64(*c)))))
                    .collect()
            })
            .collect();
        let m = PolyMatrix::from_rows(r.clone(), rows).unwrap();
        let mut swapped = m.clone();
        swapped.swap_rows(i, j);
        prop_assert_eq!(swapped.determinant().unwrap(), r.neg(&m.determinant().unwrap()));
    }

    #[test]
    fn tensor_flip_contracts_consistently(a in 1usize..5, b in 1usize..5, c in 1usize..5, seed in any::<u64>()) {
        let f = fp();
        let names = |p: &str, n: usize| (0..n).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
        let src = Ring::new(f, &names("x", c), MonoOrder::Grevlex).unwrap().into_ref();
        let tgt = Ring::new(f, &names("t", a), MonoOrder::Grevlex).unwrap().into_ref();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vars: Vec<_> = (0..c).map(|v| src.var(v)).collect();
        let rows = (0..a).map(|_| (0..b).map(|_| combo(&src, &vars, &mut rng)).collect()).collect();
        let m = PolyMatrix::from_rows(src.clone(), rows).unwrap();
        let n = m.tensor_flip(tgt.clone()).unwrap();
        prop_assert_eq!((n.nrows(), n.ncols()), (c, b));
        prop_assert_eq!(entries(&n.tensor_flip(src.clone()).unwrap()), entries(&m));

        let p: Vec<u32> = (0..c).map(|_| f.random(&mut rng)).collect();
        let q: Vec<u32> = (0..a).map(|_| f.random(&mut rng)).collect();
        let contract = |mat: Vec<Vec<u32>>, w: &[u32]| -> Vec<u32> {
            (0..b).map(|j| w.iter().zip(&mat).fold(0, |acc, (wi, row)| f.add(&acc, &f.mul(wi, &row[j])))).collect()
        };
        let lhs = contract(m.eval(&p), &q);
        let rhs = contract(n.eval(&q), &p);
        prop_assert_eq!(linalg::rank(&f, &[lhs.clone()]), linalg::rank(&f, &[rhs.clone()]));
        prop_assert_eq!(lhs, rhs);

        // the coefficient flattenings along the shared b-axis have equal rank
        let t = m.linear_tensor().unwrap();
        let flat_m: Vec<Vec<u32>> = (0..b).map(|j| (0..a).flat_map(|i| (0..c).map(move |v| (i, v))).map(|(i, v)| t[i][j][v]).collect()).collect();
        let s = n.linear_tensor().unwrap();
        let flat_n: Vec<Vec<u32>> = (0..b).map(|j| (0..c).flat_map(|v| (0..a).map(move |i| (v, i))).map(|(v, i)| s[v][j][i]).collect()).collect();
        prop_assert_eq!(linalg::rank(&f, &flat_m), linalg::rank(&f, &flat_n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn groebner_basis_ignores_generator_order(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (name, i) in fixtures() {
            let mut gens = i.gens().to_vec();
            gens.shuffle(&mut rng);
            let shuffled = Ideal::new(i.ring().clone(), gens).unwrap();
            prop_assert_eq!(shuffled.groebner().unwrap(), i.groebner().unwrap(), "{}", name);
        }
    }

    #[test]
    fn quotient_times_divisor_lands_in_ideal(seed in any::<u64>(), which in 0usize..5, nlin in 1usize..3) {
        let (_, i) = &fixtures()[which];
        let r = i.ring().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vars: Vec<_> = (0..4).map(|v| r.var(v)).collect();
        let j = Ideal::new(r.clone(), (0..nlin).map(|_| combo(&r, &vars, &mut rng)).collect()).unwrap();
        let q = i.quotient(&j).unwrap();
        for a in q.gens() {
            for b in j.gens() {
                prop_assert!(i.contains(&r.mul(a, b)).unwrap());
            }
        }
    }

    #[test]
    fn hilbert_function_matches_counting(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (name, i) in fixtures() {
            let h = i.hilbert().unwrap();
            for _ in 0..5 {
                let m = rand::Rng::gen_range(&mut rng, 0..9i64);
                let ambient = binom(m + 3, 3) as i64;
                let counted = ambient - i.graded_piece(m as u32).unwrap().len() as i64;
                prop_assert_eq!(h.hilbert_function(m), counted, "{} at {}", name, m);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn liaison_degrees_add(seed in any::<u64>()) {
        let r = p3(fp());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cases = [
            (twisted_cubic(&r), 2u32),
            (acm(&r), 4),
            (d2_union(&r, &mut ChaCha8Rng::seed_from_u64(seed)), 4),
        ];
        for (c, deg) in cases {
            let forms = c.graded_piece(deg).unwrap();
            let f = combo(&r, &forms, &mut rng);
            let g = combo(&r, &forms, &mut rng);
            let res = c.linked_ideal(&f, &g).unwrap();
            let (d, e) = (c.hilbert().unwrap().degree, res.hilbert().unwrap().degree);
            prop_assert_eq!(d + e, (deg * deg) as i64);
        }
    }
}

#[test]
fn saturation_is_idempotent() {
    for (name, i) in fixtures() {
        let s = i.saturate_irrelevant().unwrap();
        let ss = s.saturate_irrelevant().unwrap();
        assert!(s.same_ideal(&ss).unwrap(), "{name}");
        let m = Ideal::irrelevant(i.ring().clone());
        assert!(s.saturate(&m).unwrap().same_ideal(&s).unwrap(), "{name}");
    }
}

#[test]
fn betti_numerator_matches_hilbert_numerator() {
    for (name, i) in fixtures() {
        let b = minimal_resolution_betti(i).unwrap();
        assert_eq!(b.numerator(), i.hilbert().unwrap().numerator, "{name}");
        assert_eq!(b, koszul_betti(i).unwrap(), "{name}");
    }
}

#[test]
fn cohomology_euler_characteristic_in_window() {
    for (name, c, _) in curves() {
        let a = CurveAnalysis::new(c).unwrap();
        let t = a.cohomology(cohomology::DEFAULT_WINDOW).unwrap();
        for k in t.twists() {
            assert_eq!(t.euler_defect(k), 0, "{name} at {k}");
        }
        let alt: i64 = (0..4).map(|i| if i % 2 == 0 { t.get(i, 4) } else { -t.get(i, 4) }).sum();
        assert_eq!(alt, 5, "{name}");
    }
}

#[test]
fn hartshorne_rao_lengths() {
    let expect = [(0, None), (1, Some(2)), (1, Some(3))];
    for ((name, c, _), (len, at)) in curves().iter().zip(expect) {
        let hr = cohomology::hartshorne_rao(c).unwrap();
        assert_eq!(hr.length, len, "{name}");
        if let Some(k) = at {
            assert_eq!(hr.dims.get(&k), Some(&1), "{name}");
        }
    }
}

#[test]
fn classification_survives_coordinate_changes() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for (name, c, tag) in curves() {
        assert_eq!(cohomology::classify_curve(c).unwrap().tag.label(), *tag, "{name}");
        let r = c.ring().clone();
        for _ in 0..5 {
            let images = random_linear_change(&r, &mut rng);
            let moved = c.substitute_linear(&images).unwrap();
            assert_eq!(cohomology::classify_curve(&moved).unwrap().tag.label(), *tag, "{name}");
        }
    }
}

#[test]
fn liaison_decomposition_for_small_twists() {
    let r = p3(fp());
    let c = acm(&r);
    let quartics = c.graded_piece(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f = combo(&r, &quartics, &mut rng);
    let g = combo(&r, &quartics, &mut rng);
    let a = CurveAnalysis::new(&c).unwrap();
    let res = CurveAnalysis::new(&c.linked_ideal(&f, &g).unwrap()).unwrap();
    for m in 0..=6 {
        let rep = a.liaison_report_with(&res, &f, &g, m).unwrap();
        assert!(rep.decomposition_holds, "m = {m}");
        assert_eq!(rep.h0_curve, rep.h0_ci + rep.w_residual);
    }
}

#[test]
fn golden_numbers_agree_across_fields() {
    let (rq, rp) = (p3(Rationals), p3(fp()));
    let (dq, dp) = (d1(&rq), d1(&rp));
    let (hq, hp) = (dq.hilbert().unwrap(), dp.hilbert().unwrap());
    assert_eq!((hq.degree, hq.genus, hq.numerator.clone()), (hp.degree, hp.genus, hp.numerator.clone()));
    assert_eq!(dq.power_saturated(3).unwrap().graded_piece_dim(11).unwrap(), dp.power_saturated(3).unwrap().graded_piece_dim(11).unwrap());
    assert_eq!(minimal_resolution_betti(&dq).unwrap(), minimal_resolution_betti(&dp).unwrap());
    let (aq, ap) = (acm(&rq), acm(&rp));
    for m in 0..=6 {
        assert_eq!(aq.graded_piece_dim(m).unwrap(), ap.graded_piece_dim(m).unwrap(), "acm at {m}");
    }
    assert_eq!(minimal_resolution_betti(&aq).unwrap(), minimal_resolution_betti(&ap).unwrap());
}
