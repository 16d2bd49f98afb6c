mod common;

use common::*;
use detq_core::cohomology::CurveAnalysis;
use detq_core::matrix::matrix_from_text;
use detq_core::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn acm_matrix_minors_define_curve() {
    let r = p3(fp());
    let c = acm(&r);
    let h = c.hilbert().unwrap();
    assert_eq!((h.codim, h.degree, h.genus), (2, 10, Some(11)));
    assert!(c.singular_locus_smooth(None).unwrap().smooth);
}

#[test]
fn acm_jacobian_rank_two_at_curve_points() {
    let r = p3(fp());
    let c = acm(&r);
    let gens = c.minimal_generators().unwrap();
    let jac = PolyMatrix::jacobian(r.clone(), &gens).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    for _ in 0..10 {
        let plane = combo(&r, &(0..4).map(|v| r.var(v)).collect::<Vec<_>>(), &mut rng);
        let section = c.add(&Ideal::new(r.clone(), vec![plane]).unwrap()).unwrap();
        for pt in rational_points(&section) {
            assert!(gens.iter().all(|g| r.eval(g, &pt) == 0));
            assert_eq!(jac.rank_at(&pt), 2);
            checked += 1;
        }
        if checked >= 3 {
            break;
        }
    }
    assert!(checked > 0, "no rational points found on any section");
}

#[test]
fn flipped_determinant_is_singular_along_twenty_nodes() {
    let r = p3(fp());
    let m = matrix_from_text(&r, ACM_MATRIX).unwrap();
    let r5 = Ring::new(fp(), &["a", "b", "c", "d", "e"], MonoOrder::Grevlex).unwrap().into_ref();
    let n = m.tensor_flip(r5.clone()).unwrap();
    assert_eq!((n.nrows(), n.ncols()), (4, 4));
    let det = n.determinant().unwrap();
    assert_eq!(r5.degree(&det), Some(4));
    let mut gens = vec![det.clone()];
    gens.extend((0..5).map(|v| r5.derivative(&det, v)));
    let nodes = Ideal::new(r5.clone(), gens).unwrap().saturate_irrelevant().unwrap();
    let h = nodes.hilbert().unwrap();
    assert_eq!((h.krull_dim, h.degree), (1, 20));
    assert!(nodes.contains(&det).unwrap());
    for pt in rational_points(&nodes) {
        assert_eq!(r5.eval(&det, &pt), 0);
    }
}

#[test]
fn flip_of_single_entry() {
    let r = Ring::new(Rationals, &["x"], MonoOrder::Grevlex).unwrap().into_ref();
    let t = Ring::new(Rationals, &["t1"], MonoOrder::Grevlex).unwrap().into_ref();
    let m = matrix_from_text(&r, "x").unwrap();
    let n = m.tensor_flip(t.clone()).unwrap();
    assert_eq!(t.render(n.get(0, 0)), "t1");
}

#[test]
fn jacobian_small_cases() {
    let r = Ring::new(Rationals, &["x", "y", "z", "w"], MonoOrder::Grevlex).unwrap().into_ref();
    let j = PolyMatrix::jacobian(r.clone(), &[parse::parse_poly(&r, "x*y - z*w").unwrap()]).unwrap();
    let row: Vec<String> = j.row(0).iter().map(|p| r.render(p)).collect();
    assert_eq!(row, ["y", "x", "-w", "-z"]);
    assert!(PolyMatrix::jacobian(r, &[]).is_err());
}

#[test]
fn tag_elimination_gives_principal_intersection() {
    let r = p3(Rationals);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let quads = Mono::all_of_degree(4, 2);
    let rand_quad = |rng: &mut ChaCha8Rng| {
        r.from_terms(quads.iter().map(|m| (*m, r.field().random(rng))))
    };
    let f = rand_quad(&mut rng);
    let g = rand_quad(&mut rng);
    let fi = Ideal::new(r.clone(), vec![f.clone()]).unwrap();
    let gi = Ideal::new(r.clone(), vec![g.clone()]).unwrap();
    let both = fi.intersect(&gi).unwrap();
    let gens = both.minimal_generators().unwrap();
    assert_eq!(gens.len(), 1);
    let fg = Ideal::new(r.clone(), vec![r.mul(&f, &g)]).unwrap();
    assert!(both.same_ideal(&fg).unwrap());
    assert!(fi.contains_ideal(&both).unwrap() && gi.contains_ideal(&both).unwrap());
}

#[test]
fn plane_quartic_and_two_lines_union_has_degree_six() {
    let r = p3(fp());
    let u = d2_union(&r, &mut ChaCha8Rng::seed_from_u64(0));
    let h = u.hilbert().unwrap();
    assert_eq!((h.degree, h.genus), (6, Some(3)));
}

#[test]
fn d1_curve_invariants() {
    let r = p3(fp());
    let c = d1(&r);
    let h = c.hilbert().unwrap();
    assert_eq!((h.codim, h.degree, h.genus), (2, 10, Some(11)));
    assert!(c.singular_locus_smooth(None).unwrap().smooth);
    assert_eq!(cohomology::connectedness_h1(&c).unwrap(), 0);
    let cube = c.power_saturated(3).unwrap();
    assert_eq!(cube.graded_piece_dim(11).unwrap(), 4);
    assert!(c.power_saturated(1).unwrap().same_ideal(&c).unwrap());
}

#[test]
fn d1_curve_invariants_over_rationals() {
    let r = p3(Rationals);
    let c = d1(&r);
    let h = c.hilbert().unwrap();
    assert_eq!((h.codim, h.degree, h.genus), (2, 10, Some(11)));
    assert!(c.singular_locus_smooth(None).unwrap().smooth);
}

#[test]
fn graded_pieces_of_fixtures() {
    let r = p3(fp());
    let a = acm(&r);
    assert_eq!(a.graded_piece_dim(3).unwrap(), 0);
    assert_eq!(a.graded_piece_dim(4).unwrap(), 5);
    let c = d2(&r, 1);
    assert_eq!(c.graded_piece_dim(3).unwrap(), 1);
}

#[test]
fn complete_intersection_of_quartics() {
    let r = p3(Rationals);
    let ci = Ideal::parse(r, "x^4 + y^4 + z*w^3, x*y*z*w - z^4 + w^4").unwrap();
    let h = ci.hilbert().unwrap();
    assert_eq!((h.degree, h.genus), (16, Some(33)));
}

#[test]
fn acm_curve_links_to_sextic_of_genus_three() {
    let r = p3(fp());
    let c = acm(&r);
    let quartics = c.graded_piece(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f = combo(&r, &quartics, &mut rng);
    let g = combo(&r, &quartics, &mut rng);
    let res = c.linked_ideal(&f, &g).unwrap();
    let h = res.hilbert().unwrap();
    assert_eq!((h.degree, h.genus), (6, Some(3)));
    let a = CurveAnalysis::new(&c).unwrap();
    let resa = CurveAnalysis::new(&res).unwrap();
    for (m, ci, w) in [(4, 2, 3), (5, 8, 8), (0, 0, 0)] {
        let rep = a.liaison_report_with(&resa, &f, &g, m).unwrap();
        assert!(rep.decomposition_holds);
        assert_eq!((rep.h0_ci, rep.w_residual), (ci, w));
    }
}
