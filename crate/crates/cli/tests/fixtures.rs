use detq::config::{BudgetEcho, Config, FieldChoice};
use detq::fixtures::{build_curve, build_curve_cached, Recipe, ACM_MATRIX};
use detq::pipeline::run_pipeline;
use detq::report::Status;
use detq::suite::{verify_paper, Case};
use detq_core::cohomology::{CurveAnalysis, CurveTag};
use detq_core::{PrimeField, Rationals};

fn fp() -> PrimeField {
    PrimeField::default()
}

#[test]
fn fixtures_are_deterministic() {
    let cfg = Config::default();
    for recipe in [Recipe::ExplicitD1, Recipe::MatrixAcm, Recipe::LinkedD2 { seed: 5 }] {
        let a = build_curve(fp(), &recipe, &cfg).unwrap();
        let b = build_curve(fp(), &recipe, &cfg).unwrap();
        assert_eq!(a.bundle, b.bundle, "{}", recipe.label());
        assert!(a.ideal.same_ideal(&b.ideal).unwrap());
    }
}

#[test]
fn three_fixtures_three_tags() {
    let cfg = Config::default();
    let tags: Vec<CurveTag> = [Recipe::MatrixAcm, Recipe::ExplicitD1, Recipe::LinkedD2 { seed: 0 }]
        .iter()
        .map(|r| {
            let b = build_curve(fp(), r, &cfg).unwrap();
            CurveAnalysis::new(&b.ideal).unwrap().classify().unwrap().tag
        })
        .collect();
    assert_eq!(tags, [CurveTag::Acm, CurveTag::D1Semicanonical, CurveTag::D2OnCubic]);
}

#[test]
fn linked_recipe_succeeds_across_seeds() {
    let cfg = Config::default();
    for seed in 1..4 {
        let b = build_curve(fp(), &Recipe::LinkedD2 { seed }, &cfg).unwrap();
        let l = b.bundle.linkage.unwrap();
        assert_eq!((l.union_degree, l.union_genus, l.genus_from_linkage), (6, 3, 11), "seed {seed}");
        assert!(l.attempts >= 1 && l.attempts <= cfg.max_retries);
    }
}

#[test]
fn hilbert_burch_recipe_matches_builtin_matrix() {
    let cfg = Config::default();
    let a = build_curve(fp(), &Recipe::MatrixAcm, &cfg).unwrap();
    let b = build_curve(fp(), &Recipe::HilbertBurch { matrix: ACM_MATRIX.to_string() }, &cfg).unwrap();
    assert!(a.ideal.same_ideal(&b.ideal).unwrap());
}

#[test]
fn wrong_invariants_are_rejected() {
    // twisted cubic: degree 3, genus 0
    let m = "x; y\ny; z\nz; w";
    let err = build_curve(fp(), &Recipe::HilbertBurch { matrix: m.into() }, &Config::default())
        .err()
        .expect("twisted cubic must be rejected");
    assert!(format!("{err:#}").contains("expected (2, 10, 11"), "{err:#}");
}

#[test]
fn fields_agree_on_explicit_fixtures() {
    let q = Config::default().with_field(FieldChoice::Q);
    let p = Config::default();
    let rq = verify_paper(&[Case::D1, Case::Acm], &q);
    let rp = verify_paper(&[Case::D1, Case::Acm], &p);
    assert!(rq.passed() && rp.passed());
    let a: Vec<(&str, &str)> = rq.checks.iter().map(|c| (c.name.as_str(), c.computed.as_str())).collect();
    let b: Vec<(&str, &str)> = rp.checks.iter().map(|c| (c.name.as_str(), c.computed.as_str())).collect();
    assert_eq!(a, b);
}

#[test]
fn rational_fixtures_have_rational_generators() {
    let b = build_curve(Rationals, &Recipe::ExplicitD1, &Config::default().with_field(FieldChoice::Q)).unwrap();
    assert_eq!(b.bundle.field, "q");
    assert!(b.bundle.invariants.is_expected());
}

#[test]
fn degenerate_matrix_names_failing_stage() {
    let m = "x; y; z; w\n".repeat(5);
    let err = run_pipeline(fp(), &m, &Config::default()).unwrap_err();
    assert!(format!("{err:#}").contains("stage"), "{err:#}");
    let err = run_pipeline(fp(), "x; y\ny; z", &Config::default()).unwrap_err();
    assert!(format!("{err:#}").contains("parse stage"), "{err:#}");
}

#[test]
fn budget_exhaustion_fails_the_run() {
    let mut cfg = Config::default();
    cfg.budget = BudgetEcho { max_pairs: Some(3), ..BudgetEcho::default() };
    let r = verify_paper(&[Case::D1], &cfg);
    assert!(!r.passed());
    let first = r.failures().next().unwrap();
    assert!(first.note.as_deref().is_some_and(|n| n.contains("budget")), "{first:?}");
    assert!(r.checks.iter().all(|c| c.status == Status::Fail));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = Config::default();
    cfg.cache_dir = Some(dir.path().to_path_buf());
    let a = build_curve_cached(fp(), &Recipe::ExplicitD1, &cfg).unwrap();
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let b = build_curve_cached(fp(), &Recipe::ExplicitD1, &cfg).unwrap();
    assert_eq!(a.bundle, b.bundle);
    assert!(a.ideal.same_ideal(&b.ideal).unwrap());
}
