//! The three curve fixtures of degree 10 and genus 11 and their invariants.

use anyhow::{bail, Context, Result};
use detq_core::cohomology::connectedness_h1;
use detq_core::matrix::matrix_from_text;
use detq_core::{Field, Ideal, Mono, MonoOrder, Poly, Ring, RingRef};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::Config;

pub const ACM_MATRIX: &str = include_str!("../data/acm_matrix.txt");
pub const D1_BASE: &str = include_str!("../data/d1_base.txt");
pub const D1_FORMS: &str = include_str!("../data/d1_forms.txt");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Recipe {
    /// Saturation of two quartics by the base ideal in `data/d1_*.txt`.
    ExplicitD1,
    /// Maximal minors of the 5x4 matrix in `data/acm_matrix.txt`.
    MatrixAcm,
    /// Maximal minors of a user-supplied matrix.
    HilbertBurch { matrix: String },
    /// Residual of a plane quartic plus two lines in two random quartics.
    LinkedD2 { seed: u64 },
}

impl Recipe {
    pub fn parse(name: &str, seed: u64) -> Result<Self> {
        Ok(match name {
            "d1" => Recipe::ExplicitD1,
            "acm" => Recipe::MatrixAcm,
            "d2" => Recipe::LinkedD2 { seed },
            other => bail!("unknown recipe {other:?}; use d1, acm or d2"),
        })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Recipe::ExplicitD1 => "d1",
            Recipe::MatrixAcm => "acm",
            Recipe::HilbertBurch { .. } => "hilbert-burch",
            Recipe::LinkedD2 { .. } => "d2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub codim: usize,
    pub degree: i64,
    pub genus: i64,
    pub smooth: bool,
    pub connected: bool,
}

impl Invariants {
    pub fn is_expected(&self) -> bool {
        (self.codim, self.degree, self.genus, self.smooth, self.connected) == (2, 10, 11, true, true)
    }
}

/// Bookkeeping for the linked construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkageData {
    pub seed: u64,
    pub attempts: u32,
    pub union_degree: i64,
    pub union_genus: i64,
    pub quartics_through_union: usize,
    /// `g(C) - g(C') = (d - d')(deg f + deg g - 4) / 2`.
    pub genus_from_linkage: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveBundle {
    pub recipe: Recipe,
    pub field: String,
    pub generators: Vec<String>,
    pub invariants: Invariants,
    pub linkage: Option<LinkageData>,
}

pub struct BuiltCurve<F: Field> {
    pub ideal: Ideal<F>,
    pub bundle: CurveBundle,
}

pub fn p3<F: Field>(field: F, cfg: &Config) -> Result<RingRef<F>> {
    Ok(Ring::new(field, &["x", "y", "z", "w"], MonoOrder::Grevlex)?
        .with_budget(cfg.budget.to_budget())
        .into_ref())
}

/// Parses an ideal file body (a leading `ring` line is ignored).
pub fn ideal_from_text<F: Field>(ring: &RingRef<F>, src: &str) -> Result<Ideal<F>> {
    Ok(Ideal::parse(ring.clone(), src)?)
}

pub fn invariants<F: Field>(ideal: &Ideal<F>) -> Result<Invariants> {
    let h = ideal.hilbert()?;
    let genus = h.genus.context("not a curve")?;
    let smooth = ideal.singular_locus_smooth(Some(2))?.smooth;
    let connected = connectedness_h1(ideal)? == 0;
    Ok(Invariants { codim: h.codim, degree: h.degree, genus, smooth, connected })
}

pub fn d1_ideal<F: Field>(ring: &RingRef<F>) -> Result<Ideal<F>> {
    let base = ideal_from_text(ring, D1_BASE)?;
    let ci = ideal_from_text(ring, D1_FORMS)?;
    Ok(ci.saturate(&base)?)
}

pub fn hilbert_burch_ideal<F: Field>(ring: &RingRef<F>, matrix: &str) -> Result<Ideal<F>> {
    let m = matrix_from_text(ring, matrix)?;
    if m.nrows() != m.ncols() + 1 {
        bail!("expected an (n+1) x n matrix, got {} x {}", m.nrows(), m.ncols());
    }
    Ok(Ideal::new(ring.clone(), m.maximal_minors())?.saturate_irrelevant()?)
}

pub fn random_combination<F: Field, R: Rng>(ring: &Ring<F>, forms: &[Poly<F::Elem>], rng: &mut R) -> Poly<F::Elem> {
    let f = ring.field();
    forms.iter().fold(ring.zero(), |acc, g| ring.add(&acc, &ring.scale(g, &f.random(rng))))
}

/// Two random forms of degree `deg` in the ideal.
pub fn linking_pair<F: Field>(
    ideal: &Ideal<F>,
    deg: u32,
    seed: u64,
) -> Result<(Poly<F::Elem>, Poly<F::Elem>)> {
    let basis = ideal.graded_piece(deg)?;
    if basis.len() < 2 {
        bail!("only {} independent forms of degree {deg} in the ideal", basis.len());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = ideal.ring();
    Ok((random_combination(r, &basis, &mut rng), random_combination(r, &basis, &mut rng)))
}

/// Plane quartic in `w = 0` through `[1:0:0:0]` and `[0:1:0:0]`, plus the
/// lines through those points and `[0:b:c1:1]`, `[a2:0:c2:1]`.
pub fn d2_union<F: Field, R: Rng>(ring: &RingRef<F>, rng: &mut R) -> Result<Ideal<F>> {
    let f = ring.field().clone();
    let terms: Vec<_> = Mono::all_of_degree(3, 4)
        .into_iter()
        .filter(|m| m.exp(0) != 4 && m.exp(1) != 4)
        .map(|m| (m, f.random(rng)))
        .collect();
    let plane = Ideal::new(ring.clone(), vec![ring.var(3), ring.from_terms(terms)])?;
    let mut coeff = || f.from_i64(rng.gen_range(-50..50));
    let (b, c1, a2, c2) = (coeff(), coeff(), coeff(), coeff());
    let lin = |v: usize, c: F::Elem| ring.sub(&ring.var(v), &ring.scale(&ring.var(3), &c));
    let e1 = Ideal::new(ring.clone(), vec![lin(1, b), lin(2, c1)])?;
    let e2 = Ideal::new(ring.clone(), vec![lin(0, a2), lin(2, c2)])?;
    Ok(plane.intersect(&e1)?.intersect(&e2)?)
}

fn linked_d2<F: Field>(ring: &RingRef<F>, seed: u64, cfg: &Config) -> Result<(Ideal<F>, Invariants, LinkageData)> {
    let mut last_err = None;
    for attempt in 0..cfg.max_retries.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add((attempt as u64) << 32));
        let outcome = (|| -> Result<_> {
            let union = d2_union(ring, &mut rng)?;
            let hu = union.hilbert()?;
            let quartics = union.graded_piece(4)?;
            let p = random_combination(ring, &quartics, &mut rng);
            let q = random_combination(ring, &quartics, &mut rng);
            let residual = union.linked_ideal(&p, &q)?;
            let inv = invariants(&residual)?;
            let ug = hu.genus.context("union is not a curve")?;
            let data = LinkageData {
                seed,
                attempts: attempt + 1,
                union_degree: hu.degree,
                union_genus: ug,
                quartics_through_union: quartics.len(),
                genus_from_linkage: ug + (inv.degree - hu.degree) * (4 + 4 - 4) / 2,
            };
            Ok((residual, inv, data))
        })();
        match outcome {
            Ok((ideal, inv, data)) if inv.is_expected() => return Ok((ideal, inv, data)),
            Ok((_, inv, _)) => last_err = Some(anyhow::anyhow!("attempt {attempt}: residual invariants {inv:?}")),
            Err(e) => last_err = Some(e.context(format!("attempt {attempt}"))),
        }
    }
    Err(last_err.expect("at least one attempt").context("linked construction failed after all retries"))
}

pub fn build_curve<F: Field>(field: F, recipe: &Recipe, cfg: &Config) -> Result<BuiltCurve<F>> {
    let ring = p3(field, cfg)?;
    let (ideal, invariants, linkage) = match recipe {
        Recipe::ExplicitD1 => {
            let i = d1_ideal(&ring)?;
            let inv = invariants(&i)?;
            (i, inv, None)
        }
        Recipe::MatrixAcm => {
            let i = hilbert_burch_ideal(&ring, ACM_MATRIX)?;
            let inv = invariants(&i)?;
            (i, inv, None)
        }
        Recipe::HilbertBurch { matrix } => {
            let i = hilbert_burch_ideal(&ring, matrix)?;
            let inv = invariants(&i)?;
            (i, inv, None)
        }
        Recipe::LinkedD2 { seed } => {
            let (i, inv, data) = linked_d2(&ring, *seed, cfg)?;
            (i, inv, Some(data))
        }
    };
    if !invariants.is_expected() {
        bail!("{} curve has invariants {invariants:?}, expected (2, 10, 11, smooth, connected)", recipe.label());
    }
    let generators = ideal
        .minimal_generators()?
        .iter()
        .map(|g| ring.render(g))
        .collect();
    let bundle = CurveBundle {
        recipe: recipe.clone(),
        field: ring.field().spec().label(),
        generators,
        invariants,
        linkage,
    };
    Ok(BuiltCurve { ideal, bundle })
}

/// As [`build_curve`], reusing a bundle from `cfg.cache_dir` when present.
pub fn build_curve_cached<F: Field>(field: F, recipe: &Recipe, cfg: &Config) -> Result<BuiltCurve<F>> {
    let Some(dir) = &cfg.cache_dir else {
        return build_curve(field, recipe, cfg);
    };
    let key = crate::cache::key(recipe, field.spec());
    if let Some(bundle) = crate::cache::load(dir, &key) {
        let ring = p3(field.clone(), cfg)?;
        if let Ok(ideal) = Ideal::parse(ring, &bundle.generators.join(", ")) {
            return Ok(BuiltCurve { ideal, bundle });
        }
    }
    let built = build_curve(field, recipe, cfg)?;
    // a read-only cache directory only costs a rebuild next time
    let _ = crate::cache::store(dir, &key, &built.bundle);
    Ok(built)
}
