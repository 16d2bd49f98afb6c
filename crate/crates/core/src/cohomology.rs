//! Cohomology of ideal sheaves of space curves, computed from the minimal
//! resolution: canonical module, Hartshorne-Rao module, curve classes and
//! the liaison dimension identity.

use std::collections::BTreeMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::hilbert::{binom_poly, HilbertData};
use crate::ideal::Ideal;
use crate::linalg;
use crate::poly::Poly;
use crate::resolution::{minimal_resolution, BettiTable, GradedMap, Resolution};

pub const DEFAULT_WINDOW: (i64, i64) = (-6, 12);
const MAX_WIDENINGS: usize = 4;
const WIDEN_STEP: i64 = 6;

/// Dimensions `h^i(I_C(k))` on a window of twists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub window: (i64, i64),
    pub degree: i64,
    pub genus: i64,
    /// Keyed by `"i,k"`.
    pub h: BTreeMap<String, i64>,
    /// `k -> (h^0(O_C(k)), h^1(O_C(k)))`.
    pub aux: BTreeMap<i64, (i64, i64)>,
}

impl CohomologyTable {
    pub fn get(&self, i: usize, k: i64) -> i64 {
        self.h.get(&format!("{i},{k}")).copied().unwrap_or(0)
    }

    fn set(&mut self, i: usize, k: i64, v: i64) {
        self.h.insert(format!("{i},{k}"), v);
    }

    pub fn twists(&self) -> std::ops::RangeInclusive<i64> {
        self.window.0..=self.window.1
    }

    /// `Σ (-1)^i h^i(I_C(k))` minus the ambient value `C(k+3,3) - (dk + 1 - g)`.
    pub fn euler_defect(&self, k: i64) -> i64 {
        let alt: i64 = (0..4).map(|i| if i % 2 == 0 { self.get(i, k) } else { -self.get(i, k) }).sum();
        let ambient = binom_poly(k, 3) as i64 - (self.degree * k + 1 - self.genus);
        alt - ambient
    }

    pub fn hr_module(&self) -> HRModule {
        let dims: BTreeMap<i64, i64> =
            self.twists().map(|k| (k, self.get(1, k))).filter(|&(_, v)| v != 0).collect();
        let length = dims.values().sum();
        HRModule { dims, length }
    }
}

/// Graded dimensions of `⊕_k H^1(I_C(k))`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HRModule {
    pub dims: BTreeMap<i64, i64>,
    pub length: i64,
}

impl HRModule {
    pub fn is_zero(&self) -> bool {
        self.length == 0
    }

    /// True for a one-dimensional module concentrated in degree `k`.
    pub fn is_k_shifted(&self, k: i64) -> bool {
        self.length == 1 && self.dims.get(&k) == Some(&1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveTag {
    #[serde(rename = "ACM")]
    Acm,
    #[serde(rename = "D1-semicanonical")]
    D1Semicanonical,
    #[serde(rename = "D2-on-cubic")]
    D2OnCubic,
    Other,
}

impl CurveTag {
    pub fn label(&self) -> &'static str {
        match self {
            CurveTag::Acm => "ACM",
            CurveTag::D1Semicanonical => "D1-semicanonical",
            CurveTag::D2OnCubic => "D2-on-cubic",
            CurveTag::Other => "Other",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveClass {
    pub tag: CurveTag,
    pub hr: HRModule,
    /// `h^0(ω_C(-2))`.
    pub w_minus2: i64,
    /// `h^0(I_C(3))`.
    pub h0_cubics: i64,
}

/// Both sides of the liaison dimension identity at one twist, plus the
/// quantities entering the alternative closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiaisonReport {
    pub m: i64,
    pub h0_curve: i64,
    pub h0_ci: i64,
    /// `dim W'_{m - e}` for the residual's canonical module, `e = deg f + deg g - 4`.
    pub w_residual: i64,
    pub decomposition_holds: bool,
    pub residual_h0: i64,
    pub residual_h1: i64,
    pub residual_h2: i64,
    pub cubic_term: i64,
    /// `h^1(I_{C'}(4-m)) - h^0(I_{C'}(4-m)) + (m-3)(m-2)(m+2)/6`.
    pub closed_form: i64,
    pub closed_form_matches: bool,
}

/// A saturated curve ideal together with its resolution and canonical
/// module dimensions (memoized).
pub struct CurveAnalysis<F: Field> {
    ideal: Ideal<F>,
    hilbert: HilbertData,
    res: Resolution<F>,
    w_cache: Mutex<BTreeMap<i64, i64>>,
}

impl<F: Field> CurveAnalysis<F> {
    pub fn new(ideal: &Ideal<F>) -> Result<Self> {
        let hilbert = ideal.hilbert()?;
        if hilbert.krull_dim != 2 {
            return Err(Error::NotCurve(format!(
                "projective dimension {}",
                hilbert.projective_dim()
            )));
        }
        let res = minimal_resolution(ideal)?;
        Ok(Self { ideal: ideal.clone(), hilbert, res, w_cache: Mutex::new(BTreeMap::new()) })
    }

    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }
    pub fn hilbert(&self) -> &HilbertData {
        &self.hilbert
    }
    pub fn betti(&self) -> &BettiTable {
        &self.res.betti
    }
    pub fn degree(&self) -> i64 {
        self.hilbert.degree
    }
    pub fn genus(&self) -> i64 {
        self.hilbert.genus.expect("curves have a genus")
    }

    /// `dim W_t` for `W = Ext^{c}(S/I, S(-n))`, `c` the codimension.
    pub fn canonical_dim(&self, t: i64) -> i64 {
        if let Some(&v) = self.w_cache.lock().expect("poisoned").get(&t) {
            return v;
        }
        let v = self.compute_canonical_dim(t);
        self.w_cache.lock().expect("poisoned").insert(t, v);
        v
    }

    fn compute_canonical_dim(&self, t: i64) -> i64 {
        let ring = &self.res.ring;
        let n = ring.nvars() as i64;
        let c = self.hilbert.codim;
        let maps = &self.res.maps;
        // shift all degrees by `off` so that dual twists stay nonnegative
        let off = maps.iter().flat_map(|m| m.src.iter()).copied().max().unwrap_or(0) as i64;
        let dual = |shifts: &[u32]| -> Vec<u32> {
            shifts.iter().map(|&a| (off + n - a as i64) as u32).collect()
        };
        let fc = &maps[c - 1].src;
        let d = t + off;
        // transpose of φ_{c+1}: F_c* → F_{c+1}*
        let kernel = match maps.get(c) {
            Some(next) => {
                let tr = transpose(next, dual(&next.tgt), dual(&next.src));
                let (cols, rank) = rank_in_degree(ring, &tr, d);
                cols - rank
            }
            None => dual_dim(fc, off + n, d, n),
        };
        // image of φ_c^T: F_{c-1}* → F_c*
        let prev = &maps[c - 1];
        let tr = transpose(prev, dual(&prev.tgt), dual(&prev.src));
        let (_, image) = rank_in_degree(ring, &tr, d);
        (kernel - image) as i64
    }

    /// `h^0(O_C(k))`.
    pub fn h0_oc(&self, k: i64) -> i64 {
        self.degree() * k + 1 - self.genus() + self.canonical_dim(-k)
    }

    pub fn h0_ideal(&self, k: i64) -> Result<i64> {
        self.ideal.graded_piece_dim(k)
    }

    pub fn h1_ideal(&self, k: i64) -> i64 {
        self.h0_oc(k) - self.hilbert.hilbert_function(k)
    }

    pub fn cohomology(&self, window: (i64, i64)) -> Result<CohomologyTable> {
        let n = self.res.ring.nvars() as i64;
        let mut t = CohomologyTable {
            window,
            degree: self.degree(),
            genus: self.genus(),
            h: BTreeMap::new(),
            aux: BTreeMap::new(),
        };
        for k in window.0..=window.1 {
            let w = self.canonical_dim(-k);
            t.set(0, k, self.h0_ideal(k)?);
            t.set(1, k, self.h1_ideal(k));
            t.set(2, k, w);
            t.set(3, k, binom_poly(-k - n, n as usize - 1).max(0) as i64);
            t.aux.insert(k, (self.h0_oc(k), w));
        }
        Ok(t)
    }

    /// The `h^1` row with zeros certified at both window ends, widening on contact.
    pub fn hartshorne_rao(&self) -> Result<HRModule> {
        let (mut lo, mut hi) = DEFAULT_WINDOW;
        for _ in 0..=MAX_WIDENINGS {
            let lo_hit = self.h1_ideal(lo) != 0;
            let hi_hit = self.h1_ideal(hi) != 0;
            if !lo_hit && !hi_hit {
                let dims: BTreeMap<i64, i64> =
                    (lo..=hi).map(|k| (k, self.h1_ideal(k))).filter(|&(_, v)| v != 0).collect();
                let length = dims.values().sum();
                return Ok(HRModule { dims, length });
            }
            if lo_hit {
                lo -= WIDEN_STEP;
            }
            if hi_hit {
                hi += WIDEN_STEP;
            }
        }
        Err(Error::WindowBoundary(if self.h1_ideal(lo) != 0 { lo } else { hi }))
    }

    pub fn generated_in_degree(&self) -> i64 {
        self.res.betti.twists(1).into_iter().max().unwrap_or(0)
    }

    pub fn connectedness_h1(&self) -> i64 {
        self.h1_ideal(0)
    }

    /// Tag from the HR module and the two discriminating dimensions.
    pub fn classify_unchecked(&self) -> Result<CurveClass> {
        let hr = self.hartshorne_rao()?;
        let w_minus2 = self.canonical_dim(-2);
        let h0_cubics = self.h0_ideal(3)?;
        let tag = if hr.is_zero() {
            CurveTag::Acm
        } else if hr.is_k_shifted(2) && w_minus2 == 1 {
            CurveTag::D1Semicanonical
        } else if hr.is_k_shifted(3) && h0_cubics == 1 {
            CurveTag::D2OnCubic
        } else {
            CurveTag::Other
        };
        Ok(CurveClass { tag, hr, w_minus2, h0_cubics })
    }

    /// Classification after checking smoothness, connectedness and `(d, g) = (10, 11)`.
    pub fn classify(&self) -> Result<CurveClass> {
        if (self.degree(), self.genus()) != (10, 11) {
            return Err(Error::Precondition(format!(
                "(degree, genus) = ({}, {}), expected (10, 11)",
                self.degree(),
                self.genus()
            )));
        }
        if !self.ideal.singular_locus_smooth(Some(2))?.smooth {
            return Err(Error::Precondition("curve is singular".into()));
        }
        if self.connectedness_h1() != 0 {
            return Err(Error::Precondition("curve is disconnected".into()));
        }
        self.classify_unchecked()
    }

    /// Liaison identity at twist `m` for the link by `f`, `g`.
    pub fn liaison_report(
        &self,
        f: &Poly<F::Elem>,
        g: &Poly<F::Elem>,
        m: i64,
    ) -> Result<LiaisonReport> {
        let residual = CurveAnalysis::new(&self.ideal.linked_ideal(f, g)?)?;
        self.liaison_report_with(&residual, f, g, m)
    }

    /// As [`Self::liaison_report`] with a precomputed residual.
    pub fn liaison_report_with(
        &self,
        residual: &CurveAnalysis<F>,
        f: &Poly<F::Elem>,
        g: &Poly<F::Elem>,
        m: i64,
    ) -> Result<LiaisonReport> {
        let ring = self.ideal.ring();
        let ci = self.ideal.complete_intersection(f, g)?;
        let e = (ring.degree(f).unwrap_or(0) + ring.degree(g).unwrap_or(0)) as i64
            - ring.nvars() as i64;
        let h0_curve = self.h0_ideal(m)?;
        let h0_ci = ci.graded_piece_dim(m)?;
        let w_residual = residual.canonical_dim(m - e);
        let k = 4 - m;
        let residual_h0 = residual.h0_ideal(k)?;
        let residual_h1 = residual.h1_ideal(k);
        let residual_h2 = residual.canonical_dim(-k);
        let cubic_term = (m - 3) * (m - 2) * (m + 2) / 6;
        let closed_form = residual_h1 - residual_h0 + cubic_term;
        Ok(LiaisonReport {
            m,
            h0_curve,
            h0_ci,
            w_residual,
            decomposition_holds: h0_curve == h0_ci + w_residual,
            residual_h0,
            residual_h1,
            residual_h2,
            cubic_term,
            closed_form,
            closed_form_matches: closed_form == h0_curve,
        })
    }
}

fn transpose<E: Clone>(map: &GradedMap<E>, src: Vec<u32>, tgt: Vec<u32>) -> GradedMap<E> {
    let cols = (0..map.tgt.len())
        .map(|l| map.cols.iter().map(|col| col[l].clone()).collect())
        .collect();
    GradedMap { src, tgt, cols }
}

fn dual_dim(shifts: &[u32], base: i64, d: i64, n: i64) -> usize {
    shifts
        .iter()
        .map(|&a| {
            let e = d - (base - a as i64);
            if e < 0 {
                0
            } else {
                crate::hilbert::binom(e + n - 1, n - 1) as usize
            }
        })
        .sum()
}

/// `(source dimension, rank)` of a graded map in degree `d`.
fn rank_in_degree<F: Field>(
    ring: &crate::ring::Ring<F>,
    map: &GradedMap<F::Elem>,
    d: i64,
) -> (usize, usize) {
    let (dom, rows) = map.matrix(ring, d);
    if dom.is_empty() || rows.is_empty() {
        return (dom.len(), 0);
    }
    (dom.len(), linalg::rank(ring.field(), &rows))
}

/// Cohomology table of a saturated curve ideal on `window`.
pub fn curve_cohomology<F: Field>(ideal: &Ideal<F>, window: (i64, i64)) -> Result<CohomologyTable> {
    CurveAnalysis::new(ideal)?.cohomology(window)
}

pub fn hartshorne_rao<F: Field>(ideal: &Ideal<F>) -> Result<HRModule> {
    CurveAnalysis::new(ideal)?.hartshorne_rao()
}

pub fn classify_curve<F: Field>(ideal: &Ideal<F>) -> Result<CurveClass> {
    CurveAnalysis::new(ideal)?.classify()
}

/// Largest twist among minimal generators.
pub fn generated_in_degree<F: Field>(ideal: &Ideal<F>) -> Result<i64> {
    Ok(ideal.max_generator_degree()? as i64)
}

pub fn connectedness_h1<F: Field>(ideal: &Ideal<F>) -> Result<i64> {
    Ok(CurveAnalysis::new(ideal)?.connectedness_h1())
}

pub fn liaison_identity_report<F: Field>(
    ideal: &Ideal<F>,
    f: &Poly<F::Elem>,
    g: &Poly<F::Elem>,
    m: i64,
) -> Result<LiaisonReport> {
    CurveAnalysis::new(ideal)?.liaison_report(f, g, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::ring::{MonoOrder, Ring};

    fn ideal(src: &str) -> Ideal<Rationals> {
        let r = Ring::new(Rationals, &["x", "y", "z", "w"], MonoOrder::Grevlex).unwrap().into_ref();
        Ideal::parse(r, src).unwrap()
    }

    #[test]
    fn twisted_cubic_cohomology() {
        let c = CurveAnalysis::new(&ideal("x*z - y^2, y*w - z^2, x*w - y*z")).unwrap();
        assert_eq!(c.canonical_dim(0), 0);
        // ω = O_P1(-2) and O_C(1) = O_P1(3)
        assert_eq!(c.canonical_dim(1), 2);
        assert_eq!(c.canonical_dim(2), 5);
        let t = c.cohomology((-6, 6)).unwrap();
        for k in t.twists() {
            assert_eq!(t.euler_defect(k), 0, "twist {k}");
            assert_eq!(t.get(1, k), 0);
        }
        assert_eq!(t.get(0, 2), 3);
        assert_eq!(t.get(3, -4), 1);
        assert!(c.hartshorne_rao().unwrap().is_zero());
        assert_eq!(c.connectedness_h1(), 0);
    }

    #[test]
    fn two_skew_lines_are_disconnected() {
        let i = ideal("x*z, x*w, y*z, y*w");
        let c = CurveAnalysis::new(&i).unwrap();
        assert_eq!(c.connectedness_h1(), 1);
        let hr = c.hartshorne_rao().unwrap();
        assert_eq!(hr.dims, BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn canonical_module_of_plane_cubic_times_line() {
        // complete intersection of a quadric and a cubic: canonical twist 1
        let c = CurveAnalysis::new(&ideal("x*y - z*w, x^3 + y^3 + z^3 + w^3")).unwrap();
        assert_eq!((c.degree(), c.genus()), (6, 4));
        // ω = O_C(1)
        assert_eq!(c.canonical_dim(-1), 1);
        assert_eq!(c.canonical_dim(0), 4);
    }

    #[test]
    fn rejects_points() {
        let r = Ring::new(Rationals, &["x", "y", "z"], MonoOrder::Grevlex).unwrap().into_ref();
        let i = Ideal::parse(r, "x, y").unwrap();
        assert!(matches!(CurveAnalysis::new(&i), Err(Error::NotCurve(_))));
    }

    #[test]
    fn liaison_of_twisted_cubic() {
        let i = ideal("x*z - y^2, y*w - z^2, x*w - y*z");
        let c = CurveAnalysis::new(&i).unwrap();
        let (f, g) = (i.gens()[0].clone(), i.gens()[1].clone());
        for m in 0..5 {
            let rep = c.liaison_report(&f, &g, m).unwrap();
            assert!(rep.decomposition_holds, "{rep:?}");
        }
    }
}
