//! Homogeneous ideals with a cached reduced Groebner basis, and the ideal
//! toolbox built on it: quotients, saturation, elimination, Hilbert data,
//! smoothness and linkage.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{self, GbOptions};
use crate::hilbert::{self, HilbertData};
use crate::linalg;
use crate::matrix::PolyMatrix;
use crate::monomial::Mono;
use crate::poly::Poly;
use crate::ring::{MonoOrder, Ring, RingRef};

/// Fixed seed for the coordinate changes tried by saturation.
const SAT_SEED: u64 = 0x5a7_5eed;
const SAT_RANDOM_TRIES: usize = 4;

pub struct Ideal<F: Field> {
    ring: RingRef<F>,
    gens: Vec<Poly<F::Elem>>,
    gb: OnceLock<Vec<Poly<F::Elem>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Self { ring: self.ring.clone(), gens: self.gens.clone(), gb }
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|p| self.ring.render(p)).collect();
        write!(f, "ideal({})", g.join(", "))
    }
}

/// Result of the Jacobian smoothness test.
#[derive(Clone, Debug)]
pub struct SingularLocus<F: Field> {
    pub smooth: bool,
    pub sing_ideal: Ideal<F>,
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped; every other generator must be homogeneous.
    pub fn new(ring: RingRef<F>, gens: Vec<Poly<F::Elem>>) -> Result<Self> {
        let mut kept = Vec::with_capacity(gens.len());
        for (i, g) in gens.into_iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            if !ring.is_homogeneous(&g) {
                return Err(Error::Inhomogeneous(i));
            }
            kept.push(g);
        }
        Ok(Self { ring, gens: kept, gb: OnceLock::new() })
    }

    fn from_basis(ring: RingRef<F>, basis: Vec<Poly<F::Elem>>) -> Self {
        let gb = OnceLock::new();
        let _ = gb.set(basis.clone());
        Self { ring, gens: basis, gb }
    }

    /// Parses generators separated by newlines, commas or semicolons.
    pub fn parse(ring: RingRef<F>, src: &str) -> Result<Self> {
        let (_, items, errs) = crate::parse::split_ideal_text(src);
        if let Some(e) = errs.into_iter().next() {
            return Err(e);
        }
        let gens = items
            .iter()
            .map(|s| crate::parse::parse_poly(&ring, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    pub fn unit(ring: RingRef<F>) -> Self {
        let one = ring.one();
        Self::from_basis(ring, vec![one])
    }

    /// The ideal generated by all variables.
    pub fn irrelevant(ring: RingRef<F>) -> Self {
        let gens = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        Self::new(ring, gens).expect("variables are homogeneous")
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly<F::Elem>] {
        &self.gens
    }

    fn check_ring(&self, other: &Ideal<F>) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Reduced Groebner basis for the ring's order, computed once.
    pub fn groebner(&self) -> Result<&[Poly<F::Elem>]> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = groebner::groebner(&self.ring, &self.gens)?;
        let _ = self.gb.set(g);
        Ok(self.gb.get().expect("just set"))
    }

    /// Groebner basis valid up to degree `d` (the full basis when cached).
    fn groebner_upto(&self, d: u32) -> Result<Vec<Poly<F::Elem>>> {
        if let Some(g) = self.gb.get() {
            return Ok(g.clone());
        }
        let opts = GbOptions { truncate: Some(d), skip_interreduce: true };
        groebner::groebner_with(&self.ring, &self.gens, opts).map(|(g, _)| g)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.iter().any(|g| self.ring.is_constant(g)))
    }

    pub fn normal_form(&self, p: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        Ok(groebner::normal_form(&self.ring, p, self.groebner()?))
    }

    pub fn contains(&self, p: &Poly<F::Elem>) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> Result<bool> {
        self.check_ring(other)?;
        let gb = self.groebner()?;
        Ok(groebner::normal_forms(&self.ring, &other.gens, gb).iter().all(|p| p.is_zero()))
    }

    /// Equality as ideals: identical reduced bases.
    pub fn same_ideal(&self, other: &Ideal<F>) -> Result<bool> {
        self.check_ring(other)?;
        Ok(self.groebner()? == other.groebner()?)
    }

    fn standard_graded(&self) -> Result<()> {
        if self.ring.weights().iter().all(|&w| w == 1) {
            Ok(())
        } else {
            Err(Error::Precondition("Hilbert data needs the standard grading".into()))
        }
    }

    pub fn leading_monomials(&self) -> Result<Vec<Mono>> {
        Ok(self.groebner()?.iter().map(|g| g.lead_mono().expect("nonzero")).collect())
    }

    /// Hilbert data of `S / I` from the leading-term ideal.
    pub fn hilbert(&self) -> Result<HilbertData> {
        self.standard_graded()?;
        let leads = self.leading_monomials()?;
        Ok(HilbertData::from_numerator(hilbert::numerator(&leads), self.ring.nvars()))
    }

    /// `dim (S/I)_m`, using a basis truncated at `m` when nothing is cached.
    pub fn quotient_dim(&self, m: i64) -> Result<i64> {
        self.standard_graded()?;
        if m < 0 {
            return Ok(0);
        }
        let gb = self.groebner_upto(m as u32)?;
        let leads: Vec<Mono> = gb.iter().map(|g| g.lead_mono().expect("nonzero")).collect();
        let h = HilbertData::from_numerator(hilbert::numerator(&leads), self.ring.nvars());
        Ok(h.hilbert_function(m))
    }

    /// `dim I_m`.
    pub fn graded_piece_dim(&self, m: i64) -> Result<i64> {
        if m < 0 {
            return Ok(0);
        }
        let n = self.ring.nvars() as i64;
        Ok(hilbert::binom(m + n - 1, n - 1) as i64 - self.quotient_dim(m)?)
    }

    /// Basis of `I_m` as polynomials in echelon form over the monomials of degree `m`.
    pub fn graded_piece(&self, m: u32) -> Result<Vec<Poly<F::Elem>>> {
        let r = &self.ring;
        let gb = self.groebner_upto(m)?;
        let mut out = Vec::new();
        for g in &gb {
            let d = r.degree(g).expect("nonzero");
            if d > m {
                continue;
            }
            for mono in Mono::all_of_degree(r.nvars(), m - d) {
                out.push(r.mul_term(g, &r.field().one(), &mono));
            }
        }
        Ok(echelon_polys(r, out))
    }

    pub fn add(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_ring(other)?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(self.ring.clone(), g)
    }

    pub fn mul(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_ring(other)?;
        let r = &self.ring;
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                g.push(r.mul(a, b));
            }
        }
        Ideal::new(r.clone(), dedup_polys(r, g))
    }

    /// Ordinary power, generated by products of minimal generators.
    pub fn power(&self, k: u32) -> Result<Ideal<F>> {
        let r = &self.ring;
        if k == 0 {
            return Ok(Ideal::unit(r.clone()));
        }
        let base = self.minimal_generators()?;
        let mut cur: Vec<Poly<F::Elem>> = base.clone();
        // multisets of generators: keep index order to avoid repeats
        let mut idx: Vec<usize> = (0..base.len()).collect();
        for _ in 1..k {
            let mut next = Vec::new();
            let mut next_idx = Vec::new();
            for (p, &last) in cur.iter().zip(&idx) {
                for (j, b) in base.iter().enumerate().skip(last) {
                    next.push(r.mul(p, b));
                    next_idx.push(j);
                }
            }
            cur = next;
            idx = next_idx;
        }
        Ideal::new(r.clone(), dedup_polys(r, cur))
    }

    /// Intersection through the tag ideal `t*I + (1-t)*J`, eliminating `t`.
    pub fn intersect(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_ring(other)?;
        let r = &self.ring;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::new(r.clone(), vec![])?);
        }
        let n = r.nvars();
        let mut names = vec![fresh_name(r, "tag")];
        names.extend(r.names().iter().cloned());
        let mut weights = vec![0u16];
        weights.extend_from_slice(r.weights());
        let big = Ring::weighted(r.field().clone(), &names, &weights, MonoOrder::Block(1))?
            .with_budget(r.budget());
        let shift: Vec<usize> = (1..=n).collect();
        let t = big.var(0);
        let one_minus_t = big.sub(&big.one(), &t);
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(big.mul(&t, &r.embed(g, &big, &shift)));
        }
        for g in &other.gens {
            gens.push(big.mul(&one_minus_t, &r.embed(g, &big, &shift)));
        }
        let gb = groebner::groebner(&big, &gens)?;
        let kept: Vec<Poly<F::Elem>> = gb
            .iter()
            .filter(|g| g.monos().all(|m| m.0[0] == 0))
            .map(|g| {
                let mut terms = Vec::with_capacity(g.len());
                for term in g.terms() {
                    let mut m = Mono::ONE;
                    m.0[..n].copy_from_slice(&term.mono.0[1..=n]);
                    terms.push((m, term.coeff.clone()));
                }
                r.from_terms(terms)
            })
            .collect();
        let kept = groebner::reduce_basis(r, kept);
        Ok(Ideal::from_basis(r.clone(), kept))
    }

    /// `I : f`.
    pub fn quotient_poly(&self, f: &Poly<F::Elem>) -> Result<Ideal<F>> {
        let r = &self.ring;
        if f.is_zero() {
            return Ok(Ideal::unit(r.clone()));
        }
        if !r.is_homogeneous(f) {
            return Err(Error::Inhomogeneous(0));
        }
        let pf = Ideal::new(r.clone(), vec![f.clone()])?;
        let meet = self.intersect(&pf)?;
        let gens = meet
            .gens
            .iter()
            .map(|g| divide_exact(r, g, f).ok_or_else(|| Error::Certification("inexact division".into())))
            .collect::<Result<Vec<_>>>()?;
        let out = Ideal::new(r.clone(), gens)?;
        let gb = out.groebner()?.to_vec();
        Ok(Ideal::from_basis(r.clone(), gb))
    }

    /// `I : J = ∩_j (I : f_j)`.
    pub fn quotient(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_ring(other)?;
        let mut acc: Option<Ideal<F>> = None;
        for f in other.minimal_generators()? {
            let q = self.quotient_poly(&f)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(self.ring.clone())))
    }

    /// `I : J^∞`, iterating quotients until the reduced basis is stable.
    pub fn saturate(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        let mut cur = self.clone();
        loop {
            let next = cur.quotient(other)?;
            if next.same_ideal(&cur)? {
                return Ok(next);
            }
            cur = next;
        }
    }

    /// `I : J` or `I : J^∞`.
    pub fn quotient_flag(&self, other: &Ideal<F>, saturate: bool) -> Result<Ideal<F>> {
        if saturate {
            self.saturate(other)
        } else {
            self.quotient(other)
        }
    }

    /// `I : m^∞` for the irrelevant ideal `m`.
    ///
    /// Divides a grevlex basis by the largest power of the last variable,
    /// which computes `I : x_n^∞`; the result is accepted only when its
    /// Hilbert polynomial matches that of `I`. Other variables and seeded
    /// random coordinates are tried when the last variable is special.
    pub fn saturate_irrelevant(&self) -> Result<Ideal<F>> {
        self.standard_graded()?;
        let r = &self.ring;
        let n = r.nvars();
        if self.is_zero() {
            return Ok(self.clone());
        }
        let target = self.hilbert()?;
        let mut changes: Vec<Vec<Poly<F::Elem>>> = Vec::new();
        changes.push((0..n).map(|i| r.var(i)).collect());
        for v in (0..n - 1).rev() {
            // swap v with the last variable
            let mut imgs: Vec<Poly<F::Elem>> = (0..n).map(|i| r.var(i)).collect();
            imgs.swap(v, n - 1);
            changes.push(imgs);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SAT_SEED);
        for _ in 0..SAT_RANDOM_TRIES {
            let mut imgs: Vec<Poly<F::Elem>> = (0..n).map(|i| r.var(i)).collect();
            let terms = (0..n).map(|i| {
                let c = if i == n - 1 { r.field().one() } else { r.field().random(&mut rng) };
                (Mono::var(i), c)
            });
            imgs[n - 1] = r.from_terms(terms);
            changes.push(imgs);
        }
        for (idx, imgs) in changes.iter().enumerate() {
            let inverse = invert_linear(r, imgs)?;
            let moved = if idx == 0 { self.clone() } else { self.substitute_linear(imgs)? };
            let cand = moved.bayer_last_variable()?;
            let h = cand.hilbert()?;
            if h.hilbert_polynomial == target.hilbert_polynomial && h.krull_dim == target.krull_dim {
                if idx == 0 {
                    return Ok(cand);
                }
                let back = cand.substitute_linear(&inverse)?;
                let gb = back.groebner()?.to_vec();
                return Ok(Ideal::from_basis(r.clone(), gb));
            }
        }
        Err(Error::Certification("saturation could not find a general last variable".into()))
    }

    /// `I : x_n^∞` in grevlex (Bayer).
    fn bayer_last_variable(&self) -> Result<Ideal<F>> {
        let r = &self.ring;
        let n = r.nvars();
        let gb = if r.order() == MonoOrder::Grevlex {
            self.groebner()?.to_vec()
        } else {
            let g = Arc::new(r.with_order(MonoOrder::Grevlex)?);
            let gens: Vec<_> = self.gens.iter().map(|p| g.rekey(p)).collect();
            groebner::groebner(&g, &gens)?.iter().map(|p| r.rekey(p)).collect()
        };
        let divided: Vec<Poly<F::Elem>> = gb
            .iter()
            .map(|g| {
                let e = g.monos().map(|m| m.0[n - 1]).min().unwrap_or(0);
                if e == 0 {
                    return g.clone();
                }
                let mut m = Mono::ONE;
                m.0[n - 1] = e;
                r.from_terms(g.terms().iter().map(|t| (m.quotient_of(&t.mono), t.coeff.clone())))
            })
            .collect();
        let basis = if r.order() == MonoOrder::Grevlex {
            groebner::reduce_basis(r, divided)
        } else {
            groebner::groebner(r, &divided)?
        };
        Ok(Ideal::from_basis(r.clone(), basis))
    }

    /// Applies the ring endomorphism sending variable `i` to `images[i]`.
    pub fn substitute_linear(&self, images: &[Poly<F::Elem>]) -> Result<Ideal<F>> {
        let r = &self.ring;
        let gens = self.gens.iter().map(|g| r.substitute(g, r, images)).collect();
        Ideal::new(r.clone(), gens)
    }

    /// Generators of `I ∩ K[kept variables]`, as an ideal of a grevlex ring
    /// on the kept variables (weights preserved).
    pub fn eliminate(&self, vars: &[usize]) -> Result<Ideal<F>> {
        let r = &self.ring;
        let n = r.nvars();
        let elim: Vec<usize> = (0..n).filter(|i| vars.contains(i)).collect();
        let keep: Vec<usize> = (0..n).filter(|i| !vars.contains(i)).collect();
        if keep.is_empty() {
            return Err(Error::Empty("keep-set of elimination"));
        }
        let kept_names: Vec<&str> = keep.iter().map(|&i| r.names()[i].as_str()).collect();
        let kept_weights: Vec<u16> = keep.iter().map(|&i| r.weights()[i]).collect();
        let small = Arc::new(
            Ring::weighted(r.field().clone(), &kept_names, &kept_weights, MonoOrder::Grevlex)?
                .with_budget(r.budget()),
        );
        if elim.is_empty() {
            let g = self.gens.iter().map(|p| small.rekey(p)).collect();
            return Ideal::new(small, g);
        }
        let order: Vec<usize> = elim.iter().chain(&keep).copied().collect();
        let names: Vec<&str> = order.iter().map(|&i| r.names()[i].as_str()).collect();
        let weights: Vec<u16> = order.iter().map(|&i| r.weights()[i]).collect();
        let big = Ring::weighted(r.field().clone(), &names, &weights, MonoOrder::Block(elim.len()))?
            .with_budget(r.budget());
        let mut map = vec![0usize; n];
        for (pos, &i) in order.iter().enumerate() {
            map[i] = pos;
        }
        let gens: Vec<Poly<F::Elem>> = self.gens.iter().map(|g| r.embed(g, &big, &map)).collect();
        let gb = groebner::groebner(&big, &gens)?;
        let k = elim.len();
        let out: Vec<Poly<F::Elem>> = gb
            .iter()
            .filter(|g| g.monos().all(|m| m.0[..k].iter().all(|&e| e == 0)))
            .map(|g| {
                small.from_terms(g.terms().iter().map(|t| {
                    let mut m = Mono::ONE;
                    m.0[..n - k].copy_from_slice(&t.mono.0[k..n]);
                    (m, t.coeff.clone())
                }))
            })
            .collect();
        let basis = groebner::reduce_basis(&small, out);
        Ok(Ideal::from_basis(small, basis))
    }

    /// Minimal homogeneous generators, degree by degree.
    pub fn minimal_generators(&self) -> Result<Vec<Poly<F::Elem>>> {
        let r = &self.ring;
        let mut cands: Vec<Poly<F::Elem>> = if let Some(g) = self.gb.get() {
            g.clone()
        } else {
            self.gens.clone()
        };
        cands.sort_by_key(|p| r.degree(p).expect("nonzero"));
        let mut chosen: Vec<Poly<F::Elem>> = Vec::new();
        let mut i = 0;
        while i < cands.len() {
            let d = r.degree(&cands[i]).expect("nonzero");
            let mut j = i;
            while j < cands.len() && r.degree(&cands[j]) == Some(d) {
                j += 1;
            }
            // span of lower generators in degree d, then extend by this degree's candidates
            let monos = Mono::all_of_degree(r.nvars(), d);
            let lower = if chosen.is_empty() {
                vec![]
            } else {
                let low = Ideal::new(r.clone(), chosen.clone())?;
                low.graded_piece(d)?
            };
            let base = polys_to_rows(r, &lower, &monos);
            let extra = polys_to_rows(r, &cands[i..j], &monos);
            let (_, picked) = linalg::extend_basis(r.field(), &base, &extra);
            for p in picked {
                chosen.push(r.monic(&cands[i + p]));
            }
            i = j;
        }
        Ok(chosen)
    }

    /// Largest degree of a minimal generator (0 for the zero ideal).
    pub fn max_generator_degree(&self) -> Result<u32> {
        let r = &self.ring;
        Ok(self.minimal_generators()?.iter().filter_map(|g| r.degree(g)).max().unwrap_or(0))
    }

    /// Jacobian criterion at codimension `c` (from the Hilbert data when
    /// `None`): `I` plus the `c x c` minors, saturated.
    pub fn singular_locus_smooth(&self, expected_codim: Option<usize>) -> Result<SingularLocus<F>> {
        let h = self.hilbert()?;
        let c = match expected_codim {
            Some(c) if c != h.codim => {
                return Err(Error::CodimMismatch { expected: c, found: h.codim })
            }
            Some(c) => c,
            None => h.codim,
        };
        let r = &self.ring;
        let gens = self.minimal_generators()?;
        let jac = PolyMatrix::jacobian(r.clone(), &gens)?;
        let mut all = gens.clone();
        all.extend(jac.minors(c));
        let j = Ideal::new(r.clone(), all)?;
        let hj = j.hilbert()?;
        if hj.is_empty_scheme() {
            return Ok(SingularLocus { smooth: true, sing_ideal: Ideal::unit(r.clone()) });
        }
        let sat = j.saturate_irrelevant()?;
        let smooth = sat.is_unit()?;
        Ok(SingularLocus { smooth, sing_ideal: sat })
    }

    /// Saturation of the `k`-th ordinary power.
    pub fn power_saturated(&self, k: u32) -> Result<Ideal<F>> {
        if k == 0 {
            return Ok(Ideal::unit(self.ring.clone()));
        }
        if k == 1 {
            return self.saturate_irrelevant();
        }
        self.power(k)?.saturate_irrelevant()
    }

    /// Residual of `I` in the complete intersection `<f, g>`, saturated.
    pub fn linked_ideal(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Result<Ideal<F>> {
        if !self.contains(f)? {
            return Err(Error::NotMember("first linking form"));
        }
        if !self.contains(g)? {
            return Err(Error::NotMember("second linking form"));
        }
        let ci = self.complete_intersection(f, g)?;
        ci.quotient(self)?.saturate_irrelevant()
    }

    /// `<f, g>` after checking it is a complete intersection of codimension 2.
    pub fn complete_intersection(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Result<Ideal<F>> {
        let r = &self.ring;
        let ci = Ideal::new(r.clone(), vec![f.clone(), g.clone()])?;
        let (df, dg) = (r.degree(f).unwrap_or(0) as i64, r.degree(g).unwrap_or(0) as i64);
        let h = ci.hilbert()?;
        if h.codim != 2 || h.degree != df * dg {
            return Err(Error::CommonFactor);
        }
        Ok(ci)
    }

    /// Moves the ideal to a ring with the same variables (e.g. another order).
    pub fn with_ring(&self, ring: RingRef<F>) -> Result<Ideal<F>> {
        if ring.names() != self.ring.names() {
            return Err(Error::RingMismatch);
        }
        let gens = self.gens.iter().map(|p| ring.rekey(p)).collect();
        Ideal::new(ring, gens)
    }

    pub fn render_gens(&self) -> Vec<String> {
        self.gens.iter().map(|p| self.ring.render(p)).collect()
    }
}

/// Exact quotient `a / f`, or `None` when `f` does not divide `a`.
pub fn divide_exact<F: Field>(
    ring: &Ring<F>,
    a: &Poly<F::Elem>,
    f: &Poly<F::Elem>,
) -> Option<Poly<F::Elem>> {
    let fl = f.lead()?;
    let inv = ring.field().inv(&fl.coeff)?;
    let mut rem = a.clone();
    let mut quot = Vec::new();
    while let Some(t) = rem.lead() {
        let m = t.mono.checked_div(&fl.mono)?;
        let c = ring.field().mul(&t.coeff, &inv);
        rem = ring.sub(&rem, &ring.mul_term(f, &c, &m));
        quot.push((m, c));
    }
    Some(ring.from_terms(quot))
}

fn fresh_name<F: Field>(ring: &Ring<F>, base: &str) -> String {
    let mut name = format!("_{base}");
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

fn dedup_polys<F: Field>(ring: &Ring<F>, polys: Vec<Poly<F::Elem>>) -> Vec<Poly<F::Elem>> {
    let mut seen = std::collections::HashSet::new();
    polys.into_iter().map(|p| ring.monic(&p)).filter(|p| seen.insert(p.clone())).collect()
}

/// Coefficient rows of homogeneous polynomials over a fixed monomial list.
pub fn polys_to_rows<F: Field>(
    ring: &Ring<F>,
    polys: &[Poly<F::Elem>],
    monos: &[Mono],
) -> Vec<Vec<F::Elem>> {
    let index: std::collections::HashMap<Mono, usize> =
        monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    polys
        .iter()
        .map(|p| {
            let mut row = vec![ring.field().zero(); monos.len()];
            for t in p.terms() {
                row[index[&t.mono]] = t.coeff.clone();
            }
            row
        })
        .collect()
}

/// Row-reduces homogeneous polynomials of one degree to an echelon basis.
fn echelon_polys<F: Field>(ring: &Ring<F>, polys: Vec<Poly<F::Elem>>) -> Vec<Poly<F::Elem>> {
    let Some(d) = polys.first().and_then(|p| ring.degree(p)) else {
        return polys;
    };
    let monos = Mono::all_of_degree(ring.nvars(), d);
    let mut rows = polys_to_rows(ring, &polys, &monos);
    linalg::rref(ring.field(), &mut rows);
    rows.into_iter()
        .map(|row| {
            ring.from_terms(
                row.into_iter().zip(&monos).filter(|(c, _)| !ring.field().is_zero(c)).map(|(c, m)| (*m, c)),
            )
        })
        .collect()
}

/// Inverse of an invertible linear substitution given by variable images.
fn invert_linear<F: Field>(ring: &Ring<F>, images: &[Poly<F::Elem>]) -> Result<Vec<Poly<F::Elem>>> {
    let f = ring.field();
    let n = ring.nvars();
    // rows: image of variable i as coefficient vector, augmented by identity
    let mut rows: Vec<Vec<F::Elem>> = Vec::with_capacity(n);
    for (i, img) in images.iter().enumerate() {
        let mut row = vec![f.zero(); 2 * n];
        for t in img.terms() {
            if t.mono.degree() != 1 {
                return Err(Error::Precondition("substitution is not linear".into()));
            }
            let v = t.mono.0.iter().position(|&e| e == 1).expect("linear");
            row[v] = t.coeff.clone();
        }
        row[n + i] = f.one();
        rows.push(row);
    }
    let piv = linalg::rref(f, &mut rows);
    if piv.len() < n || piv[n - 1] >= n {
        return Err(Error::Precondition("substitution is not invertible".into()));
    }
    // rows[v] now expresses x_v = sum_i c_i * image_i; invert the roles
    Ok((0..n)
        .map(|v| ring.from_terms((0..n).map(|i| (Mono::var(i), rows[v][n + i].clone()))))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn ring(vars: &[&str]) -> RingRef<Rationals> {
        Ring::new(Rationals, vars, MonoOrder::Grevlex).unwrap().into_ref()
    }

    fn ideal(r: &RingRef<Rationals>, src: &str) -> Ideal<Rationals> {
        Ideal::parse(r.clone(), src).unwrap()
    }

    fn render(i: &Ideal<Rationals>) -> Vec<String> {
        i.groebner().unwrap().iter().map(|p| i.ring().render(p)).collect()
    }

    #[test]
    fn quotients_of_monomials() {
        let r = ring(&["x", "y"]);
        let i = ideal(&r, "x^2");
        let j = ideal(&r, "x");
        assert_eq!(render(&i.quotient(&j).unwrap()), ["x"]);
        assert!(i.saturate(&j).unwrap().is_unit().unwrap());
    }

    #[test]
    fn intersection_of_coordinate_lines() {
        let r = ring(&["x", "y", "z", "w"]);
        let a = ideal(&r, "x, y");
        let b = ideal(&r, "z, w");
        let c = a.intersect(&b).unwrap();
        assert_eq!(render(&c), ["y*w", "x*w", "y*z", "x*z"]);
        let h = c.hilbert().unwrap();
        assert_eq!((h.degree, h.genus), (2, Some(-1)));
    }

    #[test]
    fn parabola_elimination() {
        let r = Ring::weighted(Rationals, &["x", "y", "t"], &[1, 2, 1], MonoOrder::Grevlex)
            .unwrap()
            .into_ref();
        let i = Ideal::parse(r, "x - t, y - t^2").unwrap();
        let e = i.eliminate(&[2]).unwrap();
        assert_eq!(render(&e), ["x^2 - y"]);
        assert!(i.eliminate(&[0, 1, 2]).is_err());
    }

    #[test]
    fn saturation_removes_irrelevant_component() {
        let r = ring(&["x", "y", "z"]);
        // a point with an embedded irrelevant component
        let i = ideal(&r, "x^2, x*y, x*z");
        let s = i.saturate_irrelevant().unwrap();
        assert_eq!(render(&s), ["x"]);
        let s2 = s.saturate_irrelevant().unwrap();
        assert!(s.same_ideal(&s2).unwrap());
    }

    #[test]
    fn saturation_with_special_last_variable() {
        // z vanishes at the point [1:0:0]; the swap fallback must kick in
        let r = ring(&["x", "y", "z"]);
        let i = ideal(&r, "x*y, x*z, y^2, y*z, z^2");
        let s = i.saturate_irrelevant().unwrap();
        let h = s.hilbert().unwrap();
        assert_eq!(h.hilbert_polynomial, i.hilbert().unwrap().hilbert_polynomial);
        assert!(s.contains_ideal(&i).unwrap());
        let m = Ideal::irrelevant(r.clone());
        assert!(s.same_ideal(&i.saturate(&m).unwrap()).unwrap());
    }

    #[test]
    fn twisted_cubic_is_smooth_and_linked_to_a_line() {
        let r = ring(&["x", "y", "z", "w"]);
        let i = ideal(&r, "x*z - y^2, y*w - z^2, x*w - y*z");
        let h = i.hilbert().unwrap();
        assert_eq!((h.codim, h.degree, h.genus), (2, 3, Some(0)));
        assert!(i.singular_locus_smooth(Some(2)).unwrap().smooth);
        assert!(matches!(i.singular_locus_smooth(Some(1)), Err(Error::CodimMismatch { .. })));
        let f = i.gens()[0].clone();
        let g = i.gens()[1].clone();
        let l = i.linked_ideal(&f, &g).unwrap();
        let hl = l.hilbert().unwrap();
        assert_eq!((hl.degree, hl.genus), (1, Some(0)));
    }

    #[test]
    fn axes_are_singular() {
        let r = ring(&["x", "y", "z", "w"]);
        let i = ideal(&r, "x*y, x*z, y*z");
        let s = i.singular_locus_smooth(None).unwrap();
        assert!(!s.smooth);
        let h = s.sing_ideal.hilbert().unwrap();
        assert_eq!(h.krull_dim, 1);
        let origin = [0, 0, 0, 1].map(|v| Rationals.from_i64(v));
        assert!(s.sing_ideal.gens().iter().all(|g| r.eval(g, &origin) == Rationals.zero()));
    }

    #[test]
    fn linking_errors() {
        let r = ring(&["x", "y", "z", "w"]);
        let i = ideal(&r, "x, y");
        let err = i.linked_ideal(&r.var(2), &r.var(0)).unwrap_err();
        assert!(matches!(err, Error::NotMember(_)));
        let xy = r.mul(&r.var(0), &r.var(1));
        let xx = r.mul(&r.var(0), &r.var(0));
        assert!(matches!(i.linked_ideal(&xy, &xx), Err(Error::CommonFactor)));
        let ci = ideal(&r, "x, y");
        let l = ci.linked_ideal(&r.var(0), &r.var(1)).unwrap();
        assert!(l.is_unit().unwrap());
    }

    #[test]
    fn powers_and_graded_pieces() {
        let r = ring(&["x", "y", "z"]);
        let i = ideal(&r, "x, y");
        let p = i.power_saturated(2).unwrap();
        assert_eq!(render(&p), ["y^2", "x*y", "x^2"]);
        assert_eq!(p.graded_piece_dim(2).unwrap(), 3);
        assert_eq!(p.graded_piece_dim(3).unwrap(), 7);
        assert_eq!(i.graded_piece(1).unwrap().len(), 2);
    }

    #[test]
    fn minimal_generators_drop_redundancy() {
        let r = ring(&["x", "y", "z"]);
        let i = ideal(&r, "x, y, x*z + y^2, x + y");
        assert_eq!(i.minimal_generators().unwrap().len(), 2);
        assert_eq!(i.max_generator_degree().unwrap(), 1);
    }

    #[test]
    fn prime_field_intersection() {
        let r = Ring::new(PrimeField::default(), &["x", "y", "z"], MonoOrder::Grevlex)
            .unwrap()
            .into_ref();
        let a = Ideal::parse(r.clone(), "x^2 - y*z").unwrap();
        let b = Ideal::parse(r.clone(), "x*y + z^2").unwrap();
        let c = a.intersect(&b).unwrap();
        let prod = a.mul(&b).unwrap();
        assert!(c.same_ideal(&prod).unwrap());
    }

    #[test]
    fn exact_division() {
        let r = ring(&["x", "y"]);
        let a = crate::parse::parse_poly(&r, "x^3 - x*y^2").unwrap();
        let f = crate::parse::parse_poly(&r, "x + y").unwrap();
        let q = divide_exact(&r, &a, &f).unwrap();
        assert_eq!(r.render(&q), "x^2 - x*y");
        assert!(divide_exact(&r, &a, &r.var(1)).is_none());
    }
}
