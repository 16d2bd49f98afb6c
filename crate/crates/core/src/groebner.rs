//! Buchberger's algorithm for homogeneous ideals.
//!
//! Pairs are processed degree by degree with the Gebauer-Moeller product and
//! chain criteria. Within one degree the S-polynomials are reduced in
//! parallel against a snapshot of the basis; the results are then merged
//! sequentially in a fixed order, so the output does not depend on thread
//! scheduling. Reducer choice is deterministic: smallest leading monomial,
//! then lowest insertion index.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Mono;
use crate::poly::{Poly, Term};
use crate::ring::Ring;

#[derive(Clone, Debug)]
struct Elem<E> {
    poly: Poly<E>,
    lead: Mono,
    lead_key: u128,
    mask: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    lcm_key: u128,
}

/// Counters from one run, useful for budget tuning.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub top_degree: u32,
    pub basis_size: usize,
}

#[inline]
fn divmask(m: &Mono) -> u8 {
    let mut b = 0u8;
    for (i, &e) in m.0.iter().enumerate() {
        if e > 0 {
            b |= 1 << i;
        }
    }
    b
}

/// Basis under construction plus a reducer index sorted by (lead, insertion).
struct Basis<E> {
    elems: Vec<Elem<E>>,
    by_lead: Vec<usize>,
}

impl<E: Clone> Basis<E> {
    fn new() -> Self {
        Self { elems: Vec::new(), by_lead: Vec::new() }
    }

    fn push(&mut self, e: Elem<E>) -> usize {
        let idx = self.elems.len();
        let key = e.lead_key;
        self.elems.push(e);
        let pos = self.by_lead.partition_point(|&k| {
            let o = &self.elems[k];
            (o.lead_key, k) < (key, idx)
        });
        self.by_lead.insert(pos, idx);
        idx
    }

    #[inline]
    fn find_reducer(&self, m: &Mono, mask: u8) -> Option<&Elem<E>> {
        self.by_lead
            .iter()
            .map(|&k| &self.elems[k])
            .find(|e| e.mask & !mask == 0 && e.lead.divides(m))
    }
}

/// Full reduction of `p` modulo the basis; the result has no term divisible
/// by any leading monomial.
fn reduce<F: Field>(ring: &Ring<F>, p: Poly<F::Elem>, basis: &Basis<F::Elem>) -> Poly<F::Elem> {
    let f = ring.field();
    let mut acc: BTreeMap<u128, (Mono, F::Elem)> =
        p.into_terms().into_iter().map(|t| (t.key, (t.mono, t.coeff))).collect();
    let mut out: Vec<Term<F::Elem>> = Vec::new();
    while let Some((key, (m, c))) = acc.pop_last() {
        match basis.find_reducer(&m, divmask(&m)) {
            None => out.push(Term { key, mono: m, coeff: c }),
            Some(g) => {
                // g is monic: subtract c * (m / lead) * g, skipping its lead term
                let q = g.lead.quotient_of(&m);
                for t in &g.poly.terms()[1..] {
                    let mono = t.mono.mul(&q);
                    let k = ring.key(&mono);
                    match acc.entry(k) {
                        std::collections::btree_map::Entry::Occupied(mut o) => {
                            let v = f.sub_mul(&o.get().1, &c, &t.coeff);
                            if f.is_zero(&v) {
                                o.remove();
                            } else {
                                o.get_mut().1 = v;
                            }
                        }
                        std::collections::btree_map::Entry::Vacant(v) => {
                            v.insert((mono, f.neg(&f.mul(&c, &t.coeff))));
                        }
                    }
                }
            }
        }
    }
    ring.from_sorted_terms(out)
}

fn s_poly<F: Field>(ring: &Ring<F>, a: &Elem<F::Elem>, b: &Elem<F::Elem>, lcm: &Mono) -> Poly<F::Elem> {
    let one = ring.field().one();
    let pa = ring.mul_term(&a.poly, &one, &a.lead.quotient_of(lcm));
    let pb = ring.mul_term(&b.poly, &one, &b.lead.quotient_of(lcm));
    ring.sub(&pa, &pb)
}

/// Options for [`groebner_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct GbOptions {
    /// Stop after all pairs of this degree are processed; the result is then
    /// a Groebner basis of the ideal truncated at that degree.
    pub truncate: Option<u32>,
    /// Skip the final inter-reduction (leading monomials are still minimal).
    pub skip_interreduce: bool,
}

/// Reduced Groebner basis of a homogeneous ideal.
pub fn groebner<F: Field>(ring: &Ring<F>, gens: &[Poly<F::Elem>]) -> Result<Vec<Poly<F::Elem>>> {
    groebner_with(ring, gens, GbOptions::default()).map(|(g, _)| g)
}

pub fn groebner_with<F: Field>(
    ring: &Ring<F>,
    gens: &[Poly<F::Elem>],
    opts: GbOptions,
) -> Result<(Vec<Poly<F::Elem>>, GbStats)> {
    let budget = ring.budget();
    let start = Instant::now();
    let mut stats = GbStats::default();

    // input generators queue up by degree, like pairs
    let mut inputs: BTreeMap<u32, Vec<Poly<F::Elem>>> = BTreeMap::new();
    for (idx, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        if !ring.is_homogeneous(g) {
            return Err(Error::Inhomogeneous(idx));
        }
        let d = ring.degree(g).expect("nonzero");
        inputs.entry(d).or_default().push(ring.monic(g));
    }

    let mut basis: Basis<F::Elem> = Basis::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: BTreeMap<u32, Vec<Pair>> = BTreeMap::new();

    loop {
        let next_pair = pairs.keys().next().copied();
        let next_input = inputs.keys().next().copied();
        let d = match (next_pair, next_input) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if let Some(t) = opts.truncate {
            if d > t {
                break;
            }
        }
        if let Some(maxd) = budget.max_degree {
            if d > maxd {
                return Err(Error::Budget(format!("degree {d} exceeds max_degree {maxd}")));
            }
        }
        if let Some(limit) = budget.max_time {
            if start.elapsed() > limit {
                return Err(Error::Budget(format!("wall clock exceeded {limit:?}")));
            }
        }
        stats.top_degree = d;

        let mut batch = pairs.remove(&d).unwrap_or_default();
        batch.sort_by_key(|p| (p.lcm_key, p.i, p.j));
        let new_inputs = inputs.remove(&d).unwrap_or_default();
        stats.pairs_reduced += batch.len();
        if let Some(mp) = budget.max_pairs {
            if stats.pairs_reduced > mp {
                return Err(Error::Budget(format!("more than {mp} pairs")));
            }
        }

        let snapshot = &basis;
        let mut reduced: Vec<Poly<F::Elem>> = batch
            .par_iter()
            .map(|p| {
                let s = s_poly(ring, &snapshot.elems[p.i], &snapshot.elems[p.j], &p.lcm);
                reduce(ring, s, snapshot)
            })
            .collect();
        let reduced_inputs: Vec<Poly<F::Elem>> =
            new_inputs.into_par_iter().map(|g| reduce(ring, g, snapshot)).collect();
        reduced.extend(reduced_inputs);

        let before = basis.elems.len();
        for h in reduced {
            if h.is_zero() {
                stats.zero_reductions += 1;
                continue;
            }
            let h = if basis.elems.len() > before { reduce(ring, h, &basis) } else { h };
            if h.is_zero() {
                stats.zero_reductions += 1;
                continue;
            }
            let h = ring.monic(&h);
            update(ring, &mut basis, &mut active, &mut pairs, h);
        }
    }

    let mut keep: Vec<usize> = (0..basis.elems.len()).filter(|&i| active[i]).collect();
    // an element is redundant when another leading monomial divides its own
    let all = keep.clone();
    keep.retain(|&i| {
        !all.iter().any(|&j| {
            j != i
                && basis.elems[j].lead.divides(&basis.elems[i].lead)
                && (basis.elems[j].lead != basis.elems[i].lead || j < i)
        })
    });
    keep.sort_by_key(|&i| basis.elems[i].lead_key);
    let mut out: Vec<Poly<F::Elem>> = keep.iter().map(|&i| basis.elems[i].poly.clone()).collect();
    if !opts.skip_interreduce {
        out = interreduce(ring, out);
    }
    stats.basis_size = out.len();
    Ok((out, stats))
}

fn update<F: Field>(
    ring: &Ring<F>,
    basis: &mut Basis<F::Elem>,
    active: &mut Vec<bool>,
    pairs: &mut BTreeMap<u32, Vec<Pair>>,
    h: Poly<F::Elem>,
) {
    let lead = h.lead_mono().expect("nonzero");
    let lead_key = ring.key(&lead);
    let hidx = basis.elems.len();

    // candidate new pairs (h, g) with g active
    let cands: Vec<(usize, Mono)> =
        (0..hidx).filter(|&g| active[g]).map(|g| (g, basis.elems[g].lead.lcm(&lead))).collect();

    // chain criterion among the new pairs
    let mut d_set: Vec<(usize, Mono)> = Vec::new();
    for (pos, &(g, l)) in cands.iter().enumerate() {
        let coprime = basis.elems[g].lead.is_coprime(&lead);
        let dominated = !coprime
            && (cands[pos + 1..].iter().any(|(_, l2)| l2.divides(&l))
                || d_set.iter().any(|(_, l2)| l2.divides(&l)));
        if coprime || !dominated {
            d_set.push((g, l));
        }
    }
    // product criterion
    let new_pairs: Vec<(usize, Mono)> = d_set
        .into_iter()
        .filter(|(g, _)| !basis.elems[*g].lead.is_coprime(&lead))
        .collect();

    // drop old pairs made redundant by h
    for list in pairs.values_mut() {
        list.retain(|p| {
            let a = &basis.elems[p.i].lead;
            let b = &basis.elems[p.j].lead;
            !(lead.divides(&p.lcm) && a.lcm(&lead) != p.lcm && b.lcm(&lead) != p.lcm)
        });
    }
    pairs.retain(|_, v| !v.is_empty());

    for g in 0..hidx {
        if active[g] && lead.divides(&basis.elems[g].lead) {
            active[g] = false;
        }
    }

    basis.push(Elem { lead, lead_key, mask: divmask(&lead), poly: h });
    active.push(true);
    for (g, l) in new_pairs {
        let d = ring.wdeg(&l);
        pairs.entry(d).or_default().push(Pair { i: g, j: hidx, lcm: l, lcm_key: ring.key(&l) });
    }
}

/// Minimal reduced form of a list that is already a Groebner basis.
pub fn reduce_basis<F: Field>(ring: &Ring<F>, polys: Vec<Poly<F::Elem>>) -> Vec<Poly<F::Elem>> {
    let mut polys: Vec<Poly<F::Elem>> =
        polys.into_iter().filter(|p| !p.is_zero()).map(|p| ring.monic(&p)).collect();
    polys.sort_by_key(|p| ring.key(&p.lead_mono().expect("nonzero")));
    let mut keep: Vec<Poly<F::Elem>> = Vec::new();
    for p in polys {
        let l = p.lead_mono().expect("nonzero");
        if !keep.iter().any(|q| q.lead_mono().expect("nonzero").divides(&l)) {
            keep.push(p);
        }
    }
    interreduce(ring, keep)
}

/// Tail-reduces a basis with minimal leading monomials and makes it monic.
pub fn interreduce<F: Field>(ring: &Ring<F>, polys: Vec<Poly<F::Elem>>) -> Vec<Poly<F::Elem>> {
    let mut polys: Vec<Poly<F::Elem>> = polys.into_iter().map(|p| ring.monic(&p)).collect();
    polys.sort_by_key(|p| ring.key(&p.lead_mono().expect("nonzero")));
    let mut done: Vec<Poly<F::Elem>> = Vec::with_capacity(polys.len());
    // ascending leads: each element only needs reducing by smaller ones,
    // but earlier tails may contain larger leads, so reduce against all
    for i in 0..polys.len() {
        let mut others = Basis::new();
        for (j, q) in polys.iter().enumerate() {
            if j != i {
                let lead = q.lead_mono().expect("nonzero");
                others.push(Elem { lead, lead_key: ring.key(&lead), mask: divmask(&lead), poly: q.clone() });
            }
        }
        let p = &polys[i];
        let head = p.terms()[0].clone();
        let tail = Poly { terms: p.terms()[1..].to_vec() };
        let red = reduce(ring, tail, &others);
        let mut terms = vec![head];
        terms.extend(red.into_terms());
        done.push(Poly { terms });
    }
    done
}

/// Reduction of `p` modulo an arbitrary list of polynomials (not
/// necessarily a Groebner basis). Zero iff `p` is in the ideal when `basis`
/// is a Groebner basis.
pub fn normal_form<F: Field>(ring: &Ring<F>, p: &Poly<F::Elem>, basis: &[Poly<F::Elem>]) -> Poly<F::Elem> {
    let b = basis_from(ring, basis);
    reduce(ring, p.clone(), &b)
}

/// Reduces many polynomials against one basis, in parallel.
pub fn normal_forms<F: Field>(
    ring: &Ring<F>,
    ps: &[Poly<F::Elem>],
    basis: &[Poly<F::Elem>],
) -> Vec<Poly<F::Elem>> {
    let b = basis_from(ring, basis);
    ps.par_iter().map(|p| reduce(ring, p.clone(), &b)).collect()
}

fn basis_from<F: Field>(ring: &Ring<F>, basis: &[Poly<F::Elem>]) -> Basis<F::Elem> {
    let mut b = Basis::new();
    for q in basis {
        if q.is_zero() {
            continue;
        }
        let q = ring.monic(q);
        let lead = q.lead_mono().expect("nonzero");
        b.push(Elem { lead, lead_key: ring.key(&lead), mask: divmask(&lead), poly: q });
    }
    b
}

/// Cache-friendly normal form table: reduces each monomial once.
pub struct Reducer<'a, F: Field> {
    ring: &'a Ring<F>,
    basis: Basis<F::Elem>,
    memo: HashMap<Mono, Poly<F::Elem>>,
}

impl<'a, F: Field> Reducer<'a, F> {
    pub fn new(ring: &'a Ring<F>, gb: &[Poly<F::Elem>]) -> Self {
        Self { ring, basis: basis_from(ring, gb), memo: HashMap::new() }
    }

    pub fn is_standard(&self, m: &Mono) -> bool {
        self.basis.find_reducer(m, divmask(m)).is_none()
    }

    /// Normal form of a single monomial, memoized.
    pub fn nf_mono(&mut self, m: &Mono) -> Poly<F::Elem> {
        if let Some(p) = self.memo.get(m) {
            return p.clone();
        }
        let p = reduce(self.ring, self.ring.monomial(self.ring.field().one(), *m), &self.basis);
        self.memo.insert(*m, p.clone());
        p
    }

    pub fn nf(&self, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        reduce(self.ring, p.clone(), &self.basis)
    }
}
