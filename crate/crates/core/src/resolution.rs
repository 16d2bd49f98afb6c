//! Minimal graded free resolutions of cyclic modules `S/I` by degreewise
//! linear algebra, and their Betti tables.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Reducer;
use crate::hilbert;
use crate::ideal::Ideal;
use crate::linalg;
use crate::monomial::Mono;
use crate::poly::Poly;
use crate::ring::{Ring, RingRef};

/// Graded Betti numbers `β_{i,j}` of `S/I`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "BTreeMap<String, u64>", try_from = "BTreeMap<String, u64>")]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), u64>,
}

impl From<BettiTable> for BTreeMap<String, u64> {
    fn from(b: BettiTable) -> Self {
        b.entries.into_iter().map(|((i, j), v)| (format!("{i},{j}"), v)).collect()
    }
}

impl TryFrom<BTreeMap<String, u64>> for BettiTable {
    type Error = String;
    fn try_from(m: BTreeMap<String, u64>) -> std::result::Result<Self, String> {
        let mut t = BettiTable::default();
        for (k, v) in m {
            let (a, b) = k.split_once(',').ok_or_else(|| format!("bad key {k:?}"))?;
            let i = a.trim().parse().map_err(|_| format!("bad key {k:?}"))?;
            let j = b.trim().parse().map_err(|_| format!("bad key {k:?}"))?;
            t.set(i, j, v);
        }
        Ok(t)
    }
}

impl BettiTable {
    pub fn get(&self, i: usize, j: i64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: i64, v: u64) {
        if v == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, i64), u64)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    /// Largest homological index with a nonzero entry.
    pub fn length(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> u64 {
        self.entries.iter().filter(|(k, _)| k.0 == i).map(|(_, v)| v).sum()
    }

    /// Twists of the `i`-th free module, with multiplicity.
    pub fn twists(&self, i: usize) -> Vec<i64> {
        let mut out = Vec::new();
        for (&(a, j), &v) in &self.entries {
            if a == i {
                out.extend(std::iter::repeat_n(j, v as usize));
            }
        }
        out
    }

    /// `Σ_i (-1)^i Σ_j β_{i,j} t^j`, coefficients indexed by degree.
    pub fn numerator(&self) -> Vec<i64> {
        let top = self.entries.keys().map(|k| k.1).max().unwrap_or(0).max(0) as usize;
        let mut out = vec![0i64; top + 1];
        for (&(i, j), &v) in &self.entries {
            let s = if i % 2 == 0 { 1 } else { -1 };
            out[j as usize] += s * v as i64;
        }
        while out.len() > 1 && *out.last().unwrap() == 0 {
            out.pop();
        }
        out
    }

    /// Row `r` in the display convention: entry `i` is `β_{i, i + r}`.
    pub fn row(&self, r: i64) -> Vec<u64> {
        (0..=self.length()).map(|i| self.get(i, i as i64 + r)).collect()
    }

    /// Text layout with columns `1..=length` and one row per `j - i`.
    pub fn render(&self) -> String {
        let len = self.length();
        let rows: BTreeSet<i64> =
            self.entries.keys().filter(|k| k.0 >= 1).map(|k| k.1 - k.0 as i64).collect();
        let (Some(&lo), Some(&hi)) = (rows.first(), rows.last()) else {
            return String::from("(zero)\n");
        };
        let cells: Vec<Vec<String>> = (lo..=hi)
            .map(|r| {
                (1..=len)
                    .map(|i| match self.get(i, i as i64 + r) {
                        0 => "-".to_string(),
                        v => v.to_string(),
                    })
                    .collect()
            })
            .collect();
        let w = cells.iter().flatten().map(|s| s.len()).chain([len.to_string().len()]).max().unwrap();
        let lw = hi.to_string().len().max(lo.to_string().len());
        let mut s = String::new();
        let _ = write!(s, "{:lw$} |", "");
        for i in 1..=len {
            let _ = write!(s, " {i:>w$}");
        }
        s.push('\n');
        for (r, row) in (lo..=hi).zip(&cells) {
            let _ = write!(s, "{r:>lw$} |");
            for c in row {
                let _ = write!(s, " {c:>w$}");
            }
            s.push('\n');
        }
        s
    }
}

/// A homogeneous map of graded free modules `⊕ S(-src) → ⊕ S(-tgt)`;
/// `cols[k]` is the image of the `k`-th basis element.
#[derive(Clone, Debug)]
pub struct GradedMap<E> {
    pub src: Vec<u32>,
    pub tgt: Vec<u32>,
    pub cols: Vec<Vec<Poly<E>>>,
}

#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    pub ring: RingRef<F>,
    /// `maps[i]` is the differential `F_{i+1} → F_i`.
    pub maps: Vec<GradedMap<F::Elem>>,
    pub betti: BettiTable,
}

/// Basis of `(⊕ S(-shifts))_d` as (component, monomial) pairs.
fn degree_basis(shifts: &[u32], d: i64, n: usize) -> Vec<(usize, Mono)> {
    let mut out = Vec::new();
    for (k, &s) in shifts.iter().enumerate() {
        if d >= s as i64 {
            for m in Mono::all_of_degree(n, (d - s as i64) as u32) {
                out.push((k, m));
            }
        }
    }
    out
}

type Coords<E> = Vec<E>;

impl<E: Clone> GradedMap<E> {
    /// Matrix of the map in degree `d` (rows: target basis, columns: source basis).
    pub(crate) fn matrix<F: Field<Elem = E>>(&self, ring: &Ring<F>, d: i64) -> (Vec<(usize, Mono)>, Vec<Vec<E>>) {
        let n = ring.nvars();
        let f = ring.field();
        let dom = degree_basis(&self.src, d, n);
        let tgt = degree_basis(&self.tgt, d, n);
        let index: HashMap<(usize, Mono), usize> =
            tgt.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        let mut rows = vec![vec![f.zero(); dom.len()]; tgt.len()];
        for (c, (k, m)) in dom.iter().enumerate() {
            for (l, p) in self.cols[*k].iter().enumerate() {
                for t in p.terms() {
                    let r = index[&(l, t.mono.mul(m))];
                    rows[r][c] = t.coeff.clone();
                }
            }
        }
        (dom, rows)
    }
}

/// Kernel of `map` in degree `d`, in coordinates of the source basis.
fn kernel_in_degree<F: Field>(
    ring: &Ring<F>,
    map: &GradedMap<F::Elem>,
    d: i64,
) -> (Vec<(usize, Mono)>, Vec<Coords<F::Elem>>) {
    let (dom, rows) = map.matrix(ring, d);
    if dom.is_empty() {
        return (dom, vec![]);
    }
    let k = linalg::nullspace(ring.field(), &rows, dom.len());
    (dom, k)
}

fn coords_to_vector<F: Field>(
    ring: &Ring<F>,
    basis: &[(usize, Mono)],
    coords: &[F::Elem],
    rank: usize,
) -> Vec<Poly<F::Elem>> {
    let mut comps: Vec<Vec<(Mono, F::Elem)>> = vec![Vec::new(); rank];
    for ((k, m), c) in basis.iter().zip(coords) {
        if !ring.field().is_zero(c) {
            comps[*k].push((*m, c.clone()));
        }
    }
    comps.into_iter().map(|t| ring.from_terms(t)).collect()
}

/// Minimal generators of `ker map`, restricted to the candidate degrees.
fn minimal_kernel_generators<F: Field>(
    ring: &Ring<F>,
    map: &GradedMap<F::Elem>,
    degrees: &[i64],
) -> (Vec<u32>, Vec<Vec<Poly<F::Elem>>>) {
    let n = ring.nvars();
    let mut need: BTreeSet<i64> = BTreeSet::new();
    for &d in degrees {
        need.insert(d);
        need.insert(d - 1);
    }
    let need: Vec<i64> = need.into_iter().collect();
    let kernels: HashMap<i64, (Vec<(usize, Mono)>, Vec<Coords<F::Elem>>)> =
        need.par_iter().map(|&d| (d, kernel_in_degree(ring, map, d))).collect();
    let f = ring.field();
    let mut shifts = Vec::new();
    let mut gens = Vec::new();
    for &d in degrees {
        let (dom, ker) = &kernels[&d];
        if ker.is_empty() {
            continue;
        }
        let index: HashMap<(usize, Mono), usize> =
            dom.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        let (ldom, lker) = &kernels[&(d - 1)];
        let mut base = Vec::with_capacity(lker.len() * n);
        for v in lker {
            for s in 0..n {
                let mut w = vec![f.zero(); dom.len()];
                for ((k, m), c) in ldom.iter().zip(v) {
                    if !f.is_zero(c) {
                        w[index[&(*k, m.mul(&Mono::var(s)))]] = c.clone();
                    }
                }
                base.push(w);
            }
        }
        let (_, chosen) = linalg::extend_basis(f, &base, ker);
        for c in chosen {
            shifts.push(d as u32);
            gens.push(coords_to_vector(ring, dom, &ker[c], map.src.len()));
        }
    }
    (shifts, gens)
}

/// Minimal graded free resolution of `S/I`.
///
/// Candidate degrees come from the Betti numbers of the leading-term ideal,
/// which bound those of `I`. The result is certified by comparing the
/// alternating Betti sum with the Hilbert numerator.
pub fn minimal_resolution<F: Field>(ideal: &Ideal<F>) -> Result<Resolution<F>> {
    let ring = ideal.ring().clone();
    let n = ring.nvars();
    let h = ideal.hilbert()?;
    let mut betti = BettiTable::default();
    if ideal.is_unit()? {
        return Ok(Resolution { ring, maps: vec![], betti });
    }
    betti.set(0, 0, 1);
    let leads = ideal.leading_monomials()?;
    let bound = hilbert::monomial_betti(&leads, n);

    let gens = ideal.minimal_generators()?;
    let mut maps = Vec::new();
    if !gens.is_empty() {
        let src: Vec<u32> = gens.iter().map(|g| ring.degree(g).expect("nonzero")).collect();
        for &d in &src {
            betti.set(1, d as i64, betti.get(1, d as i64) + 1);
        }
        let cols = gens.into_iter().map(|g| vec![g]).collect();
        maps.push(GradedMap { src, tgt: vec![0], cols });
    }
    let mut i = 1;
    while let Some(last) = maps.last() {
        let degrees: Vec<i64> = bound
            .get(i + 1)
            .map(|row| (0..row.len()).filter(|&j| row[j] > 0).map(|j| j as i64).collect())
            .unwrap_or_default();
        if degrees.is_empty() {
            break;
        }
        let (src, cols) = minimal_kernel_generators(&ring, last, &degrees);
        if src.is_empty() {
            break;
        }
        for &d in &src {
            betti.set(i + 1, d as i64, betti.get(i + 1, d as i64) + 1);
        }
        let tgt = last.src.clone();
        maps.push(GradedMap { src, tgt, cols });
        i += 1;
    }
    if betti.numerator() != h.numerator {
        return Err(Error::Certification(format!(
            "Betti numerator {:?} differs from Hilbert numerator {:?}",
            betti.numerator(),
            h.numerator
        )));
    }
    Ok(Resolution { ring, maps, betti })
}

/// Betti table from the minimal resolution.
pub fn minimal_resolution_betti<F: Field>(ideal: &Ideal<F>) -> Result<BettiTable> {
    minimal_resolution(ideal).map(|r| r.betti)
}

/// Betti numbers as Koszul homology `Tor_i(S/I, K)_j`, computed from
/// normal forms of standard monomials. Independent of the resolution code.
pub fn koszul_betti<F: Field>(ideal: &Ideal<F>) -> Result<BettiTable> {
    let ring = ideal.ring().clone();
    let n = ring.nvars();
    let gb = ideal.groebner()?.to_vec();
    let mut table = BettiTable::default();
    if ideal.is_unit()? {
        return Ok(table);
    }
    let leads = ideal.leading_monomials()?;
    let bound = hilbert::monomial_betti(&leads, n);
    let top = bound.iter().map(|r| r.len()).max().unwrap_or(1) as i64;
    let f = ring.field();
    let mut red = Reducer::new(&ring, &gb);
    let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| crate::matrix::subsets(n, k)).collect();
    let std_monos = |red: &Reducer<F>, d: i64| -> Vec<Mono> {
        if d < 0 {
            return vec![];
        }
        Mono::all_of_degree(n, d as u32).into_iter().filter(|m| red.is_standard(m)).collect()
    };
    // rank of d_i : C_i → C_{i-1} in internal degree j
    let rank_of = |i: usize, j: i64, red: &mut Reducer<F>| -> usize {
        if i == 0 || i > n {
            return 0;
        }
        let dom_m = std_monos(red, j - i as i64);
        let tgt_m = std_monos(red, j - i as i64 + 1);
        if dom_m.is_empty() || tgt_m.is_empty() {
            return 0;
        }
        let tidx: HashMap<(usize, Mono), usize> = subsets[i - 1]
            .iter()
            .enumerate()
            .flat_map(|(a, _)| tgt_m.iter().map(move |m| (a, *m)))
            .enumerate()
            .map(|(k, x)| (x, k))
            .collect();
        let sidx: HashMap<&Vec<usize>, usize> =
            subsets[i - 1].iter().enumerate().map(|(a, s)| (s, a)).collect();
        let mut rows = Vec::new();
        for sigma in &subsets[i] {
            for m in &dom_m {
                let mut row = vec![f.zero(); tidx.len()];
                for (pos, &s) in sigma.iter().enumerate() {
                    let mut rest = sigma.clone();
                    rest.remove(pos);
                    let a = sidx[&rest];
                    let nf = red.nf_mono(&m.mul(&Mono::var(s)));
                    for t in nf.terms() {
                        let c = if pos % 2 == 0 { t.coeff.clone() } else { f.neg(&t.coeff) };
                        let k = tidx[&(a, t.mono)];
                        row[k] = f.add(&row[k], &c);
                    }
                }
                rows.push(row);
            }
        }
        linalg::rank(f, &rows)
    };
    for i in 0..=n {
        for j in 0..=top {
            let dim = subsets[i].len() * std_monos(&red, j - i as i64).len();
            if dim == 0 {
                continue;
            }
            let b = dim - rank_of(i, j, &mut red) - rank_of(i + 1, j, &mut red);
            table.set(i, j, b as u64);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::ring::MonoOrder;

    fn ideal(vars: &[&str], src: &str) -> Ideal<Rationals> {
        let r = Ring::new(Rationals, vars, MonoOrder::Grevlex).unwrap().into_ref();
        Ideal::parse(r, src).unwrap()
    }

    #[test]
    fn koszul_complex_of_two_quartics() {
        let i = ideal(&["x", "y", "z", "w"], "x^4 + y^4, z^4 - x*w^3");
        let b = minimal_resolution_betti(&i).unwrap();
        assert_eq!(b.get(0, 0), 1);
        assert_eq!(b.get(1, 4), 2);
        assert_eq!(b.get(2, 8), 1);
        assert_eq!(b.length(), 2);
        assert_eq!(koszul_betti(&i).unwrap(), b);
    }

    #[test]
    fn twisted_cubic_table() {
        let i = ideal(&["x", "y", "z", "w"], "x*z - y^2, y*w - z^2, x*w - y*z");
        let res = minimal_resolution(&i).unwrap();
        assert_eq!(res.betti.get(1, 2), 3);
        assert_eq!(res.betti.get(2, 3), 2);
        assert_eq!(res.maps.len(), 2);
        // the composite of consecutive differentials vanishes
        let r = &res.ring;
        let (a, b) = (&res.maps[0], &res.maps[1]);
        for col in &b.cols {
            let mut acc = r.zero();
            for (k, p) in col.iter().enumerate() {
                acc = r.add(&acc, &r.mul(&a.cols[k][0], p));
            }
            assert!(acc.is_zero());
        }
        assert_eq!(koszul_betti(&i).unwrap(), res.betti);
        assert_eq!(res.betti.render(), "  | 1 2\n1 | 3 2\n");
    }

    #[test]
    fn json_keys() {
        let i = ideal(&["x", "y"], "x^2, x*y");
        let b = minimal_resolution_betti(&i).unwrap();
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, r#"{"0,0":1,"1,2":2,"2,3":1}"#);
        let back: BettiTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn prime_field_matches_koszul() {
        let r = Ring::new(PrimeField::default(), &["x", "y", "z"], MonoOrder::Grevlex)
            .unwrap()
            .into_ref();
        let i = Ideal::parse(r, "x^2 - y*z, x*y, y^3 + z^3").unwrap();
        let b = minimal_resolution_betti(&i).unwrap();
        assert_eq!(koszul_betti(&i).unwrap(), b);
    }
}
