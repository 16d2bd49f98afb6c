//! Hilbert series of monomial ideals and the derived Hilbert data.

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::monomial::Mono;

/// Minimal generators of the monomial ideal spanned by `gens`, sorted.
pub fn minimalize(gens: &[Mono]) -> Vec<Mono> {
    let mut v: Vec<Mono> = gens.to_vec();
    v.sort_by_key(|m| (m.degree(), *m));
    v.dedup();
    let mut out: Vec<Mono> = Vec::with_capacity(v.len());
    for m in v {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Numerator `N(t)` of the Hilbert series `N(t) / (1 - t)^n` of `S / M`.
/// Coefficients are indexed by degree.
pub fn numerator(gens: &[Mono]) -> Vec<i64> {
    let gens = minimalize(gens);
    num_rec(gens)
}

fn poly_sub(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &c) in b.iter().enumerate() {
        a[i + shift] -= c;
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn num_rec(gens: Vec<Mono>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    // pairwise coprime generators: the series factors
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        let mut acc = vec![1i64];
        for g in &gens {
            let d = g.degree() as usize;
            let mut f = vec![0i64; d + 1];
            f[0] = 1;
            f[d] -= 1;
            acc = poly_mul(&acc, &f);
        }
        return trim(acc);
    }
    // pivot on the variable occurring in the most generators
    let mut counts = [0usize; crate::monomial::MAX_VARS];
    for g in &gens {
        for (i, &e) in g.0.iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let var = (0..counts.len()).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).expect("nonempty");
    // a pure power of `var` among the generators must stay outside the pivot
    let mut exps: Vec<u16> = gens
        .iter()
        .filter(|g| g.degree() != g.0[var] as u32)
        .map(|g| g.0[var])
        .filter(|&e| e > 0)
        .collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2];
    let mut pivot = Mono::ONE;
    pivot.0[var] = e;

    // N(M) = N(M + <p>) + t^deg(p) N(M : p)
    let mut plus: Vec<Mono> = gens.iter().filter(|g| !pivot.divides(g)).copied().collect();
    plus.push(pivot);
    let colon: Vec<Mono> = gens
        .iter()
        .map(|g| {
            let mut h = *g;
            h.0[var] = h.0[var].saturating_sub(e);
            h
        })
        .collect();
    let mut a = num_rec(minimalize(&plus));
    let b = num_rec(minimalize(&colon));
    // subtract the negated term: a + t^e * b
    let neg: Vec<i64> = b.iter().map(|x| -x).collect();
    poly_sub(&mut a, &neg, e as usize);
    trim(a)
}

/// Binomial coefficient as a polynomial in `x`: `C(x + k, k)` evaluated at
/// an integer (valid for negative `x`).
pub fn binom_poly(x: i64, k: usize) -> i128 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 1..=k as i128 {
        num *= x as i128 + i;
        den *= i;
    }
    num / den
}

/// Honest binomial `C(n, k)` with zero for `n < k` or negative `n`.
pub fn binom(n: i64, k: i64) -> i128 {
    if k < 0 || n < k || n < 0 {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k as i128 {
        acc = acc * (n as i128 - i) / (i + 1);
    }
    acc
}

pub type Q = Ratio<i128>;

/// Hilbert function, polynomial and numerical invariants of `S / I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub nvars: usize,
    /// Numerator of the Hilbert series over `(1 - t)^nvars`.
    pub numerator: Vec<i64>,
    /// Reduced numerator over `(1 - t)^krull_dim`.
    pub reduced: Vec<i64>,
    pub krull_dim: usize,
    pub codim: usize,
    pub degree: i64,
    /// Coefficients of the Hilbert polynomial, constant term first, as
    /// `(numerator, denominator)` pairs.
    pub hilbert_polynomial: Vec<(i128, i128)>,
    /// Arithmetic genus `1 - p(0)` when the projective scheme is a curve.
    pub genus: Option<i64>,
    /// Hilbert function equals the polynomial from this degree on.
    pub regularity_index: i64,
}

impl HilbertData {
    pub fn from_numerator(numerator: Vec<i64>, nvars: usize) -> Self {
        let numerator = trim(numerator);
        if numerator.iter().all(|&c| c == 0) {
            return Self {
                nvars,
                numerator: vec![0],
                reduced: vec![0],
                krull_dim: 0,
                codim: nvars,
                degree: 0,
                hilbert_polynomial: vec![],
                genus: None,
                regularity_index: 0,
            };
        }
        let mut q = numerator.clone();
        let mut c = 0;
        // divide by (1 - t) while it vanishes at t = 1
        while c < nvars && q.iter().sum::<i64>() == 0 {
            let mut out = vec![0i64; q.len() - 1];
            let mut carry = 0i64;
            for i in 0..q.len() - 1 {
                carry += q[i];
                out[i] = carry;
            }
            q = trim(out);
            c += 1;
        }
        let krull_dim = nvars - c;
        let degree: i64 = q.iter().sum();
        let hp = hp_coeffs(&q, krull_dim);
        let genus = if krull_dim == 2 {
            let p0 = hp.first().copied().unwrap_or_else(Q::zero);
            Some((Q::from_integer(1) - p0).to_integer() as i64)
        } else {
            None
        };
        let regularity_index = q.len() as i64 - krull_dim as i64;
        Self {
            nvars,
            numerator,
            reduced: q,
            krull_dim,
            codim: c,
            degree,
            hilbert_polynomial: hp.iter().map(|r| (*r.numer(), *r.denom())).collect(),
            genus,
            regularity_index,
        }
    }

    /// Dimension of `(S/I)_m`.
    pub fn hilbert_function(&self, m: i64) -> i64 {
        let n = self.nvars as i64;
        self.numerator
            .iter()
            .enumerate()
            .map(|(k, &c)| c as i128 * binom(m - k as i64 + n - 1, n - 1))
            .sum::<i128>() as i64
    }

    /// Value of the Hilbert polynomial at `m`.
    pub fn hilbert_poly_at(&self, m: i64) -> i64 {
        if self.krull_dim == 0 {
            return 0;
        }
        self.reduced
            .iter()
            .enumerate()
            .map(|(k, &c)| c as i128 * binom_poly(m - k as i64, self.krull_dim - 1))
            .sum::<i128>() as i64
    }

    /// Projective dimension of the scheme; `-1` for the empty scheme.
    pub fn projective_dim(&self) -> i64 {
        self.krull_dim as i64 - 1
    }

    /// True when the projective scheme is empty (Hilbert polynomial zero).
    pub fn is_empty_scheme(&self) -> bool {
        self.krull_dim == 0
    }
}

fn hp_coeffs(q: &[i64], dim: usize) -> Vec<Q> {
    if dim == 0 {
        return vec![];
    }
    let k = dim - 1;
    let mut fact: i128 = 1;
    for i in 1..=k as i128 {
        fact *= i;
    }
    let mut total = vec![Q::zero(); dim];
    for (shift, &c) in q.iter().enumerate() {
        // prod_{i=1..k} (m - shift + i)
        let mut p = vec![Q::from_integer(1)];
        for i in 1..=k as i128 {
            let a = i - shift as i128;
            let mut next = vec![Q::zero(); p.len() + 1];
            for (j, coef) in p.iter().enumerate() {
                next[j] += *coef * Q::from_integer(a);
                next[j + 1] += *coef;
            }
            p = next;
        }
        for (j, coef) in p.iter().enumerate() {
            total[j] += *coef * Q::from_integer(c as i128) / Q::from_integer(fact);
        }
    }
    total
}

/// Multigraded Betti numbers of `S / M` for a monomial ideal, summed by
/// total degree: entry `[i][j]`. Uses the upper Koszul simplicial complex
/// on every exponent vector below the lcm of the generators.
pub fn monomial_betti(gens: &[Mono], n: usize) -> Vec<Vec<u64>> {
    let gens = minimalize(gens);
    let mut table = vec![vec![0u64; 1]; n + 1];
    table[0][0] = 1;
    if gens.is_empty() {
        return table;
    }
    let mut top = Mono::ONE;
    for g in &gens {
        top = top.lcm(g);
    }
    let bounds: Vec<u16> = top.0[..n].to_vec();
    let mut alpha = vec![0u16; n];
    loop {
        let a = Mono::from_exps(&alpha);
        let in_m = |m: &Mono| gens.iter().any(|g| g.divides(m));
        if in_m(&a) && is_lcm_of_gens(&a, &gens) {
            let supp: Vec<usize> = (0..n).filter(|&i| alpha[i] > 0).collect();
            // faces: subsets tau of supp with x^(alpha - tau) in M
            let s = supp.len();
            let mut faces_by_size: Vec<Vec<u32>> = vec![Vec::new(); s + 1];
            for mask in 0u32..(1 << s) {
                let mut b = a;
                for (bit, &v) in supp.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        b.0[v] -= 1;
                    }
                }
                if in_m(&b) {
                    faces_by_size[mask.count_ones() as usize].push(mask);
                }
            }
            let deg = a.degree() as usize;
            for size in 0..=s {
                // reduced homology in dimension size-1 contributes to i = size+1
                let h = reduced_homology_dim(&faces_by_size, size);
                if h > 0 {
                    let i = size + 1;
                    if i <= n {
                        if table[i].len() <= deg {
                            table[i].resize(deg + 1, 0);
                        }
                        table[i][deg] += h as u64;
                    }
                }
            }
        }
        // odometer over the box
        let mut k = 0;
        loop {
            if k == n {
                return table;
            }
            if alpha[k] < bounds[k] {
                alpha[k] += 1;
                break;
            }
            alpha[k] = 0;
            k += 1;
        }
    }
}

fn is_lcm_of_gens(a: &Mono, gens: &[Mono]) -> bool {
    let mut l = Mono::ONE;
    for g in gens.iter().filter(|g| g.divides(a)) {
        l = l.lcm(g);
    }
    l == *a
}

/// Dimension of reduced homology in dimension `size - 1` of the complex whose
/// faces of each cardinality are listed (faces are bitmasks).
fn reduced_homology_dim(faces: &[Vec<u32>], size: usize) -> usize {
    let rank_boundary = |sz: usize| -> usize {
        // boundary from faces of cardinality sz to cardinality sz-1
        if sz == 0 || sz >= faces.len() || faces[sz].is_empty() || faces[sz - 1].is_empty() {
            return 0;
        }
        let f = crate::field::PrimeField::default();
        let lower = &faces[sz - 1];
        let rows: Vec<Vec<u32>> = faces[sz]
            .iter()
            .map(|&face| {
                let mut row = vec![0u32; lower.len()];
                let mut sign_pos = true;
                for bit in 0..32 {
                    if face & (1 << bit) != 0 {
                        let sub = face & !(1 << bit);
                        if let Some(idx) = lower.iter().position(|&x| x == sub) {
                            row[idx] = if sign_pos { 1 } else { crate::field::DEFAULT_PRIME - 1 };
                        }
                        sign_pos = !sign_pos;
                    }
                }
                row
            })
            .collect();
        crate::linalg::rank(&f, &rows)
    };
    let c = faces.get(size).map_or(0, |v| v.len());
    c - rank_boundary(size) - rank_boundary(size + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Mono {
        Mono::from_exps(e)
    }

    #[test]
    fn numerator_of_complete_intersection() {
        // <x^2, y^3> in 3 variables: (1 - t^2)(1 - t^3)
        let n = numerator(&[m(&[2, 0, 0]), m(&[0, 3, 0])]);
        assert_eq!(n, vec![1, 0, -1, -1, 0, 1]);
        let h = HilbertData::from_numerator(n, 3);
        assert_eq!(h.krull_dim, 1);
        assert_eq!(h.degree, 6);
    }

    #[test]
    fn twisted_cubic_leads() {
        // lead ideal of the twisted cubic in grevlex: y^2, y*z, z^2 (x,y,z,w order)
        let leads = [m(&[0, 2, 0, 0]), m(&[0, 1, 1, 0]), m(&[0, 0, 2, 0])];
        let h = HilbertData::from_numerator(numerator(&leads), 4);
        assert_eq!((h.codim, h.degree, h.genus), (2, 3, Some(0)));
        for d in 0..8 {
            assert_eq!(h.hilbert_function(d), 3 * d + 1);
        }
    }

    #[test]
    fn hilbert_function_matches_counting() {
        let leads = [m(&[2, 1, 0]), m(&[0, 3, 1]), m(&[1, 0, 2])];
        let h = HilbertData::from_numerator(numerator(&leads), 3);
        for d in 0..10u32 {
            let count = Mono::all_of_degree(3, d)
                .into_iter()
                .filter(|x| !leads.iter().any(|g| g.divides(x)))
                .count() as i64;
            assert_eq!(h.hilbert_function(d as i64), count, "degree {d}");
        }
    }

    #[test]
    fn betti_of_monomial_complete_intersection() {
        let b = monomial_betti(&[m(&[1, 0, 0]), m(&[0, 1, 0])], 3);
        assert_eq!(b[1][1], 2);
        assert_eq!(b[2][2], 1);
        // three coordinate points of the plane: <xy, xz, yz>
        let b = monomial_betti(&[m(&[1, 1, 0]), m(&[1, 0, 1]), m(&[0, 1, 1])], 3);
        assert_eq!(b[1][2], 3);
        assert_eq!(b[2][3], 2);
        assert_eq!(b[2].iter().sum::<u64>(), 2);
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(2, 5), 0);
        assert_eq!(binom_poly(-1, 3), 0);
        assert_eq!(binom_poly(-5, 3), -4);
    }
}
