#![allow(dead_code)]

use detq_core::matrix::matrix_from_text;
use detq_core::*;

pub const ACM_MATRIX: &str = "y;0;x+y+z+w;y+z+w
y;0;z;w
y+z;x+y;0;y+z+w
x;x+w;x;x+z
0;x+y+z;z+w;z+w";

pub const D1_D: &str = "y*z-x*w, x^2*w^2+z^2*w^2, x^2*y*w+x*z*w^2, x^2*y^2-z^2*w^2";
pub const D1_F1: &str = "x^2*y^2+x^2*y*z+y^3*z-x^3*w-x*y^2*w-z^2*w^2";
pub const D1_F2: &str = "y*z^3+x^2*y*w-x*z^2*w+x*z*w^2+y*z*w^2-x*w^3";

pub fn p3<F: Field>(f: F) -> RingRef<F> {
    Ring::new(f, &["x", "y", "z", "w"], MonoOrder::Grevlex).unwrap().into_ref()
}

pub fn fp() -> PrimeField {
    PrimeField::default()
}

pub fn acm<F: Field>(r: &RingRef<F>) -> Ideal<F> {
    let m = matrix_from_text(r, ACM_MATRIX).unwrap();
    Ideal::new(r.clone(), m.maximal_minors()).unwrap().saturate_irrelevant().unwrap()
}

pub fn d1<F: Field>(r: &RingRef<F>) -> Ideal<F> {
    let d = Ideal::parse(r.clone(), D1_D).unwrap();
    let ci = Ideal::parse(r.clone(), &format!("{D1_F1}, {D1_F2}")).unwrap();
    ci.saturate(&d).unwrap()
}

pub fn twisted_cubic<F: Field>(r: &RingRef<F>) -> Ideal<F> {
    Ideal::parse(r.clone(), "x*z - y^2, y*w - z^2, x*w - y*z").unwrap()
}

/// Random linear combination of the given forms.
pub fn combo<F: Field, R: rand::Rng>(r: &Ring<F>, forms: &[Poly<F::Elem>], rng: &mut R) -> Poly<F::Elem> {
    let mut acc = r.zero();
    for g in forms {
        acc = r.add(&acc, &r.scale(g, &r.field().random(rng)));
    }
    acc
}

/// Random unitriangular, hence invertible, linear substitution.
pub fn random_linear_change<F: Field, R: rand::Rng>(r: &Ring<F>, rng: &mut R) -> Vec<Poly<F::Elem>> {
    let f = r.field();
    let n = r.nvars();
    (0..n)
        .map(|i| {
            let terms = (0..n).filter(|&j| j >= i).map(|j| {
                let c = if j == i { f.one() } else { f.random(rng) };
                (Mono::var(j), c)
            });
            r.from_terms(terms)
        })
        .collect()
}

/// Rational points of a zero-dimensional projective scheme over a prime
/// field whose last coordinate is 1, by successive elimination and
/// exhaustive root search.
pub fn rational_points(ideal: &Ideal<PrimeField>) -> Vec<Vec<u32>> {
    let r = ideal.ring().clone();
    let n = r.nvars();
    let p = r.field().modulus();
    let mut out = Vec::new();
    let mut stack: Vec<(Ideal<PrimeField>, Vec<u32>)> = vec![(ideal.clone(), vec![])];
    while let Some((cur, fixed)) = stack.pop() {
        let v = fixed.len();
        if v == n - 1 {
            let mut pt = fixed.clone();
            pt.push(1);
            if ideal.gens().iter().all(|g| r.eval(g, &pt) == 0) {
                out.push(pt);
            }
            continue;
        }
        let elim: Vec<usize> = (0..n - 1).filter(|&i| i != v).collect();
        let binary = cur.eliminate(&elim).unwrap();
        let br = binary.ring().clone();
        for a in 0..p {
            if binary.gens().iter().all(|g| br.eval(g, &[a, 1]) == 0) {
                let lin = r.sub(&r.var(v), &r.scale(&r.var(n - 1), &a));
                let next = cur.add(&Ideal::new(r.clone(), vec![lin]).unwrap()).unwrap();
                let mut fx = fixed.clone();
                fx.push(a);
                stack.push((next, fx));
            }
        }
    }
    out
}

/// Union of a plane quartic and two lines meeting it, linked by two random
/// quartics to a residual curve of degree 10 and genus 11 on a unique cubic.
pub fn d2<F: Field>(r: &RingRef<F>, seed: u64) -> Ideal<F> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let union = d2_union(r, &mut rng);
    let quartics = union.graded_piece(4).unwrap();
    let p = combo(r, &quartics, &mut rng);
    let q = combo(r, &quartics, &mut rng);
    union.linked_ideal(&p, &q).unwrap()
}

pub fn d2_union<F: Field, R: rand::Rng>(r: &RingRef<F>, rng: &mut R) -> Ideal<F> {
    let f = r.field().clone();
    let terms: Vec<_> = Mono::all_of_degree(3, 4)
        .into_iter()
        .filter(|m| m.exp(0) != 4 && m.exp(1) != 4)
        .map(|m| (m, f.random(rng)))
        .collect();
    let plane = Ideal::new(r.clone(), vec![r.var(3), r.from_terms(terms)]).unwrap();
    let mut c = || f.from_i64(rng.gen_range(-50..50));
    let (b, c1, a2, c2) = (c(), c(), c(), c());
    let lin = |v: usize, c: F::Elem| r.sub(&r.var(v), &r.scale(&r.var(3), &c));
    let e1 = Ideal::new(r.clone(), vec![lin(1, b), lin(2, c1)]).unwrap();
    let e2 = Ideal::new(r.clone(), vec![lin(0, a2), lin(2, c2)]).unwrap();
    plane.intersect(&e1).unwrap().intersect(&e2).unwrap()
}
