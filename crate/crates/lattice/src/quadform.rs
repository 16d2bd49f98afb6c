//! Rational solvability of `A a^2 + B ab + C b^2 = t`.
//!
//! For `t = 0` this is squareness of the discriminant. Otherwise completing
//! the square turns the equation into `X^2 - D Y^2 = A t` with `D = B^2 - 4AC`,
//! which is decided by Hilbert symbols at the primes dividing `2 D A t`.

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub target: i64,
}

impl QuadForm {
    pub const fn new(a: i64, b: i64, c: i64, target: i64) -> Self {
        Self { a, b, c, target }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// Local obstruction; `places` lists every place where the Hilbert
    /// symbol is `-1` (`0` is the real place) and `p` is the first odd one.
    Local { p: i64, places: Vec<i64> },
    /// `t = 0` and the discriminant is not a square: only `(0, 0)`.
    NonSquareDiscriminant { discriminant: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Solvability {
    /// `(x, y, z)` with `(a, b) = (x/z, y/z)`.
    Solvable { witness: (i64, i64, i64) },
    Unsolvable { obstruction: Obstruction },
    /// Locally solvable everywhere but no witness within the search bound.
    Inconclusive { searched: i64 },
}

impl Solvability {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Solvability::Solvable { .. })
    }
}

const SEARCH: i64 = 10_000;

pub fn rational_exclusion(q: QuadForm) -> Result<Solvability> {
    if q.a == 0 && q.b == 0 && q.c == 0 {
        return Err(Error::Precondition("zero form".into()));
    }
    let d = q.discriminant();
    if q.target == 0 {
        return Ok(isotropic_witness(q).map_or(
            Solvability::Unsolvable { obstruction: Obstruction::NonSquareDiscriminant { discriminant: d } },
            |(x, y)| Solvability::Solvable { witness: (x, y, 1) },
        ));
    }
    if let Some(w) = search(q, 200) {
        return Ok(Solvability::Solvable { witness: w });
    }
    let places = local_obstructions(q);
    if !places.is_empty() {
        let p = places.iter().copied().find(|&p| p > 2).unwrap_or(places[0]);
        return Ok(Solvability::Unsolvable { obstruction: Obstruction::Local { p, places } });
    }
    Ok(search(q, SEARCH.sqrt()).map_or(Solvability::Inconclusive { searched: SEARCH }, |w| {
        Solvability::Solvable { witness: w }
    }))
}

/// A nonzero integral zero of the form, if any.
fn isotropic_witness(q: QuadForm) -> Option<(i64, i64)> {
    if q.a == 0 {
        return Some((1, 0));
    }
    if q.c == 0 {
        return Some((0, 1));
    }
    let d = q.discriminant();
    if d < 0 {
        return None;
    }
    let r = d.sqrt();
    if r * r != d {
        return None;
    }
    // a/b = (-B + r) / 2A
    let (x, y) = (-q.b + r, 2 * q.a);
    let g = x.gcd(&y);
    Some((x / g, y / g))
}

/// Integer `(x, y, z)`, `z > 0`, with `form(x, y) = t z^2`, smallest height first.
fn search(q: QuadForm, bound: i64) -> Option<(i64, i64, i64)> {
    for h in 0..=bound {
        for x in -h..=h {
            for y in -h..=h {
                if x.abs().max(y.abs()) != h {
                    continue;
                }
                let v = q.eval(x, y);
                if v == 0 || v % q.target != 0 {
                    continue;
                }
                let s = v / q.target;
                if s > 0 {
                    let z = s.sqrt();
                    if z * z == s && x.gcd(&y).gcd(&z) == 1 {
                        return Some((x, y, z));
                    }
                }
            }
        }
    }
    None
}

fn local_obstructions(q: QuadForm) -> Vec<i64> {
    let d = q.discriminant() as i128;
    let n = (q.a as i128) * (q.target as i128);
    if q.a == 0 || d == 0 {
        // degenerate forms are settled by the search or represent t trivially
        return Vec::new();
    }
    let mut primes = prime_factors(d.unsigned_abs());
    primes.extend(prime_factors(n.unsigned_abs()));
    primes.push(2);
    primes.sort_unstable();
    primes.dedup();
    let mut out: Vec<i64> = (hilbert_symbol(d, n, 0) < 0).then_some(0).into_iter().collect();
    out.extend(primes.into_iter().filter(|&p| hilbert_symbol(d, n, p as i128) < 0).map(|p| p as i64));
    out
}

fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `(a, b)_p` for nonzero integers; `p = 0` is the real place.
pub fn hilbert_symbol(a: i128, b: i128, p: i128) -> i32 {
    assert!(a != 0 && b != 0, "hilbert symbol of zero");
    if p == 0 {
        return if a < 0 && b < 0 { -1 } else { 1 };
    }
    let (alpha, u) = split(a, p);
    let (beta, v) = split(b, p);
    if p == 2 {
        let eps = |x: i128| ((x.rem_euclid(8) - 1) / 2) % 2;
        let omega = |x: i128| ((x.rem_euclid(8) * x.rem_euclid(8) - 1) / 8) % 2;
        let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        return if e % 2 == 0 { 1 } else { -1 };
    }
    let sign = if (alpha * beta) % 2 == 1 && (p % 4 == 3) { -1 } else { 1 };
    let leg = |x: i128, k: i128| if k % 2 == 0 { 1 } else { legendre(x, p) };
    sign * leg(u, beta) * leg(v, alpha)
}

fn split(mut x: i128, p: i128) -> (i128, i128) {
    let mut k = 0;
    while x % p == 0 {
        x /= p;
        k += 1;
    }
    (k, x)
}

fn legendre(a: i128, p: i128) -> i32 {
    let mut result = 1u128;
    let (mut base, mut e, m) = (a.rem_euclid(p) as u128, ((p - 1) / 2) as u128, p as u128);
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}
