//! Restriction of divisor classes to a smooth member `F` of `|11H - 3E|`,
//! which is the plane blown up at 30 points: twenty on the 4-secant lines
//! (classes `s_i`) and ten more (classes `e_i`).

use serde::{Deserialize, Serialize};

use crate::blowup::{BlowupP3, DivisorClass};
use crate::error::{Error, Result};

pub const SECANT_POINTS: usize = 20;
pub const OTHER_POINTS: usize = 10;

/// `l * ell - sum s_i * s_i - sum e_i * e_i` on the rank-31 lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneBlowupClass {
    pub l: i64,
    pub s: [i64; SECANT_POINTS],
    pub e: [i64; OTHER_POINTS],
}

impl PlaneBlowupClass {
    /// `l * ell - s_mult * s - e_mult * e` with `s`, `e` the sums of the
    /// exceptional classes.
    pub fn uniform(l: i64, s_mult: i64, e_mult: i64) -> Self {
        Self { l, s: [s_mult; SECANT_POINTS], e: [e_mult; OTHER_POINTS] }
    }

    pub fn dot(&self, o: &Self) -> i64 {
        let s: i64 = self.s.iter().zip(&o.s).map(|(a, b)| a * b).sum();
        let e: i64 = self.e.iter().zip(&o.e).map(|(a, b)| a * b).sum();
        self.l * o.l - s - e
    }

    /// `(l, s, e)` when the class is uniform in each group of points.
    pub fn as_uniform(&self) -> Option<(i64, i64, i64)> {
        let uniform = self.s.iter().all(|&x| x == self.s[0]) && self.e.iter().all(|&x| x == self.e[0]);
        uniform.then(|| (self.l, self.s[0], self.e[0]))
    }

    pub fn render(&self) -> String {
        match self.as_uniform() {
            Some((l, s, e)) => format!("{l}l - {s}s - {e}e").replace("- -", "+ "),
            None => format!("{self:?}"),
        }
    }
}

/// The restricting surface's class.
pub const F_CLASS: DivisorClass = DivisorClass::new(11, 3);

pub fn restrict(d: DivisorClass) -> PlaneBlowupClass {
    // H|F = 11l - s - 3e, E|F = 40l - 4s - 11e
    let (n, k) = (d.n, d.k);
    PlaneBlowupClass::uniform(11 * n - 40 * k, n - 4 * k, 3 * n - 11 * k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionCheck {
    pub pair: (DivisorClass, DivisorClass),
    pub surface: i64,
    pub ambient: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionReport {
    pub classes: Vec<(DivisorClass, String)>,
    pub checks: Vec<RestrictionCheck>,
    pub canonical: String,
    pub canonical_square: i64,
}

impl RestrictionReport {
    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|c| c.surface == c.ambient)
    }
}

/// Compares restricted products against `D . D' . F` on the (10, 11) blow-up
/// for all pairs among `H`, `E`, `-K` and `7H - 2E`.
pub fn k3_restriction() -> Result<RestrictionReport> {
    let x = BlowupP3::new(10, 11);
    let basis = [DivisorClass::H, DivisorClass::E, DivisorClass::anticanonical(), DivisorClass::new(7, 2)];
    let mut checks = Vec::new();
    for (i, &a) in basis.iter().enumerate() {
        for &b in &basis[i..] {
            let surface = restrict(a).dot(&restrict(b));
            let ambient = x.triple(a, b, F_CLASS);
            if surface != ambient {
                return Err(Error::Restriction { pair: format!("{a}, {b}"), surface, ambient });
            }
            checks.push(RestrictionCheck { pair: (a, b), surface, ambient });
        }
    }
    let kf = restrict(DivisorClass::new(7, 2));
    Ok(RestrictionReport {
        classes: basis.iter().map(|&d| (d, restrict(d).render())).collect(),
        canonical_square: kf.dot(&kf),
        canonical: kf.render(),
        checks,
    })
}

/// Genus of a cover: `2g - 2 = sheets (2 g_base - 2) + ramification`.
pub fn riemann_hurwitz(sheets: i64, g_base: i64, ramification: i64) -> Result<i64> {
    if sheets < 1 || g_base < 0 || ramification < 0 {
        return Err(Error::Precondition("sheets must be positive, genus and ramification nonnegative".into()));
    }
    let two_g_minus_2 = sheets * (2 * g_base - 2) + ramification;
    if two_g_minus_2 % 2 != 0 {
        return Err(Error::Parity(two_g_minus_2));
    }
    Ok(two_g_minus_2 / 2 + 1)
}

/// The genus of `E|F` computed three ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusDiscrepancy {
    pub self_intersection: i64,
    pub canonical_degree: i64,
    /// `1 + C^2 / 2`, adjunction with trivial canonical class.
    pub adjunction_trivial_canonical: i64,
    /// `1 + (C^2 + K_F C) / 2`.
    pub adjunction_with_canonical: i64,
    /// Triple cover of the (10, 11) curve branched at its 80 points on the 4-secants.
    pub riemann_hurwitz: i64,
    pub flagged: bool,
    pub note: String,
}

pub fn genus_discrepancy() -> Result<GenusDiscrepancy> {
    let c = restrict(DivisorClass::E);
    let k = restrict(DivisorClass::new(7, 2));
    let c2 = c.dot(&c);
    let kc = k.dot(&c);
    let trivial = 1 + c2 / 2;
    let full = 1 + (c2 + kc) / 2;
    let rh = riemann_hurwitz(3, 11, 80)?;
    Ok(GenusDiscrepancy {
        self_intersection: c2,
        canonical_degree: kc,
        adjunction_trivial_canonical: trivial,
        adjunction_with_canonical: full,
        riemann_hurwitz: rh,
        flagged: trivial != rh,
        note: format!(
            "trivial-canonical adjunction gives {trivial}, Riemann-Hurwitz gives {rh}; \
             adjunction with K_F = (7H-2E)|F gives {full}"
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restriction_values() {
        assert_eq!(restrict(DivisorClass::H).as_uniform(), Some((11, 1, 3)));
        assert_eq!(restrict(DivisorClass::E).as_uniform(), Some((40, 4, 11)));
        assert_eq!(restrict(DivisorClass::anticanonical()).as_uniform(), Some((4, 0, 1)));
        let h = restrict(DivisorClass::H);
        assert_eq!(h.dot(&h), 11);
        let e = restrict(DivisorClass::E);
        assert_eq!(e.dot(&e), 70);
    }

    #[test]
    fn report_consistent() {
        let r = k3_restriction().unwrap();
        assert!(r.consistent());
        assert_eq!(r.canonical_square, -21);
        assert_eq!(r.canonical, "-3l + 1s + 1e");
        assert_eq!(r.checks.len(), 10);
    }

    #[test]
    fn hurwitz() {
        assert_eq!(riemann_hurwitz(3, 11, 80), Ok(71));
        assert_eq!(riemann_hurwitz(1, 7, 0), Ok(7));
        assert_eq!(riemann_hurwitz(2, 0, 2), Ok(0));
        assert_eq!(riemann_hurwitz(2, 0, 3), Err(Error::Parity(-1)));
    }

    #[test]
    fn genus_values() {
        let g = genus_discrepancy().unwrap();
        assert_eq!((g.adjunction_trivial_canonical, g.riemann_hurwitz), (36, 71));
        assert_eq!(g.adjunction_with_canonical, 71);
        assert!(g.flagged);
    }
}
