//! Classes `d l - sum a_i e_i` on a cubic surface viewed as the plane blown
//! up at six points, the 27 lines, and Cremona reduction.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SurfaceClass {
    pub d: i64,
    pub a: [i64; 6],
}

impl SurfaceClass {
    pub const fn new(d: i64, a: [i64; 6]) -> Self {
        Self { d, a }
    }

    pub fn anticanonical() -> Self {
        Self::new(3, [1; 6])
    }

    pub fn dot(&self, o: &Self) -> i64 {
        self.d * o.d - self.a.iter().zip(&o.a).map(|(x, y)| x * y).sum::<i64>()
    }

    /// Degree in P^3, i.e. intersection with `-K`.
    pub fn degree(&self) -> i64 {
        self.dot(&Self::anticanonical())
    }

    /// Arithmetic genus of the plane model.
    pub fn genus(&self) -> i64 {
        let c2 = |x: i64| x * (x - 1) / 2;
        c2(self.d - 1) - self.a.iter().map(|&x| c2(x)).sum::<i64>()
    }

    fn sorted(mut self) -> Self {
        self.a.sort_unstable_by(|x, y| y.cmp(x));
        self
    }

    pub fn is_standard(&self) -> bool {
        let s = self.sorted();
        s == *self && s.d >= s.a[0] + s.a[1] + s.a[2]
    }

    /// The quadratic transformation centered at the first three points.
    pub fn cremona(&self) -> Self {
        let [a1, a2, a3, a4, a5, a6] = self.a;
        let d = self.d;
        Self::new(2 * d - a1 - a2 - a3, [d - a2 - a3, d - a1 - a3, d - a1 - a2, a4, a5, a6])
    }

    /// Standard form by sorting and repeated quadratic transformations.
    pub fn reduce(&self) -> Result<(Self, Vec<Self>)> {
        let mut cur = self.sorted();
        let mut path = vec![cur];
        while cur.d < cur.a[0] + cur.a[1] + cur.a[2] {
            let next = cur.cremona().sorted();
            if next.d >= cur.d || path.len() > 64 {
                return Err(Error::Reduction(self.to_string()));
            }
            cur = next;
            path.push(cur);
        }
        Ok((cur, path))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let nums: std::result::Result<Vec<i64>, _> =
            s.split([',', ';', ' ']).filter(|t| !t.is_empty()).map(str::parse).collect();
        match nums.as_deref() {
            Ok([d, a @ ..]) if a.len() == 6 => Ok(Self::new(*d, a.try_into().expect("six entries"))),
            _ => Err(Error::Precondition(format!("expected d and six multiplicities, got {s:?}"))),
        }
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(i64::to_string).collect();
        write!(f, "({}; {})", self.d, a.join(","))
    }
}

/// The 27 lines: six exceptional curves, fifteen lines through two points,
/// six conics through five points.
pub fn lines() -> Vec<SurfaceClass> {
    let mut out = Vec::with_capacity(27);
    for i in 0..6 {
        let mut a = [0; 6];
        a[i] = -1;
        out.push(SurfaceClass::new(0, a));
    }
    for i in 0..6 {
        for j in i + 1..6 {
            let mut a = [0; 6];
            a[i] = 1;
            a[j] = 1;
            out.push(SurfaceClass::new(1, a));
        }
    }
    for i in 0..6 {
        let mut a = [1; 6];
        a[i] = 0;
        out.push(SurfaceClass::new(2, a));
    }
    out
}

/// Histogram of intersection numbers of `c` with the 27 lines.
pub fn cubic_secant_tally(c: &SurfaceClass) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for l in lines() {
        *out.entry(c.dot(&l)).or_insert(0) += 1;
    }
    out
}

/// A Cremona orbit: its standard form and the enumerated classes reducing to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub standard_form: SurfaceClass,
    pub members: Vec<SurfaceClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicSolution {
    pub orbits: Vec<Orbit>,
    pub bound: i64,
}

impl CubicSolution {
    pub fn standard_forms(&self) -> Vec<SurfaceClass> {
        self.orbits.iter().map(|o| o.standard_form).collect()
    }

    pub fn orbit_of(&self, c: &SurfaceClass) -> Option<&Orbit> {
        self.orbits.iter().find(|o| o.members.contains(c))
    }
}

/// Classes of given degree and genus meeting every line nonnegatively,
/// enumerated for `1 <= d <= 3 deg`, grouped by standard form.
pub fn cubic_class_solve(deg: i64, genus: i64) -> Result<CubicSolution> {
    if deg < 1 {
        return Err(Error::Precondition("degree must be positive".into()));
    }
    let bound = 3 * deg;
    let lines = lines();
    let mut raw = Vec::new();
    for d in 1..=bound {
        let total = 3 * d - deg;
        if total < 0 {
            continue;
        }
        let mut a = [0i64; 6];
        enumerate(0, total, d, &mut a, &mut |a| {
            let c = SurfaceClass::new(d, *a);
            if c.genus() == genus && lines.iter().all(|l| c.dot(l) >= 0) {
                raw.push(c);
            }
        });
    }
    let mut orbits: BTreeMap<SurfaceClass, Vec<SurfaceClass>> = BTreeMap::new();
    for c in raw {
        let (std, _) = c.reduce()?;
        orbits.entry(std).or_default().push(c);
    }
    let orbits = orbits
        .into_iter()
        .map(|(standard_form, mut members)| {
            members.sort_unstable_by(|a, b| b.cmp(a));
            Orbit { standard_form, members }
        })
        .collect();
    Ok(CubicSolution { orbits, bound })
}

/// Nonincreasing 6-tuples with entries in `[0, max]` summing to `rest`.
fn enumerate(pos: usize, rest: i64, max: i64, a: &mut [i64; 6], f: &mut impl FnMut(&[i64; 6])) {
    if pos == 6 {
        if rest == 0 {
            f(a);
        }
        return;
    }
    let slots = (6 - pos) as i64;
    let hi = max.min(rest);
    let lo = (rest + slots - 1) / slots;
    for v in (lo..=hi).rev() {
        a[pos] = v;
        enumerate(pos + 1, rest - v, v, a, f);
    }
    a[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn tallies() {
        let c = SurfaceClass::new(12, [5, 5, 4, 4, 4, 4]);
        assert_eq!((c.degree(), c.genus()), (10, 11));
        let t = cubic_secant_tally(&c);
        assert_eq!(t, BTreeMap::from([(2, 5), (3, 10), (4, 10), (5, 2)]));
        assert_eq!(cubic_secant_tally(&SurfaceClass::anticanonical()), BTreeMap::from([(1, 27)]));
        let l = SurfaceClass::new(1, [0; 6]);
        assert_eq!(cubic_secant_tally(&l), BTreeMap::from([(0, 6), (1, 15), (2, 6)]));
    }

    #[test]
    fn lines_are_minus_one_curves() {
        let k = SurfaceClass::anticanonical();
        for l in lines() {
            assert_eq!((l.dot(&l), l.dot(&k)), (-1, 1));
        }
        assert_eq!(lines().into_iter().collect::<BTreeSet<_>>().len(), 27);
    }

    #[test]
    fn solve_examples() {
        let s = cubic_class_solve(10, 11).unwrap();
        assert_eq!(s.orbits.len(), 1);
        assert_eq!(s.standard_forms(), [SurfaceClass::new(8, [3, 3, 2, 2, 2, 2])]);
        assert!(s.orbit_of(&SurfaceClass::new(12, [5, 5, 4, 4, 4, 4])).is_some());
        let s = cubic_class_solve(3, 0).unwrap();
        assert_eq!(s.standard_forms(), [SurfaceClass::new(1, [0; 6])]);
        assert!(s.orbit_of(&SurfaceClass::new(2, [1, 1, 1, 0, 0, 0])).is_some());
        let conic = SurfaceClass::new(2, [1, 1, 1, 0, 0, 0]);
        assert_eq!(conic.reduce().unwrap().0, SurfaceClass::new(1, [0; 6]));
        let s = cubic_class_solve(4, 0).unwrap();
        assert!(s.standard_forms().contains(&SurfaceClass::new(2, [1, 1, 0, 0, 0, 0])));
    }

    #[test]
    fn parse_class() {
        assert_eq!(SurfaceClass::parse("12,5,5,4,4,4,4").unwrap(), SurfaceClass::new(12, [5, 5, 4, 4, 4, 4]));
        assert!(SurfaceClass::parse("1,2").is_err());
    }
}
