//! Intersection form on the blow-up of P^3 along a smooth curve, and on
//! further blow-ups along curves disjoint from each other.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The class `n H - k E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    pub n: i64,
    pub k: i64,
}

impl DivisorClass {
    pub const H: DivisorClass = DivisorClass { n: 1, k: 0 };
    pub const E: DivisorClass = DivisorClass { n: 0, k: -1 };

    pub const fn new(n: i64, k: i64) -> Self {
        Self { n, k }
    }

    /// The anticanonical class `4H - E`.
    pub const fn anticanonical() -> Self {
        Self { n: 4, k: 1 }
    }

    pub fn scale(self, c: i64) -> Self {
        Self { n: self.n * c, k: self.k * c }
    }

    pub fn add(self, o: Self) -> Self {
        Self { n: self.n + o.n, k: self.k + o.k }
    }

    pub fn neg(self) -> Self {
        self.scale(-1)
    }

    /// `k / n`, defined for `n != 0`.
    pub fn slope(self) -> Option<f64> {
        (self.n != 0).then(|| self.k as f64 / self.n as f64)
    }

    /// Orientation of `o` relative to `self` in the `(n, k)` plane.
    pub fn cross(self, o: Self) -> i64 {
        self.n * o.k - self.k * o.n
    }

    pub fn as_class(self) -> Class {
        Class { h: self.n, e: -self.k, extra: Vec::new() }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = match self.n {
            0 => String::new(),
            1 => "H".into(),
            -1 => "-H".into(),
            n => format!("{n}H"),
        };
        let e = match (self.k, h.is_empty()) {
            (0, _) => String::new(),
            (-1, true) => "E".into(),
            (1, true) => "-E".into(),
            (-1, false) => "+E".into(),
            (1, false) => "-E".into(),
            (k, true) => format!("{}E", -k),
            (k, false) if k < 0 => format!("+{}E", -k),
            (k, false) => format!("-{k}E"),
        };
        if h.is_empty() && e.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{h}{e}")
        }
    }
}

impl std::str::FromStr for DivisorClass {
    type Err = Error;

    /// Accepts `n,k` or expressions like `11H-3E`, `-K`, `E`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Precondition(format!("cannot read divisor class {s:?}"));
        if let Some((a, b)) = t.split_once(',') {
            return Ok(Self::new(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?));
        }
        match t.as_str() {
            "-K" | "-K_X" => return Ok(Self::anticanonical()),
            "K" | "K_X" => return Ok(Self::anticanonical().neg()),
            _ => {}
        }
        let mut out = Self::new(0, 0);
        let mut rest = t.as_str();
        if rest.is_empty() {
            return Err(bad());
        }
        while !rest.is_empty() {
            let sign = if let Some(r) = rest.strip_prefix('-') {
                rest = r;
                -1
            } else {
                rest = rest.strip_prefix('+').unwrap_or(rest);
                1
            };
            let digits = rest.chars().take_while(|c| c.is_ascii_digit()).count();
            let coeff: i64 = if digits == 0 { 1 } else { rest[..digits].parse().map_err(|_| bad())? };
            rest = &rest[digits..];
            let sym = rest.chars().next().ok_or_else(bad)?;
            rest = &rest[1..];
            match sym {
                'H' => out.n += sign * coeff,
                'E' => out.k -= sign * coeff,
                _ => return Err(bad()),
            }
        }
        Ok(out)
    }
}

/// A divisor `h H + e E + sum c_j E_j` on an iterated blow-up.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Class {
    pub h: i64,
    pub e: i64,
    pub extra: Vec<i64>,
}

impl Class {
    pub fn exceptional(j: usize) -> Self {
        let mut extra = vec![0; j + 1];
        extra[j] = 1;
        Class { h: 0, e: 0, extra }
    }

    fn coeff(&self, i: usize) -> i64 {
        match i {
            0 => self.h,
            1 => self.e,
            j => self.extra.get(j - 2).copied().unwrap_or(0),
        }
    }

    fn support(&self) -> usize {
        2 + self.extra.len()
    }
}

impl From<DivisorClass> for Class {
    fn from(d: DivisorClass) -> Self {
        d.as_class()
    }
}

/// Blow-up of P^3 along a smooth curve of degree `d` and genus `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupP3 {
    pub d: i64,
    pub g: i64,
}

impl BlowupP3 {
    pub const fn new(d: i64, g: i64) -> Self {
        Self { d, g }
    }

    /// Triple product of basis divisors with `e_count` copies of `E`.
    fn basis(&self, e_count: usize) -> i64 {
        match e_count {
            0 => 1,
            1 => 0,
            2 => -self.d,
            _ => 2 - 2 * self.g - 4 * self.d,
        }
    }

    pub fn triple(&self, a: DivisorClass, b: DivisorClass, c: DivisorClass) -> i64 {
        let (a, b, c) = (a.as_class(), b.as_class(), c.as_class());
        let mut total = 0;
        for (i, x) in [a.h, a.e].into_iter().enumerate() {
            for (j, y) in [b.h, b.e].into_iter().enumerate() {
                for (k, z) in [c.h, c.e].into_iter().enumerate() {
                    total += x * y * z * self.basis(i + j + k);
                }
            }
        }
        total
    }

    pub fn cube(&self, a: DivisorClass) -> i64 {
        self.triple(a, a, a)
    }
}

/// Data of a further blow-up center `gamma`: its genus, the degrees
/// `H . gamma` and `E . gamma`, and the degree of its normal bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraCenter {
    pub genus: i64,
    pub h_degree: i64,
    pub e_degree: i64,
    pub normal_degree: i64,
}

impl ExtraCenter {
    /// A line meeting the curve in `secancy` points with normal bundle
    /// `O(-1) + O(-2)`.
    pub fn secant_line(secancy: i64) -> Self {
        Self { genus: 0, h_degree: 1, e_degree: secancy, normal_degree: -3 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IteratedBlowup {
    pub base: BlowupP3,
    pub centers: Vec<ExtraCenter>,
}

impl IteratedBlowup {
    pub fn new(base: BlowupP3, centers: Vec<ExtraCenter>) -> Self {
        Self { base, centers }
    }

    fn check(&self, c: &Class) -> Result<()> {
        match c.extra.iter().rposition(|&v| v != 0) {
            Some(j) if j >= self.centers.len() => {
                Err(Error::ClassMismatch { index: j, available: self.centers.len() })
            }
            _ => Ok(()),
        }
    }

    fn basis(&self, idx: [usize; 3]) -> i64 {
        let mut idx = idx;
        idx.sort_unstable();
        let extras: Vec<usize> = idx.iter().copied().filter(|&i| i >= 2).collect();
        match extras.as_slice() {
            [] => self.base.basis(idx.iter().filter(|&&i| i == 1).count()),
            [_] => 0,
            [a, b] if a == b => {
                let c = &self.centers[a - 2];
                let pulled = idx[0];
                -if pulled == 0 { c.h_degree } else { c.e_degree }
            }
            [a, b, c] if a == b && b == c => -self.centers[a - 2].normal_degree,
            _ => 0,
        }
    }

    pub fn triple(&self, a: &Class, b: &Class, c: &Class) -> Result<i64> {
        for x in [a, b, c] {
            self.check(x)?;
        }
        let mut total = 0;
        for i in 0..a.support() {
            let x = a.coeff(i);
            if x == 0 {
                continue;
            }
            for j in 0..b.support() {
                let y = b.coeff(j);
                if y == 0 {
                    continue;
                }
                for k in 0..c.support() {
                    let z = c.coeff(k);
                    if z != 0 {
                        total += x * y * z * self.basis([i, j, k]);
                    }
                }
            }
        }
        Ok(total)
    }
}

/// Pushforward of classes through the flop: `H+ -> 11H - 3E`, `E+ -> 40H - 11E`.
pub fn flop_pushforward(d: DivisorClass) -> DivisorClass {
    DivisorClass::new(11 * d.n - 40 * d.k, 3 * d.n - 11 * d.k)
}
