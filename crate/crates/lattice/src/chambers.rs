//! Stable base locus chambers of the effective cone for the three curve
//! types, ordered from `E` through `H` to the far boundary ray.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::blowup::DivisorClass;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveCase {
    Generic,
    D1,
    D2,
}

impl CurveCase {
    pub const ALL: [CurveCase; 3] = [CurveCase::Generic, CurveCase::D1, CurveCase::D2];
}

impl fmt::Display for CurveCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveCase::Generic => "generic",
            CurveCase::D1 => "d1",
            CurveCase::D2 => "d2",
        })
    }
}

impl std::str::FromStr for CurveCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "generic" | "acm" => Ok(CurveCase::Generic),
            "d1" => Ok(CurveCase::D1),
            "d2" => Ok(CurveCase::D2),
            _ => Err(Error::Precondition(format!("unknown case {s:?}"))),
        }
    }
}

/// One chamber between two rays, `lower` closer to `E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    pub lower: DivisorClass,
    pub lower_closed: bool,
    pub upper: DivisorClass,
    pub upper_closed: bool,
    pub base_locus: String,
    pub base_locus_detail: String,
}

impl Chamber {
    /// Interval notation listing the far ray first, e.g. `[11H-3E, 4H-E)`.
    pub fn interval(&self) -> String {
        format!(
            "{}{}, {}{}",
            if self.upper_closed { '[' } else { '(' },
            self.upper,
            self.lower,
            if self.lower_closed { ']' } else { ')' },
        )
    }

    /// Position of `d` relative to the chamber's two rays.
    fn contains(&self, d: DivisorClass) -> bool {
        let (a, b) = coords(self.lower, self.upper, d);
        if a < 0 || b < 0 || (a == 0 && b == 0) {
            return false;
        }
        if b == 0 && !self.lower_closed {
            return false;
        }
        if a == 0 && !self.upper_closed {
            return false;
        }
        true
    }
}

/// Birational model attached to a ray or to the open cone between two rays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelLocus {
    Ray(DivisorClass),
    Open(DivisorClass, DivisorClass),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelEntry {
    pub locus: ModelLocus,
    pub model: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberTable {
    pub case: CurveCase,
    pub chambers: Vec<Chamber>,
    pub models: Vec<ModelEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberRecord {
    pub class: DivisorClass,
    pub chamber: usize,
    pub interval: String,
    pub base_locus: String,
    pub model: String,
}

/// Coordinates of `d` in the basis `(lo, hi)`, each multiplied by
/// `cross(lo, hi) > 0`, so only their signs matter.
fn coords(lo: DivisorClass, hi: DivisorClass, d: DivisorClass) -> (i64, i64) {
    (d.cross(hi), lo.cross(d))
}

fn strictly_inside(lo: DivisorClass, hi: DivisorClass, d: DivisorClass) -> bool {
    let (a, b) = coords(lo, hi, d);
    a > 0 && b > 0
}

fn on_ray(r: DivisorClass, d: DivisorClass) -> bool {
    r.cross(d) == 0 && r.n * d.n + r.k * d.k > 0
}

fn dc(n: i64, k: i64) -> DivisorClass {
    DivisorClass::new(n, k)
}

fn chamber(lower: DivisorClass, lc: bool, upper: DivisorClass, uc: bool, locus: &str, detail: &str) -> Chamber {
    Chamber {
        lower,
        lower_closed: lc,
        upper,
        upper_closed: uc,
        base_locus: locus.into(),
        base_locus_detail: detail.into(),
    }
}

fn ray(d: DivisorClass, m: &str) -> ModelEntry {
    ModelEntry { locus: ModelLocus::Ray(d), model: m.into() }
}

fn open(a: DivisorClass, b: DivisorClass, m: &str) -> ModelEntry {
    ModelEntry { locus: ModelLocus::Open(a, b), model: m.into() }
}

pub fn chambers(case: CurveCase) -> ChamberTable {
    let (e, h, k) = (DivisorClass::E, DivisorClass::H, DivisorClass::anticanonical());
    let (f, j) = (dc(11, 3), dc(40, 11));
    let fixed_e = "P3 (E in the fixed part)";
    let (chambers, models) = match case {
        CurveCase::Generic | CurveCase::D1 => {
            let chambers = vec![
                chamber(e, true, h, false, "E", "support of E"),
                chamber(h, true, k, true, "empty", "base point free"),
                chamber(k, false, f, true, "L", "union of the twenty 4-secant lines"),
                chamber(f, false, j, true, "J", "support of the rigid class 40H-11E"),
            ];
            let models = if case == CurveCase::Generic {
                vec![
                    ray(e, "point (rigid class)"),
                    open(e, h, fixed_e),
                    ray(h, "P3"),
                    open(h, k, "X"),
                    ray(k, "Y, quartic in P4; small contraction of L"),
                    open(k, f, "X+, flop of X along L"),
                    ray(f, "P3"),
                    open(f, j, "P3 (J in the fixed part)"),
                    ray(j, "point (rigid class)"),
                ]
            } else {
                vec![
                    ray(e, "point (rigid class)"),
                    open(e, h, fixed_e),
                    ray(h, "P3"),
                    open(h, k, "X"),
                    ray(k, "Y, double cover of a quadric Y0 in P4; contracts L"),
                    open(k, f, "X+ isomorphic to X; flop is a Galois involution"),
                    ray(f, "P3"),
                    open(f, j, "P3 (J in the fixed part)"),
                    ray(j, "point (rigid class)"),
                ]
            };
            (chambers, models)
        }
        CurveCase::D2 => {
            let (five, three) = (dc(5, 1), dc(3, 1));
            let chambers = vec![
                chamber(e, true, h, false, "E", "support of E"),
                chamber(h, true, five, true, "empty", "base point free"),
                chamber(five, false, k, true, "e1 ∪ e2", "union of the two 5-secant lines"),
                chamber(k, false, three, true, "S", "the cubic surface containing C"),
            ];
            let models = vec![
                ray(e, "point (rigid class)"),
                open(e, h, fixed_e),
                ray(h, "P3"),
                open(h, five, "X"),
                ray(five, "Y in P15; small contraction of e1 ∪ e2"),
                open(five, k, "X+, inverse flip along e1 ∪ e2"),
                ray(k, "Y0 in P4, Q-factorial quartic with an elliptic singularity and 10 nodes"),
                open(k, three, "Y0 (S in the fixed part)"),
                ray(three, "point (rigid class)"),
            ];
            (chambers, models)
        }
    };
    ChamberTable { case, chambers, models }
}

impl ChamberTable {
    /// The ray bounding the effective cone away from `E`.
    pub fn far_ray(&self) -> DivisorClass {
        self.chambers.last().expect("nonempty table").upper
    }

    /// Boundary rays from `E` outward.
    pub fn rays(&self) -> Vec<DivisorClass> {
        let mut out = vec![self.chambers[0].lower];
        out.extend(self.chambers.iter().map(|c| c.upper));
        out
    }

    pub fn is_effective(&self, d: DivisorClass) -> bool {
        let (a, b) = coords(DivisorClass::E, self.far_ray(), d);
        a >= 0 && b >= 0 && (a, b) != (0, 0)
    }

    pub fn classify(&self, d: DivisorClass) -> Result<ChamberRecord> {
        if !self.is_effective(d) {
            return Err(Error::NotEffective(d.to_string()));
        }
        let (idx, ch) = self
            .chambers
            .iter()
            .enumerate()
            .find(|(_, c)| c.contains(d))
            .expect("chambers cover the effective cone");
        let model = self
            .models
            .iter()
            .find(|m| match m.locus {
                ModelLocus::Ray(r) => on_ray(r, d),
                ModelLocus::Open(a, b) => strictly_inside(a, b, d),
            })
            .map(|m| m.model.clone())
            .expect("models cover the effective cone");
        Ok(ChamberRecord {
            class: d,
            chamber: idx,
            interval: ch.interval(),
            base_locus: ch.base_locus.clone(),
            model,
        })
    }
}

/// Convenience wrapper over [`chambers`] and [`ChamberTable::classify`].
pub fn classify(case: CurveCase, d: DivisorClass) -> Result<ChamberRecord> {
    chambers(case).classify(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_examples() {
        let h = classify(CurveCase::Generic, DivisorClass::H).unwrap();
        assert_eq!((h.base_locus.as_str(), h.model.as_str()), ("empty", "P3"));
        let f = classify(CurveCase::Generic, dc(11, 3)).unwrap();
        assert_eq!((f.base_locus.as_str(), f.model.as_str()), ("L", "P3"));
        assert_eq!(f.interval, "[11H-3E, 4H-E)");
        let e = classify(CurveCase::Generic, DivisorClass::E).unwrap();
        assert_eq!(e.base_locus, "E");
    }

    #[test]
    fn d2_anticanonical() {
        let r = classify(CurveCase::D2, DivisorClass::anticanonical()).unwrap();
        assert_eq!(r.base_locus, "e1 ∪ e2");
        assert!(r.model.starts_with("Y0 in P4, Q-factorial quartic"));
    }

    #[test]
    fn outside_cone() {
        assert!(classify(CurveCase::Generic, dc(1, 1)).is_err());
        assert!(classify(CurveCase::Generic, dc(0, 1)).is_err());
        assert!(classify(CurveCase::D2, dc(0, 0)).is_err());
        assert!(classify(CurveCase::D2, dc(2, 1)).is_err());
        assert!(classify(CurveCase::D2, dc(11, 3)).is_ok());
    }

    #[test]
    fn interval_strings() {
        let t = chambers(CurveCase::D2);
        let iv: Vec<String> = t.chambers.iter().map(Chamber::interval).collect();
        assert_eq!(iv, ["(H, E]", "[5H-E, H]", "[4H-E, 5H-E)", "[3H-E, 4H-E)"]);
    }
}
