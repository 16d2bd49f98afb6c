//! Closed-form counts used alongside the lattice computations.

use crate::blowup::DivisorClass;
use crate::error::{Error, Result};

/// Number of 4-secant lines to a general curve of degree `d` and genus `g`.
pub fn quadrisecant_count(d: i64, g: i64) -> Result<i64> {
    if d < 4 {
        return Err(Error::Precondition(format!("degree {d} < 4")));
    }
    let a = (d - 2) * (d - 3) * (d - 3) * (d - 4);
    let b = g * (d * d - 7 * d + 13 - g);
    if a % 12 != 0 || b % 2 != 0 {
        return Err(Error::NonIntegral(format!("quadrisecant count for ({d}, {g})")));
    }
    Ok(a / 12 - b / 2)
}

/// Class group rank minus Picard rank of a nodal quartic threefold.
pub fn defect(sing_count: i64, h0_cubics: i64) -> Result<i64> {
    if sing_count < 0 || h0_cubics < 0 {
        return Err(Error::Precondition("counts must be nonnegative".into()));
    }
    Ok(sing_count + h0_cubics - 35)
}

/// `(2F + K) . l` for a line with `H.l = 1` and `E.l = secancy`.
pub fn splitting_criterion(f: DivisorClass, secancy: i64) -> i64 {
    let dot = |d: DivisorClass| d.n - d.k * secancy;
    2 * dot(f) + dot(DivisorClass::anticanonical().neg())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrisecants() {
        assert_eq!(quadrisecant_count(10, 11), Ok(20));
        assert_eq!(quadrisecant_count(4, 0), Ok(0));
        assert_eq!(quadrisecant_count(4, 1), Ok(0));
        assert!(quadrisecant_count(3, 0).is_err());
    }

    #[test]
    fn defects() {
        assert_eq!(defect(20, 16), Ok(1));
        assert_eq!(defect(20, 15), Ok(0));
        assert_eq!(defect(0, 35), Ok(0));
    }

    #[test]
    fn splitting() {
        let f = DivisorClass::new(11, 3);
        assert_eq!(splitting_criterion(f, 4), -2);
        assert_eq!(splitting_criterion(f, 5), -7);
        assert_eq!(splitting_criterion(DivisorClass::new(3, 1), 3), -1);
    }
}
