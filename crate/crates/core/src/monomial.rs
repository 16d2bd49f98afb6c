//! Packed exponent vectors for at most eight variables.

use std::fmt;

pub const MAX_VARS: usize = 8;

/// Exponent tuple; unused trailing slots stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(pub [u16; MAX_VARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; MAX_VARS]);

    pub fn from_exps(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        let mut e = [0u16; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Mono(e)
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0u16; MAX_VARS];
        e[i] = 1;
        Mono(e)
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }

    /// Total (unweighted) degree.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn mul(&self, other: &Mono) -> Mono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Mono(e)
    }

    #[inline]
    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Mono) -> Mono {
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0.iter()) {
            *a -= *b;
        }
        Mono(e)
    }

    pub fn checked_div(&self, by: &Mono) -> Option<Mono> {
        if by.divides(self) {
            Some(by.quotient_of(self))
        } else {
            None
        }
    }

    #[inline]
    pub fn lcm(&self, other: &Mono) -> Mono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = (*a).max(*b);
        }
        Mono(e)
    }

    #[inline]
    pub fn gcd(&self, other: &Mono) -> Mono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = (*a).min(*b);
        }
        Mono(e)
    }

    pub fn is_coprime(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// All monomials of total degree `d` in the first `n` variables.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Mono> {
        let mut out = Vec::new();
        let mut cur = [0u16; MAX_VARS];
        fn rec(i: usize, n: usize, left: u32, cur: &mut [u16; MAX_VARS], out: &mut Vec<Mono>) {
            if i + 1 == n {
                cur[i] = left as u16;
                out.push(Mono(*cur));
                cur[i] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as u16;
                rec(i + 1, n, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if n == 0 {
            if d == 0 {
                out.push(Mono::ONE);
            }
            return out;
        }
        rec(0, n, d, &mut cur, &mut out);
        out
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.0[..last])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_lcm() {
        let a = Mono::from_exps(&[2, 1, 0, 0]);
        let b = Mono::from_exps(&[1, 3, 0, 1]);
        assert_eq!(a.lcm(&b), Mono::from_exps(&[2, 3, 0, 1]));
        assert_eq!(a.gcd(&b), Mono::from_exps(&[1, 1, 0, 0]));
        assert!(!a.divides(&b));
        assert!(a.divides(&a.mul(&b)));
        assert_eq!(a.quotient_of(&a.mul(&b)), b);
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(Mono::all_of_degree(4, 3).len(), 20);
        assert_eq!(Mono::all_of_degree(5, 4).len(), 70);
        assert_eq!(Mono::all_of_degree(4, 0).len(), 1);
    }
}
