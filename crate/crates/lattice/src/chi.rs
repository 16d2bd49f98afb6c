//! Euler characteristics of `nH - kE` on the blow-up along a (10, 11) curve.

use num_rational::Ratio;

use crate::blowup::{BlowupP3, DivisorClass};
use crate::error::{Error, Result};

type Q = Ratio<i128>;

/// `(n+3)(n+2)(n+1)/6` as a polynomial in `n`, valid for every integer.
pub fn ambient_chi(n: i64) -> i128 {
    let n = n as i128;
    (n + 3) * (n + 2) * (n + 1) / 6
}

pub fn chi_closed(n: i64, k: i64) -> i128 {
    let (ni, ki) = (n as i128, k as i128);
    ambient_chi(n) - 5 * ki * (ni * ki + ni - 2 * ki * ki - ki + 1)
}

/// Riemann-Roch on a blow-up of P^3 with the two second-Chern periods
/// `c2.H` and `c2.E` fitted from the closed form and then frozen.
#[derive(Clone, Copy, Debug)]
pub struct HrrChi {
    space: BlowupP3,
    c2h: Q,
    c2e: Q,
}

impl HrrChi {
    /// Fits the periods so that `chi(H)` and `chi(-E)` (the classes
    /// `(n, k) = (1, 0)` and `(0, 1)`) match `anchor`.
    pub fn fit(space: BlowupP3, anchor: impl Fn(i64, i64) -> i128) -> Self {
        let zero = Self { space, c2h: Q::from(0), c2e: Q::from(0) };
        // c2 enters linearly as (n c2.H - k c2.E) / 12
        let twelve = Q::from(12);
        let c2h = (Q::from(anchor(1, 0)) - zero.raw(1, 0)) * twelve;
        let c2e = -(Q::from(anchor(0, 1)) - zero.raw(0, 1)) * twelve;
        Self { space, c2h, c2e }
    }

    pub fn periods(&self) -> (Q, Q) {
        (self.c2h, self.c2e)
    }

    fn raw(&self, n: i64, k: i64) -> Q {
        let x = &self.space;
        let d = DivisorClass::new(n, k);
        let kx = DivisorClass::anticanonical().neg();
        let d3 = Q::from(x.cube(d) as i128);
        let kd2 = Q::from(x.triple(kx, d, d) as i128);
        let dk2 = Q::from(x.triple(d, kx, kx) as i128);
        let c2d = self.c2h * Q::from(n as i128) - self.c2e * Q::from(k as i128);
        d3 / Q::from(6) - kd2 / Q::from(4) + (dk2 + c2d) / Q::from(12) + Q::from(1)
    }

    pub fn eval(&self, n: i64, k: i64) -> Result<i128> {
        let v = self.raw(n, k);
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::NonIntegral(format!("chi({}) = {v}", DivisorClass::new(n, k))))
        }
    }
}

/// Riemann-Roch evaluation fitted to the closed form on the (10, 11) blow-up.
pub fn chi_hrr(n: i64, k: i64) -> Result<i128> {
    HrrChi::fit(BlowupP3::new(10, 11), chi_closed).eval(n, k)
}
