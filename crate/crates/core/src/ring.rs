//! Polynomial rings: variables, grading weights, monomial order and budgets.

use std::cmp::Ordering;
use std::sync::Arc;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Mono, MAX_VARS};
use crate::poly::{Poly, Term};

/// Monomial orders. Every order refines the weighted degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonoOrder {
    /// Weighted graded reverse lexicographic.
    Grevlex,
    /// Pure lexicographic.
    Lex,
    /// The first `k` variables form an elimination block compared by
    /// unweighted degree then reverse lex; ties go to weighted grevlex on
    /// the remaining variables.
    Block(usize),
}

/// Hard limits for Groebner computations. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_degree: Option<u32>,
    pub max_pairs: Option<usize>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }
}

#[derive(Clone, Debug)]
pub struct Ring<F: Field> {
    field: F,
    names: Vec<String>,
    weights: Vec<u16>,
    order: MonoOrder,
    budget: Budget,
}

pub type RingRef<F> = Arc<Ring<F>>;

impl<F: Field> Ring<F> {
    /// Standard-graded ring with the given order.
    pub fn new<S: AsRef<str>>(field: F, names: &[S], order: MonoOrder) -> Result<Self> {
        let w = vec![1u16; names.len()];
        Self::weighted(field, names, &w, order)
    }

    pub fn weighted<S: AsRef<str>>(
        field: F,
        names: &[S],
        weights: &[u16],
        order: MonoOrder,
    ) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.is_empty() || names.len() > MAX_VARS {
            return Err(Error::Ring(format!("need 1..={MAX_VARS} variables, got {}", names.len())));
        }
        if weights.len() != names.len() {
            return Err(Error::Ring("one weight per variable".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::Ring(format!("duplicate variable {a}")));
            }
        }
        let positive_from = match order {
            MonoOrder::Block(k) => {
                if k == 0 || k >= names.len() {
                    return Err(Error::Ring(format!("block split {k} out of range")));
                }
                k
            }
            _ => 0,
        };
        if weights[positive_from..].iter().any(|&w| w == 0) {
            return Err(Error::Ring("zero weights only allowed in the elimination block".into()));
        }
        Ok(Self { field, names, weights: weights.to_vec(), order, budget: Budget::default() })
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    /// Same variables and field under a different order.
    pub fn with_order(&self, order: MonoOrder) -> Result<Self> {
        Self::weighted(self.field.clone(), &self.names, &self.weights, order)
            .map(|r| r.with_budget(self.budget))
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn nvars(&self) -> usize {
        self.names.len()
    }
    pub fn weights(&self) -> &[u16] {
        &self.weights
    }
    pub fn order(&self) -> MonoOrder {
        self.order
    }
    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// True when both rings have the same field, variables, weights and order.
    pub fn same_as(&self, other: &Ring<F>) -> bool {
        self.field.spec() == other.field.spec()
            && self.names == other.names
            && self.weights == other.weights
            && self.order == other.order
    }

    #[inline]
    pub fn wdeg(&self, m: &Mono) -> u32 {
        m.0.iter().zip(&self.weights).map(|(&e, &w)| e as u32 * w as u32).sum()
    }

    /// Order key: comparing keys as integers compares monomials.
    #[inline]
    pub fn key(&self, m: &Mono) -> u128 {
        let n = self.names.len();
        let e = &m.0;
        let mut k: u128 = 0;
        let mut push = |v: u16| k = (k << 16) | v as u128;
        match self.order {
            MonoOrder::Grevlex => {
                push(self.wdeg(m) as u16);
                for i in (1..n).rev() {
                    push(0xFFFF - e[i]);
                }
            }
            MonoOrder::Lex => {
                for &x in e.iter().take(n) {
                    push(x);
                }
            }
            MonoOrder::Block(s) => {
                push(e[..s].iter().sum());
                for i in (1..s).rev() {
                    push(0xFFFF - e[i]);
                }
                let d2: u32 = (s..n).map(|i| e[i] as u32 * self.weights[i] as u32).sum();
                push(d2 as u16);
                for i in ((s + 1)..n).rev() {
                    push(0xFFFF - e[i]);
                }
            }
        }
        k
    }

    pub fn cmp_mono(&self, a: &Mono, b: &Mono) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    // ---- constructors ----

    pub fn zero(&self) -> Poly<F::Elem> {
        Poly::zero()
    }

    pub fn one(&self) -> Poly<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.monomial(c, Mono::ONE)
    }

    pub fn var(&self, i: usize) -> Poly<F::Elem> {
        self.monomial(self.field.one(), Mono::var(i))
    }

    pub fn monomial(&self, c: F::Elem, m: Mono) -> Poly<F::Elem> {
        if self.field.is_zero(&c) {
            return Poly::zero();
        }
        Poly { terms: vec![Term { key: self.key(&m), mono: m, coeff: c }] }
    }

    /// Canonical polynomial from arbitrary (monomial, coefficient) pairs.
    pub fn from_terms<I: IntoIterator<Item = (Mono, F::Elem)>>(&self, it: I) -> Poly<F::Elem> {
        let mut v: Vec<Term<F::Elem>> =
            it.into_iter().map(|(m, c)| Term { key: self.key(&m), mono: m, coeff: c }).collect();
        self.normalize(&mut v);
        Poly { terms: v }
    }

    fn normalize(&self, v: &mut Vec<Term<F::Elem>>) {
        v.sort_by(|a, b| b.key.cmp(&a.key));
        let f = &self.field;
        let mut out: Vec<Term<F::Elem>> = Vec::with_capacity(v.len());
        for t in v.drain(..) {
            match out.last_mut() {
                Some(last) if last.key == t.key => last.coeff = f.add(&last.coeff, &t.coeff),
                _ => {
                    if let Some(last) = out.last() {
                        if f.is_zero(&last.coeff) {
                            out.pop();
                        }
                    }
                    out.push(t)
                }
            }
        }
        if out.last().is_some_and(|t| f.is_zero(&t.coeff)) {
            out.pop();
        }
        *v = out;
    }

    /// Wraps terms that are already sorted by this ring's key and nonzero.
    pub(crate) fn from_sorted_terms(&self, v: Vec<Term<F::Elem>>) -> Poly<F::Elem> {
        debug_assert!(v.windows(2).all(|w| w[0].key > w[1].key));
        Poly { terms: v }
    }

    /// Re-sorts a polynomial built under another order of the same variables.
    pub fn rekey(&self, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.from_terms(p.terms.iter().map(|t| (t.mono, t.coeff.clone())))
    }

    // ---- arithmetic ----

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.merge(a, b, false)
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.merge(a, b, true)
    }

    fn merge(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>, negate_b: bool) -> Poly<F::Elem> {
        let f = &self.field;
        let (x, y) = (&a.terms, &b.terms);
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        let conv = |c: &F::Elem| if negate_b { f.neg(c) } else { c.clone() };
        while i < x.len() && j < y.len() {
            match x[i].key.cmp(&y[j].key) {
                Ordering::Greater => {
                    out.push(x[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term { key: y[j].key, mono: y[j].mono, coeff: conv(&y[j].coeff) });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_b {
                        f.sub(&x[i].coeff, &y[j].coeff)
                    } else {
                        f.add(&x[i].coeff, &y[j].coeff)
                    };
                    if !f.is_zero(&c) {
                        out.push(Term { key: x[i].key, mono: x[i].mono, coeff: c });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(x[i..].iter().cloned());
        out.extend(y[j..].iter().map(|t| Term { key: t.key, mono: t.mono, coeff: conv(&t.coeff) }));
        Poly { terms: out }
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        let f = &self.field;
        Poly {
            terms: a
                .terms
                .iter()
                .map(|t| Term { key: t.key, mono: t.mono, coeff: f.neg(&t.coeff) })
                .collect(),
        }
    }

    pub fn scale(&self, a: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
        let f = &self.field;
        if f.is_zero(c) {
            return Poly::zero();
        }
        Poly {
            terms: a
                .terms
                .iter()
                .map(|t| Term { key: t.key, mono: t.mono, coeff: f.mul(&t.coeff, c) })
                .collect(),
        }
    }

    /// `c * m * a`; order is preserved because monomial orders are multiplicative.
    pub fn mul_term(&self, a: &Poly<F::Elem>, c: &F::Elem, m: &Mono) -> Poly<F::Elem> {
        let f = &self.field;
        if f.is_zero(c) {
            return Poly::zero();
        }
        Poly {
            terms: a
                .terms
                .iter()
                .map(|t| {
                    let mono = t.mono.mul(m);
                    Term { key: self.key(&mono), mono, coeff: f.mul(&t.coeff, c) }
                })
                .collect(),
        }
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        let f = &self.field;
        let mut v = Vec::with_capacity(small.len() * big.len());
        for s in &small.terms {
            for t in &big.terms {
                let mono = s.mono.mul(&t.mono);
                v.push(Term { key: self.key(&mono), mono, coeff: f.mul(&s.coeff, &t.coeff) });
            }
        }
        self.normalize(&mut v);
        Poly { terms: v }
    }

    pub fn pow(&self, a: &Poly<F::Elem>, e: u32) -> Poly<F::Elem> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        match a.lead() {
            None => Poly::zero(),
            Some(t) if self.field.is_one(&t.coeff) => a.clone(),
            Some(t) => {
                let inv = self.field.inv(&t.coeff).expect("nonzero lead");
                self.scale(a, &inv)
            }
        }
    }

    // ---- queries ----

    /// Maximal weighted degree; `None` for zero.
    pub fn degree(&self, a: &Poly<F::Elem>) -> Option<u32> {
        a.terms.iter().map(|t| self.wdeg(&t.mono)).max()
    }

    pub fn is_homogeneous(&self, a: &Poly<F::Elem>) -> bool {
        let mut it = a.terms.iter().map(|t| self.wdeg(&t.mono));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn is_constant(&self, a: &Poly<F::Elem>) -> bool {
        a.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn eval(&self, a: &Poly<F::Elem>, point: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for t in &a.terms {
            let mut v = t.coeff.clone();
            for (i, &e) in t.mono.0.iter().enumerate().take(self.nvars()) {
                for _ in 0..e {
                    v = f.mul(&v, &point[i]);
                }
            }
            acc = f.add(&acc, &v);
        }
        acc
    }

    pub fn derivative(&self, a: &Poly<F::Elem>, var: usize) -> Poly<F::Elem> {
        let f = &self.field;
        self.from_terms(a.terms.iter().filter(|t| t.mono.0[var] > 0).map(|t| {
            let e = t.mono.0[var];
            let mut m = t.mono;
            m.0[var] -= 1;
            (m, f.mul(&t.coeff, &f.from_i64(e as i64)))
        }))
    }

    /// Ring map: variable `i` of `self` goes to `images[i]` in `target`.
    pub fn substitute(
        &self,
        a: &Poly<F::Elem>,
        target: &Ring<F>,
        images: &[Poly<F::Elem>],
    ) -> Poly<F::Elem> {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let mut acc = target.zero();
        for t in &a.terms {
            let mut v = target.constant(t.coeff.clone());
            for (i, &e) in t.mono.0.iter().enumerate().take(self.nvars()) {
                for _ in 0..e {
                    v = target.mul(&v, &images[i]);
                }
            }
            acc = target.add(&acc, &v);
        }
        acc
    }

    /// Moves a polynomial into `target`, sending variable `i` to `map[i]`.
    pub fn embed(&self, a: &Poly<F::Elem>, target: &Ring<F>, map: &[usize]) -> Poly<F::Elem> {
        target.from_terms(a.terms.iter().map(|t| {
            let mut m = Mono::ONE;
            for (i, &j) in map.iter().enumerate() {
                m.0[j] += t.mono.0[i];
            }
            (m, t.coeff.clone())
        }))
    }

    /// Human-readable form compatible with the text grammar.
    pub fn render(&self, a: &Poly<F::Elem>) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut s = String::new();
        for (idx, t) in a.terms.iter().enumerate() {
            let neg = f.is_negative(&t.coeff);
            let abs = if neg { f.neg(&t.coeff) } else { t.coeff.clone() };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.render_mono(&t.mono);
            if mono.is_empty() {
                s.push_str(&f.render(&abs));
            } else if f.is_one(&abs) {
                s.push_str(&mono);
            } else {
                s.push_str(&f.render(&abs));
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }

    pub fn render_mono(&self, m: &Mono) -> String {
        let mut parts = Vec::new();
        for (i, name) in self.names.iter().enumerate() {
            match m.0[i] {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}
