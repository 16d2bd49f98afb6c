//! Sparse polynomials in canonical form.
//!
//! A `Poly` stores its terms sorted by descending order key of the ring that
//! built it, with no zero coefficients. Arithmetic lives on [`crate::Ring`],
//! which knows the field and the monomial order.

use crate::monomial::Mono;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term<E> {
    pub key: u128,
    pub mono: Mono,
    pub coeff: E,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    pub(crate) terms: Vec<Term<E>>,
}

impl<E> Default for Poly<E> {
    fn default() -> Self {
        Self { terms: Vec::new() }
    }
}

impl<E> Poly<E> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term<E>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading term for the ring's order; `None` for the zero polynomial.
    pub fn lead(&self) -> Option<&Term<E>> {
        self.terms.first()
    }

    pub fn lead_mono(&self) -> Option<Mono> {
        self.terms.first().map(|t| t.mono)
    }

    pub fn monos(&self) -> impl Iterator<Item = &Mono> {
        self.terms.iter().map(|t| &t.mono)
    }

    pub fn into_terms(self) -> Vec<Term<E>> {
        self.terms
    }
}
