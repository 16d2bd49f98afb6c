//! Matrices of polynomials: determinants, minors, Jacobians, tensor flips.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use crate::monomial::Mono;
use crate::poly::Poly;
use crate::ring::{Ring, RingRef};

#[derive(Clone, Debug)]
pub struct PolyMatrix<F: Field> {
    ring: RingRef<F>,
    rows: usize,
    cols: usize,
    entries: Vec<Poly<F::Elem>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn from_rows(ring: RingRef<F>, rows: Vec<Vec<Poly<F::Elem>>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 || rows[0].is_empty() {
            return Err(Error::Empty("matrix"));
        }
        let c = rows[0].len();
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Precondition("ragged matrix rows".into()));
        }
        Ok(Self { ring, rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }
    pub fn nrows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &Poly<F::Elem> {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Poly<F::Elem>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut e = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                e.push(self.get(i, j).clone());
            }
        }
        Self { ring: self.ring.clone(), rows: self.cols, cols: self.rows, entries: e }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// True when every nonzero entry is a homogeneous form of degree one.
    pub fn is_linear(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero() || p.terms().iter().all(|t| t.mono.degree() == 1))
    }

    /// Exact determinant by Laplace expansion along rows, memoized on the
    /// set of remaining columns.
    pub fn determinant(&self) -> Result<Poly<F::Elem>> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(self.minor(&rows, &cols))
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Poly<F::Elem> {
        assert_eq!(rows.len(), cols.len());
        assert!(cols.len() <= 63, "minor too large for memoization");
        let mut memo: HashMap<u64, Poly<F::Elem>> = HashMap::new();
        let full = if cols.len() == 64 { u64::MAX } else { (1u64 << cols.len()) - 1 };
        self.laplace(rows, cols, 0, full, &mut memo)
    }

    fn laplace(
        &self,
        rows: &[usize],
        cols: &[usize],
        depth: usize,
        mask: u64,
        memo: &mut HashMap<u64, Poly<F::Elem>>,
    ) -> Poly<F::Elem> {
        let r = &self.ring;
        if depth == rows.len() {
            return r.one();
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let mut acc = r.zero();
        let mut sign_neg = false;
        for (k, &c) in cols.iter().enumerate() {
            if mask & (1 << k) == 0 {
                continue;
            }
            let entry = self.get(rows[depth], c);
            if !entry.is_zero() {
                let sub = self.laplace(rows, cols, depth + 1, mask & !(1 << k), memo);
                let term = r.mul(entry, &sub);
                acc = if sign_neg { r.sub(&acc, &term) } else { r.add(&acc, &term) };
            }
            sign_neg = !sign_neg;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// All `k x k` minors, rows and columns in lexicographic subset order.
    pub fn minors(&self, k: usize) -> Vec<Poly<F::Elem>> {
        let mut out = Vec::new();
        if k == 0 || k > self.rows || k > self.cols {
            return out;
        }
        let rsets = subsets(self.rows, k);
        let csets = subsets(self.cols, k);
        for rs in &rsets {
            for cs in &csets {
                let m = self.minor(rs, cs);
                if !m.is_zero() {
                    out.push(m);
                }
            }
        }
        out
    }

    /// Maximal minors (size `min(rows, cols)`).
    pub fn maximal_minors(&self) -> Vec<Poly<F::Elem>> {
        self.minors(self.rows.min(self.cols))
    }

    /// Numeric matrix at a point.
    pub fn eval(&self, point: &[F::Elem]) -> Vec<Vec<F::Elem>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.ring.eval(self.get(i, j), point)).collect())
            .collect()
    }

    pub fn rank_at(&self, point: &[F::Elem]) -> usize {
        linalg::rank(self.ring.field(), &self.eval(point))
    }

    /// Reads the linear tensor: `t[i][j][v]` is the coefficient of variable
    /// `v` in entry `(i, j)`.
    pub fn linear_tensor(&self) -> Result<Vec<Vec<Vec<F::Elem>>>> {
        let f = self.ring.field();
        let n = self.ring.nvars();
        let mut t = vec![vec![vec![f.zero(); n]; self.cols]; self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                for term in self.get(i, j).terms() {
                    if term.mono.degree() != 1 {
                        return Err(Error::NonLinear { row: i, col: j });
                    }
                    let v = term.mono.0.iter().position(|&e| e == 1).expect("linear");
                    t[i][j][v] = term.coeff.clone();
                }
            }
        }
        Ok(t)
    }

    /// Reinterprets an `a x b` matrix of linear forms in `c` variables as a
    /// `c x b` matrix of linear forms in the `a` variables of `target`.
    pub fn tensor_flip(&self, target: RingRef<F>) -> Result<PolyMatrix<F>> {
        if target.nvars() != self.rows {
            return Err(Error::Precondition(format!(
                "target ring needs {} variables, has {}",
                self.rows,
                target.nvars()
            )));
        }
        let t = self.linear_tensor()?;
        let c = self.ring.nvars();
        let mut out = Vec::with_capacity(c);
        for v in 0..c {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(target.from_terms(
                    (0..self.rows).map(|i| (Mono::var(i), t[i][j][v].clone())),
                ));
            }
            out.push(row);
        }
        PolyMatrix::from_rows(target, out)
    }

    /// Matrix of partial derivatives: rows are generators, columns variables.
    pub fn jacobian(ring: RingRef<F>, gens: &[Poly<F::Elem>]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::Empty("generator list"));
        }
        let rows = gens
            .iter()
            .map(|g| (0..ring.nvars()).map(|v| ring.derivative(g, v)).collect())
            .collect();
        PolyMatrix::from_rows(ring, rows)
    }

    /// Moves every entry to another ring with the same variables.
    pub fn with_ring(&self, ring: RingRef<F>) -> Result<Self> {
        if ring.names() != self.ring.names() {
            return Err(Error::RingMismatch);
        }
        let entries = self.entries.iter().map(|p| ring.rekey(p)).collect();
        Ok(Self { ring, rows: self.rows, cols: self.cols, entries })
    }
}

/// Builds a matrix from text rows; convenience for fixtures and tests.
pub fn matrix_from_text<F: Field>(ring: &RingRef<F>, src: &str) -> Result<PolyMatrix<F>> {
    let rows = crate::parse::parse_matrix_rows(ring, src)?;
    PolyMatrix::from_rows(Arc::clone(ring), rows)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl<F: Field> Ring<F> {
    /// Convenience for `Arc`-wrapped construction in tests and fixtures.
    pub fn into_ref(self) -> RingRef<F> {
        Arc::new(self)
    }
}
