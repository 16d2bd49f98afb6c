//! Dense linear algebra over a coefficient field.

use rayon::prelude::*;

use crate::field::Field;

/// Row-major dense matrix as a vector of rows.
pub type Rows<E> = Vec<Vec<E>>;

const PAR_ROWS: usize = 64;

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref<F: Field>(f: &F, rows: &mut Rows<F::Elem>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]).expect("pivot is nonzero");
        for x in rows[r][c..].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        let eliminate = |(i, row): (usize, &mut Vec<F::Elem>)| {
            if i == r || f.is_zero(&row[c]) {
                return;
            }
            let factor = row[c].clone();
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !f.is_zero(p) {
                    *x = f.sub_mul(x, &factor, p);
                }
            }
        };
        if rows.len() > PAR_ROWS {
            rows.par_iter_mut().enumerate().for_each(eliminate);
        } else {
            rows.iter_mut().enumerate().for_each(eliminate);
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Rank by forward elimination (no back substitution).
pub fn rank<F: Field>(f: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut m: Rows<F::Elem> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(&m[r][c]).expect("pivot is nonzero");
        let pivot_row: Vec<F::Elem> = m[r][c..].iter().map(|x| f.mul(x, &inv)).collect();
        let below = &mut m[r + 1..];
        let eliminate = |row: &mut Vec<F::Elem>| {
            if f.is_zero(&row[c]) {
                return;
            }
            let factor = row[c].clone();
            for (x, p) in row[c..].iter_mut().zip(&pivot_row) {
                if !f.is_zero(p) {
                    *x = f.sub_mul(x, &factor, p);
                }
            }
        };
        if below.len() > PAR_ROWS {
            below.par_iter_mut().for_each(eliminate);
        } else {
            below.iter_mut().for_each(eliminate);
        }
        r += 1;
    }
    r
}

/// Basis of `{ v : M v = 0 }` for `M` with `ncols` columns.
pub fn nullspace<F: Field>(f: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Rows<F::Elem> {
    let mut m: Rows<F::Elem> = rows.to_vec();
    let pivots = rref(f, &mut m);
    let mut is_pivot = vec![None; ncols];
    for (i, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(i);
    }
    let mut out = Vec::new();
    for free in 0..ncols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![f.zero(); ncols];
        v[free] = f.one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = f.neg(&m[i][free]);
        }
        out.push(v);
    }
    out
}

/// Indices of vectors from `extra` that extend the span of `base`
/// (greedy, in order), together with the rank of `base`.
pub fn extend_basis<F: Field>(
    f: &F,
    base: &[Vec<F::Elem>],
    extra: &[Vec<F::Elem>],
) -> (usize, Vec<usize>) {
    let mut ech: Rows<F::Elem> = base.to_vec();
    let pivots = rref(f, &mut ech);
    let base_rank = pivots.len();
    let mut piv = pivots;
    let mut chosen = Vec::new();
    for (idx, v) in extra.iter().enumerate() {
        let mut w = v.clone();
        for (row, &c) in ech.iter().zip(&piv) {
            if !f.is_zero(&w[c]) {
                let factor = w[c].clone();
                for (x, p) in w.iter_mut().zip(row) {
                    *x = f.sub_mul(x, &factor, p);
                }
            }
        }
        if let Some(c) = w.iter().position(|x| !f.is_zero(x)) {
            let inv = f.inv(&w[c]).expect("nonzero");
            for x in w.iter_mut() {
                *x = f.mul(x, &inv);
            }
            for row in ech.iter_mut() {
                if !f.is_zero(&row[c]) {
                    let factor = row[c].clone();
                    for (x, p) in row.iter_mut().zip(&w) {
                        *x = f.sub_mul(x, &factor, p);
                    }
                }
            }
            ech.push(w);
            piv.push(c);
            chosen.push(idx);
        }
    }
    (base_rank, chosen)
}
