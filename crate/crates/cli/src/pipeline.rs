//! Flip a 5x4 matrix of linear forms on P^3 into a 4x4 matrix on P^4, take
//! the determinantal quartic and study its singular scheme.

use anyhow::{bail, Context, Result};
use detq_core::matrix::matrix_from_text;
use detq_core::resolution::minimal_resolution_betti;
use detq_core::{BettiTable, Field, Ideal, MonoOrder, Ring};
use detq_lattice::defect;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::fixtures::p3;

pub const FLIP_VARS: [&str; 5] = ["a", "b", "c", "d", "e"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineOutput {
    pub quartic: String,
    pub gamma_degree: i64,
    pub gamma_dim: i64,
    /// `β_{i, i+2}` for `i = 1..=4`.
    pub betti_row2: Vec<u64>,
    /// `β_{i, i+4}` for `i = 1..=4`.
    pub betti_row4: Vec<u64>,
    pub betti_text: String,
    pub h0_cubics: i64,
    /// `β_{1,3}`, the same count read off the resolution.
    pub cubics_from_betti: i64,
    pub h0_quartics: i64,
    /// Quartics through `Γ` modulo scalars.
    pub tangent_dim: i64,
    pub defect: i64,
}

fn columns(b: &BettiTable, row: i64) -> Vec<u64> {
    (1..=4).map(|i| b.get(i, i as i64 + row)).collect()
}

pub fn run_pipeline<F: Field>(field: F, matrix: &str, cfg: &Config) -> Result<PipelineOutput> {
    let r = p3(field.clone(), cfg)?;
    let m = matrix_from_text(&r, matrix).context("parse stage")?;
    if (m.nrows(), m.ncols()) != (5, 4) {
        bail!("parse stage: expected a 5x4 matrix, got {}x{}", m.nrows(), m.ncols());
    }
    let r5 = Ring::new(field, &FLIP_VARS, MonoOrder::Grevlex)?
        .with_budget(cfg.budget.to_budget())
        .into_ref();
    let n = m.tensor_flip(r5.clone()).context("tensor flip stage")?;
    let det = n.determinant().context("determinant stage")?;
    if r5.degree(&det) != Some(4) {
        bail!("determinant stage: flipped determinant is not a quartic (degree {:?})", r5.degree(&det));
    }
    let mut gens = vec![det.clone()];
    gens.extend((0..FLIP_VARS.len()).map(|v| r5.derivative(&det, v)));
    let gamma = Ideal::new(r5.clone(), gens)
        .and_then(|j| j.saturate_irrelevant())
        .context("saturation stage")?;
    let h = gamma.hilbert().context("saturation stage")?;
    let gamma_dim = h.projective_dim();
    if gamma_dim != 0 {
        bail!("singular locus stage: expected a finite scheme, projective dimension is {gamma_dim}");
    }
    let betti = minimal_resolution_betti(&gamma).context("resolution stage")?;
    let h0_cubics = gamma.graded_piece_dim(3)?;
    let h0_quartics = gamma.graded_piece_dim(4)?;
    let total_quartics = detq_core::hilbert::binom(4 + 4, 4) as i64;
    Ok(PipelineOutput {
        quartic: r5.render(&det),
        gamma_degree: h.degree,
        gamma_dim,
        betti_row2: columns(&betti, 2),
        betti_row4: columns(&betti, 4),
        betti_text: betti.render(),
        h0_cubics,
        cubics_from_betti: betti.get(1, 3) as i64,
        h0_quartics,
        tangent_dim: (total_quartics - 1) - (total_quartics - h0_quartics),
        defect: defect(h.degree, h0_cubics)?,
    })
}
