//! Intersection numbers on `Bl_C P^3`, Euler characteristics, chamber
//! tables, and the cubic-surface lattice.

pub mod blowup;
pub mod chambers;
pub mod chi;
pub mod cubic;
pub mod error;
pub mod numerics;
pub mod quadform;
pub mod surface;

pub use blowup::{flop_pushforward, BlowupP3, Class, DivisorClass, ExtraCenter, IteratedBlowup};
pub use chambers::{chambers, classify, ChamberRecord, ChamberTable, CurveCase};
pub use chi::{chi_closed, chi_hrr, HrrChi};
pub use cubic::{cubic_class_solve, cubic_secant_tally, lines, SurfaceClass};
pub use error::{Error, Result};
pub use numerics::{defect, quadrisecant_count, splitting_criterion};
pub use quadform::{rational_exclusion, QuadForm, Solvability};
pub use surface::{genus_discrepancy, k3_restriction, restrict, riemann_hurwitz};
