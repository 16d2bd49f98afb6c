//! Curve fixtures, the flip pipeline and the verification suite behind the
//! `detq` binary.

pub mod cache;
pub mod config;
pub mod fixtures;
pub mod golden;
pub mod pipeline;
pub mod report;
pub mod suite;

/// Runs `$body` with `$f` bound to the configured coefficient field.
#[macro_export]
macro_rules! on_field {
    ($cfg:expr, $f:ident => $body:expr) => {
        match $cfg.field {
            $crate::config::FieldChoice::Q => {
                let $f = ::detq_core::Rationals;
                $body
            }
            $crate::config::FieldChoice::Fp => {
                let $f = ::detq_core::PrimeField::new($cfg.prime)?;
                $body
            }
        }
    };
}
