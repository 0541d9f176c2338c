//! Character tables, class-function algebra over all pure inner forms,
//! induction and restriction, and extension of F-stable characters.

mod dixon;
mod extend;
mod funspace;
pub mod modp;
mod table;

pub use dixon::{character_table, character_table_with, ClassAlgebra};
pub use extend::{extend_f_stable, frobenius_on_classes, is_f_stable, stable_characters, Extension, StableChar};
pub use funspace::{ClassFn, FormTable, FunSpace};
pub use table::{induce, restrict, CharacterTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChartabError {
    #[error("no Dixon prime found for exponent {exponent}")]
    NoPrime { exponent: u64 },
    #[error("eigenspace splitting stopped at {found} spaces for {classes} classes")]
    SplitFailed { found: usize, classes: usize },
    #[error("lifting to cyclotomics failed: {0}")]
    Lift(String),
    #[error("table verification failed: {0}")]
    Verification(String),
    #[error("mismatched ambient data: {0}")]
    Mismatch(String),
    #[error("character {0} is not F-stable")]
    NotFStable(usize),
}
