//! Finite fields, their towers, Frobenius maps and Lang-equation solvers.

mod galois;
mod lang;
mod tower;

pub use galois::{is_prime, least_irreducible, pow_mod, prime_factors, GaloisField, MAX_FIELD_SIZE};
pub use lang::LangKind;
pub use tower::{FieldElement, FieldTower};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field F_{p}^{k} exceeds the tabulation limit")]
    TooLarge { p: u32, k: u32 },
    #[error("Lang equation not solved: {0}")]
    LangUnsolved(String),
}

/// Build the tower F_p ⊂ F_{p^d} for the given degrees.
pub fn field_tower(p: u32, degrees: &[u32]) -> Result<FieldTower, FieldError> {
    FieldTower::new(p, degrees)
}
