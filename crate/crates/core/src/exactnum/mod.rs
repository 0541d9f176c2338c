//! Exact arithmetic over Q and cyclotomic fields.

mod cyclotomic;
mod rational;
mod scalar;

pub use cyclotomic::{approx_complex, cyclo_data, euler_phi, ArithError, CycloData, Cyclotomic};
pub use rational::{exact_sqrt, gcd_u64, lcm_u64, Rational};
pub use scalar::Scalar;

/// Witness ζ = ζ_m^k with x = ζ·y, when one exists.
pub fn compare_up_to_root_of_unity<Q: Scalar>(
    x: &Cyclotomic<Q>,
    y: &Cyclotomic<Q>,
) -> Option<Cyclotomic<Q>> {
    x.root_of_unity_ratio(y).map(|(m, k)| Cyclotomic::root_of_unity(m, k as i64))
}

#[cfg(test)]
mod tests;
