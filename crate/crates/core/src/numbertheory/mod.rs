//! Sieve tables, Kloosterman sums and the prime and Möbius statistics of
//! automatic sequences.

mod kloosterman;
mod mobius;
mod primes;
mod sieve;

pub use kloosterman::{kloosterman, mod_inverse};
pub use mobius::{mobius_correlation, windowed_mobius_sum, LabelCorrelation, MobiusCorrelation, WindowedSum};
pub use primes::{
    empirical_prime_frequencies, predict_prime_frequencies, prime_weight_counts, EmpiricalPrimeStats,
    PrimePrediction,
};
pub use sieve::SieveTables;

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// `e(x) = exp(2πix)`.
pub fn e(x: f64) -> num_complex::Complex64 {
    let (s, c) = (std::f64::consts::TAU * x.rem_euclid(1.0)).sin_cos();
    num_complex::Complex64::new(c, s)
}
