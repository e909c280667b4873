use num_complex::Complex64;
use num_integer::Integer;

use super::e;
use crate::error::{Error, Result};

/// Inverse of `x` modulo `m`, if it exists.
pub fn mod_inverse(x: u64, m: u64) -> Option<u64> {
    let g = (x as i128).extended_gcd(&(m as i128));
    (g.gcd == 1).then(|| g.x.rem_euclid(m as i128) as u64)
}

/// `S(a, b; c) = Σ_{x < c, (x,c)=1} e((a x + b x̄) / c)`.
pub fn kloosterman(a: i64, b: i64, c: u64) -> Result<Complex64> {
    if c == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let (a, b) = (a.rem_euclid(c as i64) as u128, b.rem_euclid(c as i64) as u128);
    let mut sum = Complex64::new(0.0, 0.0);
    for x in 0..c {
        if let Some(inv) = mod_inverse(x, c) {
            let phase = (a * x as u128 + b * inv as u128) % c as u128;
            sum += e(phase as f64 / c as f64);
        }
    }
    Ok(sum)
}
