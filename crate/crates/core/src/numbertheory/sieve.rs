use rayon::prelude::*;

use crate::error::{Error, Result};

/// Möbius values and primality for every `n ≤ limit`.
pub struct SieveTables {
    limit: u64,
    mu: Vec<i8>,
    prime_bits: Vec<u64>,
}

const DEFAULT_SEGMENT: usize = 1 << 20;
const MAX_LIMIT: u64 = 1 << 31;

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn small_primes(bound: u64) -> Vec<u64> {
    let mut composite = vec![false; bound as usize + 1];
    let mut out = Vec::new();
    for i in 2..=bound as usize {
        if !composite[i] {
            out.push(i as u64);
            for j in (i * i..=bound as usize).step_by(i) {
                composite[j] = true;
            }
        }
    }
    out
}

impl SieveTables {
    pub fn new(limit: u64) -> Result<Self> {
        Self::with_segment(limit, DEFAULT_SEGMENT)
    }

    /// Segmented sieve; segments are processed in parallel.
    pub fn with_segment(limit: u64, segment: usize) -> Result<Self> {
        if limit > MAX_LIMIT {
            return Err(Error::CapExceeded { what: "sieve limit", cap: MAX_LIMIT });
        }
        let segment = segment.max(64).next_multiple_of(64);
        let len = limit as usize + 1;
        let root = isqrt(limit);
        let base = small_primes(root);
        let mut mu = vec![0i8; len];
        let mut prime_bits = vec![0u64; len.div_ceil(64)];
        mu.par_chunks_mut(segment)
            .zip(prime_bits.par_chunks_mut(segment / 64))
            .enumerate()
            .for_each(|(i, (mu_seg, bit_seg))| {
                fill_segment((i * segment) as u64, mu_seg, bit_seg, &base, root);
            });
        Ok(SieveTables { limit, mu, prime_bits })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn mu(&self, n: u64) -> i8 {
        self.mu[n as usize]
    }

    pub fn is_prime(&self, n: u64) -> bool {
        self.prime_bits[(n / 64) as usize] & (1 << (n % 64)) != 0
    }

    pub fn mu_slice(&self) -> &[i8] {
        &self.mu
    }

    /// `Σ_{1 ≤ m ≤ n} μ(m)`.
    pub fn mertens(&self, n: u64) -> i64 {
        self.mu[1..=n as usize].iter().map(|&m| m as i64).sum()
    }

    /// Primes in `[lo, hi)`, clipped to the table.
    pub fn primes_in(&self, lo: u64, hi: u64) -> impl Iterator<Item = u64> + '_ {
        let hi = hi.min(self.limit + 1);
        (lo..hi).filter(move |&n| self.is_prime(n))
    }
}

fn fill_segment(lo: u64, mu: &mut [i8], bits: &mut [u64], base: &[u64], root: u64) {
    let len = mu.len() as u64;
    let hi = lo + len;
    let mut rem: Vec<u64> = (lo..hi).collect();
    mu.fill(1);
    for &p in base {
        let start = lo.div_ceil(p) * p;
        for m in (start..hi).step_by(p as usize) {
            let i = (m - lo) as usize;
            mu[i] = -mu[i];
            rem[i] /= p;
        }
        let sq = p * p;
        let start = lo.div_ceil(sq) * sq;
        for m in (start..hi).step_by(sq as usize) {
            mu[(m - lo) as usize] = 0;
        }
    }
    for i in 0..len as usize {
        let n = lo + i as u64;
        if n == 0 {
            mu[i] = 0;
            continue;
        }
        if rem[i] > 1 {
            mu[i] = -mu[i];
        }
        let prime = n >= 2 && (rem[i] == n || (n <= root && base.binary_search(&n).is_ok()));
        if prime {
            bits[i / 64] |= 1 << (i % 64);
        }
    }
}
