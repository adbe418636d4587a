//! Factorization: trial division, then Pollard-Brent with a deterministic
//! parameter sequence and an explicit iteration budget. Running out of budget
//! is a hard error carrying the surviving cofactor; nothing is approximated.

use crate::arith::{gcd, mul_mod};
use crate::error::{Error, Result};
use crate::primality::{is_prime_u64, is_probable_prime, primes_up_to, small_primes};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy)]
pub struct FactorConfig {
    /// Total Pollard iteration allowance per input.
    pub budget: u64,
    /// First polynomial increment c in x^2 + c; attempts use c, c+1, ...
    pub seed: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            budget: 1 << 24,
            seed: 1,
        }
    }
}

/// Primes up to 10^6, the trial-division front end for big inputs.
fn trial_primes() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| primes_up_to(1_000_000))
}

/// Complete factorization of a word-sized integer; empty for n < 2.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    if n < 2 {
        return out;
    }
    for &p in small_primes() {
        if p * p > n {
            break;
        }
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if n > 1 {
        let mut stack = vec![n];
        let mut found: Vec<u64> = Vec::new();
        while let Some(m) = stack.pop() {
            if is_prime_u64(m) {
                found.push(m);
            } else {
                let d = pollard_brent_u64(m);
                stack.push(d);
                stack.push(m / d);
            }
        }
        found.sort_unstable();
        for p in found {
            match out.iter_mut().find(|(q, _)| *q == p) {
                Some((_, e)) => *e += 1,
                None => out.push((p, 1)),
            }
        }
    }
    out.sort_unstable();
    out
}

/// Nontrivial divisor of an odd composite (no factor below 10^4).
fn pollard_brent_u64(n: u64) -> u64 {
    for c in 1.. {
        if let Some(d) = brent_attempt_u64(n, c) {
            return d;
        }
    }
    unreachable!()
}

fn brent_attempt_u64(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let mut y = 2u64;
    let mut r = 1u64;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut x = 0u64;
    let mut ys = 0u64;
    const M: u64 = 128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..M.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += M;
        }
        r <<= 1;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

/// Complete factorization of n >= 1 (empty for 1), ascending primes.
pub fn factorize(n: &BigInt, cfg: &FactorConfig) -> Result<Vec<(BigInt, u32)>> {
    debug_assert!(n.is_positive() || n.is_one());
    let mut rest = n.clone();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for &p in trial_primes() {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        if (&rest % &bp).is_zero() {
            let mut e = 0;
            while (&rest % &bp).is_zero() {
                rest /= &bp;
                e += 1;
            }
            out.push((bp, e));
        }
    }
    if !rest.is_one() {
        let mut budget = cfg.budget;
        let mut stack = vec![rest];
        let mut found: Vec<BigInt> = Vec::new();
        while let Some(m) = stack.pop() {
            if let Some(w) = m.to_u64() {
                for (p, e) in factor_u64(w) {
                    for _ in 0..e {
                        found.push(BigInt::from(p));
                    }
                }
                continue;
            }
            if is_probable_prime(&m) {
                found.push(m);
                continue;
            }
            match brent_big(&m, cfg.seed, &mut budget) {
                Some(d) => {
                    stack.push(&m / &d);
                    stack.push(d);
                }
                None => {
                    return Err(Error::IncompleteFactorization {
                        n: n.clone(),
                        cofactor: m,
                    })
                }
            }
        }
        found.sort();
        for p in found {
            match out.iter_mut().find(|(q, _)| *q == p) {
                Some((_, e)) => *e += 1,
                None => out.push((p, 1)),
            }
        }
    }
    out.sort();
    Ok(out)
}

/// One Brent run per c starting at `seed`, drawing iterations from `budget`.
fn brent_big(n: &BigInt, seed: u64, budget: &mut u64) -> Option<BigInt> {
    const M: u64 = 128;
    for c in seed.. {
        let cc = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &cc).mod_floor(n);
        let mut y = BigInt::from(2);
        let mut r = 1u64;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = BigInt::zero();
        let mut ys = BigInt::zero();
        while g.is_one() {
            if *budget == 0 {
                return None;
            }
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = M.min(r - k).min(*budget);
                if steps == 0 {
                    return None;
                }
                for _ in 0..steps {
                    y = f(&y);
                    q = (&q * (&x - &y).abs()).mod_floor(n);
                }
                *budget = budget.saturating_sub(steps);
                g = q.gcd(n);
                k += steps;
            }
            r <<= 1;
        }
        if &g == n {
            g = BigInt::one();
            while g.is_one() {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    unreachable!()
}

/// Euler phi from a complete factorization.
pub fn phi_from_factors(factors: &[(BigInt, u32)]) -> BigInt {
    let mut phi = BigInt::one();
    for (p, e) in factors {
        phi *= p - 1;
        phi *= p.pow(e - 1);
    }
    phi
}

pub fn phi_u64(n: u64) -> u64 {
    let mut phi = 1u64;
    for (p, e) in factor_u64(n) {
        phi *= p - 1;
        phi *= p.pow(e - 1);
    }
    phi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_sized() {
        assert_eq!(factor_u64(1), vec![]);
        assert_eq!(factor_u64(2), vec![(2, 1)]);
        assert_eq!(factor_u64(720), vec![(2, 4), (3, 2), (5, 1)]);
        assert_eq!(
            factor_u64(0xffff_ffff_ffff_ffff),
            vec![
                (3, 1),
                (5, 1),
                (17, 1),
                (257, 1),
                (641, 1),
                (65537, 1),
                (6700417, 1)
            ]
        );
        // semiprime beyond the trial bound
        let p = 1_000_003u64;
        let q = 998_244_353u64;
        assert_eq!(factor_u64(p * q), vec![(p, 1), (q, 1)]);
    }

    #[test]
    fn reassembles_input() {
        for n in [2u64, 97, 1024, 600851475143, 999999999989] {
            let f = factor_u64(n);
            let back: u64 = f.iter().map(|(p, e)| p.pow(*e)).product();
            assert_eq!(back, n);
        }
    }

    #[test]
    fn big_path() {
        let p = BigInt::from(1_000_000_000_039u64);
        let q = BigInt::from(1_000_000_000_061u64);
        let n = &p * &q * &p;
        let f = factorize(&n, &FactorConfig::default()).unwrap();
        assert_eq!(f, vec![(p, 2), (q, 1)]);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        // product of two 30-digit primes; a budget of a few steps cannot split it
        let p: BigInt = "522344225035675577465256091".parse().unwrap();
        let q: BigInt = "568912883094041784870991459".parse().unwrap();
        let n = &p * &q;
        let cfg = FactorConfig {
            budget: 16,
            seed: 1,
        };
        match factorize(&n, &cfg) {
            Err(Error::IncompleteFactorization { cofactor, .. }) => assert_eq!(cofactor, n),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi_u64(1), 1);
        assert_eq!(phi_u64(6), 2);
        assert_eq!(phi_u64(2520), 576);
        let f = factorize(&BigInt::from(2520), &FactorConfig::default()).unwrap();
        assert_eq!(phi_from_factors(&f), BigInt::from(576));
    }
}
