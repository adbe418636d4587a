//! Word-sized modular arithmetic, CRT combination, and a flat bit grid.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    base %= m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of a mod m, if gcd(a, m) = 1.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Combine x = r1 mod m1 and x = r2 mod m2 into x mod lcm(m1, m2).
/// None when the two congruences conflict.
pub fn crt_pair(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> Option<(BigInt, BigInt)> {
    let e = m1.extended_gcd(m2);
    let g = e.gcd;
    let diff = r2 - r1;
    if !(&diff % &g).is_zero() {
        return None;
    }
    let l = m1 / &g * m2;
    let t = ((diff / &g) * e.x).mod_floor(&(m2 / &g));
    let x = (r1 + m1 * t).mod_floor(&l);
    Some((x, l))
}

/// Least non-negative solution of a full system of congruences.
pub fn crt(congruences: &[(BigInt, BigInt)]) -> Option<(BigInt, BigInt)> {
    let mut acc = (BigInt::zero(), BigInt::from(1u32));
    for (r, m) in congruences {
        acc = crt_pair(&acc.0, &acc.1, r, m)?;
    }
    Some(acc)
}

/// Natural log of a positive big integer, usable far beyond f64 range.
pub fn ln_big(n: &BigInt) -> f64 {
    debug_assert!(n.is_positive());
    let bits = n.bits();
    if bits <= 53 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 53;
    let top = (n >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Dense rows x cols bit matrix.
pub struct BitGrid {
    cols: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl BitGrid {
    pub fn new(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        BitGrid {
            cols,
            words_per_row,
            words: vec![0; rows * words_per_row],
        }
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize) {
        debug_assert!(col < self.cols);
        self.words[row * self.words_per_row + col / 64] |= 1u64 << (col % 64);
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        debug_assert!(col < self.cols);
        self.words[row * self.words_per_row + col / 64] & (1u64 << (col % 64)) != 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_mod_basics() {
        assert_eq!(pow_mod(2, 10, 1000), 24);
        assert_eq!(pow_mod(3, 0, 7), 1);
        assert_eq!(pow_mod(5, 3, 1), 0);
        assert_eq!(
            pow_mod(u64::MAX - 1, 2, u64::MAX - 58),
            pow_mod(57, 2, u64::MAX - 58)
        );
    }

    #[test]
    fn inv_mod_basics() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
        let m = 0xffff_ffff_ffff_ffc5; // large prime
        let x = 123_456_789_u64;
        let inv = inv_mod(x, m).unwrap();
        assert_eq!(mul_mod(x, inv, m), 1);
    }

    #[test]
    fn crt_combines_and_detects_conflicts() {
        let c = [
            (BigInt::from(2), BigInt::from(3)),
            (BigInt::from(3), BigInt::from(5)),
            (BigInt::from(2), BigInt::from(7)),
        ];
        let (x, m) = crt(&c).unwrap();
        assert_eq!(m, BigInt::from(105));
        assert_eq!(x, BigInt::from(23));
        let bad = [
            (BigInt::from(1), BigInt::from(4)),
            (BigInt::from(2), BigInt::from(6)),
        ];
        assert!(crt(&bad).is_none());
    }

    #[test]
    fn ln_big_matches_f64_and_scales() {
        let n = BigInt::from(1_000_000u64);
        assert!((ln_big(&n) - 6.0 * 10f64.ln()).abs() < 1e-12);
        let big = BigInt::from(3u32).pow(2520);
        let expect = 2520.0 * 3f64.ln();
        assert!((ln_big(&big) - expect).abs() < 1e-9 * expect);
    }

    #[test]
    fn bit_grid_set_get() {
        let mut g = BitGrid::new(3, 130);
        g.set(0, 0);
        g.set(2, 129);
        g.set(1, 64);
        assert!(g.get(0, 0) && g.get(2, 129) && g.get(1, 64));
        assert!(!g.get(0, 1) && !g.get(2, 128));
    }
}
