//! Baillie-PSW probable-prime testing: one base-2 strong test plus a strong
//! Lucas test with Selfridge parameters. No composite below 2^64 passes both,
//! so answers there are unconditionally correct; beyond that the test is a
//! strong probable-prime policy with no known counterexample.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

/// Primes up to and including `bound`.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    primes
}

/// Shared table of the 1229 primes below 10^4.
pub fn small_primes() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| primes_up_to(9999))
}

pub fn is_prime_u64(n: u64) -> bool {
    is_probable_prime(&BigInt::from(n))
}

pub fn is_probable_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let bp = BigInt::from(p);
        if *n == bp {
            return true;
        }
        if (n % bp).is_zero() {
            return false;
        }
    }
    strong_probable_prime_base2(n) && strong_lucas_selfridge(n)
}

fn strong_probable_prime_base2(n: &BigInt) -> bool {
    let n_m1 = n - 1u32;
    let s = n_m1.trailing_zeros().unwrap();
    let d = &n_m1 >> s;
    let mut x = BigInt::from(2).modpow(&d, n);
    if x.is_one() || x == n_m1 {
        return true;
    }
    for _ in 1..s {
        x = x.modpow(&BigInt::from(2), n);
        if x == n_m1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol (a/n) for odd positive n.
fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    debug_assert!(n.is_positive() && n.is_odd());
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1i32;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap();
        a >>= tz;
        let n_mod8 = (&n % 8u32).to_u32().unwrap();
        if tz % 2 == 1 && (n_mod8 == 3 || n_mod8 == 5) {
            t = -t;
        }
        if (&a % 4u32).to_u32().unwrap() == 3 && n_mod8 % 4 == 3 {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

fn is_perfect_square(n: &BigInt) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

/// Halve x mod odd n.
fn half_mod(x: &BigInt, n: &BigInt) -> BigInt {
    let x = x.mod_floor(n);
    if x.is_even() {
        x >> 1
    } else {
        (x + n) >> 1
    }
}

fn strong_lucas_selfridge(n: &BigInt) -> bool {
    // Selfridge's method A: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, n) {
            -1 => break,
            0 => {
                // Shares a factor with n; n > |D| was screened, so composite,
                // unless n == |D| itself.
                return *n == d.abs();
            }
            _ => {}
        }
        if d.abs() == BigInt::from(13) && is_perfect_square(n) {
            return false;
        }
        d = if d.is_positive() {
            -(&d + 2u32)
        } else {
            -(&d - 2u32)
        };
    }
    // P = 1, Q = (1 - D)/4.
    let q: BigInt = (BigInt::one() - &d) / 4;
    let n_p1 = n + 1u32;
    let s = n_p1.trailing_zeros().unwrap();
    let dd = &n_p1 >> s;

    // Compute U_dd, V_dd, Q^dd by a left-to-right binary ladder.
    let mut u = BigInt::one();
    let mut v = BigInt::one(); // V_1 = P = 1
    let mut qk = q.mod_floor(n); // Q^1
    let bits = dd.bits();
    for i in (0..bits - 1).rev() {
        // double: (U, V, q) -> (U V, V^2 - 2 Q^k, Q^2k)
        u = (&u * &v).mod_floor(n);
        v = (&v * &v - (&qk + &qk)).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if dd.bit(i) {
            // add one: U' = (P U + V)/2, V' = (D U + P V)/2
            let nu = half_mod(&(&u + &v), n);
            let nv = half_mod(&(&d * &u + &v), n);
            u = nu;
            v = nv;
            qk = (&qk * &q).mod_floor(n);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - (&qk + &qk)).mod_floor(n);
        if v.is_zero() {
            return true;
        }
        qk = (&qk * &qk).mod_floor(n);
    }
    false
}
