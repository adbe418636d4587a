//! The local-density constant kappa_{a,b}(k) and the prime-count predictions
//! built on it. With r_k the lcm of the first k prime powers and
//! q_k = gcd(a^{r_k} - 1, b^{r_k} - 1),
//!
//!   kappa = (q_k/phi(q_k)) * #{m,n <= r_k : gcd(a^m - b^n, q_k) = 1
//!                                           and gcd(m,n,r_k) = 1} / r_k^2
//!
//! computed exactly as a rational. Every prime p | q_k has both orders
//! dividing r_k, so the cells it kills form congruence classes that tile the
//! [1, r_k]^2 grid exactly.

use crate::arith::{gcd, lcm, ln_big};
use crate::covering::fill_grid;
use crate::error::{Error, Result};
use crate::factor::{factor_u64, factorize, phi_from_factors, phi_u64, FactorConfig};
use crate::triple::ReducedTriple;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Exact value of kappa_{a,b}(k) with all intermediates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KappaEstimate {
    pub a: u64,
    pub b: u64,
    pub k: usize,
    pub prime_powers: Vec<u64>,
    pub r_k: u64,
    pub q_k: BigInt,
    pub q_k_factors: Vec<(BigInt, u32)>,
    /// Cells of [1, r_k]^2 with gcd(a^m - b^n, q_k) = 1 and gcd(m, n, r_k) = 1.
    pub eligible_count: u64,
    pub kappa: BigRational,
}

impl KappaEstimate {
    /// Decimal rendering to three places, half-up: "0.713".
    pub fn render(&self) -> String {
        render_thousandths(&self.kappa, false)
    }

    /// Table style: values below one drop the leading zero, ".713".
    pub fn render_table(&self) -> String {
        render_thousandths(&self.kappa, true)
    }
}

/// Predicted counts of primes |a^m - b^n|: G1 ignores local structure,
/// G2 = G1 * kappa corrects it, c_ab scales the density of the count
/// function so that c_ab * log X predicts primes with |a^m - b^n| <= X.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PredictionReport {
    pub a: u64,
    pub b: u64,
    pub g1: f64,
    pub kappa_k: KappaEstimate,
    pub g2: f64,
    pub c_ab: f64,
}

/// First k prime powers p^e >= 2, ascending: 2, 3, 4, 5, 7, 8, 9, 11, ...
pub fn prime_power_sequence(k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut n = 2u64;
    while out.len() < k {
        if factor_u64(n).len() == 1 {
            out.push(n);
        }
        n += 1;
    }
    out
}

/// lcm of the first k prime powers.
pub fn r_of_k(k: usize) -> Result<u64> {
    let mut r = 1u64;
    for p in prime_power_sequence(k) {
        let g = gcd(r, p);
        r = r.checked_mul(p / g).ok_or_else(|| Error::Overflow {
            what: format!("r_{k}"),
        })?;
    }
    Ok(r)
}

/// q_k = gcd(a^{r_k} - 1, b^{r_k} - 1).
pub fn q_of_k(a: u64, b: u64, k: usize) -> Result<BigInt> {
    let r_k = r_of_k(k)?;
    if r_k > u32::MAX as u64 {
        return Err(Error::Overflow {
            what: format!("exponent r_{k}"),
        });
    }
    let x: BigInt = BigInt::from(a).pow(r_k as u32) - 1;
    let y: BigInt = BigInt::from(b).pow(r_k as u32) - 1;
    Ok(x.gcd(&y))
}

/// Largest grid this module will allocate: r_k^2 bits (k = 8 is the last
/// index under it; r_9 = 360360 would need a 16 GB bitset).
const MAX_R_K: u64 = 30_000;

pub fn kappa(a: u64, b: u64, k: usize) -> Result<KappaEstimate> {
    kappa_with(a, b, k, &FactorConfig::default())
}

pub fn kappa_with(a: u64, b: u64, k: usize, fcfg: &FactorConfig) -> Result<KappaEstimate> {
    if a < 2 || b < 2 {
        return Err(Error::BaseTooSmall { x: a.min(b) });
    }
    if gcd(a, b) != 1 {
        return Err(Error::BadPair {
            a,
            b,
            reason: "kappa needs gcd(a, b) = 1",
        });
    }
    if k == 0 {
        return Err(Error::BadPair {
            a,
            b,
            reason: "kappa needs k >= 1",
        });
    }
    let prime_powers = prime_power_sequence(k);
    let r_k = r_of_k(k)?;
    if r_k > MAX_R_K {
        return Err(Error::Overflow {
            what: format!("grid side r_{k} = {r_k}"),
        });
    }
    let q_k = q_of_k(a, b, k)?;
    let q_k_factors = factorize(&q_k, fcfg)?;
    let mut triples = Vec::with_capacity(q_k_factors.len());
    for (p, _) in &q_k_factors {
        triples.push(triple_mod_big_prime(p, a, b, r_k)?);
    }
    let grid = fill_grid(&triples, r_k);
    let mut eligible_count = 0u64;
    for m in 0..r_k {
        for n in 0..r_k {
            if !grid.get(m as usize, n as usize) && gcd(gcd(m, n), r_k) == 1 {
                eligible_count += 1;
            }
        }
    }
    let phi_q = phi_from_factors(&q_k_factors);
    let kappa = BigRational::new(
        &q_k * eligible_count,
        phi_q * BigInt::from(r_k) * BigInt::from(r_k),
    );
    Ok(KappaEstimate {
        a,
        b,
        k,
        prime_powers,
        r_k,
        q_k,
        q_k_factors,
        eligible_count,
        kappa,
    })
}

/// The congruence triple of a prime p | q_k, by the same order/discrete-scan
/// construction as `orders::triple_for_prime` but in arbitrary precision,
/// since q_k can have prime factors beyond 64 bits. Both orders divide r_k
/// because p divides a^{r_k} - 1 and b^{r_k} - 1.
fn triple_mod_big_prime(p: &BigInt, a: u64, b: u64, r_k: u64) -> Result<ReducedTriple> {
    let mut divisors: Vec<u64> = vec![];
    let mut ds = vec![1u64];
    for (q, e) in factor_u64(r_k) {
        let mut next = Vec::new();
        for d in &ds {
            let mut pe = 1u64;
            for _ in 0..=e {
                next.push(d * pe);
                pe *= q;
            }
        }
        ds = next;
    }
    divisors.append(&mut ds);
    divisors.sort_unstable();

    let ord = |x: u64| -> u64 {
        let bx = BigInt::from(x);
        *divisors
            .iter()
            .find(|&&d| bx.modpow(&BigInt::from(d), p).is_one())
            .expect("order divides r_k for p | q_k")
    };
    let r = ord(a);
    let s = ord(b);
    let l = lcm(r, s);
    let u = r / gcd(r, s);
    let target = BigInt::from(a).modpow(&BigInt::from(u), p);
    let bb = BigInt::from(b);
    let mut bv = BigInt::one();
    let mut v = 0u64;
    for cand in 1..=s {
        bv = bv * &bb % p;
        if bv == target {
            v = cand;
            break;
        }
    }
    assert!(v >= 1, "a^u lies in <b> mod p");
    while gcd(u, v) != 1 {
        v += s;
    }
    ReducedTriple::new(u, v, l)
}

/// Main term of the count of pairs with |a^m - b^n| <= x.
pub fn expected_pair_count(a: u64, b: u64, x: &BigInt) -> f64 {
    let lx = ln_big(x);
    lx * lx / ((a as f64).ln() * (b as f64).ln())
}

/// G1, G2 and c_ab for a pair, at heuristic depth k.
pub fn predictions(a: u64, b: u64, k: usize) -> Result<PredictionReport> {
    let kappa_k = kappa(a, b, k)?;
    let phi_ab = (phi_u64(a) as f64) * (phi_u64(b) as f64);
    let ab = (a as f64) * (b as f64);
    let la = (a as f64).ln();
    let lb = (b as f64).ln();
    let kap = kappa_k.kappa.to_f64().expect("kappa is a small rational");
    let g1 = 200.0 * ab / (phi_ab * lb);
    let g2 = g1 * kap;
    let c_ab = 2.0 * ab * kap / (phi_ab * la * lb);
    Ok(PredictionReport {
        a,
        b,
        g1,
        kappa_k,
        g2,
        c_ab,
    })
}

/// Nearest integer, half away from zero: the rounding used for table columns.
pub fn round_half_up(x: f64) -> i64 {
    (x + 0.5 * x.signum()).trunc() as i64
}

/// Exact half-up rendering of a rational to three decimals. Table style
/// drops the leading zero of values below one.
pub fn render_thousandths(x: &BigRational, table_style: bool) -> String {
    let scaled = x * BigRational::from_integer(BigInt::from(1000));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let rounded = if x.is_negative() {
        (scaled - half).ceil()
    } else {
        (scaled + half).floor()
    };
    let milli = rounded.to_integer();
    let sign = if milli.is_negative() { "-" } else { "" };
    let milli = milli.abs();
    let (int, frac) = (&milli / 1000u32, &milli % 1000u32);
    if table_style && int.is_zero() && sign.is_empty() {
        format!(".{:03}", frac)
    } else {
        format!("{}{}.{:03}", sign, int, frac)
    }
}
