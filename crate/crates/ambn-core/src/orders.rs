//! Multiplicative orders and the two directions of the prime/triple
//! correspondence: extract the congruence triple a prime imposes on pairs
//! (m, n) with a^m = b^n (mod p), and conversely realize a given triple by
//! residues modulo a chosen prime, assembling whole pairs (a, b) by CRT.

use crate::arith::{crt, gcd, lcm, mul_mod, pow_mod};
use crate::covering::CoveringSystem;
use crate::error::{Error, Result};
use crate::factor::factor_u64;
use crate::primality::primes_up_to;
use crate::triple::ReducedTriple;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// What a single prime knows about pairs (m, n) with a^m = b^n (mod p).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeLocalData {
    pub p: u64,
    pub ord_a: u64,
    pub ord_b: u64,
    pub triple: ReducedTriple,
}

/// A triple attached to a concrete prime via a generator of order triple.r.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizedTriple {
    pub triple: ReducedTriple,
    pub p: u64,
    pub g: u64,
    pub a_res: u64,
    pub b_res: u64,
}

/// CRT assembly of a pair from one realized triple per prime.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairConstruction {
    pub a: BigInt,
    pub b: BigInt,
    pub q: BigInt,
    pub primes: Vec<RealizedTriple>,
}

/// Carmichael exponent of q.
fn carmichael(q: u64) -> u64 {
    let mut exp = 1u64;
    for (p, e) in factor_u64(q) {
        let lam = if p == 2 {
            match e {
                1 => 1,
                2 => 2,
                _ => 1 << (e - 2),
            }
        } else {
            (p - 1) * p.pow(e - 1)
        };
        exp = lcm(exp, lam);
    }
    exp
}

/// Least d >= 1 with x^d = 1 (mod q).
pub fn mult_order(x: u64, q: u64) -> Result<u64> {
    if q < 2 {
        return Err(Error::BadModulus { q });
    }
    let x = x % q;
    if gcd(x, q) != 1 {
        return Err(Error::NotCoprime { x, q });
    }
    let mut ord = carmichael(q);
    for (p, _) in factor_u64(ord) {
        while ord.is_multiple_of(p) && pow_mod(x, ord / p, q) == 1 {
            ord /= p;
        }
    }
    Ok(ord)
}

/// The reduced triple of (p, a, b): with r = ord_p(a), s = ord_p(b), the set
/// {(m, n) : a^m = b^n (mod p)} is S(u, v, lcm(r, s)) for u = r/gcd(r, s) and
/// a suitable v. The scan over v in [1, s] with b^v = a^u alone is not enough:
/// when it lands on a v sharing a factor with u the triple describes a
/// strictly different set, and v must be lifted by s until gcd(u, v) = 1
/// (first such prime for (a, b) = (2, 3) is p = 11).
pub fn triple_for_prime(p: u64, a: u64, b: u64) -> Result<PrimeLocalData> {
    if a.is_multiple_of(p) || b.is_multiple_of(p) {
        return Err(Error::PrimeDividesBase { p, a, b });
    }
    let r = mult_order(a, p)?;
    let s = mult_order(b, p)?;
    let l = lcm(r, s);
    let u = r / gcd(r, s);
    let target = pow_mod(a, u, p);
    let bm = b % p;
    let mut v = 0u64;
    let mut bv = 1u64;
    for cand in 1..=s {
        bv = mul_mod(bv, bm, p);
        if bv == target {
            v = cand;
            break;
        }
    }
    assert!(v >= 1, "a^u lies in <b>: its order divides s");
    while gcd(u, v) != 1 {
        v += s;
    }
    let triple = ReducedTriple::new(u, v, l)?;
    Ok(PrimeLocalData {
        p,
        ord_a: r,
        ord_b: s,
        triple,
    })
}

/// Least positive residue of order l mod p. Requires l | p - 1.
pub fn element_of_order(p: u64, l: u64) -> Result<u64> {
    let pm1 = p - 1;
    if l == 0 || !pm1.is_multiple_of(l) {
        return Err(Error::NoSuchOrder { l, pm1 });
    }
    let lf = factor_u64(l);
    'scan: for g in 1..p {
        if pow_mod(g, l, p) != 1 {
            continue;
        }
        for (q, _) in &lf {
            if pow_mod(g, l / q, p) == 1 {
                continue 'scan;
            }
        }
        return Ok(g);
    }
    unreachable!("the multiplicative group mod p has elements of every order dividing p - 1")
}

/// Attach the triple to p via generator g of order t.r: residues a_res, b_res
/// whose local data reproduces t exactly. The exponents come from the orders
/// ord(a_res) = l/gcd(v, l/u) and ord(b_res) = l/u, with a correction unit j.
pub fn realize_triple(t: &ReducedTriple, p: u64, g: u64) -> Result<RealizedTriple> {
    let l = t.r();
    if !(p - 1).is_multiple_of(l) {
        return Err(Error::PrimeNotOneMod { p, l });
    }
    if mult_order(g, p)? != l {
        return Err(Error::WrongOrder { g, p, expected: l });
    }
    let (u, v) = (t.u(), t.v());
    let s = l / u; // order of b_res
    let d = gcd(v, s);
    let rr = l / d; // order of a_res
    let g1 = gcd(rr, s);
    let vd = (v / d) % g1;
    let period = lcm(g1, s);
    let mut j = 0u64;
    for cand in 1..=period {
        if mul_mod(cand % g1, vd, g1) == 1 % g1 && gcd(cand, s) == 1 {
            j = cand;
            break;
        }
    }
    assert!(
        j >= 1,
        "a correcting unit j always exists within one period"
    );
    let a_res = pow_mod(g, l / rr, p);
    let b_res = pow_mod(g, (j % s) * (l / s), p);
    Ok(RealizedTriple {
        triple: *t,
        p,
        g,
        a_res,
        b_res,
    })
}

/// First `count` primes p <= bound with p = 1 (mod t.r), ascending.
pub fn find_primes_for_triple(t: &ReducedTriple, count: usize, bound: u64) -> Result<Vec<u64>> {
    let r = t.r();
    let found: Vec<u64> = primes_up_to(bound)
        .into_iter()
        .filter(|p| p % r == 1 % r)
        .take(count)
        .collect();
    if found.len() < count {
        return Err(Error::InsufficientPrimes {
            found,
            requested: count,
            bound,
            modulus: r,
        });
    }
    Ok(found)
}

/// Realize each triple at its prime and CRT the residues into a single pair
/// (a, b) mod Q = product of the primes. Least positive representatives.
pub fn construct_pair(
    cs: &CoveringSystem,
    primes: &[u64],
    generators: Option<&[u64]>,
) -> Result<PairConstruction> {
    let ts = cs.triples();
    if primes.len() != ts.len() {
        return Err(Error::PrimeCountMismatch {
            expected: ts.len(),
            got: primes.len(),
        });
    }
    for (i, p) in primes.iter().enumerate() {
        if primes[..i].contains(p) {
            return Err(Error::DuplicatePrime { p: *p });
        }
    }
    if let Some(gs) = generators {
        if gs.len() != ts.len() {
            return Err(Error::GeneratorCountMismatch {
                expected: ts.len(),
                got: gs.len(),
            });
        }
    }
    let mut realized = Vec::with_capacity(ts.len());
    for (i, (t, &p)) in ts.iter().zip(primes).enumerate() {
        if (p - 1) % t.r() != 0 {
            return Err(Error::PrimeNotOneMod { p, l: t.r() });
        }
        let g = match generators {
            Some(gs) => gs[i],
            None => element_of_order(p, t.r())?,
        };
        realized.push(realize_triple(t, p, g)?);
    }
    let to_congruences = |pick: fn(&RealizedTriple) -> u64| -> Vec<(BigInt, BigInt)> {
        realized
            .iter()
            .map(|rt| (BigInt::from(pick(rt)), BigInt::from(rt.p)))
            .collect()
    };
    let (a, q) = crt(&to_congruences(|rt| rt.a_res)).expect("distinct primes are coprime");
    let (b, _) = crt(&to_congruences(|rt| rt.b_res)).expect("distinct primes are coprime");
    Ok(PairConstruction {
        a,
        b,
        q,
        primes: realized,
    })
}

/// Maximal-exponent power form of x >= 2: x = base^exp with exp as large
/// as possible (exp = 1 when x is not a perfect power).
pub fn is_perfect_power(x: u64) -> Result<(u64, u32)> {
    if x < 2 {
        return Err(Error::BaseTooSmall { x });
    }
    let factors = factor_u64(x);
    let k = factors
        .iter()
        .fold(0u32, |acc, (_, e)| gcd(acc as u64, *e as u64) as u32);
    let base: u64 = factors.iter().map(|(p, e)| p.pow(e / k)).product();
    Ok((base, k))
}
