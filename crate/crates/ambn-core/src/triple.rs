//! Congruence triples (u, v, r) and their solution sets
//! S(u, v, r) = {(m, n) : m v = n u (mod r)}, with a canonical reduced form.

use crate::arith::{gcd, inv_mod, lcm};
use crate::error::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Arbitrary congruence triple; u and v may be any integers, r >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triple {
    pub u: i64,
    pub v: i64,
    pub r: u64,
}

impl Triple {
    pub fn new(u: i64, v: i64, r: u64) -> Result<Self> {
        if r == 0 {
            return Err(Error::ParseTriple {
                input: format!("{u},{v},0"),
                reason: "modulus must be positive".into(),
            });
        }
        Ok(Triple { u, v, r })
    }

    /// Membership of (m, n) in S(u, v, r): m v = n u (mod r).
    pub fn member(&self, m: i64, n: i64) -> bool {
        let r = self.r as i128;
        (m as i128 * self.v as i128 - n as i128 * self.u as i128).rem_euclid(r) == 0
    }
}

/// Canonical representative of an equivalence class of triples:
/// u divides r, gcd(u, v) = 1, v >= 1. Every class has exactly one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedTriple {
    u: u64,
    v: u64,
    r: u64,
}

impl ReducedTriple {
    /// Accepts only values already in canonical form.
    pub fn new(u: u64, v: u64, r: u64) -> Result<Self> {
        let reason = if r == 0 || u == 0 || v == 0 {
            Some("components must be positive")
        } else if !r.is_multiple_of(u) {
            Some("u must divide r")
        } else if gcd(u, v) != 1 {
            Some("u and v must be coprime")
        } else if reduce(&Triple {
            u: u as i64,
            v: v as i64,
            r,
        }) != (ReducedTriple { u, v, r })
        {
            Some("not the canonical representative of its class")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Error::ParseTriple {
                input: format!("{u},{v},{r}"),
                reason: reason.into(),
            }),
            None => Ok(ReducedTriple { u, v, r }),
        }
    }

    pub fn u(&self) -> u64 {
        self.u
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn as_triple(&self) -> Triple {
        Triple {
            u: self.u as i64,
            v: self.v as i64,
            r: self.r,
        }
    }

    pub fn member(&self, m: i64, n: i64) -> bool {
        self.as_triple().member(m, n)
    }
}

/// Canonical reduction. Total: the everything-set inputs (u = v = 0 mod r)
/// map to (1, 1, 1), which has the same solution set.
pub fn reduce(t: &Triple) -> ReducedTriple {
    let r0 = t.r;
    let mut u = t.u.rem_euclid(r0 as i64) as u64;
    let mut v = t.v.rem_euclid(r0 as i64) as u64;
    if u == 0 && v == 0 {
        return ReducedTriple { u: 1, v: 1, r: 1 };
    }
    let g = gcd(gcd(u, v), r0);
    u /= g;
    v /= g;
    let r = r0 / g;
    // Divide out the unit part of u: with cu = gcd(u, r), the congruence
    // m v = n u (mod r) pins (m mod rr, ...) through h = u/cu, a unit mod rr.
    let cu = gcd(u, r);
    let rr = r / cu;
    let mut vv = if rr == 1 {
        1
    } else {
        let h = (u / cu) % rr;
        let k = inv_mod(h, rr).expect("u/gcd(u,r) is a unit modulo r/gcd(u,r)");
        let w = (v % rr) * k % rr;
        if w == 0 {
            rr
        } else {
            w
        }
    };
    // Lift v within its class mod rr until it is coprime to u; keeps the
    // solution set and restores gcd(u, v) = 1 even when no representative
    // with v <= r/u exists.
    while gcd(cu, vv) != 1 {
        vv += rr;
    }
    ReducedTriple { u: cu, v: vv, r }
}

pub fn equivalent(t1: &Triple, t2: &Triple) -> bool {
    reduce(t1) == reduce(t2)
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.u, self.v, self.r)
    }
}

impl fmt::Display for ReducedTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.u, self.v, self.r)
    }
}

impl FromStr for Triple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::ParseTriple {
                input: s.into(),
                reason: "expected three comma-separated integers".into(),
            });
        }
        let parse = |p: &str| -> Result<i64> {
            p.parse().map_err(|_| Error::ParseTriple {
                input: s.into(),
                reason: format!("{p:?} is not an integer"),
            })
        };
        let (u, v) = (parse(parts[0])?, parse(parts[1])?);
        let r = parse(parts[2])?;
        if r < 1 {
            return Err(Error::ParseTriple {
                input: s.into(),
                reason: "modulus must be positive".into(),
            });
        }
        Triple::new(u, v, r as u64)
    }
}

impl Serialize for ReducedTriple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.u, self.v, self.r).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ReducedTriple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (u, v, r) = <(u64, u64, u64)>::deserialize(d)?;
        ReducedTriple::new(u, v, r).map_err(D::Error::custom)
    }
}

impl Serialize for Triple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.u, self.v, self.r).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Triple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (u, v, r) = <(i64, i64, u64)>::deserialize(d)?;
        Triple::new(u, v, r).map_err(D::Error::custom)
    }
}

/// lcm of the moduli of a list of triples.
pub fn lcm_moduli<'a, I: IntoIterator<Item = &'a ReducedTriple>>(triples: I) -> u64 {
    triples.into_iter().fold(1, |acc, t| lcm(acc, t.r))
}
