//! Finite systems of reduced triples and the covering predicates: does the
//! union of their solution sets exhaust the plane (or its gcd-restricted
//! subset), and is the system minimal.

use crate::arith::{gcd, inv_mod, lcm, BitGrid};
use crate::error::{Error, Result};
use crate::triple::{lcm_moduli, reduce, ReducedTriple, Triple};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringSystem {
    triples: Vec<ReducedTriple>,
}

impl CoveringSystem {
    pub fn new(triples: Vec<ReducedTriple>) -> Result<Self> {
        if triples.is_empty() {
            return Err(Error::EmptySystem);
        }
        Ok(CoveringSystem { triples })
    }

    /// Build from arbitrary triples, reducing each.
    pub fn from_triples(triples: &[Triple]) -> Result<Self> {
        Self::new(triples.iter().map(reduce).collect())
    }

    pub fn triples(&self) -> &[ReducedTriple] {
        &self.triples
    }

    pub fn lcm_modulus(&self) -> u64 {
        lcm_moduli(&self.triples)
    }

    pub fn is_covering(&self) -> bool {
        covers(&self.triples)
    }

    /// Up to `cap` uncovered cells of [0, L)^2 in row-major order.
    pub fn uncovered_cells(&self, cap: usize) -> Vec<(u64, u64)> {
        let l = self.lcm_modulus();
        let grid = fill_grid(&self.triples, l);
        let mut out = Vec::new();
        'scan: for m in 0..l {
            for n in 0..l {
                if !grid.get(m as usize, n as usize) {
                    out.push((m, n));
                    if out.len() >= cap {
                        break 'scan;
                    }
                }
            }
        }
        out
    }

    /// Minimality: no single triple can be dropped. Requires a covering system.
    pub fn is_minimal(&self) -> Result<bool> {
        if let Some(witness) = first_uncovered(&self.triples) {
            return Err(Error::NotCovering { witness });
        }
        for i in 0..self.triples.len() {
            let rest: Vec<ReducedTriple> = self
                .triples
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, t)| *t)
                .collect();
            if covers(&rest) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Covering over the restricted set {(m, n) : gcd(m, l) = gcd(n, k) = 1}.
    pub fn is_covering_restricted(&self, k: u64, l: u64) -> bool {
        let period = lcm(lcm(self.lcm_modulus(), k.max(1)), l.max(1));
        let grid = fill_grid(&self.triples, period);
        for m in 1..=period {
            if gcd(m, l) != 1 {
                continue;
            }
            for n in 1..=period {
                if gcd(n, k) != 1 {
                    continue;
                }
                if !grid.get((m % period) as usize, (n % period) as usize) {
                    return false;
                }
            }
        }
        true
    }
}

/// Mark every covered cell of [0, period)^2. For each triple and each row m,
/// the solutions n of n u = m v (mod r) form an arithmetic progression with
/// step r/gcd(u, r), walked directly.
pub(crate) fn fill_grid(triples: &[ReducedTriple], period: u64) -> BitGrid {
    let mut grid = BitGrid::new(period as usize, period as usize);
    for t in triples {
        let (u, v, r) = (t.u(), t.v(), t.r());
        debug_assert_eq!(period % r, 0);
        let g = gcd(u, r);
        let step = r / g;
        let u1 = u / g;
        let k = inv_mod(u1 % step, step).unwrap_or(0);
        for m in 0..period {
            let rhs = (m % r) * (v % r) % r;
            if rhs % g != 0 {
                continue;
            }
            // n = (rhs/g) * u1^{-1} mod step
            let n0 = if step == 1 {
                0
            } else {
                rhs / g % step * k % step
            };
            let mut n = n0;
            while n < period {
                grid.set(m as usize, n as usize);
                n += step;
            }
        }
    }
    grid
}

fn first_uncovered(triples: &[ReducedTriple]) -> Option<(u64, u64)> {
    let l = lcm_moduli(triples);
    let grid = fill_grid(triples, l);
    for m in 0..l {
        for n in 0..l {
            if !grid.get(m as usize, n as usize) {
                return Some((m, n));
            }
        }
    }
    None
}

fn covers(triples: &[ReducedTriple]) -> bool {
    if triples.is_empty() {
        return false;
    }
    first_uncovered(triples).is_none()
}

impl fmt::Display for CoveringSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.triples.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

impl FromStr for CoveringSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let triples: Result<Vec<Triple>> = s
            .split(';')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect();
        Self::from_triples(&triples?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn system(s: &str) -> CoveringSystem {
        s.parse().unwrap()
    }

    #[test]
    fn lcm_modulus_values() {
        assert_eq!(system("1,2,2;2,1,2;1,1,2").lcm_modulus(), 2);
        assert_eq!(system("1,3,3;3,1,3;1,1,3;1,2,3").lcm_modulus(), 3);
        assert_eq!(system("1,2,2;2,1,2;1,1,4;1,3,4").lcm_modulus(), 4);
    }

    #[test]
    fn covering_goldens() {
        assert!(system("1,2,2;2,1,2;1,1,2").is_covering());
        assert!(system("1,3,3;3,1,3;1,1,3;1,2,3").is_covering());
        assert!(!system("1,2,2;2,1,2").is_covering());
        // unreduced input is reduced on parse
        assert!(system("1,0,2;0,1,2;1,1,2").is_covering());
    }

    #[test]
    fn uncovered_witnesses() {
        assert_eq!(system("1,2,2;2,1,2").uncovered_cells(10), vec![(1, 1)]);
        assert_eq!(system("1,1,1").uncovered_cells(10), vec![]);
        assert_eq!(system("1,1,2").uncovered_cells(1), vec![(0, 1)]);
    }

    #[test]
    fn minimality() {
        assert!(system("1,2,2;2,1,2;1,1,2").is_minimal().unwrap());
        assert!(!system("1,1,1;1,1,2").is_minimal().unwrap());
        assert!(system("1,3,3;3,1,3;1,1,3;1,2,3").is_minimal().unwrap());
        match system("1,2,2;2,1,2").is_minimal() {
            Err(Error::NotCovering { witness }) => assert_eq!(witness, (1, 1)),
            other => panic!("expected NotCovering, got {other:?}"),
        }
    }

    #[test]
    fn restricted_covering() {
        let cs = system("1,2,2;1,1,2");
        assert!(cs.is_covering_restricted(1, 6));
        assert!(!cs.is_covering_restricted(1, 1));
        assert!(system("1,2,2;2,1,2;1,1,2").is_covering_restricted(1, 1));
    }

    #[test]
    fn translation_invariance() {
        // covered status is periodic: compare [0,L)^2 against a shifted window
        let cs = system("1,2,2;2,1,2;1,1,2");
        let l = cs.lcm_modulus() as i64;
        for m in 0..l {
            for n in 0..l {
                let covered = cs.triples().iter().any(|t| t.member(m, n));
                let shifted = cs.triples().iter().any(|t| t.member(m + l, n + 3 * l));
                assert_eq!(covered, shifted);
            }
        }
    }

    #[test]
    fn density_lower_bound() {
        // a covering system needs sum 1/r_i >= 1
        for s in ["1,2,2;2,1,2;1,1,2", "1,3,3;3,1,3;1,1,3;1,2,3"] {
            let cs = system(s);
            if cs.is_covering() {
                let density: f64 = cs.triples().iter().map(|t| 1.0 / t.r() as f64).sum();
                assert!(density >= 1.0 - 1e-12);
            }
        }
    }
}
