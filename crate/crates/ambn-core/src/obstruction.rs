//! Fixed-divisor obstructions: finite sets of primes Q = p_1 ... p_k such
//! that gcd(a^m - b^n, Q) > 1 for every m, n >= 1. By the prime/triple
//! correspondence this happens exactly when the reduced triples of the p_i
//! cover Z^2, so the search is an exact set-cover over residue cells. Also
//! classifies pairs by the gcd and perfect-power side conditions that make
//! an obstruction impossible or trivially present.

use crate::arith::{gcd, lcm, BitGrid};
use crate::covering::fill_grid;
use crate::error::{Error, Result};
use crate::orders::{is_perfect_power, mult_order, triple_for_prime, PrimeLocalData};
use crate::primality::primes_up_to;
use crate::triple::ReducedTriple;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};

/// Side conditions of a pair: shared factors, perfect-power structure, and
/// the three "edge" gcds gcd(a-1,b+1), gcd(a+1,b-1), gcd(a+1,b+1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairClassification {
    pub a: u64,
    pub b: u64,
    pub gcd_ab: u64,
    pub gcd_a1b1: u64,
    /// (root, exponent) with maximal exponent; exponent 1 means not a power.
    pub pp_a: (u64, u32),
    pub pp_b: (u64, u32),
    pub edge_gcds: (u64, u64, u64),
    /// gcd(a,b) = gcd(a-1,b-1) = 1 and a, b not both p-th powers for a
    /// common prime p.
    pub in_n: bool,
    /// in_n, neither a perfect power, and at least one edge gcd equals 1.
    pub in_nplus: bool,
}

/// How the obstruction divides every a^m - b^n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ObstructionKind {
    /// The prime triples cover the (m, n) plane.
    Covering,
    /// gcd(a,b) > 1 divides every a^m - b^n outright.
    CommonFactor,
    /// A prime dividing gcd(a-1, b-1): both powers are always 1 mod p.
    Trivial,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Obstruction {
    pub a: u64,
    pub b: u64,
    pub kind: ObstructionKind,
    pub primes: Vec<PrimeLocalData>,
    pub q: BigInt,
    /// Set when the covering is only over cells with gcd(m,l) = gcd(n,k) = 1.
    pub restricted: Option<(u64, u64)>,
    /// No proper subset of the primes is an obstruction within the same bounds.
    pub minimal: bool,
}

/// Bounds for the obstruction search. All are hard limits: a "none" result
/// means no obstruction exists within them, not that none exists at all.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Candidate primes are taken below this bound.
    pub prime_bound: u64,
    /// Triples with modulus above this are discarded from the pool.
    pub modulus_bound: u64,
    /// Maximum number of primes in the obstruction.
    pub max_primes: usize,
    /// Combined period (lcm of chosen moduli) above this prunes the branch.
    pub period_bound: u64,
    /// Hard cap on search tree nodes; exceeding it is an error, not a "none".
    pub node_budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            prime_bound: 10_000,
            modulus_bound: 24,
            max_primes: 8,
            period_bound: 5040,
            node_budget: 5_000_000,
        }
    }
}

/// Per-cell certificate entry: p divides a^m - b^n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDivisor {
    pub m: u64,
    pub n: u64,
    pub p: u64,
}

/// Outcome of an independent residue sweep over one full period.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub a: u64,
    pub b: u64,
    pub q: BigInt,
    /// lcm over the primes of lcm(ord_p(a), ord_p(b)); the sweep covers
    /// [1, period]^2, which decides all of Z^2 by periodicity.
    pub period: u64,
    pub ok: bool,
    pub witness: Option<(u64, u64)>,
    pub certificate: Vec<CellDivisor>,
}

pub fn classify(a: u64, b: u64) -> Result<PairClassification> {
    if a < 2 {
        return Err(Error::BaseTooSmall { x: a });
    }
    if b <= a {
        return Err(Error::BadPair {
            a,
            b,
            reason: "need b > a",
        });
    }
    let gcd_ab = gcd(a, b);
    let gcd_a1b1 = gcd(a - 1, b - 1);
    let pp_a = is_perfect_power(a)?;
    let pp_b = is_perfect_power(b)?;
    let edge_gcds = (gcd(a - 1, b + 1), gcd(a + 1, b - 1), gcd(a + 1, b + 1));
    let in_n = gcd_ab == 1 && gcd_a1b1 == 1 && gcd(pp_a.1 as u64, pp_b.1 as u64) == 1;
    let in_nplus = in_n
        && pp_a.1 == 1
        && pp_b.1 == 1
        && (edge_gcds.0 == 1 || edge_gcds.1 == 1 || edge_gcds.2 == 1);
    Ok(PairClassification {
        a,
        b,
        gcd_ab,
        gcd_a1b1,
        pp_a,
        pp_b,
        edge_gcds,
        in_n,
        in_nplus,
    })
}

/// Search for a minimal covering obstruction over all cells m, n >= 1.
/// Pairs with gcd(a,b) > 1 or gcd(a-1,b-1) > 1 short-circuit to the
/// corresponding degenerate obstruction before any search.
pub fn find_obstruction(a: u64, b: u64, cfg: &SearchConfig) -> Result<Option<Obstruction>> {
    find_with_restriction(a, b, 1, 1, None, cfg)
}

/// Same search restricted to cells with gcd(m, l) = gcd(n, k) = 1, where
/// a = A^k and b = B^l with maximal exponents. For pairs of proper powers
/// the excluded rows and columns are exactly those where a^m or b^n is
/// itself a power with exponent sharing a factor, so a covering of the
/// remaining cells still blocks every candidate prime value.
pub fn find_mixed_obstruction(a: u64, b: u64, cfg: &SearchConfig) -> Result<Option<Obstruction>> {
    let (_, k) = is_perfect_power(a)?;
    let (_, l) = is_perfect_power(b)?;
    let restricted = Some((k as u64, l as u64));
    find_with_restriction(a, b, k as u64, l as u64, restricted, cfg)
}

fn find_with_restriction(
    a: u64,
    b: u64,
    k: u64,
    l: u64,
    restricted: Option<(u64, u64)>,
    cfg: &SearchConfig,
) -> Result<Option<Obstruction>> {
    if a < 2 || b < 2 {
        return Err(Error::BaseTooSmall { x: a.min(b) });
    }
    let g = gcd(a, b);
    if g > 1 {
        return Ok(Some(Obstruction {
            a,
            b,
            kind: ObstructionKind::CommonFactor,
            primes: Vec::new(),
            q: BigInt::from(g),
            restricted: None,
            minimal: true,
        }));
    }
    let d = gcd(a - 1, b - 1);
    if d > 1 {
        let p = (2..)
            .find(|&p| d.is_multiple_of(p))
            .expect("d > 1 has a prime factor");
        let data = triple_for_prime(p, a, b)?;
        return Ok(Some(Obstruction {
            a,
            b,
            kind: ObstructionKind::Trivial,
            q: BigInt::from(p),
            primes: vec![data],
            restricted: None,
            minimal: true,
        }));
    }
    let Some(primes) = search_covering(a, b, k, l, cfg)? else {
        return Ok(None);
    };
    let q: BigInt = primes.iter().map(|d| BigInt::from(d.p)).product();
    let ps: Vec<u64> = primes.iter().map(|d| d.p).collect();
    // Cross-check against the residue sweep, which shares no covering logic.
    let report = verify_restricted(a, b, &ps, k, l)?;
    assert!(
        report.ok,
        "covering search and residue sweep disagree for ({a}, {b})"
    );
    Ok(Some(Obstruction {
        a,
        b,
        kind: ObstructionKind::Covering,
        primes,
        q,
        restricted,
        minimal: true,
    }))
}

/// Independent check that gcd(a^m - b^n, q) > 1 for all m, n >= 1, where q
/// is the product of `primes`. Works by direct residue arithmetic mod q over
/// one full period; the covering machinery is deliberately not used.
pub fn verify_obstruction(a: u64, b: u64, primes: &[u64]) -> Result<VerifyReport> {
    verify_restricted(a, b, primes, 1, 1)
}

/// As `verify_obstruction`, but only cells with gcd(m, l) = gcd(n, k) = 1
/// are required to share a factor with q.
pub fn verify_restricted(a: u64, b: u64, primes: &[u64], k: u64, l: u64) -> Result<VerifyReport> {
    if a < 2 || b < 2 {
        return Err(Error::BaseTooSmall { x: a.min(b) });
    }
    let mut seen = HashSet::new();
    for &p in primes {
        if !seen.insert(p) {
            return Err(Error::DuplicatePrime { p });
        }
        if p < 2 {
            return Err(Error::BadModulus { q: p });
        }
        if a.is_multiple_of(p) || b.is_multiple_of(p) {
            return Err(Error::PrimeDividesBase { p, a, b });
        }
    }
    let mut period = 1u64;
    for &p in primes {
        period = lcm(period, lcm(mult_order(a, p)?, mult_order(b, p)?));
    }
    period = lcm(period, lcm(k.max(1), l.max(1)));
    let q: BigInt = primes.iter().map(|&p| BigInt::from(p)).product();
    let big_a = BigInt::from(a);
    let big_b = BigInt::from(b);
    let mut b_pows = Vec::with_capacity(period as usize);
    let mut acc = BigInt::one();
    for _ in 0..period {
        acc = acc * &big_b % &q;
        b_pows.push(acc.clone());
    }
    let mut certificate = Vec::new();
    let mut am = BigInt::one();
    for m in 1..=period {
        am = am * &big_a % &q;
        if gcd(m, l) != 1 {
            continue;
        }
        for n in 1..=period {
            if gcd(n, k) != 1 {
                continue;
            }
            let diff = (&am - &b_pows[n as usize - 1]).mod_floor(&q);
            let g = diff.gcd(&q);
            if g.is_one() {
                return Ok(VerifyReport {
                    a,
                    b,
                    q,
                    period,
                    ok: false,
                    witness: Some((m, n)),
                    certificate: Vec::new(),
                });
            }
            let p = primes
                .iter()
                .copied()
                .filter(|&p| (&g % p).is_zero())
                .min()
                .expect("g > 1 divides the squarefree product of the primes");
            certificate.push(CellDivisor { m, n, p });
        }
    }
    Ok(VerifyReport {
        a,
        b,
        q,
        period,
        ok: true,
        witness: None,
        certificate,
    })
}

/// All distinct reduced triples realized by primes p < prime_bound with
/// p coprime to ab and modulus <= modulus_bound, keeping the smallest prime
/// for each triple. Sorted by prime, so index order is prime order.
fn candidate_pool(a: u64, b: u64, cfg: &SearchConfig) -> Result<Vec<PrimeLocalData>> {
    let mut pool = Vec::new();
    let mut seen = HashSet::new();
    for p in primes_up_to(cfg.prime_bound) {
        if a.is_multiple_of(p) || b.is_multiple_of(p) {
            continue;
        }
        // Cheap modulus filter before the v-scan in triple_for_prime.
        if lcm(mult_order(a, p)?, mult_order(b, p)?) > cfg.modulus_bound {
            continue;
        }
        let data = triple_for_prime(p, a, b)?;
        if seen.insert(data.triple) {
            pool.push(data);
        }
    }
    Ok(pool)
}

/// Iterative deepening on obstruction size: the first size with any cover is
/// the minimum, and the lexicographically smallest prime set at that size is
/// returned (pool index order is prime order, so BTreeSet order matches).
fn search_covering(
    a: u64,
    b: u64,
    k: u64,
    l: u64,
    cfg: &SearchConfig,
) -> Result<Option<Vec<PrimeLocalData>>> {
    let pool = candidate_pool(a, b, cfg)?;
    let mut nodes = 0u64;
    for size in 1..=cfg.max_primes {
        let mut dfs = Dfs {
            pool: &pool,
            k,
            l,
            cfg,
            nodes,
            size_limit: size,
            found: BTreeSet::new(),
        };
        dfs.run(&mut Vec::new())?;
        if let Some(best) = dfs.found.first() {
            return Ok(Some(best.iter().map(|&i| pool[i].clone()).collect()));
        }
        nodes = dfs.nodes;
    }
    Ok(None)
}

struct Dfs<'s> {
    pool: &'s [PrimeLocalData],
    k: u64,
    l: u64,
    cfg: &'s SearchConfig,
    nodes: u64,
    size_limit: usize,
    /// Complete covers at the current size limit, as sorted pool indices.
    found: BTreeSet<Vec<usize>>,
}

impl Dfs<'_> {
    /// Branch on a concrete uncovered cell (m, n) with m, n >= 1. Its exact
    /// containers in the pool are the triples with m v = n u (mod r), i.e.
    /// the primes dividing a^m - b^n, so branching factors stay small. Any
    /// full cover extending `chosen` must use one of them, which makes the
    /// search exhaustive; a cell with no containers kills the branch.
    fn run(&mut self, chosen: &mut Vec<usize>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cfg.node_budget {
            return Err(Error::BudgetExhausted { nodes: self.nodes });
        }
        let mut period = lcm(2, lcm(self.k, self.l));
        for &i in chosen.iter() {
            period = lcm(period, self.pool[i].triple.r());
            if period > self.cfg.period_bound {
                return Ok(());
            }
        }
        // Every chosen modulus divides the period, so the grid over one
        // period decides coverage of all of Z^2. Representatives are taken
        // in [1, period] to match the m, n >= 1 domain: cell (m, n) below
        // stands for itself, not for its class.
        let triples: Vec<ReducedTriple> = chosen.iter().map(|&i| self.pool[i].triple).collect();
        let grid: BitGrid = fill_grid(&triples, period);
        let mut best: Option<Vec<usize>> = None;
        for m in 1..=period {
            if gcd(m, self.l) != 1 {
                continue;
            }
            for n in 1..=period {
                if gcd(n, self.k) != 1 || grid.get((m % period) as usize, (n % period) as usize) {
                    continue;
                }
                let cands: Vec<usize> = (0..self.pool.len())
                    .filter(|i| !chosen.contains(i))
                    .filter(|&i| self.pool[i].triple.member(m as i64, n as i64))
                    .collect();
                if cands.is_empty() {
                    // No pool triple contains this cell: the branch is dead.
                    return Ok(());
                }
                if best.as_ref().is_none_or(|b| cands.len() < b.len()) {
                    best = Some(cands);
                }
            }
        }
        let Some(cands) = best else {
            let mut sol = chosen.clone();
            sol.sort_unstable();
            self.found.insert(sol);
            return Ok(());
        };
        if chosen.len() >= self.size_limit {
            return Ok(());
        }
        for i in cands {
            chosen.push(i);
            self.run(chosen)?;
            chosen.pop();
        }
        Ok(())
    }
}
