use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{x} and {q} are not coprime")]
    NotCoprime { x: u64, q: u64 },
    #[error("modulus {q} is out of range (need q >= 2)")]
    BadModulus { q: u64 },
    #[error("{p} divides ab (a = {a}, b = {b}), so it never divides a^m - b^n")]
    PrimeDividesBase { p: u64, a: u64, b: u64 },
    #[error("{l} does not divide p - 1 = {pm1}, so no element of that order exists")]
    NoSuchOrder { l: u64, pm1: u64 },
    #[error("p = {p} is not congruent to 1 mod {l}")]
    PrimeNotOneMod { p: u64, l: u64 },
    #[error("{g} does not have order {expected} mod {p}")]
    WrongOrder { g: u64, p: u64, expected: u64 },
    #[error("only {} of {requested} primes congruent to 1 mod {modulus} lie below {bound}", found.len())]
    InsufficientPrimes {
        found: Vec<u64>,
        requested: usize,
        bound: u64,
        modulus: u64,
    },
    #[error("covering system must contain at least one triple")]
    EmptySystem,
    #[error("system does not cover: cell ({}, {}) is in no triple", witness.0, witness.1)]
    NotCovering { witness: (u64, u64) },
    #[error("expected {expected} primes (one per triple), got {got}")]
    PrimeCountMismatch { expected: usize, got: usize },
    #[error("primes must be distinct: {p} repeats")]
    DuplicatePrime { p: u64 },
    #[error("generator list has {got} entries for {expected} triples")]
    GeneratorCountMismatch { expected: usize, got: usize },
    #[error("cannot fully factor {n}: cofactor {cofactor} resisted the budget")]
    IncompleteFactorization { n: BigInt, cofactor: BigInt },
    #[error("prime factor {p} does not fit in 64 bits; this computation only supports word-sized prime factors")]
    FactorTooLarge { p: BigInt },
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error("invalid triple literal {input:?}: {reason}")]
    ParseTriple { input: String, reason: String },
    #[error("base must be at least 2, got {x}")]
    BaseTooSmall { x: u64 },
    #[error("invalid pair ({a}, {b}): {reason}")]
    BadPair {
        a: u64,
        b: u64,
        reason: &'static str,
    },
    #[error("{what} is too large for this computation")]
    Overflow { what: String },
}

pub type Result<T> = std::result::Result<T, Error>;
