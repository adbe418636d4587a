//! Two-dimensional covering congruences for power differences a^m - b^n:
//! canonical congruence triples, covering systems, prime realization and CRT
//! pair construction, fixed-divisor obstruction search, the density constant
//! kappa with its predictions, and prime censuses of |a^m - b^n|.

pub mod arith;
pub mod census;
pub mod covering;
pub mod error;
pub mod factor;
pub mod heuristic;
pub mod obstruction;
pub mod orders;
pub mod primality;
pub mod triple;

pub use census::{
    bucket_counts, census_explicit, p_100, pi_100, pi_ab, CensusBounds, CensusReport, Hit,
};
pub use covering::CoveringSystem;
pub use error::{Error, Result};
pub use heuristic::{
    expected_pair_count, kappa, predictions, prime_power_sequence, q_of_k, r_of_k, KappaEstimate,
    PredictionReport,
};
pub use obstruction::{
    classify, find_mixed_obstruction, find_obstruction, verify_obstruction, Obstruction,
    ObstructionKind, PairClassification, SearchConfig, VerifyReport,
};
pub use orders::{
    construct_pair, element_of_order, find_primes_for_triple, is_perfect_power, mult_order,
    realize_triple, triple_for_prime, PairConstruction, PrimeLocalData, RealizedTriple,
};
pub use primality::is_probable_prime;
pub use triple::{equivalent, reduce, ReducedTriple, Triple};
