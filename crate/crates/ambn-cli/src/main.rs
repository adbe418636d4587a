//! `ambn`: covering systems, obstructions, densities, and prime censuses
//! for power differences a^m - b^n.

use std::fmt::Display;
use std::process::ExitCode;

use ambn_core::census::{census_explicit, p_100, pi_100, pi_ab, CensusReport};
use ambn_core::factor::FactorConfig;
use ambn_core::heuristic::{kappa_with, predictions, round_half_up};
use ambn_core::obstruction::{
    classify, find_mixed_obstruction, find_obstruction, verify_obstruction, SearchConfig,
};
use ambn_core::orders::{construct_pair, realize_triple, triple_for_prime};
use ambn_core::triple::{reduce, Triple};
use ambn_core::{CoveringSystem, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser)]
#[command(
    name = "ambn",
    version,
    about = "Covering systems and prime censuses for |a^m - b^n|",
    after_help = "Runs are fully determined by their flags; output ordering does not\n\
                  depend on the worker count. TSV is the default format, --json adds\n\
                  full certificates."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Emit a JSON document instead of TSV
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for censuses (default: available parallelism)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for the randomized factoring fallback; echoed in JSON output
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Canonicalize a congruence triple u,v,r
    Reduce {
        /// Triple as "u,v,r"
        triple: Triple,
    },
    /// Test whether (m, n) satisfies m*v = n*u (mod r)
    Member {
        /// Triple as "u,v,r"
        triple: Triple,
        m: i64,
        n: i64,
    },
    /// Check whether a system of triples covers the whole (m, n) plane
    VerifyCover {
        /// Triples separated by ';', e.g. "1,2,2;2,1,2;1,1,4;1,3,4"
        system: CoveringSystem,
    },
    /// The triple of exponent pairs with a^m = b^n (mod p)
    TripleOfPrime { p: u64, a: u64, b: u64 },
    /// Residues of order-r generator powers realizing a triple at p
    Realize {
        /// Triple as "u,v,r"
        triple: Triple,
        /// Prime with p = 1 (mod r)
        p: u64,
        /// Generator of the order-r subgroup mod p
        g: u64,
    },
    /// Build (a, b) mod q from a covering system, one prime per triple
    ConstructPair {
        /// Triples separated by ';'
        system: CoveringSystem,
        /// One prime per triple, e.g. --primes 7,13,19,31
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        /// One generator per prime, e.g. --gens 2,3,7,5 (default: smallest)
        #[arg(long, value_delimiter = ',')]
        gens: Option<Vec<u64>>,
    },
    /// Divisor and perfect-power structure of a pair
    Classify { a: u64, b: u64 },
    /// Search for a fixed divisor q with gcd(a^m - b^n, q) > 1 everywhere
    FindObstruction {
        a: u64,
        b: u64,
        /// Only cover exponents coprime to the maximal power structure of a, b
        #[arg(long)]
        mixed: bool,
        #[command(flatten)]
        bounds: SearchBounds,
    },
    /// Independently verify an obstruction by a full residue sweep
    VerifyObstruction {
        a: u64,
        b: u64,
        /// Distinct primes, e.g. 3,5,7
        #[arg(value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Exact density correction kappa_{a,b}(k)
    Kappa {
        a: u64,
        b: u64,
        /// Number of prime powers in the modulus r_k (k = 7 gives r_k = 2520)
        #[arg(long, default_value_t = 7)]
        k: usize,
    },
    /// Predicted prime counts G1, G2 and the density constant c_{a,b}
    Predict {
        a: u64,
        b: u64,
        /// kappa index used for G2 and c_{a,b}
        #[arg(long, default_value_t = 7)]
        k: usize,
    },
    /// Count primes |a^m - b^n| over an exponent rectangle
    Census {
        a: u64,
        b: u64,
        #[arg(long, value_enum)]
        mode: CensusMode,
        /// Exponent bound for --mode pi: a^m <= a^y, b^n <= a^y
        #[arg(long)]
        y: Option<u64>,
        /// kappa index for the --mode p100 bound
        #[arg(long, default_value_t = 7)]
        kappa_k: usize,
        /// Row bound for --mode explicit
        #[arg(long)]
        m_max: Option<u64>,
        /// Column bound for --mode explicit
        #[arg(long)]
        n_max: Option<u64>,
    },
    /// Regenerate a table of the experimental record
    Tables {
        /// 1: bucketed pi counts with G1 (slow: hours). 2: kappa grid.
        /// 3: mean bucket counts with G2 (slow: hours). 4, 5: Pi(100)
        /// censuses. 6: P(100) censuses with kappa_7 (slow: hours per pair).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
        which: u8,
    },
}

#[derive(Args)]
struct SearchBounds {
    /// Candidate primes are taken below this bound
    #[arg(long)]
    prime_bound: Option<u64>,
    /// Discard triples with modulus above this
    #[arg(long)]
    modulus_bound: Option<u64>,
    /// Largest prime-set size to try
    #[arg(long)]
    max_primes: Option<usize>,
    /// Prune branches whose combined period exceeds this
    #[arg(long)]
    period_bound: Option<u64>,
    /// Hard cap on search nodes (exit 2 when exhausted)
    #[arg(long)]
    node_budget: Option<u64>,
}

impl SearchBounds {
    fn to_config(&self) -> SearchConfig {
        let d = SearchConfig::default();
        SearchConfig {
            prime_bound: self.prime_bound.unwrap_or(d.prime_bound),
            modulus_bound: self.modulus_bound.unwrap_or(d.modulus_bound),
            max_primes: self.max_primes.unwrap_or(d.max_primes),
            period_bound: self.period_bound.unwrap_or(d.period_bound),
            node_budget: self.node_budget.unwrap_or(d.node_budget),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CensusMode {
    /// pi_{a,b}(y): exponents with a^m, b^n <= a^y
    #[value(name = "pi")]
    Pi,
    /// Pi_{a,b}(100): both powers below (ab)^(100 phi(ab)/ab)
    #[value(name = "pi100")]
    Pi100,
    /// P_{a,b}(100): bound chosen so about 100 primes are expected
    #[value(name = "p100")]
    P100,
    /// explicit m_max x n_max rectangle
    #[value(name = "explicit")]
    Explicit,
}

/// Everything a JSON response carries besides the payload.
#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    seed: u64,
    result: T,
}

fn main() -> ExitCode {
    // usage problems are 64; clap's default of 2 is reserved for budgets
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        // ignore the error if a pool already exists (tests call run twice)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e.downcast_ref::<Error>() {
                Some(Error::BudgetExhausted { .. })
                | Some(Error::IncompleteFactorization { .. }) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn emit<T: Serialize>(cli: &Cli, result: &T, tsv: impl FnOnce()) -> anyhow::Result<()> {
    if cli.json {
        let doc = Envelope {
            seed: cli.seed,
            result,
        };
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        tsv();
    }
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    match &cli.cmd {
        Cmd::Reduce { triple } => {
            let r = reduce(triple);
            emit(cli, &r, || println!("{r}"))
        }
        Cmd::Member { triple, m, n } => {
            let ans = triple.member(*m, *n);
            emit(cli, &ans, || println!("{ans}"))
        }
        Cmd::VerifyCover { system } => {
            let covering = system.is_covering();
            let uncovered = system.uncovered_cells(5);
            #[derive(Serialize)]
            struct Cover<'a> {
                system: &'a CoveringSystem,
                lcm_modulus: u64,
                covering: bool,
                uncovered_sample: Vec<(u64, u64)>,
            }
            let doc = Cover {
                system,
                lcm_modulus: system.lcm_modulus(),
                covering,
                uncovered_sample: uncovered.clone(),
            };
            emit(cli, &doc, || {
                println!("{covering}");
                for (m, n) in &uncovered {
                    println!("uncovered\t{m}\t{n}");
                }
            })
        }
        Cmd::TripleOfPrime { p, a, b } => {
            let data = triple_for_prime(*p, *a, *b)?;
            emit(cli, &data, || {
                println!("{}\t{}\t{}", data.triple, data.ord_a, data.ord_b)
            })
        }
        Cmd::Realize { triple, p, g } => {
            let real = realize_triple(&reduce(triple), *p, *g)?;
            emit(cli, &real, || println!("{}\t{}", real.a_res, real.b_res))
        }
        Cmd::ConstructPair {
            system,
            primes,
            gens,
        } => {
            let built = construct_pair(system, primes, gens.as_deref())?;
            emit(cli, &built, || {
                println!("a\t{}", built.a);
                println!("b\t{}", built.b);
                println!("q\t{}", built.q);
                for r in &built.primes {
                    println!(
                        "prime\t{}\t{}\tg\t{}\tres\t{}\t{}",
                        r.p, r.triple, r.g, r.a_res, r.b_res
                    );
                }
            })
        }
        Cmd::Classify { a, b } => {
            let c = classify(*a, *b)?;
            emit(cli, &c, || {
                println!("gcd_ab\t{}", c.gcd_ab);
                println!("gcd_a1b1\t{}", c.gcd_a1b1);
                println!("power_a\t{}^{}", c.pp_a.0, c.pp_a.1);
                println!("power_b\t{}^{}", c.pp_b.0, c.pp_b.1);
                println!(
                    "edge_gcds\t{}\t{}\t{}",
                    c.edge_gcds.0, c.edge_gcds.1, c.edge_gcds.2
                );
                println!("in_n\t{}", c.in_n);
                println!("in_nplus\t{}", c.in_nplus);
            })
        }
        Cmd::FindObstruction {
            a,
            b,
            mixed,
            bounds,
        } => {
            let cfg = bounds.to_config();
            let found = if *mixed {
                find_mixed_obstruction(*a, *b, &cfg)?
            } else {
                find_obstruction(*a, *b, &cfg)?
            };
            emit(cli, &found, || match &found {
                None => println!("none"),
                Some(o) => {
                    println!("q\t{}", o.q);
                    println!("kind\t{:?}", o.kind);
                    if let Some((k, l)) = o.restricted {
                        println!("restricted\t{k}\t{l}");
                    }
                    for d in &o.primes {
                        println!(
                            "prime\t{}\t{}\tord\t{}\t{}",
                            d.p, d.triple, d.ord_a, d.ord_b
                        );
                    }
                }
            })
        }
        Cmd::VerifyObstruction { a, b, primes } => {
            let rep = verify_obstruction(*a, *b, primes)?;
            emit(cli, &rep, || {
                println!("{}", rep.ok);
                if let Some((m, n)) = rep.witness {
                    println!("witness\t{m}\t{n}");
                }
                for c in &rep.certificate {
                    println!("cell\t{}\t{}\tdivisor\t{}", c.m, c.n, c.p);
                }
            })
        }
        Cmd::Kappa { a, b, k } => {
            let fcfg = FactorConfig {
                seed: cli.seed,
                ..FactorConfig::default()
            };
            let est = kappa_with(*a, *b, *k, &fcfg)?;
            emit(cli, &est, || println!("{}", est.render()))
        }
        Cmd::Predict { a, b, k } => {
            let rep = predictions(*a, *b, *k)?;
            emit(cli, &rep, || {
                println!("g1\t{:.3}", rep.g1);
                println!("kappa_{k}\t{}", rep.kappa_k.render());
                println!("g2\t{:.3}", rep.g2);
                println!("c_ab\t{:.6}", rep.c_ab);
            })
        }
        Cmd::Census {
            a,
            b,
            mode,
            y,
            kappa_k,
            m_max,
            n_max,
        } => {
            let rep = match mode {
                CensusMode::Pi => {
                    let y = y.ok_or_else(|| anyhow::anyhow!("--mode pi needs --y"))?;
                    pi_ab(*a, *b, y)?
                }
                CensusMode::Pi100 => pi_100(*a, *b)?,
                CensusMode::P100 => {
                    let fcfg = FactorConfig {
                        seed: cli.seed,
                        ..FactorConfig::default()
                    };
                    let est = kappa_with(*a, *b, *kappa_k, &fcfg)?;
                    p_100(*a, *b, &est.kappa)?
                }
                CensusMode::Explicit => {
                    let (m, n) = m_max.zip(*n_max).ok_or_else(|| {
                        anyhow::anyhow!("--mode explicit needs --m-max and --n-max")
                    })?;
                    census_explicit(*a, *b, m, n)?
                }
            };
            emit_census(cli, &rep)
        }
        Cmd::Tables { which } => tables(cli, *which),
    }
}

fn emit_census(cli: &Cli, rep: &CensusReport) -> anyhow::Result<()> {
    emit(cli, rep, || {
        for h in &rep.hits {
            println!("{}\t{}\t{}\t{}", h.m, h.n, h.sign, h.bits);
        }
        // compact summary line so TSV output is self-describing
        let summary = serde_json::json!({
            "a": rep.a, "b": rep.b, "bounds": rep.bounds,
            "pairs_examined": rep.pairs_examined,
            "count": rep.count, "distinct": rep.distinct,
            "buckets": rep.buckets,
        });
        println!("{summary}");
    })
}

/// Pairs of the small-base experiment (bases <= 7, multiplicatively
/// independent, no fixed divisor).
const SMALL_PAIRS: [(u64, u64); 6] = [(2, 3), (3, 4), (2, 5), (4, 5), (5, 6), (2, 7)];

/// Pairs with a + b <= 500 carrying an obstruction or a small census.
const WIDE_PAIRS: [(u64, u64); 14] = [
    (26, 149),
    (68, 133),
    (67, 186),
    (13, 302),
    (37, 284),
    (22, 321),
    (13, 356),
    (128, 253),
    (43, 342),
    (122, 307),
    (191, 254),
    (202, 251),
    (161, 304),
    (146, 323),
];

/// The WIDE_PAIRS that have no obstruction, hence a meaningful P(100) run.
const CENSUS_PAIRS: [(u64, u64); 11] = [
    (26, 149),
    (68, 133),
    (67, 186),
    (37, 284),
    (22, 321),
    (128, 253),
    (43, 342),
    (191, 254),
    (202, 251),
    (161, 304),
    (146, 323),
];

struct Row {
    pair: String,
    cells: Vec<String>,
}

fn print_table(header: &[&str], rows: &[Row]) {
    println!("pair\t{}", header.join("\t"));
    for r in rows {
        println!("{}\t{}", r.pair, r.cells.join("\t"));
    }
}

fn tables(cli: &Cli, which: u8) -> anyhow::Result<()> {
    let fcfg = FactorConfig {
        seed: cli.seed,
        ..FactorConfig::default()
    };
    let row = |a: u64, b: u64, cells: Vec<String>| Row {
        pair: format!("{a},{b}"),
        cells,
    };
    let fmt = |x: &dyn Display| x.to_string();
    match which {
        1 => {
            let mut rows = Vec::new();
            for (a, b) in SMALL_PAIRS {
                let rep = ambn_core::census::bucket_counts(a, b, 7)?;
                let mut cells: Vec<String> = rep.buckets.unwrap().iter().map(|c| fmt(c)).collect();
                let g1 = round_half_up(predictions(a, b, 1)?.g1);
                cells.push(fmt(&g1));
                rows.push(row(a, b, cells));
            }
            print_table(&["N1", "N2", "N3", "N4", "N5", "N6", "N7", "G1"], &rows);
        }
        2 => {
            let mut rows = Vec::new();
            for (a, b) in SMALL_PAIRS {
                let cells = (2..=7usize)
                    .map(|k| Ok(kappa_with(a, b, k, &fcfg)?.render_table()))
                    .collect::<anyhow::Result<_>>()?;
                rows.push(row(a, b, cells));
            }
            print_table(&["k=2", "k=3", "k=4", "k=5", "k=6", "k=7"], &rows);
        }
        3 => {
            let mut rows = Vec::new();
            for (a, b) in SMALL_PAIRS {
                let rep = ambn_core::census::bucket_counts(a, b, 7)?;
                let buckets = rep.buckets.unwrap();
                let mean = round_half_up(buckets.iter().sum::<u64>() as f64 / buckets.len() as f64);
                let g2 = round_half_up(predictions(a, b, 7)?.g2);
                rows.push(row(a, b, vec![fmt(&mean), fmt(&g2)]));
            }
            print_table(&["mean_N", "G2"], &rows);
        }
        4 => {
            let pairs = [(9, 74), (29, 34), (34, 41), (51, 64), (59, 86)];
            let mut rows = Vec::new();
            for (a, b) in pairs {
                rows.push(row(a, b, vec![fmt(&pi_100(a, b)?.count)]));
            }
            print_table(&["Pi100"], &rows);
        }
        5 => {
            let mut rows = Vec::new();
            for (a, b) in WIDE_PAIRS {
                rows.push(row(a, b, vec![fmt(&pi_100(a, b)?.count)]));
            }
            print_table(&["Pi100"], &rows);
        }
        6 => {
            let mut rows = Vec::new();
            for (a, b) in CENSUS_PAIRS {
                let est = kappa_with(a, b, 7, &fcfg)?;
                let rep = p_100(a, b, &est.kappa)?;
                rows.push(row(a, b, vec![fmt(&rep.count), est.render_table()]));
            }
            print_table(&["P100", "kappa7"], &rows);
        }
        _ => unreachable!("clap range"),
    }
    Ok(())
}
