use std::process::{Command, Output};

fn ambn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ambn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn out(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn reduce_golden() {
    let o = ambn(&["reduce", "1,0,2"]);
    assert!(o.status.success());
    assert_eq!(out(&o), "1,2,2\n");
}

#[test]
fn member_answers() {
    assert_eq!(out(&ambn(&["member", "2,1,4", "2", "1"])), "true\n");
    assert_eq!(out(&ambn(&["member", "2,1,4", "3", "2"])), "false\n");
}

#[test]
fn verify_cover_both_ways() {
    let o = ambn(&["verify-cover", "1,2,2;2,1,2;1,1,4;1,3,4"]);
    assert_eq!(out(&o), "true\n");
    let o = ambn(&["verify-cover", "1,1,2"]);
    let text = out(&o);
    assert!(text.starts_with("false\n"));
    assert!(text.contains("uncovered\t"));
}

#[test]
fn verify_obstruction_golden() {
    let o = ambn(&["verify-obstruction", "41", "34", "3,5,7"]);
    assert!(o.status.success());
    let text = out(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("true"));
    // certificate covers the full period grid
    assert_eq!(lines.filter(|l| l.starts_with("cell\t")).count(), 4);
}

#[test]
fn kappa_golden() {
    let o = ambn(&["kappa", "2", "3", "--k", "2"]);
    assert!(o.status.success());
    assert_eq!(out(&o), "0.713\n");
}

#[test]
fn construct_pair_golden() {
    let o = ambn(&[
        "construct-pair",
        "1,3,3;3,1,3;1,1,3;1,2,3",
        "--primes",
        "7,13,19,31",
        "--gens",
        "2,3,7,5",
    ]);
    let text = out(&o);
    assert!(text.contains("a\t15226\n"));
    assert!(text.contains("b\t13820\n"));
    assert!(text.contains("q\t53599\n"));
}

#[test]
fn find_obstruction_tsv_and_none() {
    let text = out(&ambn(&["find-obstruction", "41", "34"]));
    assert!(text.starts_with("q\t105\n"));
    assert!(text.contains("prime\t3\t2,1,2\t"));
    assert_eq!(out(&ambn(&["find-obstruction", "2", "3"])), "none\n");
}

#[test]
fn json_round_trips_into_source_types() {
    let o = ambn(&["kappa", "2", "3", "--k", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out(&o)).unwrap();
    assert_eq!(v["seed"], 1);
    let est: ambn_core::heuristic::KappaEstimate =
        serde_json::from_value(v["result"].clone()).unwrap();
    assert_eq!(est.render(), "0.713");
    assert_eq!(serde_json::to_value(&est).unwrap(), v["result"]);

    let o = ambn(&["find-obstruction", "41", "34", "--json", "--seed", "9"]);
    let v: serde_json::Value = serde_json::from_str(&out(&o)).unwrap();
    assert_eq!(v["seed"], 9);
    let found: Option<ambn_core::obstruction::Obstruction> =
        serde_json::from_value(v["result"].clone()).unwrap();
    let found = found.unwrap();
    let ps: Vec<u64> = found.primes.iter().map(|d| d.p).collect();
    assert_eq!(ps, vec![3, 5, 7]);
    assert_eq!(serde_json::to_value(&found).unwrap(), v["result"]);

    let o = ambn(&["census", "2", "3", "--mode", "pi", "--y", "20", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out(&o)).unwrap();
    let rep: ambn_core::census::CensusReport = serde_json::from_value(v["result"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&rep).unwrap(), v["result"]);
}

#[test]
fn census_tsv_hits_plus_summary() {
    let o = ambn(&["census", "2", "3", "--mode", "pi", "--y", "4"]);
    let text = out(&o);
    let lines: Vec<&str> = text.lines().collect();
    // 5 hits, one per line, then a JSON summary line
    assert_eq!(lines.len(), 6);
    for l in &lines[..5] {
        assert_eq!(l.split('\t').count(), 4);
    }
    let summary: serde_json::Value = serde_json::from_str(lines[5]).unwrap();
    assert_eq!(summary["count"], 5);
    assert_eq!(summary["pairs_examined"], 8);
}

#[test]
fn output_independent_of_worker_count() {
    let one = ambn(&[
        "census",
        "2",
        "3",
        "--mode",
        "pi",
        "--y",
        "60",
        "--threads",
        "1",
    ]);
    let four = ambn(&[
        "census",
        "2",
        "3",
        "--mode",
        "pi",
        "--y",
        "60",
        "--threads",
        "4",
    ]);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn exit_codes() {
    // usage: malformed literal, unknown flag
    assert_eq!(ambn(&["reduce", "1,0"]).status.code(), Some(64));
    assert_eq!(ambn(&["reduce", "--frob", "1,0,2"]).status.code(), Some(64));
    assert_eq!(ambn(&["--help"]).status.code(), Some(0));
    // domain error
    assert_eq!(
        ambn(&["kappa", "5", "5", "--k", "2"]).status.code(),
        Some(1)
    );
    // budget exhaustion
    let o = ambn(&["find-obstruction", "41", "34", "--node-budget", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table_2_matches_fixture_byte_for_byte() {
    let o = ambn(&["tables", "--which", "2"]);
    assert!(o.status.success());
    assert_eq!(out(&o), include_str!("fixtures/table2.tsv"));
}

#[test]
fn table_4_census_row() {
    let o = ambn(&["tables", "--which", "4"]);
    let text = out(&o);
    assert_eq!(
        text,
        "pair\tPi100\n9,74\t20\n29,34\t1\n34,41\t1\n51,64\t1\n59,86\t0\n"
    );
}
