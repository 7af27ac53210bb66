use std::collections::BTreeSet;
use std::fs;

use picard_core::picard::{derive_ode_for, recurrence_at_zero};
use picard_core::search::*;
use picard_core::Error;

mod common;

fn cfg(b: SearchBox, every: u64) -> SearchConfig {
    SearchConfig { search_box: b, checkpoint_every: every, ..SearchConfig::default() }
}

fn tuples(r: &ShardReport) -> Vec<SearchTuple> {
    r.survivors.iter().map(|s| s.tuple).collect()
}

fn mid_box() -> SearchBox {
    SearchBox::parse("b3=3..5,b2=19..23,b1=13..17,b0=-1..3,c5=0..2,c4=7..11,c3=11..15,c2=2..6").unwrap()
}

#[test]
fn gamma1_7_tuple_gives_its_recurrence() {
    let rec = recurrence_at_zero(&derive_ode_for(&common::family("gamma1_7")).unwrap()).unwrap();
    assert_eq!(SearchTuple::GAMMA1_7.to_recurrence().terms, rec.terms);
    assert_eq!(SearchTuple::GAMMA1_7.to_recurrence().leading, rec.leading);
    assert!(integrality_probe(&rec, 200).survives);
}

#[test]
fn neighborhood_contains_center_and_survivors_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let c = cfg(SearchBox::around(SearchTuple::GAMMA1_7, 1), 500);
    let r = run_shard(&c, dir.path()).unwrap();
    assert!(r.complete);
    assert_eq!(r.processed, 6561);
    assert!(tuples(&r).contains(&SearchTuple::GAMMA1_7));
    for s in &r.survivors {
        assert!(reverify(s, 40), "{}", s.tuple);
        assert_eq!(s.first_coefficients.len(), 12);
    }
    let center = r.survivors.iter().find(|s| s.tuple == SearchTuple::GAMMA1_7).unwrap();
    let first: Vec<String> = center.first_coefficients.iter().take(6).map(|c| c.to_string()).collect();
    assert_eq!(first, ["1", "1", "6", "25", "125", "642"]);
    let text = fs::read_to_string(c.survivors_path(dir.path())).unwrap();
    assert!(text.lines().any(|l| l == "4,21,15,1,1,9,13,4,60"));
    assert_eq!(fs::read_to_string(c.checkpoint_path(dir.path())).unwrap().trim(), "6560");
}

#[test]
fn resume_matches_uninterrupted_run() {
    let b = mid_box();
    assert!(b.len() > 100_000);
    let d1 = tempfile::tempdir().unwrap();
    let full = run_shard(&cfg(b, 7000), d1.path()).unwrap();

    let d2 = tempfile::tempdir().unwrap();
    let c = cfg(b, 7000);
    let part = run_shard_until(&c, d2.path(), Some(30_000)).unwrap();
    assert!(!part.complete);
    // a torn line after the checkpoint must be discarded on resume
    let sp = c.survivors_path(d2.path());
    let mut text = fs::read_to_string(&sp).unwrap();
    text.push_str("5,23,17,3,2,11,15,6,6");
    fs::write(&sp, text).unwrap();
    // a different checkpoint interval is allowed
    let rest = run_shard(&cfg(b, 9000), d2.path()).unwrap();
    assert!(rest.complete);
    assert_eq!(rest.resumed_from, Some(34_999));
    assert_eq!(part.processed + rest.processed, b.len());
    assert_eq!(tuples(&rest), tuples(&full));
    assert_eq!(fs::read_to_string(sp).unwrap(), fs::read_to_string(cfg(b, 7000).survivors_path(d1.path())).unwrap());
}

#[test]
fn shards_partition_the_box() {
    let b = SearchBox::around(SearchTuple::GAMMA1_7, 1);
    let d1 = tempfile::tempdir().unwrap();
    let one = run_shard(&cfg(b, 1000), d1.path()).unwrap();
    let d4 = tempfile::tempdir().unwrap();
    let four = run_all_shards(&cfg(b, 300).with_shard(0, 4), d4.path()).unwrap();
    let mut ranges: Vec<(u64, u64)> = four.iter().map(|r| (r.start, r.end)).collect();
    ranges.sort();
    assert_eq!(ranges.first().unwrap().0, 0);
    assert_eq!(ranges.last().unwrap().1, b.len());
    assert!(ranges.windows(2).all(|w| w[0].1 == w[1].0));
    let mut union: Vec<SearchTuple> = four.iter().flat_map(tuples).collect();
    union.sort();
    let mut single = tuples(&one);
    single.sort();
    assert_eq!(union, single);
}

#[test]
fn corrupt_checkpoint_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let c = cfg(SearchBox::around(SearchTuple::GAMMA1_7, 1), 1000);
    run_shard_until(&c, dir.path(), Some(1000)).unwrap();
    fs::write(c.checkpoint_path(dir.path()), "12x\n").unwrap();
    assert!(matches!(run_shard(&c, dir.path()), Err(Error::Checkpoint(_))));
    fs::write(c.checkpoint_path(dir.path()), "99999999\n").unwrap();
    assert!(matches!(run_shard(&c, dir.path()), Err(Error::Checkpoint(_))));
    let other = SearchConfig { depth: 70, ..c.clone() };
    fs::write(c.checkpoint_path(dir.path()), "999\n").unwrap();
    assert!(matches!(run_shard(&other, dir.path()), Err(Error::Checkpoint(_))));
    reset_shard(&c, dir.path()).unwrap();
    assert!(run_shard(&c, dir.path()).unwrap().complete);
}

#[test]
fn survivors_closed_under_sign_symmetry() {
    let b = SearchBox::parse("b3=4,b2=-21..21,b1=15,b0=-1..1,c5=1,c4=-9..9,c3=13,c2=-4..4").unwrap();
    assert!(b.is_symmetric());
    let dir = tempfile::tempdir().unwrap();
    let c = SearchConfig { allow_negative_c2: true, ..cfg(b, 5000) };
    let r = run_shard(&c, dir.path()).unwrap();
    let set: BTreeSet<SearchTuple> = tuples(&r).into_iter().collect();
    assert!(set.contains(&SearchTuple::GAMMA1_7));
    assert!(set.contains(&SearchTuple::GAMMA1_7.flipped()));
    for t in &set {
        assert!(set.contains(&t.flipped()), "{t}");
    }
    // u_n ↦ (−1)ⁿ u_n
    let u = integer_coefficients(&SearchTuple::GAMMA1_7, 20).unwrap();
    let w = integer_coefficients(&SearchTuple::GAMMA1_7.flipped(), 20).unwrap();
    for n in 0..=20 {
        assert_eq!(if n % 2 == 0 { u[n].clone() } else { -u[n].clone() }, w[n]);
    }
    assert!(matches!(cfg(b, 10).validate(), Err(Error::Config(_))));
}

#[test]
fn degenerate_tuples_and_config_checks() {
    assert_eq!(SearchTuple([0; 8]).kind(), TupleKind::Trivial);
    assert_eq!(SearchTuple([0, 0, 0, 0, 0, 0, 0, 1]).kind(), TupleKind::OrderThree);
    assert_eq!(probe_tuple(&SearchTuple([1, 0, 0, 0, 0, 0, 0, 0]), 60).fail_index, Some(4));
    let b = SearchBox::parse("b3=0,b2=0,b1=0,b0=0,c5=0,c4=0,c3=0,c2=0..1").unwrap();
    let dir = tempfile::tempdir().unwrap();
    let r = run_shard(&cfg(b, 10), dir.path()).unwrap();
    assert_eq!(r.skipped_degenerate, 2);
    assert!(r.survivors.is_empty());
    let d2 = tempfile::tempdir().unwrap();
    let c = SearchConfig { include_order_three: true, ..cfg(b, 10) };
    let r = run_shard(&c, d2.path()).unwrap();
    assert_eq!(r.skipped_degenerate, 1);
    assert!(r.survivors.iter().all(|s| s.order_three));
    assert!(SearchConfig { depth: 7, ..SearchConfig::default() }.validate().is_err());
    assert!(SearchConfig { shard_index: 4, shard_count: 4, ..SearchConfig::default() }.validate().is_err());
    assert_eq!(SearchBox::default().len(), 28_768_035_681);
}
