use chord_core::enumerate::{
    enumerate_bruteforce, enumerate_constructive, nijenhuis_wilf_counts, stein_counts,
    Enumeration, DEFAULT_BRUTE_LIMIT, DEFAULT_CONSTRUCTIVE_LIMIT,
};
use chord_core::Error;
use num::BigUint;

const KNOWN_COUNTS: [u64; 8] = [1, 1, 4, 27, 248, 2830, 38232, 593859];

#[test]
fn constructive_counts_match_known_values() {
    let levels = enumerate_constructive(7).unwrap();
    for (n, level) in levels.iter().enumerate() {
        assert_eq!(level.len() as u64, KNOWN_COUNTS[n], "n = {}", n + 1);
    }
}

#[test]
fn bruteforce_counts_match_known_values() {
    for n in 1..=6 {
        assert_eq!(
            enumerate_bruteforce(n).unwrap().len() as u64,
            KNOWN_COUNTS[n - 1]
        );
    }
}

#[test]
fn generators_agree_exactly() {
    // Not just the counts: the two generators produce identical sets.
    let levels = enumerate_constructive(6).unwrap();
    for n in 1..=6 {
        assert_eq!(levels[n - 1], enumerate_bruteforce(n).unwrap(), "n = {n}");
    }
}

#[test]
fn constructive_has_no_duplicates() {
    let levels = enumerate_constructive(6).unwrap();
    for level in levels {
        let mut dedup = level.clone();
        dedup.dedup();
        assert_eq!(dedup, level);
    }
}

#[test]
fn all_enumerated_diagrams_are_connected() {
    for level in enumerate_constructive(6).unwrap() {
        assert!(level.iter().all(|d| d.is_connected()));
    }
}

#[test]
fn size_limits_are_enforced() {
    assert!(matches!(
        enumerate_bruteforce(DEFAULT_BRUTE_LIMIT + 1),
        Err(Error::SizeLimit { .. })
    ));
    assert!(matches!(
        enumerate_constructive(DEFAULT_CONSTRUCTIVE_LIMIT + 1),
        Err(Error::SizeLimit { .. })
    ));
    assert!(enumerate_bruteforce(0).is_err());
    assert!(enumerate_constructive(0).is_err());
}

#[test]
fn counting_recurrences_agree_to_twelve() {
    let stein = stein_counts(12);
    let nw = nijenhuis_wilf_counts(12);
    assert_eq!(stein, nw);
    for (n, &known) in KNOWN_COUNTS.iter().enumerate() {
        assert_eq!(stein[n], BigUint::from(known));
    }
    // A couple of larger values, frozen from an independent run of the
    // (n−1)-weighted recurrence.
    assert_eq!(stein[8], BigUint::from(10401712u64));
    assert_eq!(stein[9], BigUint::from(202601898u64));
}

#[test]
fn enumeration_cache_exposes_stats() {
    let e = Enumeration::up_to(5).unwrap();
    assert_eq!(e.max_n(), 5);
    for n in 1..=5 {
        assert_eq!(e.level(n).len(), e.stats_level(n).len());
        assert_eq!(e.count(n) as u64, KNOWN_COUNTS[n - 1]);
        for (d, s) in e.level(n).iter().zip(e.stats_level(n)) {
            assert_eq!(&d.stats().unwrap(), s);
        }
    }
}

#[test]
fn counts_by_b_partition_the_level() {
    let e = Enumeration::up_to(5).unwrap();
    // n = 3: the ladder has b = 2; the other three diagrams have b = 3.
    let by_b = e.counts_by_b(3);
    assert_eq!(by_b.get(&2), Some(&1));
    assert_eq!(by_b.get(&3), Some(&3));
    for n in 1..=5 {
        let total: usize = e.counts_by_b(n).values().sum();
        assert_eq!(total, e.count(n));
    }
}
