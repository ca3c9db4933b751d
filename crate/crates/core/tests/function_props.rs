//! Representation invariants: conversion round trips, ANF uniqueness,
//! evaluation consistency, and the degree/essentiality correspondence.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use canalyze::function::{index_point, iterate_tables};
use common::{field, random_table};

#[test]
fn round_trip_exhaustive_boolean() {
    let f = field(2);
    for n in 1..=3 {
        for table in iterate_tables(&f, n).unwrap() {
            assert_eq!(table.to_anf().to_table(), table);
        }
    }
}

#[test]
fn round_trip_seeded_random() {
    for (q, n) in [(3u64, 2usize), (5, 1), (4, 2)] {
        let f = field(q);
        for seed in 0..1000 {
            let t = random_table(&f, n, seed);
            assert_eq!(t.to_anf().to_table(), t, "q={q} n={n} seed={seed}");
        }
    }
}

#[test]
fn anf_is_unique_per_function() {
    // Exhaustive bijection check at q=2, n=2: 16 tables, 16 distinct ANFs.
    let f = field(2);
    let anfs: BTreeSet<Vec<u8>> = iterate_tables(&f, 2)
        .unwrap()
        .map(|t| t.to_anf().coeffs().to_vec())
        .collect();
    assert_eq!(anfs.len(), 16);

    // Distinct random tables keep distinct ANFs.
    let f = field(3);
    let mut tables = BTreeSet::new();
    let mut anfs = BTreeSet::new();
    for seed in 0..500 {
        let t = random_table(&f, 2, seed);
        tables.insert(t.values().to_vec());
        anfs.insert(t.to_anf().coeffs().to_vec());
    }
    assert_eq!(tables.len(), anfs.len());
}

#[test]
fn evaluation_matches_table_lookup() {
    let f = field(2);
    for table in iterate_tables(&f, 2).unwrap() {
        let anf = table.to_anf();
        for idx in 0..4 {
            let point = index_point(2, 2, idx);
            assert_eq!(anf.eval(&point).unwrap(), table.values()[idx]);
        }
    }
    let f = field(3);
    for seed in 0..100 {
        let t = random_table(&f, 2, seed);
        let anf = t.to_anf();
        for idx in 0..9 {
            let point = index_point(3, 2, idx);
            assert_eq!(anf.eval(&point).unwrap(), t.values()[idx]);
        }
    }
}

#[test]
fn variable_degree_zero_iff_inessential() {
    let f = field(2);
    for table in iterate_tables(&f, 2).unwrap() {
        let anf = table.to_anf();
        for i in 1..=2 {
            let inessential = !table.is_essential(i).unwrap();
            assert_eq!(
                anf.degree_in(i).unwrap() == 0,
                inessential,
                "table {:?} variable {i}",
                table.values()
            );
        }
    }
}

#[test]
fn zero_table_round_trips_through_zero_polynomial() {
    let f = field(5);
    let t = canalyze::TruthTable::constant(Arc::clone(&f), 2, 0).unwrap();
    let anf = t.to_anf();
    assert!(anf.is_zero());
    assert_eq!(anf.degree(), -1);
    assert_eq!(anf.to_table(), t);
}
