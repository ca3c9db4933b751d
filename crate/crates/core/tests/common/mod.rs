//! Shared helpers for the integration suites.
#![allow(dead_code)]

use std::sync::Arc;

use canalyze::field::{make_field, Field};
use canalyze::function::TruthTable;
use canalyze::mix::hash64;

/// Enumerable oracle grid: every (q, n) small enough to sweep the whole
/// function space quickly.
pub const GRID: [(u64, u64); 7] = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1), (5, 1)];

pub fn field(q: u64) -> Arc<Field> {
    Arc::new(make_field(q).unwrap())
}

/// Deterministic pseudo-random table: value at index j is `hash64(seed, j) mod q`.
pub fn random_table(field: &Arc<Field>, n: usize, seed: u64) -> TruthTable {
    let q = field.q();
    let len = q.pow(n as u32);
    let values = (0..len)
        .map(|j| (hash64(seed, j as u64) % q as u64) as u8)
        .collect();
    TruthTable::new(Arc::clone(field), n, values).unwrap()
}

/// All k-element subsets of `0..m`, each sorted ascending.
pub fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for v in start..m {
            current.push(v);
            rec(v + 1, m, k, current, out);
            current.pop();
        }
    }
    rec(0, m, k, &mut current, &mut out);
    out
}

/// All length-k tuples over `0..m` (with repetition), odometer order.
pub fn tuples(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = m.pow(k as u32);
    for mut idx in 0..total {
        let mut t = Vec::with_capacity(k);
        for _ in 0..k {
            t.push(idx % m);
            idx /= m;
        }
        out.push(t);
    }
    out
}
