//! Worker-parallel brute-force counting: the enumeration index range is cut
//! into contiguous chunks, each worker counts members independently, and the
//! chunk counts are summed. The split is deterministic, so the result is
//! identical for any worker count.

use canalyze::canalyzing::FamilySpec;
use canalyze::counting::{chunk_ranges, count_brute_range};
use canalyze::field::make_field;
use canalyze::function::table_space_size;

pub fn count_brute_parallel(
    spec: &FamilySpec,
    q: u64,
    n: u64,
    workers: usize,
) -> canalyze::Result<u64> {
    let total = table_space_size(q, n)?;
    let field = make_field(q)?;
    spec.validate(q, n)?;
    let ranges = chunk_ranges(total, workers);
    let field_ref = &field;
    let counts = std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .iter()
            .map(|&(start, end)| {
                scope.spawn(move || count_brute_range(field_ref, n as usize, spec, start, end))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("brute-force worker panicked"))
            .collect::<canalyze::Result<Vec<u64>>>()
    })?;
    Ok(counts.into_iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worker_counts_agree() {
        let spec = FamilySpec::any();
        let single = count_brute_parallel(&spec, 3, 2, 1).unwrap();
        for workers in [2usize, 8] {
            assert_eq!(count_brute_parallel(&spec, 3, 2, workers).unwrap(), single);
        }
        assert_eq!(single, 9933);
    }
}
