//! Multi-threaded sweeps. Records are produced by worker threads over
//! disjoint index ranges and handed to the caller in index order, so output
//! does not depend on the worker count.

use std::num::NonZeroUsize;
use std::thread;

use qss_core::analysis::{sweep_range, AnalysisRecord, TheoremReport};

use crate::Result;

/// Records analysed per worker between ordered hand-offs.
const CHUNK: u64 = 2048;

#[derive(Clone, Copy, Debug)]
pub struct SweepSpec {
    pub n: u64,
    pub seed: u64,
    pub include_phase: bool,
    /// Slack below `-tol` is a violation.
    pub tol: f64,
    pub workers: NonZeroUsize,
}

/// Runs the sweep and calls `sink` for every record in index order.
pub fn run(spec: &SweepSpec, mut sink: impl FnMut(u64, &AnalysisRecord) -> Result<()>) -> Result<TheoremReport> {
    let workers = spec.workers.get() as u64;
    let mut report = TheoremReport::new(spec.tol);
    let mut start = 0;
    while start < spec.n {
        let end = spec.n.min(start + CHUNK * workers);
        let bounds: Vec<(u64, u64)> = (0..workers)
            .map(|w| {
                let len = end - start;
                (start + len * w / workers, start + len * (w + 1) / workers)
            })
            .filter(|(a, b)| a < b)
            .collect();
        let parts = thread::scope(|s| {
            let handles: Vec<_> = bounds
                .iter()
                .map(|&(a, b)| {
                    s.spawn(move || {
                        let mut records = Vec::with_capacity((b - a) as usize);
                        let rep =
                            sweep_range(a..b, spec.seed, spec.include_phase, spec.tol, |i, r| records.push((i, *r)));
                        rep.map(|rep| (rep, records))
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect::<Vec<_>>()
        });
        for part in parts {
            let (rep, records) = part?;
            for (i, r) in &records {
                sink(*i, r)?;
            }
            report.merge(rep);
        }
        start = end;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect(workers: usize) -> (Vec<(u64, AnalysisRecord)>, TheoremReport) {
        let spec =
            SweepSpec { n: 300, seed: 9, include_phase: true, tol: 1e-6, workers: NonZeroUsize::new(workers).unwrap() };
        let mut out = Vec::new();
        let rep = run(&spec, |i, r| {
            out.push((i, *r));
            Ok(())
        })
        .unwrap();
        (out, rep)
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let one = collect(1);
        assert_eq!(one.0.len(), 300);
        assert!(one.0.iter().enumerate().all(|(k, (i, _))| k as u64 == *i));
        assert_eq!(one, collect(3));
        assert_eq!(one, collect(8));
    }
}
