//! Parallel sweeps: shards run on a rayon pool and are merged in shard
//! order, so the report does not depend on scheduling.

use std::time::Instant;

use digrho_core::enumerate::{shards, VertexCap};
use digrho_core::verify::{sweep_shard, SweepAccumulator, VerificationReport};
use digrho_core::SpectralOptions;
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::error::{CliError, CliResult};

pub fn pool(jobs: usize) -> CliResult<ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Internal(format!("thread pool: {e}")))
}

pub fn verify_parallel(
    pool: &ThreadPool,
    e: u64,
    cap: VertexCap,
    opts: SpectralOptions,
    timing: bool,
) -> CliResult<VerificationReport> {
    let start = Instant::now();
    let shards = shards(e, cap)?;
    let partial: Vec<_> = pool.install(|| shards.par_iter().map(|s| sweep_shard(s, opts)).collect());
    let mut acc = SweepAccumulator::default();
    for p in partial {
        acc = acc.merge(p?);
    }
    let mut report = VerificationReport::from_sweep(e, &acc)?;
    if timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use digrho_core::verify::verify_conjecture;

    #[test]
    fn parallel_matches_sequential() {
        let opts = SpectralOptions::default();
        let p = pool(3).unwrap();
        for e in [4, 8, 9, 17, 24] {
            let par = verify_parallel(&p, e, VertexCap::Default, opts, false).unwrap();
            assert_eq!(par, verify_conjecture(e, opts).unwrap());
        }
    }
}
