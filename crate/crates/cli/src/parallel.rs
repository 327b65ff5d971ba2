//! Rayon drivers for the seeker and the lattice scan. Results are merged in a
//! fixed order, so the output does not depend on the thread count.

use enriques_core::lattice::{congruence_scan_slab, ScanTally};
use enriques_core::quadric::BiForm;
use enriques_core::seeker::{
    newton_solve, seed_stream, seek, SeekMerger, SeekOptions, SeekOutcome, SeekerError, TangencySystem,
};
use rayon::prelude::*;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "ENRIQUES_THREADS";

/// Pool sized by `ENRIQUES_THREADS`, or rayon's default when it is unset or
/// not a positive integer.
pub fn thread_pool() -> rayon::ThreadPool {
    let threads = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()).unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
}

/// Same result as `enriques_core::seeker::seek`, with starts run in parallel.
/// Starts are processed in batches so that a budget stops the work early.
pub fn par_seek(pool: &rayon::ThreadPool, b: &BiForm, m: u32, options: &SeekOptions) -> Result<SeekOutcome, SeekerError> {
    if m <= 1 {
        return seek(b, m, options);
    }
    let sys = TangencySystem::build(b, m as usize - 1)?;
    let seeds = seed_stream(options.master_seed, options.seeds);
    let batch = 4 * pool.current_num_threads().max(1);
    let mut merger = SeekMerger::new(m, options);
    for chunk in seeds.chunks(batch) {
        let results: Vec<_> = pool.install(|| chunk.par_iter().map(|&s| newton_solve(&sys, s, options)).collect());
        for r in results {
            if !merger.push(r) {
                return Ok(merger.finish());
            }
        }
    }
    Ok(merger.finish())
}

/// Exhaustive scan of the box of the given radius, one task per value of the
/// first coordinate.
pub fn par_congruence_scan(pool: &rayon::ThreadPool, radius: i64) -> ScanTally {
    pool.install(|| {
        (-radius..=radius)
            .into_par_iter()
            .map(|first| congruence_scan_slab(radius, first))
            .collect::<Vec<_>>()
            .into_iter()
            .fold(ScanTally::default(), ScanTally::merge)
    })
}
