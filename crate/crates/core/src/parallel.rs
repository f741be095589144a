use crate::error::{Error, Result};

/// Runs `job` on a dedicated pool of `workers` threads.
///
/// Results of the crate's parallel routines do not depend on the worker
/// count; this only controls resource use.
pub fn with_workers<T, F>(workers: usize, job: F) -> Result<T>
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    if workers == 0 {
        return Err(Error::param("workers", "must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::param("workers", e.to_string()))?;
    Ok(pool.install(job))
}
