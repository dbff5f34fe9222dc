//! Worker-count control for the scan-style computations.
//!
//! Library scans use rayon's ordered `collect`, so results never depend on
//! the number of workers. [`with_threads`] caps parallelism for a closure.

/// Run `f` inside a dedicated pool of `threads` workers (`0` means rayon's
/// default sizing).
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rayon::prelude::*;

    #[test]
    fn results_independent_of_threads() {
        let run = || {
            (0u64..10_000)
                .into_par_iter()
                .map(|x| x * x % 97)
                .collect::<Vec<_>>()
        };
        assert_eq!(with_threads(1, run), with_threads(4, run));
    }
}
