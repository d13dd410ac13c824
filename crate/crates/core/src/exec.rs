//! Batch-execution layer: data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature (default) [`map_collect`] fans work out over
//! rayon; without it the same call compiles to a plain sequential loop.
//! [`map_collect_seq`] is always sequential so benchmarks can compare both
//! paths inside one binary. Output order matches input order in every case,
//! which keeps serialized results byte-deterministic regardless of
//! scheduling.

/// Maps `f` over `items`, parallel when the `parallel` feature is on.
/// Results come back in input order.
#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

/// Maps `f` over `items` sequentially (the `parallel` feature is off).
#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_iter().map(f).collect()
}

/// Always-sequential map, available under both feature configurations so a
/// single benchmark binary can compare the two paths.
pub fn map_collect_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Caps the global rayon pool from the `RENYI_THREADS` environment variable.
/// Call once at process start; later calls are no-ops (the pool builds once).
/// Without the `parallel` feature this is a no-op.
pub fn init_thread_cap_from_env() {
    #[cfg(feature = "parallel")]
    {
        if let Ok(v) = std::env::var("RENYI_THREADS") {
            if let Ok(n) = v.trim().parse::<usize>() {
                if n >= 1 {
                    // Ignore the error: the pool may already be built, which
                    // is fine (first initializer wins).
                    let _ = rayon::ThreadPoolBuilder::new()
                        .num_threads(n)
                        .build_global();
                }
            }
        }
    }
}
