//! Worker-pool plumbing. `SA_WITNESS_THREADS` caps the number of parallel
//! sampling workers; results are always merged in index order, so thread
//! count never affects output.

use std::sync::OnceLock;

use rayon::ThreadPool;

static POOL: OnceLock<ThreadPool> = OnceLock::new();

pub fn thread_cap() -> usize {
    std::env::var("SA_WITNESS_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(0) // 0 lets rayon pick the default
}

fn pool() -> &'static ThreadPool {
    POOL.get_or_init(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(thread_cap())
            .build()
            .expect("thread pool construction")
    })
}

/// Runs `f` inside the capped pool.
pub fn install<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    pool().install(f)
}

/// Index-ordered parallel map: deterministic regardless of thread count.
pub fn map_indexed<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync,
{
    use rayon::prelude::*;
    install(|| {
        items
            .par_iter()
            .enumerate()
            .map(|(i, t)| f(i, t))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let items: Vec<usize> = (0..100).collect();
        let out = map_indexed(&items, |i, &x| i * 1000 + x);
        for (i, v) in out.iter().enumerate() {
            assert_eq!(*v, i * 1000 + i);
        }
    }
}
