//! Data-parallel helpers. With the `parallel` feature the work is spread
//! over rayon's pool; without it everything runs in index order on the
//! calling thread. Results are always returned in index order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether work will actually be spread across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

pub fn map_indexed<T, F>(exec: Execution, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..count).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..count).map(f).collect()
}

/// Lowest index for which `f` yields `Some`, with its value.
pub fn find_first_indexed<T, F>(exec: Execution, count: usize, f: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..count).into_par_iter().filter_map(|i| f(i).map(|t| (i, t))).find_first(|_| true);
    }
    let _ = exec;
    (0..count).find_map(|i| f(i).map(|t| (i, t)))
}

/// Runs `f` inside a dedicated pool of `threads` workers when requested.
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if let Some(t) = threads {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build();
        if let Ok(pool) = pool {
            return pool.install(f);
        }
    }
    let _ = threads;
    f()
}
