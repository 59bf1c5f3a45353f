//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) the helpers use rayon.
//! Without it, or when a caller asks for [`Execution::Sequential`], they
//! run in order on the calling thread. Output order is identical either
//! way, so callers never see a difference beyond timing.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if is_parallel_available() {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

#[inline]
pub fn is_parallel_available() -> bool {
    cfg!(feature = "parallel")
}

/// Order-preserving map over a slice.
#[cfg(feature = "parallel")]
pub fn map<T, U, F>(exec: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    match exec {
        Execution::Parallel => items.par_iter().map(f).collect(),
        Execution::Sequential => items.iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, U, F>(_exec: Execution, items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Order-preserving map over `0..count`.
#[cfg(feature = "parallel")]
pub fn map_indexed<U, F>(exec: Execution, count: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    use rayon::prelude::*;
    match exec {
        Execution::Parallel => (0..count).into_par_iter().map(f).collect(),
        Execution::Sequential => (0..count).map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<U, F>(_exec: Execution, count: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..count).map(f).collect()
}
