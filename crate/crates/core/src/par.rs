//! Data-parallel helpers.
//!
//! With the `parallel` feature, work is spread over a rayon pool sized by
//! the caller; without it (or with one job) the same closures run in order
//! on the calling thread. Results always come back in input order, so
//! callers get identical output regardless of the job count.

/// Worker count to use; `0` means the machine's available parallelism.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Jobs(pub usize);

impl Jobs {
    pub const SEQUENTIAL: Jobs = Jobs(1);

    pub fn resolve(self) -> usize {
        if self.0 > 0 {
            self.0
        } else {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        }
    }

    pub fn is_sequential(self) -> bool {
        !cfg!(feature = "parallel") || self.resolve() == 1
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(items: &[T], jobs: Jobs, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if !jobs.is_sequential() {
        use rayon::prelude::*;
        match rayon::ThreadPoolBuilder::new().num_threads(jobs.resolve()).build() {
            Ok(pool) => return pool.install(|| items.par_iter().map(&f).collect()),
            Err(_) => return items.par_iter().map(&f).collect(),
        }
    }
    let _ = jobs;
    items.iter().map(f).collect()
}
