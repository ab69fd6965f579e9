//! Explicit worker-count control. With the `parallel` feature, `jobs > 1`
//! runs work on a dedicated rayon pool of that size; otherwise everything
//! runs on the calling thread. Results never depend on the job count.

#[cfg(feature = "parallel")]
use std::collections::HashMap;
#[cfg(feature = "parallel")]
use std::sync::{Arc, Mutex, OnceLock};

/// Number of workers to use for data-parallel loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Parallelism {
    jobs: usize,
}

impl Default for Parallelism {
    fn default() -> Self {
        Parallelism::sequential()
    }
}

#[cfg(feature = "parallel")]
fn pool(jobs: usize) -> Arc<rayon::ThreadPool> {
    static POOLS: OnceLock<Mutex<HashMap<usize, Arc<rayon::ThreadPool>>>> = OnceLock::new();
    let mut pools = POOLS
        .get_or_init(Default::default)
        .lock()
        .expect("pool registry");
    pools
        .entry(jobs)
        .or_insert_with(|| {
            Arc::new(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .thread_name(|i| format!("polyslice-{i}"))
                    .build()
                    .expect("thread pool"),
            )
        })
        .clone()
}

impl Parallelism {
    pub fn sequential() -> Self {
        Parallelism { jobs: 1 }
    }

    /// `jobs` workers; zero is treated as one.
    pub fn new(jobs: usize) -> Self {
        Parallelism { jobs: jobs.max(1) }
    }

    /// One worker per available core.
    pub fn available() -> Self {
        Parallelism::new(std::thread::available_parallelism().map_or(1, |n| n.get()))
    }

    pub fn jobs(&self) -> usize {
        self.jobs
    }

    /// Whether work actually fans out (requires the `parallel` feature).
    pub fn is_parallel(&self) -> bool {
        cfg!(feature = "parallel") && self.jobs > 1
    }

    /// Order-preserving map.
    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() && items.len() > 1 {
            use rayon::prelude::*;
            return pool(self.jobs).install(|| items.par_iter().map(f).collect());
        }
        items.iter().map(f).collect()
    }

    /// Order-preserving map over `0..n`.
    pub fn map_range<R, F>(&self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() && n > 1 {
            use rayon::prelude::*;
            return pool(self.jobs).install(|| (0..n).into_par_iter().map(f).collect());
        }
        (0..n).map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order_for_any_job_count() {
        let items: Vec<u64> = (0..500).collect();
        let seq = Parallelism::sequential().map(&items, |x| x * x);
        for jobs in [2, 4] {
            assert_eq!(Parallelism::new(jobs).map(&items, |x| x * x), seq);
            assert_eq!(
                Parallelism::new(jobs).map_range(500, |x| (x * x) as u64),
                seq
            );
        }
        assert_eq!(Parallelism::new(0).jobs(), 1);
    }
}
