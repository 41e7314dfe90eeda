//! Data-parallel map over independent jobs, with a sequential fallback when
//! the `parallel` feature is off. Results always come back in input order.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parallelism {
    Sequential,
    /// Worker threads; `0` lets the pool decide.
    Threads(usize),
    #[default]
    Auto,
}

impl Parallelism {
    pub fn from_jobs(jobs: Option<usize>) -> Self {
        match jobs {
            None => Parallelism::Auto,
            Some(1) => Parallelism::Sequential,
            Some(k) => Parallelism::Threads(k),
        }
    }
}

pub fn map_indexed<T, U, F>(items: &[T], mode: Parallelism, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(usize, &T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let run = || items.par_iter().enumerate().map(|(i, x)| f(i, x)).collect();
        match mode {
            Parallelism::Sequential => {}
            Parallelism::Auto | Parallelism::Threads(0) => return run(),
            Parallelism::Threads(k) => {
                if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(k).build() {
                    return pool.install(run);
                }
            }
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = mode;
    items.iter().enumerate().map(|(i, x)| f(i, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let xs: Vec<u64> = (0..100).collect();
        for mode in [
            Parallelism::Sequential,
            Parallelism::Threads(3),
            Parallelism::Auto,
        ] {
            let ys = map_indexed(&xs, mode, |i, x| i as u64 * 1000 + x * x);
            assert_eq!(ys[7], 7049);
            assert_eq!(ys.len(), 100);
        }
        assert_eq!(Parallelism::from_jobs(Some(1)), Parallelism::Sequential);
    }
}
