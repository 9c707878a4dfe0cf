//! Execution strategy for cohort-level fan-out.
//!
//! All helpers return results in input order, so the output never depends on
//! how work was scheduled.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    Sequential,
    /// Rayon's global pool. Without the `parallel` feature this behaves as
    /// [`Parallelism::Sequential`].
    #[default]
    Parallel,
}

impl Parallelism {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }

    /// Maps `f` over `0..n`, preserving index order.
    pub fn map_range<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Maps `f` over a slice, preserving element order.
    pub fn map_slice<'a, S, T, F>(self, items: &'a [S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&'a S) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_on_order() {
        let seq = Parallelism::Sequential.map_range(1000, |i| i * i);
        let par = Parallelism::Parallel.map_range(1000, |i| i * i);
        assert_eq!(seq, par);
        let v: Vec<u32> = (0..500).collect();
        assert_eq!(
            Parallelism::Sequential.map_slice(&v, |x| x + 1),
            Parallelism::Parallel.map_slice(&v, |x| x + 1)
        );
    }
}
