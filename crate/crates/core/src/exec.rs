//! Execution strategy for the data-parallel loops (matrix construction,
//! exhaustive identity sweeps, oracle comparisons).
//!
//! With the `parallel` feature (on by default) `Strategy::Parallel` runs on
//! the rayon global pool. Without it every strategy runs sequentially. Output
//! order never depends on the strategy.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    /// `f(i)` for every `i in 0..len`, collected in index order.
    pub fn map_range<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Strategy::Parallel => (0..len).into_par_iter().map(f).collect(),
            _ => (0..len).map(f).collect(),
        }
    }

    /// First `Some` in index order, or `None`. The parallel path may evaluate
    /// extra indices but always returns the lowest-index hit.
    pub fn find_first<T, F>(self, len: usize, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(usize) -> Option<T> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Strategy::Parallel => (0..len).into_par_iter().find_map_first(f),
            _ => (0..len).find_map(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let seq = Strategy::Sequential.map_range(1000, |i| i * i);
        let par = Strategy::Parallel.map_range(1000, |i| i * i);
        assert_eq!(seq, par);
        let pick = |i: usize| (i % 97 == 96).then_some(i);
        assert_eq!(Strategy::Sequential.find_first(1000, pick), Some(96));
        assert_eq!(Strategy::Parallel.find_first(1000, pick), Some(96));
        assert_eq!(Strategy::Parallel.find_first(10, pick), None);
    }
}
