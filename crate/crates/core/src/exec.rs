//! Search limits and the data-parallel execution switch.
//!
//! Every enumeration takes a [`Limits`]. With the `parallel` feature enabled
//! and [`Execution::Parallel`] selected, inner loops run on the rayon pool;
//! otherwise the same closures run sequentially. Results are always collected
//! in index order, so output never depends on the execution mode.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest degree accepted by `symmetric_group`.
    pub max_symmetric_degree: usize,
    /// Largest group order for which the full subgroup list is computed.
    pub max_subgroup_order: usize,
    /// Largest number of candidate maps a brute-force search may visit.
    pub map_budget: u128,
    /// Largest number of subgroup closures a complement search may perform.
    pub closure_budget: usize,
    pub execution: Execution,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_symmetric_degree: 8,
            max_subgroup_order: 384,
            map_budget: 10_000_000,
            closure_budget: 2_000_000,
            execution: Execution::Parallel,
        }
    }
}

impl Limits {
    pub fn sequential() -> Self {
        Limits {
            execution: Execution::Sequential,
            ..Limits::default()
        }
    }

    pub fn with_map_budget(mut self, budget: u128) -> Self {
        self.map_budget = budget;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    #[cfg(feature = "parallel")]
    pub(crate) fn parallel(&self) -> bool {
        cfg!(feature = "parallel") && self.execution == Execution::Parallel
    }
}

/// Maps `f` over `0..n`, returning results in index order.
pub(crate) fn map_range<T, F>(limits: &Limits, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if limits.parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = limits;
    (0..n).map(f).collect()
}

/// Maps `f` over a slice, returning results in slice order.
pub(crate) fn map_slice<S, T, F>(limits: &Limits, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if limits.parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = limits;
    items.iter().map(f).collect()
}
