//! Execution strategy for the data-parallel scans (subspace enumeration,
//! hom-space searches, corpus sweeps).
//!
//! With the `parallel` feature disabled, [`Exec::Parallel`] runs sequentially.
//! Results never depend on the strategy: searches report the lowest matching
//! index and collections keep input order.

use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Smallest `i` in `0..n` with `f(i)` returning `Some`, together with the value.
    pub fn find_first<T, F>(self, n: u64, f: F) -> Option<(u64, T)>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n)
                .into_par_iter()
                .filter_map(|i| f(i).map(|t| (i, t)))
                .find_first(|_| true);
        }
        (0..n).find_map(|i| f(i).map(|t| (i, t)))
    }

    /// `f` applied to every index in `0..n`, keeping `Some` results in index order.
    pub fn filter_map_range<T, F>(self, n: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().filter_map(f).collect();
        }
        (0..n).filter_map(f).collect()
    }

    /// Order-preserving map over a slice.
    pub fn map<S, T, F>(self, items: &[S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&S) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }
}

/// Search and enumeration caps shared by the cap-sensitive operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest ring (number of elements) that may be enumerated element by element.
    pub max_elements: u64,
    /// Largest number of subspaces scanned when enumerating ideals.
    pub subspace_cap: u64,
    /// Largest hom space (number of elements) scanned by isomorphism and witness searches.
    pub search_cap: u64,
    pub exec: Exec,
}

pub const DEFAULT_SUBSPACE_CAP: u64 = 1_000_000;
pub const DEFAULT_SEARCH_CAP: u64 = 1 << 16;
pub const DEFAULT_MAX_ELEMENTS: u64 = 1 << 16;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: DEFAULT_MAX_ELEMENTS,
            subspace_cap: DEFAULT_SUBSPACE_CAP,
            search_cap: DEFAULT_SEARCH_CAP,
            exec: Exec::default(),
        }
    }
}

impl Limits {
    pub fn sequential() -> Self {
        Limits {
            exec: Exec::Sequential,
            ..Limits::default()
        }
    }

    pub fn with_exec(self, exec: Exec) -> Self {
        Limits { exec, ..self }
    }
}

/// `base^exp` if it does not exceed `cap`.
pub(crate) fn checked_pow_within(base: u64, exp: usize, cap: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
        if acc > cap {
            return None;
        }
    }
    Some(acc)
}
