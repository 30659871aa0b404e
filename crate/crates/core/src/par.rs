//! Execution mode for the data-parallel loops (subset sweeps, coset
//! enumeration, randomized trials). Every helper returns results in index
//! order so parallel and sequential runs are bit-identical.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How the enumeration-heavy loops run. `Parallel` degrades to sequential
/// when the crate is built without the `parallel` feature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Enumeration caps plus execution mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// Largest number of vectors a single enumeration may visit.
    pub max_enum: u64,
    /// Largest n for which all 2^n subsets may be swept.
    pub max_subset_positions: usize,
    pub exec: Exec,
}

pub const DEFAULT_MAX_ENUM: u64 = 1 << 24;
pub const DEFAULT_MAX_SUBSET_POSITIONS: usize = 24;
pub const MAX_ENUM_ENV: &str = "SYMPSHARE_MAX_ENUM";

impl Default for Config {
    fn default() -> Self {
        Config {
            max_enum: DEFAULT_MAX_ENUM,
            max_subset_positions: DEFAULT_MAX_SUBSET_POSITIONS,
            exec: Exec::default(),
        }
    }
}

impl Config {
    /// Defaults, with `SYMPSHARE_MAX_ENUM` overriding the enumeration cap.
    pub fn from_env() -> Self {
        let mut cfg = Config::default();
        if let Some(cap) = std::env::var(MAX_ENUM_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            cfg.max_enum = cap;
        }
        cfg
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }
}

/// Ordered map over a slice.
pub fn map_slice<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Ordered map over an index range.
pub fn map_range<R, F>(exec: Exec, range: Range<u64>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return range.into_par_iter().map(f).collect();
    }
    let _ = exec;
    range.map(f).collect()
}

/// First (lowest-index) `Some` produced by `f` over the range.
pub fn find_first<R, F>(exec: Exec, range: Range<u64>, f: F) -> Option<R>
where
    R: Send,
    F: Fn(u64) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return range.into_par_iter().find_map_first(f);
    }
    let _ = exec;
    range.into_iter().find_map(f)
}

/// First item of the slice (in order) for which `f` yields `Some`.
pub fn find_first_in<T, R, F>(exec: Exec, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().find_map_first(f);
    }
    let _ = exec;
    items.iter().find_map(f)
}
