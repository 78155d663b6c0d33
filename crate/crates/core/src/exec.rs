//! Order-preserving data-parallel maps with a sequential fallback.
//!
//! With the `parallel` feature the maps run on the rayon pool unless the
//! process-wide policy is set to [`Exec::Sequential`]. Results are always
//! returned in input order, so downstream sums are reproducible.

use std::sync::atomic::{AtomicBool, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

static SEQUENTIAL: AtomicBool = AtomicBool::new(false);

pub fn set(exec: Exec) {
    SEQUENTIAL.store(exec == Exec::Sequential, Ordering::SeqCst);
}

pub fn current() -> Exec {
    if !cfg!(feature = "parallel") || SEQUENTIAL.load(Ordering::SeqCst) {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

/// Runs `f` under `exec` and restores the previous policy.
pub fn with<R>(exec: Exec, f: impl FnOnce() -> R) -> R {
    let prev = SEQUENTIAL.swap(exec == Exec::Sequential, Ordering::SeqCst);
    let out = f();
    SEQUENTIAL.store(prev, Ordering::SeqCst);
    out
}

#[cfg(feature = "parallel")]
pub fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    match current() {
        Exec::Parallel => items.par_iter().map(f).collect(),
        Exec::Sequential => items.iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Like [`map`], returning the first error in input order.
pub fn try_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> Result<R> + Sync + Send) -> Result<Vec<R>> {
    map(items, f).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_policies_agree_and_keep_order() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = with(Exec::Sequential, || map(&xs, |x| x * x));
        let b = with(Exec::Parallel, || map(&xs, |x| x * x));
        assert_eq!(a, b);
        assert_eq!(a[999], 999 * 999);
    }
}
