//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) work fans out over rayon unless the
//! process-wide mode is switched to sequential; without the feature every
//! helper runs sequentially.

use std::sync::atomic::{AtomicBool, Ordering};

static SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Name of the environment variable that caps the worker thread count.
pub const THREADS_ENV: &str = "LOOPHOM_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Parallel,
    Sequential,
}

/// Selects the execution mode for subsequent calls (used by benches and the CLI).
pub fn set_mode(mode: Mode) {
    SEQUENTIAL.store(mode == Mode::Sequential, Ordering::SeqCst);
}

pub fn mode() -> Mode {
    if cfg!(feature = "parallel") && !SEQUENTIAL.load(Ordering::SeqCst) {
        Mode::Parallel
    } else {
        Mode::Sequential
    }
}

/// Reads `LOOPHOM_THREADS` and configures the global pool. `1` forces
/// sequential execution. Returns the effective thread count.
pub fn configure_from_env() -> usize {
    let requested = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok());
    if requested == Some(1) {
        set_mode(Mode::Sequential);
        return 1;
    }
    #[cfg(feature = "parallel")]
    {
        if let Some(n) = requested.filter(|n| *n > 1) {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if mode() == Mode::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}
