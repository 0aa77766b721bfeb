//! Chunked execution over an index range, in parallel (rayon) or
//! sequentially. Results always come back in chunk order.

use std::ops::Range;

/// Indices handled per work item.
pub const CHUNK: u64 = 512;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses the current rayon pool.
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
    #[cfg(not(feature = "parallel"))]
    #[default]
    SequentialFallback,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        #[cfg(feature = "parallel")]
        {
            self == Execution::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            false
        }
    }
}

fn chunks(total: u64) -> Vec<Range<u64>> {
    (0..total.div_ceil(CHUNK)).map(|c| c * CHUNK..((c + 1) * CHUNK).min(total)).collect()
}

/// Applies `f` to contiguous sub-ranges of `0..total`, returning results in
/// range order.
pub fn map_chunks<T, F>(total: u64, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync + Send,
{
    let ranges = chunks(total);
    if exec.is_parallel() {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            return ranges.into_par_iter().map(f).collect();
        }
    }
    ranges.into_iter().map(f).collect()
}
