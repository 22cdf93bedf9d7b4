/// Selects how independent work items (lines of a 2D sweep, points of a
/// stability scan) are executed.
///
/// `Parallel` uses rayon when the `parallel` feature is enabled and silently
/// falls back to sequential execution otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Applies `f` to every chunk of `data` (each of length `chunk`), with a
/// per-worker state created by `init`.
pub(crate) fn for_each_chunk_init<T, S, I, F>(
    exec: Execution,
    data: &mut [T],
    chunk: usize,
    init: I,
    f: F,
) where
    T: Send,
    I: Fn() -> S + Send + Sync,
    F: Fn(&mut S, usize, &mut [T]) + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        data.par_chunks_mut(chunk)
            .enumerate()
            .for_each_init(&init, |state, (idx, line)| f(state, idx, line));
        return;
    }
    let _ = exec;
    let mut state = init();
    for (idx, line) in data.chunks_mut(chunk).enumerate() {
        f(&mut state, idx, line);
    }
}

/// Maps `f` over `0..n` and collects the results in index order.
pub(crate) fn map_indices<R, F>(exec: Execution, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}
