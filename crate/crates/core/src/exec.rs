//! Execution mode for the data-parallel loops (CRT residues, prime sweeps,
//! parameter searches). Without the `parallel` feature every mode runs
//! sequentially; results never depend on the mode.

/// How independent work items are scheduled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    /// Fan out over the rayon pool when the `parallel` feature is enabled.
    #[default]
    Parallel,
    Sequential,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Maps `f` over `items`, preserving input order in the output.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Returns the first item (in input order) for which `f` yields `Some`.
pub fn find_first<T, R, F>(exec: Execution, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).find_first(|r| r.is_some()).flatten();
    }
    let _ = exec;
    items.iter().find_map(f)
}

/// Batch width used by searches that stop early: large enough to keep the
/// pool busy, small enough not to waste much work past the answer.
pub(crate) fn batch_width(exec: Execution) -> usize {
    if exec.is_parallel() {
        #[cfg(feature = "parallel")]
        return (rayon::current_num_threads() * 2).max(4);
    }
    1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..100).collect();
        let a = map(Execution::Parallel, &xs, |x| x * x);
        let b = map(Execution::Sequential, &xs, |x| x * x);
        assert_eq!(a, b);
        let fa = find_first(Execution::Parallel, &xs, |&x| (x > 10 && x % 7 == 0).then_some(x));
        let fb = find_first(Execution::Sequential, &xs, |&x| (x > 10 && x % 7 == 0).then_some(x));
        assert_eq!(fa, Some(14));
        assert_eq!(fa, fb);
    }
}
