//! Grid maps that run on rayon when the `parallel` feature is on and fall
//! back to a plain loop otherwise. Results always come back in index order
//! and the reported error is the one at the smallest index, so output never
//! depends on scheduling.

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether `Parallel` actually runs in parallel in this build.
    pub const PARALLEL_AVAILABLE: bool = cfg!(feature = "parallel");
}

pub fn try_map_indexed<T, F>(exec: Execution, n: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..n).map(f).collect(),
        Execution::Parallel => parallel_map(n, f),
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, F>(n: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    use rayon::prelude::*;
    let results: Vec<Result<T>> = (0..n).into_par_iter().map(f).collect();
    results.into_iter().collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, F>(n: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn both_modes_agree_and_report_the_first_error() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let v = try_map_indexed(exec, 1000, |i| Ok(i * i)).unwrap();
            assert_eq!(v[999], 999 * 999);
            let e = try_map_indexed(exec, 1000, |i| {
                if i % 300 == 299 {
                    Err(Error::Domain(i.to_string()))
                } else {
                    Ok(i)
                }
            });
            assert_eq!(e, Err(Error::Domain("299".into())));
        }
    }
}
