//! Execution strategy for the exhaustive sweeps.
//!
//! Every sweep in this crate is a map over an ordered list of independent
//! work items followed by an order-preserving merge, so the sequential and
//! the rayon-backed paths produce identical results. Without the `parallel`
//! feature, [`Exec::Parallel`] silently runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg_attr(feature = "parallel", default)]
    Parallel,
}

impl Exec {
    /// Maps every item, keeping input order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Maps every item and concatenates the outputs, keeping input order.
    pub fn flat_map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Vec<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().flat_map_iter(f).collect(),
            _ => items.iter().flat_map(f).collect(),
        }
    }

    /// First `Some` in input order. The parallel path may evaluate items past
    /// the winner but always returns the same item as the sequential path.
    pub fn find_map_first<T, R, F>(self, items: &[T], f: F) -> Option<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().find_map_first(f),
            _ => items.iter().find_map(f),
        }
    }

    pub fn all<T, F>(self, items: &[T], f: F) -> bool
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().all(f),
            _ => items.iter().all(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let items: Vec<u32> = (0..1000).collect();
        let f = |x: &u32| if x % 97 == 13 { Some(*x) } else { None };
        assert_eq!(
            Exec::Sequential.find_map_first(&items, f),
            Exec::Parallel.find_map_first(&items, f)
        );
        assert_eq!(
            Exec::Sequential.map(&items, |x| x * 3),
            Exec::Parallel.map(&items, |x| x * 3)
        );
        assert_eq!(
            Exec::Sequential.flat_map(&items, |x| vec![*x; (*x % 3) as usize]),
            Exec::Parallel.flat_map(&items, |x| vec![*x; (*x % 3) as usize])
        );
    }
}
