//! Independent queries run over a batch. With the `parallel` feature the
//! batch is spread over the rayon pool; without it, items run in order.
//! Results always come back in input order.

use std::sync::Arc;

use crate::completion::{bouquet_from_words, complete, BouquetError, CompletionResult};
use crate::complex::CubeComplex;
use crate::group::{membership, GroupError, Subgroup};
use crate::word::CubicalWord;

pub fn map_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_par<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

/// [`map_par`] when built with `parallel`, else [`map_seq`].
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_par(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_seq(items, f)
    }
}

/// Complete the bouquet of each generating set.
pub fn complete_all(
    y: &Arc<CubeComplex>,
    subgroups: &[Vec<CubicalWord>],
    budget: usize,
) -> Vec<Result<CompletionResult, BouquetError>> {
    map(subgroups, |words| bouquet_from_words(y.clone(), words).map(|b| complete(b.map, budget)))
}

pub fn membership_all(h: &Subgroup, queries: &[CubicalWord]) -> Vec<Result<bool, GroupError>> {
    map(queries, |g| membership(h, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{DirectedEdge, EdgeId, VertexId};
    use crate::fixtures;

    #[test]
    fn order_is_kept() {
        let xs: Vec<u64> = (0..1000).collect();
        let f = |x: &u64| x * x + 1;
        assert_eq!(map(&xs, f), map_seq(&xs, f));
    }

    #[test]
    fn batches_match_single_runs() {
        let y = Arc::new(fixtures::rose(2));
        let a = DirectedEdge::forward(EdgeId(0));
        let b = DirectedEdge::forward(EdgeId(1));
        let w = |l: &[DirectedEdge]| CubicalWord::new(VertexId(0), l.to_vec());
        let sets = vec![vec![w(&[a, a])], vec![w(&[a]), w(&[b, a, b.reversed()])], vec![]];
        let all = complete_all(&y, &sets, 1000);
        for (set, r) in sets.iter().zip(&all) {
            let one = complete(bouquet_from_words(y.clone(), set).unwrap().map, 1000);
            assert_eq!(r.as_ref().unwrap().complex().to_raw(), one.complex().to_raw());
        }
        let h = Subgroup::complete(y, vec![w(&[a, a])], 1000).unwrap();
        let answers = membership_all(&h, &[w(&[a]), w(&[a, a, a, a]), w(&[b])]);
        assert_eq!(answers, vec![Ok(false), Ok(true), Ok(false)]);
    }
}
