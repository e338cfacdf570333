//! Linear orders on the edge set, and the closed rank intervals that serve
//! as convex hulls.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::graph::{EdgeId, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("order is missing edge `{0}`")]
    MissingEdge(EdgeId),
    #[error("edge `{0}` appears more than once in the order")]
    DuplicateEdge(EdgeId),
    #[error("edge `{0}` does not belong to the graph")]
    ForeignEdge(EdgeId),
    #[error("rank {rank} outside 1..={max}")]
    RankOutOfRange { rank: usize, max: usize },
}

/// A closed interval of ranks, or the empty interval.
///
/// Ranks start at 1. `Empty` is a value of its own rather than a degenerate
/// span so that interval arithmetic never has to special-case sentinels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Interval {
    #[default]
    Empty,
    Span {
        lo: usize,
        hi: usize,
    },
}

impl Interval {
    pub fn span(lo: usize, hi: usize) -> Self {
        assert!(lo <= hi, "interval bounds out of order: {lo} > {hi}");
        Interval::Span { lo, hi }
    }

    pub fn point(r: usize) -> Self {
        Interval::Span { lo: r, hi: r }
    }

    /// Smallest interval containing every rank yielded.
    pub fn hull_of(ranks: impl IntoIterator<Item = usize>) -> Self {
        ranks.into_iter().fold(Interval::Empty, |iv, r| match iv {
            Interval::Empty => Interval::point(r),
            Interval::Span { lo, hi } => Interval::Span {
                lo: lo.min(r),
                hi: hi.max(r),
            },
        })
    }

    pub fn is_empty(self) -> bool {
        matches!(self, Interval::Empty)
    }

    pub fn bounds(self) -> Option<(usize, usize)> {
        match self {
            Interval::Empty => None,
            Interval::Span { lo, hi } => Some((lo, hi)),
        }
    }

    pub fn len(self) -> usize {
        self.bounds().map_or(0, |(lo, hi)| hi - lo + 1)
    }

    pub fn contains(self, rank: usize) -> bool {
        self.bounds().is_some_and(|(lo, hi)| lo <= rank && rank <= hi)
    }

    /// Set inclusion; the empty interval is inside everything.
    pub fn is_subset(self, other: Interval) -> bool {
        match (self.bounds(), other.bounds()) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some((a, b)), Some((c, d))) => c <= a && b <= d,
        }
    }

    /// No shared rank.
    pub fn disjoint(self, other: Interval) -> bool {
        match (self.bounds(), other.bounds()) {
            (Some((a, b)), Some((c, d))) => b < c || d < a,
            _ => true,
        }
    }

    /// The union as an interval, or `None` when the union of the two rank
    /// sets has a gap.
    pub fn union_exact(self, other: Interval) -> Option<Interval> {
        match (self.bounds(), other.bounds()) {
            (None, _) => Some(other),
            (_, None) => Some(self),
            (Some((a, b)), Some((c, d))) => {
                // Touching or overlapping spans merge; otherwise a gap remains.
                if b + 1 < c || d + 1 < a {
                    None
                } else {
                    Some(Interval::span(a.min(c), b.max(d)))
                }
            }
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::Empty => f.write_str("[]"),
            Interval::Span { lo, hi } => write!(f, "[{lo},{hi}]"),
        }
    }
}

/// A linear order on all edges of a graph, stored as a bijection between
/// edge indices and ranks `1..=m`.
#[derive(Clone)]
pub struct EdgeOrder<'g> {
    graph: &'g Graph,
    seq: Vec<usize>,
    rank: Vec<usize>,
}

impl PartialEq for EdgeOrder<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.graph, other.graph) && self.seq == other.seq
    }
}

impl Eq for EdgeOrder<'_> {}

impl fmt::Debug for EdgeOrder<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.ids()).finish()
    }
}

/// Builds the order in which `sequence[i]` gets rank `i + 1`.
pub fn make_order<'g, I>(g: &'g Graph, sequence: I) -> Result<EdgeOrder<'g>, OrderError>
where
    I: IntoIterator,
    I::Item: AsRef<str>,
{
    let mut rank = vec![0usize; g.edge_count()];
    let mut seq = Vec::with_capacity(g.edge_count());
    for id in sequence {
        let id = id.as_ref();
        let e = g
            .edge_index(id)
            .map_err(|_| OrderError::ForeignEdge(id.into()))?;
        if rank[e] != 0 {
            return Err(OrderError::DuplicateEdge(id.into()));
        }
        seq.push(e);
        rank[e] = seq.len();
    }
    if let Some(e) = rank.iter().position(|&r| r == 0) {
        return Err(OrderError::MissingEdge(g.edge_id(e).clone()));
    }
    Ok(EdgeOrder {
        graph: g,
        seq,
        rank,
    })
}

impl<'g> EdgeOrder<'g> {
    /// Index form of [`make_order`]. The caller guarantees `seq` is a
    /// permutation of `0..m`.
    pub fn from_indices(g: &'g Graph, seq: Vec<usize>) -> Self {
        debug_assert_eq!(seq.len(), g.edge_count());
        let mut rank = vec![0usize; seq.len()];
        for (i, &e) in seq.iter().enumerate() {
            debug_assert_eq!(rank[e], 0, "edge index repeated");
            rank[e] = i + 1;
        }
        EdgeOrder {
            graph: g,
            seq,
            rank,
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Edge indices in ascending rank.
    pub fn sequence(&self) -> &[usize] {
        &self.seq
    }

    /// Rank (1-based) of edge index `e`.
    pub fn rank_ix(&self, e: usize) -> usize {
        self.rank[e]
    }

    /// Edge index holding rank `r`.
    pub fn at_rank(&self, r: usize) -> usize {
        self.seq[r - 1]
    }

    pub fn rank(&self, e: &str) -> Result<usize, OrderError> {
        self.graph
            .edge_index(e)
            .map(|e| self.rank[e])
            .map_err(|_| OrderError::ForeignEdge(e.into()))
    }

    pub fn ids(&self) -> impl Iterator<Item = &'g EdgeId> + '_ {
        self.seq.iter().map(|&e| self.graph.edge_id(e))
    }

    pub fn to_ids(&self) -> Vec<EdgeId> {
        self.ids().cloned().collect()
    }

    /// Hull of a set of edge indices.
    pub fn hull_ix(&self, xs: &[usize]) -> Interval {
        Interval::hull_of(xs.iter().map(|&e| self.rank[e]))
    }

    /// Convex hull of `xs` as a rank interval; empty for an empty set.
    pub fn hull<I>(&self, xs: I) -> Result<Interval, OrderError>
    where
        I: IntoIterator,
        I::Item: AsRef<str>,
    {
        let mut ranks = Vec::new();
        for x in xs {
            ranks.push(self.rank(x.as_ref())?);
        }
        Ok(Interval::hull_of(ranks))
    }

    /// Every edge whose rank lies in `iv`.
    pub fn hull_members(&self, iv: Interval) -> Result<BTreeSet<EdgeId>, OrderError> {
        let Some((lo, hi)) = iv.bounds() else {
            return Ok(BTreeSet::new());
        };
        for r in [lo, hi] {
            if r == 0 || r > self.len() {
                return Err(OrderError::RankOutOfRange {
                    rank: r,
                    max: self.len(),
                });
            }
        }
        Ok((lo..=hi)
            .map(|r| self.graph.edge_id(self.at_rank(r)).clone())
            .collect())
    }

    /// Edges of both orders, `self` first. The graphs must be disjoint and
    /// `union` must be their disjoint union.
    pub fn concat<'u>(
        &self,
        other: &EdgeOrder<'_>,
        union: &'u Graph,
    ) -> Result<EdgeOrder<'u>, OrderError> {
        make_order(union, self.ids().chain(other.ids()))
    }
}
