//! Deciding upward planarity by searching for an upward planar order.
//!
//! The search builds the order one rank at a time, only ever placing an edge
//! whose reachability predecessors are already placed, so every leaf is a
//! linear extension of `→`. Edges are tried in ascending id order, which
//! makes the leaves come out in lexicographic order. Each complete candidate
//! is run through the full checker; the pruning below only cuts branches
//! whose every completion is already known to fail.
//!
//! Hull form:
//! * once the last in-edge of a processive vertex is placed, the next edge
//!   must be one of its out-edges;
//! * in-sets (grouped by target) and out-sets (grouped by source) may not
//!   cross: placing `x` of group `A` is refused when an edge ranked between
//!   the first member of `A` and `x` belongs to a group that is unfinished
//!   or started before `A`.
//!
//! Betweenness form: when `x` is placed, the prefix is refused if some triple
//! `e1 ≺ e ≺ e2` of adjacent `e1, e2` can no longer satisfy its condition,
//! looking at triples closed by `x` and at triples with `x` in the middle
//! whose closing edge is still unplaced (an unplaced member of the same
//! group must come later). A containment fails for good once a member of the
//! tested set lies outside the part of the hull the prefix already fixes.

use std::ops::ControlFlow;

use itertools::Itertools;
use rand::seq::SliceRandom;
use thiserror::Error;

use crate::generate::rng_from_seed;
use crate::graph::{Adjacency, EdgeId, Graph, GraphError};
use crate::order::EdgeOrder;
use crate::validate::{is_valid, Definition, Verdict};

pub const DEFAULT_EXHAUSTIVE_CAP: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
    #[error("{edges} edges exceed the exhaustive cap of {cap}")]
    TooLargeForExhaustive { edges: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchConfig {
    pub definition: Definition,
    /// Stop after this many orders (enumeration only).
    pub limit: Option<usize>,
    /// Maximum number of search-tree nodes (edge placements).
    pub node_budget: Option<u64>,
}

impl SearchConfig {
    pub fn new(definition: Definition) -> Self {
        SearchConfig {
            definition,
            ..Self::default()
        }
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn with_budget(mut self, nodes: u64) -> Self {
        self.node_budget = Some(nodes);
        self
    }
}

struct Search<'g> {
    g: &'g Graph,
    def: Definition,
    budget: Option<u64>,
    nodes: u64,
    seq: Vec<usize>,
    rank: Vec<usize>,
    pending_in: Vec<usize>,
    pending_out: Vec<usize>,
    first_in: Vec<usize>,
    first_out: Vec<usize>,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, cfg: &SearchConfig) -> Result<Self, SearchError> {
        g.ensure_acyclic()?;
        let n = g.vertex_count();
        Ok(Search {
            g,
            def: cfg.definition,
            budget: cfg.node_budget,
            nodes: 0,
            seq: Vec::with_capacity(g.edge_count()),
            rank: vec![0; g.edge_count()],
            pending_in: (0..n).map(|v| g.in_edges(v).len()).collect(),
            pending_out: (0..n).map(|v| g.out_edges(v).len()).collect(),
            first_in: vec![0; n],
            first_out: vec![0; n],
        })
    }

    fn hull_pruning(&self) -> bool {
        matches!(self.def, Definition::Hull | Definition::Both)
    }

    fn betweenness_pruning(&self) -> bool {
        matches!(self.def, Definition::Betweenness | Definition::Both)
    }

    fn place(&mut self, e: usize) {
        self.seq.push(e);
        let r = self.seq.len();
        self.rank[e] = r;
        let (s, t) = (self.g.src_of(e), self.g.tgt_of(e));
        if self.first_in[t] == 0 {
            self.first_in[t] = r;
        }
        if self.first_out[s] == 0 {
            self.first_out[s] = r;
        }
        self.pending_in[t] -= 1;
        self.pending_out[s] -= 1;
    }

    fn unplace(&mut self) {
        let e = self.seq.pop().expect("nonempty prefix");
        let r = self.rank[e];
        self.rank[e] = 0;
        let (s, t) = (self.g.src_of(e), self.g.tgt_of(e));
        self.pending_in[t] += 1;
        self.pending_out[s] += 1;
        if self.first_in[t] == r {
            self.first_in[t] = 0;
        }
        if self.first_out[s] == r {
            self.first_out[s] = 0;
        }
    }

    /// Vertex whose out-edges must come next, if any.
    fn forced(&self) -> Option<usize> {
        if !self.hull_pruning() {
            return None;
        }
        let &last = self.seq.last()?;
        let v = self.g.tgt_of(last);
        (self.pending_in[v] == 0 && !self.g.out_edges(v).is_empty()).then_some(v)
    }

    /// Non-crossing test for the newest edge, for one grouping.
    fn crosses(&self, group_of: impl Fn(usize) -> usize, first: &[usize], pending: &[usize]) -> bool {
        let r = self.seq.len();
        let x = self.seq[r - 1];
        let a = group_of(x);
        let f = first[a];
        if f == r {
            return false;
        }
        self.seq[f..r - 1].iter().any(|&y| {
            let b = group_of(y);
            b != a && (pending[b] > 0 || first[b] < f)
        })
    }

    /// Bounds of the final hull of a group as far as the prefix fixes them:
    /// the first rank once a member is placed, the last once all are.
    fn hull_bounds(&self, members: &[usize], first: usize, pending: usize) -> (Option<usize>, Option<usize>) {
        let lo = (first != 0).then_some(first);
        let hi = (pending == 0).then(|| members.iter().map(|&w| self.rank[w]).max().unwrap_or(0));
        (lo, hi)
    }

    /// `true` when `set` can no longer lie inside a hull with the given
    /// bounds. An unknown lower bound means the hull starts after the prefix.
    fn cannot_fit(&self, set: &[usize], (lo, hi): (Option<usize>, Option<usize>)) -> bool {
        set.iter().any(|&w| match self.rank[w] {
            0 => hi.is_some(),
            rw => lo.is_none_or(|lo| rw < lo) || hi.is_some_and(|hi| rw > hi),
        })
    }

    fn in_hull(&self, v: usize) -> (Option<usize>, Option<usize>) {
        self.hull_bounds(self.g.in_edges(v), self.first_in[v], self.pending_in[v])
    }

    fn out_hull(&self, v: usize) -> (Option<usize>, Option<usize>) {
        self.hull_bounds(self.g.out_edges(v), self.first_out[v], self.pending_out[v])
    }

    /// Whether the condition attached to `case` at `v` already fails for
    /// middle edge `e` in every completion of the prefix.
    fn middle_dead(&self, case: Adjacency, v: usize, e: usize) -> bool {
        let g = self.g;
        let in_dead = || self.cannot_fit(g.in_edges(g.tgt_of(e)), self.in_hull(v));
        let out_dead = || self.cannot_fit(g.out_edges(g.src_of(e)), self.out_hull(v));
        match case {
            Adjacency::TT => in_dead(),
            Adjacency::SS => out_dead(),
            Adjacency::TS => in_dead() && out_dead(),
            Adjacency::ST => false,
        }
    }

    fn betweenness_dead(&self) -> bool {
        let g = self.g;
        let r = self.seq.len();
        let x = self.seq[r - 1];
        // x closes triples e1 ≺ e ≺ x.
        for i in 0..r.saturating_sub(2) {
            let e1 = self.seq[i];
            for (case, v) in g.adjacency_ix(e1, x) {
                if self.seq[i + 1..r - 1].iter().any(|&e| self.middle_dead(case, v, e)) {
                    return true;
                }
            }
        }
        // x sits between a placed edge and an edge still to come.
        let started = |first: usize| first != 0 && first < r;
        (0..g.vertex_count()).any(|v| {
            (started(self.first_in[v])
                && self.pending_in[v] > 0
                && self.middle_dead(Adjacency::TT, v, x))
                || (started(self.first_out[v])
                    && self.pending_out[v] > 0
                    && self.middle_dead(Adjacency::SS, v, x))
                || (started(self.first_in[v])
                    && self.pending_out[v] > 0
                    && self.middle_dead(Adjacency::TS, v, x))
        })
    }

    fn prefix_dead(&self) -> bool {
        let g = self.g;
        if self.hull_pruning()
            && (self.crosses(|e| g.tgt_of(e), &self.first_in, &self.pending_in)
                || self.crosses(|e| g.src_of(e), &self.first_out, &self.pending_out))
        {
            return true;
        }
        self.betweenness_pruning() && self.betweenness_dead()
    }

    fn run<F>(&mut self, visit: &mut F) -> Result<ControlFlow<()>, SearchError>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let m = self.g.edge_count();
        if self.seq.len() == m {
            let ord = EdgeOrder::from_indices(self.g, self.seq.clone());
            if is_valid(&ord, self.def)? {
                return Ok(visit(&self.seq));
            }
            return Ok(ControlFlow::Continue(()));
        }
        let forced = self.forced();
        for e in 0..m {
            let s = self.g.src_of(e);
            if self.rank[e] != 0 || self.pending_in[s] != 0 || forced.is_some_and(|v| v != s) {
                continue;
            }
            self.nodes += 1;
            if let Some(b) = self.budget {
                if self.nodes > b {
                    return Err(SearchError::BudgetExhausted(b));
                }
            }
            self.place(e);
            let flow = if self.prefix_dead() {
                Ok(ControlFlow::Continue(()))
            } else {
                self.run(visit)
            };
            self.unplace();
            if flow?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Visits every valid order in lexicographic order of edge-id sequences.
fn search<F>(g: &Graph, cfg: &SearchConfig, mut visit: F) -> Result<(), SearchError>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let mut s = Search::new(g, cfg)?;
    let _ = s.run(&mut visit)?;
    Ok(())
}

/// Lexicographically least valid order, or `None` when the graph has no
/// upward planar order.
pub fn find_upo<'g>(g: &'g Graph, cfg: &SearchConfig) -> Result<Option<EdgeOrder<'g>>, SearchError> {
    let mut found = None;
    search(g, cfg, |seq| {
        found = Some(seq.to_vec());
        ControlFlow::Break(())
    })?;
    Ok(found.map(|seq| EdgeOrder::from_indices(g, seq)))
}

/// All valid orders in lexicographic order, truncated at `cfg.limit`.
pub fn enumerate_upos<'g>(g: &'g Graph, cfg: &SearchConfig) -> Result<Vec<EdgeOrder<'g>>, SearchError> {
    let mut out = Vec::new();
    if cfg.limit == Some(0) {
        return Ok(out);
    }
    search(g, cfg, |seq| {
        out.push(EdgeOrder::from_indices(g, seq.to_vec()));
        if cfg.limit.is_some_and(|l| out.len() >= l) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(out)
}

/// Number of upward planar orders (hull form), without materialising them.
pub fn count_upos(g: &Graph) -> Result<u64, SearchError> {
    let mut n = 0u64;
    search(g, &SearchConfig::default(), |_| {
        n += 1;
        ControlFlow::Continue(())
    })?;
    Ok(n)
}

pub fn is_upward_planar(g: &Graph) -> Result<bool, SearchError> {
    Ok(find_upo(g, &SearchConfig::default())?.is_some())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffMode {
    /// Every permutation; refused above `max_edges` edges.
    Exhaustive { max_edges: usize },
    /// `n` uniformly random permutations drawn from `seed`.
    Sampled { n: u64, seed: u64 },
}

impl DiffMode {
    pub fn exhaustive() -> Self {
        DiffMode::Exhaustive {
            max_edges: DEFAULT_EXHAUSTIVE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub order: Vec<EdgeId>,
    pub hull: Verdict,
    pub betweenness: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffReport {
    pub orders_tested: u64,
    /// Sorted by order.
    pub disagreements: Vec<Disagreement>,
    pub mode: DiffMode,
}

impl DiffReport {
    pub fn agreed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Runs both characterisations on every tested order and records where
/// their verdicts differ.
pub fn diff_definitions(g: &Graph, mode: DiffMode) -> Result<DiffReport, SearchError> {
    g.ensure_acyclic()?;
    let m = g.edge_count();
    let mut report = DiffReport {
        orders_tested: 0,
        disagreements: Vec::new(),
        mode,
    };
    let mut test = |seq: Vec<usize>| -> Result<(), SearchError> {
        let ord = EdgeOrder::from_indices(g, seq);
        report.orders_tested += 1;
        let hull = is_valid(&ord, Definition::Hull)?;
        let between = is_valid(&ord, Definition::Betweenness)?;
        if hull != between {
            report.disagreements.push(Disagreement {
                order: ord.to_ids(),
                hull: crate::validate::validate(&ord, Definition::Hull)?,
                betweenness: crate::validate::validate(&ord, Definition::Betweenness)?,
            });
        }
        Ok(())
    };
    match mode {
        DiffMode::Exhaustive { max_edges } => {
            if m > max_edges {
                return Err(SearchError::TooLargeForExhaustive { edges: m, cap: max_edges });
            }
            if m == 0 {
                test(Vec::new())?;
            } else {
                for perm in (0..m).permutations(m) {
                    test(perm)?;
                }
            }
        }
        DiffMode::Sampled { n, seed } => {
            let mut rng = rng_from_seed(seed);
            for _ in 0..n {
                let mut perm: Vec<usize> = (0..m).collect();
                perm.shuffle(&mut rng);
                test(perm)?;
            }
        }
    }
    report.disagreements.sort_by(|a, b| a.order.cmp(&b.order));
    Ok(report)
}
