//! Checkers for both characterisations of an upward planar order.
//!
//! The hull form combines three rules:
//!
//! * `U1`: the order extends the edge reachability relation;
//! * `U2`: at every vertex the hulls of incoming and outgoing edges are
//!   disjoint and together tile the hull of all incident edges;
//! * `U3`: whenever an in-set (out-set) meets the hull of another in-set
//!   (out-set), it lies inside that hull.
//!
//! The betweenness form keeps `U1` (there called `Q1`) and replaces the rest
//! with a single rule `Q2` about an edge `e` ranked strictly between two
//! adjacent edges. Every checker scans edges by ascending rank and vertices
//! by ascending id, and reports violations in the order found up to a cap.

use std::fmt;
use std::ops::ControlFlow;

use crate::graph::{Adjacency, EdgeId, Graph, GraphError, VertexId};
use crate::order::{EdgeOrder, Interval};

pub const DEFAULT_MAX_VIOLATIONS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    U1,
    U2,
    U3,
    Q2,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Which characterisation to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Definition {
    /// `U1 ∧ U2 ∧ U3`.
    #[default]
    Hull,
    /// `Q1 ∧ Q2`, with `Q1` identical to `U1`.
    Betweenness,
    /// Both, cross-checked against each other.
    Both,
}

/// Machine-readable reason attached to a [`Violation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Note {
    /// `e1 → e2` but `e2` is ranked first.
    ReachInverted,
    /// In-hull and out-hull of a vertex share a rank.
    HullsOverlap,
    /// In-hull and out-hull are disjoint but leave a gap inside the hull of
    /// all incident edges.
    HullGap,
    /// An in-set meets another vertex's in-hull without lying inside it.
    InHullsCross,
    /// As [`Note::InHullsCross`], for out-sets.
    OutHullsCross,
    /// `TT` configuration whose middle edge's in-set escapes the hull.
    TtNotNested,
    /// `SS` configuration whose middle edge's out-set escapes the hull.
    SsNotNested,
    /// `TS` configuration where neither containment holds.
    TsNeitherNested,
}

impl Note {
    pub fn code(self) -> &'static str {
        match self {
            Note::ReachInverted => "reach-inverted",
            Note::HullsOverlap => "hulls-overlap",
            Note::HullGap => "hull-gap",
            Note::InHullsCross => "in-hulls-cross",
            Note::OutHullsCross => "out-hulls-cross",
            Note::TtNotNested => "tt-not-nested",
            Note::SsNotNested => "ss-not-nested",
            Note::TsNeitherNested => "ts-neither-nested",
        }
    }

    fn adjacency(self) -> Option<Adjacency> {
        match self {
            Note::TtNotNested => Some(Adjacency::TT),
            Note::SsNotNested => Some(Adjacency::SS),
            Note::TsNeitherNested => Some(Adjacency::TS),
            _ => None,
        }
    }
}

impl fmt::Display for Note {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// One failed clause together with the vertices and edges that witness it.
/// `ranks[i]` is the rank of `edges[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub note: Note,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub ranks: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: Vec<String>| xs.join(",");
        write!(
            f,
            "{} {} vertices={} edges={} ranks={}",
            self.rule,
            self.note,
            join(self.vertices.iter().map(|v| v.to_string()).collect()),
            join(self.edges.iter().map(|e| e.to_string()).collect()),
            join(self.ranks.iter().map(|r| r.to_string()).collect()),
        )
    }
}

/// Validity bits of the two characterisations when they disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DefinitionMismatch {
    pub hull_valid: bool,
    pub betweenness_valid: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub valid: bool,
    pub violations: Vec<Violation>,
    /// Only set by [`Definition::Both`], and only on disagreement.
    pub mismatch: Option<DefinitionMismatch>,
}

struct Collector<'o, 'g> {
    ord: &'o EdgeOrder<'g>,
    cap: usize,
    found: Vec<Violation>,
    failed: bool,
}

impl<'o, 'g> Collector<'o, 'g> {
    fn new(ord: &'o EdgeOrder<'g>, cap: usize) -> Self {
        Collector {
            ord,
            cap,
            found: Vec::new(),
            failed: false,
        }
    }

    fn report(&mut self, rule: Rule, note: Note, vertices: &[usize], edges: &[usize]) -> ControlFlow<()> {
        self.failed = true;
        if self.found.len() < self.cap {
            let g = self.ord.graph();
            self.found.push(Violation {
                rule,
                note,
                vertices: vertices.iter().map(|&v| g.vertex_id(v).clone()).collect(),
                edges: edges.iter().map(|&e| g.edge_id(e).clone()).collect(),
                ranks: edges.iter().map(|&e| self.ord.rank_ix(e)).collect(),
            });
        }
        if self.found.len() >= self.cap {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    }

    fn finish(self) -> Verdict {
        Verdict {
            valid: !self.failed,
            violations: self.found,
            mismatch: None,
        }
    }
}

/// Per-vertex hulls of in-, out- and incident edge sets under one order.
struct Hulls {
    inc: Vec<Interval>,
    out: Vec<Interval>,
}

impl Hulls {
    fn new(ord: &EdgeOrder<'_>) -> Self {
        let g = ord.graph();
        let n = g.vertex_count();
        Hulls {
            inc: (0..n).map(|v| ord.hull_ix(g.in_edges(v))).collect(),
            out: (0..n).map(|v| ord.hull_ix(g.out_edges(v))).collect(),
        }
    }
}

fn inside(ord: &EdgeOrder<'_>, xs: &[usize], iv: Interval) -> bool {
    xs.iter().all(|&x| iv.contains(ord.rank_ix(x)))
}

/// Literal evaluation of U2 at one vertex. On failure returns the note and
/// the witness edges in ascending rank.
fn u2_at(ord: &EdgeOrder<'_>, v: usize) -> Option<(Note, Vec<usize>)> {
    let g = ord.graph();
    let hi = ord.hull_ix(g.in_edges(v));
    let ho = ord.hull_ix(g.out_edges(v));
    let he = Interval::hull_of(
        g.in_edges(v)
            .iter()
            .chain(g.out_edges(v))
            .map(|&e| ord.rank_ix(e)),
    );
    if !hi.disjoint(ho) {
        let (_, in_max) = hi.bounds()?;
        let (out_min, _) = ho.bounds()?;
        let mut w = vec![ord.at_rank(out_min), ord.at_rank(in_max)];
        w.sort_by_key(|&e| ord.rank_ix(e));
        return Some((Note::HullsOverlap, w));
    }
    if hi.union_exact(ho) != Some(he) {
        // Both hulls are nonempty and disjoint here, with a gap between them.
        let (lower, upper) = match (hi.bounds(), ho.bounds()) {
            (Some(a), Some(b)) if a.1 < b.0 => (a, b),
            (Some(a), Some(b)) => (b, a),
            _ => unreachable!("gap needs two nonempty hulls"),
        };
        let w = vec![
            ord.at_rank(lower.1),
            ord.at_rank(lower.1 + 1),
            ord.at_rank(upper.0),
        ];
        return Some((Note::HullGap, w));
    }
    None
}

/// U3 for one ordered pair of distinct vertices and one side. On failure
/// returns the lowest-ranked member of `set(v1)` inside the hull of
/// `set(v2)` and the lowest-ranked member outside it.
fn u3_pair(ord: &EdgeOrder<'_>, a: &[usize], hull_b: Interval) -> Option<[usize; 2]> {
    let mut first_in: Option<usize> = None;
    let mut first_out: Option<usize> = None;
    for &x in a {
        let slot = if hull_b.contains(ord.rank_ix(x)) {
            &mut first_in
        } else {
            &mut first_out
        };
        if slot.is_none_or(|y| ord.rank_ix(x) < ord.rank_ix(y)) {
            *slot = Some(x);
        }
    }
    match (first_in, first_out) {
        (Some(i), Some(o)) => Some([i, o]),
        _ => None,
    }
}

/// The Q2 condition for a middle edge `e` and one adjacency case at `v`.
fn q2_holds(ord: &EdgeOrder<'_>, hulls: &Hulls, case: Adjacency, v: usize, e: usize) -> bool {
    let g = ord.graph();
    let in_ok = || inside(ord, g.in_edges(g.tgt_of(e)), hulls.inc[v]);
    let out_ok = || inside(ord, g.out_edges(g.src_of(e)), hulls.out[v]);
    match case {
        Adjacency::TT => in_ok(),
        Adjacency::SS => out_ok(),
        Adjacency::TS => in_ok() || out_ok(),
        Adjacency::ST => true,
    }
}

/// Checker with a configurable violation cap.
#[derive(Debug, Clone, Copy)]
pub struct Checker {
    max_violations: usize,
}

impl Default for Checker {
    fn default() -> Self {
        Checker {
            max_violations: DEFAULT_MAX_VIOLATIONS,
        }
    }
}

impl Checker {
    pub fn new() -> Self {
        Self::default()
    }

    /// Cap on the number of listed violations. With a cap of zero the
    /// checkers stop at the first failure and list nothing.
    pub fn max_violations(mut self, cap: usize) -> Self {
        self.max_violations = cap;
        self
    }

    fn run(
        &self,
        ord: &EdgeOrder<'_>,
        rules: &[fn(&mut Collector<'_, '_>) -> ControlFlow<()>],
    ) -> Result<Verdict, GraphError> {
        ord.graph().ensure_acyclic()?;
        let mut c = Collector::new(ord, self.max_violations);
        for rule in rules {
            if rule(&mut c).is_break() {
                break;
            }
        }
        Ok(c.finish())
    }

    pub fn check_u1(&self, ord: &EdgeOrder<'_>) -> Result<Verdict, GraphError> {
        self.run(ord, &[scan_u1])
    }

    pub fn check_u2(&self, ord: &EdgeOrder<'_>) -> Result<Verdict, GraphError> {
        self.run(ord, &[scan_u2])
    }

    pub fn check_u3(&self, ord: &EdgeOrder<'_>) -> Result<Verdict, GraphError> {
        self.run(ord, &[scan_u3])
    }

    pub fn check_q2(&self, ord: &EdgeOrder<'_>) -> Result<Verdict, GraphError> {
        self.run(ord, &[scan_q2])
    }

    pub fn validate(&self, ord: &EdgeOrder<'_>, def: Definition) -> Result<Verdict, GraphError> {
        match def {
            Definition::Hull => self.run(ord, &[scan_u1, scan_u2, scan_u3]),
            Definition::Betweenness => self.run(ord, &[scan_u1, scan_q2]),
            Definition::Both => {
                let u1 = self.run(ord, &[scan_u1])?;
                let hull = self.run(ord, &[scan_u2, scan_u3])?;
                let between = self.run(ord, &[scan_q2])?;
                let hull_valid = u1.valid && hull.valid;
                let betweenness_valid = u1.valid && between.valid;
                let mismatch = (hull_valid != betweenness_valid).then_some(DefinitionMismatch {
                    hull_valid,
                    betweenness_valid,
                });
                let mut violations = u1.violations;
                violations.extend(hull.violations);
                violations.extend(between.violations);
                violations.truncate(self.max_violations);
                Ok(Verdict {
                    valid: hull_valid && betweenness_valid,
                    violations,
                    mismatch,
                })
            }
        }
    }
}

fn scan_u1(c: &mut Collector<'_, '_>) -> ControlFlow<()> {
    let ord = c.ord;
    let g = ord.graph();
    let seq = ord.sequence();
    for (i, &a) in seq.iter().enumerate() {
        for &b in &seq[i + 1..] {
            if g.reaches_ix(b, a) {
                c.report(Rule::U1, Note::ReachInverted, &[], &[b, a])?;
            }
        }
    }
    ControlFlow::Continue(())
}

fn scan_u2(c: &mut Collector<'_, '_>) -> ControlFlow<()> {
    let ord = c.ord;
    for v in 0..ord.graph().vertex_count() {
        if let Some((note, w)) = u2_at(ord, v) {
            c.report(Rule::U2, note, &[v], &w)?;
        }
    }
    ControlFlow::Continue(())
}

fn scan_u3(c: &mut Collector<'_, '_>) -> ControlFlow<()> {
    let ord = c.ord;
    let g = ord.graph();
    let hulls = Hulls::new(ord);
    let n = g.vertex_count();
    for v1 in 0..n {
        for v2 in (0..n).filter(|&v2| v2 != v1) {
            if let Some(w) = u3_pair(ord, g.in_edges(v1), hulls.inc[v2]) {
                c.report(Rule::U3, Note::InHullsCross, &[v1, v2], &w)?;
            }
            if let Some(w) = u3_pair(ord, g.out_edges(v1), hulls.out[v2]) {
                c.report(Rule::U3, Note::OutHullsCross, &[v1, v2], &w)?;
            }
        }
    }
    ControlFlow::Continue(())
}

fn scan_q2(c: &mut Collector<'_, '_>) -> ControlFlow<()> {
    let ord = c.ord;
    let g = ord.graph();
    let hulls = Hulls::new(ord);
    let seq = ord.sequence();
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            let (e1, e2) = (seq[i], seq[j]);
            let cases = g.adjacency_ix(e1, e2);
            for &e in &seq[i + 1..j] {
                for &(case, v) in &cases {
                    if q2_holds(ord, &hulls, case, v, e) {
                        continue;
                    }
                    let (note, vertices) = match case {
                        Adjacency::TT => (Note::TtNotNested, vec![v, g.tgt_of(e)]),
                        Adjacency::SS => (Note::SsNotNested, vec![v, g.src_of(e)]),
                        Adjacency::TS => (Note::TsNeitherNested, vec![v]),
                        Adjacency::ST => unreachable!("ST imposes no condition"),
                    };
                    c.report(Rule::Q2, note, &vertices, &[e1, e, e2])?;
                }
            }
        }
    }
    ControlFlow::Continue(())
}

pub fn check_u1(ord: &EdgeOrder<'_>) -> Result<Verdict, GraphError> {
    Checker::default().check_u1(ord)
}

pub fn check_u2(ord: &EdgeOrder<'_>) -> Result<Verdict, GraphError> {
    Checker::default().check_u2(ord)
}

pub fn check_u3(ord: &EdgeOrder<'_>) -> Result<Verdict, GraphError> {
    Checker::default().check_u3(ord)
}

pub fn check_q2(ord: &EdgeOrder<'_>) -> Result<Verdict, GraphError> {
    Checker::default().check_q2(ord)
}

pub fn validate(ord: &EdgeOrder<'_>, def: Definition) -> Result<Verdict, GraphError> {
    Checker::default().validate(ord, def)
}

/// Validity only; stops at the first failed clause.
pub fn is_valid(ord: &EdgeOrder<'_>, def: Definition) -> Result<bool, GraphError> {
    Ok(Checker::new().max_violations(0).validate(ord, def)?.valid)
}

/// Re-evaluates the single clause a violation cites, on the cited witnesses
/// only. Returns `true` when that clause fails again.
pub fn reproduces(ord: &EdgeOrder<'_>, violation: &Violation) -> Result<bool, GraphError> {
    let g: &Graph = ord.graph();
    g.ensure_acyclic()?;
    let vx = violation
        .vertices
        .iter()
        .map(|v| g.vertex_index(v.as_str()))
        .collect::<Result<Vec<_>, _>>()?;
    let ex = violation
        .edges
        .iter()
        .map(|e| g.edge_index(e.as_str()))
        .collect::<Result<Vec<_>, _>>()?;
    let ranks_match = ex
        .iter()
        .zip(&violation.ranks)
        .all(|(&e, &r)| ord.rank_ix(e) == r);
    if !ranks_match {
        return Ok(false);
    }
    Ok(match (violation.rule, vx.as_slice(), ex.as_slice()) {
        (Rule::U1, _, &[a, b]) => g.reaches_ix(a, b) && ord.rank_ix(a) > ord.rank_ix(b),
        (Rule::U2, &[v], _) => u2_at(ord, v).is_some_and(|(note, _)| note == violation.note),
        (Rule::U3, &[v1, v2], _) if v1 != v2 => {
            let (a, b) = match violation.note {
                Note::InHullsCross => (g.in_edges(v1), g.in_edges(v2)),
                Note::OutHullsCross => (g.out_edges(v1), g.out_edges(v2)),
                _ => return Ok(false),
            };
            u3_pair(ord, a, ord.hull_ix(b)).is_some()
        }
        (Rule::Q2, &[v, ..], &[e1, e, e2]) => {
            let Some(case) = violation.note.adjacency() else {
                return Ok(false);
            };
            let (r1, r, r2) = (ord.rank_ix(e1), ord.rank_ix(e), ord.rank_ix(e2));
            r1 < r
                && r < r2
                && g.adjacency_ix(e1, e2).contains(&(case, v))
                && !q2_holds(ord, &Hulls::new(ord), case, v, e)
        }
        _ => false,
    })
}
