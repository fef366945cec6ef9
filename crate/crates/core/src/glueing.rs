//! Glueing schemes over arc indices and their unique prolongation into
//! maximal schemes, one per branch of the secant caustic.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::parallel::ParallelArcs;

/// An arc together with the direction it is traversed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ArcStep {
    pub arc: usize,
    pub forward: bool,
}

impl ArcStep {
    fn key(self) -> (usize, bool) {
        (self.arc, !self.forward)
    }

    /// Index of the parallel point the traversal starts from.
    pub fn entry_point(self, arc_count: usize) -> usize {
        if self.forward {
            self.arc
        } else {
            (self.arc + 1) % arc_count
        }
    }

    pub fn exit_point(self, arc_count: usize) -> usize {
        if self.forward {
            (self.arc + 1) % arc_count
        } else {
            self.arc
        }
    }

    fn cross(self, arc_count: usize) -> ArcStep {
        let arc = if self.forward { (self.arc + 1) % arc_count } else { (self.arc + arc_count - 1) % arc_count };
        ArcStep { arc, forward: self.forward }
    }

    fn reverse(self) -> ArcStep {
        ArcStep { arc: self.arc, forward: !self.forward }
    }

    fn flipped(self) -> ArcStep {
        self.reverse()
    }
}

/// A pair of parallel arcs traversed in step: `a` runs over the top arc, `b`
/// over the bottom arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Row {
    pub top: ArcStep,
    pub bottom: ArcStep,
}

impl Row {
    fn key(self) -> ((usize, bool), (usize, bool)) {
        (self.top.key(), self.bottom.key())
    }

    fn flipped(self) -> Row {
        Row { top: self.top.flipped(), bottom: self.bottom.flipped() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlueingScheme {
    pub rows: Vec<Row>,
    pub closed: bool,
}

fn enters_low(arcs: &ParallelArcs, step: ArcStep) -> bool {
    arcs.arcs[step.arc].increasing == step.forward
}

/// Whether the two arcs of a row can be traversed together.
pub fn row_is_valid(arcs: &ParallelArcs, row: Row) -> bool {
    row.top.arc != row.bottom.arc
        && arcs.arcs[row.top.arc].set == arcs.arcs[row.bottom.arc].set
        && enters_low(arcs, row.top) == enters_low(arcs, row.bottom)
}

/// Row pairing arcs `a` and `b`, both entered at their low angle end.
pub fn start_row(arcs: &ParallelArcs, a: usize, b: usize) -> Row {
    Row {
        top: ArcStep { arc: a, forward: arcs.arcs[a].increasing },
        bottom: ArcStep { arc: b, forward: arcs.arcs[b].increasing },
    }
}

fn next_row(arcs: &ParallelArcs, last: Row, index: usize) -> Result<Row> {
    let n = arcs.arcs.len();
    let candidates = [
        Row { top: last.top.cross(n), bottom: last.bottom.cross(n) },
        Row { top: last.top.cross(n), bottom: last.bottom.reverse() },
        Row { top: last.top.reverse(), bottom: last.bottom.cross(n) },
    ];
    let valid: Vec<Row> = candidates.into_iter().filter(|r| row_is_valid(arcs, *r)).collect();
    match valid.as_slice() {
        [r] => Ok(*r),
        _ => Err(Error::NonUnique { row: index, candidates: valid.len() }),
    }
}

impl GlueingScheme {
    pub fn new(row: Row) -> Self {
        GlueingScheme { rows: vec![row], closed: false }
    }

    /// Appends the unique continuation of the last row.
    pub fn prolong(&self, arcs: &ParallelArcs) -> Result<GlueingScheme> {
        if self.closed {
            return Err(Error::Inconsistent("scheme is already closed".into()));
        }
        let last = *self.rows.last().ok_or_else(|| Error::Inconsistent("empty scheme".into()))?;
        let next = next_row(arcs, last, self.rows.len())?;
        let mut out = self.clone();
        if next == out.rows[0] {
            out.closed = true;
        } else {
            out.rows.push(next);
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Parallel-point index pairs `(top, bottom)` where row `i` hands over to row `i+1`.
    pub fn junctions(&self, arc_count: usize) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .map(|r| (r.top.exit_point(arc_count), r.bottom.exit_point(arc_count)))
            .collect()
    }

    /// Junctions where both lines meet the same point: passages through the origin.
    pub fn origin_passages(&self, arc_count: usize) -> usize {
        self.junctions(arc_count).iter().filter(|(k, l)| k == l).count()
    }

    /// Smallest row sequence over all rotations and both traversal directions.
    pub fn canonical(&self) -> GlueingScheme {
        let n = self.rows.len();
        let reversed: Vec<Row> = self.rows.iter().rev().map(|r| r.flipped()).collect();
        let mut best: Option<Vec<Row>> = None;
        for seq in [&self.rows, &reversed] {
            for k in 0..n {
                let cand: Vec<Row> = seq[k..].iter().chain(&seq[..k]).copied().collect();
                let better = match &best {
                    None => true,
                    Some(b) => cand.iter().map(|r| r.key()).lt(b.iter().map(|r| r.key())),
                };
                if better {
                    best = Some(cand);
                }
            }
        }
        GlueingScheme { rows: best.unwrap_or_default(), closed: self.closed }
    }

    /// Two-line notation, `~` standing for the arc symbol.
    pub fn to_ascii(&self, arc_count: usize) -> String {
        let mut top = vec![format!("p{}", self.rows[0].top.entry_point(arc_count))];
        let mut bottom = vec![format!("p{}", self.rows[0].bottom.entry_point(arc_count))];
        for r in &self.rows {
            top.push(format!("p{}", r.top.exit_point(arc_count)));
            bottom.push(format!("p{}", r.bottom.exit_point(arc_count)));
        }
        let (mut l1, mut l2) = (String::new(), String::new());
        for (i, (a, b)) in top.iter().zip(&bottom).enumerate() {
            let w = a.len().max(b.len());
            if i > 0 {
                l1.push('~');
                l2.push('~');
            }
            let _ = write!(l1, "{a:<w$}");
            let _ = write!(l2, "{b:<w$}");
        }
        format!("{}\n{}", l1.trim_end(), l2.trim_end())
    }
}

/// Enumerates every maximal glueing scheme, each closed and canonicalized.
pub fn maximal_schemes(arcs: &ParallelArcs) -> Result<Vec<GlueingScheme>> {
    let expected = arcs.expected_rows();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut out = Vec::new();
    for set in &arcs.sets {
        for &a in &set.arcs {
            for &b in &set.arcs {
                if a == b || seen.contains(&(a, b)) {
                    continue;
                }
                let mut scheme = GlueingScheme::new(start_row(arcs, a, b));
                seen.insert((a, b));
                while !scheme.closed {
                    if scheme.rows.len() > expected {
                        return Err(Error::Inconsistent("glueing scheme does not close".into()));
                    }
                    scheme = scheme.prolong(arcs)?;
                    if !scheme.closed {
                        let r = scheme.rows[scheme.rows.len() - 1];
                        if !seen.insert((r.top.arc, r.bottom.arc)) {
                            return Err(Error::Inconsistent(format!(
                                "arc pair ({}, {}) reached twice",
                                r.top.arc, r.bottom.arc
                            )));
                        }
                    }
                }
                out.push(scheme.canonical());
            }
        }
    }
    let total: usize = out.iter().map(|s| s.len()).sum();
    if total != expected {
        return Err(Error::Inconsistent(format!("schemes cover {total} rows, expected {expected}")));
    }
    out.sort_by(|x, y| x.rows.iter().map(|r| r.key()).cmp(y.rows.iter().map(|r| r.key())));
    Ok(out)
}
