//! Consumer contract for enumeration output.

use crate::VertexId;

/// Receives the enumeration stream.
///
/// All vertex ids delivered here are *original* input-graph ids. The event
/// order is part of the contract: `vertex_added(v)` fires when `v` joins the
/// growing subtree and `vertex_removed(v)` when it backtracks out, so that
/// replaying the deltas against a set reconstructs every solution at its
/// `solution_mark`. Exactly one mark fires per solution. `solution_set`
/// fires immediately before the mark with the full solution in ascending
/// ids, but only when [`EnumerateOptions::emit_full_sets`] is on — it costs
/// extra per-solution work the delta stream avoids.
///
/// [`EnumerateOptions::emit_full_sets`]: super::EnumerateOptions::emit_full_sets
pub trait SolutionSink {
    fn vertex_added(&mut self, _v: VertexId) {}
    fn vertex_removed(&mut self, _v: VertexId) {}
    fn solution_set(&mut self, _s: &[VertexId]) {}
    fn solution_mark(&mut self);
}

/// Ignores everything; counting happens in the stats regardless.
#[derive(Debug, Default)]
pub struct NullSink;

impl SolutionSink for NullSink {
    fn solution_mark(&mut self) {}
}

/// Counts solution marks.
#[derive(Debug, Default)]
pub struct CountSink(pub u64);

impl SolutionSink for CountSink {
    fn solution_mark(&mut self) {
        self.0 += 1;
    }
}

/// Collects full solution sets; requires `emit_full_sets`.
#[derive(Debug, Default)]
pub struct CollectSink {
    pub sets: Vec<Vec<VertexId>>,
}

impl SolutionSink for CollectSink {
    fn solution_set(&mut self, s: &[VertexId]) {
        self.sets.push(s.to_vec());
    }

    fn solution_mark(&mut self) {}
}

/// One recorded event of the delta stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaEvent {
    Add(VertexId),
    Remove(VertexId),
    Mark,
}

/// Records the raw delta stream, mostly for differential tests.
#[derive(Debug, Default)]
pub struct DeltaRecorder {
    pub events: Vec<DeltaEvent>,
}

impl DeltaRecorder {
    /// Replays the stream, returning the solution snapshot at every mark.
    pub fn replay(&self) -> Vec<Vec<VertexId>> {
        let mut current: Vec<VertexId> = Vec::new();
        let mut out = Vec::new();
        for ev in &self.events {
            match *ev {
                DeltaEvent::Add(v) => current.push(v),
                DeltaEvent::Remove(v) => {
                    let popped = current.pop();
                    debug_assert_eq!(popped, Some(v), "deltas are LIFO");
                }
                DeltaEvent::Mark => {
                    let mut s = current.clone();
                    s.sort_unstable();
                    out.push(s);
                }
            }
        }
        out
    }
}

impl SolutionSink for DeltaRecorder {
    fn vertex_added(&mut self, v: VertexId) {
        self.events.push(DeltaEvent::Add(v));
    }

    fn vertex_removed(&mut self, v: VertexId) {
        self.events.push(DeltaEvent::Remove(v));
    }

    fn solution_mark(&mut self) {
        self.events.push(DeltaEvent::Mark);
    }
}
