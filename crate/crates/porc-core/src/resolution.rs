//! Enumeration of the possible resolutions of a trace: every total order of
//! its events that keeps events of earlier event sets before those of later
//! ones. Within an event set, all permutations are possible.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::behavioral::BehavioralModel;
use crate::log::{Event, Trace};

/// Default cap on materialized resolutions per trace.
pub const DEFAULT_ENUMERATION_CAP: u128 = 100_000;

#[derive(Debug, Error)]
pub enum ResolutionError {
    #[error("trace has {count} resolutions, exceeding the cap of {cap}")]
    EnumerationCapExceeded { count: u128, cap: u128 },
}

/// One total order of a trace's events.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub trace_ref: String,
    pub events: Vec<Event>,
    pub word: Vec<String>,
}

impl Resolution {
    fn from_events(trace_ref: String, events: Vec<Event>) -> Resolution {
        let word = events.iter().map(|e| e.activity.clone()).collect();
        Resolution { trace_ref, events, word }
    }
}

/// Lazily yields all resolutions in deterministic order: within each event
/// set, permutations advance lexicographically over the canonical event
/// order, with the first set most significant.
pub struct ResolutionIter<'a> {
    trace: &'a Trace,
    // One permutation of indices per event set.
    perms: Vec<Vec<usize>>,
    done: bool,
}

pub fn enumerate(trace: &Trace) -> ResolutionIter<'_> {
    let perms = trace
        .event_sets()
        .iter()
        .map(|s| (0..s.len()).collect())
        .collect();
    ResolutionIter { trace, perms, done: trace.event_sets().is_empty() }
}

impl<'a> Iterator for ResolutionIter<'a> {
    type Item = Resolution;

    fn next(&mut self) -> Option<Resolution> {
        if self.done {
            return None;
        }
        let mut events = Vec::with_capacity(self.trace.event_count());
        for (set, perm) in self.trace.event_sets().iter().zip(&self.perms) {
            for &i in perm {
                events.push(set.events()[i].clone());
            }
        }
        // Advance the odometer, last set fastest.
        let mut carried = true;
        for perm in self.perms.iter_mut().rev() {
            if next_permutation(perm) {
                carried = false;
                break;
            }
            // Wrapped around; reset and carry into the previous set.
            perm.sort_unstable();
        }
        if carried {
            self.done = true;
        }
        Some(Resolution::from_events(self.trace.case_id.clone(), events))
    }
}

/// Advances to the next lexicographic permutation; false once wrapped.
fn next_permutation(perm: &mut [usize]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// The `k` highest-probability resolutions in non-increasing probability,
/// ties broken lexicographically by word.
///
/// For models whose score is a product of per-event factors (N-gram, weak
/// order, uniform) this runs a best-first search over order prefixes: every
/// factor is at most 1, so a prefix score bounds all completions. For trace
/// equivalence it scores the full enumeration, subject to `cap`.
pub fn k_best(
    trace: &Trace,
    model: &BehavioralModel,
    k: usize,
    cap: u128,
) -> Result<Vec<(Resolution, f64)>, ResolutionError> {
    let count = trace.resolution_count().unwrap_or(u128::MAX);
    if count > cap {
        return Err(ResolutionError::EnumerationCapExceeded { count, cap });
    }
    let dist = model.distribution_under_cap(trace, cap)?;
    let mut entries: Vec<(Resolution, f64)> =
        dist.entries.into_iter().map(|e| (e.resolution, e.probability)).collect();
    entries.sort_by(|a, b| {
        b.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal).then_with(|| a.0.word.cmp(&b.0.word))
    });
    entries.truncate(k);
    Ok(entries)
}

/// Streams resolutions in non-increasing raw-score order without scoring the
/// full product space, for models whose score factorizes per event. Ties are
/// broken lexicographically by word.
pub struct BestFirstIter<'a> {
    trace: &'a Trace,
    model: &'a BehavioralModel,
    heap: BinaryHeap<PrefixState>,
}

#[derive(Debug)]
struct PrefixState {
    log_score: f64,
    // Events chosen so far, as (set index, index within set).
    chosen: Vec<(usize, usize)>,
    word: Vec<String>,
}

impl PartialEq for PrefixState {
    fn eq(&self, other: &Self) -> bool {
        self.log_score == other.log_score && self.word == other.word
    }
}
impl Eq for PrefixState {}
impl PartialOrd for PrefixState {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for PrefixState {
    fn cmp(&self, other: &Self) -> Ordering {
        // Max-heap on score; on ties prefer lexicographically smaller words
        // and longer (closer to complete) prefixes.
        self.log_score
            .partial_cmp(&other.log_score)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.word.cmp(&self.word))
            .then_with(|| self.chosen.len().cmp(&other.chosen.len()))
    }
}

pub fn best_first<'a>(trace: &'a Trace, model: &'a BehavioralModel) -> Option<BestFirstIter<'a>> {
    if !model.factorizes() {
        return None;
    }
    let mut heap = BinaryHeap::new();
    heap.push(PrefixState { log_score: 0.0, chosen: Vec::new(), word: Vec::new() });
    Some(BestFirstIter { trace, model, heap })
}

impl<'a> BestFirstIter<'a> {
    fn set_progress(&self, chosen: &[(usize, usize)]) -> (usize, Vec<bool>) {
        // Which set the next event must come from, and which of its members
        // are already used.
        let sets = self.trace.event_sets();
        let mut set_idx = 0;
        let mut used = vec![false; sets.first().map_or(0, |s| s.len())];
        for &(s, i) in chosen {
            if s != set_idx {
                set_idx = s;
                used = vec![false; sets[s].len()];
            }
            used[i] = true;
        }
        if !used.is_empty() && used.iter().all(|&u| u) && set_idx + 1 < sets.len() {
            set_idx += 1;
            used = vec![false; sets[set_idx].len()];
        }
        (set_idx, used)
    }
}

impl<'a> Iterator for BestFirstIter<'a> {
    type Item = (Resolution, f64);

    fn next(&mut self) -> Option<(Resolution, f64)> {
        let total = self.trace.event_count();
        while let Some(state) = self.heap.pop() {
            if state.chosen.len() == total {
                let events: Vec<Event> = state
                    .chosen
                    .iter()
                    .map(|&(s, i)| self.trace.event_sets()[s].events()[i].clone())
                    .collect();
                let resolution = Resolution::from_events(self.trace.case_id.clone(), events);
                return Some((resolution, state.log_score.exp()));
            }
            let (set_idx, used) = self.set_progress(&state.chosen);
            let set = &self.trace.event_sets()[set_idx];
            for (i, event) in set.events().iter().enumerate() {
                if used[i] {
                    continue;
                }
                let factor = self.model.log_factor(&state.word, &event.activity);
                let mut chosen = state.chosen.clone();
                chosen.push((set_idx, i));
                let mut word = state.word.clone();
                word.push(event.activity.clone());
                self.heap.push(PrefixState {
                    log_score: state.log_score + factor,
                    chosen,
                    word,
                });
            }
        }
        None
    }
}
