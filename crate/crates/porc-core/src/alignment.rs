//! Cost-optimal alignment of an activity sequence against a Petri net, plus
//! the binary and fitness conformance functions built on it.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{OnceLock, RwLock};

use crate::petri::{Marking, PetriError, PetriNet, DEFAULT_STATE_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    Synchronous,
    LogSkip,
    ModelSkip,
}

/// One alignment step. `activity` is `None` only for silent model moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub kind: MoveKind,
    pub activity: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alignment {
    pub moves: Vec<Move>,
    pub cost: u32,
}

impl Alignment {
    /// Labeled projection of the model side (synchronous + visible model moves).
    pub fn model_projection(&self) -> Vec<String> {
        self.moves
            .iter()
            .filter(|m| m.kind != MoveKind::LogSkip)
            .filter_map(|m| m.activity.clone())
            .collect()
    }

    /// Projection of the log side (synchronous + log moves).
    pub fn log_projection(&self) -> Vec<String> {
        self.moves
            .iter()
            .filter(|m| m.kind != MoveKind::ModelSkip)
            .filter_map(|m| m.activity.clone())
            .collect()
    }
}

/// Per-activity skip costs. The defaults are the standard unit scheme:
/// log skip 1, visible model skip 1, silent model move 0, synchronous 0.
#[derive(Debug, Clone, Default)]
pub struct CostModel {
    pub log_skip: HashMap<String, u32>,
    pub model_skip: HashMap<String, u32>,
}

impl CostModel {
    fn log_cost(&self, activity: &str) -> u32 {
        self.log_skip.get(activity).copied().unwrap_or(1)
    }

    fn model_cost(&self, label: Option<&str>) -> u32 {
        match label {
            None => 0,
            Some(l) => self.model_skip.get(l).copied().unwrap_or(1),
        }
    }
}

/// Search state: position in the word plus the net marking.
type State = (usize, Marking);

pub fn optimal_alignment(
    net: &PetriNet,
    word: &[String],
    state_cap: usize,
) -> Result<Alignment, PetriError> {
    optimal_alignment_with_costs(net, word, &CostModel::default(), state_cap)
}

/// Best-first search over the synchronous product of word positions and
/// markings. The remaining-cost bound is zero (plain Dijkstra), which is
/// admissible; ties are broken by insertion order with synchronous moves
/// expanded first, so the returned alignment is deterministic.
pub fn optimal_alignment_with_costs(
    net: &PetriNet,
    word: &[String],
    costs: &CostModel,
    state_cap: usize,
) -> Result<Alignment, PetriError> {
    let start: State = (0, net.initial_marking.clone());
    let goal_pos = word.len();

    let mut best: HashMap<State, u32> = HashMap::new();
    let mut parent: HashMap<State, (State, Move)> = HashMap::new();
    let mut heap: BinaryHeap<Reverse<(u32, u64, State)>> = BinaryHeap::new();
    let mut seq = 0u64;

    best.insert(start.clone(), 0);
    heap.push(Reverse((0, seq, start)));

    while let Some(Reverse((cost, _, state))) = heap.pop() {
        if best.get(&state) != Some(&cost) {
            continue;
        }
        let (pos, ref marking) = state;
        if pos == goal_pos && *marking == net.final_marking {
            return Ok(reconstruct(&parent, state, cost));
        }

        let mut push = |next: State,
                        next_cost: u32,
                        mv: Move,
                        best: &mut HashMap<State, u32>,
                        parent: &mut HashMap<State, (State, Move)>,
                        heap: &mut BinaryHeap<Reverse<(u32, u64, State)>>|
         -> Result<(), PetriError> {
            if best.get(&next).map_or(true, |&c| next_cost < c) {
                best.insert(next.clone(), next_cost);
                parent.insert(next.clone(), (state.clone(), mv));
                if best.len() > state_cap {
                    return Err(PetriError::SearchBudgetExceeded(best.len()));
                }
                seq += 1;
                heap.push(Reverse((next_cost, seq, next)));
            }
            Ok(())
        };

        // Synchronous moves first, then model moves, then the log skip.
        for t in 0..net.transitions.len() {
            if !net.is_enabled(marking, t) {
                continue;
            }
            if let Some(label) = &net.transitions[t].label {
                if pos < goal_pos && *label == word[pos] {
                    let m = net.fire(marking, t).expect("enabled");
                    push(
                        (pos + 1, m),
                        cost,
                        Move { kind: MoveKind::Synchronous, activity: Some(label.clone()) },
                        &mut best,
                        &mut parent,
                        &mut heap,
                    )?;
                }
            }
        }
        for t in 0..net.transitions.len() {
            if !net.is_enabled(marking, t) {
                continue;
            }
            let label = net.transitions[t].label.as_deref();
            let m = net.fire(marking, t).expect("enabled");
            push(
                (pos, m),
                cost + costs.model_cost(label),
                Move { kind: MoveKind::ModelSkip, activity: label.map(|l| l.to_string()) },
                &mut best,
                &mut parent,
                &mut heap,
            )?;
        }
        if pos < goal_pos {
            push(
                (pos + 1, marking.clone()),
                cost + costs.log_cost(&word[pos]),
                Move { kind: MoveKind::LogSkip, activity: Some(word[pos].clone()) },
                &mut best,
                &mut parent,
                &mut heap,
            )?;
        }
    }
    Err(PetriError::NoAcceptedWord)
}

fn reconstruct(parent: &HashMap<State, (State, Move)>, goal: State, cost: u32) -> Alignment {
    let mut moves = Vec::new();
    let mut state = goal;
    while let Some((prev, mv)) = parent.get(&state) {
        moves.push(mv.clone());
        state = prev.clone();
    }
    moves.reverse();
    Alignment { moves, cost }
}

/// 1 iff the word is in the model language (optimal alignment cost 0).
pub fn conf_bin(net: &PetriNet, word: &[String], state_cap: usize) -> Result<f64, PetriError> {
    Ok(if net.accepts(word, state_cap)? { 1.0 } else { 0.0 })
}

/// Trace fitness: 1 - cost / (|word| + shortest accepted word cost), clamped
/// to [0, 1]. The denominator is the standard worst-case alignment cost.
pub fn conf_fit(net: &PetriNet, word: &[String], state_cap: usize) -> Result<f64, PetriError> {
    let shortest = net.shortest_accepted_word_cost(state_cap)?;
    conf_fit_with(net, word, shortest, state_cap)
}

fn conf_fit_with(
    net: &PetriNet,
    word: &[String],
    shortest: usize,
    state_cap: usize,
) -> Result<f64, PetriError> {
    let alignment = optimal_alignment(net, word, state_cap)?;
    let denom = (word.len() + shortest) as f64;
    if denom == 0.0 {
        return Ok(1.0);
    }
    Ok((1.0 - alignment.cost as f64 / denom).clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfKind {
    Bin,
    Fit,
}

/// Variant-level memoization of optimal alignments, keyed by the activity
/// sequence. Safe for concurrent readers and writers; duplicate computation
/// is allowed, results are identical.
#[derive(Debug, Default)]
pub struct AlignmentCache {
    inner: RwLock<HashMap<Vec<String>, Alignment>>,
    hits: AtomicUsize,
    misses: AtomicUsize,
}

impl AlignmentCache {
    pub fn new() -> AlignmentCache {
        AlignmentCache::default()
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> usize {
        self.misses.load(Ordering::Relaxed)
    }

    pub fn clear(&self) {
        self.inner.write().unwrap().clear();
    }

    pub fn get_or_compute(
        &self,
        net: &PetriNet,
        word: &[String],
        state_cap: usize,
    ) -> Result<Alignment, PetriError> {
        if let Some(hit) = self.inner.read().unwrap().get(word) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(hit.clone());
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let alignment = optimal_alignment(net, word, state_cap)?;
        self.inner.write().unwrap().insert(word.to_vec(), alignment.clone());
        Ok(alignment)
    }
}

/// Bundles a net with an alignment cache and the precomputed fitness
/// denominator; the unit of work handed to per-trace workers.
pub struct ConformanceChecker<'a> {
    net: &'a PetriNet,
    cache: AlignmentCache,
    shortest: OnceLock<usize>,
    state_cap: usize,
}

impl<'a> ConformanceChecker<'a> {
    pub fn new(net: &'a PetriNet) -> ConformanceChecker<'a> {
        ConformanceChecker { net, cache: AlignmentCache::new(), shortest: OnceLock::new(), state_cap: DEFAULT_STATE_CAP }
    }

    pub fn with_state_cap(net: &'a PetriNet, state_cap: usize) -> ConformanceChecker<'a> {
        ConformanceChecker { net, cache: AlignmentCache::new(), shortest: OnceLock::new(), state_cap }
    }

    pub fn net(&self) -> &PetriNet {
        self.net
    }

    pub fn cache(&self) -> &AlignmentCache {
        &self.cache
    }

    pub fn alignment(&self, word: &[String]) -> Result<Alignment, PetriError> {
        self.cache.get_or_compute(self.net, word, self.state_cap)
    }

    pub fn shortest_cost(&self) -> Result<usize, PetriError> {
        if let Some(&s) = self.shortest.get() {
            return Ok(s);
        }
        let s = self.net.shortest_accepted_word_cost(self.state_cap)?;
        Ok(*self.shortest.get_or_init(|| s))
    }

    pub fn conf(&self, kind: ConfKind, word: &[String]) -> Result<f64, PetriError> {
        let alignment = self.alignment(word)?;
        match kind {
            ConfKind::Bin => Ok(if alignment.cost == 0 { 1.0 } else { 0.0 }),
            ConfKind::Fit => {
                let denom = (word.len() + self.shortest_cost()?) as f64;
                if denom == 0.0 {
                    return Ok(1.0);
                }
                Ok((1.0 - alignment.cost as f64 / denom).clamp(0.0, 1.0))
            }
        }
    }
}
