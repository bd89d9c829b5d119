//! Partial-order-resolution estimators: trace equivalence, N-gram, weak
//! order, and the uniform baseline, behind one scoring interface with
//! per-trace normalization and a uniform fallback when no evidence exists.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::log::{EventLog, LogError, Trace};
use crate::resolution::{enumerate, Resolution, ResolutionError, DEFAULT_ENUMERATION_CAP};

/// Artificial start-of-trace marker prepended when the N-gram model runs
/// with `start_marker`. Not a valid activity label.
pub const START_MARKER: &str = "\u{2218}";

#[derive(Debug, Error)]
pub enum BehavioralError {
    #[error(transparent)]
    Log(#[from] LogError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    TraceEquivalence,
    NGram { n: usize, start_marker: bool },
    WeakOrder,
    Uniform,
}

impl ModelKind {
    /// Short names mirroring the CLI flag values.
    pub fn name(&self) -> String {
        match self {
            ModelKind::TraceEquivalence => "te".into(),
            ModelKind::NGram { n, .. } => format!("{n}g"),
            ModelKind::WeakOrder => "wo".into(),
            ModelKind::Uniform => "bl1".into(),
        }
    }

    pub fn parse(s: &str) -> Option<ModelKind> {
        match s {
            "te" => Some(ModelKind::TraceEquivalence),
            "wo" => Some(ModelKind::WeakOrder),
            "bl1" | "uniform" => Some(ModelKind::Uniform),
            _ => {
                let n: usize = s.strip_suffix('g')?.parse().ok()?;
                (n >= 2).then_some(ModelKind::NGram { n, start_marker: true })
            }
        }
    }
}

#[derive(Debug)]
enum Stats {
    TraceEquivalence {
        // Certain-trace word -> number of certain traces with that word.
        variant_counts: HashMap<Vec<String>, usize>,
        certain_total: usize,
    },
    NGram {
        // Activity subsequence (length <= N) -> number of traces containing
        // it as consecutive singleton event sets. Per-trace counting: a trace
        // with two occurrences counts once.
        counts: HashMap<Vec<String>, usize>,
    },
    WeakOrder {
        // (a, b) -> number of traces with a in a strictly earlier event set
        // than b; and number of traces containing both activities.
        order_counts: HashMap<(String, String), usize>,
        both_counts: HashMap<(String, String), usize>,
    },
    Uniform,
}

/// Read-only statistics over one training log, immutable after build.
#[derive(Debug)]
pub struct BehavioralModel {
    kind: ModelKind,
    stats: Stats,
}

/// A trace's resolutions with raw scores and normalized probabilities.
#[derive(Debug, Clone)]
pub struct ScoredDistribution {
    pub entries: Vec<ScoredResolution>,
    /// True when every raw score was zero and the uniform fallback applied.
    pub fallback_used: bool,
}

#[derive(Debug, Clone)]
pub struct ScoredResolution {
    pub resolution: Resolution,
    pub raw_score: f64,
    pub probability: f64,
}

impl BehavioralModel {
    pub fn build(kind: ModelKind, log: &EventLog) -> Result<BehavioralModel, BehavioralError> {
        if log.traces().is_empty() {
            return Err(BehavioralError::Log(LogError::EmptyLog));
        }
        let stats = match kind {
            ModelKind::Uniform => Stats::Uniform,
            ModelKind::TraceEquivalence => {
                let mut variant_counts: HashMap<Vec<String>, usize> = HashMap::new();
                let mut certain_total = 0;
                for trace in log.certain_traces() {
                    certain_total += 1;
                    *variant_counts.entry(trace.certain_word().unwrap()).or_insert(0) += 1;
                }
                Stats::TraceEquivalence { variant_counts, certain_total }
            }
            ModelKind::NGram { n, start_marker } => {
                assert!(n >= 2, "N-gram requires N >= 2");
                let mut counts: HashMap<Vec<String>, usize> = HashMap::new();
                for trace in log.traces() {
                    let mut seen: HashSet<Vec<String>> = HashSet::new();
                    for run in certain_runs(trace, start_marker) {
                        for len in 1..=n.min(run.len()) {
                            for window in run.windows(len) {
                                seen.insert(window.to_vec());
                            }
                        }
                    }
                    for seq in seen {
                        *counts.entry(seq).or_insert(0) += 1;
                    }
                }
                Stats::NGram { counts }
            }
            ModelKind::WeakOrder => {
                let mut order_counts: HashMap<(String, String), usize> = HashMap::new();
                let mut both_counts: HashMap<(String, String), usize> = HashMap::new();
                for trace in log.traces() {
                    let mut ordered: HashSet<(String, String)> = HashSet::new();
                    let sets = trace.event_sets();
                    for i in 0..sets.len() {
                        for j in (i + 1)..sets.len() {
                            for a in sets[i].activities() {
                                for b in sets[j].activities() {
                                    ordered.insert((a.to_string(), b.to_string()));
                                }
                            }
                        }
                    }
                    for pair in ordered {
                        *order_counts.entry(pair).or_insert(0) += 1;
                    }
                    let present: HashSet<&str> =
                        trace.events().map(|e| e.activity.as_str()).collect();
                    for a in &present {
                        for b in &present {
                            *both_counts.entry((a.to_string(), b.to_string())).or_insert(0) += 1;
                        }
                    }
                }
                Stats::WeakOrder { order_counts, both_counts }
            }
        };
        Ok(BehavioralModel { kind, stats })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    /// Whether the score is a product of per-event factors, each at most 1.
    pub fn factorizes(&self) -> bool {
        !matches!(self.kind, ModelKind::TraceEquivalence)
    }

    /// Natural log of the factor contributed by appending `next` to a
    /// resolution prefix; `f64::NEG_INFINITY` encodes a zero factor.
    pub fn log_factor(&self, prefix: &[String], next: &str) -> f64 {
        match &self.stats {
            Stats::Uniform => 0.0,
            Stats::TraceEquivalence { .. } => {
                panic!("trace equivalence does not factorize")
            }
            Stats::NGram { counts } => {
                let ModelKind::NGram { n, start_marker } = self.kind else { unreachable!() };
                if !start_marker && prefix.is_empty() {
                    // The product starts at the second event.
                    return 0.0;
                }
                let mut window: Vec<String> = Vec::new();
                if start_marker && prefix.len() < n - 1 {
                    window.push(START_MARKER.to_string());
                }
                let tail = prefix.len().saturating_sub(n - 1);
                window.extend(prefix[tail..].iter().cloned());
                let denominator = counts.get(&window).copied().unwrap_or(0);
                if denominator == 0 {
                    return f64::NEG_INFINITY;
                }
                window.push(next.to_string());
                let numerator = counts.get(&window).copied().unwrap_or(0);
                if numerator == 0 {
                    return f64::NEG_INFINITY;
                }
                (numerator as f64 / denominator as f64).ln()
            }
            Stats::WeakOrder { order_counts, both_counts } => {
                let mut sum = 0.0;
                for prev in prefix {
                    let pair = (prev.clone(), next.to_string());
                    let both = both_counts.get(&pair).copied().unwrap_or(0);
                    if both == 0 {
                        return f64::NEG_INFINITY;
                    }
                    let order = order_counts.get(&pair).copied().unwrap_or(0);
                    if order == 0 {
                        return f64::NEG_INFINITY;
                    }
                    sum += (order as f64 / both as f64).ln();
                }
                sum
            }
        }
    }

    /// Natural log of the raw score of a complete resolution word.
    pub fn log_score(&self, word: &[String]) -> f64 {
        match &self.stats {
            Stats::TraceEquivalence { variant_counts, certain_total } => {
                if *certain_total == 0 {
                    return f64::NEG_INFINITY;
                }
                let count = variant_counts.get(word).copied().unwrap_or(0);
                if count == 0 {
                    return f64::NEG_INFINITY;
                }
                (count as f64 / *certain_total as f64).ln()
            }
            _ => {
                let mut sum = 0.0;
                for (i, next) in word.iter().enumerate() {
                    sum += self.log_factor(&word[..i], next);
                    if sum == f64::NEG_INFINITY {
                        return sum;
                    }
                }
                sum
            }
        }
    }

    /// Raw score, >= 0; exactly 0 when the model has no evidence.
    pub fn score(&self, word: &[String]) -> f64 {
        self.log_score(word).exp()
    }

    /// Whether some resolution of the trace has a positive raw score, i.e.
    /// the model carries evidence for the trace. Avoids full enumeration:
    /// trace equivalence checks known variants against the block structure,
    /// factorizing models prune zero-factor prefixes.
    pub fn has_evidence(&self, trace: &Trace) -> bool {
        match &self.stats {
            Stats::Uniform => true,
            Stats::TraceEquivalence { variant_counts, .. } => {
                variant_counts.keys().any(|w| is_resolution_of(w, trace))
            }
            _ => {
                let sets = trace.event_sets();
                if sets.is_empty() {
                    return true;
                }
                let mut used = vec![false; sets[0].len()];
                self.evidence_dfs(sets, 0, &mut used, &mut Vec::new())
            }
        }
    }

    fn evidence_dfs(
        &self,
        sets: &[crate::log::EventSet],
        set_idx: usize,
        used: &mut [bool],
        prefix: &mut Vec<String>,
    ) -> bool {
        let set = &sets[set_idx];
        if used.iter().all(|u| *u) {
            return match sets.get(set_idx + 1) {
                None => true,
                Some(next) => {
                    let mut next_used = vec![false; next.len()];
                    self.evidence_dfs(sets, set_idx + 1, &mut next_used, prefix)
                }
            };
        }
        for (i, ev) in set.events().iter().enumerate() {
            if used[i] || self.log_factor(prefix, &ev.activity) == f64::NEG_INFINITY {
                continue;
            }
            used[i] = true;
            prefix.push(ev.activity.clone());
            if self.evidence_dfs(sets, set_idx, used, prefix) {
                return true;
            }
            prefix.pop();
            used[i] = false;
        }
        false
    }

    pub fn distribution(&self, trace: &Trace) -> Result<ScoredDistribution, ResolutionError> {
        self.distribution_under_cap(trace, DEFAULT_ENUMERATION_CAP)
    }

    /// Scores all resolutions and normalizes into a probability distribution,
    /// falling back to uniform when every raw score is zero.
    pub fn distribution_under_cap(
        &self,
        trace: &Trace,
        cap: u128,
    ) -> Result<ScoredDistribution, ResolutionError> {
        let count = trace.resolution_count().unwrap_or(u128::MAX);
        if count > cap {
            return Err(ResolutionError::EnumerationCapExceeded { count, cap });
        }
        let mut scored: Vec<(Resolution, f64)> = enumerate(trace)
            .map(|r| {
                let ls = self.log_score(&r.word);
                (r, ls)
            })
            .collect();
        let max_ls = scored.iter().map(|(_, ls)| *ls).fold(f64::NEG_INFINITY, f64::max);
        let fallback_used = max_ls == f64::NEG_INFINITY;
        let entries = if fallback_used {
            let p = 1.0 / scored.len() as f64;
            scored
                .drain(..)
                .map(|(resolution, _)| ScoredResolution {
                    resolution,
                    raw_score: 0.0,
                    probability: p,
                })
                .collect()
        } else {
            // Log-sum-exp against the max keeps normalization stable for
            // long products.
            let total: f64 = scored.iter().map(|(_, ls)| (ls - max_ls).exp()).sum();
            scored
                .drain(..)
                .map(|(resolution, ls)| ScoredResolution {
                    resolution,
                    raw_score: ls.exp(),
                    probability: (ls - max_ls).exp() / total,
                })
                .collect()
        };
        Ok(ScoredDistribution { entries, fallback_used })
    }
}

/// Whether `word` is one of the resolutions of `trace`: same length, and
/// each block of positions matches the corresponding event set's activity
/// multiset.
pub fn is_resolution_of(word: &[String], trace: &Trace) -> bool {
    if word.len() != trace.event_count() {
        return false;
    }
    let mut pos = 0;
    for set in trace.event_sets() {
        let mut chunk: Vec<&str> = word[pos..pos + set.len()].iter().map(|s| s.as_str()).collect();
        chunk.sort_unstable();
        let expected: Vec<&str> = set.activities().collect();
        if chunk != expected {
            return false;
        }
        pos += set.len();
    }
    true
}

/// Maximal runs of consecutive singleton event sets, as activity sequences.
/// With `with_start_marker`, a virtual singleton set holding the marker is
/// prepended to the trace.
fn certain_runs(trace: &Trace, with_start_marker: bool) -> Vec<Vec<String>> {
    let mut runs = Vec::new();
    let mut current: Vec<String> = Vec::new();
    if with_start_marker {
        current.push(START_MARKER.to_string());
    }
    for set in trace.event_sets() {
        if set.len() == 1 {
            current.push(set.events()[0].activity.clone());
        } else {
            if !current.is_empty() {
                runs.push(std::mem::take(&mut current));
            }
        }
    }
    if !current.is_empty() {
        runs.push(current);
    }
    runs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::log::EventLog;
    use crate::testutil::{event, running_example_trace, word};

    fn certain_trace(case: &str, activities: &[&str]) -> Trace {
        let events = activities
            .iter()
            .enumerate()
            .map(|(i, a)| event(&format!("{case}-{i}"), a, case, i as i64 * 1000))
            .collect();
        Trace::from_events(case.to_string(), events)
    }

    /// Log whose certain traces are 3x pi4's word and 1x pi5's word.
    fn te_log() -> EventLog {
        let mut traces = vec![running_example_trace()];
        for i in 0..3 {
            traces.push(certain_trace(&format!("p4-{i}"), &["A", "B", "C", "D", "F", "G"]));
        }
        traces.push(certain_trace("p5", &["A", "C", "B", "D", "F", "G"]));
        EventLog::from_traces(traces)
    }

    #[test]
    fn trace_equivalence_scores_variant_fractions() {
        let model = BehavioralModel::build(ModelKind::TraceEquivalence, &te_log()).unwrap();
        assert!((model.score(&word(&["A", "B", "C", "D", "F", "G"])) - 0.75).abs() < 1e-12);
        assert!((model.score(&word(&["A", "C", "B", "D", "F", "G"])) - 0.25).abs() < 1e-12);
        assert_eq!(model.score(&word(&["A", "B", "C", "F", "D", "G"])), 0.0);
    }

    #[test]
    fn te_distribution_normalizes_raw_scores() {
        let model = BehavioralModel::build(ModelKind::TraceEquivalence, &te_log()).unwrap();
        let dist = model.distribution(&running_example_trace()).unwrap();
        assert!(!dist.fallback_used);
        let by_word: HashMap<_, _> =
            dist.entries.iter().map(|e| (e.resolution.word.clone(), e.probability)).collect();
        assert!((by_word[&word(&["A", "B", "C", "D", "F", "G"])] - 0.75).abs() < 1e-12);
        assert!((by_word[&word(&["A", "C", "B", "D", "F", "G"])] - 0.25).abs() < 1e-12);
        assert_eq!(by_word[&word(&["A", "B", "C", "F", "D", "G"])], 0.0);
        assert_eq!(by_word[&word(&["A", "C", "B", "F", "D", "G"])], 0.0);
    }

    #[test]
    fn two_gram_conditional_counts_per_trace() {
        // Certain traces: 2x <a,b,c>, 1x <a,c,b>; P(c | <b>) = 2/3.
        let log = EventLog::from_traces(vec![
            certain_trace("t1", &["a", "b", "c"]),
            certain_trace("t2", &["a", "b", "c"]),
            certain_trace("t3", &["a", "c", "b"]),
        ]);
        let model =
            BehavioralModel::build(ModelKind::NGram { n: 2, start_marker: false }, &log).unwrap();
        let p = model.log_factor(&word(&["a", "b"]), "c").exp();
        assert!((p - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn start_marker_conditions_the_first_event() {
        let log = EventLog::from_traces(vec![
            certain_trace("t1", &["a", "b"]),
            certain_trace("t2", &["a", "b"]),
            certain_trace("t3", &["b", "a"]),
        ]);
        let model =
            BehavioralModel::build(ModelKind::NGram { n: 2, start_marker: true }, &log).unwrap();
        // P(a | <start>) = 2/3, P(b | <start>) = 1/3.
        assert!((model.log_factor(&[], "a").exp() - 2.0 / 3.0).abs() < 1e-12);
        assert!((model.log_factor(&[], "b").exp() - 1.0 / 3.0).abs() < 1e-12);
        // Without the marker the first event is unconstrained.
        let plain =
            BehavioralModel::build(ModelKind::NGram { n: 2, start_marker: false }, &log).unwrap();
        assert_eq!(plain.log_factor(&[], "b"), 0.0);
    }

    #[test]
    fn uncertain_windows_contribute_no_ngram_evidence() {
        // b,c share a timestamp: the window <b,c> is not certain.
        let log = EventLog::from_traces(vec![Trace::from_events(
            "t".into(),
            vec![
                event("1", "a", "t", 0),
                event("2", "b", "t", 1000),
                event("3", "c", "t", 1000),
                event("4", "d", "t", 2000),
            ],
        )]);
        let model =
            BehavioralModel::build(ModelKind::NGram { n: 2, start_marker: false }, &log).unwrap();
        assert_eq!(model.log_factor(&word(&["b"]), "c"), f64::NEG_INFINITY);
        // But <a> alone is certain evidence.
        assert_eq!(model.log_factor(&word(&["x"]), "a"), f64::NEG_INFINITY); // unknown ctx
    }

    #[test]
    fn weak_order_counts_non_adjacent_and_uncertain_evidence() {
        // sigma2 = <{a,b},{d},{c},{f,g}> provides evidence for b before c.
        let sigma2 = Trace::from_events(
            "s2".into(),
            vec![
                event("a", "b", "s2", 0),
                event("b", "a", "s2", 0),
                event("d", "d", "s2", 1000),
                event("c", "c", "s2", 2000),
                event("f", "f", "s2", 3000),
                event("g", "g", "s2", 3000),
            ],
        );
        let log = EventLog::from_traces(vec![sigma2]);
        let model = BehavioralModel::build(ModelKind::WeakOrder, &log).unwrap();
        // One trace contains both b and c, and it orders b before c.
        assert!((model.log_factor(&word(&["b"]), "c").exp() - 1.0).abs() < 1e-12);
        assert_eq!(model.log_factor(&word(&["c"]), "b"), f64::NEG_INFINITY);
    }

    #[test]
    fn weak_order_on_single_event_is_empty_product() {
        let log = EventLog::from_traces(vec![certain_trace("t", &["a"])]);
        let model = BehavioralModel::build(ModelKind::WeakOrder, &log).unwrap();
        assert_eq!(model.score(&word(&["a"])), 1.0);
    }

    #[test]
    fn uniform_distribution_over_sigma1() {
        let log = EventLog::from_traces(vec![running_example_trace()]);
        let model = BehavioralModel::build(ModelKind::Uniform, &log).unwrap();
        let dist = model.distribution(&running_example_trace()).unwrap();
        assert!(dist.entries.iter().all(|e| (e.probability - 0.25).abs() < 1e-12));
        assert!(!dist.fallback_used);
    }

    #[test]
    fn zero_evidence_falls_back_to_uniform() {
        // TE over a log with no certain traces.
        let log = EventLog::from_traces(vec![running_example_trace()]);
        let model = BehavioralModel::build(ModelKind::TraceEquivalence, &log).unwrap();
        let dist = model.distribution(&running_example_trace()).unwrap();
        assert!(dist.fallback_used);
        assert!(dist.entries.iter().all(|e| (e.probability - 0.25).abs() < 1e-12));
    }

    #[test]
    fn certain_trace_gets_probability_one() {
        let t = certain_trace("t", &["a", "b"]);
        let log = EventLog::from_traces(vec![t.clone()]);
        let model = BehavioralModel::build(ModelKind::TraceEquivalence, &log).unwrap();
        let dist = model.distribution(&t).unwrap();
        assert_eq!(dist.entries.len(), 1);
        assert_eq!(dist.entries[0].probability, 1.0);
    }

    #[test]
    fn resolution_membership_respects_blocks() {
        let t = running_example_trace();
        assert!(is_resolution_of(&word(&["A", "B", "C", "D", "F", "G"]), &t));
        assert!(is_resolution_of(&word(&["A", "C", "B", "F", "D", "G"]), &t));
        // Crosses the {B,C} / {D,F} block boundary.
        assert!(!is_resolution_of(&word(&["A", "B", "D", "C", "F", "G"]), &t));
        assert!(!is_resolution_of(&word(&["A", "B", "C", "D", "F"]), &t));
    }

    #[test]
    fn evidence_check_matches_distribution() {
        let log = te_log();
        for kind in [
            ModelKind::TraceEquivalence,
            ModelKind::NGram { n: 2, start_marker: true },
            ModelKind::WeakOrder,
            ModelKind::Uniform,
        ] {
            let model = BehavioralModel::build(kind, &log).unwrap();
            for trace in log.traces() {
                let dist = model.distribution(trace).unwrap();
                assert_eq!(model.has_evidence(trace), !dist.fallback_used, "{kind:?}");
            }
        }
        // TE over the lone uncertain trace: no certain evidence anywhere.
        let lone = EventLog::from_traces(vec![running_example_trace()]);
        let model = BehavioralModel::build(ModelKind::TraceEquivalence, &lone).unwrap();
        assert!(!model.has_evidence(&running_example_trace()));
    }

    #[test]
    fn distributions_sum_to_one() {
        let log = te_log();
        for kind in [
            ModelKind::TraceEquivalence,
            ModelKind::NGram { n: 2, start_marker: true },
            ModelKind::NGram { n: 3, start_marker: false },
            ModelKind::WeakOrder,
            ModelKind::Uniform,
        ] {
            let model = BehavioralModel::build(kind, &log).unwrap();
            for trace in log.traces() {
                let dist = model.distribution(trace).unwrap();
                let sum: f64 = dist.entries.iter().map(|e| e.probability).sum();
                assert!((sum - 1.0).abs() < 1e-9, "{kind:?}: sum {sum}");
            }
        }
    }
}
