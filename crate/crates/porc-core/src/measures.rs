//! Model-selection measures: coverage, resolution support at trace and
//! activity-pair level, uncertainty ratio, and a recommendation heuristic
//! that picks the strictest adequately-supported estimator.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use thiserror::Error;

use crate::behavioral::{is_resolution_of, BehavioralError, BehavioralModel, ModelKind};
use crate::log::{EventLog, Trace};
use crate::resolution::{enumerate, DEFAULT_ENUMERATION_CAP};

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("activities {0:?} and {1:?} never share an event set in an uncertain trace")]
    NoUncertainPair(String, String),
    #[error(transparent)]
    Behavioral(#[from] BehavioralError),
}

/// Strictness order used by the recommendation heuristic.
pub fn strictness_order() -> Vec<ModelKind> {
    vec![
        ModelKind::TraceEquivalence,
        ModelKind::NGram { n: 4, start_marker: true },
        ModelKind::NGram { n: 3, start_marker: true },
        ModelKind::NGram { n: 2, start_marker: true },
        ModelKind::WeakOrder,
    ]
}

#[derive(Debug, Clone)]
pub struct ModelMeasures {
    pub coverage: f64,
    pub mean_uncertainty_ratio: f64,
}

#[derive(Debug, Clone)]
pub struct PairMeasures {
    pub uncertain_traces: usize,
    pub support: usize,
    pub ratio: f64,
}

#[derive(Debug, Clone)]
pub struct SelectionReport {
    /// Keyed by `ModelKind::name()`, in strictness order.
    pub per_model: Vec<(String, ModelMeasures)>,
    /// Pair measures under the recommended model.
    pub per_pair: BTreeMap<(String, String), PairMeasures>,
    pub recommended: ModelKind,
}

/// Fraction of uncertain traces for which the model assigns a positive raw
/// score to at least one resolution. 1.0 when the log has no uncertainty.
pub fn coverage(log: &EventLog, model: &BehavioralModel) -> f64 {
    let uncertain: Vec<&Trace> = log.uncertain_traces().collect();
    if uncertain.is_empty() {
        return 1.0;
    }
    let covered = uncertain.iter().filter(|t| model.has_evidence(t)).count();
    covered as f64 / uncertain.len() as f64
}

/// Unordered activity pairs sharing an event set in the trace.
fn unordered_pairs(trace: &Trace) -> BTreeSet<(String, String)> {
    let mut pairs = BTreeSet::new();
    for set in trace.event_sets() {
        let acts: Vec<&str> = set.activities().collect();
        for i in 0..acts.len() {
            for j in (i + 1)..acts.len() {
                if acts[i] != acts[j] {
                    pairs.insert(canonical_pair(acts[i], acts[j]));
                }
            }
        }
    }
    pairs
}

fn canonical_pair(x: &str, y: &str) -> (String, String) {
    if x <= y {
        (x.to_string(), y.to_string())
    } else {
        (y.to_string(), x.to_string())
    }
}

/// Whether `x` occurs in a strictly earlier event set than `y`.
fn orders(trace: &Trace, x: &str, y: &str) -> bool {
    let sets = trace.event_sets();
    (0..sets.len()).any(|i| {
        sets[i].activities().any(|a| a == x)
            && sets[i + 1..].iter().any(|s| s.activities().any(|a| a == y))
    })
}

/// Length-N windows of the trace's resolutions that cover at least one
/// position drawn from an uncertain event set. Traces whose resolution count
/// exceeds the cap contribute nothing (conservative undercount).
fn uncertain_windows(trace: &Trace, n: usize, cap: u128) -> HashSet<Vec<String>> {
    let mut windows = HashSet::new();
    if trace.resolution_count().map(|c| c > cap).unwrap_or(true) {
        return windows;
    }
    // Position -> whether it came from an uncertain set (fixed by blocks).
    let mut uncertain_pos = Vec::new();
    for set in trace.event_sets() {
        uncertain_pos.extend(std::iter::repeat(set.len() > 1).take(set.len()));
    }
    for resolution in enumerate(trace) {
        if resolution.word.len() < n {
            continue;
        }
        for (start, window) in resolution.word.windows(n).enumerate() {
            if uncertain_pos[start..start + n].iter().any(|u| *u) {
                windows.insert(window.to_vec());
            }
        }
    }
    windows
}

/// Consecutive activity windows of length `n` occurring inside maximal runs
/// of singleton event sets of `trace`.
fn certain_windows(trace: &Trace, n: usize) -> HashSet<Vec<String>> {
    let mut windows = HashSet::new();
    let mut run: Vec<String> = Vec::new();
    for set in trace.event_sets() {
        if set.len() == 1 {
            run.push(set.events()[0].activity.clone());
        } else {
            for w in run.windows(n) {
                windows.insert(w.to_vec());
            }
            run.clear();
        }
    }
    for w in run.windows(n) {
        windows.insert(w.to_vec());
    }
    windows
}

/// Number of traces in the log providing evidence for some resolution of
/// `trace` under the model. 0 for certain traces.
pub fn support_trace(log: &EventLog, model: &BehavioralModel, trace: &Trace) -> usize {
    if trace.is_certain() {
        return 0;
    }
    match model.kind() {
        ModelKind::Uniform => log.traces().len(),
        ModelKind::TraceEquivalence => log
            .certain_traces()
            .filter(|t| {
                t.certain_word().map(|w| is_resolution_of(&w, trace)).unwrap_or(false)
            })
            .count(),
        ModelKind::NGram { n, .. } => {
            let targets = uncertain_windows(trace, n, DEFAULT_ENUMERATION_CAP);
            log.traces()
                .iter()
                .filter(|t| !certain_windows(t, n).is_disjoint(&targets))
                .count()
        }
        ModelKind::WeakOrder => {
            let pairs = unordered_pairs(trace);
            log.traces()
                .iter()
                .filter(|t| {
                    pairs.iter().any(|(x, y)| orders(t, x, y) || orders(t, y, x))
                })
                .count()
        }
    }
}

/// Uncertain traces in which `x` and `y` share an event set.
pub fn uncertain_traces_for_pair<'a>(log: &'a EventLog, x: &str, y: &str) -> Vec<&'a Trace> {
    let pair = canonical_pair(x, y);
    log.uncertain_traces().filter(|t| unordered_pairs(t).contains(&pair)).collect()
}

/// Number of traces providing evidence usable for ordering `x` against `y`,
/// in either direction.
pub fn support_pair(log: &EventLog, model: &BehavioralModel, x: &str, y: &str) -> usize {
    match model.kind() {
        ModelKind::Uniform => log.traces().len(),
        ModelKind::WeakOrder => log
            .traces()
            .iter()
            .filter(|t| orders(t, x, y) || orders(t, y, x))
            .count(),
        ModelKind::TraceEquivalence => {
            let uncertain = uncertain_traces_for_pair(log, x, y);
            log.certain_traces()
                .filter(|t| {
                    t.certain_word()
                        .map(|w| uncertain.iter().any(|u| is_resolution_of(&w, u)))
                        .unwrap_or(false)
                })
                .count()
        }
        ModelKind::NGram { n, .. } => {
            let mut targets: HashSet<Vec<String>> = HashSet::new();
            for trace in uncertain_traces_for_pair(log, x, y) {
                for w in uncertain_windows(trace, n, DEFAULT_ENUMERATION_CAP) {
                    if w.iter().any(|a| a == x) && w.iter().any(|a| a == y) {
                        targets.insert(w);
                    }
                }
            }
            log.traces()
                .iter()
                .filter(|t| !certain_windows(t, n).is_disjoint(&targets))
                .count()
        }
    }
}

/// support_pair divided by the number of uncertain traces containing the
/// pair. Errors when no uncertain trace contains the pair.
pub fn uncertainty_ratio(
    log: &EventLog,
    model: &BehavioralModel,
    x: &str,
    y: &str,
) -> Result<f64, MeasureError> {
    let uncertain = uncertain_traces_for_pair(log, x, y);
    if uncertain.is_empty() {
        return Err(MeasureError::NoUncertainPair(x.to_string(), y.to_string()));
    }
    Ok(support_pair(log, model, x, y) as f64 / uncertain.len() as f64)
}

/// All unordered pairs occurring in some uncertain trace of the log.
pub fn uncertain_pairs(log: &EventLog) -> BTreeSet<(String, String)> {
    let mut pairs = BTreeSet::new();
    for trace in log.uncertain_traces() {
        pairs.extend(unordered_pairs(trace));
    }
    pairs
}

fn model_measures(log: &EventLog, model: &BehavioralModel) -> ModelMeasures {
    let pairs = uncertain_pairs(log);
    let cov = coverage(log, model);
    let mean = if pairs.is_empty() {
        0.0
    } else {
        let sum: f64 = pairs
            .iter()
            .map(|(x, y)| uncertainty_ratio(log, model, x, y).unwrap_or(0.0))
            .sum();
        sum / pairs.len() as f64
    };
    ModelMeasures { coverage: cov, mean_uncertainty_ratio: mean }
}

/// Picks the strictest model whose coverage exceeds `coverage_threshold` and
/// whose mean uncertainty ratio reaches `min_ratio`; falls back to weak
/// order. Returns the full per-model and per-pair report.
pub fn recommend(
    log: &EventLog,
    coverage_threshold: f64,
    min_ratio: f64,
) -> Result<SelectionReport, MeasureError> {
    let mut per_model = Vec::new();
    let mut recommended = None;
    let mut models = Vec::new();
    for kind in strictness_order() {
        let model = BehavioralModel::build(kind, log)?;
        let measures = model_measures(log, &model);
        let no_uncertainty = log.uncertain_traces().next().is_none();
        let ratio_ok = no_uncertainty || measures.mean_uncertainty_ratio >= min_ratio;
        if recommended.is_none() && measures.coverage > coverage_threshold && ratio_ok {
            recommended = Some(kind);
        }
        per_model.push((kind.name(), measures));
        models.push((kind, model));
    }
    let recommended = recommended.unwrap_or(ModelKind::WeakOrder);
    let model = &models.iter().find(|(k, _)| *k == recommended).unwrap().1;
    let mut per_pair = BTreeMap::new();
    for (x, y) in uncertain_pairs(log) {
        let uncertain = uncertain_traces_for_pair(log, &x, &y).len();
        let support = support_pair(log, model, &x, &y);
        per_pair.insert(
            (x, y),
            PairMeasures {
                uncertain_traces: uncertain,
                support,
                ratio: support as f64 / uncertain as f64,
            },
        );
    }
    Ok(SelectionReport { per_model, per_pair, recommended })
}
