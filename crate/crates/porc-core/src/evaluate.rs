//! Desk-scale evaluation harness: simulate gold logs from a net, coarsen
//! timestamps to create order uncertainty, optionally inject noise, then
//! measure how well each estimator recovers the true conformance values.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::alignment::{ConfKind, ConformanceChecker};
use crate::approx::{trace_conformance, ApproxError};
use crate::behavioral::{BehavioralError, BehavioralModel, ModelKind};
use crate::log::{Event, EventLog, LogError, Trace};
use crate::petri::{PetriError, PetriNet, PetriNetBuilder};
use crate::resolution::DEFAULT_ENUMERATION_CAP;
use crate::time::{Precision, Timestamp};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("no gold order recorded for case {0:?}")]
    MissingGoldOrder(String),
    #[error(transparent)]
    Log(#[from] LogError),
    #[error(transparent)]
    Petri(#[from] PetriError),
    #[error(transparent)]
    Behavioral(#[from] BehavioralError),
    #[error(transparent)]
    Approx(#[from] ApproxError),
}

/// A coarsened log paired with the total orders it was derived from.
#[derive(Debug, Clone)]
pub struct GoldLog {
    pub coarse: EventLog,
    pub gold_orders: BTreeMap<String, Vec<String>>,
}

impl GoldLog {
    /// Coarsens a (certain) fine-grained log, remembering the original
    /// event order of each trace as the gold standard.
    pub fn from_fine_log(fine: &EventLog, unit: Precision) -> Result<GoldLog, EvalError> {
        let mut gold_orders = BTreeMap::new();
        for trace in fine.traces() {
            let word: Vec<String> = trace.events().map(|e| e.activity.clone()).collect();
            gold_orders.insert(trace.case_id.as_str().to_string(), word);
        }
        Ok(GoldLog { coarse: fine.coarsen(unit)?, gold_orders })
    }

    pub fn gold_word(&self, case_id: &str) -> Result<&Vec<String>, EvalError> {
        self.gold_orders
            .get(case_id)
            .ok_or_else(|| EvalError::MissingGoldOrder(case_id.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct ModelReport {
    pub rmse: f64,
    /// False when the log has no uncertain traces (RMSE undefined, 0 used).
    pub rmse_defined: bool,
    pub log_error: f64,
    pub uncertain_traces: usize,
    pub runtime_ms: u128,
    pub approx: Option<ApproxReport>,
}

#[derive(Debug, Clone)]
pub struct ApproxReport {
    pub rmse: f64,
    pub log_error: f64,
    pub runtime_ms: u128,
    /// approx RMSE minus exact RMSE.
    pub additional_rmse: f64,
    /// 1 - approx_runtime / exact_runtime; negative when approx was slower.
    pub time_saved_ratio: f64,
}

#[derive(Debug, Clone)]
pub struct EvalReport {
    pub per_model: Vec<(String, ModelReport)>,
    pub true_log_fitness: f64,
}

/// Root-mean-squared error between gold fitness and expected fitness over
/// the uncertain traces, with a pluggable per-word fitness function.
/// Returns (rmse, defined, uncertain_count).
pub fn trace_rmse_with<F>(
    gold: &GoldLog,
    model: &BehavioralModel,
    mut fit: F,
) -> Result<(f64, bool, usize), EvalError>
where
    F: FnMut(&[String]) -> Result<f64, EvalError>,
{
    let uncertain: Vec<&Trace> = gold.coarse.uncertain_traces().collect();
    if uncertain.is_empty() {
        return Ok((0.0, false, 0));
    }
    let mut sum_sq = 0.0;
    for trace in &uncertain {
        let gold_fit = fit(gold.gold_word(trace.case_id.as_str())?)?;
        let p_fit = expected_fitness(model, trace, &mut fit)?;
        sum_sq += (gold_fit - p_fit) * (gold_fit - p_fit);
    }
    Ok(((sum_sq / uncertain.len() as f64).sqrt(), true, uncertain.len()))
}

/// |fit(L) - P_fit(L)|: gold mean fitness over all traces vs expected mean.
pub fn log_error_with<F>(gold: &GoldLog, model: &BehavioralModel, mut fit: F) -> Result<f64, EvalError>
where
    F: FnMut(&[String]) -> Result<f64, EvalError>,
{
    let mut gold_sum = 0.0;
    let mut est_sum = 0.0;
    let n = gold.coarse.traces().len() as f64;
    for trace in gold.coarse.traces() {
        gold_sum += fit(gold.gold_word(trace.case_id.as_str())?)?;
        est_sum += if trace.is_certain() {
            fit(&trace.certain_word().unwrap())?
        } else {
            expected_fitness(model, trace, &mut fit)?
        };
    }
    Ok(((gold_sum - est_sum) / n).abs())
}

/// Baseline BL2: log fitness from the certain traces only, compared against
/// the gold mean over all traces. Errors when every trace is uncertain.
pub fn bl2_log_error_with<F>(gold: &GoldLog, mut fit: F) -> Result<f64, EvalError>
where
    F: FnMut(&[String]) -> Result<f64, EvalError>,
{
    let mut gold_sum = 0.0;
    let mut certain_sum = 0.0;
    let mut certain_n = 0usize;
    for trace in gold.coarse.traces() {
        gold_sum += fit(gold.gold_word(trace.case_id.as_str())?)?;
        if let Some(word) = trace.certain_word() {
            certain_sum += fit(&word)?;
            certain_n += 1;
        }
    }
    let gold_mean = gold_sum / gold.coarse.traces().len() as f64;
    let bl2 = if certain_n == 0 { 0.0 } else { certain_sum / certain_n as f64 };
    Ok((gold_mean - bl2).abs())
}

fn expected_fitness<F>(model: &BehavioralModel, trace: &Trace, fit: &mut F) -> Result<f64, EvalError>
where
    F: FnMut(&[String]) -> Result<f64, EvalError>,
{
    let dist = model
        .distribution_under_cap(trace, DEFAULT_ENUMERATION_CAP)
        .map_err(ApproxError::from)?;
    let mut expected = 0.0;
    for entry in &dist.entries {
        if entry.probability > 0.0 {
            expected += entry.probability * fit(&entry.resolution.word)?;
        }
    }
    Ok(expected)
}

/// Eq.-style RMSE with alignment fitness against `net`.
pub fn trace_rmse(
    gold: &GoldLog,
    net: &PetriNet,
    model: &BehavioralModel,
) -> Result<(f64, bool, usize), EvalError> {
    let checker = ConformanceChecker::new(net);
    trace_rmse_with(gold, model, |w| Ok(checker.conf(ConfKind::Fit, w)?))
}

pub fn log_error(
    gold: &GoldLog,
    net: &PetriNet,
    model: &BehavioralModel,
) -> Result<f64, EvalError> {
    let checker = ConformanceChecker::new(net);
    log_error_with(gold, model, |w| Ok(checker.conf(ConfKind::Fit, w)?))
}

pub fn bl2_log_error(gold: &GoldLog, net: &PetriNet) -> Result<f64, EvalError> {
    let checker = ConformanceChecker::new(net);
    bl2_log_error_with(gold, |w| Ok(checker.conf(ConfKind::Fit, w)?))
}

/// Runs every requested estimator over the gold log, timing the exact pass
/// and, when `approx = Some((alpha, delta))`, a second approximate pass with
/// its own alignment cache.
pub fn run_benchmark(
    gold: &GoldLog,
    net: &PetriNet,
    kinds: &[ModelKind],
    approx: Option<(f64, f64)>,
) -> Result<EvalReport, EvalError> {
    let gold_checker = ConformanceChecker::new(net);
    let mut gold_sum = 0.0;
    for trace in gold.coarse.traces() {
        gold_sum += gold_checker.conf(ConfKind::Fit, gold.gold_word(trace.case_id.as_str())?)?;
    }
    let true_log_fitness = gold_sum / gold.coarse.traces().len() as f64;

    let mut per_model = Vec::new();
    for kind in kinds {
        let model = BehavioralModel::build(*kind, &gold.coarse)?;
        let (exact_rmse, defined, uncertain, exact_err, exact_ms) =
            timed_pass(gold, net, &model, None)?;
        let approx_report = match approx {
            None => None,
            Some((alpha, delta)) => {
                let (a_rmse, _, _, a_err, a_ms) =
                    timed_pass(gold, net, &model, Some((alpha, delta)))?;
                let saved = if exact_ms > 0 {
                    1.0 - a_ms as f64 / exact_ms as f64
                } else {
                    0.0
                };
                Some(ApproxReport {
                    rmse: a_rmse,
                    log_error: a_err,
                    runtime_ms: a_ms,
                    additional_rmse: a_rmse - exact_rmse,
                    time_saved_ratio: saved,
                })
            }
        };
        per_model.push((
            kind.name(),
            ModelReport {
                rmse: exact_rmse,
                rmse_defined: defined,
                log_error: exact_err,
                uncertain_traces: uncertain,
                runtime_ms: exact_ms,
                approx: approx_report,
            },
        ));
    }
    Ok(EvalReport { per_model, true_log_fitness })
}

// One full pass over the log with a fresh alignment cache; returns
// (rmse, rmse_defined, uncertain_count, log_error, elapsed_ms).
fn timed_pass(
    gold: &GoldLog,
    net: &PetriNet,
    model: &BehavioralModel,
    approx: Option<(f64, f64)>,
) -> Result<(f64, bool, usize, f64, u128), EvalError> {
    let checker = ConformanceChecker::new(net);
    let start = Instant::now();
    let mut sum_sq = 0.0;
    let mut uncertain = 0usize;
    let mut gold_sum = 0.0;
    let mut est_sum = 0.0;
    for trace in gold.coarse.traces() {
        let gold_fit = checker.conf(ConfKind::Fit, gold.gold_word(trace.case_id.as_str())?)?;
        gold_sum += gold_fit;
        let p_fit = if trace.is_certain() {
            checker.conf(ConfKind::Fit, &trace.certain_word().unwrap())?
        } else {
            uncertain += 1;
            let res = trace_conformance(
                model,
                trace,
                &checker,
                ConfKind::Fit,
                approx,
                DEFAULT_ENUMERATION_CAP,
            )?;
            res.expected
        };
        est_sum += p_fit;
        if !trace.is_certain() {
            sum_sq += (gold_fit - p_fit) * (gold_fit - p_fit);
        }
    }
    let elapsed = start.elapsed().as_millis();
    let n = gold.coarse.traces().len() as f64;
    let (rmse, defined) = if uncertain == 0 {
        (0.0, false)
    } else {
        ((sum_sq / uncertain as f64).sqrt(), true)
    };
    Ok((rmse, defined, uncertain, ((gold_sum - est_sum) / n).abs(), elapsed))
}

/// Simulates `count` traces as uniform random walks over the net, with
/// exponentially distributed inter-event times (mean `mean_secs`). Produces
/// a second-precision log whose traces are certain.
pub fn simulate(
    net: &PetriNet,
    count: usize,
    mean_secs: f64,
    seed: u64,
) -> Result<EventLog, EvalError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut traces = Vec::with_capacity(count);
    for case_idx in 0..count {
        let case_id = format!("sim{case_idx}");
        let word = random_walk(net, &mut rng)?;
        let mut events = Vec::with_capacity(word.len());
        let mut t_ms: i64 = 0;
        for (i, activity) in word.into_iter().enumerate() {
            let u: f64 = rng.gen::<f64>().max(1e-12);
            t_ms += ((-u.ln()) * mean_secs * 1000.0).ceil() as i64;
            events.push(Event {
                id: format!("{case_id}-{i}"),
                activity,
                case_id: case_id.clone(),
                timestamp: Timestamp::from_millis(t_ms).truncate(Precision::Second),
            });
        }
        traces.push(Trace::from_events(case_id, events));
    }
    Ok(EventLog::from_traces(traces))
}

// Fires uniformly random enabled transitions until the final marking; backs
// off and retries on dead ends, bounded by a step budget.
fn random_walk(net: &PetriNet, rng: &mut ChaCha8Rng) -> Result<Vec<String>, EvalError> {
    const MAX_STEPS: usize = 10_000;
    'attempt: for _ in 0..100 {
        let mut marking = net.initial_marking.clone();
        let mut word = Vec::new();
        for _ in 0..MAX_STEPS {
            if marking == net.final_marking {
                return Ok(word);
            }
            let enabled = net.enabled(&marking);
            if enabled.is_empty() {
                continue 'attempt;
            }
            let t = *enabled.choose(rng).unwrap();
            marking = net.fire(&marking, t)?;
            if let Some(label) = &net.transitions[t].label {
                word.push(label.clone());
            }
        }
        continue 'attempt;
    }
    Err(EvalError::Petri(PetriError::NoAcceptedWord))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseKind {
    Insert,
    Swap,
    Remove,
}

/// Applies one random insert/swap/remove to a `fraction` of traces, drawing
/// inserted activities from the log's own universe. Timestamps of inserted
/// events reuse an existing event's timestamp so grouping stays valid.
pub fn inject_noise(
    log: &EventLog,
    fraction: f64,
    kinds: &[NoiseKind],
    seed: u64,
) -> EventLog {
    assert!(!kinds.is_empty());
    let universe: Vec<String> = log.activity_universe().iter().cloned().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let traces = log
        .traces()
        .iter()
        .map(|trace| {
            if rng.gen::<f64>() >= fraction {
                return trace.clone();
            }
            let mut events: Vec<Event> = trace.events().cloned().collect();
            match kinds.choose(&mut rng).unwrap() {
                NoiseKind::Insert => {
                    let at = rng.gen_range(0..events.len());
                    let mut ev = events[at].clone();
                    ev.id = format!("{}-noise", ev.id);
                    ev.activity = universe.choose(&mut rng).unwrap().clone();
                    events.insert(at, ev);
                }
                NoiseKind::Swap => {
                    if events.len() >= 2 {
                        let at = rng.gen_range(0..events.len() - 1);
                        let t = events[at].timestamp;
                        events[at].timestamp = events[at + 1].timestamp;
                        events[at + 1].timestamp = t;
                    }
                }
                NoiseKind::Remove => {
                    if events.len() > 1 {
                        let at = rng.gen_range(0..events.len());
                        events.remove(at);
                    }
                }
            }
            Trace::from_events(trace.case_id.as_str().to_string(), events)
        })
        .collect();
    EventLog::from_traces(traces)
}

/// Builds a random net as a sequence of blocks, each either a single labeled
/// transition or an AND-split of two concurrent labeled transitions.
/// Concurrency makes several orders of the same trace conform, which is what
/// partial order resolution has to recover.
pub fn random_series_parallel_net(blocks: usize, seed: u64) -> PetriNet {
    assert!(blocks >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut builder = PetriNet::builder();
    let mut label_idx = 0usize;
    let mut place_idx = 0usize;
    let new_place = |builder: &mut PetriNetBuilder, idx: &mut usize| -> String {
        *idx += 1;
        let name = format!("p{idx}");
        builder.place(&name);
        name
    };
    builder.place("p0");
    let mut prev = "p0".to_string();
    for b in 0..blocks {
        if rng.gen::<f64>() < 0.5 {
            let out = new_place(&mut builder, &mut place_idx);
            let label = format!("a{label_idx}");
            label_idx += 1;
            builder.transition(&format!("t{b}"), Some(&label), &[&prev], &[&out]);
            prev = out;
        } else {
            // AND-split: silent fork, two labeled branches, silent join.
            let left_in = new_place(&mut builder, &mut place_idx);
            let right_in = new_place(&mut builder, &mut place_idx);
            let left_out = new_place(&mut builder, &mut place_idx);
            let right_out = new_place(&mut builder, &mut place_idx);
            let out = new_place(&mut builder, &mut place_idx);
            builder.transition(&format!("t{b}-fork"), None, &[&prev], &[&left_in, &right_in]);
            let l1 = format!("a{label_idx}");
            label_idx += 1;
            builder.transition(&format!("t{b}-l"), Some(&l1), &[&left_in], &[&left_out]);
            let l2 = format!("a{label_idx}");
            label_idx += 1;
            builder.transition(&format!("t{b}-r"), Some(&l2), &[&right_in], &[&right_out]);
            builder.transition(&format!("t{b}-join"), None, &[&left_out, &right_out], &[&out]);
            prev = out;
        }
    }
    builder.initial(&[("p0", 1)]);
    builder.finals(&[(&prev, 1)]);
    builder.build().expect("generated net is well-formed")
}
