//! Event log model: traces as sequences of disjoint event sets.
//!
//! Events of one case that share a timestamp at the log's declared precision
//! form one event set; equal-timestamp grouping is the sole source of order
//! uncertainty.

pub mod csv;
pub mod xes;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::time::{Precision, Timestamp};

#[derive(Debug, Error)]
pub enum LogError {
    #[error("malformed row at line {line}: {excerpt}")]
    MalformedRow { line: u64, excerpt: String },
    #[error("unparseable timestamp at line {line}: {value:?}")]
    UnparseableTimestamp { line: u64, value: String },
    #[error("log contains no events")]
    EmptyLog,
    #[error("requested unit {requested} is finer than log precision {precision}")]
    UnitFinerThanPrecision {
        requested: Precision,
        precision: Precision,
    },
    #[error("resolution count exceeds representable range")]
    CountOverflow,
    #[error("XML error at {0}")]
    XmlError(String),
    #[error("event {index} is missing attribute {attribute}")]
    MissingAttribute { index: usize, attribute: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] ::csv::Error),
}

/// A single recorded activity execution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub id: String,
    pub activity: String,
    pub case_id: String,
    pub timestamp: Timestamp,
}

/// Events of one trace sharing an identical timestamp at the log's precision.
///
/// Members are kept in canonical order (activity label, then event id) so
/// enumeration and tie-breaking are deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventSet {
    events: Vec<Event>,
}

impl EventSet {
    pub fn new(mut events: Vec<Event>) -> EventSet {
        assert!(!events.is_empty(), "event set must be non-empty");
        events.sort_by(|a, b| (&a.activity, &a.id).cmp(&(&b.activity, &b.id)));
        EventSet { events }
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn is_uncertain(&self) -> bool {
        self.events.len() > 1
    }

    pub fn timestamp(&self) -> Timestamp {
        self.events[0].timestamp
    }

    /// Activity labels in canonical order.
    pub fn activities(&self) -> impl Iterator<Item = &str> {
        self.events.iter().map(|e| e.activity.as_str())
    }
}

/// One case's events, grouped into timestamp-ordered event sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub case_id: String,
    event_sets: Vec<EventSet>,
}

impl Trace {
    /// Groups events by timestamp (events must all belong to one case).
    pub fn from_events(case_id: String, events: Vec<Event>) -> Trace {
        let mut by_ts: BTreeMap<Timestamp, Vec<Event>> = BTreeMap::new();
        for e in events {
            by_ts.entry(e.timestamp).or_default().push(e);
        }
        let event_sets = by_ts.into_values().map(EventSet::new).collect();
        Trace { case_id, event_sets }
    }

    pub fn from_event_sets(case_id: String, event_sets: Vec<EventSet>) -> Trace {
        debug_assert!(
            event_sets.windows(2).all(|w| w[0].timestamp() < w[1].timestamp()),
            "event sets must be strictly ordered by timestamp"
        );
        Trace { case_id, event_sets }
    }

    pub fn event_sets(&self) -> &[EventSet] {
        &self.event_sets
    }

    pub fn events(&self) -> impl Iterator<Item = &Event> {
        self.event_sets.iter().flat_map(|s| s.events.iter())
    }

    /// Total number of events, |E_sigma|.
    pub fn event_count(&self) -> usize {
        self.event_sets.iter().map(|s| s.len()).sum()
    }

    pub fn is_certain(&self) -> bool {
        self.event_sets.iter().all(|s| s.len() == 1)
    }

    /// Number of possible resolutions: the product of the factorials of the
    /// event set sizes. Overflow is reported, never wrapped.
    pub fn resolution_count(&self) -> Result<u128, LogError> {
        let mut count: u128 = 1;
        for set in &self.event_sets {
            for k in 2..=set.len() as u128 {
                count = count.checked_mul(k).ok_or(LogError::CountOverflow)?;
            }
        }
        Ok(count)
    }

    /// The activity word of a certain trace (its single resolution).
    pub fn certain_word(&self) -> Option<Vec<String>> {
        if !self.is_certain() {
            return None;
        }
        Some(self.events().map(|e| e.activity.clone()).collect())
    }

    /// Ungroups all events and regroups them by timestamp.
    pub fn regrouped(&self) -> Trace {
        Trace::from_events(self.case_id.clone(), self.events().cloned().collect())
    }
}

/// A collection of traces with their observed activity universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventLog {
    traces: Vec<Trace>,
    activity_universe: BTreeSet<String>,
    precision: Precision,
}

impl EventLog {
    /// Builds a log from raw events, grouping per case and inferring the
    /// precision from the finest timestamp granularity present.
    pub fn from_events(events: Vec<Event>) -> Result<EventLog, LogError> {
        if events.is_empty() {
            return Err(LogError::EmptyLog);
        }
        let precision = events
            .iter()
            .map(|e| e.timestamp.granularity())
            .min()
            .unwrap();
        let mut by_case: BTreeMap<String, Vec<Event>> = BTreeMap::new();
        for e in events {
            by_case.entry(e.case_id.clone()).or_default().push(e);
        }
        let traces = by_case
            .into_iter()
            .map(|(case, evs)| Trace::from_events(case, evs))
            .collect();
        Ok(EventLog::from_traces_with_precision(traces, precision))
    }

    pub fn from_traces(traces: Vec<Trace>) -> EventLog {
        let precision = traces
            .iter()
            .flat_map(|t| t.events())
            .map(|e| e.timestamp.granularity())
            .min()
            .unwrap_or(Precision::Millisecond);
        EventLog::from_traces_with_precision(traces, precision)
    }

    fn from_traces_with_precision(traces: Vec<Trace>, precision: Precision) -> EventLog {
        let activity_universe = traces
            .iter()
            .flat_map(|t| t.events())
            .map(|e| e.activity.clone())
            .collect();
        EventLog { traces, activity_universe, precision }
    }

    pub fn traces(&self) -> &[Trace] {
        &self.traces
    }

    pub fn trace(&self, case_id: &str) -> Option<&Trace> {
        self.traces.iter().find(|t| t.case_id == case_id)
    }

    pub fn activity_universe(&self) -> &BTreeSet<String> {
        &self.activity_universe
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn certain_traces(&self) -> impl Iterator<Item = &Trace> {
        self.traces.iter().filter(|t| t.is_certain())
    }

    pub fn uncertain_traces(&self) -> impl Iterator<Item = &Trace> {
        self.traces.iter().filter(|t| !t.is_certain())
    }

    /// Fraction of traces with at least one uncertain event set.
    pub fn uncertain_ratio(&self) -> f64 {
        if self.traces.is_empty() {
            return 0.0;
        }
        self.uncertain_traces().count() as f64 / self.traces.len() as f64
    }

    /// Truncates every timestamp to `unit` and regroups events per trace.
    ///
    /// `unit` must be coarser than or equal to the log's precision: coarsening
    /// never splits an existing event set.
    pub fn coarsen(&self, unit: Precision) -> Result<EventLog, LogError> {
        if unit < self.precision {
            return Err(LogError::UnitFinerThanPrecision {
                requested: unit,
                precision: self.precision,
            });
        }
        let traces = self
            .traces
            .iter()
            .map(|t| {
                let events = t
                    .events()
                    .map(|e| Event {
                        timestamp: e.timestamp.truncate(unit),
                        ..e.clone()
                    })
                    .collect();
                Trace::from_events(t.case_id.clone(), events)
            })
            .collect();
        Ok(EventLog::from_traces_with_precision(traces, unit))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{event, running_example_trace};

    #[test]
    fn grouping_builds_event_sets_from_equal_timestamps() {
        let sigma1 = running_example_trace();
        let sets: Vec<Vec<&str>> = sigma1
            .event_sets()
            .iter()
            .map(|s| s.activities().collect())
            .collect();
        assert_eq!(sets, vec![vec!["A"], vec!["B", "C"], vec!["D", "F"], vec!["G"]]);
    }

    #[test]
    fn strictly_increasing_timestamps_yield_certain_trace() {
        let t = Trace::from_events(
            "c".into(),
            vec![event("1", "A", "c", 1000), event("2", "B", "c", 2000), event("3", "C", "c", 3000)],
        );
        assert!(t.is_certain());
        assert_eq!(t.event_sets().len(), 3);
        assert_eq!(t.resolution_count().unwrap(), 1);
    }

    #[test]
    fn all_equal_timestamps_form_one_set() {
        let t = Trace::from_events(
            "c".into(),
            vec![
                event("1", "A", "c", 0),
                event("2", "B", "c", 0),
                event("3", "C", "c", 0),
                event("4", "D", "c", 0),
            ],
        );
        assert_eq!(t.event_sets().len(), 1);
        assert_eq!(t.resolution_count().unwrap(), 24);
    }

    #[test]
    fn resolution_count_multiplies_factorials() {
        let t = Trace::from_events(
            "c".into(),
            vec![
                event("1", "A", "c", 0),
                event("2", "B", "c", 0),
                event("3", "C", "c", 0),
                event("4", "D", "c", 1000),
                event("5", "E", "c", 1000),
            ],
        );
        assert_eq!(t.resolution_count().unwrap(), 12);
    }

    #[test]
    fn resolution_count_overflow_is_reported() {
        // 35! exceeds u128.
        let events = (0..35)
            .map(|i| event(&format!("e{i}"), &format!("A{i}"), "c", 0))
            .collect();
        let t = Trace::from_events("c".into(), events);
        assert!(matches!(t.resolution_count(), Err(LogError::CountOverflow)));
    }

    #[test]
    fn coarsen_to_minutes_regroups() {
        let log = EventLog::from_events(vec![
            event("1", "A", "c", 1_000),  // 12:00:01
            event("2", "B", "c", 30_000), // 12:00:30
            event("3", "C", "c", 70_000), // 12:01:10
        ])
        .unwrap();
        let coarse = log.coarsen(Precision::Minute).unwrap();
        let t = &coarse.traces()[0];
        assert_eq!(t.event_sets().len(), 2);
        assert_eq!(t.event_sets()[0].len(), 2);
        assert_eq!(t.event_sets()[1].len(), 1);
    }

    #[test]
    fn coarsen_to_own_precision_is_identity() {
        let log = EventLog::from_events(vec![
            event("1", "A", "c", 60_000),
            event("2", "B", "c", 120_000),
        ])
        .unwrap();
        assert_eq!(log.precision(), Precision::Minute);
        let same = log.coarsen(Precision::Minute).unwrap();
        assert_eq!(same, log);
    }

    #[test]
    fn coarsen_finer_than_precision_is_rejected() {
        let log = EventLog::from_events(vec![event("1", "A", "c", 60_000)]).unwrap();
        assert!(matches!(
            log.coarsen(Precision::Second),
            Err(LogError::UnitFinerThanPrecision { .. })
        ));
    }

    #[test]
    fn uncertain_ratio_counts_regrouped_traces() {
        let log = EventLog::from_events(vec![
            event("1", "A", "c1", 1_000),
            event("2", "B", "c1", 2_000),
            event("3", "A", "c2", 61_000),
            event("4", "B", "c2", 121_000),
        ])
        .unwrap();
        let coarse = log.coarsen(Precision::Minute).unwrap();
        assert_eq!(coarse.uncertain_ratio(), 0.5);
    }

    #[test]
    fn empty_log_is_an_error() {
        assert!(matches!(EventLog::from_events(vec![]), Err(LogError::EmptyLog)));
    }
}
