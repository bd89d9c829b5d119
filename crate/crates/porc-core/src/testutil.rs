//! Shared fixtures for unit and integration tests.

use crate::log::{Event, EventLog, Trace};
use crate::petri::PetriNet;
use crate::time::Timestamp;

pub fn event(id: &str, activity: &str, case_id: &str, millis: i64) -> Event {
    Event {
        id: id.to_string(),
        activity: activity.to_string(),
        case_id: case_id.to_string(),
        timestamp: Timestamp::from_millis(millis),
    }
}

/// The running-example case: a@13:00, b@14:00, c@14:00, f@15:00, d@15:00,
/// g@16:00, grouped as <{a},{b,c},{d,f},{g}>.
pub fn running_example_trace() -> Trace {
    const H: i64 = 3_600_000;
    Trace::from_events(
        "case1".into(),
        vec![
            event("a", "A", "case1", 13 * H),
            event("b", "B", "case1", 14 * H),
            event("c", "C", "case1", 14 * H),
            event("f", "F", "case1", 15 * H),
            event("d", "D", "case1", 15 * H),
            event("g", "G", "case1", 16 * H),
        ],
    )
}

pub fn running_example_log() -> EventLog {
    EventLog::from_traces(vec![running_example_trace()])
}

/// The healthcare model: A, then B;C in parallel with D, then E xor F, then G.
/// Its language has exactly six words, all of length six.
pub fn healthcare_net() -> PetriNet {
    let mut b = PetriNet::builder();
    for p in ["p0", "p1", "p2", "p3", "p4", "p5", "p6", "p7"] {
        b.place(p);
    }
    b.transition("tA", Some("A"), &["p0"], &["p1", "p2"]);
    b.transition("tB", Some("B"), &["p1"], &["p3"]);
    b.transition("tC", Some("C"), &["p3"], &["p4"]);
    b.transition("tD", Some("D"), &["p2"], &["p5"]);
    b.transition("tE", Some("E"), &["p4", "p5"], &["p6"]);
    b.transition("tF", Some("F"), &["p4", "p5"], &["p6"]);
    b.transition("tG", Some("G"), &["p6"], &["p7"]);
    b.initial(&[("p0", 1)]);
    b.finals(&[("p7", 1)]);
    b.build().unwrap()
}

/// Net accepting exactly the one-letter word <A>.
pub fn single_transition_net() -> PetriNet {
    let mut b = PetriNet::builder();
    b.place("p0");
    b.place("p1");
    b.transition("tA", Some("A"), &["p0"], &["p1"]);
    b.initial(&[("p0", 1)]);
    b.finals(&[("p1", 1)]);
    b.build().unwrap()
}

pub fn word(s: &[&str]) -> Vec<String> {
    s.iter().map(|a| a.to_string()).collect()
}
