//! XES ingestion, limited to the subset needed here: log > trace > event,
//! with concept:name (trace and event) and time:timestamp attributes. Other
//! attributes are skipped and counted.

use std::path::Path;

use quick_xml::events::Event as XmlEvent;
use quick_xml::Reader;

use super::{Event, EventLog, LogError, Trace};
use crate::time::Timestamp;

#[derive(Debug)]
pub struct ParsedXes {
    pub log: EventLog,
    /// Number of attributes that were present but ignored.
    pub ignored_attributes: usize,
}

pub fn parse_xes(path: &Path) -> Result<ParsedXes, LogError> {
    let content = std::fs::read_to_string(path)?;
    parse_xes_str(&content)
}

pub fn parse_xes_str(content: &str) -> Result<ParsedXes, LogError> {
    let mut reader = Reader::from_str(content);
    reader.config_mut().trim_text(true);

    let mut traces: Vec<Trace> = Vec::new();
    let mut ignored = 0usize;

    // Current trace/event state while walking the tree.
    let mut in_trace = false;
    let mut in_event = false;
    let mut trace_name: Option<String> = None;
    let mut trace_events: Vec<(Option<String>, Option<Timestamp>)> = Vec::new();
    let mut event_name: Option<String> = None;
    let mut event_time: Option<Timestamp> = None;
    let mut event_counter = 0usize;

    loop {
        let ev = match reader.read_event() {
            Ok(ev) => ev,
            Err(e) => {
                return Err(LogError::XmlError(format!(
                    "position {}: {e}",
                    reader.buffer_position()
                )))
            }
        };
        match ev {
            XmlEvent::Start(ref tag) | XmlEvent::Empty(ref tag) => {
                let empty = matches!(ev, XmlEvent::Empty(_));
                let name = String::from_utf8_lossy(tag.name().as_ref()).into_owned();
                match name.as_str() {
                    "trace" if !empty => {
                        in_trace = true;
                        trace_name = None;
                        trace_events.clear();
                    }
                    "event" if in_trace && !empty => {
                        in_event = true;
                        event_name = None;
                        event_time = None;
                    }
                    "string" | "date" | "int" | "float" | "boolean" | "id" => {
                        let mut key = None;
                        let mut value = None;
                        for attr in tag.attributes().flatten() {
                            match attr.key.as_ref() {
                                b"key" => key = Some(attr.unescape_value().unwrap_or_default().into_owned()),
                                b"value" => {
                                    value = Some(attr.unescape_value().unwrap_or_default().into_owned())
                                }
                                _ => {}
                            }
                        }
                        match (key.as_deref(), in_event, in_trace) {
                            (Some("concept:name"), true, _) => event_name = value,
                            (Some("time:timestamp"), true, _) => {
                                let raw = value.unwrap_or_default();
                                event_time = Some(Timestamp::parse_iso(&raw).ok_or_else(|| {
                                    LogError::XmlError(format!(
                                        "position {}: bad time:timestamp {raw:?}",
                                        reader.buffer_position()
                                    ))
                                })?);
                            }
                            (Some("concept:name"), false, true) => trace_name = value,
                            _ => ignored += 1,
                        }
                    }
                    _ => {}
                }
            }
            XmlEvent::End(ref tag) => match tag.name().as_ref() {
                b"event" => {
                    in_event = false;
                    event_counter += 1;
                    let activity = event_name.take().ok_or(LogError::MissingAttribute {
                        index: event_counter,
                        attribute: "concept:name".into(),
                    })?;
                    let ts = event_time.take().ok_or(LogError::MissingAttribute {
                        index: event_counter,
                        attribute: "time:timestamp".into(),
                    })?;
                    trace_events.push((Some(activity), Some(ts)));
                }
                b"trace" => {
                    in_trace = false;
                    let case_id =
                        trace_name.take().unwrap_or_else(|| format!("trace{}", traces.len() + 1));
                    let events = trace_events
                        .drain(..)
                        .enumerate()
                        .map(|(i, (name, ts))| Event {
                            id: format!("{case_id}#{}", i + 1),
                            activity: name.unwrap(),
                            case_id: case_id.clone(),
                            timestamp: ts.unwrap(),
                        })
                        .collect();
                    traces.push(Trace::from_events(case_id, events));
                }
                _ => {}
            },
            XmlEvent::Eof => break,
            _ => {}
        }
    }

    if traces.iter().all(|t| t.event_count() == 0) || traces.is_empty() {
        return Err(LogError::EmptyLog);
    }
    Ok(ParsedXes { log: EventLog::from_traces(traces), ignored_attributes: ignored })
}
