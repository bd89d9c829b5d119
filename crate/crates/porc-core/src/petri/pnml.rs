//! PNML ingestion: one net, one page, initialMarking annotations, and a final
//! marking from a finalmarkings section or an explicit final-place override.

use std::collections::HashMap;
use std::path::Path;

use quick_xml::events::Event as XmlEvent;
use quick_xml::Reader;

use super::{Marking, PetriError, PetriNet, Transition};

#[derive(Debug, Default)]
struct RawNet {
    places: Vec<String>,
    // transition id -> label text (empty or missing = silent)
    transitions: Vec<(String, Option<String>)>,
    arcs: Vec<(String, String)>,
    initial: HashMap<String, u32>,
    finals: HashMap<String, u32>,
}

pub fn parse_pnml(path: &Path, final_place: Option<&str>) -> Result<PetriNet, PetriError> {
    let content = std::fs::read_to_string(path)?;
    parse_pnml_str(&content, final_place)
}

pub fn parse_pnml_str(content: &str, final_place: Option<&str>) -> Result<PetriNet, PetriError> {
    let raw = scan(content)?;
    build(raw, final_place)
}

fn scan(content: &str) -> Result<RawNet, PetriError> {
    let mut reader = Reader::from_str(content);
    reader.config_mut().trim_text(true);
    let mut raw = RawNet::default();

    // Element context, innermost last.
    let mut stack: Vec<String> = Vec::new();
    let mut current_id: Option<String> = None; // id of enclosing place/transition
    let mut text_target: Option<&'static str> = None;
    let mut in_final_marking = false;
    let mut final_place_ref: Option<String> = None;

    loop {
        let ev = match reader.read_event() {
            Ok(ev) => ev,
            Err(e) => {
                return Err(PetriError::XmlError(format!(
                    "position {}: {e}",
                    reader.buffer_position()
                )))
            }
        };
        match ev {
            XmlEvent::Start(ref tag) | XmlEvent::Empty(ref tag) => {
                let name = String::from_utf8_lossy(tag.name().as_ref()).into_owned();
                let attr = |key: &[u8]| -> Option<String> {
                    tag.attributes()
                        .flatten()
                        .find(|a| a.key.as_ref() == key)
                        .map(|a| a.unescape_value().unwrap_or_default().into_owned())
                };
                match name.as_str() {
                    "place" if !in_final_marking => {
                        let id = attr(b"id").unwrap_or_default();
                        raw.places.push(id.clone());
                        current_id = Some(id);
                    }
                    "place" if in_final_marking => {
                        final_place_ref = attr(b"idref").or_else(|| attr(b"id"));
                    }
                    "transition" => {
                        let id = attr(b"id").unwrap_or_default();
                        raw.transitions.push((id.clone(), None));
                        current_id = Some(id);
                    }
                    "arc" => {
                        let source = attr(b"source").unwrap_or_default();
                        let target = attr(b"target").unwrap_or_default();
                        raw.arcs.push((source, target));
                    }
                    "initialMarking" => text_target = Some("initial"),
                    "finalmarkings" => in_final_marking = true,
                    "marking" if in_final_marking => {}
                    "name" => {
                        if stack.last().map(String::as_str) == Some("transition") {
                            text_target = Some("label");
                        }
                    }
                    "text" => {}
                    _ => {}
                }
                if matches!(ev, XmlEvent::Start(_)) {
                    stack.push(name);
                }
            }
            XmlEvent::Text(t) => {
                let text = t.unescape().unwrap_or_default().trim().to_string();
                if stack.last().map(String::as_str) != Some("text") {
                    continue;
                }
                if in_final_marking {
                    if let (Some(p), Ok(n)) = (&final_place_ref, text.parse::<u32>()) {
                        if n > 0 {
                            *raw.finals.entry(p.clone()).or_insert(0) += n;
                        }
                    }
                    continue;
                }
                match (text_target, &current_id) {
                    (Some("initial"), Some(id)) => {
                        if let Ok(n) = text.parse::<u32>() {
                            if n > 0 {
                                *raw.initial.entry(id.clone()).or_insert(0) += n;
                            }
                        }
                    }
                    (Some("label"), Some(id)) => {
                        if !text.is_empty() {
                            if let Some(entry) =
                                raw.transitions.iter_mut().find(|(tid, _)| tid == id)
                            {
                                entry.1 = Some(text);
                            }
                        }
                    }
                    _ => {}
                }
            }
            XmlEvent::End(ref tag) => {
                let name = String::from_utf8_lossy(tag.name().as_ref()).into_owned();
                stack.pop();
                match name.as_str() {
                    "place" | "transition" => current_id = None,
                    "initialMarking" | "name" => text_target = None,
                    "finalmarkings" => in_final_marking = false,
                    _ => {}
                }
            }
            XmlEvent::Eof => break,
            _ => {}
        }
    }
    Ok(raw)
}

fn build(raw: RawNet, final_place: Option<&str>) -> Result<PetriNet, PetriError> {
    let place_index: HashMap<&str, usize> =
        raw.places.iter().enumerate().map(|(i, p)| (p.as_str(), i)).collect();
    let trans_index: HashMap<&str, usize> =
        raw.transitions.iter().enumerate().map(|(i, (t, _))| (t.as_str(), i)).collect();

    let mut transitions: Vec<Transition> = raw
        .transitions
        .iter()
        .map(|(id, label)| Transition {
            id: id.clone(),
            // ProM marks silent transitions with labels like "tau ..." or
            // invisible flags; an empty label is also treated as silent.
            label: label.clone().filter(|l| !l.is_empty() && !l.starts_with("tau")),
            inputs: Vec::new(),
            outputs: Vec::new(),
        })
        .collect();

    for (source, target) in &raw.arcs {
        match (place_index.get(source.as_str()), trans_index.get(target.as_str())) {
            (Some(&p), Some(&t)) => transitions[t].inputs.push(p),
            _ => match (trans_index.get(source.as_str()), place_index.get(target.as_str())) {
                (Some(&t), Some(&p)) => transitions[t].outputs.push(p),
                _ => return Err(PetriError::DanglingArc(format!("{source} -> {target}"))),
            },
        }
    }
    for t in &mut transitions {
        t.inputs.sort_unstable();
        t.outputs.sort_unstable();
    }

    let mut initial = vec![0u32; raw.places.len()];
    for (p, n) in &raw.initial {
        let &i = place_index
            .get(p.as_str())
            .ok_or_else(|| PetriError::DanglingArc(p.clone()))?;
        initial[i] += n;
    }
    if initial.iter().all(|&n| n == 0) {
        return Err(PetriError::NoInitialMarking);
    }

    let mut fin = vec![0u32; raw.places.len()];
    if let Some(p) = final_place {
        let &i = place_index
            .get(p)
            .ok_or_else(|| PetriError::DanglingArc(p.to_string()))?;
        fin[i] = 1;
    } else {
        for (p, n) in &raw.finals {
            let &i = place_index
                .get(p.as_str())
                .ok_or_else(|| PetriError::DanglingArc(p.clone()))?;
            fin[i] += n;
        }
    }
    if fin.iter().all(|&n| n == 0) {
        return Err(PetriError::NoFinalMarking);
    }

    Ok(PetriNet {
        places: raw.places,
        transitions,
        initial_marking: Marking(initial),
        final_marking: Marking(fin),
    })
}
