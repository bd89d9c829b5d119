//! Labeled Petri nets with language semantics, used as the normative model.

pub mod pnml;

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

/// Default cap on explored markings in language searches. Can be overridden
/// per call; the CLI wires it to the PORC_STATE_CAP environment variable.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum PetriError {
    #[error("XML error at {0}")]
    XmlError(String),
    #[error("arc references unknown node: {0}")]
    DanglingArc(String),
    #[error("net has no initial marking")]
    NoInitialMarking,
    #[error("net has no final marking")]
    NoFinalMarking,
    #[error("transition {0} is not enabled")]
    NotEnabled(String),
    #[error("search budget exceeded after {0} states")]
    SearchBudgetExceeded(usize),
    #[error("net accepts no word")]
    NoAcceptedWord,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub id: String,
    /// Activity label; `None` marks a silent (tau) transition.
    pub label: Option<String>,
    /// Input and output place indices, sorted.
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
}

/// Token distribution over places, dense by place index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marking(pub Vec<u32>);

impl Marking {
    pub fn tokens(&self) -> u32 {
        self.0.iter().sum()
    }
}

#[derive(Debug, Clone)]
pub struct PetriNet {
    pub places: Vec<String>,
    pub transitions: Vec<Transition>,
    pub initial_marking: Marking,
    pub final_marking: Marking,
}

pub struct PetriNetBuilder {
    places: Vec<String>,
    place_index: HashMap<String, usize>,
    transitions: Vec<(String, Option<String>, Vec<String>, Vec<String>)>,
    initial: Vec<(String, u32)>,
    finals: Vec<(String, u32)>,
}

impl PetriNetBuilder {
    pub fn place(&mut self, id: &str) -> &mut Self {
        if !self.place_index.contains_key(id) {
            self.place_index.insert(id.to_string(), self.places.len());
            self.places.push(id.to_string());
        }
        self
    }

    pub fn transition(
        &mut self,
        id: &str,
        label: Option<&str>,
        inputs: &[&str],
        outputs: &[&str],
    ) -> &mut Self {
        self.transitions.push((
            id.to_string(),
            label.map(|s| s.to_string()),
            inputs.iter().map(|s| s.to_string()).collect(),
            outputs.iter().map(|s| s.to_string()).collect(),
        ));
        self
    }

    pub fn initial(&mut self, tokens: &[(&str, u32)]) -> &mut Self {
        self.initial = tokens.iter().map(|(p, n)| (p.to_string(), *n)).collect();
        self
    }

    pub fn finals(&mut self, tokens: &[(&str, u32)]) -> &mut Self {
        self.finals = tokens.iter().map(|(p, n)| (p.to_string(), *n)).collect();
        self
    }

    pub fn build(self) -> Result<PetriNet, PetriError> {
        let lookup = |id: &str| -> Result<usize, PetriError> {
            self.place_index
                .get(id)
                .copied()
                .ok_or_else(|| PetriError::DanglingArc(id.to_string()))
        };
        let mut transitions = Vec::with_capacity(self.transitions.len());
        for (id, label, ins, outs) in &self.transitions {
            let mut inputs = ins.iter().map(|p| lookup(p)).collect::<Result<Vec<_>, _>>()?;
            let mut outputs = outs.iter().map(|p| lookup(p)).collect::<Result<Vec<_>, _>>()?;
            inputs.sort_unstable();
            outputs.sort_unstable();
            transitions.push(Transition { id: id.clone(), label: label.clone(), inputs, outputs });
        }
        if self.initial.is_empty() {
            return Err(PetriError::NoInitialMarking);
        }
        if self.finals.is_empty() {
            return Err(PetriError::NoFinalMarking);
        }
        let mut initial = vec![0u32; self.places.len()];
        for (p, n) in &self.initial {
            initial[lookup(p)?] += n;
        }
        let mut fin = vec![0u32; self.places.len()];
        for (p, n) in &self.finals {
            fin[lookup(p)?] += n;
        }
        Ok(PetriNet {
            places: self.places,
            transitions,
            initial_marking: Marking(initial),
            final_marking: Marking(fin),
        })
    }
}

impl PetriNet {
    pub fn builder() -> PetriNetBuilder {
        PetriNetBuilder {
            places: Vec::new(),
            place_index: HashMap::new(),
            transitions: Vec::new(),
            initial: Vec::new(),
            finals: Vec::new(),
        }
    }

    pub fn transition_by_id(&self, id: &str) -> Option<usize> {
        self.transitions.iter().position(|t| t.id == id)
    }

    /// Indices of transitions enabled at `m`, in transition order.
    pub fn enabled(&self, m: &Marking) -> Vec<usize> {
        (0..self.transitions.len())
            .filter(|&t| self.is_enabled(m, t))
            .collect()
    }

    pub fn is_enabled(&self, m: &Marking, t: usize) -> bool {
        self.transitions[t].inputs.iter().all(|&p| m.0[p] >= 1)
    }

    /// Fires `t`, consuming one token per input place and producing one per
    /// output place.
    pub fn fire(&self, m: &Marking, t: usize) -> Result<Marking, PetriError> {
        if !self.is_enabled(m, t) {
            return Err(PetriError::NotEnabled(self.transitions[t].id.clone()));
        }
        let mut next = m.clone();
        for &p in &self.transitions[t].inputs {
            next.0[p] -= 1;
        }
        for &p in &self.transitions[t].outputs {
            next.0[p] += 1;
        }
        Ok(next)
    }

    /// Whether some firing sequence whose labeled projection equals `word`
    /// reaches the final marking. Silent transitions interleave freely.
    pub fn accepts(&self, word: &[String], state_cap: usize) -> Result<bool, PetriError> {
        let mut visited: HashSet<(Marking, usize)> = HashSet::new();
        let mut queue = VecDeque::new();
        queue.push_back((self.initial_marking.clone(), 0usize));
        visited.insert((self.initial_marking.clone(), 0));
        while let Some((m, pos)) = queue.pop_front() {
            if pos == word.len() && m == self.final_marking {
                return Ok(true);
            }
            for t in 0..self.transitions.len() {
                if !self.is_enabled(&m, t) {
                    continue;
                }
                let next_pos = match &self.transitions[t].label {
                    None => pos,
                    Some(l) if pos < word.len() && *l == word[pos] => pos + 1,
                    Some(_) => continue,
                };
                let next = self.fire(&m, t).expect("enabled");
                if visited.insert((next.clone(), next_pos)) {
                    if visited.len() > state_cap {
                        return Err(PetriError::SearchBudgetExceeded(visited.len()));
                    }
                    queue.push_back((next, next_pos));
                }
            }
        }
        Ok(false)
    }

    /// Minimum number of labeled firings over all runs from the initial to
    /// the final marking (silent firings are free).
    pub fn shortest_accepted_word_cost(&self, state_cap: usize) -> Result<usize, PetriError> {
        // 0/1 costs: deque-based Dijkstra.
        let mut best: HashMap<Marking, usize> = HashMap::new();
        let mut deque = VecDeque::new();
        best.insert(self.initial_marking.clone(), 0);
        deque.push_back((self.initial_marking.clone(), 0usize));
        while let Some((m, cost)) = deque.pop_front() {
            if best.get(&m) != Some(&cost) {
                continue;
            }
            if m == self.final_marking {
                return Ok(cost);
            }
            for t in 0..self.transitions.len() {
                if !self.is_enabled(&m, t) {
                    continue;
                }
                let step = if self.transitions[t].label.is_some() { 1 } else { 0 };
                let next = self.fire(&m, t).expect("enabled");
                let next_cost = cost + step;
                if best.get(&next).map_or(true, |&c| next_cost < c) {
                    best.insert(next.clone(), next_cost);
                    if best.len() > state_cap {
                        return Err(PetriError::SearchBudgetExceeded(best.len()));
                    }
                    if step == 0 {
                        deque.push_front((next, next_cost));
                    } else {
                        deque.push_back((next, next_cost));
                    }
                }
            }
        }
        Err(PetriError::NoAcceptedWord)
    }

    /// Enumerates the accepted language up to `max_len` labeled firings,
    /// stopping after `max_words` words. Intended as a brute-force oracle and
    /// for small-net diagnostics.
    pub fn language(
        &self,
        max_len: usize,
        max_words: usize,
    ) -> Result<Vec<Vec<String>>, PetriError> {
        let mut words = HashSet::new();
        let mut stack = vec![(self.initial_marking.clone(), Vec::<String>::new())];
        let mut explored = 0usize;
        while let Some((m, word)) = stack.pop() {
            explored += 1;
            if explored > DEFAULT_STATE_CAP {
                return Err(PetriError::SearchBudgetExceeded(explored));
            }
            if m == self.final_marking {
                words.insert(word.clone());
                if words.len() > max_words {
                    return Err(PetriError::SearchBudgetExceeded(explored));
                }
            }
            if word.len() >= max_len {
                continue;
            }
            for t in 0..self.transitions.len() {
                if !self.is_enabled(&m, t) {
                    continue;
                }
                let next = self.fire(&m, t).expect("enabled");
                // Cycles of silent transitions would loop forever; bound by
                // revisits along the path via the explored counter only. The
                // nets used here are acyclic or small enough for the cap.
                let mut next_word = word.clone();
                if let Some(l) = &self.transitions[t].label {
                    next_word.push(l.clone());
                }
                stack.push((next, next_word));
            }
        }
        let mut out: Vec<_> = words.into_iter().collect();
        out.sort();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{healthcare_net, single_transition_net, word};

    #[test]
    fn only_a_enabled_initially() {
        let net = healthcare_net();
        let enabled = net.enabled(&net.initial_marking);
        let ids: Vec<_> = enabled.iter().map(|&t| net.transitions[t].id.as_str()).collect();
        assert_eq!(ids, vec!["tA"]);
    }

    #[test]
    fn empty_marking_enables_nothing() {
        let net = healthcare_net();
        let empty = Marking(vec![0; net.places.len()]);
        assert!(net.enabled(&empty).is_empty());
    }

    #[test]
    fn b_and_d_concurrent_after_a() {
        let net = healthcare_net();
        let t_a = net.transition_by_id("tA").unwrap();
        let m = net.fire(&net.initial_marking, t_a).unwrap();
        let ids: Vec<_> = net.enabled(&m).iter().map(|&t| net.transitions[t].id.as_str()).collect();
        assert_eq!(ids, vec!["tB", "tD"]);
    }

    #[test]
    fn fire_conserves_tokens_per_arc_semantics() {
        let net = healthcare_net();
        let t_a = net.transition_by_id("tA").unwrap();
        let m = net.fire(&net.initial_marking, t_a).unwrap();
        let t = &net.transitions[t_a];
        assert_eq!(
            m.tokens() as i64,
            net.initial_marking.tokens() as i64 - t.inputs.len() as i64 + t.outputs.len() as i64
        );
    }

    #[test]
    fn fire_disabled_is_an_error() {
        let net = healthcare_net();
        let t_g = net.transition_by_id("tG").unwrap();
        assert!(matches!(
            net.fire(&net.initial_marking, t_g),
            Err(PetriError::NotEnabled(_))
        ));
    }

    #[test]
    fn accepts_proper_execution_sequence() {
        let net = healthcare_net();
        assert!(net.accepts(&word(&["A", "B", "C", "D", "E", "G"]), DEFAULT_STATE_CAP).unwrap());
    }

    #[test]
    fn rejects_e_before_d() {
        let net = healthcare_net();
        assert!(!net.accepts(&word(&["A", "B", "C", "E", "D", "G"]), DEFAULT_STATE_CAP).unwrap());
    }

    #[test]
    fn empty_word_rejected_by_single_transition_net() {
        let net = single_transition_net();
        assert!(!net.accepts(&[], DEFAULT_STATE_CAP).unwrap());
        assert!(net.accepts(&word(&["A"]), DEFAULT_STATE_CAP).unwrap());
    }

    #[test]
    fn healthcare_language_has_six_words() {
        let net = healthcare_net();
        let lang = net.language(12, 1000).unwrap();
        assert_eq!(lang.len(), 6);
        assert!(lang.iter().all(|w| w.len() == 6));
        assert!(lang.contains(&word(&["A", "B", "C", "D", "E", "G"])));
        assert!(lang.contains(&word(&["A", "D", "B", "C", "F", "G"])));
    }

    #[test]
    fn accepts_agrees_with_language_enumeration() {
        let net = healthcare_net();
        let lang = net.language(12, 1000).unwrap();
        for w in &lang {
            assert!(net.accepts(w, DEFAULT_STATE_CAP).unwrap(), "{w:?}");
        }
        // A few non-members of matching length.
        for w in [
            word(&["A", "B", "C", "E", "D", "G"]),
            word(&["A", "B", "C", "D", "E", "F"]),
            word(&["B", "A", "C", "D", "E", "G"]),
        ] {
            assert!(!lang.contains(&w));
            assert!(!net.accepts(&w, DEFAULT_STATE_CAP).unwrap(), "{w:?}");
        }
    }

    #[test]
    fn shortest_word_cost_counts_labeled_firings_only() {
        let net = healthcare_net();
        assert_eq!(net.shortest_accepted_word_cost(DEFAULT_STATE_CAP).unwrap(), 6);
        assert_eq!(single_transition_net().shortest_accepted_word_cost(DEFAULT_STATE_CAP).unwrap(), 1);

        // Silent-only shortcut bypassing the labeled route costs 0.
        let mut b = PetriNet::builder();
        b.place("p0");
        b.place("p1");
        b.transition("tA", Some("A"), &["p0"], &["p1"]);
        b.transition("tau", None, &["p0"], &["p1"]);
        b.initial(&[("p0", 1)]);
        b.finals(&[("p1", 1)]);
        let net = b.build().unwrap();
        assert_eq!(net.shortest_accepted_word_cost(DEFAULT_STATE_CAP).unwrap(), 0);
    }

    #[test]
    fn dangling_arc_is_rejected() {
        let mut b = PetriNet::builder();
        b.place("p0");
        b.transition("t", Some("A"), &["p0"], &["nowhere"]);
        b.initial(&[("p0", 1)]);
        b.finals(&[("p0", 1)]);
        assert!(matches!(b.build(), Err(PetriError::DanglingArc(_))));
    }
}
