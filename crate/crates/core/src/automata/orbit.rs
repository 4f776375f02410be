//! The orbit automaton: projective states reachable from the start state,
//! with the two generators as (bijective) transition functions. Counting
//! accepted words on it is a dynamic program over the orbit, linear in the
//! word length instead of exponential.

use alloc::{collections::BTreeMap, vec, vec::Vec};

use super::{AutomataError, QuantumDFA, Word};
use crate::projlinalg::ProjPoint;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDFA {
    pub states: Vec<ProjPoint>,
    /// `transitions[b][s]` is the index of `δ_b · states[s]`.
    pub transitions: [Vec<usize>; 2],
    pub start_index: usize,
    pub accept_index: Option<usize>,
}

/// Breadth-first closure of `{α}` under `δ_0`, `δ_1`.
pub fn build_orbit_dfa(m: &QuantumDFA, cap: usize) -> Result<OrbitDFA, AutomataError> {
    let mut states = vec![m.start.clone()];
    let mut index = BTreeMap::new();
    index.insert(m.start.clone(), 0usize);
    let mut transitions: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    let mut head = 0;
    while head < states.len() {
        for (b, delta) in m.delta.iter().enumerate() {
            let next = states[head].apply(delta)?;
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = states.len();
                    if id >= cap {
                        return Err(AutomataError::OrbitCapExceeded { cap });
                    }
                    index.insert(next.clone(), id);
                    states.push(next);
                    id
                }
            };
            transitions[b].push(id);
        }
        head += 1;
    }
    let accept_index = index.get(&m.accept).copied();
    Ok(OrbitDFA {
        states,
        transitions,
        start_index: 0,
        accept_index,
    })
}

/// Number of accepted words of a given length, saturated at "many".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Count {
    Zero,
    One(Word),
    Many,
}

impl Count {
    pub fn saturated(&self) -> u8 {
        match self {
            Count::Zero => 0,
            Count::One(_) => 1,
            Count::Many => 2,
        }
    }
}

impl OrbitDFA {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Whether both transition maps are bijections of the state set.
    pub fn transitions_are_permutations(&self) -> bool {
        self.transitions.iter().all(|t| {
            let mut seen = vec![false; t.len()];
            t.iter().all(|&s| !core::mem::replace(&mut seen[s], true))
        })
    }

    /// Index of `δ_x α` within the orbit.
    pub fn run(&self, x: &Word) -> usize {
        x.bits()
            .iter()
            .rev()
            .fold(self.start_index, |s, &b| self.transitions[b as usize][s])
    }
}

/// Counts length-`len` words `y` with `δ_y α = ω`, saturating at 2, and
/// recovers the word when it is unique.
pub fn count_accepting(dfa: &OrbitDFA, len: usize) -> Count {
    let Some(accept) = dfa.accept_index else {
        return Count::Zero;
    };
    let n = dfa.len();
    // layers[k][s]: suffixes of length k carrying α to s
    let mut layers: Vec<Vec<u8>> = Vec::with_capacity(len + 1);
    let mut cur = vec![0u8; n];
    cur[dfa.start_index] = 1;
    layers.push(cur);
    for _ in 0..len {
        let prev = layers.last().expect("nonempty");
        let mut next = vec![0u8; n];
        for (s, &c) in prev.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for t in &dfa.transitions {
                let d = &mut next[t[s]];
                *d = (*d + c).min(2);
            }
        }
        layers.push(next);
    }
    match layers[len][accept] {
        0 => Count::Zero,
        1 => {
            // the unique path: the letter applied at step k is y(len - k + 1)
            let mut inverse = [vec![0usize; n], vec![0usize; n]];
            for (inv, trans) in inverse.iter_mut().zip(&dfa.transitions) {
                for (s, &t) in trans.iter().enumerate() {
                    inv[t] = s;
                }
            }
            let mut bits = Vec::with_capacity(len);
            let mut state = accept;
            for k in (1..=len).rev() {
                let b = (0..2)
                    .find(|&b| layers[k - 1][inverse[b][state]] > 0)
                    .expect("a predecessor carries the single path");
                bits.push(b as u8);
                state = inverse[b][state];
            }
            Count::One(Word(bits))
        }
        _ => Count::Many,
    }
}
