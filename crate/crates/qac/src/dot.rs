//! Graphviz output. Dashed edges are δ_0, solid red edges are δ_1.

use std::fmt::Write;

use qac_core::automata::OrbitDFA;
use qac_core::groups::FiniteMatrixGroup;

use crate::json::point_label;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

const EDGE_STYLE: [&str; 2] = ["style=dashed", "color=red"];

/// The orbit automaton: one vertex per state, labeled by its affine
/// coordinate (`∞` for `[0:1]`). The start state is drawn as a box, the
/// accept state doubled.
pub fn orbit(dfa: &OrbitDFA, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    for (i, s) in dfa.states.iter().enumerate() {
        let mut attrs = vec![format!("label={}", quote(&point_label(s)))];
        if i == dfa.start_index {
            attrs.push("shape=box".into());
        }
        if Some(i) == dfa.accept_index {
            attrs.push("peripheries=2".into());
        }
        writeln!(out, "  s{i} [{}];", attrs.join(", ")).unwrap();
    }
    for (b, t) in dfa.transitions.iter().enumerate() {
        for (s, &d) in t.iter().enumerate() {
            writeln!(out, "  s{s} -> s{d} [{}];", EDGE_STYLE[b]).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

/// `[0,0,1,0,0,0]` ↦ `a²ba³`; the empty word is `1`.
pub fn compress_word(word: &[u8], letters: [char; 2]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    let mut out = String::new();
    let mut k = 0;
    while k < word.len() {
        let run = word[k..].iter().take_while(|&&b| b == word[k]).count();
        out.push(letters[word[k] as usize]);
        if run > 1 {
            out.extend(run.to_string().bytes().map(|d| SUPERSCRIPTS[(d - b'0') as usize]));
        }
        k += run;
    }
    out
}

/// Cayley graph of a group on its (at most two) catalog generators, with
/// edges `g → s·g` and vertices labeled by shortest words in `a`, `b`.
pub fn cayley(g: &FiniteMatrixGroup, name: &str) -> String {
    let gens = g.generators();
    let pair = match gens {
        [] => (0, 0),
        [a] => (*a, *a),
        [a, b, ..] => (*a, *b),
    };
    let words = g.shortest_words(pair);
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    for (i, w) in words.iter().enumerate() {
        let label = w
            .as_deref()
            .map(|w| compress_word(w, ['a', 'b']))
            .unwrap_or_else(|| format!("g{i}"));
        writeln!(out, "  g{i} [label={}];", quote(&label)).unwrap();
    }
    let slots: Vec<usize> = match gens {
        [] => vec![],
        [a] => vec![*a],
        [a, b, ..] => vec![*a, *b],
    };
    for (b, &s) in slots.iter().enumerate() {
        for i in 0..g.order() {
            writeln!(out, "  g{i} -> g{} [{}];", g.mul(s, i), EDGE_STYLE[b]).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
