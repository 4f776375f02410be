//! JSON views of exact objects. Every struct serializes its fields in
//! declaration order, so identical inputs give byte-identical output.

use qac_core::automata::{Certificate, CheckMethod, ComplexityPair, GroupOrder, OrbitDFA, PermAutomaton, QuantumDFA};
use qac_core::exactfield::{CycNum, Rational};
use qac_core::projlinalg::{Matrix, ProjPoint};
use serde::{Deserialize, Serialize};

/// A cyclotomic number: power-basis coefficients as `"num/den"` strings.
#[derive(Debug, Clone, Serialize)]
pub struct CycJson {
    pub conductor: u32,
    pub coeffs: Vec<String>,
    pub display: String,
}

pub fn rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl From<&CycNum> for CycJson {
    fn from(c: &CycNum) -> Self {
        CycJson {
            conductor: c.conductor(),
            coeffs: c.coeffs().iter().map(rational).collect(),
            display: c.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub conductor: u32,
    /// Row-major entries in display form.
    pub rows: Vec<Vec<String>>,
    /// Row-major entries with exact coefficients.
    pub entries: Vec<Vec<CycJson>>,
}

impl From<&Matrix> for MatrixJson {
    fn from(m: &Matrix) -> Self {
        let n = m.dim();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| m.get(i, j).to_string()).collect())
            .collect();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| CycJson::from(m.get(i, j))).collect())
            .collect();
        MatrixJson {
            dim: n,
            conductor: m.conductor(),
            rows,
            entries,
        }
    }
}

pub fn point_label(p: &ProjPoint) -> String {
    match p.affine_label() {
        Some(l) => l.to_string(),
        None => {
            let parts: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
            format!("[{}]", parts.join(" : "))
        }
    }
}

pub fn pair(p: &ComplexityPair) -> (usize, Option<usize>) {
    let q = match p.order {
        GroupOrder::Finite(q) => Some(q),
        GroupOrder::Infinite => None,
    };
    (p.states, q)
}

#[derive(Debug, Clone, Serialize)]
pub struct AutomatonJson {
    pub delta0: MatrixJson,
    pub delta1: MatrixJson,
    pub start: String,
    pub accept: String,
}

impl From<&QuantumDFA> for AutomatonJson {
    fn from(m: &QuantumDFA) -> Self {
        AutomatonJson {
            delta0: MatrixJson::from(&m.delta[0]),
            delta1: MatrixJson::from(&m.delta[1]),
            start: point_label(&m.start),
            accept: point_label(&m.accept),
        }
    }
}

/// Uniqueness certificate for a quantum witness.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateJson {
    pub word: String,
    /// `[n, q]`; `q` is null for ∞.
    pub pair: (usize, Option<usize>),
    pub method: &'static str,
    pub orbit_size: Option<usize>,
    pub reaches: bool,
    /// Saturated count of accepted words of length `|x|`: 0, 1 or 2 (= many).
    pub accepted_words: u8,
    pub unique: bool,
    /// Independent enumeration result, when `|x|` is small enough to run it.
    pub brute_force_unique: Option<bool>,
    pub matrices: AutomatonJson,
    /// Orbit of the start state in discovery order, as affine labels.
    pub orbit_labels: Option<Vec<String>>,
}

impl CertificateJson {
    pub fn new(
        m: &QuantumDFA,
        c: &Certificate,
        pair: &ComplexityPair,
        orbit: Option<&OrbitDFA>,
        brute_force_unique: Option<bool>,
    ) -> Self {
        CertificateJson {
            word: c.word.to_string(),
            pair: self::pair(pair),
            method: match c.method {
                CheckMethod::Orbit => "orbit",
                CheckMethod::BruteForce => "brute_force",
            },
            orbit_size: c.orbit_size,
            reaches: c.reaches,
            accepted_words: c.count.saturated(),
            unique: c.unique,
            brute_force_unique,
            matrices: AutomatonJson::from(m),
            orbit_labels: orbit.map(|o| o.states.iter().map(point_label).collect()),
        }
    }

    /// Every check that ran agrees that the word is uniquely accepted.
    pub fn validates(&self) -> bool {
        self.unique && self.reaches && self.brute_force_unique != Some(false)
    }
}

/// A permutation automaton with states numbered from 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermJson {
    pub q: usize,
    /// `pi0[s-1]` is the image of state `s`.
    pub pi0: Vec<usize>,
    pub pi1: Vec<usize>,
    pub start: usize,
    #[serde(rename = "final")]
    pub accept: usize,
}

impl From<&PermAutomaton> for PermJson {
    fn from(a: &PermAutomaton) -> Self {
        let one = |p: &[usize]| p.iter().map(|s| s + 1).collect();
        PermJson {
            q: a.q(),
            pi0: one(&a.pi[0]),
            pi1: one(&a.pi[1]),
            start: a.start + 1,
            accept: a.accept + 1,
        }
    }
}

/// Parses `"a,b"` into a rational vector; each part may be `n` or `n/d`.
pub fn parse_vector(s: &str) -> Result<[Rational; 2], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        return Err(format!("expected two comma-separated numbers, got `{s}`"));
    };
    let parse = |t: &str| -> Result<Rational, String> { t.parse::<Rational>().map_err(|e| format!("`{t}`: {e}")) };
    Ok([parse(a)?, parse(b)?])
}
