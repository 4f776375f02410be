//! Quantum DFAs over exact fields and the classical automata extracted from
//! them.
//!
//! Word products follow the matrix convention `δ_y = δ_{y(1)} δ_{y(2)} ⋯ δ_{y(n)}`,
//! so acting on a state the *last* letter is applied first. Permutation
//! automata use the same convention (composition of functions), which makes
//! [`perm::embed_permutation`] a homomorphism.

pub mod check;
pub mod float;
pub mod orbit;
pub mod perm;
pub mod witness;

use alloc::{string::String, vec::Vec};
use core::{fmt, str::FromStr};

use crate::groups::GroupError;
use crate::projlinalg::{LinalgError, Matrix, ProjMatrix, ProjPoint};

pub use check::{brute_force_check, unique_witness_check, Certificate, CheckMethod};
pub use orbit::{build_orbit_dfa, count_accepting, Count, OrbitDFA};
pub use perm::{aperm, embed_permutation, perm_unique_check, ApermOutcome, PermAutomaton};
pub use witness::{conjugate_witness, qsf_search, v_schedule, SearchReport, WitnessResult};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutomataError {
    #[error("orbit exceeded {cap} states")]
    OrbitCapExceeded { cap: usize },
    #[error("word length {len} exceeds the limit {max} for exhaustive enumeration")]
    LengthCapExceeded { len: usize, max: usize },
    #[error("the empty word is not a valid witness target")]
    EmptyWord,
    #[error("conjugation recipe inapplicable: {0}")]
    RecipeInapplicable(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A binary word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(bits: Vec<u8>) -> Result<Self, AutomataError> {
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(AutomataError::InvalidWord(alloc::format!("letter {b}")));
        }
        Ok(Word(bits))
    }

    /// `0^m 1^m`.
    pub fn zeros_ones(m: usize) -> Self {
        let mut v = alloc::vec![0; m];
        v.extend(core::iter::repeat_n(1, m));
        Word(v)
    }

    /// The `len`-bit word spelling `bits` most significant bit first.
    pub fn from_bits(bits: u64, len: usize) -> Self {
        Word((0..len).map(|k| ((bits >> (len - 1 - k)) & 1) as u8).collect())
    }

    /// All words of length `len`, in lexicographic order.
    pub fn all(len: usize) -> impl Iterator<Item = Word> {
        (0..1u64 << len).map(move |b| Word::from_bits(b, len))
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            f.write_str(if *b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Word {
    type Err = AutomataError;

    /// Plain bit strings plus run shorthand: `"0011"`, `"0^4 1^4"`, `"0^120"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut bits = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            let bit = match c {
                c if c.is_whitespace() => continue,
                '0' => 0,
                '1' => 1,
                _ => return Err(AutomataError::InvalidWord(s.into())),
            };
            let mut reps = 1usize;
            if chars.peek() == Some(&'^') {
                chars.next();
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                reps = digits.parse().map_err(|_| AutomataError::InvalidWord(s.into()))?;
            }
            bits.extend(core::iter::repeat_n(bit, reps));
        }
        Ok(Word(bits))
    }
}

/// `δ_{x(1)} ⋯ δ_{x(n)}` on representatives; the empty word gives the identity.
pub fn word_product(delta0: &Matrix, delta1: &Matrix, x: &Word) -> Result<Matrix, LinalgError> {
    let mut acc = Matrix::identity(delta0.field(), delta0.dim());
    for &b in x.bits() {
        acc = acc.mul(if b == 0 { delta0 } else { delta1 })?;
    }
    Ok(acc)
}

/// Second component of a complexity pair: a group order, or ∞ when no finite
/// group is claimed. `Finite(_) < Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupOrder {
    Finite(usize),
    Infinite,
}

/// The pair `(n, q)`, ordered lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComplexityPair {
    pub states: usize,
    pub order: GroupOrder,
}

impl fmt::Display for ComplexityPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order {
            GroupOrder::Finite(q) => write!(f, "({},{})", self.states, q),
            GroupOrder::Infinite => write!(f, "({},∞)", self.states),
        }
    }
}

/// A quantum DFA acting projectively. The transition matrices are arbitrary
/// representatives of their projective classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumDFA {
    pub delta: [Matrix; 2],
    pub start: ProjPoint,
    pub accept: ProjPoint,
}

impl QuantumDFA {
    pub fn new(delta0: Matrix, delta1: Matrix, start: ProjPoint, accept: ProjPoint) -> Result<Self, AutomataError> {
        let n = delta0.dim();
        for d in [delta1.dim(), start.dim(), accept.dim()] {
            if d != n {
                return Err(LinalgError::DimensionMismatch { left: n, right: d }.into());
            }
        }
        Ok(QuantumDFA {
            delta: [delta0, delta1],
            start,
            accept,
        })
    }

    /// Semi-classical automaton: start `e_1`, accept `e_2`.
    pub fn semi_classical(delta0: Matrix, delta1: Matrix) -> Result<Self, AutomataError> {
        let field = delta0.field().clone();
        let n = delta0.dim();
        Self::new(
            delta0,
            delta1,
            ProjPoint::basis(&field, n, 0),
            ProjPoint::basis(&field, n, 1),
        )
    }

    pub fn dim(&self) -> usize {
        self.delta[0].dim()
    }

    pub fn word_matrix(&self, x: &Word) -> Result<ProjMatrix, LinalgError> {
        ProjMatrix::new(word_product(&self.delta[0], &self.delta[1], x)?)
    }

    /// `δ_x α`, applying the last letter first.
    pub fn run(&self, x: &Word) -> Result<ProjPoint, LinalgError> {
        let mut p = self.start.clone();
        for &b in x.bits().iter().rev() {
            p = p.apply(&self.delta[b as usize])?;
        }
        Ok(p)
    }

    pub fn accepts(&self, x: &Word) -> Result<bool, LinalgError> {
        Ok(self.run(x)? == self.accept)
    }
}
