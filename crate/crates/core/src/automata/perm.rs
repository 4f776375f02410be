//! Permutation automata and the search for `A_perm(x)`.
//!
//! States are `0..q`. A word acts by composition, last letter first, exactly
//! like the quantum automata, so [`embed_permutation`] carries one model onto
//! the other.

use alloc::{vec, vec::Vec};
use core::ops::Range;

use super::{AutomataError, QuantumDFA, Word};
use crate::exactfield::{CycNum, Field};
use crate::projlinalg::{Matrix, ProjPoint};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermAutomaton {
    /// `pi[b][s]` is the image of state `s` under letter `b`.
    pub pi: [Vec<usize>; 2],
    pub start: usize,
    pub accept: usize,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&s| s < p.len() && !core::mem::replace(&mut seen[s], true))
}

impl PermAutomaton {
    pub fn new(pi0: Vec<usize>, pi1: Vec<usize>, start: usize, accept: usize) -> Result<Self, AutomataError> {
        let q = pi0.len();
        if pi1.len() != q || !is_permutation(&pi0) || !is_permutation(&pi1) || start >= q || accept >= q {
            return Err(AutomataError::InvalidWord(
                "transition maps must be permutations of a common state set".into(),
            ));
        }
        Ok(PermAutomaton {
            pi: [pi0, pi1],
            start,
            accept,
        })
    }

    pub fn q(&self) -> usize {
        self.pi[0].len()
    }

    /// `π_x(s)`.
    pub fn run_from(&self, s: usize, x: &Word) -> usize {
        x.bits().iter().rev().fold(s, |s, &b| self.pi[b as usize][s])
    }

    /// The quantum automaton with permutation-matrix transitions, start
    /// `e_start` and accept `e_accept`.
    pub fn to_quantum(&self, field: &Field) -> Result<QuantumDFA, AutomataError> {
        let q = self.q();
        QuantumDFA::new(
            embed_permutation(field, &self.pi[0]),
            embed_permutation(field, &self.pi[1]),
            ProjPoint::basis(field, q, self.start),
            ProjPoint::basis(field, q, self.accept),
        )
    }
}

/// Saturated count (0, 1 or 2) of length-`len` words carrying `start` to
/// `accept`.
fn count_paths(pi: [&[usize]; 2], start: usize, accept: usize, len: usize, buf: &mut [Vec<u8>; 2]) -> u8 {
    let [cur, next] = buf;
    cur.fill(0);
    cur[start] = 1;
    for _ in 0..len {
        next.fill(0);
        for (s, &c) in cur.iter().enumerate() {
            if c != 0 {
                for p in pi {
                    let t = &mut next[p[s]];
                    *t = (*t + c).min(2);
                }
            }
        }
        core::mem::swap(cur, next);
    }
    cur[accept]
}

/// `π_x(start) = accept` and no other word of length `|x|` does the same.
pub fn perm_unique_check(a: &PermAutomaton, x: &Word) -> bool {
    let q = a.q();
    if a.run_from(a.start, x) != a.accept {
        return false;
    }
    let mut buf = [vec![0u8; q], vec![0u8; q]];
    count_paths([&a.pi[0], &a.pi[1]], a.start, a.accept, x.len(), &mut buf) == 1
}

/// The `q × q` 0–1 matrix with `M e_j = e_{p(j)}`.
pub fn embed_permutation(field: &Field, p: &[usize]) -> Matrix {
    let q = p.len();
    let mut entries = vec![CycNum::zero(field); q * q];
    for (j, &i) in p.iter().enumerate() {
        entries[i * q + j] = CycNum::one(field);
    }
    Matrix::from_entries(q, entries).expect("square")
}

/// Partitions of `q` into non-increasing parts, in reverse lexicographic
/// order starting from `[q]`.
pub fn partitions(q: usize) -> Vec<Vec<usize>> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            cur.push(part);
            go(rem - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(q, q, &mut Vec::new(), &mut out);
    out
}

/// The permutation whose cycles are consecutive runs of the given lengths,
/// each `s ↦ s + 1` wrapping at the end of its run.
pub fn cycle_type_representative(parts: &[usize]) -> Vec<usize> {
    let mut p = Vec::with_capacity(parts.iter().sum());
    let mut base = 0;
    for &k in parts {
        for s in 0..k {
            p.push(base + (s + 1) % k);
        }
        base += k;
    }
    p
}

fn factorial(q: usize) -> u64 {
    (1..=q as u64).product()
}

/// The `rank`-th permutation of `0..q` in lexicographic order.
pub fn unrank_permutation(q: usize, mut rank: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..q).collect();
    let mut out = Vec::with_capacity(q);
    for k in (0..q).rev() {
        let f = factorial(k);
        let i = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(i));
    }
    out
}

/// Advances to the lexicographically next permutation; false after the last.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The candidate space at one state count `q`: `π_0` ranges over one
/// representative per cycle type, `π_1` over all of `S_q` in lexicographic
/// order. Candidate `k` is representative `k / q!` with `π_1` of rank
/// `k mod q!`; each candidate tries every start state.
///
/// Conjugating a whole automaton by a permutation of the states relabels it
/// without changing which words it accepts, so fixing `π_0` up to conjugacy
/// loses no witnesses.
#[derive(Debug, Clone)]
pub struct PermSearch {
    word: Word,
    q: usize,
    reps: Vec<Vec<usize>>,
    per_rep: u64,
}

impl PermSearch {
    pub fn new(x: &Word, q: usize) -> Result<Self, AutomataError> {
        if x.is_empty() {
            return Err(AutomataError::EmptyWord);
        }
        Ok(PermSearch {
            word: x.clone(),
            q,
            reps: partitions(q).iter().map(|p| cycle_type_representative(p)).collect(),
            per_rep: factorial(q),
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn candidate_count(&self) -> u64 {
        self.reps.len() as u64 * self.per_rep
    }

    /// The first witness among candidates in `range`, in candidate order.
    pub fn scan(&self, range: Range<u64>) -> Option<PermAutomaton> {
        let q = self.q;
        let end = range.end.min(self.candidate_count());
        let mut k = range.start;
        let mut buf = [vec![0u8; q], vec![0u8; q]];
        let mut images = vec![0usize; q];
        while k < end {
            let rep = &self.reps[(k / self.per_rep) as usize];
            let mut pi1 = unrank_permutation(q, k % self.per_rep);
            loop {
                for (s, img) in images.iter_mut().enumerate() {
                    *img = self
                        .word
                        .bits()
                        .iter()
                        .rev()
                        .fold(s, |s, &b| if b == 0 { rep[s] } else { pi1[s] });
                }
                for (start, &accept) in images.iter().enumerate() {
                    if count_paths([rep, &pi1], start, accept, self.word.len(), &mut buf) == 1 {
                        return Some(PermAutomaton {
                            pi: [rep.clone(), pi1],
                            start,
                            accept,
                        });
                    }
                }
                k += 1;
                if k >= end || k.is_multiple_of(self.per_rep) || !next_permutation(&mut pi1) {
                    break;
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ApermOutcome {
    Found(PermAutomaton),
    NoneUpTo(usize),
}

impl ApermOutcome {
    pub fn value(&self) -> Option<usize> {
        match self {
            ApermOutcome::Found(a) => Some(a.q()),
            ApermOutcome::NoneUpTo(_) => None,
        }
    }
}

/// Least `q ≤ q_max` with a permutation automaton accepting `x` uniquely
/// among words of its length.
pub fn aperm(x: &Word, q_max: usize) -> Result<ApermOutcome, AutomataError> {
    for q in 1..=q_max {
        let search = PermSearch::new(x, q)?;
        if let Some(a) = search.scan(0..search.candidate_count()) {
            return Ok(ApermOutcome::Found(a));
        }
    }
    Ok(ApermOutcome::NoneUpTo(q_max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_small_numbers() {
        let counts: Vec<usize> = (1..=8).map(|q| partitions(q).len()).collect();
        assert_eq!(counts, [1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions(4)[0], [4]);
        assert_eq!(partitions(4)[4], [1, 1, 1, 1]);
        assert_eq!(cycle_type_representative(&[3, 2]), [1, 2, 0, 4, 3]);
    }

    #[test]
    fn permutation_ranking() {
        let mut p = unrank_permutation(4, 0);
        for rank in 1..24 {
            assert!(next_permutation(&mut p));
            assert_eq!(p, unrank_permutation(4, rank));
        }
        assert!(!next_permutation(&mut p));
    }

    #[test]
    fn degenerate_automata() {
        let x: Word = "01".parse().unwrap();
        let a = PermAutomaton::new(vec![1, 2, 0], vec![1, 2, 0], 0, 2).unwrap();
        assert!(!perm_unique_check(&a, &x));
        let one = PermAutomaton::new(vec![0], vec![0], 0, 0).unwrap();
        assert!(!perm_unique_check(&one, &x));
        assert!(PermAutomaton::new(vec![0, 0], vec![0, 1], 0, 0).is_err());
    }

    #[test]
    fn single_letter() {
        let x: Word = "0".parse().unwrap();
        assert_eq!(aperm(&x, 1).unwrap(), ApermOutcome::NoneUpTo(1));
        let ApermOutcome::Found(a) = aperm(&x, 2).unwrap() else {
            panic!("expected a witness at q = 2");
        };
        assert_eq!(a.q(), 2);
        assert!(perm_unique_check(&a, &x));
    }
}
