//! Uniqueness certificates: `x` is the only word of its length carrying the
//! start state to the accept state.

use alloc::vec::Vec;

use super::orbit::{build_orbit_dfa, count_accepting, Count};
use super::{AutomataError, QuantumDFA, Word};
use crate::exactfield::CycNum;
use crate::projlinalg::proportional;

/// Longest word the exhaustive check accepts.
pub const BRUTE_FORCE_MAX_LEN: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMethod {
    Orbit,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub word: Word,
    pub method: CheckMethod,
    /// Orbit size when the orbit method ran.
    pub orbit_size: Option<usize>,
    /// Whether `δ_x α = ω`.
    pub reaches: bool,
    pub count: Count,
    pub unique: bool,
}

/// Orbit-automaton uniqueness check, falling back to enumeration when the
/// orbit exceeds `orbit_cap` and `|x|` is small enough.
pub fn unique_witness_check(m: &QuantumDFA, x: &Word, orbit_cap: usize) -> Result<Certificate, AutomataError> {
    match build_orbit_dfa(m, orbit_cap) {
        Ok(orbit) => {
            let reaches = orbit.accept_index == Some(orbit.run(x));
            let count = count_accepting(&orbit, x.len());
            let unique = reaches && count == Count::One(x.clone());
            Ok(Certificate {
                word: x.clone(),
                method: CheckMethod::Orbit,
                orbit_size: Some(orbit.len()),
                reaches,
                count,
                unique,
            })
        }
        Err(AutomataError::OrbitCapExceeded { .. }) if x.len() <= BRUTE_FORCE_MAX_LEN => brute_force_check(m, x),
        Err(e) => Err(e),
    }
}

/// Exhaustive check over all `2^|x|` words.
///
/// Works on unnormalized vectors and tests proportionality by 2×2 minors, so
/// it shares no canonicalization code with the orbit method. Suffix images are
/// shared along a depth-first traversal.
pub fn brute_force_check(m: &QuantumDFA, x: &Word) -> Result<Certificate, AutomataError> {
    if x.len() > BRUTE_FORCE_MAX_LEN {
        return Err(AutomataError::LengthCapExceeded {
            len: x.len(),
            max: BRUTE_FORCE_MAX_LEN,
        });
    }
    let n = x.len();
    let accept = m.accept.coords();

    let mut v = m.start.coords().to_vec();
    for &b in x.bits().iter().rev() {
        v = m.delta[b as usize].apply_vec(&v)?;
    }
    let reaches = proportional(&v, accept);

    struct Dfs<'a> {
        m: &'a QuantumDFA,
        accept: &'a [CycNum],
        len: usize,
        // letters applied so far; path[k] is y(len - k)
        path: Vec<u8>,
        hits: u8,
        hit: Option<Word>,
    }

    impl Dfs<'_> {
        fn visit(&mut self, v: &[CycNum]) -> Result<(), AutomataError> {
            if self.hits >= 2 {
                return Ok(());
            }
            if self.path.len() == self.len {
                if proportional(v, self.accept) {
                    self.hits += 1;
                    self.hit = Some(Word(self.path.iter().rev().copied().collect()));
                }
                return Ok(());
            }
            for b in 0..2u8 {
                let w = self.m.delta[b as usize].apply_vec(v)?;
                self.path.push(b);
                self.visit(&w)?;
                self.path.pop();
            }
            Ok(())
        }
    }

    let mut dfs = Dfs {
        m,
        accept,
        len: n,
        path: Vec::with_capacity(n),
        hits: 0,
        hit: None,
    };
    dfs.visit(m.start.coords())?;
    let count = match dfs.hits {
        0 => Count::Zero,
        1 => Count::One(dfs.hit.expect("recorded")),
        _ => Count::Many,
    };
    let unique = reaches && count == Count::One(x.clone());
    Ok(Certificate {
        word: x.clone(),
        method: CheckMethod::BruteForce,
        orbit_size: None,
        reaches,
        count,
        unique,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::CyclotomicField;
    use crate::projlinalg::{Matrix, ProjPoint};

    #[test]
    fn commuting_generators_never_certify() {
        let k = CyclotomicField::new(4).unwrap();
        let j = crate::groups::quaternion_units(&k)[2].clone();
        let m = QuantumDFA::semi_classical(j.clone(), j).unwrap();
        let x: Word = "01".parse().unwrap();
        assert!(!unique_witness_check(&m, &x, 100).unwrap().unique);
        assert!(!brute_force_check(&m, &x).unwrap().unique);
        let x: Word = "0".parse().unwrap();
        let c = unique_witness_check(&m, &x, 100).unwrap();
        assert!(c.reaches && !c.unique);
        assert_eq!(c.count, Count::Many);
        assert_eq!(brute_force_check(&m, &x).unwrap().count, Count::Many);
    }

    #[test]
    fn empty_word_with_distinct_states_fails() {
        let k = CyclotomicField::new(4).unwrap();
        let [a, b] = crate::groups::tetrahedral_generators(&k);
        let m = QuantumDFA::semi_classical(a, b).unwrap();
        let c = brute_force_check(&m, &Word::default()).unwrap();
        assert!(!c.reaches && !c.unique);
    }

    #[test]
    fn length_cap() {
        let k = CyclotomicField::new(4).unwrap();
        let i = Matrix::identity(&k, 2);
        let e1 = ProjPoint::basis(&k, 2, 0);
        let m = QuantumDFA::new(i.clone(), i, e1.clone(), e1).unwrap();
        let x = Word::zeros_ones(11);
        assert_eq!(
            brute_force_check(&m, &x),
            Err(AutomataError::LengthCapExceeded { len: 22, max: 20 })
        );
    }
}
