//! Semi-classical witnesses from finite groups: the conjugation recipe that
//! moves a group-theoretic witness onto `e_1 ↦ e_2`, and the catalog search
//! built on it.

use alloc::{boxed::Box, format, vec, vec::Vec};

use num_integer::Integer;
use num_traits::Zero;

use super::check::{unique_witness_check, Certificate};
use super::{word_product, AutomataError, ComplexityPair, GroupOrder, QuantumDFA, Word};
use crate::exactfield::{CycNum, Field, Rational};
use crate::groups::{catalog, FiniteMatrixGroup, GroupFamily};
use crate::projlinalg::Matrix;

/// The scaled-unitary matrix `D = [[v_1, -v_2], [v_2, v_1]]`.
pub fn conjugator(field: &Field, v: &[Rational; 2]) -> Matrix {
    let v1 = CycNum::from_rational(field, &v[0]);
    let v2 = CycNum::from_rational(field, &v[1]);
    Matrix::from_2x2([[v1.clone(), -&v2], [v2, v1]]).expect("2x2")
}

/// Conjugates `(E_0, E_1)` by `D = [[v_1, -v_2], [v_2, v_1]]`, giving
/// `U_j = D E_j D^{-1}` with start `e_1` and accept `e_2`.
///
/// `D^{-1} e_1` is proportional to `u = (v_1, -v_2)`, so the recipe needs
/// `⟨u, E_x u⟩ = 0`; then `E_x u` is proportional to `D^{-1} e_2` and
/// `U_x e_1 = e_2` holds exactly. Uniqueness of `x` is *not* implied and must
/// be checked separately.
pub fn conjugate_witness(e0: &Matrix, e1: &Matrix, x: &Word, v: &[Rational; 2]) -> Result<QuantumDFA, AutomataError> {
    if e0.dim() != 2 || e1.dim() != 2 {
        return Err(AutomataError::RecipeInapplicable(
            "the recipe is for 2×2 generators".into(),
        ));
    }
    if v[0].is_zero() && v[1].is_zero() {
        return Err(AutomataError::RecipeInapplicable("v = 0".into()));
    }
    let field = e0.field();
    let w = word_product(e0, e1, x)?;
    let u = [
        CycNum::from_rational(field, &v[0]),
        CycNum::from_rational(field, &-&v[1]),
    ];
    let wu = w.apply_vec(&u)?;
    let inner = &(&u[0].conj() * &wu[0]) + &(&u[1].conj() * &wu[1]);
    if !inner.is_zero() {
        return Err(AutomataError::RecipeInapplicable(format!(
            "<u, E_x u> = {inner} is nonzero"
        )));
    }
    if wu.iter().all(CycNum::is_zero) {
        return Err(AutomataError::RecipeInapplicable("E_x is singular".into()));
    }
    let d = conjugator(field, v);
    // D is scaled-unitary by construction: D^{-1} = D† / |v|²
    let n2 = &v[0] * &v[0] + &v[1] * &v[1];
    let d_inv = d.dagger().scale(&CycNum::from_rational(field, &n2.recip()))?;
    let u0 = d.mul(e0)?.mul(&d_inv)?;
    let u1 = d.mul(e1)?.mul(&d_inv)?;
    QuantumDFA::semi_classical(u0, u1)
}

/// Primitive integer vectors of height ≤ `height`, ordered by L1 norm:
/// (1,0), (0,1), (1,1), (1,-1), (1,2), (2,1), (1,-2), (2,-1), …
pub fn v_schedule(height: i64) -> Vec<[Rational; 2]> {
    let mut out = Vec::new();
    let mut push = |a: i64, b: i64| {
        if a.gcd(&b) == 1 && a.abs().max(b.abs()) <= height {
            out.push([Rational::from_integer(a.into()), Rational::from_integer(b.into())]);
        }
    };
    for s in 1..=2 * height {
        for a in 1..=s {
            push(a, s - a);
        }
        if s == 1 {
            push(0, 1);
        }
        for a in 1..s {
            push(a, a - s);
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub v_candidates: Vec<[Rational; 2]>,
    pub orbit_cap: usize,
    /// Skip pairs rejected by the group-level word-count test. Disabling it
    /// only costs time: such pairs always fail the orbit check.
    pub group_prune: bool,
}

impl SearchOptions {
    pub fn with_height(height: i64) -> Self {
        SearchOptions {
            v_candidates: v_schedule(height),
            orbit_cap: crate::groups::DEFAULT_CLOSURE_CAP,
            group_prune: true,
        }
    }
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self::with_height(3)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessResult {
    pub word: Word,
    pub pair: ComplexityPair,
    pub family: GroupFamily,
    /// Order of the catalog group (in PU(2)) that was scanned.
    pub group_order: usize,
    /// Element indices of `(δ_0, δ_1)` in that group.
    pub delta_indices: (usize, usize),
    pub v: [Rational; 2],
    pub dfa: QuantumDFA,
    pub certificate: Certificate,
}

/// What happened to one ordered generator pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairOutcome {
    /// `δ_x` is not traceless, so it cannot carry any ray to an orthogonal one.
    NotTraceless,
    /// Another word of the same length has the same group element as `x`.
    GroupCollision,
    /// All conjugation vectors tried; none certified.
    Exhausted {
        conjugations: usize,
    },
    Witness(Box<WitnessResult>),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupScan {
    pub family: Option<GroupFamily>,
    pub order: usize,
    pub pairs: usize,
    pub not_traceless: usize,
    pub group_collisions: usize,
    pub conjugations: usize,
}

impl GroupScan {
    pub fn record(&mut self, outcome: &PairOutcome) {
        self.pairs += 1;
        match outcome {
            PairOutcome::NotTraceless => self.not_traceless += 1,
            PairOutcome::GroupCollision => self.group_collisions += 1,
            PairOutcome::Exhausted { conjugations } => self.conjugations += conjugations,
            PairOutcome::Witness(_) => {}
        }
    }
}

/// Witness search inside one projective catalog group. Pairs are indexed
/// `δ_0 · |G| + δ_1` over the group's element order.
pub struct GroupSearch {
    family: GroupFamily,
    group: FiniteMatrixGroup,
    word: Word,
    options: SearchOptions,
    traceless: Vec<bool>,
}

impl GroupSearch {
    pub fn new(family: GroupFamily, x: &Word, options: SearchOptions) -> Result<Self, AutomataError> {
        if x.is_empty() {
            return Err(AutomataError::EmptyWord);
        }
        let group = catalog(family)?.closure(true)?;
        Ok(Self::with_group(family, group, x, options))
    }

    pub fn with_group(family: GroupFamily, group: FiniteMatrixGroup, x: &Word, options: SearchOptions) -> Self {
        let traceless = group.elements().iter().map(|m| m.trace().is_zero()).collect();
        GroupSearch {
            family,
            group,
            word: x.clone(),
            options,
            traceless,
        }
    }

    pub fn group(&self) -> &FiniteMatrixGroup {
        &self.group
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn pair_count(&self) -> usize {
        self.group.order() * self.group.order()
    }

    pub fn pair(&self, idx: usize) -> (usize, usize) {
        (idx / self.group.order(), idx % self.group.order())
    }

    /// Whether some `y ≠ x` of the same length has `δ_y = δ_x` in the group.
    fn group_collision(&self, d: [usize; 2]) -> bool {
        let g = &self.group;
        let mut cnt = vec![0u8; g.order()];
        cnt[0] = 1;
        for _ in 0..self.word.len() {
            let mut next = vec![0u8; g.order()];
            for (e, &c) in cnt.iter().enumerate() {
                if c > 0 {
                    for &s in &d {
                        let t = &mut next[g.mul(e, s)];
                        *t = (*t + c).min(2);
                    }
                }
            }
            cnt = next;
        }
        let dx = g.word_product(self.word.bits().iter().map(|&b| d[b as usize]));
        cnt[dx] >= 2
    }

    pub fn try_pair(&self, idx: usize) -> Result<PairOutcome, AutomataError> {
        let (i, j) = self.pair(idx);
        let g = &self.group;
        let dx = g.word_product(self.word.bits().iter().map(|&b| if b == 0 { i } else { j }));
        if !self.traceless[dx] {
            return Ok(PairOutcome::NotTraceless);
        }
        if self.options.group_prune && self.group_collision([i, j]) {
            return Ok(PairOutcome::GroupCollision);
        }
        let (e0, e1) = (g.element(i), g.element(j));
        let mut conjugations = 0;
        for v in &self.options.v_candidates {
            let dfa = match conjugate_witness(e0, e1, &self.word, v) {
                Ok(dfa) => dfa,
                Err(AutomataError::RecipeInapplicable(_)) => continue,
                Err(e) => return Err(e),
            };
            conjugations += 1;
            let certificate = unique_witness_check(&dfa, &self.word, self.options.orbit_cap)?;
            if certificate.unique {
                return Ok(PairOutcome::Witness(Box::new(WitnessResult {
                    word: self.word.clone(),
                    pair: ComplexityPair {
                        states: 2,
                        order: GroupOrder::Finite(g.subgroup_order(&[i, j])),
                    },
                    family: self.family,
                    group_order: g.order(),
                    delta_indices: (i, j),
                    v: v.clone(),
                    dfa,
                    certificate,
                })));
            }
        }
        Ok(PairOutcome::Exhausted { conjugations })
    }

    /// Scans every pair in index order; returns the first witness and the
    /// scan statistics up to that point.
    pub fn run(&self) -> Result<(Option<WitnessResult>, GroupScan), AutomataError> {
        let mut scan = GroupScan {
            family: Some(self.family),
            order: self.group.order(),
            ..GroupScan::default()
        };
        for idx in 0..self.pair_count() {
            let outcome = self.try_pair(idx)?;
            scan.record(&outcome);
            if let PairOutcome::Witness(w) = outcome {
                return Ok((Some(*w), scan));
            }
        }
        Ok((None, scan))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub word: Word,
    pub witness: Option<WitnessResult>,
    pub scans: Vec<GroupScan>,
    /// True when every candidate in the search space was examined without
    /// finding a witness.
    pub exhausted: bool,
}

/// Scans `families` in the given order (callers sort by group order), every
/// ordered pair `(δ_0, δ_1)` of each projective group, every conjugation
/// vector, and returns the first certified witness.
pub fn qsf_search(x: &Word, families: &[GroupFamily], options: &SearchOptions) -> Result<SearchReport, AutomataError> {
    let mut scans = Vec::new();
    for &family in families {
        let search = GroupSearch::new(family, x, options.clone())?;
        let (witness, scan) = search.run()?;
        scans.push(scan);
        if witness.is_some() {
            return Ok(SearchReport {
                word: x.clone(),
                witness,
                scans,
                exhausted: false,
            });
        }
    }
    Ok(SearchReport {
        word: x.clone(),
        witness: None,
        scans,
        exhausted: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{ratio, CyclotomicField};
    use crate::groups::tetrahedral_generators;

    #[test]
    fn schedule_prefix() {
        let s = v_schedule(3);
        let want: [(i64, i64); 8] = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, -2), (2, -1)];
        for (got, (a, b)) in s.iter().zip(want) {
            assert_eq!(got, &[ratio(a, 1), ratio(b, 1)]);
        }
        assert!(s.iter().all(|[a, b]| a.numer().gcd(b.numer()) == 1.into()));
    }

    #[test]
    fn recipe_rejects_word_with_nonzero_trace() {
        let k = CyclotomicField::new(4).unwrap();
        let [a, b] = tetrahedral_generators(&k);
        let x: Word = "0001".parse().unwrap();
        let w = word_product(&a, &b, &x).unwrap();
        assert_eq!(w.trace().as_rational(), Some(ratio(-1, 1)));
        assert!(matches!(
            conjugate_witness(&a, &b, &x, &[ratio(1, 1), ratio(2, 1)]),
            Err(AutomataError::RecipeInapplicable(_))
        ));
    }

    #[test]
    fn empty_word_is_rejected() {
        assert!(matches!(
            GroupSearch::new(
                GroupFamily::BinaryTetrahedral,
                &Word::default(),
                SearchOptions::default()
            ),
            Err(AutomataError::EmptyWord)
        ));
    }
}
