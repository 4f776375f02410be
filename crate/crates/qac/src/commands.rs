//! One function per CLI subcommand, each returning a serializable report.

use std::time::Duration;

use qac_core::automata::check::BRUTE_FORCE_MAX_LEN;
use qac_core::automata::float::{float_generic_check, Sampling};
use qac_core::automata::witness::SearchOptions;
use qac_core::automata::{
    brute_force_check, build_orbit_dfa, conjugate_witness, perm_unique_check, unique_witness_check, ApermOutcome,
    AutomataError, ComplexityPair, GroupOrder, QuantumDFA, Word,
};
use qac_core::exactfield::{CyclotomicField, Rational};
use qac_core::groups::{
    catalog, catalog_up_to, closure, collision_check, commuting_exponent, tetrahedral_generators, FiniteMatrixGroup,
    GroupFamily,
};
use serde::Serialize;

use crate::drivers::{self, ApermRun, Frontier};
use crate::json::{rational, CertificateJson, MatrixJson, PermJson};

/// Orbit of `[1:0]` under the tetrahedral witness at `v = (1,2)`: the
/// vertices of the cuboctahedron.
pub const CUBOCTAHEDRON_LABELS: [&str; 12] = [
    "0",
    "16/13-15/13i",
    "-9/13+20/13i",
    "16/13+15/13i",
    "9/37+20/37i",
    "3/4",
    "-4/3",
    "∞",
    "-16/37-15/37i",
    "9/37-20/37i",
    "-9/13-20/13i",
    "-16/37+15/37i",
];

fn brute_force_if_short(m: &QuantumDFA, x: &Word) -> Result<Option<bool>, AutomataError> {
    if x.len() > BRUTE_FORCE_MAX_LEN {
        return Ok(None);
    }
    Ok(Some(brute_force_check(m, x)?.unique))
}

/// Order of the group generated by the transition matrices in PU(n), if it
/// closes within `cap` elements.
fn generated_order(m: &QuantumDFA, cap: usize) -> GroupOrder {
    match closure(&m.delta, true, cap) {
        Ok(g) => GroupOrder::Finite(g.order()),
        Err(_) => GroupOrder::Infinite,
    }
}

fn certificate(m: &QuantumDFA, x: &Word, orbit_cap: usize) -> Result<CertificateJson, AutomataError> {
    let cert = unique_witness_check(m, x, orbit_cap)?;
    let orbit = build_orbit_dfa(m, orbit_cap).ok();
    let pair = ComplexityPair {
        states: m.dim(),
        order: generated_order(m, orbit_cap.max(qac_core::groups::DEFAULT_CLOSURE_CAP)),
    };
    Ok(CertificateJson::new(
        m,
        &cert,
        &pair,
        orbit.as_ref(),
        brute_force_if_short(m, x)?,
    ))
}

#[derive(Debug, Clone, Serialize)]
pub struct Verify0011Report {
    pub v: [String; 2],
    pub certificate: CertificateJson,
    /// Whether the orbit labels equal the reference cuboctahedron labels; only checked at v = (1,2)
    /// and when the orbit fit under the cap.
    pub labels_match: Option<bool>,
    pub missing_labels: Vec<String>,
    pub unexpected_labels: Vec<String>,
    pub ok: bool,
}

pub fn verify_0011(v: &[Rational; 2], orbit_cap: usize) -> Result<Verify0011Report, AutomataError> {
    let k = CyclotomicField::new(4).expect("conductor 4");
    let [a, b] = tetrahedral_generators(&k);
    let x: Word = "0011".parse()?;
    let m = conjugate_witness(&a, &b, &x, v)?;
    let certificate = certificate(&m, &x, orbit_cap)?;

    let reference_v = *v == [Rational::from_integer(1.into()), Rational::from_integer(2.into())];
    let (mut missing, mut unexpected) = (Vec::new(), Vec::new());
    let labels_match = match (&certificate.orbit_labels, reference_v) {
        (Some(got), true) => {
            missing = CUBOCTAHEDRON_LABELS
                .iter()
                .filter(|l| !got.iter().any(|g| g == *l))
                .map(|l| l.to_string())
                .collect();
            unexpected = got
                .iter()
                .filter(|g| !CUBOCTAHEDRON_LABELS.contains(&g.as_str()))
                .cloned()
                .collect();
            Some(missing.is_empty() && unexpected.is_empty() && got.len() == 12)
        }
        _ => None,
    };
    let ok = certificate.validates() && certificate.brute_force_unique == Some(true) && labels_match != Some(false);
    Ok(Verify0011Report {
        v: [rational(&v[0]), rational(&v[1])],
        certificate,
        labels_match,
        missing_labels: missing,
        unexpected_labels: unexpected,
        ok,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ApermReport {
    pub word: String,
    pub q_max: usize,
    /// Least state count with a witness; null if none up to `q_max` or the
    /// search was interrupted.
    pub aperm: Option<usize>,
    pub complete: bool,
    pub witness: Option<PermJson>,
    pub perm_check: Option<bool>,
    /// The witness embedded as permutation matrices, checked exactly.
    pub embedded_check: Option<bool>,
    pub frontier: Option<Frontier>,
}

impl ApermReport {
    pub fn ok(&self) -> bool {
        self.complete && self.perm_check != Some(false) && self.embedded_check != Some(false)
    }
}

pub fn aperm(
    pool: &rayon::ThreadPool,
    x: &Word,
    q_max: usize,
    budget: Option<Duration>,
    resume: Option<Frontier>,
) -> Result<ApermReport, AutomataError> {
    let run = drivers::aperm(pool, x, q_max, budget, resume)?;
    let mut report = ApermReport {
        word: x.to_string(),
        q_max,
        aperm: None,
        complete: true,
        witness: None,
        perm_check: None,
        embedded_check: None,
        frontier: None,
    };
    match run {
        ApermRun::Done(ApermOutcome::Found(a)) => {
            let k = CyclotomicField::new(1).expect("conductor 1");
            let m = a.to_quantum(&k)?;
            report.aperm = Some(a.q());
            report.perm_check = Some(perm_unique_check(&a, x));
            report.embedded_check = Some(unique_witness_check(&m, x, 1000)?.unique);
            report.witness = Some(PermJson::from(&a));
        }
        ApermRun::Done(ApermOutcome::NoneUpTo(_)) => {}
        ApermRun::OutOfBudget(f) => {
            report.complete = false;
            report.frontier = Some(f);
        }
    }
    Ok(report)
}

/// Which catalog families a search covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Families {
    pub cyclic: bool,
    pub dihedral: bool,
    pub polyhedral: bool,
}

impl Families {
    pub const ALL: Families = Families {
        cyclic: true,
        dihedral: true,
        polyhedral: true,
    };

    pub fn list(&self, order_max: usize) -> Vec<GroupFamily> {
        catalog_up_to(order_max, self.polyhedral)
            .into_iter()
            .filter(|f| match f {
                GroupFamily::Cyclic(_) => self.cyclic,
                GroupFamily::BinaryDihedral(_) => self.dihedral,
                _ => true,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupScanJson {
    pub group: String,
    pub order: usize,
    pub pairs: usize,
    pub not_traceless: usize,
    pub group_collisions: usize,
    pub conjugations: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchJson {
    pub word: String,
    pub length: usize,
    pub order_max: usize,
    pub families: Families,
    pub v_height: i64,
    pub v_candidates: usize,
    pub groups_scanned: usize,
    pub witness_group: Option<String>,
    /// `[δ_0, δ_1]` element indices in the witness group.
    pub witness_pair: Option<(usize, usize)>,
    pub witness_v: Option<[String; 2]>,
    pub certificate: Option<CertificateJson>,
    pub search_space_exhausted: bool,
    pub scans: Vec<GroupScanJson>,
}

impl SearchJson {
    pub fn ok(&self) -> bool {
        self.certificate
            .as_ref()
            .map_or(self.search_space_exhausted, |c| c.validates())
    }
}

pub fn search(
    pool: &rayon::ThreadPool,
    x: &Word,
    order_max: usize,
    families: Families,
    v_height: i64,
    orbit_cap: usize,
) -> Result<SearchJson, AutomataError> {
    let options = SearchOptions {
        orbit_cap,
        ..SearchOptions::with_height(v_height)
    };
    let list = families.list(order_max);
    let report = drivers::search(pool, x, &list, &options)?;
    let certificate = match &report.witness {
        Some(w) => {
            let orbit = build_orbit_dfa(&w.dfa, orbit_cap).ok();
            Some(CertificateJson::new(
                &w.dfa,
                &w.certificate,
                &w.pair,
                orbit.as_ref(),
                brute_force_if_short(&w.dfa, x)?,
            ))
        }
        None => None,
    };
    Ok(SearchJson {
        word: x.to_string(),
        length: x.len(),
        order_max,
        families,
        v_height,
        v_candidates: options.v_candidates.len(),
        groups_scanned: report.scans.len(),
        witness_group: report.witness.as_ref().map(|w| w.family.name()),
        witness_pair: report.witness.as_ref().map(|w| w.delta_indices),
        witness_v: report.witness.as_ref().map(|w| [rational(&w.v[0]), rational(&w.v[1])]),
        certificate,
        search_space_exhausted: report.exhausted,
        scans: report
            .scans
            .iter()
            .map(|s| GroupScanJson {
                group: s.family.map(|f| f.name()).unwrap_or_default(),
                order: s.order,
                pairs: s.pairs,
                not_traceless: s.not_traceless,
                group_collisions: s.group_collisions,
                conjugations: s.conjugations,
            })
            .collect(),
    })
}

pub fn build_group(family: GroupFamily, projective: bool) -> Result<FiniteMatrixGroup, AutomataError> {
    Ok(catalog(family)?.closure(projective)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct CollideJson {
    pub group: String,
    pub projective: bool,
    pub order: usize,
    pub commuting_exponent: usize,
    pub m: usize,
    /// `u^m v^m = v^m u^m` for all `u, v`: no witness for `0^m 1^m` in the group.
    pub collision: bool,
}

pub fn collide(family: GroupFamily, projective: bool, m: Option<usize>) -> Result<CollideJson, AutomataError> {
    let g = build_group(family, projective)?;
    let ce = commuting_exponent(&g);
    let m = m.unwrap_or(ce);
    Ok(CollideJson {
        group: family.name(),
        projective,
        order: g.order(),
        commuting_exponent: ce,
        m,
        collision: collision_check(&g, m),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupJson {
    pub name: String,
    pub projective: bool,
    pub order: usize,
    pub conductor: u32,
    pub exponent: usize,
    pub commuting_exponent: usize,
    pub generators: Vec<MatrixJson>,
}

pub fn group(family: GroupFamily, projective: bool) -> Result<GroupJson, AutomataError> {
    let g = build_group(family, projective)?;
    Ok(GroupJson {
        name: family.name(),
        projective,
        order: g.order(),
        conductor: g.conductor(),
        exponent: g.exponent(),
        commuting_exponent: commuting_exponent(&g),
        generators: g.generators().iter().map(|&i| MatrixJson::from(g.element(i))).collect(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FloatJson {
    pub word: String,
    pub trials: usize,
    pub tol: f64,
    pub seed: u64,
    pub sampling: &'static str,
    pub successes: usize,
    pub fraction: f64,
    /// Closest approach of any other word to the accept state, over all trials.
    pub min_margin: f64,
}

pub fn float_check(x: &Word, trials: usize, tol: f64, seed: u64, equal: bool) -> Result<FloatJson, AutomataError> {
    let sampling = if equal { Sampling::Equal } else { Sampling::Independent };
    let r = float_generic_check(x, trials, tol, seed, sampling)?;
    Ok(FloatJson {
        word: x.to_string(),
        trials,
        tol,
        seed,
        sampling: if equal { "equal" } else { "independent" },
        successes: r.successes,
        fraction: r.fraction(),
        min_margin: r.min_margin,
    })
}

/// The orbit of the tetrahedral witness at `v`, in DOT.
pub fn export_witness(v: &[Rational; 2], orbit_cap: usize) -> Result<String, AutomataError> {
    let k = CyclotomicField::new(4).expect("conductor 4");
    let [a, b] = tetrahedral_generators(&k);
    let x: Word = "0011".parse()?;
    let m = conjugate_witness(&a, &b, &x, v)?;
    let orbit = build_orbit_dfa(&m, orbit_cap)?;
    Ok(crate::dot::orbit(&orbit, "witness_0011"))
}

pub fn export_group(family: GroupFamily, projective: bool) -> Result<String, AutomataError> {
    let g = build_group(family, projective)?;
    Ok(crate::dot::cayley(&g, &family.name()))
}
