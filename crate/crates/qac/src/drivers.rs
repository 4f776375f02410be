//! Parallel drivers for the two exhaustive searches. Work is split into
//! indexed chunks and the first hit is taken in index order, so the result
//! never depends on the number of workers or on scheduling.

use std::time::{Duration, Instant};

use qac_core::automata::perm::PermSearch;
use qac_core::automata::witness::{GroupScan, GroupSearch, PairOutcome, SearchOptions};
use qac_core::automata::{ApermOutcome, AutomataError, PermAutomaton, SearchReport, Word};
use qac_core::groups::GroupFamily;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Worker pool; `None` uses one thread per core.
pub fn pool(workers: Option<usize>) -> Result<rayon::ThreadPool, rayon::ThreadPoolBuildError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        b = b.num_threads(n);
    }
    b.build()
}

/// Parallel version of `qsf_search`: same scan order, same result.
pub fn search(
    pool: &rayon::ThreadPool,
    x: &Word,
    families: &[GroupFamily],
    options: &SearchOptions,
) -> Result<SearchReport, AutomataError> {
    pool.install(|| {
        let mut scans = Vec::new();
        let batch = pool.current_num_threads().max(1);
        for chunk in families.chunks(batch) {
            let searches = chunk
                .par_iter()
                .map(|&f| GroupSearch::new(f, x, options.clone()))
                .collect::<Result<Vec<_>, _>>()?;
            for s in &searches {
                let outcomes = (0..s.pair_count())
                    .into_par_iter()
                    .map(|i| s.try_pair(i))
                    .collect::<Result<Vec<_>, _>>()?;
                let mut scan = GroupScan {
                    family: Some(s.family()),
                    order: s.group().order(),
                    ..GroupScan::default()
                };
                for outcome in outcomes {
                    scan.record(&outcome);
                    if let PairOutcome::Witness(w) = outcome {
                        scans.push(scan);
                        return Ok(SearchReport {
                            word: x.clone(),
                            witness: Some(*w),
                            scans,
                            exhausted: false,
                        });
                    }
                }
                scans.push(scan);
            }
        }
        Ok(SearchReport {
            word: x.clone(),
            witness: None,
            scans,
            exhausted: true,
        })
    })
}

/// Where an interrupted permutation search stopped: every candidate before
/// `candidate` at state count `q` (and every smaller `q`) has been ruled out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frontier {
    pub q: usize,
    pub candidate: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ApermRun {
    Done(ApermOutcome),
    OutOfBudget(Frontier),
}

const CHUNK: u64 = 512;

/// Parallel `aperm` with an optional wall-clock budget, resumable from a
/// frontier. The budget is checked between waves of chunks.
pub fn aperm(
    pool: &rayon::ThreadPool,
    x: &Word,
    q_max: usize,
    budget: Option<Duration>,
    resume: Option<Frontier>,
) -> Result<ApermRun, AutomataError> {
    let started = Instant::now();
    let from = resume.unwrap_or(Frontier { q: 1, candidate: 0 });
    pool.install(|| {
        let wave = CHUNK * 16 * pool.current_num_threads().max(1) as u64;
        for q in from.q..=q_max {
            let search = PermSearch::new(x, q)?;
            let total = search.candidate_count();
            let mut next = if q == from.q { from.candidate } else { 0 };
            while next < total {
                if budget.is_some_and(|b| started.elapsed() >= b) {
                    return Ok(ApermRun::OutOfBudget(Frontier { q, candidate: next }));
                }
                let end = (next + wave).min(total);
                let chunks = (end - next).div_ceil(CHUNK);
                let hit: Option<PermAutomaton> = (0..chunks).into_par_iter().find_map_first(|c| {
                    let lo = next + c * CHUNK;
                    search.scan(lo..(lo + CHUNK).min(end))
                });
                if let Some(a) = hit {
                    return Ok(ApermRun::Done(ApermOutcome::Found(a)));
                }
                next = end;
            }
        }
        Ok(ApermRun::Done(ApermOutcome::NoneUpTo(q_max)))
    })
}
