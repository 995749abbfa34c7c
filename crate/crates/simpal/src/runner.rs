//! The multi-threaded search driver.
//!
//! Segments of consecutive half-values are scanned in parallel batches and
//! merged back in segment order, so the result list is ascending and
//! identical for every thread count. After each batch the coordinator
//! records progress and, if a `(digit-length, parity)` block was completed
//! or the checkpoint interval has elapsed, writes a checkpoint.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use simpal_core::simulcheck::{SearchPlan, SearchState, Segment};
use simpal_core::word::Word;
use simpal_core::Radix;

use crate::checkpoint::{self, CheckpointError, CheckpointLock};

/// Failures of a search run.
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Core(#[from] simpal_core::Error),
    #[error(transparent)]
    Checkpoint(#[from] CheckpointError),
    #[error("could not start worker threads: {0}")]
    Threads(#[from] rayon::ThreadPoolBuildError),
}

/// Options of a search run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Worker threads; `0` means one per available core.
    pub threads: usize,
    /// Half-values per segment.
    pub segment_len: u64,
    /// Segments handed out per thread and batch.
    pub batch_per_thread: usize,
    /// Where to write checkpoints.
    pub checkpoint: Option<PathBuf>,
    /// Continue from the checkpoint file instead of starting afresh.
    pub resume: bool,
    /// Wall-clock interval between checkpoints inside a block.
    pub checkpoint_interval: Duration,
    /// Keep the list of palindromes (search) or only count them.
    pub retain: bool,
    /// Force the enumerating base instead of the cheaper one.
    pub driver: Option<u32>,
    /// Stop, checkpointed, after this many segments (for testing resume).
    pub halt_after_segments: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            threads: 0,
            segment_len: 1 << 14,
            batch_per_thread: 4,
            checkpoint: None,
            resume: false,
            checkpoint_interval: Duration::from_secs(60),
            retain: true,
            driver: None,
            halt_after_segments: None,
        }
    }
}

/// The result of a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    /// Simultaneous palindromes found, ascending (empty when counting).
    pub found: Vec<u128>,
    pub count: u64,
    /// False only if the run was halted early.
    pub complete: bool,
    /// The base whose palindromes were enumerated.
    pub driver: u32,
    /// Whether the run continued from a checkpoint.
    pub resumed: bool,
    /// Whether one base is a power of the other (infinitely many solutions).
    pub infinitely_many: bool,
    pub checkpoints_written: u64,
}

/// Searches (or counts) the simultaneous palindromes `≤ bound` in bases `g`
/// and `h`. Bounds below `2^63` run on 64-bit words, larger ones below
/// `2^127` on 128-bit words.
pub fn run(g: Radix, h: Radix, bound: &BigUint, cfg: &RunConfig) -> Result<RunOutcome, RunError> {
    if bound.bits() < 64 {
        run_with::<u64>(g, h, bound.to_u64().expect("fits"), cfg)
    } else if bound.bits() < 128 {
        run_with::<u128>(g, h, bound.to_u128().expect("fits"), cfg)
    } else {
        Err(simpal_core::Error::BoundTooLarge(bound.to_string()).into())
    }
}

fn run_with<T: Word>(g: Radix, h: Radix, bound: T, cfg: &RunConfig) -> Result<RunOutcome, RunError> {
    let plan = match cfg.driver {
        Some(d) => SearchPlan::with_driver(g, h, bound, Radix::new(d as u64)?)?,
        None => SearchPlan::new(g, h, bound)?,
    };
    let infinitely_many = plan.infinitely_many();
    if infinitely_many {
        log::warn!("one of {g}, {h} is a power of the other: there are infinitely many simultaneous palindromes");
    }

    let _lock = match &cfg.checkpoint {
        Some(path) => Some(CheckpointLock::acquire(path)?),
        None => None,
    };
    let fresh = || {
        if cfg.retain {
            plan.initial_state()
        } else {
            SearchState::counting()
        }
    };
    let (mut state, resumed) = match (&cfg.checkpoint, cfg.resume) {
        (Some(path), true) => {
            let cp = checkpoint::load(path)?;
            let state = plan.resume(&cp)?;
            if state.retain != cfg.retain {
                return Err(simpal_core::Error::CheckpointMismatch(format!(
                    "checkpoint was written by a {} run",
                    if state.retain { "search" } else { "count" }
                ))
                .into());
            }
            log::info!("resuming at {:?} with {} found", state.cursor, state.found_count);
            (state, true)
        }
        _ => (fresh(), false),
    };

    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build()?;
    let batch_len = pool.current_num_threads().max(1) * cfg.batch_per_thread.max(1);
    log::info!(
        "g = {g}, h = {h}, bound = {bound}, enumerating base {} on {} thread(s)",
        plan.driver(),
        pool.current_num_threads()
    );

    let mut written = 0u64;
    let mut save = |state: &SearchState| -> Result<(), RunError> {
        if let Some(path) = &cfg.checkpoint {
            checkpoint::store(path, &plan.checkpoint(state))?;
            written += 1;
        }
        Ok(())
    };

    let mut segments = plan.segments(&state, cfg.segment_len);
    let mut last_save = Instant::now();
    let mut done_segments = 0u64;
    let mut halted = false;
    loop {
        let budget = match cfg.halt_after_segments {
            Some(limit) if done_segments >= limit => {
                halted = true;
                break;
            }
            Some(limit) => batch_len.min((limit - done_segments) as usize),
            None => batch_len,
        };
        let batch: Vec<Segment<T>> = segments.by_ref().take(budget).collect();
        if batch.is_empty() {
            break;
        }
        let results: Vec<Vec<T>> = pool.install(|| {
            batch
                .par_iter()
                .map(|seg| {
                    let mut hits = Vec::new();
                    plan.scan(seg, |p| hits.push(p));
                    hits
                })
                .collect()
        });
        let mut finished_block = None;
        for (seg, hits) in batch.iter().zip(&results) {
            state.record(&plan, seg, hits);
            if plan.block_range(seg.length).is_some_and(|(_, _, hi)| hi == seg.hi) {
                finished_block = Some(seg.length);
            }
        }
        done_segments += batch.len() as u64;
        if let Some(length) = finished_block {
            log::info!("finished {length}-digit block; {} found so far", state.found_count);
        }
        if finished_block.is_some() || last_save.elapsed() >= cfg.checkpoint_interval {
            save(&state)?;
            last_save = Instant::now();
        }
    }
    if !halted {
        state.complete = true;
    }
    save(&state)?;

    Ok(RunOutcome {
        found: state.found,
        count: state.found_count,
        complete: state.complete,
        driver: plan.driver().get(),
        resumed,
        infinitely_many,
        checkpoints_written: written,
    })
}
