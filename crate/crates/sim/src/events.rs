//! Failure schedules: scripted, Poisson-seeded and uniformly random.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Result, SimError};

/// One failure event: the nodes lost at `time`.
#[derive(Clone, Debug, PartialEq)]
pub struct Event {
    pub time: f64,
    pub failed: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Schedule {
    /// One event per line of comma-separated node ids.
    Scripted(PathBuf),
    /// Single-node failures, each node failing at `rate` per unit time, up to `horizon`.
    Poisson { rate: f64, horizon: f64 },
    /// `count` events of 1..=γ simultaneous failures.
    Random { count: usize },
}

impl Schedule {
    /// Parses `poisson:rate,horizon`, `random:count`, or a file path.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |why: &str| SimError::Config(format!("events {s:?}: {why}"));
        if let Some(rest) = s.strip_prefix("poisson:") {
            let (r, h) = rest.split_once(',').ok_or_else(|| bad("expected poisson:rate,horizon"))?;
            let rate: f64 = r.trim().parse().map_err(|_| bad("rate is not a number"))?;
            let horizon: f64 = h.trim().parse().map_err(|_| bad("horizon is not a number"))?;
            if !(rate > 0.0 && rate.is_finite() && horizon > 0.0 && horizon.is_finite()) {
                return Err(bad("rate and horizon must be positive"));
            }
            Ok(Schedule::Poisson { rate, horizon })
        } else if let Some(rest) = s.strip_prefix("random:") {
            let count = rest.trim().parse().map_err(|_| bad("count is not an integer"))?;
            Ok(Schedule::Random { count })
        } else {
            Ok(Schedule::Scripted(PathBuf::from(s)))
        }
    }

    /// Expands the schedule into concrete events for a cluster of `nodes`
    /// nodes. Node ids are range-checked; the γ limit is left to the runner.
    pub fn events(&self, nodes: usize, gamma: usize, seed: u64) -> Result<Vec<Event>> {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
        match self {
            Schedule::Scripted(path) => read_script(path, nodes),
            Schedule::Poisson { rate, horizon } => {
                let total = rate * nodes as f64;
                let mut t = 0.0;
                let mut out = Vec::new();
                loop {
                    let u: f64 = rng.random();
                    t += -(1.0 - u).ln() / total;
                    if t > *horizon {
                        return Ok(out);
                    }
                    out.push(Event {
                        time: t,
                        failed: BTreeSet::from([rng.random_range(0..nodes)]),
                    });
                }
            }
            Schedule::Random { count } => Ok((0..*count)
                .map(|i| {
                    let size = rng.random_range(1..=gamma.min(nodes));
                    Event {
                        time: i as f64,
                        failed: sample(&mut rng, nodes, size).into_iter().collect(),
                    }
                })
                .collect()),
        }
    }
}

fn read_script(path: &Path, nodes: usize) -> Result<Vec<Event>> {
    let text = std::fs::read_to_string(path).map_err(SimError::io(path))?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut failed = BTreeSet::new();
        for tok in line.split(',') {
            let id: usize = tok.trim().parse().map_err(|_| SimError::Format {
                path: path.to_path_buf(),
                reason: format!("line {}: {:?} is not a node id", lineno + 1, tok.trim()),
            })?;
            if id >= nodes {
                return Err(SimError::Format {
                    path: path.to_path_buf(),
                    reason: format!("line {}: node {id} out of range (0..{nodes})", lineno + 1),
                });
            }
            failed.insert(id);
        }
        out.push(Event {
            time: out.len() as f64,
            failed,
        });
    }
    Ok(out)
}
